//! Exact simulation of Schmidt's `(α, β)`-game on the real line, together
//! with a constructive Alice strategy that keeps the surviving interval
//! inside the mixed badly approximable set
//!
//! ```text
//! bad_D(c; i, j) = { x : max(‖q‖_D^(1/i), ‖qx‖^(1/j)) > c/q  for all q >= 1 }
//! ```
//!
//! and a verifier that certifies any finite game prefix. All decisions use
//! exact rational arithmetic; floating point appears only in display output.
//!
//! Modules, bottom up:
//! - [`arithmetic`]: rationals, D-adic norms, exact power comparisons.
//! - [`dangerous`]: the dangerous rationals `C_{c,k}` and their danger regions.
//! - [`game`]: the move-validating engine and trace format.
//! - [`strategy`]: Alice's block strategy, the interleaver, stock Bobs.
//! - [`verify`]: trace re-checking and avoidance certificates.
//! - [`cli`]: the `mixed-bad` command line.

pub mod arithmetic;
pub mod cli;
pub mod dangerous;
pub mod error;
pub mod game;
pub mod strategy;
pub mod verify;

pub use error::{Error, Result};
