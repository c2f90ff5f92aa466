//! Alice's winning strategy for `bad_D(c; i, j)`, the two-target interleaver,
//! and a stable of adversarial Bobs.

mod alice;
mod bob;
mod constants;
mod interleave;

pub use alice::{dodge_move, MixedBadAlice};
pub use bob::{
    make_bob, nearest_dangerous, BobKind, Chase, ChaseTarget, Positional, RandomPosition,
};
pub use constants::{
    burn_in_rounds, c_bound, derive_constants, rho1_bound, Derivation, Plan, StrategyConstants,
};
pub use interleave::{interleave_mixed_bad, sub_view, view_beta, view_params, Interleave, Target};

use crate::arithmetic::{DSequence, ExponentPair};
use crate::error::{Error, Result};
use crate::game::GameParams;

/// Alice's strategy for one `(D, i, j)` target; the pair must be admissible.
pub fn mixed_bad_alice(
    gp: &GameParams,
    e: &ExponentPair,
    seq: &DSequence,
) -> Result<MixedBadAlice> {
    if !gp.is_admissible() {
        return Err(Error::NotAdmissible { gamma: gp.gamma() });
    }
    MixedBadAlice::new(gp.clone(), *e, seq.clone())
}
