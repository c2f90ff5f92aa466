//! How close a rational gets to violating the mixed condition, with the
//! minimising denominator found by exact comparison.

use mixed_bad::arithmetic::{DSequence, ExponentPair, Rational};
use mixed_bad::dangerous::ProblemParams;
use mixed_bad::verify::badness_profile;

fn main() -> mixed_bad::Result<()> {
    let pp = ProblemParams::new(
        ExponentPair::new(1, 1, 2)?,
        DSequence::constant(2)?,
        Rational::pow2(-15),
    )?;
    // Convergents of the golden ratio and of sqrt(2), and a few plain fractions.
    for x in ["987/1597", "1393/985", "1/3", "355/113"] {
        let x: Rational = x.parse()?;
        let profile = badness_profile(&x, 1000, &pp);
        println!(
            "x = {x}: min over q <= 1000 at q = {}, value ~ {:.6}",
            profile.witness_q, profile.cstar_display
        );
    }
    Ok(())
}
