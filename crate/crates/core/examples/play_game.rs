//! Play Alice's strategy against a Bob that chases the nearest dangerous
//! point, and print the trace.

use mixed_bad::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use mixed_bad::dangerous::ProblemParams;
use mixed_bad::game::{run, write_trace, GameParams};
use mixed_bad::strategy::{mixed_bad_alice, Chase, ChaseTarget, Plan};

fn main() -> mixed_bad::Result<()> {
    let gp = GameParams::new(Rational::new(1, 2), Rational::new(1, 2))?;
    let e = ExponentPair::new(1, 1, 2)?;
    let seq = DSequence::constant(2)?;
    let b1 = Interval::new(Rational::zero(), Rational::new(1, 8))?;
    let blocks = 8;

    let plan = Plan::for_opening(&gp, &e, &b1.radius())?;
    let pp = ProblemParams::new(e, seq.clone(), plan.constants.c.clone())?;
    let mut bob = Chase::new(ChaseTarget::NearestDangerous {
        pp,
        wp: plan.constants.window_params(),
        max_k: blocks,
    });
    let mut alice = mixed_bad_alice(&gp, &e, &seq)?;
    let rounds = plan.burn_in_rounds + blocks * u64::from(plan.constants.t);
    let out = run(gp, b1, &mut alice, &mut bob, rounds).map_err(|f| f.error)?;

    write_trace(&out.trace, std::io::stdout().lock()).expect("stdout");
    println!(
        "final interval {} after {rounds} rounds",
        out.final_interval
    );
    Ok(())
}
