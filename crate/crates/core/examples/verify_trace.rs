//! Re-check a finished game and certify its final interval.

use mixed_bad::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use mixed_bad::dangerous::ProblemParams;
use mixed_bad::game::{run, GameParams};
use mixed_bad::strategy::{mixed_bad_alice, Plan, RandomPosition};
use mixed_bad::verify::{check_trace, verify_avoidance, CheckKind, Status};

fn main() -> mixed_bad::Result<()> {
    let gp = GameParams::new(Rational::new(1, 2), Rational::new(1, 2))?;
    let e = ExponentPair::new(1, 1, 2)?;
    let seq = DSequence::constant(2)?;
    let b1 = Interval::new(Rational::zero(), Rational::new(1, 8))?;
    let blocks = 8;

    let mut alice = mixed_bad_alice(&gp, &e, &seq)?;
    let out = run(
        gp.clone(),
        b1.clone(),
        &mut alice,
        &mut RandomPosition::new(2024),
        2 * blocks,
    )
    .map_err(|f| f.error)?;

    // The verifier rebuilds everything from the trace and the parameters.
    let plan = Plan::for_opening(&gp, &e, &b1.radius())?;
    let pp = ProblemParams::new(e, seq, plan.constants.c.clone())?;
    let wp = plan.constants.window_params();
    let report = check_trace(&out.trace, &gp, &pp, &wp);
    for check in [
        CheckKind::RadiusLaw,
        CheckKind::AtMostOneDangerous,
        CheckKind::BlockAvoidance,
        CheckKind::Dodge,
    ] {
        println!(
            "{check:?}: {} passed, {} failed",
            report.count(check, Status::Pass),
            report.count(check, Status::Fail)
        );
    }

    let cert = verify_avoidance(&out.final_interval, blocks, &pp, &wp);
    println!(
        "{}",
        serde_json::to_string_pretty(&cert).expect("report serializes")
    );
    Ok(())
}
