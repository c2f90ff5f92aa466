//! One Alice playing for two targets at once: D = <2> with i = j = 1/2 on
//! her odd turns and D = <3> with i = 1/3, j = 2/3 on her even turns.

use mixed_bad::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use mixed_bad::dangerous::ProblemParams;
use mixed_bad::game::{run, GameParams};
use mixed_bad::strategy::{interleave_mixed_bad, view_params, Plan, RandomPosition, Target};
use mixed_bad::verify::{split_interleaved, verify_avoidance};

fn main() -> mixed_bad::Result<()> {
    let gp = GameParams::new(Rational::new(1, 2), Rational::new(1, 2))?;
    let view = view_params(&gp)?;
    println!(
        "each half plays ({}, {}), gamma' = {}",
        view.alpha(),
        view.beta(),
        view.gamma()
    );

    let targets = [
        Target {
            exponents: ExponentPair::new(1, 1, 2)?,
            seq: DSequence::constant(2)?,
        },
        Target {
            exponents: ExponentPair::new(1, 2, 3)?,
            seq: DSequence::constant(3)?,
        },
    ];
    let b1 = Interval::new(Rational::zero(), Rational::one())?;
    let blocks = 4;
    // Half 1 first sees B_1, half 2 first sees B_2.
    let openings = [b1.radius(), b1.radius() * gp.alpha() * gp.beta()];
    let plans = [
        Plan::for_opening(&view, &targets[0].exponents, &openings[0])?,
        Plan::for_opening(&view, &targets[1].exponents, &openings[1])?,
    ];
    let view_rounds = |p: &Plan| p.burn_in_rounds + blocks * u64::from(p.constants.t);
    let rounds = (2 * view_rounds(&plans[0])).max(2 * view_rounds(&plans[1]) + 1);

    let mut alice = interleave_mixed_bad(&gp, &targets[0], &targets[1])?;
    let out = run(gp, b1, &mut alice, &mut RandomPosition::new(7), rounds).map_err(|f| f.error)?;
    println!(
        "final interval after {rounds} rounds: {}",
        out.final_interval
    );

    for (idx, (target, plan)) in targets.iter().zip(&plans).enumerate() {
        let pp = ProblemParams::new(
            target.exponents,
            target.seq.clone(),
            plan.constants.c.clone(),
        )?;
        let cert = verify_avoidance(
            &out.final_interval,
            blocks,
            &pp,
            &plan.constants.window_params(),
        );
        let moves = split_interleaved(&out.trace, idx as u8 + 1)?.len();
        println!(
            "target {}: c = {}, {moves} view moves, certified {} up to q = {}",
            idx + 1,
            plan.constants.c,
            cert.certified,
            cert.q_bound
        );
    }
    Ok(())
}
