mod common;

use common::{badness_suite, iv, r, reference, reference_run, XorShift};
use mixed_bad::arithmetic::{Interval, Rational};
use mixed_bad::dangerous::delta_radius_bound;
use mixed_bad::game::TraceRecord;
use mixed_bad::verify::{
    badness_profile, check_trace, mixed_condition_holds, verified_q_bound, verify_avoidance,
    AvoidanceFailure, CheckKind, Status,
};
use num_bigint::BigInt;
use num_integer::Integer;

/// Denominators `q <= bound` for which `‖q‖_2^2 > c/q` fails under the
/// reference parameters, i.e. `q · 2^15 <= 4^v2(q)`.
fn d_term_failures(bound: u64) -> Vec<u64> {
    (1..=bound)
        .filter(|&q| u128::from(q) << 15 <= 1u128 << (2 * q.trailing_zeros()))
        .collect()
}

#[test]
fn verified_bounds() {
    let (_, pp, wp) = reference();
    let e = pp.exponents();
    assert_eq!(verified_q_bound(6, &wp, e), BigInt::from(65_535));
    assert_eq!(verified_q_bound(8, &wp, e), BigInt::from(2_642_245));
    let mut last = BigInt::from(0);
    for k in 1..=12 {
        let b = verified_q_bound(k, &wp, e);
        assert!(b >= BigInt::from(1) && b >= last);
        // q^(3/4) < 4^k, i.e. q^3 < 2^(8k).
        assert!(b.pow(3) < BigInt::from(1) << (8 * k) as usize);
        assert!((&b + 1u32).pow(3) >= BigInt::from(1) << (8 * k) as usize);
        last = b;
    }
}

/// Whenever the final interval is certified, sampled points satisfy the
/// defining inequality for every `q` up to the certified bound.
#[test]
fn certification_is_sound_on_samples() {
    let (_, pp, wp) = reference();
    let out = reference_run("chase", 8);
    let report = verify_avoidance(&out.final_interval, 8, &pp, &wp);
    assert!(report.certified);
    let bound = u64::try_from(&report.q_bound).unwrap();
    // For every other q the D-adic term alone already exceeds c/q.
    let hard = d_term_failures(bound);
    assert!(!hard.is_empty() && hard.len() < 64, "{hard:?}");
    let f = &out.final_interval;
    let mut rng = XorShift(2024);
    for idx in 0..1000 {
        let u = Rational::new(rng.below(1 << 30) as i64, 1i64 << 30);
        let x = f.lo() + f.width() * u;
        for &q in &hard {
            // ‖qx‖^2 · q > 2^-15 with integers: m^2 · q · 2^15 > d^2.
            let d = x.denom();
            let rem = (x.numer() * q).mod_floor(d);
            let m = rem.clone().min(d - &rem);
            assert!(&m * &m * q * (1u32 << 15) > d * d, "x = {x}, q = {q}");
            if idx < 25 {
                assert!(mixed_condition_holds(&x, &BigInt::from(q), &pp));
            }
        }
    }
}

#[test]
fn certification_is_monotone_in_k() {
    let (_, pp, wp) = reference();
    for bob in ["centered", "leftmost", "chase", "random:17"] {
        let out = reference_run(bob, 8);
        assert!(
            verify_avoidance(&out.final_interval, 8, &pp, &wp).certified,
            "{bob}"
        );
        for k in 1..8 {
            let report = verify_avoidance(&out.final_interval, k, &pp, &wp);
            assert!(report.certified, "{bob}, K = {k}");
            assert_eq!(report.windows.len(), k as usize);
        }
    }
}

#[test]
fn dangerous_centers_are_not_certified() {
    let (_, pp, wp) = reference();
    let center = Rational::pow2(-15);
    let around = Interval::around(&center, &Rational::pow2(-40)).unwrap();
    for k in 1..=5 {
        assert!(verify_avoidance(&around, k, &pp, &wp).certified);
    }
    let report = verify_avoidance(&around, 6, &pp, &wp);
    assert!(!report.certified);
    let witness = report.witness().unwrap();
    assert_eq!(witness.q(), &BigInt::from(32_768));
    assert!(report
        .failures
        .iter()
        .all(|f| matches!(f, AvoidanceFailure::Intersects { .. })));
    // Just outside the danger region is fine again.
    let gap = delta_radius_bound(witness.q(), &pp);
    let beyond = Interval::new(
        &center + &gap * Rational::from(2),
        &center + &gap * Rational::from(3),
    )
    .unwrap();
    assert!(verify_avoidance(&beyond, 6, &pp, &wp).certified);
}

#[test]
fn report_serialization() {
    let (_, pp, wp) = reference();
    let report = verify_avoidance(&iv("1/3", "1/3"), 6, &pp, &wp);
    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(json["certified"], true);
    assert_eq!(json["q_bound"], "65535");
    assert_eq!(json["windows"][5]["k"], 6);
    assert!(json["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reference_traces_pass_every_check() {
    let (gp, pp, wp) = reference();
    for bob in ["centered", "leftmost", "chase", "random:3"] {
        let out = reference_run(bob, 8);
        let report = check_trace(&out.trace, &gp, &pp, &wp);
        assert!(
            report.passed(),
            "{bob}: {:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert_eq!(report.count(CheckKind::AtMostOneDangerous, Status::Pass), 8);
        assert_eq!(report.count(CheckKind::BlockAvoidance, Status::Pass), 8);
        assert_eq!(
            report.count(CheckKind::RadiusLaw, Status::Pass),
            out.trace.len() - 1
        );
    }
}

#[test]
fn perturbed_radius_is_caught_at_its_round() {
    let (gp, pp, wp) = reference();
    let mut trace = reference_run("chase", 8).trace;
    let victim: &mut TraceRecord = &mut trace[9];
    let hi = victim.interval.hi() + Rational::pow2(-64);
    victim.interval = Interval::new(victim.interval.lo().clone(), hi).unwrap();
    let report = check_trace(&trace, &gp, &pp, &wp);
    assert!(!report.passed());
    let radius_fail = report
        .failures()
        .find(|c| c.check == CheckKind::RadiusLaw)
        .unwrap();
    assert_eq!(radius_fail.round, Some(trace[9].round));
}

#[test]
fn truncated_traces_leave_blocks_unevaluated() {
    let (gp, pp, wp) = reference();
    let trace = reference_run("chase", 8).trace;
    // Cut in the middle of block 3.
    let cut = &trace[..2 * 2 * 2 + 3];
    let report = check_trace(cut, &gp, &pp, &wp);
    assert!(report.passed());
    assert_eq!(report.count(CheckKind::BlockAvoidance, Status::Pass), 2);
    assert_eq!(
        report.count(CheckKind::BlockAvoidance, Status::NotEvaluated),
        1
    );
    assert_eq!(report.count(CheckKind::Nesting, Status::Fail), 0);
}

#[test]
fn badness_examples() {
    let (_, pp, _) = reference();
    let third = badness_profile(&r("1/3"), 3, &pp);
    assert_eq!(third.witness_q, 2);
    assert_eq!(third.minimum.to_rational(), Some(r("1/2")));
    let zero = badness_profile(&r("0"), 1, &pp);
    assert_eq!(zero.minimum.to_rational(), Some(r("1")));
}

#[test]
fn badness_argmin_matches_fixed_point_scan() {
    let stats = badness_suite(20, 5, 1000);
    assert!(stats.failures.is_empty(), "{:#?}", stats.failures);
    assert_eq!(stats.inputs, 20);
}
