//! Post-hoc certification of finite game prefixes.
//!
//! Nothing here consults a strategy: a trace is re-checked from its intervals
//! alone, using only the arithmetic and dangerous-set modules.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{
    dadic_norm, dist_point_interval, nearest_int_dist, ExponentPair, Interval, PowerProduct,
    Rational,
};
use crate::dangerous::{
    delta_intersects, delta_radius_bound, enumerate_dangerous, q_ceiling, window_index,
    DangerousPoint, ProblemParams, WindowParams,
};
use crate::error::{Error, Result};
use crate::game::{GameParams, Mover, TraceRecord};

/// Largest `q` covered by windows `1..=windows`.
pub fn verified_q_bound(windows: u64, wp: &WindowParams, e: &ExponentPair) -> BigInt {
    q_ceiling(windows, wp, e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCount {
    pub k: u64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AvoidanceFailure {
    /// `Δ_c(point)` meets the certified interval.
    Intersects { point: DangerousPoint },
    /// The enumerator filed `point` under the wrong window.
    Partition {
        point: DangerousPoint,
        actual_k: u64,
    },
}

/// Certificate that every `x` in an interval satisfies
/// `max(‖q‖_D^(1/i), ‖qx‖^(1/j)) > c/q` for all `1 <= q <= q_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceReport {
    pub certified: bool,
    #[serde(with = "crate::dangerous::int_string")]
    pub q_bound: BigInt,
    pub windows: Vec<WindowCount>,
    pub failures: Vec<AvoidanceFailure>,
}

impl AvoidanceReport {
    /// First dangerous point whose region meets the interval.
    pub fn witness(&self) -> Option<&DangerousPoint> {
        self.failures.iter().find_map(|f| match f {
            AvoidanceFailure::Intersects { point } => Some(point),
            AvoidanceFailure::Partition { .. } => None,
        })
    }
}

/// Check `final_interval` against every danger region of windows `1..=windows`.
pub fn verify_avoidance(
    final_interval: &Interval,
    windows: u64,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> AvoidanceReport {
    let e = pp.exponents();
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=windows {
        let q_lo = q_ceiling(k - 1, wp, e) + 1;
        let padded = final_interval.padded(&delta_radius_bound(&q_lo, pp));
        let near = enumerate_dangerous(k, &padded, pp, wp);
        for point in &near {
            let actual_k = window_index(point.q(), wp, e);
            if actual_k != k {
                failures.push(AvoidanceFailure::Partition {
                    point: point.clone(),
                    actual_k,
                });
            }
            if delta_intersects(point, final_interval, pp) {
                failures.push(AvoidanceFailure::Intersects {
                    point: point.clone(),
                });
            }
        }
        counts.push(WindowCount {
            k,
            count: near.len(),
        });
    }
    AvoidanceReport {
        certified: failures.is_empty(),
        q_bound: verified_q_bound(windows, wp, e),
        windows: counts,
        failures,
    }
}

/// `max(‖q‖_D^(1/i), ‖qx‖^(1/j))` as an exact power product (always positive).
fn mixed_term(x: &Rational, q: &BigInt, pp: &ProblemParams) -> PowerProduct {
    let e = pp.exponents();
    let d_part = PowerProduct::of(
        dadic_norm(q, pp.seq()).expect("q >= 1"),
        Rational::new(e.den(), e.i_num()),
    );
    let frac = nearest_int_dist(&(x * Rational::from_integer(q.clone())));
    if frac.is_zero() {
        return d_part;
    }
    let x_part = PowerProduct::of(frac, Rational::new(e.den(), e.j_num()));
    if x_part.cmp_exact(&d_part) == Ordering::Greater {
        x_part
    } else {
        d_part
    }
}

/// Whether `max(‖q‖_D^(1/i), ‖qx‖^(1/j)) > c/q`.
pub fn mixed_condition_holds(x: &Rational, q: &BigInt, pp: &ProblemParams) -> bool {
    let threshold = PowerProduct::rational(pp.c() / Rational::from_integer(q.clone()));
    mixed_term(x, q, pp).cmp_exact(&threshold) == Ordering::Greater
}

/// Smallest value of `q · max(‖q‖_D^(1/i), ‖qx‖^(1/j))` over `1 <= q <= max_q`.
#[derive(Clone, Debug)]
pub struct BadnessProfile {
    /// First `q` attaining the minimum.
    pub witness_q: u64,
    /// The exact minimum.
    pub minimum: PowerProduct,
    /// Decimal rendering of the minimum, for display only.
    pub cstar_display: f64,
}

pub fn badness_profile(x: &Rational, max_q: u64, pp: &ProblemParams) -> BadnessProfile {
    assert!(max_q >= 1, "need at least one denominator");
    let value = |q: u64| {
        let qb = BigInt::from(q);
        mixed_term(x, &qb, pp).times(Rational::from(qb), Rational::one())
    };
    let mut witness_q = 1;
    let mut minimum = value(1);
    for q in 2..=max_q {
        let v = value(q);
        if v.cmp_exact(&minimum) == Ordering::Less {
            witness_q = q;
            minimum = v;
        }
    }
    let cstar_display = minimum.to_f64();
    BadnessProfile {
        witness_q,
        minimum,
        cstar_display,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Bob opens, then strict alternation with consistent round numbers.
    Alternation,
    Nesting,
    RadiusLaw,
    /// At most one dangerous point meets each block head.
    AtMostOneDangerous,
    /// No block-head danger region meets the block's final interval.
    BlockAvoidance,
    /// The block's final interval keeps `½ γ ρ` away from its dangerous point.
    Dodge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotEvaluated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub checks: Vec<CheckResult>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, check: CheckKind, status: Status) -> usize {
        self.checks
            .iter()
            .filter(|c| c.check == check && c.status == status)
            .count()
    }

    fn push(
        &mut self,
        check: CheckKind,
        status: Status,
        round: Option<u64>,
        block: Option<u64>,
        detail: Option<String>,
    ) {
        self.checks.push(CheckResult {
            check,
            status,
            round,
            block,
            detail,
        });
    }
}

/// Index of the Bob record the strategy re-indexed as `B_1`: the one just
/// before the first Alice move annotated with a block number.
pub fn block_origin(trace: &[TraceRecord]) -> Option<usize> {
    trace
        .iter()
        .position(|rec| {
            rec.mover == Mover::Alice && rec.note.as_ref().is_some_and(|n| n.block.is_some())
        })
        .map(|idx| idx - 1)
}

/// Re-validate a trace: per-round laws, then the per-block danger checks and the dodge
/// distance for every block after the origin.
pub fn check_trace(
    trace: &[TraceRecord],
    gp: &GameParams,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> TraceReport {
    let mut report = TraceReport::default();
    check_rounds(trace, gp, &mut report);
    let Some(origin) = block_origin(trace) else {
        for check in [
            CheckKind::AtMostOneDangerous,
            CheckKind::BlockAvoidance,
            CheckKind::Dodge,
        ] {
            report.push(
                check,
                Status::NotEvaluated,
                None,
                None,
                Some("no block annotations".into()),
            );
        }
        return report;
    };
    let stride = 2 * wp.t() as usize;
    let half_gamma = gp.gamma() / Rational::from(2);
    for (block_idx, head) in (origin..trace.len()).step_by(stride).enumerate() {
        let k = block_idx as u64 + 1;
        if head + 1 == trace.len() && head > origin {
            // The final interval opens a block nobody played.
            break;
        }
        let head_rec = &trace[head];
        let round = Some(head_rec.round);
        if head_rec.mover != Mover::Bob {
            report.push(
                CheckKind::AtMostOneDangerous,
                Status::Fail,
                round,
                Some(k),
                Some("block head is not a Bob move".into()),
            );
            break;
        }
        let found = enumerate_dangerous(k, &head_rec.interval, pp, wp);
        if found.len() <= 1 {
            report.push(
                CheckKind::AtMostOneDangerous,
                Status::Pass,
                round,
                Some(k),
                None,
            );
        } else {
            let list: Vec<String> = found.iter().map(|p| p.to_string()).collect();
            report.push(
                CheckKind::AtMostOneDangerous,
                Status::Fail,
                round,
                Some(k),
                Some(list.join(", ")),
            );
        }
        let Some(end_rec) = trace.get(head + stride) else {
            for check in [CheckKind::BlockAvoidance, CheckKind::Dodge] {
                report.push(
                    check,
                    Status::NotEvaluated,
                    round,
                    Some(k),
                    Some("block incomplete".into()),
                );
            }
            continue;
        };
        let end_round = Some(end_rec.round);
        match found
            .iter()
            .find(|p| delta_intersects(p, &end_rec.interval, pp))
        {
            None => report.push(
                CheckKind::BlockAvoidance,
                Status::Pass,
                end_round,
                Some(k),
                None,
            ),
            Some(p) => report.push(
                CheckKind::BlockAvoidance,
                Status::Fail,
                end_round,
                Some(k),
                Some(format!("{p} still dangerous")),
            ),
        }
        if let [p] = found.as_slice() {
            let dist = dist_point_interval(&p.value(), &end_rec.interval);
            let need = &half_gamma * head_rec.interval.radius();
            if dist > need {
                report.push(CheckKind::Dodge, Status::Pass, end_round, Some(k), None);
            } else {
                report.push(
                    CheckKind::Dodge,
                    Status::Fail,
                    end_round,
                    Some(k),
                    Some(format!("distance {dist} to {p} is not above {need}")),
                );
            }
        }
    }
    report
}

fn check_rounds(trace: &[TraceRecord], gp: &GameParams, report: &mut TraceReport) {
    for (idx, rec) in trace.iter().enumerate() {
        let expected_mover = if idx % 2 == 0 {
            Mover::Bob
        } else {
            Mover::Alice
        };
        let expected_round = (idx / 2 + 1) as u64;
        if rec.mover != expected_mover || rec.round != expected_round {
            report.push(
                CheckKind::Alternation,
                Status::Fail,
                Some(rec.round),
                None,
                Some(format!(
                    "record {} should be {expected_mover} in round {expected_round}",
                    idx + 1
                )),
            );
        }
        if idx == 0 {
            if rec.interval.is_degenerate() {
                report.push(
                    CheckKind::RadiusLaw,
                    Status::Fail,
                    Some(rec.round),
                    None,
                    Some("degenerate opening".into()),
                );
            }
            continue;
        }
        let prev = &trace[idx - 1].interval;
        let round = Some(rec.round);
        if prev.contains(&rec.interval) {
            report.push(CheckKind::Nesting, Status::Pass, round, None, None);
        } else {
            report.push(
                CheckKind::Nesting,
                Status::Fail,
                round,
                None,
                Some(format!("{} escapes {prev}", rec.interval)),
            );
        }
        let expected = gp.ratio_for(expected_mover) * prev.radius();
        let actual = rec.interval.radius();
        if actual == expected {
            report.push(CheckKind::RadiusLaw, Status::Pass, round, None, None);
        } else {
            report.push(
                CheckKind::RadiusLaw,
                Status::Fail,
                round,
                None,
                Some(format!(
                    "{} radius {actual}, expected {expected}",
                    rec.mover
                )),
            );
        }
    }
}

/// The sub-game seen by half `sub` (1 or 2) of an interleaved Alice, as a
/// trace of the `(α, αβ²)`-game with renumbered rounds.
pub fn split_interleaved(trace: &[TraceRecord], sub: u8) -> Result<Vec<TraceRecord>> {
    if sub != 1 && sub != 2 {
        return Err(Error::Domain(format!(
            "interleaved halves are 1 and 2, not {sub}"
        )));
    }
    let view = trace
        .chunks(2)
        .skip(usize::from(sub - 1))
        .step_by(2)
        .flatten()
        .enumerate()
        .map(|(idx, rec)| {
            let note = rec.note.clone().map(|mut n| {
                n.sub = None;
                n
            });
            TraceRecord::at(idx, rec.interval.clone(), note)
        })
        .collect();
    Ok(view)
}

/// `(α, αβ²)`: the game each interleaved half plays.
pub fn interleaved_view_params(gp: &GameParams) -> Result<GameParams> {
    GameParams::new(gp.alpha().clone(), gp.alpha() * gp.beta() * gp.beta())
}
