//! Shared fixtures and independent oracles for the integration tests.
//!
//! Nothing here calls the crate's own comparison or enumeration code: the
//! oracles work on plain integers so that a bug in the library cannot hide
//! behind the same bug in its check.
#![allow(dead_code)]

use mixed_bad::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use mixed_bad::dangerous::{ProblemParams, WindowParams};
use mixed_bad::game::GameParams;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn iv(lo: &str, hi: &str) -> Interval {
    Interval::new(r(lo), r(hi)).unwrap()
}

pub fn halves() -> GameParams {
    GameParams::new(r("1/2"), r("1/2")).unwrap()
}

/// `D = <2>`, `i = j = 1/2`, `c = 2^-15`, `R = 4`, `t = 2`.
pub fn reference() -> (GameParams, ProblemParams, WindowParams) {
    let pp = ProblemParams::new(
        ExponentPair::new(1, 1, 2).unwrap(),
        DSequence::constant(2).unwrap(),
        Rational::pow2(-15),
    )
    .unwrap();
    let wp = WindowParams::new(r("4"), 2).unwrap();
    (halves(), pp, wp)
}

/// Fractional bits of the fixed-point oracle.
pub const FRAC_BITS: u32 = 256;

/// `floor(x · 2^FRAC_BITS)` for `x >= 0`.
pub fn fixed(x: &Rational) -> BigInt {
    assert!(!x.is_negative());
    (x.numer() << FRAC_BITS as usize).div_floor(x.denom())
}

/// `x^(p/s)` in fixed point for `x > 0`, truncated (error below two ulps).
pub fn fixed_pow(x: &Rational, p: i64, s: u32) -> BigInt {
    assert!(x.is_positive() && s >= 1);
    let (num, den) = if p >= 0 {
        (x.numer().clone(), x.denom().clone())
    } else {
        (x.denom().clone(), x.numer().clone())
    };
    let e = p.unsigned_abs() as u32;
    // floor((num/den)^e · 2^(s·FRAC_BITS))^(1/s) = floor(x^(p/s) · 2^FRAC_BITS).
    let scaled = (num.pow(e) << (s * FRAC_BITS) as usize).div_floor(&den.pow(e));
    scaled.nth_root(s)
}

/// Compare `a^e` with `b` through the fixed-point oracle. `None` when the two
/// sides are within `margin_bits` ulps-worth of each other.
pub fn oracle_cmp_pow(
    a: &Rational,
    p: i64,
    s: u32,
    b: &Rational,
    margin: &BigInt,
) -> Option<std::cmp::Ordering> {
    let lhs = fixed_pow(a, p, s);
    let rhs = fixed(b);
    if (&lhs - &rhs).abs() <= *margin {
        None
    } else {
        Some(lhs.cmp(&rhs))
    }
}

/// `2^(FRAC_BITS - bits)`: a tie margin of `2^-bits` in fixed point.
pub fn margin(bits: u32) -> BigInt {
    BigInt::one() << (FRAC_BITS - bits) as usize
}

/// `‖q‖_D` for a constant sequence `<p>`, as `(1, p^n)`.
pub fn dnorm_const(q: u128, p: u128) -> u128 {
    let mut d = 1u128;
    while q.is_multiple_of(d * p) {
        d *= p;
    }
    d
}

/// `q ∈ C_c` for `D = <p>`, `c = 2^-m`, exponents `(i_num, den)`:
/// `D_n^den >= (q · 2^m)^i_num`, with `D_n` the largest power of `p` dividing `q`.
pub fn in_c_c_oracle(q: u64, p: u64, m: u32, i_num: u32, den: u32) -> bool {
    let d_n = BigInt::from(dnorm_const(u128::from(q), u128::from(p)));
    let lhs = d_n.pow(den);
    let rhs = (BigInt::from(q) << m as usize).pow(i_num);
    lhs >= rhs
}

/// Window of `q` for integer `R`: the `k` with
/// `R^((k-1) t den) <= q^(den + j_num) < R^(k t den)`, by linear search.
pub fn window_oracle(q: u64, big_r: u64, t: u32, j_num: u32, den: u32) -> u64 {
    let lhs = BigInt::from(q).pow(den + j_num);
    let step = BigInt::from(big_r).pow(t * den);
    let mut top = step.clone();
    let mut k = 1;
    while lhs >= top {
        top *= &step;
        k += 1;
    }
    k
}

/// Exact `‖x‖` without the library: distance from `n/d` to the nearest integer.
pub fn frac_dist(n: &BigInt, d: &BigInt) -> Rational {
    let rem = n.mod_floor(d);
    let other = d - &rem;
    Rational::new(rem.clone().min(other), d.clone())
}

/// Deterministic xorshift so oracle inputs do not depend on the rand crate's
/// stream layout.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// A rational in `[0, 1)` with denominator in `[1, max_den]`.
    pub fn unit_rational(&mut self, max_den: u64) -> Rational {
        let d = 1 + self.below(max_den);
        Rational::new(self.below(d) as i64, d as i64)
    }
}

/// Bob's extremal replies (leftmost, rightmost) for `t` turns, and a grid of
/// interior positions; every sequence is returned as positions in `[0, 1]`.
pub fn bob_sequences(t: u32, grid: &[Rational]) -> Vec<Vec<Rational>> {
    let mut seqs = vec![Vec::new()];
    for _ in 0..t {
        let mut next = Vec::new();
        for s in &seqs {
            for g in grid {
                let mut s2 = s.clone();
                s2.push(g.clone());
                next.push(s2);
            }
        }
        seqs = next;
    }
    seqs
}

/// The interval of radius `ratio · ρ(parent)` at `position ∈ [0, 1]` of the
/// sliding range, computed without the library helper.
pub fn slide(parent: &Interval, ratio: &Rational, position: &Rational) -> Interval {
    let width = parent.width() * ratio;
    let lo = parent.lo() + (parent.width() - &width) * position;
    let hi = &lo + &width;
    Interval::new(lo, hi).unwrap()
}

/// `dist(y, I)` computed from the endpoints.
pub fn dist(y: &Rational, i: &Interval) -> Rational {
    if y < i.lo() {
        i.lo() - y
    } else if y > i.hi() {
        y - i.hi()
    } else {
        Rational::zero()
    }
}

/// Outcome of [`engine_probes`].
#[derive(Debug, Default)]
pub struct ProbeStats {
    pub legal: usize,
    pub illegal: usize,
    pub failures: Vec<String>,
}

/// Random legal and perturbed moves against random game states. Every
/// perturbation has magnitude at least `2^-64`; legal moves must be
/// accepted, perturbed ones rejected without touching the state.
pub fn engine_probes(count: usize, seed: u64) -> ProbeStats {
    use mixed_bad::game::GameState;

    let pairs = [
        ("1/2", "1/2"),
        ("1/3", "2/5"),
        ("3/4", "1/8"),
        ("1/2", "1/4"),
        ("9/10", "9/10"),
    ];
    let tiny = Rational::pow2(-64);
    let mut rng = XorShift(seed | 1);
    let mut stats = ProbeStats::default();
    for probe in 0..count {
        let (a, b) = pairs[rng.below(pairs.len() as u64) as usize];
        let gp = GameParams::new(r(a), r(b)).unwrap();
        let lo = Rational::new(rng.below(1 << 20) as i64 - (1 << 19), 1i64 << 16);
        let width = Rational::new(1 + rng.below(1 << 16) as i64, 1i64 << 16);
        let mut state =
            GameState::new(gp, Interval::new(lo.clone(), &lo + width).unwrap()).unwrap();
        for _ in 0..rng.below(8) {
            let pos = Rational::new(rng.below(1 << 32) as i64, 1i64 << 32);
            let mv = slide(state.current(), state.required_ratio(), &pos);
            state.push(mv).unwrap();
        }
        let parent = state.current().clone();
        let ratio = state.required_ratio().clone();
        let pos = Rational::new(rng.below(1 << 32) as i64, 1i64 << 32);
        // Perturbation magnitude in [2^-64, width/4].
        let cap = parent.width() * Rational::new(1, 4);
        let scale = Rational::pow2(rng.below(64) as i64 - 63);
        let delta = (&tiny * Rational::from(1 + rng.below(1 << 16) as i64) * scale)
            .min(cap)
            .max(tiny.clone());
        let kind = rng.below(5);
        let candidate = match kind {
            0 => slide(&parent, &ratio, &pos),
            1 => {
                let m = slide(&parent, &ratio, &pos);
                Interval::new(m.lo().clone(), m.hi() + &delta).unwrap()
            }
            2 => {
                let m = slide(&parent, &ratio, &pos);
                Interval::new(m.lo() + &delta, m.hi().clone()).unwrap()
            }
            3 => {
                let m = slide(&parent, &ratio, &Rational::zero());
                Interval::new(m.lo() - &delta, m.hi() - &delta).unwrap()
            }
            _ => {
                let m = slide(&parent, &ratio, &Rational::one());
                Interval::new(m.lo() + &delta, m.hi() + &delta).unwrap()
            }
        };
        let before = state.clone();
        let result = state.push(candidate.clone());
        match (kind, result) {
            (0, Ok(())) => stats.legal += 1,
            (0, Err(e)) => stats.failures.push(format!(
                "probe {probe}: legal move {candidate} rejected: {e}"
            )),
            (_, Ok(())) => stats.failures.push(format!(
                "probe {probe}: perturbed move {candidate} (delta {delta}) accepted"
            )),
            (_, Err(e)) => {
                if !e.is_illegal_move() {
                    stats
                        .failures
                        .push(format!("probe {probe}: unexpected error {e}"));
                } else if state != before {
                    stats
                        .failures
                        .push(format!("probe {probe}: rejected move mutated the state"));
                } else {
                    stats.illegal += 1;
                }
            }
        }
    }
    stats
}

/// Bob replaying a fixed list of positions, one per turn.
pub struct Scripted {
    positions: Vec<Rational>,
    turn: usize,
}

impl Scripted {
    pub fn new(positions: Vec<Rational>) -> Self {
        Scripted { positions, turn: 0 }
    }
}

impl mixed_bad::game::Strategy for Scripted {
    fn respond(
        &mut self,
        state: &mixed_bad::game::GameState,
    ) -> mixed_bad::Result<mixed_bad::game::Move> {
        let pos = &self.positions[self.turn];
        self.turn += 1;
        Ok(mixed_bad::game::Move::plain(slide(
            state.current(),
            state.required_ratio(),
            pos,
        )))
    }
}

/// Alice dodging a fixed `y` on every turn.
pub struct Dodger(pub Rational);

impl mixed_bad::game::Strategy for Dodger {
    fn respond(
        &mut self,
        state: &mixed_bad::game::GameState,
    ) -> mixed_bad::Result<mixed_bad::game::Move> {
        let b = state.current();
        mixed_bad::strategy::dodge_move(b, &self.0, state.params().alpha())
            .map(mixed_bad::game::Move::plain)
    }
}

#[derive(Debug, Default)]
pub struct DodgeStats {
    pub instances: usize,
    pub games: usize,
    pub failures: Vec<String>,
}

/// Random `(B, y)` with `α = β = 1/2` (so `t = 2`, `γ = 1/4`): Alice dodges `y`
/// for `t` turns against every extremal Bob sequence, a grid of interior
/// sequences, and the stock Bobs. Each final Bob interval must keep
/// `dist > ½ γ ρ(B)` exactly.
pub fn dodge_suite(count: usize, seed: u64) -> DodgeStats {
    use mixed_bad::game::{run, Strategy};
    use mixed_bad::strategy::{Chase, ChaseTarget, Positional, RandomPosition};

    let gp = halves();
    let t = 2u32;
    let half_gamma = gp.gamma() / Rational::from(2);
    let extremal = bob_sequences(t, &[Rational::zero(), Rational::one()]);
    let grid: Vec<Rational> = (0..=4).map(|n| Rational::new(n, 4)).collect();
    let interior = bob_sequences(t, &grid);
    let mut rng = XorShift(seed | 1);
    let mut stats = DodgeStats::default();
    for idx in 0..count {
        let rho = Rational::new(1 + rng.below(1 << 20) as i64, 1 + rng.below(1 << 20) as i64);
        let lo = Rational::new(
            rng.below(1 << 24) as i64 - (1 << 23),
            1 + rng.below(1 << 16) as i64,
        );
        let b = Interval::new(lo.clone(), &lo + Rational::from(2) * &rho).unwrap();
        // y anywhere in B widened by ρ on each side.
        let y = b.lo() - &rho
            + Rational::from(4) * &rho * Rational::new(rng.below(1 << 30) as i64, 1i64 << 30);
        let need = &half_gamma * &rho;
        let mut bobs: Vec<(String, Box<dyn Strategy>)> = Vec::new();
        for s in extremal.iter().chain(interior.iter()) {
            bobs.push((format!("script {s:?}"), Box::new(Scripted::new(s.clone()))));
        }
        bobs.push(("centered".into(), Box::new(Positional::centered())));
        bobs.push(("leftmost".into(), Box::new(Positional::leftmost())));
        bobs.push(("rightmost".into(), Box::new(Positional::rightmost())));
        bobs.push(("random".into(), Box::new(RandomPosition::new(idx as u64))));
        bobs.push((
            "chase".into(),
            Box::new(Chase::new(ChaseTarget::Point(y.clone()))),
        ));
        for (name, mut bob) in bobs {
            let out = run(
                gp.clone(),
                b.clone(),
                &mut Dodger(y.clone()),
                bob.as_mut(),
                u64::from(t),
            )
            .unwrap();
            let d = dist(&y, &out.final_interval);
            if d <= need {
                stats
                    .failures
                    .push(format!("B = {b}, y = {y}, bob {name}: dist {d} <= {need}"));
            }
            stats.games += 1;
        }
        stats.instances += 1;
    }
    stats
}

/// `D = <3>`, `i = 1/3`, `j = 2/3`, `c = 2^-20`.
pub fn ternary_pp() -> ProblemParams {
    ProblemParams::new(
        ExponentPair::new(1, 2, 3).unwrap(),
        DSequence::constant(3).unwrap(),
        Rational::pow2(-20),
    )
    .unwrap()
}

/// `q · max(‖q‖_D^(1/i), ‖qx‖^(1/j))` in fixed point, for a constant
/// sequence `<p>`.
pub fn badness_term_fixed(x: &Rational, q: u64, p: u64, e: &ExponentPair) -> BigInt {
    let d = dnorm_const(u128::from(q), u128::from(p));
    let d_term = fixed_pow(
        &Rational::new(BigInt::one(), BigInt::from(d)),
        i64::from(e.den()),
        e.i_num(),
    );
    let frac = frac_dist(&(x.numer() * q), x.denom());
    let x_term = if frac.is_positive() {
        fixed_pow(&frac, i64::from(e.den()), e.j_num())
    } else {
        BigInt::from(0)
    };
    d_term.max(x_term) * q
}

#[derive(Debug, Default)]
pub struct BadnessStats {
    pub inputs: usize,
    pub failures: Vec<String>,
}

/// Exact argmin of `q · max(...)` over `q <= max_q` against the fixed-point
/// scan (ties within `2^-100`), and the argmin of `q ‖qx‖` against the
/// convergent denominators.
pub fn badness_suite(count: usize, seed: u64, max_q: u64) -> BadnessStats {
    use mixed_bad::arithmetic::convergent_denominators;
    use mixed_bad::verify::badness_profile;

    let (_, reference_pp, _) = reference();
    let ternary = ternary_pp();
    let tie = margin(100);
    let mut rng = XorShift(seed | 1);
    let mut stats = BadnessStats::default();
    for idx in 0..count {
        let (pp, p) = if idx % 2 == 0 {
            (&reference_pp, 2)
        } else {
            (&ternary, 3)
        };
        let x = rng.unit_rational(1 << 40);
        let profile = badness_profile(&x, max_q, pp);
        let values: Vec<BigInt> = (1..=max_q)
            .map(|q| badness_term_fixed(&x, q, p, pp.exponents()))
            .collect();
        let min = values.iter().min().unwrap();
        let at_witness = &values[(profile.witness_q - 1) as usize];
        if (at_witness - min).abs() > tie {
            stats.failures.push(format!(
                "x = {x}: exact witness {} is not a float minimiser",
                profile.witness_q
            ));
        }
        // Ties go to the smallest q: nothing before the witness is clearly smaller.
        if let Some(q) = values[..(profile.witness_q - 1) as usize]
            .iter()
            .position(|v| v < &(at_witness - &tie))
        {
            stats.failures.push(format!(
                "x = {x}: q = {} beats witness {}",
                q + 1,
                profile.witness_q
            ));
        }
        let mut best: Option<(Rational, u64)> = None;
        for q in 1..=max_q {
            let v = frac_dist(&(x.numer() * q), x.denom()) * Rational::from(q as i64);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, q));
            }
        }
        let argmin = BigInt::from(best.unwrap().1);
        if !convergent_denominators(&x, &BigInt::from(max_q)).contains(&argmin) {
            stats.failures.push(format!(
                "x = {x}: q ‖qx‖ minimiser {argmin} is not a convergent denominator"
            ));
        }
        stats.inputs += 1;
    }
    stats
}

/// The stock Bob for a reference run: `centered`, `leftmost`, `chase`
/// (nearest dangerous point up to window 8) or `random:<seed>`.
pub fn reference_bob(name: &str) -> Box<dyn mixed_bad::game::Strategy> {
    use mixed_bad::strategy::{make_bob, BobKind, ChaseTarget};
    let (_, pp, wp) = reference();
    let target = ChaseTarget::NearestDangerous { pp, wp, max_k: 8 };
    match name.split_once(':') {
        Some(("random", seed)) => {
            make_bob(BobKind::Random, Some(seed.parse().unwrap()), None).unwrap()
        }
        _ => make_bob(name.parse().unwrap(), None, Some(target)).unwrap(),
    }
}

/// The reference game, `B_1 = [0, 1/8]`, for `blocks` blocks of `t = 2`.
pub fn reference_run(bob: &str, blocks: u64) -> mixed_bad::game::RunOutcome {
    use mixed_bad::strategy::mixed_bad_alice;
    let (gp, pp, _) = reference();
    let mut alice = mixed_bad_alice(&gp, pp.exponents(), pp.seq()).unwrap();
    let mut bob = reference_bob(bob);
    mixed_bad::game::run(gp, iv("0", "1/8"), &mut alice, bob.as_mut(), 2 * blocks).unwrap()
}

/// Every reduced `r/q` in `[0, 1]` with `q < 2^16`, `q ∈ C_c` and window 6
/// under the reference parameters, as `(q, r)`, from integer tests only.
pub fn brute_force_window_six() -> std::collections::BTreeSet<(u64, u64)> {
    let mut out = std::collections::BTreeSet::new();
    for q in 1..(1u64 << 16) {
        if !in_c_c_oracle(q, 2, 15, 1, 2) || window_oracle(q, 4, 2, 1, 2) != 6 {
            continue;
        }
        for r in 0..=q {
            if r.gcd(&q) == 1 {
                out.insert((q, r));
            }
        }
    }
    out
}
