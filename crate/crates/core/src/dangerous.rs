//! The dangerous rationals `C_c`, their windows `C_{c,k}`, and exact tests
//! against the danger regions `Δ_c(P) = { x : |x - P| <= c^j / q^(1+j) }`.
//!
//! `Δ_c(P)` is never materialized: its radius is irrational in general, so
//! every question about it is answered by an integer-power comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::{
    dadic_norm, dist_point_interval, DSequence, ExponentPair, Interval, PowerProduct, Rational,
};
use crate::error::{Error, Result};

/// The fixed-constant target set: exponents, D sequence and `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemParams {
    exponents: ExponentPair,
    seq: DSequence,
    c: Rational,
}

impl ProblemParams {
    pub fn new(exponents: ExponentPair, seq: DSequence, c: Rational) -> Result<Self> {
        if !c.is_positive() || c >= Rational::one() {
            return Err(Error::Domain(format!("c = {c} must lie in (0, 1)")));
        }
        Ok(ProblemParams { exponents, seq, c })
    }

    pub fn exponents(&self) -> &ExponentPair {
        &self.exponents
    }

    pub fn seq(&self) -> &DSequence {
        &self.seq
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }
}

/// Window parameters `R > 1` and `t >= 1` shaping `C_{c,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowParams {
    #[serde(rename = "R")]
    r: Rational,
    t: u32,
}

impl WindowParams {
    pub fn new(r: Rational, t: u32) -> Result<Self> {
        if r <= Rational::one() {
            return Err(Error::Domain(format!("R = {r} must exceed 1")));
        }
        if t == 0 {
            return Err(Error::Domain("t must be at least 1".into()));
        }
        Ok(WindowParams { r, t })
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }
}

/// A reduced fraction `r/q` in `C_{c,k}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DangerousPoint {
    #[serde(with = "int_string")]
    r: BigInt,
    #[serde(with = "int_string")]
    q: BigInt,
    k: u64,
}

impl DangerousPoint {
    /// Checks only the shape (`q >= 1`, `gcd(r, q) = 1`); membership in
    /// `C_{c,k}` is the enumerator's business.
    pub fn new(r: BigInt, q: BigInt, k: u64) -> Result<Self> {
        if !q.is_positive() || !r.gcd(&q).is_one() {
            return Err(Error::Domain(format!("{r}/{q} is not a reduced fraction")));
        }
        Ok(DangerousPoint { r, q, k })
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.r.clone(), self.q.clone())
    }

    fn cmp_value(&self, other: &DangerousPoint) -> Ordering {
        match (
            self.r.to_i128(),
            self.q.to_i128(),
            other.r.to_i128(),
            other.q.to_i128(),
        ) {
            (Some(a), Some(b), Some(c), Some(d))
                if small(a) && small(b) && small(c) && small(d) =>
            {
                (a * d).cmp(&(c * b))
            }
            _ => (&self.r * &other.q).cmp(&(&other.r * &self.q)),
        }
    }
}

fn small(x: i128) -> bool {
    x.unsigned_abs() < 1 << 62
}

impl fmt::Display for DangerousPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} (k = {})", self.r, self.q, self.k)
    }
}

impl fmt::Debug for DangerousPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) mod int_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether `q` is the denominator of points in `C_c`:
/// `‖q‖_D^den <= (c/q)^i_num`.
pub fn in_c_c(q: &BigInt, pp: &ProblemParams) -> bool {
    if !q.is_positive() {
        return false;
    }
    let e = pp.exponents();
    let norm = dadic_norm(q, pp.seq()).expect("q is positive");
    let rhs = (pp.c() / Rational::from_integer(q.clone())).pow(e.i_num().into());
    norm.pow(e.den().into()) <= rhs
}

/// `q^(1+j)/t < R^k`, in the integer-power form `q^(den + j_num) < R^(k t den)`.
fn below_window_top(q: &BigInt, k: u64, wp: &WindowParams, e: &ExponentPair) -> bool {
    let lhs = Rational::from_integer(q.clone()).pow(i64::from(e.den() + e.j_num()));
    lhs < window_top_power(k, wp, e)
}

fn window_top_power(k: u64, wp: &WindowParams, e: &ExponentPair) -> Rational {
    let exp = k * u64::from(wp.t()) * u64::from(e.den());
    wp.r()
        .pow(i64::try_from(exp).expect("window exponent fits in i64"))
}

/// The unique `k >= 1` with `R^(k-1) <= q^((1+j)/t) < R^k`.
pub fn window_index(q: &BigInt, wp: &WindowParams, e: &ExponentPair) -> u64 {
    assert!(q.is_positive(), "window index needs q >= 1");
    // Start from a floating estimate, then settle it exactly.
    let estimate = {
        let log_q = q.bits() as f64 * std::f64::consts::LN_2;
        let log_q = q
            .to_f64()
            .map(f64::ln)
            .filter(|v| v.is_finite())
            .unwrap_or(log_q);
        let log_r = wp.r().to_f64().ln();
        let x = log_q * e.one_plus_j().to_f64() / f64::from(wp.t()) / log_r;
        if x.is_finite() && x >= 0.0 {
            (x.floor() as u64).saturating_add(1)
        } else {
            1
        }
    };
    let mut k = estimate.max(1);
    while k > 1 && below_window_top(q, k - 1, wp, e) {
        k -= 1;
    }
    while !below_window_top(q, k, wp, e) {
        k += 1;
    }
    k
}

/// Largest `q >= 0` with `q^((1+j)/t) < R^windows`; zero when `windows = 0`.
/// Denominators `1..=q_ceiling(K)` are exactly those in windows `1..=K`.
pub fn q_ceiling(windows: u64, wp: &WindowParams, e: &ExponentPair) -> BigInt {
    let top = window_top_power(windows, wp, e);
    let power = i64::from(e.den() + e.j_num());
    let fits = |q: &BigInt| Rational::from_integer(q.clone()).pow(power) < top;
    largest_satisfying(fits)
}

/// Largest `q >= 0` satisfying a predicate that holds on `0..=answer` and
/// fails beyond it.
fn largest_satisfying(pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while pred(&hi) {
        lo = hi.clone();
        hi <<= 1;
    }
    // pred(lo) holds (or lo = 0), pred(hi) fails.
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The radius `c^j / q^(1+j)` of `Δ_c(r/q)` as an exact power product.
pub fn delta_radius(q: &BigInt, pp: &ProblemParams) -> PowerProduct {
    let e = pp.exponents();
    PowerProduct::of(pp.c().clone(), e.j())
        .times(Rational::from_integer(q.clone()), -e.one_plus_j())
}

/// The smallest power of two `>=` the radius of `Δ_c(r/q)`.
pub fn delta_radius_bound(q: &BigInt, pp: &ProblemParams) -> Rational {
    let radius = delta_radius(q, pp);
    let mut exp = radius.to_f64().log2().ceil();
    if !exp.is_finite() {
        exp = 0.0;
    }
    let mut exp = exp as i64;
    let at_least =
        |e: i64| PowerProduct::rational(Rational::pow2(e)).cmp_exact(&radius) != Ordering::Less;
    while at_least(exp - 1) {
        exp -= 1;
    }
    while !at_least(exp) {
        exp += 1;
    }
    Rational::pow2(exp)
}

/// Whether `Δ_c(P)` meets `interval`, decided as
/// `dist^den * q^(den + j_num) <= c^j_num`.
pub fn delta_intersects(point: &DangerousPoint, interval: &Interval, pp: &ProblemParams) -> bool {
    let dist = dist_point_interval(&point.value(), interval);
    if dist.is_zero() {
        return true;
    }
    let e = pp.exponents();
    let lhs = dist.pow(e.den().into())
        * Rational::from_integer(point.q().clone()).pow(i64::from(e.den() + e.j_num()));
    lhs <= pp.c().pow(e.j_num().into())
}

/// Denominators of `C_{c,k}`: every `q` in window `k` with `q ∈ C_c`, ascending.
pub fn window_denominators(k: u64, pp: &ProblemParams, wp: &WindowParams) -> Vec<BigInt> {
    assert!(k >= 1, "windows are indexed from 1");
    let e = pp.exponents();
    let q_lo = q_ceiling(k - 1, wp, e) + BigInt::one();
    let q_hi = q_ceiling(k, wp, e);
    let mut out = Vec::new();
    for (n, d_n) in pp.seq().partial_products() {
        if d_n > q_hi {
            break;
        }
        let next_d = BigInt::from(pp.seq().d(n + 1));
        // q = D_n * m with d_{n+1} ∤ m has ‖q‖_D = 1/D_n exactly, so C_c
        // membership reduces to q <= cap.
        let upper = membership_cap(&d_n, pp).min(q_hi.clone());
        let lower = q_lo.clone().max(d_n.clone());
        if upper < lower {
            continue;
        }
        let mut m = lower.div_ceil(&d_n);
        let m_hi = upper.div_floor(&d_n);
        while m <= m_hi {
            if !m.is_multiple_of(&next_d) {
                out.push(&d_n * &m);
            }
            m += 1;
        }
    }
    out.sort();
    out
}

/// Every `P ∈ C_{c,k}` whose danger region meets `interval`, sorted by `(q, r)`.
pub fn enumerate_dangerous(
    k: u64,
    interval: &Interval,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> Vec<DangerousPoint> {
    let denominators = window_denominators(k, pp, wp);
    let mut out = Vec::new();
    let Some(q_min) = denominators.first() else {
        return out;
    };
    // Δ radius shrinks as q grows, so the bound at the smallest q covers all.
    let pad = delta_radius_bound(q_min, pp);
    let lo = interval.lo() - &pad;
    let hi = interval.hi() + &pad;
    for q in &denominators {
        push_numerators(&mut out, q, k, &lo, &hi, interval, pp);
    }
    out
}

/// The point of `C_{c,k}` nearest `y` (ties to the smaller value).
pub fn nearest_in_window(
    k: u64,
    y: &Rational,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> Option<DangerousPoint> {
    let mut best: Option<(Rational, DangerousPoint)> = None;
    for q in window_denominators(k, pp, wp) {
        let scaled = y * Rational::from_integer(q.clone());
        let below = scaled.floor();
        // Nearest reduced numerators at or below and above y·q.
        let mut down = below.clone();
        while !down.gcd(&q).is_one() {
            down -= 1;
        }
        let mut up = below + BigInt::one();
        while !up.gcd(&q).is_one() {
            up += 1;
        }
        for r in [down, up] {
            let point = DangerousPoint { r, q: q.clone(), k };
            let dist = (point.value() - y).abs();
            let better = match &best {
                None => true,
                Some((d, p)) => dist < *d || (dist == *d && point.cmp_value(p) == Ordering::Less),
            };
            if better {
                best = Some((dist, point));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Largest `q` with `(1/D_n)^den <= (c/q)^i_num`, i.e. `q^i_num <= c^i_num D_n^den`.
fn membership_cap(d_n: &BigInt, pp: &ProblemParams) -> BigInt {
    let e = pp.exponents();
    let rhs =
        pp.c().pow(e.i_num().into()) * Rational::from_integer(d_n.clone()).pow(e.den().into());
    if rhs < Rational::one() {
        return BigInt::zero();
    }
    let i_num = i64::from(e.i_num());
    largest_satisfying(|q| Rational::from_integer(q.clone()).pow(i_num) <= rhs)
}

/// A reduced numerator, kept machine-sized when it fits.
enum Numerator {
    Small(i64),
    Big(BigInt),
}

fn push_numerators(
    out: &mut Vec<DangerousPoint>,
    q: &BigInt,
    k: u64,
    lo: &Rational,
    hi: &Rational,
    interval: &Interval,
    pp: &ProblemParams,
) {
    scan_numerators(q, k, lo, hi, interval, pp, |r| {
        let r = match r {
            Numerator::Small(r) => BigInt::from(r),
            Numerator::Big(r) => r,
        };
        out.push(DangerousPoint { r, q: q.clone(), k });
    });
}

/// Feed `visit` every reduced `r` with `r/q` in `[lo, hi]` whose danger
/// region meets `interval`.
fn scan_numerators(
    q: &BigInt,
    k: u64,
    lo: &Rational,
    hi: &Rational,
    interval: &Interval,
    pp: &ProblemParams,
    mut visit: impl FnMut(Numerator),
) {
    let qr = Rational::from_integer(q.clone());
    let r_lo = (lo * &qr).ceil();
    let r_hi = (hi * &qr).floor();
    // Numerators with r/q inside the interval meet it at distance zero.
    let inner_lo = (interval.lo() * &qr).ceil();
    let inner_hi = (interval.hi() * &qr).floor();
    let meets = |r: &BigInt| {
        let point = DangerousPoint {
            r: r.clone(),
            q: q.clone(),
            k,
        };
        delta_intersects(&point, interval, pp)
    };
    if let (Some(q64), Some(a), Some(b), Some(c), Some(d)) = (
        q.to_i64(),
        r_lo.to_i64(),
        r_hi.to_i64(),
        inner_lo.to_i64(),
        inner_hi.to_i64(),
    ) {
        for r in a..=b {
            if r.gcd(&q64) == 1 && ((c <= r && r <= d) || meets(&BigInt::from(r))) {
                visit(Numerator::Small(r));
            }
        }
        return;
    }
    let mut r = r_lo;
    while r <= r_hi {
        if r.gcd(q).is_one() && ((inner_lo <= r && r <= inner_hi) || meets(&r)) {
            visit(Numerator::Big(r.clone()));
        }
        r += 1;
    }
}

/// The separation lower bound `c^(-i) R^((i/(1+j)) t (k-1) - (1/(1+j)) 2tk)`
/// between distinct points of `C_{c,k}`.
pub fn separation_bound(k: u64, pp: &ProblemParams, wp: &WindowParams) -> PowerProduct {
    let e = pp.exponents();
    let t = i64::from(wp.t());
    let k = i64::try_from(k).expect("k fits in i64");
    let r_exp = Rational::new(
        i64::from(e.i_num()) * t * (k - 1) - 2 * t * k * i64::from(e.den()),
        i64::from(e.den() + e.j_num()),
    );
    PowerProduct::of(pp.c().clone(), -e.i()).times(wp.r().clone(), r_exp)
}

/// Closest pair among the points of `C_{c,k}` near `interval`, when it is no
/// farther apart than the separation bound.
pub fn separation_violation(
    k: u64,
    interval: &Interval,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> Option<(DangerousPoint, DangerousPoint)> {
    let q_lo = q_ceiling(k - 1, wp, pp.exponents()) + 1;
    let padded = interval.padded(&delta_radius_bound(&q_lo, pp));
    let bound = separation_bound(k, pp, wp);
    if let Some(points) = small_points(k, &padded, pp, wp) {
        return small_violation(&points, &bound).map(|(a, b)| {
            let point = |(r, q): (i64, i64)| DangerousPoint {
                r: r.into(),
                q: q.into(),
                k,
            };
            (point(a), point(b))
        });
    }
    let mut points = enumerate_dangerous(k, &padded, pp, wp);
    points.sort_by(|a, b| a.cmp_value(b));
    // The closest pair of a sorted set is adjacent.
    let closest = points
        .windows(2)
        .map(|w| (w[1].value() - w[0].value(), w))
        .min_by(|a, b| a.0.cmp(&b.0))?;
    if PowerProduct::rational(closest.0).cmp_exact(&bound) == Ordering::Greater {
        None
    } else {
        Some((closest.1[0].clone(), closest.1[1].clone()))
    }
}

/// Below this every cross product of two gaps fits in an `i128`.
const SMALL: i64 = 1 << 31;

/// `enumerate_dangerous` as `(r, q)` pairs, when all of them are below [`SMALL`].
fn small_points(
    k: u64,
    interval: &Interval,
    pp: &ProblemParams,
    wp: &WindowParams,
) -> Option<Vec<(i64, i64)>> {
    let denominators = window_denominators(k, pp, wp);
    let Some(q_min) = denominators.first() else {
        return Some(Vec::new());
    };
    let pad = delta_radius_bound(q_min, pp);
    let lo = interval.lo() - &pad;
    let hi = interval.hi() + &pad;
    let mut out = Vec::new();
    for q in &denominators {
        let q64 = q.to_i64().filter(|&q| q < SMALL)?;
        let mut fits = true;
        scan_numerators(q, k, &lo, &hi, interval, pp, |r| match r {
            Numerator::Small(r) if r.abs() < SMALL => out.push((r, q64)),
            _ => fits = false,
        });
        if !fits {
            return None;
        }
    }
    Some(out)
}

fn small_violation(
    points: &[(i64, i64)],
    bound: &PowerProduct,
) -> Option<((i64, i64), (i64, i64))> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| {
        (i128::from(a.0) * i128::from(b.1)).cmp(&(i128::from(b.0) * i128::from(a.1)))
    });
    // Gap between neighbours as (numerator, denominator), both positive.
    let gap = |a: (i64, i64), b: (i64, i64)| {
        (
            i128::from(b.0) * i128::from(a.1) - i128::from(a.0) * i128::from(b.1),
            i128::from(a.1) * i128::from(b.1),
        )
    };
    let (a, b) = sorted.windows(2).map(|w| (w[0], w[1])).min_by(|x, y| {
        let (gn, gd) = gap(x.0, x.1);
        let (hn, hd) = gap(y.0, y.1);
        (gn * hd).cmp(&(hn * gd))
    })?;
    let (n, d) = gap(a, b);
    let closest = Rational::new(BigInt::from(n), BigInt::from(d));
    if PowerProduct::rational(closest).cmp_exact(bound) == Ordering::Greater {
        None
    } else {
        Some((a, b))
    }
}

/// Whether every two distinct points of `C_{c,k}` near `interval` are farther
/// apart than the separation bound.
pub fn separation_ok(k: u64, interval: &Interval, pp: &ProblemParams, wp: &WindowParams) -> bool {
    separation_violation(k, interval, pp, wp).is_none()
}
