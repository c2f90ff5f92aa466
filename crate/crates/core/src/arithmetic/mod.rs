//! Exact scalar and interval arithmetic.

mod dseq;
mod exponent;
mod interval;
mod power;
mod rational;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use dseq::{DSequence, PartialProducts};
pub use exponent::ExponentPair;
pub use interval::Interval;
pub use power::{cmp_pow, PowerProduct};
pub use rational::Rational;

use crate::error::{Error, Result};

/// The largest `D_n` dividing `q`, i.e. `1 / ‖q‖_D`.
pub fn dadic_part(q: &BigInt, seq: &DSequence) -> Result<BigInt> {
    if !q.is_positive() {
        return Err(Error::Domain(format!(
            "D-adic norm is defined for q >= 1, got {q}"
        )));
    }
    let mut current = BigInt::one();
    for k in 1.. {
        let next = &current * seq.d(k);
        if !q.is_multiple_of(&next) {
            break;
        }
        current = next;
    }
    Ok(current)
}

/// The D-adic pseudo absolute value `‖q‖_D = inf { 1/D_n : D_n | q }`.
pub fn dadic_norm(q: &BigInt, seq: &DSequence) -> Result<Rational> {
    Ok(Rational::new(1, dadic_part(q, seq)?))
}

/// Distance from `x` to the nearest integer, in `[0, 1/2]`.
pub fn nearest_int_dist(x: &Rational) -> Rational {
    let frac = x - Rational::from_integer(x.floor());
    let other = Rational::one() - &frac;
    frac.min(other)
}

/// Zero when `y` lies in `interval`, otherwise the gap to the nearer endpoint.
pub fn dist_point_interval(y: &Rational, interval: &Interval) -> Rational {
    if y < interval.lo() {
        interval.lo() - y
    } else if y > interval.hi() {
        y - interval.hi()
    } else {
        Rational::zero()
    }
}

/// The sub-interval of `parent` with radius `ratio * ρ(parent)` whose left
/// endpoint sits at `position` along the legal sliding range
/// (0 = leftmost, 1 = rightmost).
pub fn inscribed_interval(
    parent: &Interval,
    ratio: &Rational,
    position: &Rational,
) -> Result<Interval> {
    if !ratio.is_positive() || ratio >= &Rational::one() {
        return Err(Error::Domain(format!("ratio {ratio} outside (0, 1)")));
    }
    if position.is_negative() || position > &Rational::one() {
        return Err(Error::Domain(format!("position {position} outside [0, 1]")));
    }
    let width = parent.width();
    let lo = parent.lo() + position * (Rational::one() - ratio) * &width;
    let hi = &lo + ratio * &width;
    Interval::new(lo, hi)
}

/// Denominators of the continued-fraction convergents of `x` that do not
/// exceed `max_q`, ascending and without repeats.
pub fn convergent_denominators(x: &Rational, max_q: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    while &cur <= max_q {
        if out.last() != Some(&cur) {
            out.push(cur.clone());
        }
        let rem = num.mod_floor(&den);
        if rem.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, rem);
        let quotient = num.div_floor(&den);
        let next = quotient * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}
