//! Exact comparison of products of rational powers.
//!
//! Every inequality in the game analysis has the shape
//! `∏ a_i^{e_i}  <=>  ∏ b_j^{f_j}` with positive rational bases and rational
//! exponents. Raising both sides to the lcm `L` of all exponent denominators
//! turns each side into an ordinary rational, and `x ↦ x^L` is strictly
//! increasing on the positives, so the order is preserved.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::Rational;
use crate::error::{Error, Result};

/// `base^exponent` with a positive base.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Factor {
    base: Rational,
    exponent: Rational,
}

/// A formal product of positive rationals raised to rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerProduct {
    factors: Vec<Factor>,
}

impl PowerProduct {
    /// The empty product, equal to 1.
    pub fn one() -> Self {
        PowerProduct::default()
    }

    /// Panics if `base` is not positive.
    pub fn of(base: Rational, exponent: Rational) -> Self {
        PowerProduct::one().times(base, exponent)
    }

    pub fn rational(value: Rational) -> Self {
        PowerProduct::of(value, Rational::one())
    }

    /// Panics if `base` is not positive.
    pub fn times(mut self, base: Rational, exponent: Rational) -> Self {
        assert!(
            base.is_positive(),
            "power base must be positive, got {base}"
        );
        if !exponent.is_zero() {
            self.factors.push(Factor { base, exponent });
        }
        self
    }

    pub fn times_product(mut self, other: &PowerProduct) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    fn denominator_lcm(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc.lcm(f.exponent.denom()))
    }

    /// The exact value of `self^power`; `power` must clear every exponent
    /// denominator.
    fn raised(&self, power: &BigInt) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, f| {
            let e = f.exponent.numer() * power / f.exponent.denom();
            let e = e.to_i64().expect("exponent fits in i64");
            acc * f.base.pow(e)
        })
    }

    /// Exact order of the two products.
    pub fn cmp_exact(&self, other: &PowerProduct) -> Ordering {
        let power = self.denominator_lcm().lcm(&other.denominator_lcm());
        self.raised(&power).cmp(&other.raised(&power))
    }

    /// Exact value when every exponent is an integer.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.factors.iter().all(|f| f.exponent.is_integer()) {
            Some(self.raised(&BigInt::one()))
        } else {
            None
        }
    }

    /// Approximate value; display only.
    pub fn to_f64(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.exponent.to_f64() * ln_rational(&f.base))
            .sum::<f64>()
            .exp()
    }
}

fn ln_rational(x: &Rational) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        if bits < 1000 {
            n.to_f64().unwrap_or(f64::NAN).ln()
        } else {
            let shift = bits - 64;
            (n >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    ln_big(x.numer()) - ln_big(x.denom())
}

/// Order of `a^e` versus `b` for positive `a`, `b` and rational `e = p/s`,
/// decided as the order of `a^p` versus `b^s`. A negative `p` inverts `a`.
pub fn cmp_pow(a: &Rational, e: &Rational, b: &Rational) -> Result<Ordering> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!(
            "cmp_pow needs positive operands, got a = {a}, b = {b}"
        )));
    }
    let (base, p) = if e.is_negative() {
        (a.recip()?, -e.numer())
    } else {
        (a.clone(), e.numer().clone())
    };
    let p = p
        .to_i64()
        .ok_or_else(|| Error::Domain("exponent too large".into()))?;
    let s = e
        .denom()
        .to_i64()
        .ok_or_else(|| Error::Domain("exponent too large".into()))?;
    Ok(base.pow(p).cmp(&b.pow(s)))
}
