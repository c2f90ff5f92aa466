use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Exponents `i = i_num/den` and `j = j_num/den` with `i + j = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExponentPair")]
pub struct ExponentPair {
    i_num: u32,
    j_num: u32,
    den: u32,
}

#[derive(Deserialize)]
struct RawExponentPair {
    i_num: u32,
    j_num: u32,
    den: u32,
}

impl TryFrom<RawExponentPair> for ExponentPair {
    type Error = Error;
    fn try_from(raw: RawExponentPair) -> Result<Self> {
        ExponentPair::new(raw.i_num, raw.j_num, raw.den)
    }
}

impl ExponentPair {
    pub fn new(i_num: u32, j_num: u32, den: u32) -> Result<Self> {
        if i_num == 0 || j_num == 0 || u64::from(i_num) + u64::from(j_num) != u64::from(den) {
            return Err(Error::Domain(format!(
                "exponents {i_num}/{den} and {j_num}/{den} must be positive and sum to 1"
            )));
        }
        Ok(ExponentPair { i_num, j_num, den })
    }

    /// From rational `i` and `j`, over their common denominator.
    pub fn from_rationals(i: &Rational, j: &Rational) -> Result<Self> {
        if i + j != Rational::one() || !i.is_positive() || !j.is_positive() {
            return Err(Error::Domain(format!(
                "exponents {i} and {j} must be positive and sum to 1"
            )));
        }
        // i + j = 1 in lowest terms forces equal denominators.
        let convert = |x: &num_bigint::BigInt| {
            u32::try_from(x).map_err(|_| Error::Domain(format!("exponent {i} too large")))
        };
        ExponentPair::new(
            convert(i.numer())?,
            convert(j.numer())?,
            convert(i.denom())?,
        )
    }

    pub fn i_num(&self) -> u32 {
        self.i_num
    }

    pub fn j_num(&self) -> u32 {
        self.j_num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn i(&self) -> Rational {
        Rational::new(self.i_num, self.den)
    }

    pub fn j(&self) -> Rational {
        Rational::new(self.j_num, self.den)
    }

    /// `1 + j`.
    pub fn one_plus_j(&self) -> Rational {
        Rational::new(self.den + self.j_num, self.den)
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i, j) = ({}, {})", self.i(), self.j())
    }
}
