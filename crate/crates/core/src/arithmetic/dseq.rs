use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An eventually periodic sequence `d_1, d_2, ...` of integers `>= 2`,
/// stored as a finite preperiod followed by a repeating period.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDSequence")]
pub struct DSequence {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

#[derive(Deserialize)]
struct RawDSequence {
    #[serde(default)]
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl TryFrom<RawDSequence> for DSequence {
    type Error = Error;
    fn try_from(raw: RawDSequence) -> Result<Self> {
        DSequence::new(raw.preperiod, raw.period)
    }
}

impl DSequence {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Domain("D sequence period must be nonempty".into()));
        }
        if let Some(bad) = preperiod.iter().chain(&period).find(|&&d| d < 2) {
            return Err(Error::Domain(format!("D sequence entry {bad} is below 2")));
        }
        Ok(DSequence { preperiod, period })
    }

    /// The constant sequence `p, p, p, ...`.
    pub fn constant(p: u64) -> Result<Self> {
        DSequence::new(Vec::new(), vec![p])
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// `d_k` for `k >= 1`.
    pub fn d(&self, k: usize) -> u64 {
        assert!(k >= 1, "D sequence is indexed from 1");
        let pre = self.preperiod.len();
        if k <= pre {
            self.preperiod[k - 1]
        } else {
            self.period[(k - pre - 1) % self.period.len()]
        }
    }

    /// Partial products `D_0 = 1, D_1, D_2, ...`.
    pub fn partial_products(&self) -> PartialProducts<'_> {
        PartialProducts {
            seq: self,
            n: 0,
            value: BigInt::one(),
        }
    }

    /// `D_n`.
    pub fn product(&self, n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * self.d(k))
    }
}

/// Infinite iterator over `(n, D_n)`.
#[derive(Clone, Debug)]
pub struct PartialProducts<'a> {
    seq: &'a DSequence,
    n: usize,
    value: BigInt,
}

impl Iterator for PartialProducts<'_> {
    type Item = (usize, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let item = (self.n, self.value.clone());
        self.n += 1;
        self.value *= self.seq.d(self.n);
        Some(item)
    }
}
