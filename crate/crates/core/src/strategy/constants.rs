use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::arithmetic::{ExponentPair, PowerProduct, Rational};
use crate::dangerous::WindowParams;
use crate::error::{Error, Result};
use crate::game::GameParams;

/// `R`, `t`, `ρ_1` and `c` for one game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyConstants {
    #[serde(rename = "R")]
    pub r: Rational,
    pub t: u32,
    pub rho1: Rational,
    pub c: Rational,
}

/// Result of [`derive_constants`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Ready(StrategyConstants),
    /// The supplied `ρ_1` is too large; shrink the game to `target` first.
    NeedsBurnIn {
        target: Rational,
    },
}

/// Fix `R = 1/(αβ)`, the minimal `t` with `(αβ)^t < γ/2`, and `c` as the
/// largest power of 1/2 strictly below `(γ ρ_1 / 2)^(1/j)`.
pub fn derive_constants(gp: &GameParams, e: &ExponentPair, rho1: &Rational) -> Result<Derivation> {
    let gamma = gp.gamma();
    if !gamma.is_positive() {
        return Err(Error::NotAdmissible { gamma });
    }
    if !rho1.is_positive() {
        return Err(Error::Domain(format!("rho1 = {rho1} must be positive")));
    }
    let shrink = gp.alpha() * gp.beta();
    let r = shrink.recip()?;
    let t = minimal_t(&shrink, &gamma);
    let rho_bound = rho1_bound(&r, t, e);
    if PowerProduct::rational(rho1.clone()).cmp_exact(&rho_bound) != Ordering::Less {
        return Ok(Derivation::NeedsBurnIn {
            target: largest_half_power_below(&rho_bound, 0),
        });
    }
    let c = largest_half_power_below(&c_bound(&gamma, rho1, e), 1);
    Ok(Derivation::Ready(StrategyConstants {
        r,
        t,
        rho1: rho1.clone(),
        c,
    }))
}

fn minimal_t(shrink: &Rational, gamma: &Rational) -> u32 {
    let half_gamma = gamma / Rational::from(2);
    let mut t = 1;
    let mut power = shrink.clone();
    while power >= half_gamma {
        t += 1;
        power = power * shrink;
    }
    t
}

/// `(R^(-2t/(1+j)) / 4)^j`.
pub fn rho1_bound(r: &Rational, t: u32, e: &ExponentPair) -> PowerProduct {
    let r_exp = Rational::new(
        -2 * i64::from(t) * i64::from(e.j_num()),
        i64::from(e.den() + e.j_num()),
    );
    PowerProduct::of(Rational::new(1, 4), e.j()).times(r.clone(), r_exp)
}

/// `(γ ρ_1 / 2)^(1/j)`.
pub fn c_bound(gamma: &Rational, rho1: &Rational, e: &ExponentPair) -> PowerProduct {
    let base = gamma * rho1 / Rational::from(2);
    PowerProduct::of(base, Rational::new(e.den(), e.j_num()))
}

/// Largest `2^-n` with `n >= min_n` lying strictly below `bound`.
fn largest_half_power_below(bound: &PowerProduct, min_n: i64) -> Rational {
    let below =
        |n: i64| PowerProduct::rational(Rational::pow2(-n)).cmp_exact(bound) == Ordering::Less;
    let estimate = -bound.to_f64().log2();
    let mut n = if estimate.is_finite() {
        (estimate.floor() as i64).max(min_n)
    } else {
        min_n
    };
    while n > min_n && below(n - 1) {
        n -= 1;
    }
    while !below(n) {
        n += 1;
    }
    Rational::pow2(-n)
}

impl StrategyConstants {
    pub fn window_params(&self) -> WindowParams {
        WindowParams::new(self.r.clone(), self.t).expect("R > 1 and t >= 1 by construction")
    }

    /// Re-verify every defining inequality by exact comparison.
    pub fn check(&self, gp: &GameParams, e: &ExponentPair) -> Result<()> {
        let fail = |what: &str| Err(Error::Domain(format!("constants violate {what}")));
        let gamma = gp.gamma();
        let shrink = gp.alpha() * gp.beta();
        if &self.r * &shrink != Rational::one() {
            return fail("R = 1/(alpha beta)");
        }
        let half_gamma = &gamma / Rational::from(2);
        if self.t == 0
            || shrink.pow(self.t.into()) >= half_gamma
            || shrink.pow(i64::from(self.t) - 1) < half_gamma
        {
            return fail("minimality of t");
        }
        let rho = PowerProduct::rational(self.rho1.clone());
        if !self.rho1.is_positive()
            || rho.cmp_exact(&rho1_bound(&self.r, self.t, e)) != Ordering::Less
        {
            return fail("the rho1 bound");
        }
        let c = PowerProduct::rational(self.c.clone());
        if !self.c.is_positive()
            || self.c >= Rational::one()
            || c.cmp_exact(&c_bound(&gamma, &self.rho1, e)) != Ordering::Less
        {
            return fail("the c bound");
        }
        Ok(())
    }
}

/// Number of rounds after which `B_{m+1}` has radius `<= target`.
pub fn burn_in_rounds(gp: &GameParams, opening_radius: &Rational, target: &Rational) -> u64 {
    let shrink = gp.alpha() * gp.beta();
    let mut radius = opening_radius.clone();
    let mut rounds = 0;
    while &radius > target {
        radius = radius * &shrink;
        rounds += 1;
    }
    rounds
}

/// Constants and burn-in length for a game opened with radius `opening_radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub burn_in_rounds: u64,
    pub constants: StrategyConstants,
}

impl Plan {
    pub fn for_opening(
        gp: &GameParams,
        e: &ExponentPair,
        opening_radius: &Rational,
    ) -> Result<Self> {
        match derive_constants(gp, e, opening_radius)? {
            Derivation::Ready(constants) => Ok(Plan {
                burn_in_rounds: 0,
                constants,
            }),
            Derivation::NeedsBurnIn { target } => {
                let rounds = burn_in_rounds(gp, opening_radius, &target);
                let shrink = gp.alpha() * gp.beta();
                let rho1 = opening_radius * shrink.pow(rounds as i64);
                match derive_constants(gp, e, &rho1)? {
                    Derivation::Ready(constants) => Ok(Plan {
                        burn_in_rounds: rounds,
                        constants,
                    }),
                    Derivation::NeedsBurnIn { .. } => unreachable!("burn-in reaches the target"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn halves() -> GameParams {
        GameParams::new(r("1/2"), r("1/2")).unwrap()
    }

    fn sqrt_pair() -> ExponentPair {
        ExponentPair::new(1, 1, 2).unwrap()
    }

    #[test]
    fn reference_constants() {
        let d = derive_constants(&halves(), &sqrt_pair(), &r("1/16")).unwrap();
        let Derivation::Ready(k) = d else {
            panic!("expected constants, got {d:?}")
        };
        assert_eq!(k.r, r("4"));
        assert_eq!(k.t, 2);
        assert_eq!(k.rho1, r("1/16"));
        assert_eq!(k.c, Rational::pow2(-15));
        k.check(&halves(), &sqrt_pair()).unwrap();
    }

    #[test]
    fn reference_bounds_in_integer_form() {
        // rho1 bound is 2^(-11/3): cubes compare as 2^-12 < 2^-11.
        let bound = rho1_bound(&r("4"), 2, &sqrt_pair());
        assert_eq!(
            bound.cmp_exact(&PowerProduct::of(r("2"), r("-11/3"))),
            Ordering::Equal
        );
        // c bound is (2^-7)^2 = 2^-14.
        let cb = c_bound(&r("1/4"), &r("1/16"), &sqrt_pair());
        assert_eq!(cb.to_rational(), Some(Rational::pow2(-14)));
    }

    #[test]
    fn burn_in_needed() {
        let d = derive_constants(&halves(), &sqrt_pair(), &r("1/2")).unwrap();
        assert_eq!(d, Derivation::NeedsBurnIn { target: r("1/16") });
        assert_eq!(burn_in_rounds(&halves(), &r("1/2"), &r("1/16")), 2);
        let plan = Plan::for_opening(&halves(), &sqrt_pair(), &r("1/2")).unwrap();
        assert_eq!(plan.burn_in_rounds, 2);
        assert_eq!(plan.constants.rho1, r("1/32"));
        assert_eq!(plan.constants.c, Rational::pow2(-17));
        plan.constants.check(&halves(), &sqrt_pair()).unwrap();
    }

    #[test]
    fn not_admissible() {
        let gp = GameParams::new(r("3/4"), r("1/2")).unwrap();
        match derive_constants(&gp, &sqrt_pair(), &r("1/16")) {
            Err(Error::NotAdmissible { gamma }) => assert_eq!(gamma, r("-1/8")),
            other => panic!("expected not-admissible, got {other:?}"),
        }
    }

    #[test]
    fn check_catches_tampering() {
        let Derivation::Ready(k) = derive_constants(&halves(), &sqrt_pair(), &r("1/16")).unwrap()
        else {
            unreachable!()
        };
        let mut bad_c = k.clone();
        bad_c.c = Rational::pow2(-14);
        assert!(bad_c.check(&halves(), &sqrt_pair()).is_err());
        let mut bad_t = k.clone();
        bad_t.t = 3;
        assert!(bad_t.check(&halves(), &sqrt_pair()).is_err());
        let mut bad_rho = k;
        bad_rho.rho1 = r("1/8");
        assert!(bad_rho.check(&halves(), &sqrt_pair()).is_err());
    }
}
