use crate::arithmetic::{inscribed_interval, DSequence, ExponentPair, Interval, Rational};
use crate::dangerous::{enumerate_dangerous, DangerousPoint, ProblemParams, WindowParams};
use crate::error::{Error, Result};
use crate::game::{GameParams, GameState, Move, Note, Phase, Strategy};

use super::constants::{derive_constants, Derivation, StrategyConstants};

/// Flee `y`: leftmost inscribed interval when `y` is at or right of the
/// center of `b`, rightmost otherwise.
pub fn dodge_move(b: &Interval, y: &Rational, alpha: &Rational) -> Result<Interval> {
    let position = if y >= &b.center() {
        Rational::zero()
    } else {
        Rational::one()
    };
    inscribed_interval(b, alpha, &position)
}

#[derive(Clone, Debug)]
struct Frozen {
    /// Index `m` of the Bob interval re-indexed as `B_1`.
    origin: usize,
    constants: StrategyConstants,
    pp: ProblemParams,
    wp: WindowParams,
}

/// Alice's strategy for `bad_D(c; i, j)`.
///
/// Plays centered until Bob's interval is small enough, freezes that interval
/// as `B_1` and fixes `ρ_1` and `c`. From then on play runs in blocks of `t`
/// turns: at each block head `B_{t(k-1)+1}` it enumerates the points of
/// `C_{c,k}` whose danger region meets the interval. There is at most one;
/// Alice dodges it for the whole block, or plays centered if there is none.
#[derive(Clone, Debug)]
pub struct MixedBadAlice {
    gp: GameParams,
    exponents: ExponentPair,
    seq: DSequence,
    burn_in_target: Rational,
    frozen: Option<Frozen>,
    target: Option<DangerousPoint>,
}

impl MixedBadAlice {
    pub fn new(gp: GameParams, exponents: ExponentPair, seq: DSequence) -> Result<Self> {
        // Probe with a vanishing radius to learn the burn-in target.
        let burn_in_target = match derive_constants(&gp, &exponents, &Rational::one())? {
            Derivation::NeedsBurnIn { target } => target,
            Derivation::Ready(_) => Rational::one(),
        };
        Ok(MixedBadAlice {
            gp,
            exponents,
            seq,
            burn_in_target,
            frozen: None,
            target: None,
        })
    }

    pub fn burn_in_target(&self) -> &Rational {
        &self.burn_in_target
    }

    /// Constants fixed at the end of burn-in, once reached.
    pub fn constants(&self) -> Option<&StrategyConstants> {
        self.frozen.as_ref().map(|f| &f.constants)
    }

    fn freeze(&mut self, origin: usize, b1: &Interval) -> Result<&Frozen> {
        let constants = match derive_constants(&self.gp, &self.exponents, &b1.radius())? {
            Derivation::Ready(c) => c,
            Derivation::NeedsBurnIn { target } => {
                return Err(Error::Domain(format!(
                    "burn-in stopped at radius {} above target {target}",
                    b1.radius()
                )))
            }
        };
        let pp = ProblemParams::new(self.exponents, self.seq.clone(), constants.c.clone())?;
        let wp = constants.window_params();
        Ok(self.frozen.insert(Frozen {
            origin,
            constants,
            pp,
            wp,
        }))
    }
}

impl Strategy for MixedBadAlice {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        if state.params() != &self.gp {
            return Err(Error::Config(format!(
                "strategy built for {:?} but game uses {:?}",
                self.gp,
                state.params()
            )));
        }
        let b = state.current().clone();
        let m = state.bob_count();
        let alpha = self.gp.alpha().clone();
        if self.frozen.is_none() {
            if b.radius() > self.burn_in_target {
                let interval = inscribed_interval(&b, &alpha, &Rational::new(1, 2))?;
                let note = Note {
                    phase: Some(Phase::BurnIn),
                    ..Note::default()
                };
                return Ok(Move::noted(interval, note));
            }
            self.freeze(m, &b)?;
        }
        let frozen = self.frozen.as_ref().expect("frozen above");
        let t = frozen.constants.t as usize;
        let offset = m - frozen.origin;
        let block = (offset / t + 1) as u64;
        let head = offset.is_multiple_of(t);
        if head {
            let mut found = enumerate_dangerous(block, &b, &frozen.pp, &frozen.wp).into_iter();
            self.target = found.next();
            if let Some(second) = found.next() {
                return Err(Error::Contradiction {
                    block,
                    first: Box::new(self.target.take().expect("first point")),
                    second: Box::new(second),
                });
            }
        }
        let (interval, phase) = match &self.target {
            Some(p) => (dodge_move(&b, &p.value(), &alpha)?, Phase::Dodge),
            None => (
                inscribed_interval(&b, &alpha, &Rational::new(1, 2))?,
                Phase::Clear,
            ),
        };
        let first_move = offset == 0;
        let note = Note {
            phase: Some(phase),
            block: Some(block),
            target: self.target.clone(),
            rho1: first_move.then(|| frozen.constants.rho1.clone()),
            c: first_move.then(|| frozen.constants.c.clone()),
            sub: None,
        };
        Ok(Move::noted(interval, note))
    }
}
