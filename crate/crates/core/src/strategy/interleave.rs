use crate::arithmetic::{DSequence, ExponentPair, Rational};
use crate::error::{Error, Result};
use crate::game::{GameParams, GameState, Move, Note, Strategy};

use super::alice::MixedBadAlice;

/// The ratio pair each half of an interleaved strategy sees: between two of
/// its own moves the interval shrinks by `β · α · β`, so the view is an
/// `(α, αβ²)`-game.
pub fn view_params(gp: &GameParams) -> Result<GameParams> {
    GameParams::new(gp.alpha().clone(), gp.alpha() * gp.beta() * gp.beta())
}

/// The `(α, αβ²)` sub-game seen by half `sub` (1 takes Alice's odd turns,
/// 2 the even ones). Requires Alice to be on move or just to have moved.
pub fn sub_view(state: &GameState, sub: u8) -> Result<GameState> {
    let view_gp = view_params(state.params())?;
    // History runs in (B_m, A_m) pairs; half 1 owns odd m, half 2 even m.
    let mut intervals = state
        .history()
        .chunks(2)
        .skip(usize::from(sub.saturating_sub(1)))
        .step_by(2)
        .flatten()
        .map(|(_, interval)| interval);
    let first = intervals
        .next()
        .ok_or_else(|| Error::Domain(format!("no turns yet for half {sub}")))?;
    let mut view = GameState::new(view_gp, first.clone())?;
    for interval in intervals {
        view.push(interval.clone())?;
    }
    Ok(view)
}

/// Two Alice strategies sharing one game, alternating turns.
pub struct Interleave {
    gp: GameParams,
    halves: [Box<dyn Strategy>; 2],
}

impl Interleave {
    /// Fails unless the halves' `(α, αβ²)` view game is admissible.
    pub fn new(
        gp: GameParams,
        first: Box<dyn Strategy>,
        second: Box<dyn Strategy>,
    ) -> Result<Self> {
        let view = view_params(&gp)?;
        if !view.is_admissible() {
            return Err(Error::NotAdmissible {
                gamma: view.gamma(),
            });
        }
        Ok(Interleave {
            gp,
            halves: [first, second],
        })
    }

    pub fn params(&self) -> &GameParams {
        &self.gp
    }
}

impl Strategy for Interleave {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        if state.params() != &self.gp {
            return Err(Error::Config(
                "interleaved strategy used in a different game".into(),
            ));
        }
        let turn = state.bob_count();
        let sub: u8 = if turn % 2 == 1 { 1 } else { 2 };
        let view = sub_view(state, sub)?;
        let mv = self.halves[usize::from(sub - 1)].respond(&view)?;
        let note = Note {
            sub: Some(sub),
            ..mv.note.unwrap_or_default()
        };
        Ok(Move::noted(mv.interval, note))
    }
}

/// One `(D, i, j)` target for the interleaved demo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub exponents: ExponentPair,
    pub seq: DSequence,
}

/// `mixed_bad_alice` for each target, each built for the `(α, αβ²)` view.
pub fn interleave_mixed_bad(
    gp: &GameParams,
    first: &Target,
    second: &Target,
) -> Result<Interleave> {
    let view = view_params(gp)?;
    let build = |t: &Target| -> Result<Box<dyn Strategy>> {
        Ok(Box::new(MixedBadAlice::new(
            view.clone(),
            t.exponents,
            t.seq.clone(),
        )?))
    };
    Interleave::new(gp.clone(), build(first)?, build(second)?)
}

/// `β' = αβ²`.
pub fn view_beta(gp: &GameParams) -> Rational {
    gp.alpha() * gp.beta() * gp.beta()
}
