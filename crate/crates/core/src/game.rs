//! The Schmidt `(α, β)`-game on the line: Bob opens with `B_1`, then Alice and
//! Bob alternate nested closed intervals with `ρ(A_m) = α ρ(B_m)` and
//! `ρ(B_{m+1}) = β ρ(A_m)`. Every move is re-validated exactly.

use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::{Interval, Rational};
use crate::dangerous::DangerousPoint;
use crate::error::{Endpoint, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Bob,
    Alice,
}

impl Mover {
    pub fn other(self) -> Mover {
        match self {
            Mover::Bob => Mover::Alice,
            Mover::Alice => Mover::Bob,
        }
    }
}

impl fmt::Display for Mover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mover::Bob => f.write_str("bob"),
            Mover::Alice => f.write_str("alice"),
        }
    }
}

/// Shrink ratios `α` (Alice) and `β` (Bob), both in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameParams {
    alpha: Rational,
    beta: Rational,
}

impl GameParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if !v.is_positive() || v >= &Rational::one() {
                return Err(Error::Domain(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(GameParams { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `γ = 1 - 2α + αβ`.
    pub fn gamma(&self) -> Rational {
        Rational::one() - Rational::from(2) * &self.alpha + &self.alpha * &self.beta
    }

    pub fn is_admissible(&self) -> bool {
        self.gamma().is_positive()
    }

    pub fn ratio_for(&self, mover: Mover) -> &Rational {
        match mover {
            Mover::Alice => &self.alpha,
            Mover::Bob => &self.beta,
        }
    }
}

/// Strategy phase recorded in a trace note.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Shrinking toward the starting radius before constants are fixed.
    BurnIn,
    /// Fleeing the block's single dangerous point.
    Dodge,
    /// No dangerous point this block.
    Clear,
}

/// Structured annotation attached to a move.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<DangerousPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho1: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    /// Which half of an interleaved strategy made the move (1 or 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<u8>,
}

/// A proposed interval plus its annotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub interval: Interval,
    pub note: Option<Note>,
}

impl Move {
    pub fn plain(interval: Interval) -> Self {
        Move {
            interval,
            note: None,
        }
    }

    pub fn noted(interval: Interval, note: Note) -> Self {
        Move {
            interval,
            note: Some(note),
        }
    }
}

/// A player. Strategies may keep private memory between calls; the engine
/// re-validates everything they return.
pub trait Strategy {
    fn respond(&mut self, state: &GameState) -> Result<Move>;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        (**self).respond(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    params: GameParams,
    history: Vec<(Mover, Interval)>,
    next_mover: Mover,
}

/// Start a game with Bob's opening interval.
pub fn new_game(params: GameParams, b1: Interval) -> Result<GameState> {
    GameState::new(params, b1)
}

/// A copy of `state` extended by `mv`; the original is untouched on error.
pub fn apply_move(state: &GameState, mv: Interval) -> Result<GameState> {
    let mut next = state.clone();
    next.push(mv)?;
    Ok(next)
}

impl GameState {
    pub fn new(params: GameParams, b1: Interval) -> Result<Self> {
        if b1.is_degenerate() {
            return Err(Error::Domain(format!(
                "opening interval {b1} is degenerate"
            )));
        }
        Ok(GameState {
            params,
            history: vec![(Mover::Bob, b1)],
            next_mover: Mover::Alice,
        })
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn history(&self) -> &[(Mover, Interval)] {
        &self.history
    }

    pub fn next_mover(&self) -> Mover {
        self.next_mover
    }

    /// The last interval played.
    pub fn current(&self) -> &Interval {
        &self.history.last().expect("history starts with B_1").1
    }

    /// Shrink ratio the next move must use.
    pub fn required_ratio(&self) -> &Rational {
        self.params.ratio_for(self.next_mover)
    }

    pub fn required_radius(&self) -> Rational {
        self.required_ratio() * self.current().radius()
    }

    /// Bob's intervals `B_1, B_2, ...` so far.
    pub fn bob_intervals(&self) -> impl Iterator<Item = &Interval> {
        self.history
            .iter()
            .filter(|(m, _)| *m == Mover::Bob)
            .map(|(_, i)| i)
    }

    pub fn bob_count(&self) -> usize {
        self.history.len().div_ceil(2)
    }

    /// Validate and append `mv`. Leaves the state unchanged on error.
    pub fn push(&mut self, mv: Interval) -> Result<()> {
        let enclosing = self.current();
        if mv.lo() < enclosing.lo() {
            return Err(Error::Containment {
                endpoint: Endpoint::Lo,
                value: mv.lo().clone(),
                enclosing: Box::new(enclosing.clone()),
            });
        }
        if mv.hi() > enclosing.hi() {
            return Err(Error::Containment {
                endpoint: Endpoint::Hi,
                value: mv.hi().clone(),
                enclosing: Box::new(enclosing.clone()),
            });
        }
        let expected = self.required_radius();
        let actual = mv.radius();
        if actual != expected {
            return Err(Error::RadiusMismatch {
                expected: Box::new(expected),
                actual: Box::new(actual),
            });
        }
        self.history.push((self.next_mover, mv));
        self.next_mover = self.next_mover.other();
        Ok(())
    }
}

/// One line of a game trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: u64,
    pub mover: Mover,
    #[serde(flatten)]
    pub interval: Interval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<Note>,
}

impl TraceRecord {
    /// The record for the `index`-th move (0-based, `B_1` first).
    pub fn at(index: usize, interval: Interval, note: Option<Note>) -> Self {
        let mover = if index.is_multiple_of(2) {
            Mover::Bob
        } else {
            Mover::Alice
        };
        TraceRecord {
            round: (index / 2 + 1) as u64,
            mover,
            interval,
            note,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub final_interval: Interval,
    pub trace: Vec<TraceRecord>,
}

/// A run aborted by a strategy error, with everything played before it.
#[derive(Debug, Error)]
#[error("{error}")]
pub struct RunFailure {
    pub error: Error,
    pub trace: Vec<TraceRecord>,
}

/// Play `total_rounds` (Alice, Bob) exchanges after `b1`. The final interval
/// is `B_{total_rounds + 1}`.
pub fn run(
    params: GameParams,
    b1: Interval,
    alice: &mut dyn Strategy,
    bob: &mut dyn Strategy,
    total_rounds: u64,
) -> std::result::Result<RunOutcome, RunFailure> {
    let mut trace = vec![TraceRecord::at(0, b1.clone(), None)];
    let mut state = match GameState::new(params, b1) {
        Ok(s) => s,
        Err(error) => return Err(RunFailure { error, trace }),
    };
    for _ in 0..total_rounds {
        for mover in [Mover::Alice, Mover::Bob] {
            let player: &mut dyn Strategy = match mover {
                Mover::Alice => &mut *alice,
                Mover::Bob => &mut *bob,
            };
            let step = player
                .respond(&state)
                .and_then(|mv| state.push(mv.interval.clone()).map(|_| mv));
            match step {
                Ok(mv) => trace.push(TraceRecord::at(trace.len(), mv.interval, mv.note)),
                Err(error) => return Err(RunFailure { error, trace }),
            }
        }
    }
    Ok(RunOutcome {
        final_interval: state.current().clone(),
        trace,
    })
}

/// One JSON record per line.
pub fn write_trace<W: Write>(trace: &[TraceRecord], mut out: W) -> std::io::Result<()> {
    for record in trace {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn trace_to_string(trace: &[TraceRecord]) -> String {
    let mut buf = Vec::new();
    write_trace(trace, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Parse a trace written by [`write_trace`]; blank lines are skipped.
pub fn read_trace<R: BufRead>(input: R) -> Result<Vec<TraceRecord>> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: TraceRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}
