//! Stock strategies. They read the required ratio off the game state, so the
//! positional ones serve either player.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{inscribed_interval, Interval, Rational};
use crate::dangerous::{nearest_in_window, DangerousPoint, ProblemParams, WindowParams};
use crate::error::{Error, Result};
use crate::game::{GameState, Move, Strategy};

/// Always the inscribed interval at a fixed position (0 = leftmost,
/// 1/2 = centered, 1 = rightmost).
#[derive(Clone, Debug)]
pub struct Positional {
    position: Rational,
}

impl Positional {
    pub fn new(position: Rational) -> Result<Self> {
        if position.is_negative() || position > Rational::one() {
            return Err(Error::Config(format!("position {position} outside [0, 1]")));
        }
        Ok(Positional { position })
    }

    pub fn centered() -> Self {
        Positional {
            position: Rational::new(1, 2),
        }
    }

    pub fn leftmost() -> Self {
        Positional {
            position: Rational::zero(),
        }
    }

    pub fn rightmost() -> Self {
        Positional {
            position: Rational::one(),
        }
    }
}

impl Strategy for Positional {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        inscribed_interval(state.current(), state.required_ratio(), &self.position).map(Move::plain)
    }
}

/// Grid of positions: multiples of `2^-32` of the sliding range.
const RANDOM_GRID_BITS: u32 = 32;

/// Uniformly random position on a fine grid, from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomPosition {
    rng: ChaCha8Rng,
}

impl RandomPosition {
    pub fn new(seed: u64) -> Self {
        RandomPosition {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomPosition {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        let steps = self.rng.gen_range(0..=1u64 << RANDOM_GRID_BITS);
        let position = Rational::new(steps, 1u64 << RANDOM_GRID_BITS);
        inscribed_interval(state.current(), state.required_ratio(), &position).map(Move::plain)
    }
}

/// What a [`Chase`] strategy steers toward.
#[derive(Clone, Debug)]
pub enum ChaseTarget {
    Point(Rational),
    /// The dangerous point (window `<= max_k`) nearest the current center,
    /// re-resolved every move.
    NearestDangerous {
        pp: ProblemParams,
        wp: WindowParams,
        max_k: u64,
    },
}

/// Picks the legal inscribed interval closest to its target.
#[derive(Clone, Debug)]
pub struct Chase {
    target: ChaseTarget,
}

impl Chase {
    pub fn new(target: ChaseTarget) -> Self {
        Chase { target }
    }
}

/// The legal inscribed interval of radius `radius` nearest `y`.
fn closest_inscribed(parent: &Interval, radius: &Rational, y: &Rational) -> Result<Interval> {
    let lowest = parent.lo() + radius;
    let highest = parent.hi() - radius;
    let center = if y < &lowest {
        lowest
    } else if y > &highest {
        highest
    } else {
        y.clone()
    };
    Interval::around(&center, radius)
}

/// Dangerous point of window `<= max_k` nearest the center of `around`,
/// provided it lies within one width of `around`.
pub fn nearest_dangerous(
    around: &Interval,
    pp: &ProblemParams,
    wp: &WindowParams,
    max_k: u64,
) -> Option<DangerousPoint> {
    let center = around.center();
    let reach = around.padded(&around.width());
    (1..=max_k)
        .filter_map(|k| nearest_in_window(k, &center, pp, wp))
        .filter(|p| reach.contains_point(&p.value()))
        .min_by(|a, b| {
            (a.value() - &center)
                .abs()
                .cmp(&(b.value() - &center).abs())
                .then_with(|| a.q().cmp(b.q()))
                .then_with(|| a.r().cmp(b.r()))
        })
}

impl Strategy for Chase {
    fn respond(&mut self, state: &GameState) -> Result<Move> {
        let radius = state.required_radius();
        let y = match &self.target {
            ChaseTarget::Point(y) => y.clone(),
            ChaseTarget::NearestDangerous { pp, wp, max_k } => {
                match nearest_dangerous(state.current(), pp, wp, *max_k) {
                    Some(p) => p.value(),
                    None => state.current().center(),
                }
            }
        };
        closest_inscribed(state.current(), &radius, &y).map(Move::plain)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BobKind {
    Centered,
    Leftmost,
    Random,
    Chase,
}

impl std::str::FromStr for BobKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "centered" => Ok(BobKind::Centered),
            "leftmost" => Ok(BobKind::Leftmost),
            "random" => Ok(BobKind::Random),
            "chase" => Ok(BobKind::Chase),
            other => Err(Error::Config(format!("unknown bob kind {other:?}"))),
        }
    }
}

/// Build one of the stock adversaries. `random` needs a seed and `chase`
/// needs a target.
pub fn make_bob(
    kind: BobKind,
    seed: Option<u64>,
    target: Option<ChaseTarget>,
) -> Result<Box<dyn Strategy>> {
    Ok(match kind {
        BobKind::Centered => Box::new(Positional::centered()),
        BobKind::Leftmost => Box::new(Positional::leftmost()),
        BobKind::Random => {
            let seed = seed.ok_or_else(|| Error::Config("random bob needs a seed".into()))?;
            Box::new(RandomPosition::new(seed))
        }
        BobKind::Chase => {
            let target = target.ok_or_else(|| Error::Config("chase bob needs a target".into()))?;
            Box::new(Chase::new(target))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{run, GameParams};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(r(lo), r(hi)).unwrap()
    }

    /// A state whose current interval is Alice's `[0, 1/2]`, Bob to move.
    fn after_alice() -> GameState {
        let gp = GameParams::new(r("1/2"), r("1/2")).unwrap();
        let mut s = GameState::new(gp, iv("0", "1")).unwrap();
        s.push(iv("0", "1/2")).unwrap();
        s
    }

    #[test]
    fn leftmost_bob() {
        let mv = make_bob(BobKind::Leftmost, None, None)
            .unwrap()
            .respond(&after_alice())
            .unwrap();
        assert_eq!(mv.interval, iv("0", "1/4"));
    }

    #[test]
    fn chase_point() {
        let mut bob = make_bob(BobKind::Chase, None, Some(ChaseTarget::Point(r("1")))).unwrap();
        assert_eq!(
            bob.respond(&after_alice()).unwrap().interval,
            iv("1/4", "1/2")
        );
        let mut inside = Chase::new(ChaseTarget::Point(r("3/16")));
        assert_eq!(
            inside.respond(&after_alice()).unwrap().interval,
            iv("1/16", "5/16")
        );
    }

    #[test]
    fn configuration_errors() {
        assert!(matches!(
            make_bob(BobKind::Random, None, None),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            make_bob(BobKind::Chase, Some(3), None),
            Err(Error::Config(_))
        ));
        assert!("sideways".parse::<BobKind>().is_err());
    }

    #[test]
    fn random_replays() {
        let gp = GameParams::new(r("1/2"), r("1/3")).unwrap();
        let play = |seed| {
            run(
                gp.clone(),
                iv("0", "1"),
                &mut Positional::centered(),
                &mut RandomPosition::new(seed),
                6,
            )
            .unwrap()
            .trace
        };
        assert_eq!(play(9), play(9));
        assert_ne!(play(9), play(10));
    }
}
