//! The `mixed-bad` command line.
//!
//! Exit codes: 0 ok, 1 usage or configuration error, 2 parameters not
//! admissible, 3 internal contradiction during play, 4 verification failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use crate::dangerous::{enumerate_dangerous, ProblemParams};
use crate::error::Error;
use crate::game::{read_trace, run, write_trace, GameParams, Phase, TraceRecord};
use crate::strategy::{
    derive_constants, interleave_mixed_bad, make_bob, mixed_bad_alice, view_params, BobKind,
    ChaseTarget, Derivation, Plan, StrategyConstants, Target,
};
use crate::verify::{
    block_origin, check_trace, split_interleaved, verify_avoidance, AvoidanceReport, TraceReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_ADMISSIBLE: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mixed-bad",
    version,
    about = "Exact Schmidt games for mixed badly approximable numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive R, t, rho1 and c for one parameter set.
    Constants {
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        beta: Rational,
        /// Exponent on the D-adic term.
        #[arg(long)]
        i: Rational,
        /// Exponent on the distance term; i + j must be 1.
        #[arg(long)]
        j: Rational,
        /// Radius of Bob's first interval.
        #[arg(long)]
        rho1: Rational,
    },
    /// Stream the dangerous points of window k meeting [lo, hi].
    Enumerate {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        lo: Rational,
        #[arg(long)]
        hi: Rational,
        /// TOML run configuration; the first target and opening interval fix c, R and t.
        #[arg(long)]
        config: PathBuf,
    },
    /// Play the strategy against a stock Bob and write the trace.
    Play {
        #[arg(long)]
        config: PathBuf,
        /// centered, leftmost, random or chase; overrides the config.
        #[arg(long)]
        bob: Option<BobKind>,
        /// Seed for the random Bob.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of strategy blocks after burn-in.
        #[arg(long)]
        blocks: Option<u64>,
        /// Write the trace here as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Re-check a trace, optionally certifying avoidance up to window K.
    Verify {
        /// JSON-lines trace from play or intersect.
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// Also certify the final interval against windows 1..=K.
        #[arg(long = "recheck-avoidance", value_name = "K")]
        recheck_avoidance: Option<u64>,
    },
    /// Interleave strategies for two targets and certify both.
    Intersect {
        /// TOML run configuration with exactly two targets.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

/// Run configuration, read from TOML.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub alpha: Rational,
    pub beta: Rational,
    #[serde(default)]
    pub blocks: Option<u64>,
    pub initial: InitialSpec,
    pub targets: Vec<TargetSpec>,
    #[serde(default)]
    pub bob: Option<BobSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub i: Rational,
    pub j: Rational,
    pub d: DSequence,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BobSpec {
    pub kind: String,
    #[serde(default)]
    pub seed: Option<u64>,
    /// `"nearest"` (default for chase) or a point `"p/q"`.
    #[serde(default)]
    pub target: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("config {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, Error> {
        let config: Config =
            toml::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        if config.targets.is_empty() || config.targets.len() > 2 {
            return Err(Error::Config(format!(
                "targets: expected one or two entries, found {}",
                config.targets.len()
            )));
        }
        config.game_params()?;
        config.opening()?;
        for (idx, t) in config.targets.iter().enumerate() {
            t.exponents()
                .map_err(|e| Error::Config(format!("targets[{idx}]: {e}")))?;
        }
        Ok(config)
    }

    pub fn game_params(&self) -> Result<GameParams, Error> {
        GameParams::new(self.alpha.clone(), self.beta.clone())
            .map_err(|e| Error::Config(format!("alpha/beta: {e}")))
    }

    pub fn opening(&self) -> Result<Interval, Error> {
        Interval::new(self.initial.lo.clone(), self.initial.hi.clone())
            .map_err(|e| Error::Config(format!("initial: {e}")))
    }
}

impl TargetSpec {
    pub fn exponents(&self) -> Result<ExponentPair, Error> {
        ExponentPair::from_rationals(&self.i, &self.j)
    }

    pub fn target(&self) -> Result<Target, Error> {
        Ok(Target {
            exponents: self.exponents()?,
            seq: self.d.clone(),
        })
    }
}

/// Constants and problem parameters for one target in a game opened with
/// `opening_radius`.
struct Family {
    plan: Plan,
    pp: ProblemParams,
}

impl Family {
    fn new(gp: &GameParams, target: &Target, opening_radius: &Rational) -> Result<Family, Error> {
        let plan = Plan::for_opening(gp, &target.exponents, opening_radius)?;
        let pp = ProblemParams::new(
            target.exponents,
            target.seq.clone(),
            plan.constants.c.clone(),
        )?;
        Ok(Family { plan, pp })
    }

    fn view_rounds(&self, blocks: u64) -> u64 {
        self.plan.burn_in_rounds + blocks * u64::from(self.plan.constants.t)
    }
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotAdmissible { .. } => EXIT_NOT_ADMISSIBLE,
            Error::Contradiction { .. } => EXIT_CONTRADICTION,
            _ => EXIT_USAGE,
        };
        Exit::new(code, e.to_string())
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Exit + '_ {
    move |e| Exit::new(EXIT_USAGE, format!("{}: {e}", path.display()))
}

/// Entry point used by the binary.
pub fn main<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`main`] with explicit output streams.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Constants {
            alpha,
            beta,
            i,
            j,
            rho1,
        } => constants(out, alpha, beta, i, j, rho1),
        Command::Enumerate { k, lo, hi, config } => enumerate(out, k, lo, hi, &config),
        Command::Play {
            config,
            bob,
            seed,
            blocks,
            trace,
        } => play(out, &config, bob, seed, blocks, trace.as_deref()),
        Command::Verify {
            trace,
            config,
            recheck_avoidance,
        } => verify(out, &trace, &config, recheck_avoidance),
        Command::Intersect { config, trace } => intersect(out, &config, trace.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(err, "error: {}", exit.message);
            exit.code
        }
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Exit> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(|e| Exit::new(EXIT_USAGE, e.to_string()))
}

fn constants(
    out: &mut dyn Write,
    alpha: Rational,
    beta: Rational,
    i: Rational,
    j: Rational,
    rho1: Rational,
) -> Result<i32, Exit> {
    let gp = GameParams::new(alpha, beta)?;
    let e = ExponentPair::from_rationals(&i, &j)?;
    match derive_constants(&gp, &e, &rho1)? {
        Derivation::Ready(c) => {
            c.check(&gp, &e)?;
            print_json(out, &c)?;
        }
        Derivation::NeedsBurnIn { target } => {
            print_json(out, &json!({ "needs_burn_in": true, "target": target }))?;
        }
    }
    Ok(EXIT_OK)
}

fn enumerate(
    out: &mut dyn Write,
    k: u64,
    lo: Rational,
    hi: Rational,
    config: &Path,
) -> Result<i32, Exit> {
    let config = Config::load(config)?;
    if k == 0 {
        return Err(Exit::new(EXIT_USAGE, "k: windows are indexed from 1"));
    }
    let interval =
        Interval::new(lo, hi).map_err(|e| Exit::new(EXIT_USAGE, format!("lo/hi: {e}")))?;
    let gp = config.game_params()?;
    let family = Family::new(
        &gp,
        &config.targets[0].target()?,
        &config.opening()?.radius(),
    )?;
    let wp = family.plan.constants.window_params();
    for point in enumerate_dangerous(k, &interval, &family.pp, &wp) {
        let line = serde_json::to_string(&point).expect("points serialize");
        writeln!(out, "{line}").map_err(|e| Exit::new(EXIT_USAGE, e.to_string()))?;
    }
    Ok(EXIT_OK)
}

/// Resolve the Bob for a run; `family` supplies the dangerous set a
/// `nearest` chase follows.
fn build_bob(
    spec: Option<&BobSpec>,
    kind: Option<BobKind>,
    seed: Option<u64>,
    family: &Family,
    blocks: u64,
) -> Result<Box<dyn crate::game::Strategy>, Exit> {
    let kind = match (kind, spec) {
        (Some(k), _) => k,
        (None, Some(s)) => s
            .kind
            .parse()
            .map_err(|e: Error| Exit::new(EXIT_USAGE, format!("bob.kind: {e}")))?,
        (None, None) => BobKind::Centered,
    };
    let seed = seed.or(spec.and_then(|s| s.seed));
    let target = match spec.and_then(|s| s.target.as_deref()) {
        None | Some("nearest") => ChaseTarget::NearestDangerous {
            pp: family.pp.clone(),
            wp: family.plan.constants.window_params(),
            max_k: blocks,
        },
        Some(point) => ChaseTarget::Point(
            point
                .parse()
                .map_err(|e: Error| Exit::new(EXIT_USAGE, format!("bob.target: {e}")))?,
        ),
    };
    Ok(make_bob(kind, seed, Some(target))?)
}

fn blocks_for(flag: Option<u64>, config: &Config) -> Result<u64, Exit> {
    match flag.or(config.blocks) {
        Some(0) => Err(Exit::new(EXIT_USAGE, "blocks: must be at least 1")),
        Some(k) => Ok(k),
        None => Err(Exit::new(EXIT_USAGE, "blocks: not given by flag or config")),
    }
}

fn save_trace(path: Option<&Path>, trace: &[TraceRecord]) -> Result<(), Exit> {
    if let Some(path) = path {
        let file = File::create(path).map_err(io_err(path))?;
        let mut w = BufWriter::new(file);
        write_trace(trace, &mut w).map_err(io_err(path))?;
        w.flush().map_err(io_err(path))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PlaySummary<'a> {
    #[serde(rename = "final")]
    final_interval: &'a Interval,
    rounds: u64,
    burn_in_rounds: u64,
    blocks: u64,
    constants: &'a StrategyConstants,
    dodges: usize,
}

fn play(
    out: &mut dyn Write,
    config_path: &Path,
    bob: Option<BobKind>,
    seed: Option<u64>,
    blocks: Option<u64>,
    trace_path: Option<&Path>,
) -> Result<i32, Exit> {
    let config = Config::load(config_path)?;
    if config.targets.len() != 1 {
        return Err(Exit::new(
            EXIT_USAGE,
            "targets: play takes one target (use intersect for two)",
        ));
    }
    let blocks = blocks_for(blocks, &config)?;
    let gp = config.game_params()?;
    let b1 = config.opening()?;
    let target = config.targets[0].target()?;
    let family = Family::new(&gp, &target, &b1.radius())?;
    let mut alice = mixed_bad_alice(&gp, &target.exponents, &target.seq)?;
    let mut bob = build_bob(config.bob.as_ref(), bob, seed, &family, blocks)?;
    let rounds = family.view_rounds(blocks);
    let outcome = match run(gp, b1, &mut alice, bob.as_mut(), rounds) {
        Ok(o) => o,
        Err(failure) => {
            save_trace(trace_path, &failure.trace)?;
            return Err(Exit::new(EXIT_CONTRADICTION, failure.error.to_string()));
        }
    };
    save_trace(trace_path, &outcome.trace)?;
    let dodges = outcome
        .trace
        .iter()
        .filter(|r| r.note.as_ref().and_then(|n| n.phase) == Some(Phase::Dodge))
        .count();
    print_json(
        out,
        &PlaySummary {
            final_interval: &outcome.final_interval,
            rounds,
            burn_in_rounds: family.plan.burn_in_rounds,
            blocks,
            constants: &family.plan.constants,
            dodges,
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct FamilyReport {
    constants: StrategyConstants,
    checks: TraceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    avoidance: Option<AvoidanceReport>,
}

impl FamilyReport {
    fn passed(&self) -> bool {
        self.checks.passed() && self.avoidance.as_ref().is_none_or(|a| a.certified)
    }
}

/// Check one (possibly sub-game) trace and optionally certify `final_interval`.
fn certify(
    trace: &[TraceRecord],
    gp: &GameParams,
    target: &Target,
    final_interval: &Interval,
    windows: Option<u64>,
) -> Result<FamilyReport, Exit> {
    let first = trace
        .first()
        .ok_or_else(|| Exit::new(EXIT_VERIFY_FAILED, "trace is empty"))?;
    let family = Family::new(gp, target, &first.interval.radius())?;
    let wp = family.plan.constants.window_params();
    // Block annotations are only trusted where the opening radius says
    // burn-in ends.
    let origin = 2 * family.plan.burn_in_rounds as usize;
    if trace.len() > origin + 1 && block_origin(trace) != Some(origin) {
        return Err(Exit::new(
            EXIT_VERIFY_FAILED,
            format!(
                "block annotations start at record {:?}, expected {origin} after {} burn-in rounds",
                block_origin(trace),
                family.plan.burn_in_rounds
            ),
        ));
    }
    let checks = check_trace(trace, gp, &family.pp, &wp);
    let avoidance = windows.map(|k| verify_avoidance(final_interval, k, &family.pp, &wp));
    Ok(FamilyReport {
        constants: family.plan.constants,
        checks,
        avoidance,
    })
}

fn report_families(out: &mut dyn Write, families: &[FamilyReport]) -> Result<i32, Exit> {
    print_json(out, &families)?;
    let passed = families.iter().all(FamilyReport::passed);
    if !passed {
        let mut lines = Vec::new();
        for (idx, f) in families.iter().enumerate() {
            for c in f.checks.failures() {
                let round = c.round.map_or("-".to_string(), |r| r.to_string());
                lines.push(format!(
                    "family {}: {:?} failed at round {round}: {}",
                    idx + 1,
                    c.check,
                    c.detail.as_deref().unwrap_or("")
                ));
            }
            if let Some(p) = f.avoidance.as_ref().and_then(AvoidanceReport::witness) {
                lines.push(format!(
                    "family {}: final interval meets the danger region of {p}",
                    idx + 1
                ));
            }
        }
        return Err(Exit::new(EXIT_VERIFY_FAILED, lines.join("; ")));
    }
    Ok(EXIT_OK)
}

fn verify(
    out: &mut dyn Write,
    trace_path: &Path,
    config_path: &Path,
    windows: Option<u64>,
) -> Result<i32, Exit> {
    let config = Config::load(config_path)?;
    let file = File::open(trace_path).map_err(io_err(trace_path))?;
    let trace = read_trace(BufReader::new(file))
        .map_err(|e| Exit::new(EXIT_VERIFY_FAILED, e.to_string()))?;
    let final_interval = trace
        .last()
        .map(|r| r.interval.clone())
        .ok_or_else(|| Exit::new(EXIT_VERIFY_FAILED, "trace is empty"))?;
    let gp = config.game_params()?;
    let families = if config.targets.len() == 1 {
        vec![certify(
            &trace,
            &gp,
            &config.targets[0].target()?,
            &final_interval,
            windows,
        )?]
    } else {
        certify_interleaved(&trace, &gp, &config, &final_interval, windows)?
    };
    report_families(out, &families)
}

fn certify_interleaved(
    trace: &[TraceRecord],
    gp: &GameParams,
    config: &Config,
    final_interval: &Interval,
    windows: Option<u64>,
) -> Result<Vec<FamilyReport>, Exit> {
    let view = view_params(gp)?;
    let mut families = Vec::new();
    for (idx, spec) in config.targets.iter().enumerate() {
        let sub = split_interleaved(trace, idx as u8 + 1)?;
        families.push(certify(
            &sub,
            &view,
            &spec.target()?,
            final_interval,
            windows,
        )?);
    }
    Ok(families)
}

fn intersect(
    out: &mut dyn Write,
    config_path: &Path,
    trace_path: Option<&Path>,
) -> Result<i32, Exit> {
    let config = Config::load(config_path)?;
    if config.targets.len() != 2 {
        return Err(Exit::new(
            EXIT_USAGE,
            "targets: intersect needs exactly two targets",
        ));
    }
    let blocks = blocks_for(None, &config)?;
    let gp = config.game_params()?;
    let b1 = config.opening()?;
    let first = config.targets[0].target()?;
    let second = config.targets[1].target()?;
    let view = view_params(&gp)?;
    let mut alice = interleave_mixed_bad(&gp, &first, &second)?;
    // The first half sees B_1, B_3, ...; the second sees B_2, B_4, ...
    let f1 = Family::new(&view, &first, &b1.radius())?;
    let f2 = Family::new(&view, &second, &(b1.radius() * gp.alpha() * gp.beta()))?;
    let rounds = (2 * f1.view_rounds(blocks)).max(2 * f2.view_rounds(blocks) + 1);
    let mut bob = build_bob(config.bob.as_ref(), None, None, &f1, blocks)?;
    let outcome = match run(gp.clone(), b1, &mut alice, bob.as_mut(), rounds) {
        Ok(o) => o,
        Err(failure) => {
            save_trace(trace_path, &failure.trace)?;
            return Err(Exit::new(EXIT_CONTRADICTION, failure.error.to_string()));
        }
    };
    save_trace(trace_path, &outcome.trace)?;
    let families = certify_interleaved(
        &outcome.trace,
        &gp,
        &config,
        &outcome.final_interval,
        Some(blocks),
    )?;
    report_families(out, &families)
}
