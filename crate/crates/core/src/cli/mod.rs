//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and writes the rendered
//! report; it returns the process exit code instead of exiting so that it
//! can be driven from tests.

mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use thiserror::Error;

pub use output::{format_number, Cell, Format, Report};

use crate::bloch::{BlochVector, Observable, ObservablePair, PureState};
use crate::entropy::{bound_function, EntropyIndex};
use crate::error::Error;
use crate::oracle::{verify_bound_with, OracleConfig};
use crate::relations::{
    collision_relation, heisenberg_robertson, landau_pollak, luis_bound, maassen_uffink, renyi_pair_bound,
    RelationReport,
};
use crate::uncertainty::{
    collision_uncertainty, critical_points, density_matrix, is_complementary, minimizers, upper_bound, MinimizerBranch,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `|oracle - analytic|` that `verify` accepts.
pub const VERIFY_GAP_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Parser)]
#[command(
    name = "qubit-eur",
    version,
    about = "Collision-entropy uncertainty bounds for qubit observables"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Significant digits for floating-point output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(3..=17))]
    precision: u8,

    /// Read angle inputs in degrees. Output angles stay in radians.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analytic bound for a given overlap or angle, with related bounds.
    Bound(BoundArgs),
    /// Minimum-uncertainty states of a pair of observables.
    Minimize(PairArgs),
    /// Critical points of the uncertainty over a range of angles.
    Sweep(SweepArgs),
    /// Evaluate several uncertainty relations at one state.
    Compare(CompareArgs),
    /// Check the analytic bound against the brute-force oracle on random pairs.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["c", "gamma"])))]
struct BoundArgs {
    /// Eigenbasis overlap, in [1/sqrt(2), 1).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Angle between the Bloch directions, in (0, pi).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Bloch direction of the first observable, as x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    a: [f64; 3],
    /// Bloch direction of the second observable, as x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    b: [f64; 3],
    /// Rescale directions of any nonzero length instead of requiring unit norm.
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    gamma_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    gamma_max: f64,
    /// Number of angles, endpoints included.
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Polar angle of the state.
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// Azimuthal angle of the state.
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
    /// Scale of the first observable in the Heisenberg-Robertson row.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha2: f64,
    /// Scale of the second observable in the Heisenberg-Robertson row.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    beta2: f64,
    /// Rényi index for the first observable; adds a mixed-index row.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Rényi index for the second observable; defaults to --q.
    #[arg(long, allow_hyphen_values = true)]
    qprime: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Number of random pairs.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Seed for the ChaCha8 generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = OracleConfig::default().grid_theta)]
    grid_theta: usize,
    #[arg(long, default_value_t = OracleConfig::default().grid_phi)]
    grid_phi: usize,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(v)
}

/// Parses `args` (program name first), runs the command and writes to `out`
/// and `err`. Returns 0 on success, 1 on a failed verification and 2 on a
/// usage or domain error.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };

    let angle = |x: f64| if cli.degrees { x.to_radians() } else { x };
    let result = match &cli.command {
        Command::Bound(args) => cmd_bound(args, angle),
        Command::Minimize(args) => cmd_minimize(args),
        Command::Sweep(args) => cmd_sweep(args, angle),
        Command::Compare(args) => cmd_compare(args, angle),
        Command::Verify(args) => cmd_verify(args),
    };

    match result {
        Ok((report, passed)) => {
            let text = report.render(cli.format, usize::from(cli.precision));
            if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
                return EXIT_USAGE;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<(Report, bool), CliError>;

fn direction(v: [f64; 3], normalize: bool) -> Result<BlochVector<f64>, Error> {
    let [x, y, z] = v;
    if normalize {
        BlochVector::normalized(x, y, z)
    } else {
        BlochVector::new(x, y, z)
    }
}

fn pair_from(args: &PairArgs) -> Result<ObservablePair<f64>, Error> {
    ObservablePair::from_directions(direction(args.a, args.normalize)?, direction(args.b, args.normalize)?)
}

fn cmd_bound(args: &BoundArgs, angle: impl Fn(f64) -> f64) -> CmdResult {
    let mut report = Report::new(
        "bound",
        &[
            "overlap",
            "gamma",
            "bound",
            "upper_bound",
            "maassen_uffink",
            "shannon_f1",
            "luis_bound",
            "luis_applies",
        ],
    );
    let pair = match (args.c, args.gamma) {
        (Some(c), None) => {
            report.input("c", c);
            ObservablePair::with_overlap(c)?
        }
        (None, Some(g)) => {
            let g = angle(g);
            report.input("gamma", g);
            ObservablePair::with_gamma(g)?
        }
        _ => return Err(CliError::Usage("give exactly one of --c or --gamma".into())),
    };
    let c = pair.overlap();
    report.row(vec![
        c.into(),
        pair.gamma().into(),
        bound_function(EntropyIndex::collision(), c)?.into(),
        upper_bound::<f64>().into(),
        bound_function(EntropyIndex::MinEntropy, c)?.into(),
        bound_function(EntropyIndex::Shannon, c)?.into(),
        luis_bound::<f64>(2)?.into(),
        is_complementary(pair.gamma()).into(),
    ]);
    Ok((report, true))
}

fn cmd_minimize(args: &PairArgs) -> CmdResult {
    let pair = pair_from(args)?;
    let set = minimizers(&pair);
    let mut report = Report::new(
        "minimize",
        &[
            "branch",
            "antipodal",
            "x",
            "y",
            "z",
            "theta",
            "phi",
            "value",
            "rho00",
            "rho01_re",
            "rho01_im",
            "rho11",
        ],
    );
    report
        .input("gamma", pair.gamma())
        .input("overlap", pair.overlap())
        .input("bound", set.min_value);
    for m in &set.minimizers {
        let state = PureState::from_bloch(&m.vector);
        let rho = density_matrix(&m.vector);
        let branch = match m.branch {
            MinimizerBranch::Sum => "sum",
            MinimizerBranch::Difference => "difference",
        };
        report.row(vec![
            branch.into(),
            m.antipodal.into(),
            m.vector.x().into(),
            m.vector.y().into(),
            m.vector.z().into(),
            state.theta().into(),
            state.phi().into(),
            collision_uncertainty(&pair, &state).into(),
            rho[0][0].re.into(),
            rho[0][1].re.into(),
            rho[0][1].im.into(),
            rho[1][1].re.into(),
        ]);
    }
    Ok((report, true))
}

fn cmd_sweep(args: &SweepArgs, angle: impl Fn(f64) -> f64) -> CmdResult {
    let (lo, hi) = (angle(args.gamma_min), angle(args.gamma_max));
    if !(0.0 < lo && lo < hi && hi < std::f64::consts::PI) {
        return Err(CliError::Usage(format!(
            "gamma range [{lo}, {hi}] must satisfy 0 < gamma_min < gamma_max < pi"
        )));
    }
    if args.steps < 2 {
        return Err(CliError::Usage(format!("steps = {} must be at least 2", args.steps)));
    }
    let last = (args.steps - 1) as f64;
    let reports = (0..args.steps)
        .into_par_iter()
        .map(|k| {
            let g = if k + 1 == args.steps {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last
            };
            critical_points(g)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = Report::new("sweep", &["gamma", "chi", "value", "kind", "regime"]);
    report
        .input("gamma_min", lo)
        .input("gamma_max", hi)
        .input("steps", args.steps);
    for r in &reports {
        for p in &r.points {
            report.row(vec![
                r.gamma.into(),
                p.chi.into(),
                p.value.into(),
                p.kind.as_str().into(),
                r.regime.as_str().into(),
            ]);
        }
    }
    Ok((report, true))
}

fn relation_row(report: &mut Report, label: &str, r: &RelationReport<f64>) {
    report.row(vec![
        label.into(),
        r.lhs.into(),
        r.rhs.into(),
        r.satisfied.into(),
        r.saturated.into(),
    ]);
}

fn cmd_compare(args: &CompareArgs, angle: impl Fn(f64) -> f64) -> CmdResult {
    let dirs = pair_from(&args.pair)?;
    let pair = ObservablePair::new(
        Observable::new(0.0, args.alpha2, *dirs.a())?,
        Observable::new(0.0, args.beta2, *dirs.b())?,
    )?;
    let state = PureState::new(angle(args.theta), angle(args.phi))?;
    let indices = match (args.q, args.qprime) {
        (None, None) => None,
        (Some(q), qp) => Some((q, qp.unwrap_or(q))),
        (None, Some(_)) => return Err(CliError::Usage("--qprime requires --q".into())),
    };

    let mut report = Report::new("compare", &["relation", "lhs", "rhs", "satisfied", "saturated"]);
    report
        .input("gamma", pair.gamma())
        .input("overlap", pair.overlap())
        .input("theta", state.theta())
        .input("phi", state.phi());

    relation_row(
        &mut report,
        "heisenberg_robertson",
        &heisenberg_robertson(&pair, &state),
    );
    relation_row(&mut report, "landau_pollak", &landau_pollak(&pair, &state));
    relation_row(&mut report, "maassen_uffink", &maassen_uffink(&pair, &state));
    relation_row(&mut report, "collision", &collision_relation(&pair, &state));
    if let Some((q, qp)) = indices {
        report.input("q", q).input("qprime", qp);
        let r = renyi_pair_bound(EntropyIndex::new(q)?, EntropyIndex::new(qp)?, &pair, &state)?;
        relation_row(&mut report, "renyi_pair", &r);
    }
    Ok((report, true))
}

struct Sample {
    pair: ObservablePair<f64>,
    state: PureState<f64>,
}

/// Draws `n` non-commuting pairs and states from ChaCha8 seeded with `seed`.
fn draw_samples(n: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = || {
        let [x, y, z]: [f64; 3] = UnitSphere.sample(&mut rng);
        BlochVector::normalized(x, y, z).expect("unit sphere sample")
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b, s) = (unit(), unit(), unit());
        if let Ok(pair) = ObservablePair::from_directions(a, b) {
            out.push(Sample {
                pair,
                state: PureState::from_bloch(&s),
            });
        }
    }
    out
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    if args.samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    if args.grid_theta < 2 || args.grid_phi < 1 {
        return Err(CliError::Usage("grid needs grid_theta >= 2 and grid_phi >= 1".into()));
    }
    let config = OracleConfig {
        grid_theta: args.grid_theta,
        grid_phi: args.grid_phi,
        ..OracleConfig::default()
    };
    let samples = draw_samples(args.samples, args.seed);
    let shannon_half = (EntropyIndex::Shannon, EntropyIndex::Finite(0.5));

    let results: Vec<_> = samples
        .par_iter()
        .map(|s| {
            let v = verify_bound_with(&config, &s.pair);
            let relations = [
                heisenberg_robertson(&s.pair, &s.state),
                landau_pollak(&s.pair, &s.state),
                maassen_uffink(&s.pair, &s.state),
                collision_relation(&s.pair, &s.state),
                renyi_pair_bound(shannon_half.0, shannon_half.1, &s.pair, &s.state).expect("indices lie in the region"),
            ];
            let relations_ok = relations.iter().all(|r| r.satisfied);
            (v, relations_ok)
        })
        .collect();

    let mut report = Report::new(
        "verify",
        &[
            "sample",
            "gamma",
            "overlap",
            "analytic",
            "oracle",
            "gap",
            "relations_ok",
        ],
    );
    report
        .input("samples", args.samples)
        .input("seed", args.seed)
        .input("grid_theta", args.grid_theta)
        .input("grid_phi", args.grid_phi);

    let mut max_gap: f64 = 0.0;
    let mut violations = 0usize;
    for (k, (s, (v, relations_ok))) in samples.iter().zip(&results).enumerate() {
        max_gap = max_gap.max(v.gap.abs());
        let gap_ok = v.gap.abs() <= VERIFY_GAP_TOLERANCE;
        violations += usize::from(!gap_ok) + usize::from(!relations_ok);
        report.row(vec![
            k.into(),
            s.pair.gamma().into(),
            s.pair.overlap().into(),
            v.analytic.into(),
            v.oracle.into(),
            v.gap.into(),
            (*relations_ok).into(),
        ]);
    }
    let passed = violations == 0;
    report
        .summary("max_abs_gap", max_gap)
        .summary("gap_tolerance", VERIFY_GAP_TOLERANCE)
        .summary("violations", violations)
        .summary("status", if passed { "pass" } else { "fail" });
    Ok((report, passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qubit-eur").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn vec3_parsing() {
        assert_eq!(parse_vec3("1, -0.5,2e-1").unwrap(), [1.0, -0.5, 0.2]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("1,x,2").is_err());
    }

    #[test]
    fn bound_complementary() {
        let (code, out, _) = run_args(&["--format", "csv", "bound", "--gamma", "1.5707963268"]);
        assert_eq!(code, 0);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        let bound: f64 = row[2].parse().unwrap();
        assert!((bound - 0.575_364_144_903_561_9).abs() < 1e-9);
        assert_eq!(row[7], "true");
    }

    #[test]
    fn bound_degrees() {
        let (code, out, _) = run_args(&["--degrees", "--format", "csv", "bound", "--gamma", "90"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().contains("0.575364144904"));
    }

    #[test]
    fn bound_domain_errors() {
        let (code, _, err) = run_args(&["bound", "--c", "0.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("[1/sqrt(2), 1)"), "{err}");
        assert_eq!(run_args(&["bound"]).0, 2);
        assert_eq!(run_args(&["bound", "--c", "0.8", "--gamma", "1"]).0, 2);
        assert_eq!(run_args(&["bound", "--gamma", "3.5"]).0, 2);
    }

    #[test]
    fn precision_range() {
        assert_eq!(run_args(&["--precision", "2", "bound", "--c", "0.8"]).0, 2);
        assert_eq!(run_args(&["--precision", "18", "bound", "--c", "0.8"]).0, 2);
        let (code, out, _) = run_args(&["--precision", "3", "--format", "csv", "bound", "--c", "0.8"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().starts_with("0.800,"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }
}
