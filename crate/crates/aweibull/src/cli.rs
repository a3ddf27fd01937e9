//! `aweibull` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! parameter error, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use aweibull_core::asymmetric::{AsymWeibullIILaw, AsymWeibullILaw};
use aweibull_core::law::{Law, StableConvention, StableLaw, WeibullFamilyLaw};
use aweibull_core::randsum::{summarize_study, IncrementFamily, IndexLaw, RandomSumScheme, LINDEBERG_EPSILON, MIN_ENSEMBLE};
use aweibull_core::stable::{StableShape, SymmetricStableShape};
use aweibull_core::weibull::{TwoSidedWeibullLaw, WeibullLaw};
use aweibull_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::parallel::{par_ensemble, par_study_ensembles};
use crate::report::{Format, Metadata, Report, Value};
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const SEED_ENV: &str = "AWEIBULL_SEED";

#[derive(Debug, Parser)]
#[command(name = "aweibull", version, about = "Weibull-type laws as normal mixtures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a sample from a law.
    Sample(SampleArgs),
    /// Tabulate the CDF on a grid of x.
    Cdf(GridArgs),
    /// Tabulate the density on a grid of x.
    Pdf(GridArgs),
    /// Tabulate the quantile function on a grid of p in (0, 1).
    Quantile(GridArgs),
    /// Mean and absolute moments in closed form.
    Moments(MomentArgs),
    /// Run the identity checks.
    Verify(VerifyArgs),
    /// Random-sum convergence study.
    Randsum(RandsumArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawName {
    Weibull,
    TwoSidedWeibull,
    AsymWeibull1,
    AsymWeibull2,
    Stable,
    StableDoubled,
    StableReciprocal,
    SymmetricStable,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    #[arg(long, value_enum)]
    pub law: LawName,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub law: LawArgs,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, env = SEED_ENV, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub law: LawArgs,
    /// `lo:hi:count`, count >= 2.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub law: LawArgs,
    /// Orders of absolute moments, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the named checks or groups (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long, default_value_t = verify::DEFAULT_N, value_parser = parse_positive)]
    pub n: usize,
    /// Replicates per random-sum ensemble.
    #[arg(long, default_value_t = verify::DEFAULT_ENSEMBLE, value_parser = parse_positive)]
    pub ensemble: usize,
    #[arg(long, env = SEED_ENV, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Print the check names and groups instead of running them.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    TwoPoint,
    Normal,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IndexName {
    Rounded,
    Constant,
}

#[derive(Debug, Args)]
pub struct RandsumArgs {
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Row size k_n.
    #[arg(long, default_value_t = 400)]
    pub k: u64,
    /// Row sizes to sweep, comma separated positive integers; overrides --k.
    #[arg(long, value_parser = parse_sweep)]
    pub sweep: Option<Sweep>,
    #[arg(long, value_enum, default_value_t = FamilyName::TwoPoint)]
    pub family: FamilyName,
    #[arg(long, value_enum, default_value_t = IndexName::Rounded)]
    pub index: IndexName,
    /// Replicates per ensemble.
    #[arg(long, default_value_t = verify::DEFAULT_ENSEMBLE)]
    pub n: usize,
    #[arg(long, env = SEED_ENV, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        return Err("expected lo:hi:count".into());
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad lo {lo:?}"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad hi {hi:?}"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count {count:?}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err("requires finite lo < hi".into());
    }
    if count < 2 {
        return Err("requires count >= 2".into());
    }
    Ok(Grid { lo, hi, count })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep(pub Vec<u64>);

fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let ks = s
        .split(',')
        .map(|t| match t.trim().parse::<u64>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(format!("bad row size {t:?}: expected a positive integer")),
        })
        .collect::<Result<Vec<u64>, String>>()?;
    Ok(Sweep(ks))
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

/// A failure that ends the command with a given exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure {
            code: EXIT_USAGE,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } | Error::Degenerate(_) | Error::Unsupported(_) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn need(v: Option<f64>, flag: &str, law: LawName) -> CliResult<f64> {
    v.ok_or_else(|| {
        let name = law.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
        Failure::usage(format!("--law {name} requires --{flag}"))
    })
}

impl LawArgs {
    pub fn build(&self) -> CliResult<Law> {
        let l = self.law;
        let stable = |c| -> CliResult<Law> {
            Ok(StableLaw::Positive(StableShape::new(need(self.gamma, "gamma", l)?)?, c).into())
        };
        Ok(match l {
            LawName::Weibull => WeibullFamilyLaw::OneSided(WeibullLaw::new(need(self.gamma, "gamma", l)?)?).into(),
            LawName::TwoSidedWeibull => {
                WeibullFamilyLaw::TwoSided(TwoSidedWeibullLaw::new(need(self.gamma, "gamma", l)?)?).into()
            }
            LawName::AsymWeibull1 => WeibullFamilyLaw::AsymFirst(AsymWeibullILaw::formal(
                need(self.a1, "a1", l)?,
                need(self.a2, "a2", l)?,
                need(self.gamma, "gamma", l)?,
            )?)
            .into(),
            LawName::AsymWeibull2 => WeibullFamilyLaw::AsymSecond(AsymWeibullIILaw::new(
                need(self.mu, "mu", l)?,
                need(self.sigma, "sigma", l)?,
                need(self.gamma, "gamma", l)?,
            )?)
            .into(),
            LawName::Stable => stable(StableConvention::Standard)?,
            LawName::StableDoubled => stable(StableConvention::Doubled)?,
            LawName::StableReciprocal => stable(StableConvention::Reciprocal)?,
            LawName::SymmetricStable => {
                StableLaw::Symmetric(SymmetricStableShape::new(need(self.alpha, "alpha", l)?)?).into()
            }
        })
    }
}

fn params_string(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

fn law_params(law: &Law) -> String {
    let pairs: Vec<(&str, String)> = law.params().into_iter().map(|(k, v)| (k, format!("{v:?}"))).collect();
    params_string(&pairs)
}

fn emit(report: &Report, out: &OutputArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let bytes = report
        .render(out.format)
        .map_err(|e| Failure::usage(format!("cannot render report: {e}")))?;
    let written = match &out.output {
        Some(path) => fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(&bytes).map_err(|e| e.to_string()),
    };
    written.map_err(|m| Failure {
        code: EXIT_USAGE,
        message: format!("cannot write output: {m}"),
    })
}

fn run_sample(a: &SampleArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let law = a.law.build()?;
    // validate before spawning the ensemble, so a formal law fails fast
    law.sample(&mut aweibull_core::stats::RandomStream::new(a.seed, u64::MAX))?;
    let draws = par_ensemble(a.seed, 0, a.n as usize, |r| law.sample(r));
    let mut report = Report::new(Metadata::new("sample", law.name(), law_params(&law), a.seed), &["index", "value"]);
    for (i, d) in draws.into_iter().enumerate() {
        report.push(vec![i.into(), d?.into()]);
    }
    emit(&report, &a.output, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Clone, Copy)]
enum Tabulated {
    Cdf,
    Pdf,
    Quantile,
}

fn run_grid(a: &GridArgs, what: Tabulated, stdout: &mut dyn Write) -> CliResult<i32> {
    let law = a.law.build()?;
    let (command, columns) = match what {
        Tabulated::Cdf => ("cdf", ["x", "cdf"]),
        Tabulated::Pdf => ("pdf", ["x", "pdf"]),
        Tabulated::Quantile => ("quantile", ["p", "quantile"]),
    };
    let grid = a.grid;
    let mut params = law_params(&law);
    params.push_str(&format!(",grid={:?}:{:?}:{}", grid.lo, grid.hi, grid.count));
    let mut report = Report::new(Metadata::new(command, law.name(), params, 0), &columns);
    for x in grid.points() {
        let y = match what {
            Tabulated::Cdf => law.cdf(x)?,
            Tabulated::Pdf => law.pdf(x)?,
            Tabulated::Quantile => law.quantile(x)?,
        };
        report.push(vec![x.into(), y.into()]);
    }
    emit(&report, &a.output, stdout)?;
    Ok(EXIT_OK)
}

fn run_moments(a: &MomentArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let law = a.law.build()?;
    let mut report = Report::new(
        Metadata::new("moments", law.name(), law_params(&law), 0),
        &["quantity", "beta", "value"],
    );
    let mean = match law.mean() {
        Ok(m) => Value::Float(m),
        Err(Error::Unsupported(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    report.push(vec!["mean".into(), Value::Null, mean]);
    for &b in &a.beta {
        report.push(vec!["abs-moment".into(), b.into(), law.abs_moment(b)?.into()]);
    }
    emit(&report, &a.output, stdout)?;
    Ok(EXIT_OK)
}

fn run_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    if a.list {
        for c in verify::REGISTRY {
            let _ = writeln!(stdout, "{}\t{}\t{}", c.name, c.group, c.anchor);
        }
        return Ok(EXIT_OK);
    }
    let config = VerifyConfig {
        seed: a.seed,
        n: a.n,
        ensemble: a.ensemble,
    };
    let records = verify::run(&config, &a.only).map_err(Failure::usage)?;
    let report = verify::to_report(&config, &records);
    emit(&report, &a.output, stdout)?;
    let passed = records.iter().filter(|r| r.pass).count();
    let _ = writeln!(stderr, "{passed}/{} checks passed", records.len());
    for r in records.iter().filter(|r| !r.pass) {
        let _ = writeln!(
            stderr,
            "FAIL {}: statistic {:?}, threshold {:?} {}",
            r.name, r.statistic, r.threshold, r.detail
        );
    }
    Ok(if passed == records.len() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub const RANDSUM_COLUMNS: [&str; 9] = [
    "k",
    "ensemble_size",
    "row_ks",
    "index_ks",
    "randsum_ks",
    "laplace_ks",
    "normal_ks",
    "lindeberg_epsilon",
    "lindeberg_fraction",
];

fn run_randsum(a: &RandsumArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let family = match a.family {
        FamilyName::TwoPoint => IncrementFamily::TwoPoint,
        FamilyName::Normal => IncrementFamily::Normal,
        FamilyName::Uniform => IncrementFamily::Uniform,
    };
    let index = match a.index {
        IndexName::Rounded => IndexLaw::Rounded,
        IndexName::Constant => IndexLaw::Constant,
    };
    if a.n < MIN_ENSEMBLE {
        return Err(Failure::usage(format!("invalid n = {}: requires n >= {MIN_ENSEMBLE}", a.n)));
    }
    let ks = a.sweep.as_ref().map_or_else(|| vec![a.k], |s| s.0.clone());
    let base = RandomSumScheme::new(ks[0], family, a.gamma, a.mu, a.sigma)?.with_index_law(index);
    let params = params_string(&[
        ("mu", format!("{:?}", a.mu)),
        ("sigma", format!("{:?}", a.sigma)),
        ("gamma", format!("{:?}", a.gamma)),
        ("family", format!("{:?}", a.family).to_lowercase()),
        ("index", format!("{:?}", a.index).to_lowercase()),
        ("n", a.n.to_string()),
    ]);
    let mut report = Report::new(Metadata::new("randsum", "asym-weibull2", params, a.seed), &RANDSUM_COLUMNS);
    for &k in &ks {
        let scheme = base.with_k(k)?;
        let r = summarize_study(&scheme, par_study_ensembles(&scheme, a.n, a.seed), LINDEBERG_EPSILON)?;
        report.push(vec![
            r.k.into(),
            r.ensemble_size.into(),
            r.row_ks.into(),
            r.index_ks.into(),
            r.randsum_ks.into(),
            r.laplace_ks.into(),
            r.normal_ks.into(),
            r.lindeberg_epsilon.into(),
            r.lindeberg_fraction.into(),
        ]);
    }
    emit(&report, &a.output, stdout)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Sample(a) => run_sample(a, stdout),
        Command::Cdf(a) => run_grid(a, Tabulated::Cdf, stdout),
        Command::Pdf(a) => run_grid(a, Tabulated::Pdf, stdout),
        Command::Quantile(a) => run_grid(a, Tabulated::Quantile, stdout),
        Command::Moments(a) => run_moments(a, stdout),
        Command::Verify(a) => run_verify(a, stdout, stderr),
        Command::Randsum(a) => run_randsum(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["aweibull"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("-1:2:4").unwrap();
        assert_eq!(g.points(), vec![-1.0, 0.0, 1.0, 2.0]);
        assert!(parse_grid("1:0:4").is_err());
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("a:1:3").is_err());
    }

    #[test]
    fn sweep_parsing() {
        assert_eq!(parse_sweep("25,100, 400").unwrap(), Sweep(vec![25, 100, 400]));
        assert!(parse_sweep("25,,400").is_err());
        assert!(parse_sweep("0").is_err());
        assert!(parse_sweep("ten").is_err());
    }

    #[test]
    fn negative_gamma_is_a_usage_error() {
        let (code, _, err) = call(&["sample", "--law", "weibull", "--gamma", "-1", "--n", "10"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("gamma > 0"), "{err}");
    }

    #[test]
    fn missing_parameter_is_named() {
        let (code, _, err) = call(&["cdf", "--law", "asym-weibull2", "--mu", "1", "--gamma", "0.5", "--grid", "0:1:3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("requires --sigma"), "{err}");
    }

    #[test]
    fn formal_first_kind_has_cdf_but_no_sampler() {
        let (code, out, _) = call(&["cdf", "--law", "asym-weibull1", "--a1", "1", "--a2", "2", "--gamma", "1.5", "--grid", "-1:1:3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("x,cdf"));
        let (code, _, err) = call(&["sample", "--law", "asym-weibull1", "--a1", "1", "--a2", "2", "--gamma", "1.5"]);
        assert_eq!(code, EXIT_USAGE, "{err}");
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(Failure::from(Error::Unsupported("cdf")).code, EXIT_USAGE);
        let numeric = Error::NumericFailure {
            what: "integral",
            estimate: 0.0,
            residual: 1.0,
            fallback: None,
        };
        assert_eq!(Failure::from(numeric).code, EXIT_NUMERIC);
        assert_eq!(Failure::from(Error::NonFiniteSample).code, EXIT_NUMERIC);
    }

    #[test]
    fn moments_report() {
        let (code, out, _) = call(&["moments", "--law", "weibull", "--gamma", "0.5", "--beta", "1,2"]);
        assert_eq!(code, EXIT_OK);
        let r = Report::from_csv(out.as_bytes()).unwrap();
        assert_eq!(r.records.len(), 3);
        assert_eq!(r.records[0][2], Value::Float(2.0));
        assert_eq!(r.records[2][2], Value::Float(24.0));
        let (code, _, _) = call(&["moments", "--law", "stable", "--gamma", "0.5", "--beta", "0.7"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
