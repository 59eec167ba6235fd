//! Command-line surface.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use grassmin_core::GaussianRational;
use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "grassmin",
    version,
    about = "Exact invariants of minimal 2-spheres in complex Grassmannians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify catalog cases against their expected invariants.
    Verify(VerifyArgs),
    /// Compute the full report for a map defined in a script.
    Analyze(AnalyzeArgs),
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Evaluate the metric, curvature and second fundamental form at a point.
    Eval(EvalArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List every case with its recipe and expected invariants.
    List,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Verify every case (the default when no case is named).
    #[arg(long, conflicts_with = "cases")]
    pub all: bool,
    /// Case id to verify; repeatable.
    #[arg(long = "case", value_name = "ID")]
    pub cases: Vec<String>,
    /// Write the machine-readable report here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// How many forward transforms the isotropy walk may take.
    #[arg(long, value_name = "N", default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub isotropy_bound: u32,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// A `.gsl` script.
    pub file: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Assert a constant invariant, as `K=p/q` or `B2=p/q`; repeatable.
    #[arg(long = "expect", value_name = "KEY=p/q", value_parser = parse_expectation)]
    pub expect: Vec<Expectation>,
    /// Unit-modulus value substituted for `theta`.
    #[arg(long, value_name = "a/b+c/di", value_parser = parse_theta)]
    pub theta: Option<GaussianRational>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub file: PathBuf,
    /// Chart point, e.g. `1/2` or `1+i`.
    #[arg(long, value_name = "POINT", value_parser = parse_point)]
    pub at: GaussianRational,
    #[arg(long, value_name = "a/b+c/di", value_parser = parse_theta)]
    pub theta: Option<GaussianRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKey {
    K,
    B2,
}

impl InvariantKey {
    pub fn as_str(self) -> &'static str {
        match self {
            InvariantKey::K => "K",
            InvariantKey::B2 => "B2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub key: InvariantKey,
    pub value: BigRational,
}

pub fn parse_expectation(s: &str) -> Result<Expectation, String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=p/q, got '{s}'"))?;
    let key = match k.trim() {
        "K" => InvariantKey::K,
        "B2" => InvariantKey::B2,
        other => return Err(format!("unknown invariant '{other}'; use K or B2")),
    };
    let value = BigRational::from_str(v.trim()).map_err(|e| format!("invalid rational '{}': {e}", v.trim()))?;
    Ok(Expectation { key, value })
}

pub fn parse_point(s: &str) -> Result<GaussianRational, String> {
    s.parse()
        .map_err(|e: grassmin_core::algebra::ParseGaussianError| e.to_string())
}

pub fn parse_theta(s: &str) -> Result<GaussianRational, String> {
    let t = parse_point(s)?;
    if t.norm_sq() != BigRational::from_integer(1.into()) {
        return Err(format!("theta must have modulus one, got {t}"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectations() {
        let e = parse_expectation("B2=4/3").unwrap();
        assert_eq!(e.key, InvariantKey::B2);
        assert_eq!(e.value, BigRational::new(4.into(), 3.into()));
        assert!(parse_expectation("K").is_err());
        assert!(parse_expectation("H=1").is_err());
        assert!(parse_expectation("K=1/0").is_err());
    }

    #[test]
    fn theta_must_be_unit() {
        assert!(parse_theta("3/5+4/5i").is_ok());
        assert!(parse_theta("-i").is_ok());
        assert!(parse_theta("1/2").is_err());
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from([
            "grassmin", "verify", "--case", "T1.1-1", "--case", "NEG-1", "--jobs", "2",
        ])
        .unwrap();
        match cli.command {
            Command::Verify(v) => {
                assert_eq!(v.cases, ["T1.1-1", "NEG-1"]);
                assert_eq!(v.jobs, Some(2));
                assert_eq!(v.report.isotropy_bound, 6);
            }
            _ => panic!(),
        }
        assert!(Cli::try_parse_from(["grassmin", "verify", "--jobs", "0"]).is_err());
        assert!(Cli::try_parse_from(["grassmin", "verify", "--all", "--case", "T1.1-1"]).is_err());
        assert!(Cli::try_parse_from(["grassmin", "eval", "x.gsl", "--at", "1/0"]).is_err());
    }
}
