//! Command-line front end. Exit codes: 0 success, 1 I/O failure, 2 bad
//! configuration or input, 3 numerical failure.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::app::config::{ProblemConfig, ProblemKind};
use crate::app::{export, run, verify, RunOutput};
use crate::error::SlatError;

#[derive(Parser, Debug)]
#[command(name = "slat", version, about = "Slip-line fields by hypergeometric series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// TOML problem file; omitted keys take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for the CSV, JSON and SVG outputs.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Truncation order, overriding `N` in the config.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Initial characteristic problem from rows `a` and `b`.
    Icp(RunArgs),
    /// Constant-traction Cauchy problem from the curvature row `r`.
    Cauchy(RunArgs),
    /// Stress-free surface from the alpha-line row `a`.
    FreeSurface(RunArgs),
    /// Straight contact through the origin from the row `a`.
    Mixed(RunArgs),
    /// Frictionless extrusion through a wedge die.
    Extrusion(RunArgs),
    /// Pressurized elliptic hole.
    EllipticHole(RunArgs),
    /// Oracle cross-checks.
    Verify,
}

#[derive(Debug)]
pub enum CliError {
    Config(SlatError),
    Numeric(SlatError),
    Io(PathBuf, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) | CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "cannot write {}: {e}", p.display()),
        }
    }
}

impl From<SlatError> for CliError {
    fn from(e: SlatError) -> Self {
        match e {
            SlatError::InvalidInput(_) | SlatError::YieldViolation { .. } | SlatError::Domain(_) => CliError::Config(e),
            SlatError::Singular { .. } | SlatError::NonFinite { .. } | SlatError::Integration { .. } | SlatError::Geometry(_) => {
                CliError::Numeric(e)
            }
        }
    }
}

fn load(args: &RunArgs) -> Result<ProblemConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => ProblemConfig::from_path(p)?,
        None => ProblemConfig::default(),
    };
    if args.n.is_some() {
        cfg.n = args.n;
    }
    Ok(cfg)
}

/// Output path: the configured name (relative to `out_dir` when given),
/// else `default` inside `out_dir`, else nothing.
fn target(out_dir: Option<&Path>, configured: Option<&String>, default: String) -> Option<PathBuf> {
    match (out_dir, configured) {
        (Some(d), Some(c)) => Some(d.join(c)),
        (None, Some(c)) => Some(PathBuf::from(c)),
        (Some(d), None) => Some(d.join(default)),
        (None, None) => None,
    }
}

fn write_outputs(cfg: &ProblemConfig, out: &RunOutput, out_dir: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    let stem = out.kind.name();
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if let Some(p) = target(out_dir, cfg.out_csv.as_ref(), format!("{stem}.csv")) {
        let mut csv = export::net_csv(&out.nets[0]);
        for net in &out.nets[1..] {
            csv.extend(export::net_csv(net).lines().skip(1).flat_map(|l| [l, "\n"]));
        }
        files.push((p, csv));
    }
    if let Some(p) = target(out_dir, cfg.out_json.as_ref(), format!("{stem}.json")) {
        files.push((p, out.json.clone()));
    }
    if let Some(p) = target(out_dir, cfg.out_svg.as_ref(), format!("{stem}.svg")) {
        let nets: Vec<_> = out.nets.iter().collect();
        files.push((p, export::nets_svg(&nets)));
    }
    if let Some(profile) = &out.profile {
        if let Some(p) = target(out_dir, cfg.out_profile.as_ref(), format!("{stem}_profile.csv")) {
            let svg = p.with_extension("svg");
            files.push((p, export::profile_csv(profile)));
            files.push((svg, export::profile_svg(profile)));
        }
    }
    let mut written = Vec::new();
    for (p, text) in files {
        export::write(&p, &text).map_err(|e| CliError::Io(p.clone(), e))?;
        written.push(p);
    }
    Ok(written)
}

fn solve(kind: ProblemKind, args: &RunArgs, stdout: &mut impl Write) -> Result<(), CliError> {
    let cfg = load(args)?;
    let out = run(&cfg, kind)?;
    let written = write_outputs(&cfg, &out, args.out_dir.as_deref())?;
    let cannot = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    writeln!(stdout, "problem = {}", kind.name()).map_err(cannot)?;
    for (k, v) in &out.summary {
        writeln!(stdout, "{k} = {v}").map_err(cannot)?;
    }
    for p in written {
        writeln!(stdout, "wrote {}", p.display()).map_err(cannot)?;
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn verify_all(stdout: &mut impl Write) -> Result<(), CliError> {
    let checks = verify::run_checks()?;
    let cannot = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    let mut failed = 0;
    for c in &checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {}: {:.3e} (tolerance {:.0e})", c.name, c.value, c.tolerance).map_err(cannot)?;
        if !c.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::Numeric(SlatError::Integration { discrepancy: failed as f64, tolerance: 0.0 }));
    }
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Icp(a) => solve(ProblemKind::Icp, a, stdout),
        Command::Cauchy(a) => solve(ProblemKind::CauchyConst, a, stdout),
        Command::FreeSurface(a) => solve(ProblemKind::FreeSurface, a, stdout),
        Command::Mixed(a) => solve(ProblemKind::MixedStraight, a, stdout),
        Command::Extrusion(a) => solve(ProblemKind::Extrusion, a, stdout),
        Command::EllipticHole(a) => solve(ProblemKind::EllipticHole, a, stdout),
        Command::Verify => verify_all(stdout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("slat").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_subcommands() {
        let cli = parse(&["extrusion", "--n", "16", "--out-dir", "out"]);
        match cli.command {
            Command::Extrusion(a) => {
                assert_eq!(a.n, Some(16));
                assert_eq!(a.out_dir, Some(PathBuf::from("out")));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse(&["elliptic-hole"]).command, Command::EllipticHole(_)));
        assert!(Cli::try_parse_from(["slat", "bogus"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(SlatError::InvalidInput("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(SlatError::YieldViolation { tau: 2.0, k: 1.0 }).exit_code(), 2);
        assert_eq!(CliError::from(SlatError::NonFinite { i: 0, j: 0 }).exit_code(), 3);
    }

    #[test]
    fn extrusion_to_stdout_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let cli = parse(&["extrusion", "--out-dir", dir.path().to_str().unwrap()]);
        let mut buf = Vec::new();
        execute(&cli, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("x_E = 0.906486"), "{text}");
        for f in ["extrusion.csv", "extrusion.json", "extrusion.svg"] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
    }
}
