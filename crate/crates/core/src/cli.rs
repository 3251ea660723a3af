//! Command-line front end. Every command loads a problem file, runs one part
//! of the engine and writes its report; `check` exits with the verdict code.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::algebra::rational::fmt_rational;
use crate::algebra::{int, Rational};
use crate::degree::{crossing_identity_check, track_roots, winding_number, SelectorPath};
use crate::error::{Error, Result};
use crate::pipeline::{validator_disks, verify, ProblemSpec, R5Mode};
use crate::problem::{load_problem, parse_constant};
use crate::regions::{grid_sample, PolygonDisk};
use crate::stability::{kharitonov_hurwitz, root_count, RootCount};

pub const EXIT_ERROR: i32 = 1;
/// Default cells per side for `regions`.
const DEFAULT_RESOLUTION: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Verify every condition and write the certificate.
    Check,
    /// Sample fR and its shadows on a grid (CSV, optional SVG).
    Regions,
    /// Eigenvalue paths of the selector (CSV).
    Roots,
    /// Four-corner stability report at chosen alpha values.
    Kharitonov,
    /// Winding numbers of the selector around the disks.
    Winding,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, clap::Args)]
pub struct Flags {
    /// Grid cells per side (`regions`) or alpha samples (`roots`).
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Subdivision depth for branch and bound.
    #[arg(long = "depth-limit", global = true)]
    pub depth_limit: Option<usize>,
    /// Largest shadow index for the non-resonance check.
    #[arg(long, global = true)]
    pub jmax: Option<usize>,
    /// Also write an SVG picture (`regions`).
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Alpha values for `kharitonov`, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// Rectangle `a0,a1,b0,b1` for `winding` instead of the problem's disks.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub rect: Vec<String>,
}

#[derive(Debug, Parser)]
#[command(name = "hopf-cert", version, about = "Certify interval Hopf-bifurcation hypotheses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem file.
    #[arg(global = true)]
    pub problem: Option<PathBuf>,
    #[command(flatten)]
    pub flags: Flags,
}

/// What a command produced: text for standard output, files to write, the
/// summary for standard error and the exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub summary: String,
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn report(text: String, flags: &Flags, summary: String) -> Self {
        let mut o = Outcome {
            summary,
            ..Default::default()
        };
        match &flags.out {
            Some(p) => o.files.push((p.clone(), text)),
            None => o.stdout = text,
        }
        o
    }
}

/// Runs `command` and returns the outcome without touching the terminal or
/// the file system.
pub fn execute(command: Command, problem: &Path, flags: &Flags) -> Result<Outcome> {
    let mut spec = load_problem(problem)?;
    if let Some(d) = flags.depth_limit {
        spec.limits.depth_limit = d;
    }
    if let Some(j) = flags.jmax {
        match &mut spec.r5 {
            R5Mode::NonResonance { j_max } => *j_max = Some(j),
            _ => return Err(Error::InvalidArgument("--jmax applies to non_resonance problems".into())),
        }
    }
    match command {
        Command::Check => check(&spec, flags),
        Command::Regions => regions(&spec, flags),
        Command::Roots => roots(&spec, flags),
        Command::Kharitonov => kharitonov(&spec, flags),
        Command::Winding => winding(&spec, flags),
    }
}

fn check(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome> {
    let cert = verify(spec)?;
    let mut o = Outcome::report(cert.to_json(), flags, cert.summary());
    o.code = cert.exit_code();
    Ok(o)
}

fn regions(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome> {
    let grid = grid_sample(&spec.family, flags.resolution.unwrap_or(DEFAULT_RESOLUTION), None)?;
    let summary = format!(
        "{} x {} cells: {} in fR ({} components), j up to {}\n",
        grid.alpha.len(),
        grid.beta.len(),
        grid.count(crate::regions::CellClass::InFr),
        grid.fr_components(),
        grid.j_max
    );
    let mut o = Outcome::report(grid.to_csv(), flags, summary);
    if let Some(svg) = &flags.svg {
        let disks: &[PolygonDisk] = match &spec.r5 {
            R5Mode::Disks(d) => d,
            _ => &[],
        };
        o.files.push((svg.clone(), grid.to_svg(disks)));
    }
    Ok(o)
}

fn selector(spec: &ProblemSpec) -> Result<&SelectorPath> {
    spec.selector
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("the problem declares no selector".into()))
}

fn roots(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome> {
    let path = track_roots(selector(spec)?, flags.resolution.unwrap_or(spec.limits.grid_size))?;
    let summary = format!(
        "{} branches over {} samples, {} axis events\n",
        path.branches(),
        path.alpha.len(),
        path.events.len()
    );
    Ok(Outcome::report(path.to_csv(), flags, summary))
}

#[derive(Serialize)]
struct CornerReport {
    polynomial: String,
    root_count: RootCount,
}

#[derive(Serialize)]
struct AlphaReport {
    alpha: String,
    intervals: Vec<String>,
    hurwitz: bool,
    corners: Vec<CornerReport>,
}

fn alphas(spec: &ProblemSpec, flags: &Flags) -> Result<Vec<Rational>> {
    let fam = &spec.family;
    if flags.alpha.is_empty() {
        let mid = (fam.alpha_minus() + fam.alpha_plus()) / int(2);
        return Ok(vec![fam.alpha_minus().clone(), mid, fam.alpha_plus().clone()]);
    }
    flags.alpha.iter().map(|s| parse_constant(s)).collect()
}

fn kharitonov(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut summary = String::new();
    for alpha in alphas(spec, flags)? {
        let s = spec.family.instantiate(&alpha)?;
        let corners = s
            .corners()
            .kharitonov()
            .into_iter()
            .map(|k| {
                Ok(CornerReport {
                    root_count: root_count(&k)?,
                    polynomial: k.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let hurwitz = kharitonov_hurwitz(&s);
        summary.push_str(&format!(
            "alpha = {}: {}\n",
            fmt_rational(&alpha),
            if hurwitz { "Hurwitz stable" } else { "not Hurwitz stable" }
        ));
        reports.push(AlphaReport {
            alpha: fmt_rational(&alpha),
            intervals: s.with_leading().iter().map(ToString::to_string).collect(),
            hurwitz,
            corners,
        });
    }
    Ok(Outcome::report(to_json(&reports), flags, summary))
}

fn winding(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome> {
    let sel = selector(spec)?;
    let disks = if flags.rect.is_empty() {
        validator_disks(spec)?
    } else {
        let v = flags.rect.iter().map(|s| parse_constant(s)).collect::<Result<Vec<_>>>()?;
        let [a0, a1, b0, b1]: [Rational; 4] = v
            .try_into()
            .map_err(|_| Error::InvalidArgument("--rect needs a0,a1,b0,b1".into()))?;
        vec![PolygonDisk::rectangle(a0, a1, b0, b1)?]
    };
    let windings = disks
        .iter()
        .map(|d| winding_number(sel, d))
        .collect::<Result<Vec<_>>>()?;
    let crossing = crossing_identity_check(sel, &disks);
    let summary = format!(
        "windings {:?}{}\n",
        windings.iter().map(|w| w.winding).collect::<Vec<_>>(),
        match &crossing {
            Ok(c) => format!(", crossing identity {} (expected {})", if c.holds { "holds" } else { "fails" }, c.expected),
            Err(e) => format!(", crossing identity not checked: {e}"),
        }
    );
    let report = json!({
        "disks": disks,
        "windings": windings,
        "crossing": crossing.as_ref().ok(),
        "crossing_error": crossing.as_ref().err().map(ToString::to_string),
    });
    Ok(Outcome::report(to_json(&report), flags, summary))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Writes through a sibling temporary file so readers never see a partial
/// artifact.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn diagnostics(e: &Error) -> String {
    match e {
        Error::InvalidProblem(list) => {
            let mut s = String::from("error: invalid problem\n");
            for item in list {
                s.push_str(&format!("  - {item}\n"));
            }
            s
        }
        e => format!("error: {e}\n"),
    }
}

/// Runs a command end to end and returns the process exit code.
pub fn run(command: Command, problem: &Path, flags: &Flags) -> i32 {
    let outcome = execute(command, problem, flags).and_then(|o| {
        for (p, text) in &o.files {
            write_atomic(p, text)?;
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            let _ = std::io::stdout().write_all(o.stdout.as_bytes());
            if !flags.quiet {
                let _ = std::io::stderr().write_all(o.summary.as_bytes());
            }
            o.code
        }
        Err(e) => {
            let _ = std::io::stderr().write_all(diagnostics(&e).as_bytes());
            EXIT_ERROR
        }
    }
}

/// Parses arguments and runs; the body of the binary.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match &cli.problem {
        Some(p) => run(cli.command, p, &cli.flags),
        None => {
            eprintln!("error: a problem file is required");
            EXIT_ERROR
        }
    }
}
