//! Command-line front end.
//!
//! Exit codes: 0 certified / member / ok, 1 refuted or not a member,
//! 2 inconclusive, 64 usage error, 65 invalid input data, 74 I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::criteria::{certify_infinite, compare_criteria, symmetric_criterion, Certificate, Verdict};
use crate::error::Error;
use crate::exactnum::{QField, Rat};
use crate::pascal::{self, Mode, RowReport};
use crate::region::{
    closure_test, correct_side, decompose, hypersurface_point, ExactPowerBase, HParams, DEFAULT_PRECISION,
};
use crate::sample::Sampler;
use crate::seqcore::{is_ifold_lc, is_r_factor_lc, iterate_lr, LcCheck, Parity, Seq, SymSeq};
use crate::witness::{a_bound, build_witness, default_core, Scheme, WitnessSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

const DEFAULT_MAX_ITERS: &str = "20";

#[derive(Debug, Parser)]
#[command(name = "logcave", version, about = "Exact checks of r-factor and infinite log-concavity")]
pub struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply L_r to a sequence.
    Apply(ApplyArgs),
    /// Check r-factor log-concavity, optionally through i folds.
    Check(CheckArgs),
    /// Certify infinite log-concavity.
    Certify(CertifyArgs),
    /// Iterations needed by the r0 and r1 factors along the L orbit.
    Compare(CompareArgs),
    /// Region membership and boundary.
    #[command(subcommand)]
    Region(RegionCommand),
    /// Explicit members of the region.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Rows of Pascal's triangle.
    #[command(subcommand)]
    Pascal(PascalCommand),
    /// Same as `region boundary`.
    Boundary(BoundaryArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long)]
    pub seq: Seq,
    #[arg(long, default_value = "1")]
    pub r: QField,
    #[arg(long, default_value_t = 1)]
    pub iters: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub seq: Seq,
    #[arg(long, default_value = "1")]
    pub r: QField,
    /// Also require L_r^j(seq) ≥ 0 for every j ≤ folds.
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
    pub format: TextOrJson,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CriterionArg {
    /// Classical L orbit, factor r0 = (3+√5)/2.
    R0,
    /// L_r orbit with factor r1 = 1+√2.
    R1,
    /// Symmetric conditions on an even sequence, no iteration.
    Symmetric,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub seq: Seq,
    #[arg(long, value_enum, default_value_t = CriterionArg::R0)]
    pub criterion: CriterionArg,
    /// Factor to use instead of the criterion's threshold.
    #[arg(long)]
    pub r: Option<QField>,
    #[arg(long, env = "LOGCAVE_MAX_ITERS", default_value = DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub seq: Seq,
    #[arg(long, env = "LOGCAVE_MAX_ITERS", default_value = DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
}

#[derive(Debug, Subcommand)]
pub enum RegionCommand {
    /// Test a core point against every surface.
    Check(RegionCheckArgs),
    /// CSV samples of the planar boundary curves.
    Boundary(BoundaryArgs),
    /// A point of one hypersurface.
    Surface(SurfaceArgs),
}

#[derive(Debug, Args)]
pub struct RegionCheckArgs {
    #[arg(long)]
    pub r: Rat,
    #[arg(long, default_value_t = Parity::Even)]
    pub parity: Parity,
    /// Core x0,x1,…,xn.
    #[arg(long)]
    pub point: Seq,
    /// Also apply L_r this many times, re-checking membership.
    #[arg(long)]
    pub closure: Option<usize>,
    /// Largest exponent denominator tried when recognizing exact gaps.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub r: Rat,
    #[arg(long, default_value_t = Parity::Even)]
    pub parity: Parity,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = CsvOrJson::Csv)]
    pub format: CsvOrJson,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub r: Rat,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = Parity::Even)]
    pub parity: Parity,
    #[arg(long)]
    pub surface: usize,
    #[arg(long)]
    pub x: Rat,
    /// Use x^(1/root) instead of x.
    #[arg(long, default_value_t = 1)]
    pub root: u32,
    /// The n−1 free gaps, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub gaps: Vec<Rat>,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    Build(WitnessArgs),
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, default_value = "pentagonal")]
    pub scheme: Scheme,
    #[arg(long)]
    pub r: Rat,
    #[arg(long = "C", alias = "c")]
    pub c: Rat,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = Parity::Even)]
    pub parity: Parity,
    /// Defaults to the lower bound plus one.
    #[arg(long)]
    pub a: Option<Rat>,
    /// Base core q0,…,qn; defaults to the minimal geometric one.
    #[arg(long)]
    pub q: Option<Seq>,
}

#[derive(Debug, Subcommand)]
pub enum PascalCommand {
    Verify(PascalArgs),
}

#[derive(Debug, Args)]
pub struct PascalArgs {
    #[arg(long, default_value_t = 0)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    #[arg(long, default_value = "both")]
    pub mode: Mode,
    #[arg(long, env = "LOGCAVE_MAX_ITERS", default_value = DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    /// Write the report here instead of stdout; stdout then gets a summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV with columns n, r0_iters, r1_iters, verdicts.
    #[arg(long)]
    pub csv: bool,
    /// Include wall-clock times (output is no longer reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Data(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Data(_) | CliError::Json(_) => EXIT_DATA,
            CliError::Io(_) | CliError::Csv(_) => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

type CliResult = std::result::Result<i32, CliError>;

/// Parses `args` (program name first) and runs, writing to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run_to(args, &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}

/// [`run`] with explicit output streams.
pub fn run_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Apply(a) => apply(a, out),
        Command::Check(a) => check(a, out),
        Command::Certify(a) => certify(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Region(RegionCommand::Check(a)) => region_check(a, out),
        Command::Region(RegionCommand::Boundary(a)) | Command::Boundary(a) => boundary(a, cli.seed, out),
        Command::Region(RegionCommand::Surface(a)) => surface(a, out),
        Command::Witness(WitnessCommand::Build(a)) => witness(a, out),
        Command::Pascal(PascalCommand::Verify(a)) => pascal_verify(a, out),
    }
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> std::result::Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Certified => EXIT_OK,
        Verdict::Refuted => EXIT_NEGATIVE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn apply(a: &ApplyArgs, out: &mut dyn Write) -> CliResult {
    let image = iterate_lr(&a.seq, &a.r, a.iters)?;
    match a.format {
        TextOrJson::Text => writeln!(out, "{image}")?,
        TextOrJson::Json => write_json(out, &json!({ "r": a.r, "iters": a.iters, "seq": image }))?,
    }
    Ok(EXIT_OK)
}

fn check(a: &CheckArgs, out: &mut dyn Write) -> CliResult {
    let lc = is_r_factor_lc(&a.seq, &a.r)?;
    let folds = a.folds.map(|i| is_ifold_lc(&a.seq, &a.r, i)).transpose()?;
    let ok = lc.holds() && folds.is_none_or(|f| f.is_ok());
    let fails_at = match lc {
        LcCheck::Holds => None,
        LcCheck::FailsAt(k) => Some(k),
    };
    match a.format {
        TextOrJson::Text => {
            match fails_at {
                None => writeln!(out, "{}-factor log-concave", a.r)?,
                Some(k) => writeln!(out, "not {}-factor log-concave at index {k}", a.r)?,
            }
            if let Some(f) = folds {
                writeln!(out, "folds: {}", serde_json::to_string(&f)?)?;
            }
        }
        TextOrJson::Json => {
            let mut report = json!({ "r": a.r, "r_factor_lc": lc.holds(), "fails_at": fails_at });
            if let Some(f) = folds {
                report["folds"] = json!({ "i": a.folds, "result": f });
            }
            write_json(out, &report)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn print_certificate(c: &Certificate, format: TextOrJson, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    match format {
        TextOrJson::Json => write_json(out, c),
        TextOrJson::Text => {
            let verdict = serde_json::to_value(c.verdict)?;
            let verdict = verdict.as_str().unwrap_or_default();
            write!(out, "{verdict} (r = {}, iterations = {})", c.r, c.iterations)?;
            if let Some(f) = c.failing {
                write!(out, ", failing at iteration {} index {}", f.iteration, f.index)?;
            }
            writeln!(out)?;
            Ok(())
        }
    }
}

fn certify(a: &CertifyArgs, out: &mut dyn Write) -> CliResult {
    let cert = match a.criterion {
        CriterionArg::R0 => {
            certify_infinite(&a.seq, a.r.as_ref().unwrap_or(&QField::r0()), &QField::one(), a.max_iters)?
        }
        CriterionArg::R1 => {
            let r = a.r.clone().unwrap_or_else(QField::r1);
            certify_infinite(&a.seq, &r, &r, a.max_iters)?
        }
        CriterionArg::Symmetric => {
            let sym = SymSeq::from_materialized(&a.seq, Parity::Even)?;
            symmetric_criterion(&sym, a.r.as_ref().unwrap_or(&QField::r1()))?
        }
    };
    print_certificate(&cert, a.format, out)?;
    Ok(verdict_code(cert.verdict))
}

fn compare(a: &CompareArgs, out: &mut dyn Write) -> CliResult {
    let cmp = compare_criteria(&a.seq, a.max_iters)?;
    let report = json!({
        "r0": cmp.r0,
        "r1": cmp.r1,
        "r1_not_later": cmp.r1_not_later(),
    });
    write_json(out, &report)?;
    Ok(verdict_code(cmp.r0.verdict))
}

fn region_check(a: &RegionCheckArgs, out: &mut dyn Write) -> CliResult {
    let p = SymSeq::new(a.point.values().to_vec(), a.parity)?;
    let side = correct_side(&p, &a.r)?;
    let member = side.is_member();
    let decomposition = decompose(&p, a.precision).ok();
    let closure = match (a.closure, member) {
        (Some(iters), true) => Some(closure_test(&p, &a.r, iters)?),
        _ => None,
    };
    match a.format {
        TextOrJson::Text => match side.first_violation() {
            None => writeln!(out, "member")?,
            Some(j) => writeln!(out, "not a member: violates surface {j}")?,
        },
        TextOrJson::Json => {
            let mut report = json!({
                "member": member,
                "first_violation": side.first_violation(),
                "clauses": side.clauses,
            });
            if let Some(d) = decomposition {
                report["decomposition"] = serde_json::to_value(d)?;
            }
            if let Some(c) = &closure {
                report["closure"] =
                    json!({ "passed": c.passed(), "iterations": c.iterations, "violation": c.violation });
            }
            write_json(out, &report)?;
        }
    }
    let closure_ok = closure.is_none_or(|c| c.passed());
    Ok(if member && closure_ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn boundary(a: &BoundaryArgs, seed: u64, out: &mut dyn Write) -> CliResult {
    if a.n != 1 {
        return Err(CliError::Usage(format!("--n {}: boundary sampling covers the planar case n = 1 only", a.n)));
    }
    let rows = Sampler::new(seed).planar_boundary(&a.r, a.parity, a.samples)?;
    match a.format {
        CsvOrJson::Json => write_json(out, &rows)?,
        CsvOrJson::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn surface(a: &SurfaceArgs, out: &mut dyn Write) -> CliResult {
    let params = HParams {
        r: a.r.clone(),
        n: a.n,
        parity: a.parity,
        surface: a.surface,
        x: ExactPowerBase::new(a.x.clone(), a.root)?,
        gaps: a.gaps.clone(),
    };
    let p = hypersurface_point(&params)?;
    write_json(out, &json!({ "point": p, "clauses": correct_side(&p, &a.r)?.clauses }))?;
    Ok(EXIT_OK)
}

fn witness(a: &WitnessArgs, out: &mut dyn Write) -> CliResult {
    let q_core = match &a.q {
        Some(q) if q.len() != a.n + 1 => {
            return Err(CliError::Usage(format!("--q has {} entries, --n {} needs {}", q.len(), a.n, a.n + 1)));
        }
        Some(q) => q.values().to_vec(),
        None => default_core(&a.r, a.n)?,
    };
    let bound = a_bound(&a.r, &a.c, a.n, a.scheme, a.parity)?;
    let a_value = a.a.clone().unwrap_or_else(|| &bound.value + &Rat::one());
    let spec = WitnessSpec { q_core, r: a.r.clone(), c: a.c.clone(), a: a_value, scheme: a.scheme, parity: a.parity };
    let w = build_witness(&spec)?;
    let side = correct_side(&w, &a.r)?;
    write_json(
        out,
        &json!({
            "spec": spec,
            "a_bound": bound,
            "witness": w,
            "member": side.is_member(),
            "clauses": side.clauses,
        }),
    )?;
    Ok(if side.is_member() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn pascal_verify(a: &PascalArgs, out: &mut dyn Write) -> CliResult {
    let mut reports = pascal::verify_range(a.from, a.to, a.mode, a.max_iters)?;
    if !a.timing {
        for r in &mut reports {
            r.wall_time = None;
        }
    }
    match &a.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_pascal(&reports, a, &mut file)?;
            file.flush()?;
            write_json(out, &pascal::summarize(&reports))?;
        }
        None => write_pascal(&reports, a, out)?,
    }
    let verdicts: Vec<Verdict> =
        reports.iter().flat_map(|r| [&r.certificate_r0, &r.certificate_r1]).flatten().map(|c| c.verdict).collect();
    Ok(if verdicts.contains(&Verdict::Refuted) {
        EXIT_NEGATIVE
    } else if verdicts.contains(&Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct PascalCsvRow {
    n: usize,
    r0_iters: Option<usize>,
    r1_iters: Option<usize>,
    verdicts: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time: Option<f64>,
}

fn write_pascal(reports: &[RowReport], a: &PascalArgs, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    if !a.csv {
        return write_json(out, reports);
    }
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        let labelled =
            [("r0", &r.certificate_r0), ("r1", &r.certificate_r1), ("r1_generalized", &r.certificate_r1_generalized)];
        let verdicts = labelled
            .iter()
            .filter_map(|(label, c)| {
                let c = c.as_ref()?;
                let v = serde_json::to_value(c.verdict).ok()?;
                Some(format!("{label}={}", v.as_str()?))
            })
            .collect::<Vec<_>>()
            .join(";");
        w.serialize(PascalCsvRow {
            n: r.n,
            r0_iters: r.certificate_r0.as_ref().and_then(Certificate::certified_at),
            r1_iters: r.certificate_r1.as_ref().and_then(Certificate::certified_at),
            verdicts,
            wall_time: r.wall_time,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("logcave").chain(args.iter().copied());
        let code = run_to(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn apply_prints_text() {
        let (code, out, _) = run_capture(&["apply", "--seq", "1,3,3,1", "--r", "1", "--iters", "1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "{1,6,6,1}\n");
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_capture(&["apply", "--seq", "1,x"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--seq"));
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["boundary", "--n", "2", "--r", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn data_errors() {
        let (code, _, err) = run_capture(&["apply", "--seq", "1,2", "--r", "1/2"]);
        assert_eq!(code, EXIT_DATA);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(run_capture(&["check", "--seq", "1,3,3,1", "--r", "3"]).0, EXIT_OK);
        assert_eq!(run_capture(&["check", "--seq", "1,3,3,1", "--r", "4"]).0, EXIT_NEGATIVE);
        assert_eq!(run_capture(&["check", "--seq", "1,1.9,1.9,1", "--folds", "5"]).0, EXIT_NEGATIVE);
    }

    #[test]
    fn region_check_n0() {
        let (code, out, _) = run_capture(&["region", "check", "--r", "1", "--parity", "even", "--point", "3"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["member"], true);
        let (code, _, _) = run_capture(&["region", "check", "--r", "1", "--point", "3/2", "--format", "text"]);
        assert_eq!(code, EXIT_NEGATIVE);
    }

    #[test]
    fn witness_defaults() {
        let (code, out, _) = run_capture(&["witness", "build", "--r", "1", "--C", "1/2", "--n", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["spec"]["a"], "513");
        assert_eq!(v["member"], true);
    }
}
