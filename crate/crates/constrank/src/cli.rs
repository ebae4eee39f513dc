//! Command-line front end: dimension bounds, witness construction,
//! certification, the lemma suites, the extension falsifier, skew normal
//! forms, and Pfaffians, with JSON/CSV/pretty output.
//!
//! Conventions shared by every subcommand:
//!
//! * matrix indices in output are 1-based;
//! * rationals appear as exact strings like `-3/4`;
//! * the RNG seed defaults to 0 (override with `--seed` or `CRK_SEED`), and
//!   identical invocations produce byte-identical output;
//! * exit code 0 means a full pass, 1 a refutation or failed check, 2 a
//!   usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{
    bound_ledger, max_dim_antisym, witness_subspace, Regime, WitnessParams,
};
use crate::error::{Error, Result};
use crate::io::{load_json, to_json_string};
use crate::matrix::MatrixQ;
use crate::rational::format_rat;
use crate::skew::SkewMatrixQ;
use crate::subspace::{
    certify_constant_rank, AffineMatrixSubspace, CertMode, CertOptions, CertificationReport,
    Evidence, Verdict,
};
use crate::verify::{falsify_extensions, lemma_csv, run_all_suites, FalsifierReport, LemmaResult};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "crk",
    version,
    about = "Exact toolkit for constant-rank affine subspaces of antisymmetric matrices",
    long_about = "Exact toolkit for constant-rank affine subspaces of antisymmetric matrices.\n\
                  All arithmetic is exact rational; matrix indices in output are 1-based and\n\
                  rationals are strings like -3/4. Runs are deterministic: the seed defaults\n\
                  to 0 and identical invocations produce byte-identical output."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximal dimension of a constant-rank affine subspace of n x n
    /// antisymmetric matrices, with the dimension-count ledger when
    /// n >= 2r + 2
    Bound(BoundArgs),
    /// Build the maximal-dimension witness subspace and emit it as JSON
    Construct(ConstructArgs),
    /// Certify or refute constant rank for a subspace read from JSON
    Certify(CertifyArgs),
    /// Run every lemma suite and summarize the results
    Lemmas(LemmasArgs),
    /// Extend a witness family by random independent directions; every
    /// extension must be refuted, survivors mean failure
    Falsify(FalsifyArgs),
    /// Congruence-transform an antisymmetric matrix to its normal form
    /// (Jbar_2k plus a zero block)
    NormalForm(MatrixInArgs),
    /// Pfaffian of an antisymmetric matrix (zero for odd sizes)
    Pfaffian(MatrixInArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Sampled,
    Auto,
}

impl From<Mode> for CertMode {
    fn from(m: Mode) -> CertMode {
        match m {
            Mode::Symbolic => CertMode::Symbolic,
            Mode::Sampled => CertMode::Sampled,
            Mode::Auto => CertMode::Auto,
        }
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write output to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Output format (default depends on the subcommand)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Ambient matrix size n
    #[arg(long)]
    pub n: usize,
    /// Target constant rank 2r (must be even and positive)
    #[arg(long)]
    pub rank: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Ambient matrix size n
    #[arg(long)]
    pub n: usize,
    /// Half-rank r; the witness has constant rank 2r
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Subspace JSON produced by `construct` (or hand-written)
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// The rank every element must have
    #[arg(long)]
    pub rank: usize,
    /// symbolic proves or refutes under the size caps; sampled only
    /// refutes; auto picks symbolic exactly when the caps allow it
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Sample count for sampled mode
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// RNG seed for sampled mode
    #[arg(long, env = "CRK_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LemmasArgs {
    /// Trials per suite instance
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// RNG seed; trial i uses stream i of this seed
    #[arg(long, env = "CRK_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FalsifyArgs {
    /// Ambient matrix size n
    #[arg(long)]
    pub n: usize,
    /// Half-rank r of the witness family to extend
    #[arg(long)]
    pub r: usize,
    /// Number of random extension directions to try
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// RNG seed; trial i uses stream i of this seed
    #[arg(long, env = "CRK_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MatrixInArgs {
    /// Matrix JSON ({"rows": .., "cols": .., "entries": [["0", "1/2"], ..]})
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Dispatches a parsed invocation, writing any stdout output to `w`.
/// Returns the process exit code; `Err` means a usage-level error (exit 2).
pub fn run(cli: Cli, w: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Bound(a) => cmd_bound(&a, w),
        Command::Construct(a) => cmd_construct(&a, w),
        Command::Certify(a) => cmd_certify(&a, w),
        Command::Lemmas(a) => cmd_lemmas(&a, w),
        Command::Falsify(a) => cmd_falsify(&a, w),
        Command::NormalForm(a) => cmd_normal_form(&a, w),
        Command::Pfaffian(a) => cmd_pfaffian(&a, w),
    }
}

fn emit(text: &str, output: &OutputArgs, w: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            w.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pick_format(output: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = output.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::UnsupportedFormat(
            format!("{f:?}").to_lowercase(),
        ))
    }
}

fn regime_name(p: &WitnessParams) -> &'static str {
    match p.regime() {
        Regime::Wide => "wide",
        Regime::Odd => "odd",
        Regime::Tight => "tight",
    }
}

/// Rationals as `p/q`, right-aligned per column.
fn render_matrix(m: &MatrixQ) -> String {
    let cells: Vec<String> = m.entries().iter().map(format_rat).collect();
    let mut widths = vec![0usize; m.cols()];
    for (k, s) in cells.iter().enumerate() {
        let j = k % m.cols();
        widths[j] = widths[j].max(s.len());
    }
    let mut out = String::new();
    for i in 0..m.rows() {
        out.push_str("  [");
        for j in 0..m.cols() {
            if j > 0 {
                out.push_str("  ");
            }
            let s = &cells[i * m.cols() + j];
            out.push_str(&" ".repeat(widths[j] - s.len()));
            out.push_str(s);
        }
        out.push_str("]\n");
    }
    out
}

fn join_rats(v: &[crate::rational::Rat]) -> String {
    v.iter().map(format_rat).collect::<Vec<_>>().join(", ")
}

fn describe_evidence(e: &Evidence) -> String {
    match e {
        Evidence::SymbolicProof {
            minors_checked,
            lower_bound,
            witness_minor,
        } => {
            let minor = witness_minor.as_ref().map_or(String::new(), |(r, c)| {
                format!("; constant nonzero minor at rows {r:?}, cols {c:?}")
            });
            format!(
                "all {minors_checked} over-size minors vanish identically; lower bound: \
                 {lower_bound}{minor}"
            )
        }
        Evidence::CounterexamplePoint { point, rank } => {
            format!(
                "counterexample at coordinates [{}] where the rank is {rank}",
                join_rats(point)
            )
        }
        Evidence::RealDropLine {
            point,
            direction,
            interval,
        } => format!(
            "rank drops on the line [{}] + s [{}] at a real s isolated in ({}, {})",
            join_rats(point),
            join_rats(direction),
            format_rat(&interval.0),
            format_rat(&interval.1)
        ),
        Evidence::SamplesPassed { samples } => format!(
            "{samples} seeded samples all had the target rank (sampling refutes, never proves)"
        ),
        Evidence::SearchExhausted { samples, lines } => format!(
            "rank never exceeds the target, but the lower bound resisted {samples} samples \
             and {lines} line searches"
        ),
    }
}

fn certification_exit(report: &CertificationReport) -> i32 {
    match (&report.verdict, &report.evidence) {
        (Verdict::ConstantRank, _) => EXIT_PASS,
        // A completed sampled run without a refutation is that mode's pass.
        (Verdict::Inconclusive, Evidence::SamplesPassed { .. }) => EXIT_PASS,
        _ => EXIT_FAIL,
    }
}

fn cmd_bound(a: &BoundArgs, w: &mut dyn Write) -> Result<i32> {
    let dim = max_dim_antisym(a.n, a.rank)?;
    let p = WitnessParams::new(a.n, a.rank / 2)?;
    let ledger = bound_ledger(a.n, a.rank / 2).ok();
    match pick_format(&a.output, Format::Pretty, &[Format::Pretty, Format::Json])? {
        Format::Pretty => {
            let mut text = format!(
                "maximal constant-rank-{} dimension in {} x {} antisymmetric matrices: {dim}\n\
                 regime: {} (n = {}, r = {})\n",
                a.rank,
                a.n,
                a.n,
                regime_name(&p),
                a.n,
                a.rank / 2
            );
            if let Some(l) = &ledger {
                text.push_str(&format!(
                    "ledger: dim P = {}, dim U = {}, dim Z = {}; bound = {} - {} - {} = {}\n",
                    l.dim_p, l.dim_u, l.dim_z, l.dim_p, l.dim_u, l.dim_z, l.bound
                ));
            }
            emit(&text, &a.output, w)?;
        }
        Format::Json => {
            let value = serde_json::json!({
                "n": a.n,
                "rank": a.rank,
                "regime": regime_name(&p),
                "max_dim": dim,
                "ledger": ledger,
            });
            emit(&to_json_string(&value)?, &a.output, w)?;
        }
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(EXIT_PASS)
}

fn cmd_construct(a: &ConstructArgs, w: &mut dyn Write) -> Result<i32> {
    let p = WitnessParams::new(a.n, a.r)?;
    let s = witness_subspace(&p)?;
    match pick_format(&a.output, Format::Json, &[Format::Json, Format::Pretty])? {
        Format::Json => emit(&to_json_string(&s)?, &a.output, w)?,
        Format::Pretty => {
            let mut text = format!(
                "witness subspace: n = {}, rank = {}, regime = {}, dimension = {}\nbase:\n{}",
                a.n,
                p.rank(),
                regime_name(&p),
                s.dim(),
                render_matrix(s.base())
            );
            for (i, b) in s.basis().iter().enumerate() {
                text.push_str(&format!("basis[{}]:\n{}", i + 1, render_matrix(b)));
            }
            emit(&text, &a.output, w)?;
        }
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(EXIT_PASS)
}

fn cmd_certify(a: &CertifyArgs, w: &mut dyn Write) -> Result<i32> {
    let s: AffineMatrixSubspace = load_json(&a.input)?;
    let opts = CertOptions {
        seed: a.seed,
        samples: a.trials,
    };
    let report = certify_constant_rank(&s, a.rank, a.mode.into(), &opts)?;
    match pick_format(&a.output, Format::Json, &[Format::Json, Format::Pretty])? {
        Format::Json => emit(&to_json_string(&report)?, &a.output, w)?,
        Format::Pretty => {
            let verdict = match report.verdict {
                Verdict::ConstantRank => "constant-rank",
                Verdict::NotConstantRank => "not-constant-rank",
                Verdict::Inconclusive => "inconclusive",
            };
            let mode = match report.mode {
                CertMode::Symbolic => "symbolic",
                CertMode::Sampled => "sampled",
                CertMode::Auto => "auto",
            };
            let text = format!(
                "verdict: {verdict} (target rank {}, {mode} mode)\nevidence: {}\n",
                report.rank,
                describe_evidence(&report.evidence)
            );
            emit(&text, &a.output, w)?;
        }
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(certification_exit(&report))
}

fn lemma_table(results: &[LemmaResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.lemma.len())
        .max()
        .unwrap_or(5)
        .max("lemma".len());
    let mut text = format!("{:<width$}  attempted  passed  ok\n", "lemma");
    for r in results {
        text.push_str(&format!(
            "{:<width$}  {:>9}  {:>6}  {}\n",
            r.lemma,
            r.attempted,
            r.passed,
            r.ok()
        ));
    }
    for r in results {
        if let Some(f) = &r.first_failure {
            text.push_str(&format!(
                "first failure in {} (trial {}): {}\n",
                r.lemma, f.trial, f.description
            ));
        }
    }
    text
}

fn cmd_lemmas(a: &LemmasArgs, w: &mut dyn Write) -> Result<i32> {
    let results = run_all_suites(a.trials, a.seed)?;
    match pick_format(
        &a.output,
        Format::Csv,
        &[Format::Csv, Format::Json, Format::Pretty],
    )? {
        Format::Csv => emit(&lemma_csv(&results), &a.output, w)?,
        Format::Json => emit(&to_json_string(&results)?, &a.output, w)?,
        Format::Pretty => emit(&lemma_table(&results), &a.output, w)?,
    }
    Ok(if results.iter().all(LemmaResult::ok) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn falsifier_text(rep: &FalsifierReport) -> String {
    format!(
        "extended witness (n = {}, r = {}) by {} random directions (seed {}):\n\
         refuted by sampling:    {}\n\
         refuted symbolically:   {}\n\
         survivors:              {}\n",
        rep.n, rep.r, rep.tried, rep.seed, rep.refuted_by_sampling, rep.refuted_symbolically, rep.survivors
    )
}

fn cmd_falsify(a: &FalsifyArgs, w: &mut dyn Write) -> Result<i32> {
    let p = WitnessParams::new(a.n, a.r)?;
    let report = falsify_extensions(&p, a.trials, a.seed)?;
    debug_assert!(report.consistent());
    match pick_format(&a.output, Format::Json, &[Format::Json, Format::Pretty])? {
        Format::Json => emit(&to_json_string(&report)?, &a.output, w)?,
        Format::Pretty => emit(&falsifier_text(&report), &a.output, w)?,
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(if report.survivors == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn cmd_normal_form(a: &MatrixInArgs, w: &mut dyn Write) -> Result<i32> {
    let m: MatrixQ = load_json(&a.input)?;
    let skew = SkewMatrixQ::new(m)?;
    let (q, k) = skew.skew_normal_form();
    let normal = &(&q.transpose() * skew.as_matrix()) * &q;
    match pick_format(&a.output, Format::Pretty, &[Format::Pretty, Format::Json])? {
        Format::Pretty => {
            let text = format!(
                "rank: {} (k = {k})\ntransform Q (normal form is Q^T A Q):\n{}normal form:\n{}",
                2 * k,
                render_matrix(&q),
                render_matrix(&normal)
            );
            emit(&text, &a.output, w)?;
        }
        Format::Json => {
            let value = serde_json::json!({
                "rank": 2 * k,
                "k": k,
                "transform": q,
                "normal_form": normal,
            });
            emit(&to_json_string(&value)?, &a.output, w)?;
        }
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(EXIT_PASS)
}

fn cmd_pfaffian(a: &MatrixInArgs, w: &mut dyn Write) -> Result<i32> {
    let m: MatrixQ = load_json(&a.input)?;
    let skew = SkewMatrixQ::new(m)?;
    let pf = skew.pfaffian();
    let det = skew.as_matrix().det()?;
    match pick_format(&a.output, Format::Pretty, &[Format::Pretty, Format::Json])? {
        Format::Pretty => {
            let text = format!(
                "pfaffian: {}\ndeterminant: {} (= pfaffian^2)\n",
                format_rat(&pf),
                format_rat(&det)
            );
            emit(&text, &a.output, w)?;
        }
        Format::Json => {
            let value = serde_json::json!({
                "n": skew.n(),
                "pfaffian": format_rat(&pf),
                "det": format_rat(&det),
            });
            emit(&to_json_string(&value)?, &a.output, w)?;
        }
        Format::Csv => unreachable!("filtered by pick_format"),
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).expect("args parse");
        let mut buf = Vec::new();
        let code = run(cli, &mut buf).expect("command runs");
        (code, String::from_utf8(buf).expect("utf8 output"))
    }

    #[test]
    fn bound_command_prints_dimension_and_ledger() {
        let (code, out) = run_str(&["crk", "bound", "--n", "6", "--rank", "4"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with(
            "maximal constant-rank-4 dimension in 6 x 6 antisymmetric matrices: 6\n"
        ));
        assert!(out.contains("ledger: dim P = 14, dim U = 4, dim Z = 4; bound = 14 - 4 - 4 = 6"));

        let (code, out) = run_str(&["crk", "bound", "--n", "4", "--rank", "4"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains(": 2\n"));
        assert!(out.contains("regime: tight"));
        assert!(!out.contains("ledger"));

        let cli = Cli::try_parse_from(["crk", "bound", "--n", "5", "--rank", "3"]).unwrap();
        let mut buf = Vec::new();
        assert!(matches!(run(cli, &mut buf), Err(Error::OddRank(3))));
    }

    #[test]
    fn bound_json_shape() {
        let (_, out) = run_str(&[
            "crk", "bound", "--n", "6", "--rank", "4", "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["max_dim"], 6);
        assert_eq!(v["regime"], "wide");
        assert_eq!(v["ledger"]["dim_p"], 14);
        let (_, out) = run_str(&[
            "crk", "bound", "--n", "4", "--rank", "4", "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["max_dim"], 2);
        assert!(v["ledger"].is_null());
    }

    #[test]
    fn construct_certify_roundtrip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("witness.json");
        let cli = Cli::try_parse_from([
            "crk",
            "construct",
            "--n",
            "6",
            "--r",
            "2",
            "--out",
            path.to_str().unwrap(),
        ])
        .unwrap();
        let mut buf = Vec::new();
        assert_eq!(run(cli, &mut buf).unwrap(), EXIT_PASS);
        assert!(buf.is_empty());

        let (code, out) = run_str(&[
            "crk",
            "certify",
            "--in",
            path.to_str().unwrap(),
            "--rank",
            "4",
        ]);
        assert_eq!(code, EXIT_PASS);
        let report: CertificationReport = serde_json::from_str(&out).unwrap();
        assert_eq!(report.verdict, Verdict::ConstantRank);

        // The wrong rank is refuted, exit 1.
        let (code, out) = run_str(&[
            "crk",
            "certify",
            "--in",
            path.to_str().unwrap(),
            "--rank",
            "2",
            "--format",
            "pretty",
        ]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("not-constant-rank"));
    }

    #[test]
    fn lemmas_csv_and_exit() {
        let (code, out) = run_str(&["crk", "lemmas", "--trials", "2", "--seed", "3"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with("lemma,attempted,passed,ok\n"));
        assert!(out.contains("lemma4,10,10,true"));
        let (code, out) = run_str(&[
            "crk", "lemmas", "--trials", "2", "--seed", "3", "--format", "pretty",
        ]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("identity-ss r=3"));
    }

    #[test]
    fn falsify_small_run() {
        let (code, out) = run_str(&[
            "crk", "falsify", "--n", "4", "--r", "2", "--trials", "3", "--seed", "1",
        ]);
        assert_eq!(code, EXIT_PASS);
        let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(rep["tried"], 3);
        assert_eq!(rep["survivors"], 0);
    }

    #[test]
    fn normal_form_and_pfaffian_commands() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("skew.json");
        let m = SkewMatrixQ::from_upper(4, |i, j| crate::rational::int((i + j) as i64))
            .into_matrix();
        crate::io::save_json(&path, &m).unwrap();

        let (code, out) = run_str(&["crk", "normal-form", "--in", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with("rank: 4 (k = 2)\n"));

        let (code, out) = run_str(&[
            "crk", "pfaffian", "--in", path.to_str().unwrap(), "--format", "json",
        ]);
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        // pf = a12 a34 - a13 a24 + a14 a23 = 1*5 - 2*4 + 3*3 = 6.
        assert_eq!(v["pfaffian"], "6");
        assert_eq!(v["det"], "36");
    }

    #[test]
    fn csv_rejected_where_meaningless() {
        let cli = Cli::try_parse_from([
            "crk", "bound", "--n", "6", "--rank", "4", "--format", "csv",
        ])
        .unwrap();
        let mut buf = Vec::new();
        assert!(matches!(
            run(cli, &mut buf),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let args = [
            "crk", "falsify", "--n", "5", "--r", "2", "--trials", "4", "--seed", "9",
        ];
        let (_, a) = run_str(&args);
        let (_, b) = run_str(&args);
        assert_eq!(a, b);
    }
}
