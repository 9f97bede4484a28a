//! Command-line front end. Every command prints one JSON document with
//! sorted keys on standard output; diagnostics go to standard error.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict (negative minor, chain violation, failed trials), 2 for an
//! inconclusive verdict or an input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::{
    run_structural, verify_forward, verify_reverse, ScenarioConfig, StructuralSuite, VerificationReport,
};
use crate::laurent::{edrei_coeffs, EdreiSpec, LaurentWindow, DEFAULT_TRUNC};
use crate::matrices::{hurwitz_section, hurwitz_source, selector_section, toeplitz_section, MatrixSection};
use crate::rational::{self, Rational};
use crate::sfunc::{check_halfplane_map, partial_fractions, ratio_classify, reciprocal_transform, SFunctionSpec};
use crate::tnn::{check_tnn, find_negative_minor, SectionSchedule, TnnStatus, DEFAULT_MAX_ORDER};
use crate::transforms::{
    cauchy_binet_check, combine, reversal, reversal_check, shift, shift_check, strip_common_poles, whitney_reduce,
    TransformName, TransformTrace,
};

#[derive(Debug, Parser)]
#[command(name = "hurwitz-tnn", version, about = "Exact total-nonnegativity checks for Toeplitz and Hurwitz-type sections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laurent coefficients of an Edrei-form spec on an exponent range.
    Coeffs(CoeffsArgs),
    /// A finite section of T(f), H(p, q) or the selector matrix.
    Section(SectionArgs),
    /// Exhaustive minor check of one section, or a budgeted search.
    CheckTnn(CheckTnnArgs),
    /// Interlacing of an S-function spec, or classification of q/p.
    CheckInterlace(InterlaceArgs),
    /// Partial-fraction expansion of an S-function spec.
    Pf(PfArgs),
    /// Pole removal, combination, Whitney reduction, reversal or shift.
    Transform(TransformArgs),
    /// Seeded verification suites.
    Verify(VerifyArgs),
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// EdreiSpec as a file path or inline JSON.
    #[arg(long)]
    pub spec: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: i64,
    /// Extra terms per expansion when both tails are infinite.
    #[arg(long, default_value_t = DEFAULT_TRUNC)]
    pub trunc: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectionKind {
    Toeplitz,
    Hurwitz,
    Selector,
}

/// Where a square section sits: rows `1..=size`, columns
/// `col_offset+1..=col_offset+size`.
#[derive(Debug, Args)]
pub struct Placement {
    #[arg(long, default_value_t = 8)]
    pub size: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub col_offset: i64,
    #[arg(long, default_value_t = DEFAULT_TRUNC)]
    pub trunc: u32,
}

impl Placement {
    fn labels(&self) -> (Vec<i64>, Vec<i64>) {
        let s = self.size as i64;
        ((1..=s).collect(), (self.col_offset + 1..=self.col_offset + s).collect())
    }
}

#[derive(Debug, Args)]
pub struct SectionArgs {
    #[arg(long, value_enum, default_value_t = SectionKind::Hurwitz)]
    pub kind: SectionKind,
    /// First series (f for toeplitz): a LaurentWindow or an EdreiSpec.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, value_parser = parse_rational)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    pub b: Option<Rational>,
    #[command(flatten)]
    pub at: Placement,
}

#[derive(Debug, Args)]
pub struct CheckTnnArgs {
    #[arg(long, value_enum, default_value_t = SectionKind::Hurwitz)]
    pub kind: SectionKind,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// An explicit section {"rows", "cols", "entries"} instead of series.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long, env = "TNN_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Search sections of growing size up to --size instead of one section.
    #[arg(long)]
    pub search: bool,
    #[command(flatten)]
    pub at: Placement,
}

#[derive(Debug, Args)]
pub struct InterlaceArgs {
    /// SFunctionSpec to validate.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub spec: Option<String>,
    /// EdreiSpec pair whose ratio q/p is classified.
    #[arg(long, requires = "q")]
    pub p: Option<String>,
    #[arg(long, requires = "p")]
    pub q: Option<String>,
    /// Also sample Im F on the upper half-plane this many times.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PfArgs {
    #[arg(long)]
    pub spec: String,
    /// Print the spec of z/F(z) instead.
    #[arg(long)]
    pub reciprocal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    RemovePoleRight,
    RemovePoleLeft,
    Combine,
    Whitney,
    Reversal,
    Shift,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub op: TransformOp,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// R for remove-pole-right, r for remove-pole-left.
    #[arg(long, value_parser = parse_rational)]
    pub param: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    pub b: Option<Rational>,
    /// Section for whitney.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Exponent range used when a series is given as an EdreiSpec.
    #[arg(long, default_value_t = -8, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Reverse,
    Structural,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,
    /// Structural suite name, or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub section_size: Option<usize>,
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long)]
    pub n_zeros: Option<usize>,
    #[arg(long)]
    pub no_shared_factor: bool,
}

/// Exit code and the JSON document for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, v: impl Serialize) -> Result<Self> {
        let json = serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Outcome { code, json })
    }

    fn ok(v: impl Serialize) -> Result<Self> {
        Self::new(0, v)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::EmptyWindow => "empty_window",
        Error::InvalidSpec(_) => "invalid_spec",
        Error::OutOfWindow { .. } => "out_of_window",
        Error::UntrustedEntry { .. } => "untrusted_entry",
        Error::DegenerateSpec(_) => "degenerate_spec",
        Error::PoleHit(_) => "pole_hit",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::ZeroCoefficient(_) => "zero_coefficient",
        Error::Parse(_) => "parse",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

fn error_outcome(kind: &str, message: String) -> Outcome {
    Outcome {
        code: 2,
        json: json!({ "error": { "kind": kind, "message": message } }),
    }
}

/// Reads a path, or takes the argument itself when it looks like JSON.
fn load_json(input: &str) -> Result<Value> {
    let t = input.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{input}: {e}")))
}

fn load<T: serde::de::DeserializeOwned>(input: &str) -> Result<T> {
    serde_json::from_value(load_json(input)?).map_err(|e| Error::Parse(format!("{input}: {e}")))
}

/// A series given either as explicit coefficients or as an Edrei spec.
enum Series {
    Window(LaurentWindow),
    Spec(EdreiSpec),
}

impl Series {
    fn load(input: &str) -> Result<Self> {
        let v = load_json(input)?;
        let parsed = if v.get("coeffs").is_some() {
            serde_json::from_value(v).map(Series::Window)
        } else {
            serde_json::from_value(v).map(Series::Spec)
        };
        parsed.map_err(|e| Error::Parse(format!("{input}: {e}")))
    }

    fn window(&self, lo: i64, hi: i64, trunc: u32) -> Result<LaurentWindow> {
        match self {
            Series::Window(w) => Ok(w.clone()),
            Series::Spec(s) => edrei_coeffs(s, lo, hi, trunc),
        }
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required here")))
}

fn required_rational(v: &Option<Rational>, flag: &str) -> Result<Rational> {
    v.clone()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required here")))
}

/// Exponent range read by a section, so spec inputs can be expanded just
/// far enough.
fn exponent_range(kind: SectionKind, rows: &[i64], cols: &[i64]) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for &r in rows {
        for &c in cols {
            let e = match kind {
                SectionKind::Hurwitz => hurwitz_source(r, c).1,
                _ => c - r,
            };
            lo = lo.min(e);
            hi = hi.max(e);
        }
    }
    (lo, hi)
}

fn build_section(
    kind: SectionKind,
    p: &Option<String>,
    q: &Option<String>,
    a: &Option<Rational>,
    b: &Option<Rational>,
    at: &Placement,
) -> Result<MatrixSection> {
    if at.size == 0 || at.size > 128 {
        return Err(Error::InvalidArgument("--size must be in 1..=128".into()));
    }
    let (rows, cols) = at.labels();
    let (lo, hi) = exponent_range(kind, &rows, &cols);
    match kind {
        SectionKind::Toeplitz => {
            let f = Series::load(required(p, "p")?)?.window(lo, hi, at.trunc)?;
            toeplitz_section(&f, &rows, &cols)
        }
        SectionKind::Hurwitz => {
            let pw = Series::load(required(p, "p")?)?.window(lo, hi, at.trunc)?;
            let qw = Series::load(required(q, "q")?)?.window(lo, hi, at.trunc)?;
            hurwitz_section(&pw, &qw, &rows, &cols)
        }
        SectionKind::Selector => selector_section(
            &required_rational(a, "a")?,
            &required_rational(b, "b")?,
            at.size,
            2 * at.size,
        ),
    }
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<Outcome> {
    let spec: EdreiSpec = load(&args.spec)?;
    Outcome::ok(edrei_coeffs(&spec, args.lo, args.hi, args.trunc)?)
}

fn cmd_section(args: &SectionArgs) -> Result<Outcome> {
    Outcome::ok(build_section(args.kind, &args.p, &args.q, &args.a, &args.b, &args.at)?)
}

fn cmd_check_tnn(args: &CheckTnnArgs) -> Result<Outcome> {
    if args.max_order == 0 {
        return Err(Error::InvalidArgument("--max-order must be positive".into()));
    }
    if args.search {
        // spec inputs are expanded on [−2·size, 2·size]
        let reach = 2 * args.at.size as i64;
        let pw = Series::load(required(&args.p, "p")?)?.window(-reach, reach, args.at.trunc)?;
        let qw = Series::load(required(&args.q, "q")?)?.window(-reach, reach, args.at.trunc)?;
        let schedule = SectionSchedule::up_to(args.at.size, args.max_order);
        let witness = find_negative_minor(&pw, &qw, &schedule);
        let (code, status) = match witness {
            Some(_) => (1, "negative_found"),
            None => (2, "not_found"),
        };
        return Outcome::new(code, json!({ "status": status, "witness": witness, "max_order": args.max_order }));
    }
    let m = match &args.matrix {
        Some(input) => load::<MatrixSection>(input)?,
        None => build_section(args.kind, &args.p, &args.q, &None, &None, &args.at)?,
    };
    let report = check_tnn(&m, args.max_order);
    let code = match report.status {
        TnnStatus::AllNonnegative => 0,
        TnnStatus::NegativeFound => 1,
        TnnStatus::InconclusiveUntrusted => 2,
    };
    Outcome::new(code, report)
}

fn cmd_check_interlace(args: &InterlaceArgs) -> Result<Outcome> {
    let spec = match (&args.spec, &args.p, &args.q) {
        (Some(s), _, _) => {
            let spec: SFunctionSpec = load(s)?;
            spec.check()?;
            match spec.validate_interlacing() {
                Ok(()) => spec,
                Err(v) => return Outcome::new(1, json!({ "interlaced": false, "violation": v })),
            }
        }
        (None, Some(p), Some(q)) => {
            let p: EdreiSpec = load(p)?;
            let q: EdreiSpec = load(q)?;
            p.validate()?;
            q.validate()?;
            match ratio_classify(&p, &q) {
                Ok(spec) => spec,
                Err(reason) => return Outcome::new(1, json!({ "interlaced": false, "not_s_form": reason })),
            }
        }
        _ => return Err(Error::InvalidArgument("give --spec, or both --p and --q".into())),
    };
    let mut out = json!({ "interlaced": true, "spec": spec });
    if let Some(n) = args.samples {
        let report = check_halfplane_map(&spec, n, args.seed);
        let code = if report.nonnegative { 0 } else { 1 };
        out["halfplane"] = serde_json::to_value(report).map_err(|e| Error::Parse(e.to_string()))?;
        return Outcome::new(code, out);
    }
    Outcome::ok(out)
}

fn cmd_pf(args: &PfArgs) -> Result<Outcome> {
    let spec: SFunctionSpec = load(&args.spec)?;
    spec.check()?;
    if args.reciprocal {
        return Outcome::ok(reciprocal_transform(&spec)?);
    }
    Outcome::ok(partial_fractions(&spec)?)
}

fn cmd_transform(args: &TransformArgs) -> Result<Outcome> {
    if args.op == TransformOp::Whitney {
        let m: MatrixSection = load(required(&args.matrix, "matrix")?)?;
        let j = args
            .j
            .ok_or_else(|| Error::InvalidArgument("--j is required for whitney".into()))?;
        return Outcome::ok(json!({ "name": TransformName::Whitney, "matrix": whitney_reduce(&m, j)? }));
    }
    if args.lo > args.hi {
        return Err(Error::EmptyWindow);
    }
    let p = Series::load(required(&args.p, "p")?)?.window(args.lo, args.hi, DEFAULT_TRUNC)?;
    let q = Series::load(required(&args.q, "q")?)?.window(args.lo, args.hi, DEFAULT_TRUNC)?;
    let check_rows: Vec<i64> = (1..=4).collect();
    let trace = match args.op {
        TransformOp::RemovePoleRight | TransformOp::RemovePoleLeft => {
            let x = required_rational(&args.param, "param")?;
            let (right, left) = if args.op == TransformOp::RemovePoleRight {
                (vec![x], vec![])
            } else {
                (vec![], vec![x])
            };
            let (_, _, mut traces) = strip_common_poles(&p, &q, &right, &left)?;
            traces.pop().expect("one pole was removed")
        }
        TransformOp::Combine => {
            let (a, b) = (required_rational(&args.a, "a")?, required_rational(&args.b, "b")?);
            let (f, g) = combine(&a, &b, &p, &q)?;
            TransformTrace {
                name: TransformName::Combine,
                parameter: None,
                identity_checked: cauchy_binet_check(&a, &b, &p, &q, 4).unwrap_or(false),
                inputs: vec![p, q],
                outputs: vec![f, g],
            }
        }
        TransformOp::Reversal => {
            let (pr, qr) = reversal(&p, &q);
            TransformTrace {
                name: TransformName::Reversal,
                parameter: None,
                identity_checked: reversal_check(&p, &q, &check_rows, &check_rows).unwrap_or(false),
                inputs: vec![p, q],
                outputs: vec![pr, qr],
            }
        }
        TransformOp::Shift => {
            let (ps, qs) = shift(&p, &q);
            TransformTrace {
                name: TransformName::Shift,
                parameter: None,
                identity_checked: shift_check(&p, &q, &check_rows, &check_rows).unwrap_or(false),
                inputs: vec![p, q],
                outputs: vec![ps, qs],
            }
        }
        TransformOp::Whitney => unreachable!("handled above"),
    };
    Outcome::ok(trace)
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let base = match args.direction {
        DirectionArg::Reverse => ScenarioConfig::reverse_default(),
        DirectionArg::Structural => ScenarioConfig {
            trials: 25,
            ..Default::default()
        },
        DirectionArg::Forward => ScenarioConfig::default(),
    };
    let cfg = ScenarioConfig {
        seed: args.seed.unwrap_or(base.seed),
        trials: args.trials.unwrap_or(base.trials),
        section_size: args.section_size.unwrap_or(base.section_size),
        max_minor_order: args.max_order.unwrap_or(base.max_minor_order),
        n_zeros: args.n_zeros.unwrap_or(base.n_zeros),
        shared_factor: !args.no_shared_factor,
        ..base
    };
    cfg.validate()?;
    let code = |r: &[&VerificationReport]| if r.iter().all(|r| r.all_passed()) { 0 } else { 1 };
    match args.direction {
        DirectionArg::Forward => {
            let r = verify_forward(&cfg);
            Outcome::new(code(&[&r]), r)
        }
        DirectionArg::Reverse => {
            let r = verify_reverse(&cfg);
            Outcome::new(code(&[&r]), r)
        }
        DirectionArg::Structural => {
            let suites: Vec<StructuralSuite> = if args.suite == "all" {
                StructuralSuite::ALL.to_vec()
            } else {
                let s = StructuralSuite::ALL
                    .into_iter()
                    .find(|s| s.name() == args.suite)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {:?}", args.suite)))?;
                vec![s]
            };
            let reports: Vec<VerificationReport> = suites.iter().map(|&s| run_structural(s, &cfg)).collect();
            let refs: Vec<&VerificationReport> = reports.iter().collect();
            Outcome::new(code(&refs), json!({ "reports": reports }))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::Section(a) => cmd_section(a),
        Command::CheckTnn(a) => cmd_check_tnn(a),
        Command::CheckInterlace(a) => cmd_check_interlace(a),
        Command::Pf(a) => cmd_pf(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses `argv` (program name first) and runs the command. Help and
/// version requests come back as `Err` text with code 0.
pub fn run<I, T>(argv: I) -> std::result::Result<Outcome, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Err((0, e.to_string()));
            }
            let mut o = error_outcome("usage", e.kind().to_string());
            o.json["error"]["detail"] = Value::String(e.to_string());
            return Ok(o);
        }
    };
    Ok(dispatch(&cli).unwrap_or_else(|e| error_outcome(error_kind(&e), e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut argv = vec!["hurwitz-tnn"];
        argv.extend_from_slice(args);
        run(argv).unwrap()
    }

    #[test]
    fn coeffs_inline() {
        let o = go(&["coeffs", "--spec", r#"{"zeros_pos":["1"]}"#, "--lo", "0", "--hi", "3"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.json["coeffs"], json!(["1", "1", "0", "0"]));
    }

    #[test]
    fn check_tnn_verdicts() {
        let p = r#"{"zeros_pos":["1"]}"#;
        let q = r#"{"zeros_pos":["2"]}"#;
        let o = go(&["check-tnn", "--p", p, "--q", q, "--size", "4", "--max-order", "2"]);
        assert_eq!(o.code, 1);
        assert_eq!(o.json["witness"]["value"], "-1/2");
        assert_eq!(o.json["witness"]["rows"], json!([1, 2]));
        let o = go(&["check-tnn", "--p", q, "--q", p, "--size", "4", "--max-order", "3"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.json["status"], "all_nonnegative");
    }

    #[test]
    fn usage_and_input_errors() {
        let o = go(&["check-tnn", "--bogus"]);
        assert_eq!(o.code, 2);
        assert_eq!(o.json["error"]["kind"], "usage");
        let o = go(&["coeffs", "--spec", "/nonexistent/spec.json", "--lo", "0", "--hi", "1"]);
        assert_eq!(o.code, 2);
        assert_eq!(o.json["error"]["kind"], "parse");
        let o = go(&["coeffs", "--spec", "{}", "--lo", "3", "--hi", "1"]);
        assert_eq!(o.json["error"]["kind"], "empty_window");
        assert!(matches!(run(["hurwitz-tnn", "--help"]), Err((0, _))));
    }

    #[test]
    fn rendered_keys_are_sorted() {
        let o = go(&["coeffs", "--spec", "{}", "--lo", "0", "--hi", "0"]);
        let text = o.render();
        let keys: Vec<usize> = ["\"coeffs\"", "\"exact_left\"", "\"exact_right\"", "\"hi\"", "\"lo\"", "\"trusted\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    }
}
