//! Command-line front end. Every subcommand builds a [`Report`] that is
//! rendered as JSON, CSV or aligned text.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
//! configuration error, 3 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeffring::{GammaPoly, QuadExtSqrt5, Ring};
use crate::genfun::{AnyBundle, GammaMode, GenFunBundle, GenFunError};
use crate::maps::{count_eo_gamma, gen_quartic_maps, EnumLimits, MapError};
use crate::modular::{self, IdentityCheck, ModularError};
use crate::powerseries::TruncSeries;
use crate::tutte::{self, TutteError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable capping every order and vertex count argument.
pub const MAX_ORDER_VAR: &str = "EO_THETA_MAX_ORDER";
const DEFAULT_MAX_ORDER: i64 = 400;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Internal(String),
    /// The run completed but something failed to verify; the report is
    /// still printed.
    #[error("verification failed")]
    Failed(Box<Report>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }
}

impl From<GenFunError> for CliError {
    fn from(e: GenFunError) -> Self {
        match e {
            GenFunError::OrderTooSmall(_) | GenFunError::DegenerateGamma => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ModularError> for CliError {
    fn from(e: ModularError) -> Self {
        match e {
            ModularError::UnsupportedLevel(_) | ModularError::BadParameter(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<TutteError> for CliError {
    fn from(e: TutteError) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "eo-theta",
    version,
    about = "Exact series for weighted quartic Eulerian orientations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Shorthand for --output json.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of one series.
    Coeffs {
        /// t(q), R(q), q(t), R(t), q(R), t(R), Q(t) (or Q), Ahat(q), S(q).
        #[arg(long, default_value = "Q(t)")]
        series: String,
        /// symbolic, a rational such as 2/5, or golden-ratio.
        #[arg(long, default_value = "symbolic")]
        gamma: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Check the differential equations and/or a special-weight suite.
    Verify {
        /// Level N in {3, 4, 5, 6}.
        #[arg(long)]
        case: Option<u32>,
        /// Check the differential equations in R at --gamma.
        #[arg(long)]
        ode: bool,
        #[arg(long, default_value = "symbolic")]
        gamma: String,
        #[arg(long, default_value_t = 30)]
        order: i64,
    },
    /// Count rooted 4-valent maps and their Eulerian orientations.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long, default_value = "symbolic")]
        gamma: String,
        /// Raise the vertex cap.
        #[arg(long)]
        allow_slow: bool,
    },
    /// Search for a polynomial relation between R and S at a special weight.
    Relation {
        #[arg(long)]
        case: u32,
        #[arg(long)]
        order: Option<i64>,
        /// Maximum degree in R (default depends on the case).
        #[arg(long)]
        max_r: Option<u32>,
        /// Maximum degree in S (default depends on the case).
        #[arg(long)]
        max_s: Option<u32>,
    },
    /// Compare the generating function with the Tutte recursion and/or
    /// with brute-force enumeration.
    Oracle {
        #[arg(long)]
        tutte_order: Option<usize>,
        #[arg(long)]
        enum_vertices: Option<usize>,
        #[arg(long)]
        allow_slow: bool,
        /// Include every W and H slice in the output.
        #[arg(long)]
        dump_slices: bool,
    },
}

/// Output of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

impl Report {
    fn new(mut json: Value, header: &[&str], rows: Vec<Vec<String>>, pass: bool) -> Self {
        if let Value::Object(m) = &mut json {
            m.insert("schema".into(), json!(1));
            m.insert("pass".into(), json!(pass));
        }
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            pass,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
            }
            OutputFormat::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let mut out = String::new();
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    let _ = writeln!(out, "{}", cells.join("  ").trim_end());
                }
                let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
                out
            }
        }
    }
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn max_order() -> Result<i64, CliError> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{MAX_ORDER_VAR}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_order(name: &str, order: i64, min: i64) -> Result<(), CliError> {
    if order < min {
        return Err(CliError::Config(format!(
            "--{name} must be at least {min}, got {order}"
        )));
    }
    let cap = max_order()?;
    if order > cap {
        return Err(CliError::Config(format!(
            "--{name} {order} exceeds {MAX_ORDER_VAR}={cap}"
        )));
    }
    Ok(())
}

fn parse_gamma(s: &str) -> Result<GammaMode, CliError> {
    s.parse().map_err(CliError::Config)
}

/// First exponent printed: q⁰, or the leading term if it is negative.
fn first_exponent<C: Ring>(s: &TruncSeries<C>) -> i64 {
    s.true_valuation().map_or(0, |v| v.min(0))
}

fn series_rows<C: Ring>(s: &TruncSeries<C>) -> Vec<Vec<String>> {
    (first_exponent(s)..s.order())
        .map(|e| vec![e.to_string(), s.coeff(e).expect("below order").to_string()])
        .collect()
}

fn series_json<C: Ring>(s: &TruncSeries<C>) -> Value {
    json!({
        "var": s.var(),
        "valuation": first_exponent(s),
        "order": s.order(),
        "coefficients": (first_exponent(s)..s.order())
            .map(|e| s.coeff(e).expect("below order").to_json())
            .collect::<Vec<_>>(),
    })
}

fn canonical_selector(name: &str) -> &str {
    match name {
        "Q" => "Q(t)",
        "t" => "t(q)",
        "R" => "R(q)",
        "S" => "S(q)",
        "Ahat" | "A" => "Ahat(q)",
        other => other,
    }
}

fn select<C: Ring>(b: &GenFunBundle<C>, name: &str) -> Result<(Value, Vec<Vec<String>>), CliError> {
    let s = b
        .select(name)
        .ok_or_else(|| CliError::Config(format!("unknown series {name:?}")))?;
    Ok((series_json(s), series_rows(s)))
}

fn cmd_coeffs(series: &str, gamma: &str, order: i64) -> Result<Report, CliError> {
    check_order("order", order, 2)?;
    let mode = parse_gamma(gamma)?;
    let name = canonical_selector(series);
    let bundle = AnyBundle::new(&mode, order)?;
    let (body, rows) = match &bundle {
        AnyBundle::Symbolic(b) => select(b, name)?,
        AnyBundle::Rational(b) => select(b, name)?,
        AnyBundle::Golden(b) => select(b, name)?,
    };
    let mut json = json!({"series": name, "gamma": mode.to_string()});
    json.as_object_mut()
        .expect("object")
        .extend(body.as_object().expect("object").clone());
    Ok(Report::new(json, &["exponent", "coefficient"], rows, true))
}

fn identity_rows(prefix: &str, ids: &[IdentityCheck]) -> Vec<Vec<String>> {
    ids.iter()
        .map(|i| {
            vec![
                prefix.to_string(),
                i.identity_name.clone(),
                i.residual_valuation.to_string(),
                i.required_order.to_string(),
                if i.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect()
}

fn ode_checks<C: Ring>(b: &GenFunBundle<C>, order: i64) -> Result<Vec<IdentityCheck>, CliError> {
    Ok(vec![
        IdentityCheck::from_residual("d2t/dR2 - S t = 0", &b.check_ode_t()?, order),
        IdentityCheck::from_residual(
            "d2A/dR2 - (dS/dR)/S dA/dR - S A = 0",
            &b.check_ode_a()?,
            order,
        ),
        IdentityCheck::from_residual("dt/dR = Ahat", &b.check_dt_dr()?, order),
    ])
}

/// Extra q-orders computed so that the residuals after two derivatives are
/// still known through the requested order.
const ODE_MARGIN: i64 = 4;

fn cmd_verify(case: Option<u32>, ode: bool, gamma: &str, order: i64) -> Result<Report, CliError> {
    if case.is_none() && !ode {
        return Err(CliError::Config("give --case N and/or --ode".into()));
    }
    check_order("order", order, 2)?;
    let mut json = json!({"order": order});
    let mut rows = Vec::new();
    let mut pass = true;
    if ode {
        let mode = parse_gamma(gamma)?;
        let inner = order + ODE_MARGIN;
        let ids = match AnyBundle::new(&mode, inner)? {
            AnyBundle::Symbolic(b) => ode_checks(&b, order)?,
            AnyBundle::Rational(b) => ode_checks(&b, order)?,
            AnyBundle::Golden(b) => ode_checks(&b, order)?,
        };
        pass &= ids.iter().all(|i| i.pass);
        rows.extend(identity_rows(&format!("ode gamma={mode}"), &ids));
        json["ode"] = json!({"gamma": mode.to_string(), "identities": ids});
    }
    if let Some(n) = case {
        let rep = modular::verify_case(n, order)?;
        pass &= rep.pass();
        rows.extend(identity_rows(&format!("case {n}"), &rep.identities));
        json["case"] = serde_json::to_value(&rep).expect("serializable");
    }
    Ok(Report::new(
        json,
        &[
            "suite",
            "identity",
            "residual_valuation",
            "required",
            "result",
        ],
        rows,
        pass,
    ))
}

fn cmd_enumerate(
    vertices: usize,
    genus: usize,
    gamma: &str,
    allow_slow: bool,
) -> Result<Report, CliError> {
    let limits = if allow_slow {
        EnumLimits::allow_slow()
    } else {
        EnumLimits::default()
    };
    let mode = parse_gamma(gamma)?;
    let maps = gen_quartic_maps(vertices, genus, limits)?;
    let poly = count_eo_gamma(vertices, genus, limits)?;
    let (value, shown) = match &mode {
        GammaMode::Symbolic => (
            serde_json::to_value(&poly).expect("serializable"),
            poly.to_string(),
        ),
        GammaMode::Value(g) => {
            let v = poly.eval(g);
            (v.to_json(), v.to_string())
        }
        GammaMode::GoldenRatio => {
            let v = poly.eval_in(&QuadExtSqrt5::golden_ratio());
            (v.to_json(), v.to_string())
        }
    };
    let json = json!({
        "n": vertices,
        "genus": genus,
        "gamma": mode.to_string(),
        "map_count": maps.len(),
        "polynomial": value,
    });
    let rows = vec![vec![
        vertices.to_string(),
        genus.to_string(),
        maps.len().to_string(),
        shown,
    ]];
    Ok(Report::new(
        json,
        &["n", "genus", "map_count", "polynomial"],
        rows,
        true,
    ))
}

fn cmd_relation(
    case: u32,
    order: Option<i64>,
    max_r: Option<u32>,
    max_s: Option<u32>,
) -> Result<Report, CliError> {
    let (dr, ds) = modular::default_relation_box(case)?;
    if let Some(k) = order {
        check_order("order", k, 2)?;
    }
    let rep = modular::case_relation(case, order, max_r.unwrap_or(dr), max_s.unwrap_or(ds))?;
    let rows = vec![vec![
        case.to_string(),
        rep.gamma.clone(),
        rep.display.clone(),
        rep.certified_order.to_string(),
        rep.recheck.residual_valuation.to_string(),
    ]];
    let pass = rep.recheck.pass;
    Ok(Report::new(
        serde_json::to_value(&rep).expect("serializable"),
        &[
            "case",
            "gamma",
            "relation",
            "certified_order",
            "recheck_valuation",
        ],
        rows,
        pass,
    ))
}

fn cmd_oracle(
    tutte_order: Option<usize>,
    enum_vertices: Option<usize>,
    allow_slow: bool,
    dump_slices: bool,
) -> Result<Report, CliError> {
    if tutte_order.is_none() && enum_vertices.is_none() {
        return Err(CliError::Config(
            "give --tutte-order K and/or --enum-vertices n".into(),
        ));
    }
    let mut json = json!({});
    let mut rows = Vec::new();
    let mut pass = true;
    if let Some(k) = tutte_order {
        check_order("tutte-order", k as i64, 1)?;
        let slices = tutte::iterate_wh(k)?;
        let c = tutte::c_of_t(&slices)?;
        let bundle = GenFunBundle::new(&GammaPoly::gamma(), k as i64 + 1)?;
        let rep = tutte::compare_with(&c, &bundle)?;
        pass &= rep.pass();
        rows.push(vec![
            "tutte".into(),
            k.to_string(),
            rep.first_mismatch.map_or("-".into(), |m| m.to_string()),
            if rep.pass() { "PASS" } else { "FAIL" }.into(),
        ]);
        json["tutte"] = json!({
            "order": rep.order,
            "first_mismatch": rep.first_mismatch,
            "pass": rep.pass(),
        });
        if dump_slices {
            json["tutte"]["slices"] = slices.to_json();
        }
    }
    if let Some(n) = enum_vertices {
        let limits = if allow_slow {
            EnumLimits::allow_slow()
        } else {
            EnumLimits::default()
        };
        if n > limits.max_vertices {
            return Err(MapError::CapExceeded {
                n,
                cap: limits.max_vertices,
            }
            .into());
        }
        let bundle = GenFunBundle::new(&GammaPoly::gamma(), n as i64 + 1)?;
        let mut per_n = Vec::new();
        let mut first_mismatch = None;
        for m in 1..=n {
            let counted = count_eo_gamma(m, 0, limits)?;
            let expected = bundle.gf_t.coeff(m as i64).expect("below order");
            let ok = counted == expected;
            if !ok && first_mismatch.is_none() {
                first_mismatch = Some(m);
            }
            rows.push(vec![
                "enumeration".into(),
                m.to_string(),
                counted.to_string(),
                if ok { "PASS" } else { "FAIL" }.into(),
            ]);
            per_n.push(json!({
                "n": m,
                "counted": counted,
                "expected": expected,
                "pass": ok,
            }));
        }
        pass &= first_mismatch.is_none();
        json["enumeration"] = json!({
            "max_vertices": n,
            "first_mismatch": first_mismatch,
            "pass": first_mismatch.is_none(),
            "terms": per_n,
        });
    }
    Ok(Report::new(
        json,
        &["oracle", "order", "detail", "result"],
        rows,
        pass,
    ))
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    let report = match command {
        Command::Coeffs {
            series,
            gamma,
            order,
        } => cmd_coeffs(series, gamma, *order)?,
        Command::Verify {
            case,
            ode,
            gamma,
            order,
        } => cmd_verify(*case, *ode, gamma, *order)?,
        Command::Enumerate {
            vertices,
            genus,
            gamma,
            allow_slow,
        } => cmd_enumerate(*vertices, *genus, gamma, *allow_slow)?,
        Command::Relation {
            case,
            order,
            max_r,
            max_s,
        } => cmd_relation(*case, *order, *max_r, *max_s)?,
        Command::Oracle {
            tutte_order,
            enum_vertices,
            allow_slow,
            dump_slices,
        } => cmd_oracle(*tutte_order, *enum_vertices, *allow_slow, *dump_slices)?,
    };
    if report.pass {
        Ok(report)
    } else {
        Err(CliError::Failed(Box::new(report)))
    }
}

/// Parses `args` (including the program name), runs the command and renders
/// its output without touching the process streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let format = if cli.json {
        OutputFormat::Json
    } else {
        cli.output
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: EXIT_PASS,
            stdout: report.render(format),
            stderr: String::new(),
        },
        Err(CliError::Failed(report)) => Outcome {
            code: EXIT_FAIL,
            stdout: report.render(format),
            stderr: "verification failed\n".into(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("eo-theta").chain(args.iter().copied()))
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn coeffs_symbolic_t() {
        let o = run_args(&[
            "coeffs", "--series", "t(q)", "--gamma", "symbolic", "--order", "3",
        ]);
        assert_eq!(o.code, EXIT_PASS);
        let v = json_of(&o);
        assert_eq!(v["schema"], json!(1));
        assert_eq!(v["coefficients"], json!([["0"], ["1"], ["-6", "-6"]]));
    }

    #[test]
    fn coeffs_q_at_one() {
        let o = run_args(&["coeffs", "--series", "Q", "--gamma", "1", "--order", "3"]);
        assert_eq!(o.code, EXIT_PASS);
        let v = json_of(&o);
        assert_eq!(v["coefficients"][0], json!("0"));
        assert_eq!(v["coefficients"][1], json!("4"));
    }

    #[test]
    fn order_one_is_a_config_error() {
        assert_eq!(run_args(&["coeffs", "--order", "1"]).code, EXIT_USAGE);
    }

    #[test]
    fn unsupported_case_is_a_config_error() {
        assert_eq!(run_args(&["verify", "--case", "7"]).code, EXIT_USAGE);
    }

    #[test]
    fn unknown_flag_and_series() {
        assert_eq!(run_args(&["coeffs", "--bogus"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["coeffs", "--series", "X(q)"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["coeffs", "--gamma", "1/0"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["coeffs", "--gamma", "-2"]).code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let o = run_args(&["--help"]);
        assert_eq!(o.code, EXIT_PASS);
        assert!(o.stdout.contains("coeffs"));
    }

    #[test]
    fn enum_cap() {
        let o = run_args(&["oracle", "--enum-vertices", "9"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("cap"));
    }

    #[test]
    fn enumerate_one_vertex() {
        let v = json_of(&run_args(&["enumerate", "--vertices", "1"]));
        assert_eq!(v["map_count"], json!(2));
        assert_eq!(v["polynomial"], json!(["2", "2"]));
        let v = json_of(&run_args(&["enumerate", "--vertices", "1", "--gamma", "1"]));
        assert_eq!(v["polynomial"], json!("4"));
    }

    #[test]
    fn formats_are_deterministic() {
        for fmt in ["json", "csv", "text"] {
            let a = run_args(&["coeffs", "--gamma", "2/5", "--order", "4", "--output", fmt]);
            let b = run_args(&["coeffs", "--gamma", "2/5", "--order", "4", "--output", fmt]);
            assert_eq!(a, b);
            assert_eq!(a.code, EXIT_PASS);
        }
        let csv = run_args(&["coeffs", "--gamma", "1", "--order", "3", "--output", "csv"]).stdout;
        assert_eq!(csv, "exponent,coefficient\n0,0\n1,4\n2,35\n");
    }
}
