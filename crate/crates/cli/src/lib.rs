//! Command line front end: expression parsing, subcommand dispatch and report rendering.
//!
//! [`run`] is the whole program minus process I/O, so tests drive it in-process.

pub mod expr;
pub mod gw_syntax;
pub mod report;

use std::fmt;
use std::str::FromStr;

use a1h::bilinear::gw_equal;
use a1h::degrees::{bezoutian, global_degree, local_degree};
use a1h::field::{make_field, FieldDescriptor, FieldSpec};
use a1h::hurwitz::{df_expression, real_critical_report, rh_verify};
use a1h::poly::{with_factor_seed, Poly, RationalFunc, DEFAULT_FACTOR_SEED};
use clap::{Parser, Subcommand};

use expr::{parse_with_var, ParseError};
use gw_syntax::parse_gw_class;
use report::{ClassJson, RhJson};

pub const SEED_ENV: &str = "A1H_SEED";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Compute(a1h::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Parse(e) => e.code(),
            CliError::Compute(e) => e.code(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<a1h::Error> for CliError {
    fn from(e: a1h::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "a1h", version, about = "Quadratically enriched degrees and Riemann-Hurwitz checks for maps of P^1")]
pub struct Cli {
    /// Base field: Q, Fp:<p> or Fpt:<p>
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Emit JSON on stdout
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized polynomial factoring (overrides A1H_SEED)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Global degree of a rational map, from its Bezoutian
    Degree {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Local degree of a map at a cluster polynomial
    LocalDegree {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        pi: String,
        /// Order of the cluster in the numerator (default: computed)
        #[arg(long)]
        multiplicity: Option<usize>,
    },
    /// Bezoutian Gram matrix of a pair of polynomials
    Bezout {
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Check the Riemann-Hurwitz identity in GW(k) for a self-map of P^1
    Rh {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Decide equality of two Grothendieck-Witt classes
    GwEqual { left: String, right: String },
    /// Real signature check for a monic polynomial over Q
    RealCheck {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    verdict: bool,
    text: String,
    json: String,
    notes: Vec<String>,
}

fn field_of(cli: &Cli) -> Result<FieldDescriptor, CliError> {
    let implied_q = matches!(cli.command, Command::RealCheck { .. });
    match (&cli.field, implied_q) {
        (None, true) => Ok(FieldDescriptor::Rationals),
        (None, false) => Err(CliError::Usage("--field is required for this subcommand".into())),
        (Some(s), _) => {
            let k = make_field(&FieldSpec::from_str(s)?)?;
            if implied_q && k != FieldDescriptor::Rationals {
                return Err(CliError::Usage("real-check works over Q only".into()));
            }
            Ok(k)
        }
    }
}

fn seed_of(cli: &Cli, env_seed: Option<&str>) -> Result<u64, CliError> {
    if let Some(s) = cli.seed {
        return Ok(s);
    }
    match env_seed {
        None => Ok(DEFAULT_FACTOR_SEED),
        Some(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
    }
}

fn parse_map(text: &str, k: &FieldDescriptor) -> Result<RationalFunc, CliError> {
    Ok(parse_with_var(text, k)?.0)
}

/// A polynomial in `var`, or in whichever variable it uses when `var` is `None`.
fn parse_polynomial(text: &str, k: &FieldDescriptor, var: Option<char>) -> Result<Poly, CliError> {
    let (f, v) = parse_with_var(text, k)?;
    if !f.den().is_one() {
        return Err(CliError::Usage(format!("`{text}` is not a polynomial")));
    }
    match var {
        Some(var) if !f.num().is_constant() && v != var => {
            Err(CliError::Usage(format!("`{text}` uses variable {v}, expected {var}")))
        }
        Some(var) => Ok(f.num().clone().with_var(var)),
        None => Ok(f.num().clone()),
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn class_output(verdict: bool, text: String, json: serde_json::Value) -> Output {
    Output { verdict, text, json: pretty(&json), notes: Vec::new() }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let k = field_of(cli)?;
    match &cli.command {
        Command::Degree { map } => {
            let f = parse_map(map, &k)?;
            let c = global_degree(&f)?;
            let json = serde_json::json!({
                "field": k.to_string(),
                "map": f.to_string(),
                "rank": c.rank(),
                "class": ClassJson::from(&c),
            });
            Ok(class_output(true, format!("{c}\n"), json))
        }
        Command::LocalDegree { map, pi, multiplicity } => {
            let f = parse_map(map, &k)?;
            let pi = parse_polynomial(pi, &k, Some(f.var()))?;
            if pi.is_constant() {
                return Err(CliError::Usage("cluster polynomial must be nonconstant".into()));
            }
            let pi = pi.monic();
            let m = multiplicity.unwrap_or_else(|| f.num().multiplicity_of(&pi));
            let c = local_degree(&f, &pi, m)?;
            let json = serde_json::json!({
                "field": k.to_string(),
                "map": f.to_string(),
                "pi": pi.to_string(),
                "multiplicity": m,
                "class": ClassJson::from(&c),
            });
            Ok(class_output(true, format!("{c}\n"), json))
        }
        Command::Bezout { f1, f2 } => {
            let a = parse_polynomial(f1, &k, None)?;
            let b = parse_polynomial(f2, &k, Some(a.var()))?;
            let g = bezoutian(&a, &b)?;
            let c = g.class()?;
            let rows: Vec<Vec<String>> =
                g.entries().iter().map(|r| r.iter().map(|x| k.render(x)).collect()).collect();
            let mut text = String::new();
            for r in &rows {
                text.push_str(&format!("[{}]\n", r.join(", ")));
            }
            text.push_str(&format!("class: {c}\n"));
            let json = serde_json::json!({
                "field": k.to_string(),
                "f1": a.to_string(),
                "f2": b.to_string(),
                "matrix": rows,
                "class": ClassJson::from(&c),
            });
            Ok(class_output(true, text, json))
        }
        Command::Rh { map } => {
            let f = parse_map(map, &k)?;
            let r = rh_verify(&f)?;
            let mut text = format!("field: {}\nmap: {}\ndegree: {}\n", r.field, r.map, r.degree);
            for c in &r.clusters {
                let at = match &c.locus {
                    a1h::hurwitz::Locus::Finite(p) => p.to_string(),
                    a1h::hurwitz::Locus::AtInfinity => "infinity".into(),
                };
                let expr = df_expression(&f, c.chart)?;
                text.push_str(&format!(
                    "cluster {} at {at}: multiplicity {}, residue degree {}, df = {expr}, index {}\n",
                    c.chart,
                    c.multiplicity,
                    c.residue_degree,
                    c.local_index.as_ref().expect("filled by rh_verify"),
                ));
            }
            text.push_str(&format!("total: {}\nexpected: {}\n", r.total, r.expected));
            text.push_str(&format!("rank: {} (want {})\n", r.rank_check.got, r.rank_check.want));
            if let Some(s) = &r.signature_check {
                text.push_str(&format!("signature: {} (want {})\n", s.got, s.want));
            }
            text.push_str(&format!("verdict: {}\n", r.verdict));
            Ok(Output { verdict: r.verdict, text, json: pretty(&RhJson::from(&r)), notes: r.notes.clone() })
        }
        Command::GwEqual { left, right } => {
            let a = parse_gw_class(left, &k)?;
            let b = parse_gw_class(right, &k)?;
            let eq = gw_equal(&a, &b)?;
            let json = serde_json::json!({
                "field": k.to_string(),
                "left": ClassJson::from(&a),
                "right": ClassJson::from(&b),
                "equal": eq,
            });
            let text = format!("{}\n", if eq { "equal" } else { "not equal" });
            Ok(class_output(eq, text, json))
        }
        Command::RealCheck { poly } => {
            let p = parse_polynomial(poly, &k, None)?;
            let r = real_critical_report(&p)?;
            let json = serde_json::json!({
                "field": k.to_string(),
                "map": p.to_string(),
                "signature_finite": r.signature_finite,
                "parity_expected": r.parity_expected,
                "pass": r.pass,
            });
            let text = format!(
                "signature of affine critical points: {}\nexpected: {}\npass: {}\n",
                r.signature_finite, r.parity_expected, r.pass
            );
            Ok(class_output(r.pass, text, json))
        }
    }
}

fn render_error(e: &CliError, json: bool) -> String {
    if json {
        pretty(&serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } }))
    } else {
        format!("error[{}]: {e}\n", e.code())
    }
}

/// Runs one invocation. `args` includes the program name; `env_seed` is the
/// value of `A1H_SEED`, if set.
///
/// Exit codes: 0 success, 1 negative verdict, 2 usage, parse or domain error.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let seed = match seed_of(&cli, env_seed) {
        Ok(s) => s,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: render_error(&e, cli.json) },
    };
    match with_factor_seed(seed, || execute(&cli)) {
        Ok(out) => {
            let mut stderr = String::new();
            let mut stdout = if cli.json { out.json } else { out.text };
            for n in &out.notes {
                let line = format!("note: {n}\n");
                if cli.json {
                    stderr.push_str(&line);
                } else {
                    stdout.push_str(&line);
                }
            }
            Outcome { code: if out.verdict { 0 } else { 1 }, stdout, stderr }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: render_error(&e, cli.json) },
    }
}
