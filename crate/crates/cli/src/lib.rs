//! Batch front end for `jordan-hall`: an expression language over the derived
//! Hall algebra and symmetric functions, verification sweeps, and exports.

pub mod checks;
pub mod eval;
pub mod render;
pub mod syntax;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use jordan_hall::derived::DerivedBasis;
use jordan_hall::hall::Extension;
use jordan_hall::partition::partitions_of;
use jordan_hall::poly::Poly;
use jordan_hall::symfunc::{self, SymBasis, SymRing};
use num_rational::BigRational;

use crate::checks::{Bounds, CheckError, Suite};
use crate::eval::{Context, EvalError, Specialization};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILED: u8 = 2;
pub const EXIT_CAP: u8 = 3;

pub const EXPORT_HL_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Natural,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymBasisArg {
    M,
    E,
    P,
    #[value(name = "P", alias = "hl")]
    Hl,
}

impl From<SymBasisArg> for SymBasis {
    fn from(b: SymBasisArg) -> Self {
        match b {
            SymBasisArg::M => SymBasis::Monomial,
            SymBasisArg::E => SymBasis::Elementary,
            SymBasisArg::P => SymBasis::Power,
            SymBasisArg::Hl => SymBasis::HallLittlewood,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "jhall",
    version,
    about = "Exact computations in the derived Hall algebra of the Jordan quiver"
)]
pub struct Cli {
    /// Evaluate coefficients at this rational value of q.
    #[arg(long, global = true, value_parser = parse_q)]
    pub q: Option<BigRational>,
    /// Basis for derived products.
    #[arg(long, global = true, value_enum)]
    pub basis: Option<BasisArg>,
    /// Basis for symmetric-function output.
    #[arg(long, global = true, value_enum)]
    pub sym_basis: Option<SymBasisArg>,
    /// Largest symmetric-function degree to compute.
    #[arg(long, global = true, default_value_t = 8)]
    pub degree_bound: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; `table` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval { expr: String },
    /// Run a verification suite.
    Check {
        suite: Suite,
        /// Weight bound for the sweep.
        #[arg(long)]
        weight: Option<usize>,
        /// Restrict oracle suites to p = 2 or p = 3.
        #[arg(long)]
        p: Option<u32>,
        /// Samples per prime for the appendix suite.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Multiplication table of root objects up to a total weight.
    Table { weight: usize },
    /// Hall-Littlewood P functions of one degree in the monomial basis,
    /// with coefficients as polynomials in t.
    ExportHl { degree: usize },
}

fn parse_q(s: &str) -> Result<BigRational, String> {
    eval::parse_rational(s).ok_or_else(|| format!("'{s}' is not a rational number"))
}

fn emit(out: &mut dyn Write, lines: &[String]) {
    for l in lines {
        let _ = writeln!(out, "{l}");
    }
}

fn eval_exit(e: &EvalError) -> u8 {
    match e {
        EvalError::Cap(_) | EvalError::Limit(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

/// Run the command line `args` (program name first), writing to `out` and
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let basis = cli.basis.map(|b| match b {
        BasisArg::Natural => DerivedBasis::Natural,
        BasisArg::Normal => DerivedBasis::Normal,
    });
    let format = cli.format.unwrap_or(match cli.command {
        Command::Table { .. } => Format::Json,
        _ => Format::Text,
    });
    match &cli.command {
        Command::Eval { expr } => {
            let parsed = match syntax::parse(expr) {
                Ok(e) => e,
                Err(e) => {
                    let _ = writeln!(err, "parse error: {e}");
                    return EXIT_USAGE;
                }
            };
            let ctx = Context {
                ring: SymRing::new(cli.degree_bound),
                basis,
                sym_basis: cli.sym_basis.map(Into::into),
            };
            let value = ctx
                .eval(&parsed)
                .and_then(|v| ctx.present(v))
                .and_then(|v| match &cli.q {
                    Some(q) => Specialization::new(q.clone()).value(&v),
                    None => Ok(v),
                });
            match value {
                Ok(v) => {
                    match format {
                        Format::Text => emit(out, &[render::text(&v)]),
                        Format::Json => emit(out, &render::json_lines(&v)),
                    }
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    eval_exit(&e)
                }
            }
        }
        Command::Check {
            suite,
            weight,
            p,
            samples,
        } => {
            let bounds = Bounds {
                weight: *weight,
                prime: *p,
                samples: *samples,
                seed: cli.seed,
            };
            match checks::run(*suite, &bounds) {
                Ok(r) => {
                    match format {
                        Format::Text => emit(out, &[r.text()]),
                        Format::Json => emit(out, &r.json_lines()),
                    }
                    if r.passed() {
                        EXIT_OK
                    } else {
                        EXIT_FAILED
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    match e {
                        CheckError::Prime(_) => EXIT_USAGE,
                        CheckError::Core(jordan_hall::Error::InvalidArgument(_)) => EXIT_USAGE,
                        _ => EXIT_CAP,
                    }
                }
            }
        }
        Command::Table { weight } => {
            if *weight > checks::TABLE_CAP {
                let _ = writeln!(
                    err,
                    "error: table is capped at weight {}, got {weight}",
                    checks::TABLE_CAP
                );
                return EXIT_CAP;
            }
            let b = basis.unwrap_or_default();
            match format {
                Format::Json => emit(out, &checks::table(*weight, b)),
                Format::Text => emit(out, &checks::table_text(*weight, b)),
            }
            EXIT_OK
        }
        Command::ExportHl { degree } => {
            let cap = EXPORT_HL_CAP.min(cli.degree_bound);
            if *degree > cap {
                let _ = writeln!(err, "error: export-hl is capped at degree {cap}, got {degree}");
                return EXIT_CAP;
            }
            emit(out, &export_hl(*degree, format));
            EXIT_OK
        }
    }
}

fn t_poly(p: &Poly) -> String {
    p.render("t", 1)
}

/// Rows of `P_λ(x; t) = Σ_μ c_{λμ}(t) m_μ`, λ in decreasing lex order.
pub fn export_hl(degree: usize, format: Format) -> Vec<String> {
    let ps = partitions_of(degree);
    let mut out = Vec::new();
    for lambda in ps {
        let mut row = symfunc::hl_coefficients_t(&lambda, Extension::default());
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by(|a, b| b.0.cmp(&a.0));
        match format {
            Format::Json => {
                for (mu, c) in &row {
                    let rec = serde_json::json!({
                        "lambda": render::parts_json(&lambda),
                        "mu": render::parts_json(mu),
                        "t": render::poly_json(c),
                    });
                    out.push(rec.to_string());
                }
            }
            Format::Text => {
                let terms: Vec<String> = row
                    .iter()
                    .map(|(mu, c)| {
                        let m = format!("m[{}]", mu.render_parts());
                        if c.is_one() {
                            m
                        } else if c.term_count() == 1 {
                            format!("{}·{m}", t_poly(c))
                        } else {
                            format!("({})·{m}", t_poly(c))
                        }
                    })
                    .collect();
                out.push(format!("P[{}] = {}", lambda.render_parts(), terms.join(" + ")));
            }
        }
    }
    out
}
