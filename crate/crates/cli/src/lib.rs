//! Command-line front end for `slicereg`.
//!
//! Each subcommand reads polynomials as expressions (see [`expr`]) or as
//! JSON documents (see [`json`]), runs one library operation and prints a
//! JSON object `{"result": ...}` on stdout.

pub mod expr;
pub mod json;

use std::fmt;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use slicereg::laws::{
    conjugate_by, product_preserved_slice, solve_conjugation_f, solve_conjugation_h,
    sum_preserved_slice, twisted_pair_structure, Branch, TwistCase,
};
use slicereg::starpower::{power_slice_preserving, qd, sigma, star_power, PowerVerdict};
use slicereg::zeros::{factor_sphere, polynomial_weierstrass, symmetrized_root, zero_structure};
use slicereg::{tol, Error, ImaginaryUnit, Quaternion, SlicePoly, Tolerances};

pub use expr::{eval, parse, Expr, SyntaxError};

#[derive(Debug)]
pub enum CliError {
    Syntax(SyntaxError),
    Schema(String),
    /// Malformed flag values.
    Usage(String),
    Domain(Error),
}

impl CliError {
    /// 1 for failures of the mathematics, 2 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let body = match self {
            CliError::Syntax(e) => json!({
                "kind": "syntax",
                "offset": e.offset,
                "expected": e.expected,
                "found": e.found,
                "message": e.to_string(),
            }),
            CliError::Schema(m) => json!({ "kind": "schema", "message": m }),
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Domain(e) => json!({
                "kind": "domain",
                "error": error_name(e),
                "message": e.to_string(),
            }),
        };
        json!({ "error": body })
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::DegenerateFrame => "DegenerateFrame",
        Error::InvalidUnit(_) => "InvalidUnit",
        Error::RootFindingFailed(_) => "RootFindingFailed",
        Error::ZeroFunction => "ZeroFunction",
        Error::InvalidSphere(_) => "InvalidSphere",
        Error::InconsistentSphere { .. } => "InconsistentSphere",
        Error::HasIsolatedNonRealZeros => "HasIsolatedNonRealZeros",
        Error::NotRepresentable(_) => "NotRepresentable",
        Error::FormulaMismatch(_) => "FormulaMismatch",
        Error::PreconditionViolated(_) => "PreconditionViolated",
        Error::StructureNotFound(_) => "StructureNotFound",
        Error::InvalidDegree(_) => "InvalidDegree",
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax(e) => write!(f, "syntax error {e}"),
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Syntax(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "slicereg", version, about = "Slice regular quaternionic polynomials")]
pub struct Cli {
    /// Equality tolerance; every other threshold is scaled by the same factor.
    #[arg(long, global = true, env = "SLICEREG_TOL")]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of an expression, or its value at a point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Point `w,x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Which slices the polynomial preserves.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The regular conjugate `f^c`.
    Conj {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The symmetrized function `f^s = f * f^c`.
    Normal {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Real zeros, zero spheres and isolated zeros with multiplicities.
    Zeros {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Peel the zeros on the sphere `alpha + S beta`.
    Factor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// `alpha,beta`.
        #[arg(long, allow_hyphen_values = true)]
        sphere: String,
    },
    /// `f = r s^m h` for a polynomial without isolated non-real zeros.
    Weierstrass {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Some `h` in the slice of `--axis` with `h^s = mu`.
    Symroot {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        axis: String,
    },
    /// The slice preserved by `f + h`, if any.
    SumSlice {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// The slice preserved by `f * h`, if any.
    ProdSlice {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// `h * f * h^c` and its classification.
    ConjBy {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Some `h` in the slice of `--m0` with `h * f * h^c = g`.
    SolveH {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        m0: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Some `f` in the slice of `--i0` with `h * f * h^c = g`.
    SolveF {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        i0: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Structure of factors whose products in both orders preserve a slice.
    Twist {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// The `*`-power `f^(*d)`.
    Power {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        d: u32,
        /// Also decide whether the power preserves every slice.
        #[arg(long)]
        check_slice: bool,
    },
    /// Nonzero real roots of `Q_d(x, 1)`.
    Sigma { d: u32 },
    /// The binary form `Q_d`.
    Qd { d: u32 },
}

/// An expression, or a JSON document when the text starts with `{`.
pub fn read_poly(text: &str) -> Result<SlicePoly, CliError> {
    if text.trim_start().starts_with('{') {
        json::deserialize(text)
    } else {
        Ok(eval(&parse(text)?))
    }
}

fn reals<const N: usize>(text: &str, flag: &str) -> Result<[f64; N], CliError> {
    let bad = || CliError::Usage(format!("--{flag} takes {N} comma-separated reals, got {text:?}"));
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    v.try_into().map_err(|_| bad())
}

fn read_axis(text: &str, flag: &str) -> Result<ImaginaryUnit, CliError> {
    let [x, y, z] = reals::<3>(text, flag)?;
    Ok(ImaginaryUnit::from_direction(x, y, z)?)
}

/// Scales every default threshold by `eps / 1e-9`.
pub fn apply_tol(eps: f64) -> Result<(), CliError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {eps}")));
    }
    let d = Tolerances::DEFAULT;
    let s = eps / d.abs;
    tol::set(Tolerances {
        abs: d.abs * s,
        rel: d.rel * s,
        div: d.div * s,
        rank: d.rank * s,
        root: d.root * s,
    });
    Ok(())
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::PlusOne => "plus_one",
        Branch::MinusOne => "minus_one",
    }
}

fn opt_poly(f: Option<SlicePoly>) -> Value {
    f.as_ref().map_or(Value::Null, json::poly)
}

/// Runs one command and returns its `{"result": ...}` document.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    if let Some(eps) = cli.tol {
        apply_tol(eps)?;
    }
    let result = match &cli.command {
        Command::Eval { expr, at } => {
            let f = read_poly(expr)?;
            match at {
                None => json::poly(&f),
                Some(p) => {
                    let p = Quaternion::from_array(reals::<4>(p, "at")?);
                    json::quaternion(f.evaluate(p))
                }
            }
        }
        Command::Classify { expr } => json::class(read_poly(expr)?.classify()?),
        Command::Conj { expr } => json::poly(&read_poly(expr)?.star_conj()),
        Command::Normal { expr } => json::poly(&SlicePoly::real(read_poly(expr)?.symmetrized())),
        Command::Zeros { expr } => json::zero_structure(&zero_structure(&read_poly(expr)?)?),
        Command::Factor { expr, sphere } => {
            let [alpha, beta] = reals::<2>(sphere, "sphere")?;
            json::sphere_factorization(&factor_sphere(&read_poly(expr)?, alpha, beta)?)
        }
        Command::Weierstrass { expr } => json::weierstrass(&polynomial_weierstrass(&read_poly(expr)?)?),
        Command::Symroot { mu, axis } => {
            let mu = read_poly(mu)?;
            if !mu.is_real() {
                return Err(Error::PreconditionViolated("mu must have real coefficients".into()).into());
            }
            json::poly(&symmetrized_root(&mu.real_part(), read_axis(axis, "axis")?)?)
        }
        Command::SumSlice { f, h } => {
            let k0 = sum_preserved_slice(&read_poly(f)?, &read_poly(h)?)?;
            k0.map_or(Value::Null, json::axis)
        }
        Command::ProdSlice { f, h } => {
            let w = product_preserved_slice(&read_poly(f)?, &read_poly(h)?)?;
            w.map_or(Value::Null, |w| {
                json!({ "k0": json::axis(w.k0), "a": w.a, "b": w.b, "eps": w.eps })
            })
        }
        Command::ConjBy { h, f } => {
            let g = conjugate_by(&read_poly(h)?, &read_poly(f)?)?;
            json!({ "g": json::poly(&g), "class": json::class(g.classify()?) })
        }
        Command::SolveH { f, m0, g } => opt_poly(solve_conjugation_h(
            &read_poly(f)?,
            read_axis(m0, "m0")?,
            &read_poly(g)?,
        )?),
        Command::SolveF { h, i0, g } => opt_poly(solve_conjugation_f(
            &read_poly(h)?,
            read_axis(i0, "i0")?,
            &read_poly(g)?,
        )?),
        Command::Twist { f, h } => {
            let t = twisted_pair_structure(&read_poly(f)?, &read_poly(h)?)?;
            let case = match &t.case {
                TwistCase::SameSlice => json!({ "kind": "same_slice" }),
                TwistCase::SameSliceOrthogonal { j0, k0 } => json!({
                    "kind": "same_slice_orthogonal",
                    "j0": json::axis(*j0),
                    "k0": json::axis(*k0),
                }),
                TwistCase::DifferentSlice { frame, branch } => json!({
                    "kind": "different_slice",
                    "branch": branch_name(*branch),
                    "t": branch.t(frame),
                    "frame": json::frame(frame),
                }),
            };
            json!({
                "i0": json::axis(t.i0),
                "m0": json::axis(t.m0),
                "f_tilde": json::poly(&t.f_tilde),
                "h_tilde": json::poly(&t.h_tilde),
                "case": case,
                "alpha": t.alpha.as_ref().map(|(a, u)| json!({
                    "alpha": json::real_poly(a),
                    "axis": json::axis(*u),
                })),
            })
        }
        Command::Power { expr, d, check_slice } => {
            let f = read_poly(expr)?;
            if *d > slicereg::starpower::MAX_DEGREE {
                return Err(Error::InvalidDegree(*d).into());
            }
            let mut out = json!({ "power": json::poly(&star_power(&f, *d)) });
            if *check_slice {
                let r = power_slice_preserving(&f, *d)?;
                let (verdict, xi) = match r.verdict {
                    PowerVerdict::SlicePreserving { xi } => ("slice_preserving", xi),
                    PowerVerdict::No => ("no", None),
                };
                out["verdict"] = json!(verdict);
                out["xi"] = json!(xi);
                out["rho"] = r.rho.as_ref().map_or(Value::Null, json::real_poly);
                out["power_class"] = json::class(r.power_class);
            }
            out
        }
        Command::Sigma { d } => json!({ "d": d, "roots": sigma(*d)?.roots }),
        Command::Qd { d } => {
            let q = qd(*d)?;
            // coefficients can exceed 64 bits, so they travel as decimal strings
            let terms: Vec<Value> = q
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    let y = 2 * n as u32 + 1;
                    json!({ "x": d - y, "y": y, "coeff": c.to_string() })
                })
                .collect();
            json!({ "d": d, "form": q.to_string(), "terms": terms })
        }
    };
    Ok(json!({ "result": result }))
}
