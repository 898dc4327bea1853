//! Scalar coefficient functions `a(t)`, `b(t)`, `c(t)` of the Riccati
//! equation `y' = a y^2 + b y + c`.

mod expr;
mod parser;

pub use expr::{BinOp, EvalError, Expr, Func};
pub use parser::{parse_expr, ParseError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Named coefficient sets, as `(name, [a, b, c])`.
pub const PRESETS: &[(&str, [&str; 3])] = &[
    ("const", ["-1", "0", "1"]),
    ("logistic", ["-1", "1", "0"]),
    ("harmonic", ["1", "0", "1"]),
];

/// Number of sample points used by interval checks on the coefficients.
pub const INTERVAL_SAMPLES: usize = 101;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("coefficient `{name}`: {source}")]
    Parse {
        name: &'static str,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("a(t) vanishes at t={t}")]
    VanishingA { t: f64 },
    #[error("b(t) = {value} at t={t}, expected 0")]
    NonzeroB { t: f64, value: f64 },
}

/// Config-file form: either a named preset or three expressions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Preset { preset: String },
    Explicit { a: String, b: String, c: String },
}

impl CoefficientSpec {
    /// Replaces a preset name by its expressions.
    pub fn expand(&self) -> Result<CoefficientSpec, CoeffError> {
        match self {
            CoefficientSpec::Preset { preset } => {
                let (_, [a, b, c]) = PRESETS
                    .iter()
                    .find(|(name, _)| name == preset)
                    .ok_or_else(|| CoeffError::UnknownPreset(preset.clone()))?;
                Ok(CoefficientSpec::Explicit {
                    a: a.to_string(),
                    b: b.to_string(),
                    c: c.to_string(),
                })
            }
            explicit => Ok(explicit.clone()),
        }
    }
}

/// Values of the coefficients at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffValues {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTriple {
    pub a: Expr,
    pub b: Expr,
    pub c: Expr,
    a_dot: Expr,
}

impl CoefficientTriple {
    pub fn new(a: Expr, b: Expr, c: Expr) -> Self {
        let a_dot = a.derivative();
        CoefficientTriple { a, b, c, a_dot }
    }

    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self, CoeffError> {
        let p = |name, src| parse_expr(src).map_err(|source| CoeffError::Parse { name, source });
        Ok(Self::new(p("a", a)?, p("b", b)?, p("c", c)?))
    }

    pub fn preset(name: &str) -> Result<Self, CoeffError> {
        Self::from_spec(&CoefficientSpec::Preset {
            preset: name.to_string(),
        })
    }

    pub fn from_spec(spec: &CoefficientSpec) -> Result<Self, CoeffError> {
        match spec.expand()? {
            CoefficientSpec::Explicit { a, b, c } => Self::parse(&a, &b, &c),
            CoefficientSpec::Preset { .. } => unreachable!("expanded"),
        }
    }

    /// Constant coefficients.
    pub fn constant(a: f64, b: f64, c: f64) -> Self {
        Self::new(Expr::Num(a), Expr::Num(b), Expr::Num(c))
    }

    pub fn eval(&self, t: f64) -> Result<CoeffValues, EvalError> {
        Ok(CoeffValues {
            a: self.a.eval(t)?,
            b: self.b.eval(t)?,
            c: self.c.eval(t)?,
        })
    }

    /// Exact `da/dt`.
    pub fn a_dot(&self, t: f64) -> Result<f64, EvalError> {
        self.a_dot.eval(t)
    }

    pub fn a_dot_expr(&self) -> &Expr {
        &self.a_dot
    }

    fn samples(t0: f64, t1: f64) -> impl Iterator<Item = f64> {
        let n = INTERVAL_SAMPLES - 1;
        (0..=n).map(move |i| t0 + (t1 - t0) * i as f64 / n as f64)
    }

    /// Checks `a(t) != 0` (and evaluability of all three) at sample points.
    pub fn validate_interval(&self, t0: f64, t1: f64) -> Result<(), CoeffError> {
        for t in Self::samples(t0, t1) {
            let v = self.eval(t)?;
            if v.a == 0.0 {
                return Err(CoeffError::VanishingA { t });
            }
        }
        Ok(())
    }

    /// Checks `b(t) == 0` at sample points.
    pub fn validate_b_zero(&self, t0: f64, t1: f64) -> Result<(), CoeffError> {
        for t in Self::samples(t0, t1) {
            let value = self.b.eval(t)?;
            if value != 0.0 {
                return Err(CoeffError::NonzeroB { t, value });
            }
        }
        Ok(())
    }
}
