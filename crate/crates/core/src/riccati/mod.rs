//! The extended Riccati equation `Y' = a Y^2 + b Y + c` for a superfield `Y`,
//! its component system, the linearizing map `Y = -(1/a) N^{-1} N'`, the
//! Bernoulli construction `Y = B + D^{-1}` and the `b = 0` pair system.

mod bernoulli;
mod linear;
mod residual;
mod rhs;
mod runs;
mod systems;

pub use bernoulli::{b0_superfield, general_solution, integrate_bernoulli_d};
pub use linear::{from_linear, linear_residual, to_linear};
pub use residual::{riccati_residual, ResidualReport, MIN_RESIDUAL_POINTS};
pub use rhs::{b0_rhs, bernoulli_rhs, component_rhs, second_order_rhs, super_riccati_rhs};
pub use runs::{B0Run, Form, LinearSuperRun, RiccatiRun};
pub use systems::{B0PairSystem, BernoulliDSystem, ComponentSystem, LinearSuperSystem, SuperRiccatiSystem};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::coeffs::CoeffError;
use crate::grassmann::{AlgebraError, Generators, GrassmannElement};
use crate::integrator::{IntegrateError, RhsError, Trajectory};
use crate::superfield::{from_components, ShapeError, SuperfieldComponents};

/// Bodies of `N` or `D` at or below this magnitude are treated as zeros,
/// i.e. poles of the Riccati solution.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// Relative spacing tolerance for "uniform grid" preconditions.
pub const GRID_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiccatiError {
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error("at t={t}: {source}")]
    Rhs {
        t: f64,
        #[source]
        source: RhsError,
    },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("pole at t={t}: body of {field} is {body:e}")]
    Pole { t: f64, field: &'static str, body: f64 },
    #[error("need at least {need} samples, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("trajectory grid is not uniform")]
    NonUniformGrid,
    #[error("expected a `{expected}` trajectory, got `{got}`")]
    Label { expected: String, got: String },
    #[error("{0}")]
    Precondition(String),
}

impl RiccatiError {
    pub fn rhs(t: f64) -> impl FnOnce(RhsError) -> RiccatiError {
        move |source| RiccatiError::Rhs { t, source }
    }

    /// Time at which the failure happened, when known.
    pub fn location(&self) -> Option<f64> {
        match self {
            RiccatiError::Integrate(e) => e.location(),
            RiccatiError::Rhs { t, .. } | RiccatiError::Pole { t, .. } => Some(*t),
            RiccatiError::Coeff(CoeffError::VanishingA { t })
            | RiccatiError::Coeff(CoeffError::NonzeroB { t, .. }) => Some(*t),
            RiccatiError::Coeff(CoeffError::Eval(e)) => Some(e.t()),
            _ => None,
        }
    }

    /// True for pole, divergence and domain failures of a run, as opposed
    /// to malformed input.
    pub fn is_runtime(&self) -> bool {
        matches!(
            self,
            RiccatiError::Integrate(IntegrateError::Rhs { .. })
                | RiccatiError::Integrate(IntegrateError::Singularity { .. })
                | RiccatiError::Integrate(IntegrateError::StepUnderflow { .. })
                | RiccatiError::Rhs { .. }
                | RiccatiError::Pole { .. }
                | RiccatiError::Coeff(CoeffError::Eval(_))
                | RiccatiError::Coeff(CoeffError::VanishingA { .. })
        )
    }
}

/// Equation labels carried in trajectory metadata; each fixes a column set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationLabel {
    /// Full flattened Grassmann state of `Y`.
    RiccatiSuper,
    /// `[y, re_l, im_l, g0, g1]`.
    RiccatiComponents,
    /// Full flattened `N` followed by full flattened `N'`.
    LinearSuper,
    /// Full flattened `D` of the Bernoulli construction.
    BernoulliD,
    /// Component layout of `B` then of `D`.
    B0Pair,
}

impl EquationLabel {
    pub const ALL: [EquationLabel; 5] = [
        EquationLabel::RiccatiSuper,
        EquationLabel::RiccatiComponents,
        EquationLabel::LinearSuper,
        EquationLabel::BernoulliD,
        EquationLabel::B0Pair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquationLabel::RiccatiSuper => "riccati-super",
            EquationLabel::RiccatiComponents => "riccati-components",
            EquationLabel::LinearSuper => "linear-super",
            EquationLabel::BernoulliD => "bernoulli-D",
            EquationLabel::B0Pair => "b0-pair",
        }
    }

    pub fn columns(self) -> Vec<String> {
        let g = Generators::SUPER;
        match self {
            EquationLabel::RiccatiSuper => full_columns("", g),
            EquationLabel::RiccatiComponents => {
                SuperfieldComponents::column_names(["y", "l", "g0", "g1"]).to_vec()
            }
            EquationLabel::LinearSuper => {
                let mut c = full_columns("N:", g);
                c.extend(full_columns("Ndot:", g));
                c
            }
            EquationLabel::BernoulliD => full_columns("D:", g),
            EquationLabel::B0Pair => {
                let mut c = SuperfieldComponents::column_names(["B", "phi", "A0", "A1"]).to_vec();
                c.extend(SuperfieldComponents::column_names(["D", "psi", "U0", "U1"]));
                c
            }
        }
    }

    /// Recognizes a label from a CSV header (without the leading `t`).
    pub fn from_columns(columns: &[String]) -> Option<EquationLabel> {
        EquationLabel::ALL.into_iter().find(|l| l.columns() == columns)
    }
}

impl fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquationLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        EquationLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown equation label `{s}`"))
    }
}

/// Column names `<prefix>re(<blade>)`, `<prefix>im(<blade>)` for every blade.
pub fn full_columns(prefix: &str, generators: Generators) -> Vec<String> {
    generators
        .blades()
        .flat_map(|b| {
            let name = b.name();
            [format!("{prefix}re({name})"), format!("{prefix}im({name})")]
        })
        .collect()
}

fn label_of(traj: &Trajectory) -> Result<EquationLabel, RiccatiError> {
    traj.label.parse().map_err(|_| RiccatiError::Label {
        expected: "a known equation label".into(),
        got: traj.label.clone(),
    })
}

/// Decodes a trajectory of `Y` (labels `riccati-super` or
/// `riccati-components`) into superfield samples.
pub fn superfield_samples(traj: &Trajectory) -> Result<Vec<(f64, GrassmannElement)>, RiccatiError> {
    let label = label_of(traj)?;
    let decode: fn(&[f64]) -> GrassmannElement = match label {
        EquationLabel::RiccatiSuper => |s| GrassmannElement::from_flat(Generators::SUPER, s),
        EquationLabel::RiccatiComponents => |s| from_components(&SuperfieldComponents::from_slice(s)),
        other => {
            return Err(RiccatiError::Label {
                expected: "riccati-super or riccati-components".into(),
                got: other.to_string(),
            })
        }
    };
    Ok(traj.samples.iter().map(|s| (s.t, decode(&s.state))).collect())
}

/// Component view of a `Y` trajectory, whatever its storage layout.
pub fn component_samples(traj: &Trajectory) -> Result<Vec<(f64, SuperfieldComponents)>, RiccatiError> {
    superfield_samples(traj)?
        .into_iter()
        .map(|(t, e)| Ok((t, crate::superfield::to_components(&e)?)))
        .collect()
}

/// Decodes a `linear-super` trajectory into `(t, N, N')` samples.
pub fn linear_samples(
    traj: &Trajectory,
) -> Result<Vec<(f64, GrassmannElement, GrassmannElement)>, RiccatiError> {
    expect_label(traj, EquationLabel::LinearSuper)?;
    let half = 2 * Generators::SUPER.dimension();
    Ok(traj
        .samples
        .iter()
        .map(|s| {
            (
                s.t,
                GrassmannElement::from_flat(Generators::SUPER, &s.state[..half]),
                GrassmannElement::from_flat(Generators::SUPER, &s.state[half..]),
            )
        })
        .collect())
}

fn expect_label(traj: &Trajectory, label: EquationLabel) -> Result<(), RiccatiError> {
    if traj.label == label.as_str() {
        Ok(())
    } else {
        Err(RiccatiError::Label {
            expected: label.to_string(),
            got: traj.label.clone(),
        })
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_body(t: f64, field: &'static str, e: &GrassmannElement) -> Result<(), RiccatiError> {
    let body = e.body().norm();
    if body <= POLE_TOLERANCE {
        Err(RiccatiError::Pole { t, field, body })
    } else {
        Ok(())
    }
}

/// Fails with a pole error if the body is too small at a sample or changes
/// sign between consecutive samples; a crossing is located by linear
/// interpolation.
fn check_bodies(
    field: &'static str,
    samples: impl IntoIterator<Item = (f64, GrassmannElement)>,
) -> Result<(), RiccatiError> {
    let mut prev: Option<(f64, f64)> = None;
    for (t, e) in samples {
        check_body(t, field, &e)?;
        let body = e.body().re;
        if let Some((pt, pb)) = prev {
            if pb.signum() != body.signum() {
                return Err(RiccatiError::Pole {
                    t: pt + (t - pt) * pb / (pb - body),
                    field,
                    body: 0.0,
                });
            }
        }
        prev = Some((t, body));
    }
    Ok(())
}

fn uniform_step(traj: &Trajectory, need: usize) -> Result<f64, RiccatiError> {
    if traj.len() < need {
        return Err(RiccatiError::TooFewPoints {
            need,
            got: traj.len(),
        });
    }
    traj.uniform_step(GRID_TOLERANCE)
        .ok_or(RiccatiError::NonUniformGrid)
}
