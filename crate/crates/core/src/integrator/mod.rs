//! Explicit Runge-Kutta integration over flat real state vectors.
//!
//! Steppers implement [`Stepper`] and are looked up by name in a
//! [`StepperRegistry`], so a run config can select `rk4-fixed` or
//! `rkf45-adaptive` at runtime.

mod rk4;
mod rkf45;
mod trajectory;

pub use rk4::{rk4_step, Rk4};
pub use rkf45::Rkf45;
pub use trajectory::{Sample, Trajectory};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::EvalError;
use crate::grassmann::AlgebraError;
use crate::superfield::ShapeError;

/// States whose max-norm exceeds this are treated as having hit a pole.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

/// Failure inside a right-hand side evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RhsError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("singular coefficient: a(t)=0 at t={t}")]
    SingularCoefficient { t: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrateError {
    #[error("right-hand side failed at t={t}: {source}")]
    Rhs {
        t: f64,
        #[source]
        source: RhsError,
    },
    #[error("solution diverged between t={last_t} and t={t} (|state| = {norm:e})")]
    Singularity { t: f64, last_t: f64, norm: f64 },
    #[error("step size underflow at t={t}: h={h:e} below hmin")]
    StepUnderflow { t: f64, h: f64 },
    #[error("invalid stepper configuration: {0}")]
    Config(String),
    #[error("invalid problem: {0}")]
    Problem(String),
}

impl IntegrateError {
    /// Time at which the run failed, when one is known.
    pub fn location(&self) -> Option<f64> {
        match *self {
            IntegrateError::Rhs { t, .. }
            | IntegrateError::Singularity { t, .. }
            | IntegrateError::StepUnderflow { t, .. } => Some(t),
            _ => None,
        }
    }
}

/// A first-order system `x' = f(t, x)` on `R^n`.
pub trait OdeSystem {
    fn dimension(&self) -> usize;

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError>;

    /// Equation label stored in trajectory metadata.
    fn label(&self) -> &str {
        "ode"
    }

    fn columns(&self) -> Vec<String> {
        (0..self.dimension()).map(|i| format!("x{i}")).collect()
    }
}

pub struct OdeProblem<'a> {
    pub system: &'a dyn OdeSystem,
    pub t0: f64,
    pub t1: f64,
    pub initial: Vec<f64>,
}

impl<'a> OdeProblem<'a> {
    pub fn new(system: &'a dyn OdeSystem, t0: f64, t1: f64, initial: Vec<f64>) -> Self {
        OdeProblem {
            system,
            t0,
            t1,
            initial,
        }
    }

    pub fn validate(&self) -> Result<(), IntegrateError> {
        if self.t1 <= self.t0 || !self.t0.is_finite() || !self.t1.is_finite() {
            return Err(IntegrateError::Problem(format!(
                "interval [{}, {}] must satisfy t0 < t1",
                self.t0, self.t1
            )));
        }
        if self.initial.len() != self.system.dimension() {
            return Err(IntegrateError::Problem(format!(
                "initial state has length {}, system dimension is {}",
                self.initial.len(),
                self.system.dimension()
            )));
        }
        Ok(())
    }

    pub(crate) fn eval(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), IntegrateError> {
        self.system
            .rhs(t, state, out)
            .map_err(|source| IntegrateError::Rhs { t, source })
    }

    pub(crate) fn trajectory(&self, stepper: StepperConfig) -> Trajectory {
        Trajectory::new(self.system.label(), self.system.columns(), Some(stepper))
    }
}

pub(crate) fn check_divergence(t: f64, last_t: f64, state: &[f64]) -> Result<(), IntegrateError> {
    let mut norm = 0.0f64;
    for &x in state {
        if !x.is_finite() {
            norm = f64::INFINITY;
            break;
        }
        norm = norm.max(x.abs());
    }
    if norm > DIVERGENCE_LIMIT {
        Err(IntegrateError::Singularity { t, last_t, norm })
    } else {
        Ok(())
    }
}

fn default_record_every() -> usize {
    1
}

/// Stepper selection and parameters as they appear in a run config.
///
/// `method` names a registry entry; fixed-step methods read `h`, adaptive
/// ones read `h0`, `atol`, `rtol`, `hmin`, `hmax` (falling back to
/// [`Rkf45::default`] values).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rtol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hmin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hmax: Option<f64>,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
}

impl StepperConfig {
    pub fn rk4(h: f64) -> Self {
        StepperConfig {
            method: Rk4::NAME.to_string(),
            h: Some(h),
            h0: None,
            atol: None,
            rtol: None,
            hmin: None,
            hmax: None,
            record_every: 1,
        }
    }

    pub fn rkf45(atol: f64, rtol: f64) -> Self {
        StepperConfig {
            method: Rkf45::NAME.to_string(),
            h: None,
            h0: None,
            atol: Some(atol),
            rtol: Some(rtol),
            hmin: None,
            hmax: None,
            record_every: 1,
        }
    }

    pub fn with_record_every(mut self, n: usize) -> Self {
        self.record_every = n;
        self
    }
}

/// An integration strategy.
pub trait Stepper: Send + Sync {
    fn name(&self) -> &'static str;

    /// Effective configuration, echoed into trajectory metadata.
    fn config(&self) -> StepperConfig;

    fn integrate(&self, problem: &OdeProblem<'_>) -> Result<Trajectory, IntegrateError>;
}

pub type StepperFactory = fn(&StepperConfig) -> Result<Box<dyn Stepper>, IntegrateError>;

/// Name -> constructor map for steppers.
pub struct StepperRegistry {
    factories: BTreeMap<String, StepperFactory>,
}

impl StepperRegistry {
    pub fn empty() -> Self {
        StepperRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// `rk4-fixed` (alias `rk4`) and `rkf45-adaptive` (alias `rkf45`).
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        let rk4: StepperFactory = |c| Ok(Box::new(Rk4::from_config(c)?));
        let rkf45: StepperFactory = |c| Ok(Box::new(Rkf45::from_config(c)?));
        r.register(Rk4::NAME, rk4);
        r.register("rk4", rk4);
        r.register(Rkf45::NAME, rkf45);
        r.register("rkf45", rkf45);
        r
    }

    pub fn register(&mut self, name: &str, factory: StepperFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn build(&self, config: &StepperConfig) -> Result<Box<dyn Stepper>, IntegrateError> {
        let factory = self.factories.get(&config.method).ok_or_else(|| {
            IntegrateError::Config(format!(
                "unknown method `{}` (known: {})",
                config.method,
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        factory(config)
    }
}

/// Builds a stepper from the builtin registry and runs it.
pub fn integrate(problem: &OdeProblem<'_>, config: &StepperConfig) -> Result<Trajectory, IntegrateError> {
    StepperRegistry::builtin().build(config)?.integrate(problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_resolves_names() {
        let reg = StepperRegistry::builtin();
        assert_eq!(reg.build(&StepperConfig::rk4(0.1)).unwrap().name(), Rk4::NAME);
        let mut c = StepperConfig::rk4(0.1);
        c.method = "rk4".into();
        assert_eq!(reg.build(&c).unwrap().name(), Rk4::NAME);
        assert_eq!(
            reg.build(&StepperConfig::rkf45(1e-8, 1e-8)).unwrap().name(),
            Rkf45::NAME
        );
        c.method = "euler".into();
        assert!(matches!(reg.build(&c), Err(IntegrateError::Config(_))));
    }

    #[test]
    fn stepper_config_json() {
        let c: StepperConfig = serde_json::from_str(r#"{"method": "rk4-fixed", "h": 0.001}"#).unwrap();
        assert_eq!(c, StepperConfig::rk4(1e-3));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"method":"rk4-fixed","h":0.001,"record_every":1}"#
        );
    }
}
