//! Run modes as trait objects in a name-keyed registry.

mod audit;
mod linear;
mod pair;
mod residual;
mod solve;

pub use audit::DeriveSystem;
pub use linear::{Delinearize, Linearize};
pub use pair::{Bernoulli, B0};
pub use residual::Residual;
pub use solve::{Compare, SolveComponents, SolveSuper};

use std::collections::BTreeMap;

use superriccati::integrator::Trajectory;
use superriccati::riccati::{component_samples, superfield_samples, ResidualReport, RiccatiError};

use crate::config::{Context, Field};
use crate::error::CliError;
use crate::report::Check;

/// Relative tolerance for matching sample times of two trajectories.
const TIME_MATCH: f64 = 1e-12;

/// Everything a mode produces besides its exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    /// `(suffix, trajectory)`; each is written to `<prefix><suffix>.csv`.
    pub trajectories: Vec<(String, Trajectory)>,
    /// `(suffix, text)`, written to `<prefix><suffix>` and echoed to the console.
    pub text: Option<(String, String)>,
    pub checks: Vec<Check>,
    pub residuals: BTreeMap<String, ResidualReport>,
    pub notes: Vec<String>,
    pub details: Option<serde_json::Value>,
}

impl Outcome {
    /// Adds the main trajectory, written to `<prefix>.csv`.
    pub fn primary(&mut self, traj: Trajectory) {
        self.trajectories.push((String::new(), traj));
    }

    /// Adds a further trajectory, written to `<prefix>.<label>.csv`.
    pub fn secondary(&mut self, traj: Trajectory) {
        self.trajectories.push((format!(".{}", traj.label), traj));
    }

    /// Records a residual report as a check. A non-uniform grid leaves a
    /// note instead of failing the run.
    pub fn residual(
        &mut self,
        name: &str,
        result: Result<ResidualReport, RiccatiError>,
    ) -> Result<(), CliError> {
        match result {
            Ok(r) => {
                self.checks.push(Check {
                    name: name.to_string(),
                    value: r.max(),
                    tolerance: r.tolerance,
                    passed: r.passed,
                });
                self.residuals.insert(name.to_string(), r);
                Ok(())
            }
            Err(RiccatiError::NonUniformGrid) => {
                self.notes
                    .push(format!("{name} skipped: trajectory grid is not uniform"));
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// A named CLI mode.
pub trait Mode: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Config fields that must be present.
    fn requires(&self) -> &'static [Field];

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError>;
}

/// Name -> mode map.
pub struct ModeRegistry {
    modes: BTreeMap<&'static str, Box<dyn Mode>>,
}

impl ModeRegistry {
    pub fn empty() -> Self {
        ModeRegistry {
            modes: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(SolveSuper));
        r.register(Box::new(SolveComponents));
        r.register(Box::new(Compare));
        r.register(Box::new(Linearize));
        r.register(Box::new(Delinearize));
        r.register(Box::new(Bernoulli));
        r.register(Box::new(B0));
        r.register(Box::new(DeriveSystem));
        r.register(Box::new(Residual));
        r
    }

    pub fn register(&mut self, mode: Box<dyn Mode>) {
        self.modes.insert(mode.name(), mode);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.modes.keys().copied()
    }

    pub fn modes(&self) -> impl Iterator<Item = &dyn Mode> {
        self.modes.values().map(|m| m.as_ref())
    }

    pub fn get(&self, name: &str) -> Result<&dyn Mode, CliError> {
        if name.is_empty() {
            return Err(CliError::Invalid(
                "no mode given (set `mode` or pass --mode)".into(),
            ));
        }
        self.modes.get(name).map(|m| m.as_ref()).ok_or_else(|| {
            CliError::Invalid(format!(
                "unknown mode `{name}` (known: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }
}

/// `max |Y - dagger(Y)|` over a `Y` trajectory.
pub fn reality_defect(traj: &Trajectory) -> Result<f64, CliError> {
    Ok(superfield_samples(traj)?
        .iter()
        .map(|(_, e)| e.max_abs_diff(&e.dagger()))
        .fold(0.0, f64::max))
}

/// Largest component difference between two `Y` trajectories sampled at
/// the same times, or `None` if their grids differ.
pub fn route_disagreement(a: &Trajectory, b: &Trajectory) -> Result<Option<f64>, CliError> {
    let (sa, sb) = (component_samples(a)?, component_samples(b)?);
    if sa.len() != sb.len()
        || sa
            .iter()
            .zip(&sb)
            .any(|((ta, _), (tb, _))| (ta - tb).abs() > TIME_MATCH * ta.abs().max(1.0))
    {
        return Ok(None);
    }
    Ok(Some(
        sa.iter()
            .zip(&sb)
            .map(|((_, x), (_, y))| x.max_abs_diff(y))
            .fold(0.0, f64::max),
    ))
}
