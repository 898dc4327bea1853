use crate::coeffs::CoefficientTriple;
use crate::integrator::{OdeProblem, OdeSystem, Stepper, Trajectory};
use crate::superfield::{from_components, SuperfieldComponents};

use super::{
    check_bodies, linear_samples, B0PairSystem, ComponentSystem, LinearSuperSystem, RiccatiError,
    SuperRiccatiSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Integrate the full Grassmann state.
    SuperfieldDirect,
    /// Integrate the five real component equations.
    ComponentSystem,
}

/// One initial-value problem for the extended Riccati equation.
#[derive(Debug, Clone)]
pub struct RiccatiRun {
    pub coeffs: CoefficientTriple,
    pub initial: SuperfieldComponents,
    pub t0: f64,
    pub t1: f64,
    pub form: Form,
}

impl RiccatiRun {
    pub fn solve(&self, stepper: &dyn Stepper) -> Result<Trajectory, RiccatiError> {
        self.coeffs.validate_interval(self.t0, self.t1)?;
        let (system, initial): (Box<dyn OdeSystem + '_>, Vec<f64>) = match self.form {
            Form::SuperfieldDirect => (
                Box::new(SuperRiccatiSystem { coeffs: &self.coeffs }),
                from_components(&self.initial).to_flat(),
            ),
            Form::ComponentSystem => (
                Box::new(ComponentSystem { coeffs: &self.coeffs }),
                self.initial.to_array().to_vec(),
            ),
        };
        Ok(stepper.integrate(&OdeProblem::new(system.as_ref(), self.t0, self.t1, initial))?)
    }
}

/// Initial-value problem for `N'' - (a'/a + b) N' + a c N = 0` with
/// superfield-valued `N`.
#[derive(Debug, Clone)]
pub struct LinearSuperRun {
    pub coeffs: CoefficientTriple,
    pub n0: SuperfieldComponents,
    pub n_dot0: SuperfieldComponents,
    pub t0: f64,
    pub t1: f64,
}

impl LinearSuperRun {
    /// Integrates and then checks that the body of `N` neither vanishes at a
    /// sample nor changes sign between samples.
    pub fn solve(&self, stepper: &dyn Stepper) -> Result<Trajectory, RiccatiError> {
        self.coeffs.validate_interval(self.t0, self.t1)?;
        let mut initial = from_components(&self.n0).to_flat();
        initial.extend(from_components(&self.n_dot0).to_flat());
        let system = LinearSuperSystem { coeffs: &self.coeffs };
        let traj = stepper.integrate(&OdeProblem::new(&system, self.t0, self.t1, initial))?;
        check_bodies("N", linear_samples(&traj)?.into_iter().map(|(t, n, _)| (t, n)))?;
        Ok(traj)
    }
}

/// The `b = 0` pair `(B, D)` integrated jointly.
#[derive(Debug, Clone)]
pub struct B0Run {
    pub coeffs: CoefficientTriple,
    pub b0: SuperfieldComponents,
    pub d0: SuperfieldComponents,
    pub t0: f64,
    pub t1: f64,
}

impl B0Run {
    pub fn solve(&self, stepper: &dyn Stepper) -> Result<Trajectory, RiccatiError> {
        self.coeffs.validate_interval(self.t0, self.t1)?;
        self.coeffs.validate_b_zero(self.t0, self.t1)?;
        let mut initial = self.b0.to_array().to_vec();
        initial.extend(self.d0.to_array());
        let system = B0PairSystem { coeffs: &self.coeffs };
        Ok(stepper.integrate(&OdeProblem::new(&system, self.t0, self.t1, initial))?)
    }
}
