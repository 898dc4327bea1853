use crate::coeffs::CoefficientTriple;
use crate::grassmann::{Generators, GrassmannElement};
use crate::integrator::{OdeProblem, Rk4, Stepper, Trajectory};
use crate::superfield::{from_components, to_components, SuperfieldComponents};

use super::{
    check_bodies, check_body, expect_label, riccati_residual, superfield_samples, uniform_step,
    BernoulliDSystem, EquationLabel, RiccatiError, GRID_TOLERANCE,
};

/// Residual a particular solution must meet before it is used.
pub const PARTICULAR_RESIDUAL: f64 = 1e-6;

/// Integrates `D' = -(2 a B + b) D - a` along a tabulated particular solution
/// `B` (a `Y` trajectory on a uniform grid of spacing `h`).
///
/// RK4 runs with step `2h`; every stage time is then a grid time of `B`.
/// The returned `bernoulli-D` trajectory lives on every second grid point;
/// when the grid has an odd number of intervals the last `B` sample is not
/// reached.
pub fn integrate_bernoulli_d(
    particular: &Trajectory,
    d0: &GrassmannElement,
    coeffs: &CoefficientTriple,
) -> Result<Trajectory, RiccatiError> {
    let h = uniform_step(particular, 3)?;
    let samples = superfield_samples(particular)?;
    let values: Vec<GrassmannElement> = samples.iter().map(|(_, b)| b.clone()).collect();
    let last = (samples.len() - 1) / 2 * 2;
    let t0 = samples[0].0;
    let t1 = t0 + last as f64 * h;
    let system = BernoulliDSystem {
        coeffs,
        t0,
        h,
        particular: &values,
    };
    let stepper = Rk4::new(2.0 * h);
    let d = stepper.integrate(&OdeProblem::new(&system, t0, t1, d0.to_flat()))?;
    check_bodies(
        "D",
        d.samples
            .iter()
            .map(|s| (s.t, GrassmannElement::from_flat(Generators::SUPER, &s.state))),
    )?;
    Ok(d)
}

/// General solution `Y = B + D^{-1}` from a particular solution `B` and the
/// initial value `D0`, in component layout on the grid of `D`.
pub fn general_solution(
    particular: &Trajectory,
    d0: &SuperfieldComponents,
    coeffs: &CoefficientTriple,
) -> Result<Trajectory, RiccatiError> {
    let check = riccati_residual(particular, coeffs, PARTICULAR_RESIDUAL)?;
    if !check.passed {
        return Err(RiccatiError::Precondition(format!(
            "particular solution has residual {:e} above {PARTICULAR_RESIDUAL:e}",
            check.max()
        )));
    }
    let d0 = from_components(d0);
    check_body(particular.samples[0].t, "D", &d0)?;
    let d = integrate_bernoulli_d(particular, &d0, coeffs)?;
    let b = superfield_samples(particular)?;
    let mut out = Trajectory::new(
        EquationLabel::RiccatiComponents.as_str(),
        EquationLabel::RiccatiComponents.columns(),
        particular.stepper.clone(),
    );
    for (k, s) in d.samples.iter().enumerate() {
        let (tb, bv) = &b[2 * k];
        debug_assert!((tb - s.t).abs() <= GRID_TOLERANCE * (1.0 + s.t.abs()));
        let dv = GrassmannElement::from_flat(Generators::SUPER, &s.state);
        let y = bv.try_add(&dv.inverse()?)?;
        out.push(s.t, to_components(&y)?.to_array().to_vec());
    }
    Ok(out)
}

/// Assembles `Y = B + D^{-1}` from a `b0-pair` trajectory.
pub fn b0_superfield(pair: &Trajectory) -> Result<Trajectory, RiccatiError> {
    expect_label(pair, EquationLabel::B0Pair)?;
    let mut out = Trajectory::new(
        EquationLabel::RiccatiComponents.as_str(),
        EquationLabel::RiccatiComponents.columns(),
        pair.stepper.clone(),
    );
    let n = SuperfieldComponents::LEN;
    for s in &pair.samples {
        let b = from_components(&SuperfieldComponents::from_slice(&s.state[..n]));
        let d = from_components(&SuperfieldComponents::from_slice(&s.state[n..]));
        check_body(s.t, "D", &d)?;
        let y = b.try_add(&d.inverse()?)?;
        out.push(s.t, to_components(&y)?.to_array().to_vec());
    }
    Ok(out)
}
