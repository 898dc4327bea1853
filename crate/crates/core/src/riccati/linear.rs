use std::collections::BTreeMap;

use crate::coeffs::CoefficientTriple;
use crate::grassmann::{Generators, GrassmannElement};
use crate::integrator::{RhsError, Trajectory};
use crate::superfield::to_components;

use super::residual::{accumulate_residual, fd_first, fd_second};
use super::{
    check_body, linear_samples, superfield_samples, uniform_step, EquationLabel, ResidualReport,
    RiccatiError, MIN_RESIDUAL_POINTS,
};

/// Running integral `I_i = int_{t_0}^{t_i} f` on a uniform grid.
///
/// Even indices use composite Simpson from `t_0`. Odd indices `i >= 3` add
/// the 3/8 rule over the last three panels to the Simpson value at `i - 3`;
/// `i = 1` uses the four-point cubic rule on the first panel. Every node is
/// then accurate to `O(h^4)` with an even/odd mismatch of only `O(h^5)`.
pub(crate) fn running_integral(f: &[Vec<f64>], h: f64) -> Vec<Vec<f64>> {
    let n = f.len();
    let dim = f[0].len();
    let mut out = vec![vec![0.0; dim]; n];
    let combo = |idx: &[usize], w: &[f64], scale: f64| -> Vec<f64> {
        (0..dim)
            .map(|j| scale * idx.iter().zip(w).map(|(&i, &wi)| wi * f[i][j]).sum::<f64>())
            .collect::<Vec<f64>>()
    };
    for i in 1..n {
        out[i] = if i % 2 == 0 {
            let panel = combo(&[i - 2, i - 1, i], &[1.0, 4.0, 1.0], h / 3.0);
            out[i - 2].iter().zip(&panel).map(|(a, b)| a + b).collect()
        } else if i >= 3 {
            let panel = combo(&[i - 3, i - 2, i - 1, i], &[1.0, 3.0, 3.0, 1.0], 3.0 * h / 8.0);
            out[i - 3].iter().zip(&panel).map(|(a, b)| a + b).collect()
        } else if n >= 4 {
            combo(&[0, 1, 2, 3], &[9.0, 19.0, -5.0, 1.0], h / 24.0)
        } else {
            // two or three samples only: trapezoid on the first panel
            combo(&[0, 1], &[1.0, 1.0], h / 2.0)
        };
    }
    out
}

/// `N = exp(-int a Y dt)` along a `Y` trajectory, with `N' = -a Y N`.
/// The integral starts at the first sample, so `N(t_0) = 1`.
pub fn to_linear(y_traj: &Trajectory, coeffs: &CoefficientTriple) -> Result<Trajectory, RiccatiError> {
    let h = uniform_step(y_traj, 2)?;
    let samples = superfield_samples(y_traj)?;
    let g = Generators::SUPER;
    let mut a_values = Vec::with_capacity(samples.len());
    let mut integrand = Vec::with_capacity(samples.len());
    for (t, y) in &samples {
        let a = coeffs
            .a
            .eval(*t)
            .map_err(|e| RiccatiError::rhs(*t)(RhsError::Eval(e)))?;
        a_values.push(a);
        integrand.push(y.scale_real(a).to_flat());
    }
    let integral = running_integral(&integrand, h);
    let mut out = Trajectory::new(
        EquationLabel::LinearSuper.as_str(),
        EquationLabel::LinearSuper.columns(),
        y_traj.stepper.clone(),
    );
    for (((t, y), a), acc) in samples.iter().zip(&a_values).zip(&integral) {
        let exponent = -GrassmannElement::from_flat(g, acc);
        let n = exponent.exp()?;
        let n_dot = -y.gmul(&n)?.scale_real(*a);
        let mut state = n.to_flat();
        state.extend(n_dot.to_flat());
        out.push(*t, state);
    }
    Ok(out)
}

/// `Y = -(1/a) N^{-1} N'` pointwise along a `linear-super` trajectory,
/// returned in component layout.
pub fn from_linear(n_traj: &Trajectory, coeffs: &CoefficientTriple) -> Result<Trajectory, RiccatiError> {
    let mut out = Trajectory::new(
        EquationLabel::RiccatiComponents.as_str(),
        EquationLabel::RiccatiComponents.columns(),
        n_traj.stepper.clone(),
    );
    for (t, n, n_dot) in linear_samples(n_traj)? {
        check_body(t, "N", &n)?;
        let a = coeffs
            .a
            .eval(t)
            .map_err(|e| RiccatiError::rhs(t)(RhsError::Eval(e)))?;
        if a == 0.0 {
            return Err(RiccatiError::rhs(t)(RhsError::SingularCoefficient { t }));
        }
        let y = n.inverse()?.gmul(&n_dot)?.scale_real(-1.0 / a);
        out.push(t, to_components(&y)?.to_array().to_vec());
    }
    Ok(out)
}

/// Residual of `N'' - (a'/a + b) N' + a c N = 0`, with both derivatives of
/// `N` taken by finite differences of the `N` columns alone.
pub fn linear_residual(
    n_traj: &Trajectory,
    coeffs: &CoefficientTriple,
    tolerance: f64,
) -> Result<ResidualReport, RiccatiError> {
    let h = uniform_step(n_traj, MIN_RESIDUAL_POINTS)?;
    let samples = linear_samples(n_traj)?;
    let values: Vec<GrassmannElement> = samples.iter().map(|(_, n, _)| n.clone()).collect();
    let mut per_blade = BTreeMap::new();
    for (b, _) in values.iter().flat_map(|n| n.terms()) {
        per_blade.entry(b).or_insert(0.0);
    }
    for i in 2..values.len() - 2 {
        let t = samples[i].0;
        let v = coeffs
            .eval(t)
            .map_err(|e| RiccatiError::rhs(t)(RhsError::Eval(e)))?;
        if v.a == 0.0 {
            return Err(RiccatiError::rhs(t)(RhsError::SingularCoefficient { t }));
        }
        let a_dot = coeffs
            .a_dot(t)
            .map_err(|e| RiccatiError::rhs(t)(RhsError::Eval(e)))?;
        let damping = a_dot / v.a + v.b;
        let r = &(&fd_second(&values, i, h) - &fd_first(&values, i, h).scale_real(damping))
            + &values[i].scale_real(v.a * v.c);
        accumulate_residual(&mut per_blade, &r);
    }
    Ok(ResidualReport::from_residuals(per_blade, h, tolerance))
}
