use thiserror::Error;

/// Target absolute error of [`quadrature_reference`].
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;

const MAX_DEPTH: u32 = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("need at least 2 panels, got {0}")]
    TooFewPanels(usize),
    #[error("integrand is not finite at t={t}")]
    NonFinite { t: f64 },
}

/// Adaptive Simpson quadrature of `f` over `[t0, t1]`, started from `n`
/// equal panels and refined until each panel meets its share of
/// [`QUADRATURE_TOLERANCE`].
pub fn quadrature_reference(
    f: impl Fn(f64) -> f64,
    t0: f64,
    t1: f64,
    n: usize,
) -> Result<f64, QuadratureError> {
    if n < 2 {
        return Err(QuadratureError::TooFewPanels(n));
    }
    let eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite { t })
        }
    };
    let width = (t1 - t0) / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let a = t0 + i as f64 * width;
        let b = if i + 1 == n { t1 } else { a + width };
        let (fa, fm, fb) = (eval(a)?, eval(0.5 * (a + b))?, eval(b)?);
        let whole = simpson(a, b, fa, fm, fb);
        total += refine(
            &eval,
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            QUADRATURE_TOLERANCE / n as f64,
            MAX_DEPTH,
        )?;
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    eval: &impl Fn(f64) -> Result<f64, QuadratureError>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, QuadratureError> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (eval(0.5 * (a + m))?, eval(0.5 * (m + b))?);
    let left = simpson(a, m, fa, lm, fm);
    let right = simpson(m, b, fm, rm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(refine(eval, a, m, fa, lm, fm, left, tol / 2.0, depth - 1)?
        + refine(eval, m, b, fm, rm, fb, right, tol / 2.0, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_cubics_are_exact() {
        assert_eq!(quadrature_reference(|_| 1.0, 0.0, 1.0, 2).unwrap(), 1.0);
        let v = quadrature_reference(|t| t * t, 0.0, 1.0, 2).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tanh_integral() {
        let v = quadrature_reference(f64::tanh, 0.0, 1.0, 4).unwrap();
        assert!((v - 1f64.cosh().ln()).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(
            quadrature_reference(|t| t, 0.0, 1.0, 1),
            Err(QuadratureError::TooFewPanels(1))
        );
        assert!(matches!(
            quadrature_reference(|t| 1.0 / t, 0.0, 1.0, 2),
            Err(QuadratureError::NonFinite { .. })
        ));
    }
}
