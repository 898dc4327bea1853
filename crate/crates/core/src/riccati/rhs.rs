use crate::coeffs::CoefficientTriple;
use crate::grassmann::GrassmannElement;
use crate::integrator::RhsError;
use crate::superfield::SuperfieldComponents;

use super::real;

/// `a(t) Y^2 + b(t) Y + c(t)`.
pub fn super_riccati_rhs(
    t: f64,
    y: &GrassmannElement,
    coeffs: &CoefficientTriple,
) -> Result<GrassmannElement, RhsError> {
    let v = coeffs.eval(t)?;
    let square = y.gmul(y)?;
    let c = GrassmannElement::real_scalar(y.generators(), v.c);
    Ok(square.scale_real(v.a).try_add(&y.scale_real(v.b))?.try_add(&c)?)
}

/// Component form of the extended Riccati equation:
///
/// ```text
/// y'  = a y^2 + b y + c
/// l'  = (2 a y + b) l
/// g0' = (2 a y + b) g0
/// g1' = (2 a y + b) g1 + 2 a |l|^2
/// ```
pub fn component_rhs(
    t: f64,
    s: &SuperfieldComponents,
    coeffs: &CoefficientTriple,
) -> Result<SuperfieldComponents, RhsError> {
    let v = coeffs.eval(t)?;
    let k = 2.0 * v.a * s.y + v.b;
    Ok(SuperfieldComponents {
        y: v.a * s.y * s.y + v.b * s.y + v.c,
        l: s.l * k,
        g0: k * s.g0,
        g1: k * s.g1 + 2.0 * v.a * s.l.norm_sqr(),
    })
}

/// The `b = 0` pair system for `B` (fields `B, phi, A0, A1`) and `D`
/// (fields `D, psi, U0, U1`):
///
/// ```text
/// B'  = a B^2 + c              D'  = -2 a B D - a
/// phi'= 2 a B phi              psi'= -2 a (B psi + D phi)
/// A0' = 2 a B A0               U0' = -2 a (B U0 + A0 D)
/// A1' = 2 a B A1 + 2 a |phi|^2 U1' = -2 a (B U1 + A1 D + conj(phi) psi + conj(psi) phi)
/// ```
///
/// Fails if `b(t) != 0`.
pub fn b0_rhs(
    t: f64,
    b_part: &SuperfieldComponents,
    d_part: &SuperfieldComponents,
    coeffs: &CoefficientTriple,
) -> Result<(SuperfieldComponents, SuperfieldComponents), RhsError> {
    let v = coeffs.eval(t)?;
    if v.b != 0.0 {
        return Err(RhsError::Precondition(format!(
            "b(t) = {} at t={t}; the pair system needs b = 0",
            v.b
        )));
    }
    let a = v.a;
    let (bb, phi, a0, a1) = (b_part.y, b_part.l, b_part.g0, b_part.g1);
    let (dd, psi, u0, u1) = (d_part.y, d_part.l, d_part.g0, d_part.g1);
    let k = 2.0 * a * bb;
    let b_dot = SuperfieldComponents {
        y: a * bb * bb + v.c,
        l: phi * k,
        g0: k * a0,
        g1: k * a1 + 2.0 * a * phi.norm_sqr(),
    };
    let cross = 2.0 * (phi.conj() * psi).re;
    let d_dot = SuperfieldComponents {
        y: -2.0 * a * bb * dd - a,
        l: (psi * bb + phi * dd) * (-2.0 * a),
        g0: -2.0 * a * (bb * u0 + a0 * dd),
        g1: -2.0 * a * (bb * u1 + a1 * dd + cross),
    };
    Ok((b_dot, d_dot))
}

/// `-(2 a B + b) D - a`, the linear equation for `D` in `Y = B + D^{-1}`.
pub fn bernoulli_rhs(
    t: f64,
    d: &GrassmannElement,
    b: &GrassmannElement,
    coeffs: &CoefficientTriple,
) -> Result<GrassmannElement, RhsError> {
    let v = coeffs.eval(t)?;
    let bd = b.gmul(d)?;
    let lin = bd.scale_real(2.0 * v.a).try_add(&d.scale_real(v.b))?;
    Ok(-lin.try_add(&GrassmannElement::real_scalar(d.generators(), v.a))?)
}

/// First-order form of `N'' - (a'/a + b) N' + a c N = 0`; returns
/// `(N', N'')`.
pub fn second_order_rhs(
    t: f64,
    n: &GrassmannElement,
    n_dot: &GrassmannElement,
    coeffs: &CoefficientTriple,
) -> Result<(GrassmannElement, GrassmannElement), RhsError> {
    let v = coeffs.eval(t)?;
    if v.a == 0.0 {
        return Err(RhsError::SingularCoefficient { t });
    }
    let a_dot = coeffs.a_dot(t)?;
    let damping = a_dot / v.a + v.b;
    let n_ddot = n_dot.scale(&real(damping)).try_sub(&n.scale(&real(v.a * v.c)))?;
    Ok((n_dot.clone(), n_ddot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{Blade, Generators};
    use crate::superfield::{from_components, to_components};
    use num_complex::Complex64;

    fn body(x: f64) -> GrassmannElement {
        GrassmannElement::real_scalar(Generators::SUPER, x)
    }

    #[test]
    fn pure_body_is_classical() {
        let c = CoefficientTriple::constant(1.5, -0.5, 2.0);
        let r = super_riccati_rhs(0.0, &body(3.0), &c).unwrap();
        assert_eq!(r, body(1.5 * 9.0 - 1.5 + 2.0));
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let c = CoefficientTriple::constant(1.0, 0.0, 0.0);
        let n = from_components(&SuperfieldComponents::new(
            0.0,
            Complex64::new(0.0, 0.0),
            1.0,
            0.0,
        ));
        assert!(super_riccati_rhs(0.0, &n, &c).unwrap().is_zero());
    }

    #[test]
    fn fermion_content_example() {
        // Y = 1 + i eta betabar + i etabar beta, a = 1:
        // Y^2 = 1 + 2 i eta betabar + 2 i etabar beta + 2 eta etabar betabar beta
        let c = CoefficientTriple::constant(1.0, 0.0, 0.0);
        let y = from_components(&SuperfieldComponents::new(
            1.0,
            Complex64::new(1.0, 0.0),
            0.0,
            0.0,
        ));
        let r = super_riccati_rhs(0.0, &y, &c).unwrap();
        assert_eq!(
            to_components(&r).unwrap(),
            SuperfieldComponents::new(1.0, Complex64::new(2.0, 0.0), 0.0, 2.0)
        );
        assert_eq!(r.coeff(Blade::from_bits(0b1111)), Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn decoupled_bosonic_sector() {
        let c = CoefficientTriple::constant(-1.0, 0.5, 1.0);
        let d = component_rhs(0.0, &SuperfieldComponents::body(0.5), &c).unwrap();
        assert_eq!(d, SuperfieldComponents::body(1.0));
    }

    #[test]
    fn fermion_growth_rate() {
        let c = CoefficientTriple::constant(1.0, 2.0, 0.0);
        let s = SuperfieldComponents::new(3.0, Complex64::new(1.0, 0.0), 0.0, 0.0);
        let d = component_rhs(0.0, &s, &c).unwrap();
        assert_eq!(d.l, Complex64::new(8.0, 0.0));
    }

    #[test]
    fn pair_system_scalar_sector() {
        let c = CoefficientTriple::constant(1.0, 0.0, 0.0);
        let (_, dd) = b0_rhs(
            0.0,
            &SuperfieldComponents::body(0.0),
            &SuperfieldComponents::body(5.0),
            &c,
        )
        .unwrap();
        assert_eq!(dd.y, -1.0);
        let c = CoefficientTriple::constant(0.7, 0.0, 0.3);
        let (bd, dd) = b0_rhs(
            0.0,
            &SuperfieldComponents::body(2.0),
            &SuperfieldComponents::body(5.0),
            &c,
        )
        .unwrap();
        assert_eq!(bd, SuperfieldComponents::body(0.7 * 4.0 + 0.3));
        assert_eq!(dd, SuperfieldComponents::body(-2.0 * 0.7 * 2.0 * 5.0 - 0.7));
    }

    #[test]
    fn pair_system_requires_b_zero() {
        let c = CoefficientTriple::constant(1.0, 0.1, 0.0);
        let z = SuperfieldComponents::default();
        assert!(matches!(b0_rhs(0.0, &z, &z, &c), Err(RhsError::Precondition(_))));
    }

    #[test]
    fn bernoulli_examples() {
        let c = CoefficientTriple::constant(-2.0, 0.0, 1.0);
        let zero = GrassmannElement::zero(Generators::SUPER);
        let d = from_components(&SuperfieldComponents::new(
            1.0,
            Complex64::new(0.5, 0.5),
            1.0,
            1.0,
        ));
        assert_eq!(bernoulli_rhs(0.0, &d, &zero, &c).unwrap(), body(2.0));

        // classical: f' = -(b + 2 a y_p) f - a
        let c = CoefficientTriple::constant(-2.0, 0.5, 1.0);
        let r = bernoulli_rhs(0.0, &body(3.0), &body(0.25), &c).unwrap();
        assert_eq!(r, body(-(0.5 + 2.0 * -2.0 * 0.25) * 3.0 + 2.0));
    }

    #[test]
    fn second_order_harmonic() {
        let c = CoefficientTriple::constant(1.0, 0.0, 1.0);
        let (nd, ndd) = second_order_rhs(0.0, &body(2.0), &body(0.5), &c).unwrap();
        assert_eq!(nd, body(0.5));
        assert_eq!(ndd, body(-2.0));
        let c = CoefficientTriple::parse("t", "0", "1").unwrap();
        assert_eq!(
            second_order_rhs(0.0, &body(1.0), &body(0.0), &c),
            Err(RhsError::SingularCoefficient { t: 0.0 })
        );
    }

    #[test]
    fn second_order_uses_exact_a_dot() {
        // a = exp(t): a'/a = 1
        let c = CoefficientTriple::parse("exp(t)", "0", "0").unwrap();
        let (_, ndd) = second_order_rhs(0.4, &body(1.0), &body(2.0), &c).unwrap();
        assert!((ndd.body().re - 2.0).abs() < 1e-15);
    }
}
