use num_complex::Complex64;
use proptest::prelude::*;
use superriccati::coeffs::CoefficientTriple;
use superriccati::grassmann::{Generators, GrassmannElement};
use superriccati::integrator::{OdeProblem, OdeSystem, RhsError, Rk4, Stepper};
use superriccati::riccati::{b0_rhs, component_rhs, second_order_rhs, super_riccati_rhs};
use superriccati::superfield::{from_components, to_components, SuperfieldComponents};

fn components(body: std::ops::Range<f64>) -> impl Strategy<Value = SuperfieldComponents> {
    (body, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0)
        .prop_map(|(y, lr, li, g0, g1)| SuperfieldComponents::new(y, Complex64::new(lr, li), g0, g1))
}

fn triple() -> impl Strategy<Value = (f64, f64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0)
}

/// `|x - y| <= 4 eps * magnitude` with `magnitude` a bound on the summed
/// absolute values of the terms that produced `x` and `y`.
fn close(x: &SuperfieldComponents, y: &SuperfieldComponents, magnitude: f64) -> bool {
    x.max_abs_diff(y) <= 4.0 * f64::EPSILON * magnitude
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn component_rhs_is_the_projected_superfield_rhs(s in components(-3.0..3.0), (a, b, c) in triple()) {
        let coeffs = CoefficientTriple::constant(a, b, c);
        let hand = component_rhs(0.0, &s, &coeffs).unwrap();
        let full = to_components(&super_riccati_rhs(0.0, &from_components(&s), &coeffs).unwrap()).unwrap();
        let arr = s.to_array();
        let m = arr.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let magnitude = 4.0 * (a.abs() * m * m + b.abs() * m + c.abs());
        prop_assert!(close(&hand, &full, magnitude), "{:?} vs {:?}", hand, full);
    }

    #[test]
    fn pair_rhs_is_the_projected_superfield_rhs(
        bp in components(-1.0..1.0),
        dp in components(0.5..2.0),
        (a, _, c) in triple(),
    ) {
        // with Y = B + D^{-1}: Y' = B' - D^{-1} D' D^{-1} must equal a Y^2 + c
        let coeffs = CoefficientTriple::constant(a, 0.0, c);
        let (bd, dd) = b0_rhs(0.0, &bp, &dp, &coeffs).unwrap();
        let bb = from_components(&bp);
        let d = from_components(&dp);
        let dinv = d.inverse().unwrap();
        let lhs = &from_components(&bd) - &(&(&dinv * &from_components(&dd)) * &dinv);
        let y = &bb + &dinv;
        let rhs = super_riccati_rhs(0.0, &y, &coeffs).unwrap();
        let scale = 1.0 + lhs.max_abs().max(rhs.max_abs());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale);
        // and the B block alone is the extended equation at b = 0
        let direct = to_components(&super_riccati_rhs(0.0, &bb, &coeffs).unwrap()).unwrap();
        prop_assert!(bd.max_abs_diff(&direct) <= 1e-13 * (1.0 + direct.to_array().iter().fold(0.0f64, |m, v| m.max(v.abs()))));
    }

    #[test]
    fn second_order_rhs_is_linear(
        n1 in components(-2.0..2.0), n2 in components(-2.0..2.0),
        alpha in -2.0f64..2.0, (a, b, c) in triple(),
    ) {
        prop_assume!(a.abs() > 0.1);
        let coeffs = CoefficientTriple::constant(a, b, c);
        let (x, y) = (from_components(&n1), from_components(&n2));
        let (_, fx) = second_order_rhs(0.0, &x, &y, &coeffs).unwrap();
        let (_, fsum) = second_order_rhs(0.0, &x.scale_real(alpha), &y.scale_real(alpha), &coeffs).unwrap();
        prop_assert!(fsum.max_abs_diff(&fx.scale_real(alpha)) <= 1e-12 * (1.0 + fsum.max_abs()));
    }
}

struct Exponential;

impl OdeSystem for Exponential {
    fn dimension(&self) -> usize {
        1
    }
    fn rhs(&self, _t: f64, s: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        out[0] = s[0];
        Ok(())
    }
}

#[test]
fn rk4_converges_at_fourth_order() {
    let errors: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&h| {
            let traj = Rk4::new(h)
                .integrate(&OdeProblem::new(&Exponential, 0.0, 1.0, vec![1.0]))
                .unwrap();
            (traj.last().state[0] - 1f64.exp()).abs()
        })
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((3.7..=4.3).contains(&order), "order {order}");
    }
}

#[test]
fn superfield_state_flattening_is_lossless() {
    let c = SuperfieldComponents::new(0.5, Complex64::new(-1.0, 2.0), 3.0, -4.0);
    let e = from_components(&c);
    assert_eq!(GrassmannElement::from_flat(Generators::SUPER, &e.to_flat()), e);
}
