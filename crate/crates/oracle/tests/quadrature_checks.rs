use num_complex::Complex64;
use superriccati::coeffs::CoefficientTriple;
use superriccati::grassmann::{Generators, GrassmannElement};
use superriccati::integrator::Trajectory;
use superriccati::riccati::{to_linear, EquationLabel};
use superriccati::superfield::{SuperfieldComponents, BLADE_ETA_ETABAR};
use superriccati_oracle::quadrature_reference;

#[test]
fn log_cosh_reference_value() {
    let v = quadrature_reference(f64::tanh, 0.0, 1.0, 8).unwrap();
    assert!((v - 1f64.cosh().ln()).abs() < 1e-12);
    // 15-digit decimal value of ln(cosh 1), good to about 1e-12
    assert!((v - 0.433780830483997).abs() < 1e-11);
}

fn tabulated(f: impl Fn(f64) -> SuperfieldComponents, n: usize, h: f64) -> Trajectory {
    let label = EquationLabel::RiccatiComponents;
    let mut t = Trajectory::new(label.as_str(), label.columns(), None);
    for i in 0..n {
        let ti = i as f64 * h;
        t.push(ti, f(ti).to_array().to_vec());
    }
    t
}

#[test]
fn running_integral_matches_reference_quadrature() {
    // a = -1 - 0.5 sin t and Y body = tanh t: N body = exp(int (1 + 0.5 sin) tanh)
    let coeffs = CoefficientTriple::parse("-1 - 0.5*sin(t)", "0", "0").unwrap();
    let h = 1e-3;
    let y = tabulated(|t| SuperfieldComponents::body(t.tanh()), 1001, h);
    let n = to_linear(&y, &coeffs).unwrap();
    for s in n.samples.iter().step_by(37) {
        let integral = quadrature_reference(|u| (1.0 + 0.5 * u.sin()) * u.tanh(), 0.0, s.t, 4);
        let expected = integral.unwrap().exp();
        assert!((s.state[0] - expected).abs() < 1e-12, "t={}", s.t);
    }
}

#[test]
fn nilpotent_exponent_truncates_after_the_quadratic_term() {
    // Y = y + Gamma with Gamma = eta etabar g (g const), a = -1:
    // N = e^{int y} (1 + int Gamma + (int Gamma)^2 / 2) and (int Gamma)^2 = 0
    let coeffs = CoefficientTriple::constant(-1.0, 0.0, 0.0);
    let h = 1e-3;
    let g = 0.7;
    let y = tabulated(
        |t| SuperfieldComponents::new(t.cos(), Complex64::new(0.0, 0.0), g, 0.0),
        801,
        h,
    );
    let n = to_linear(&y, &coeffs).unwrap();
    for s in n.samples.iter().step_by(50) {
        let body = quadrature_reference(f64::cos, 0.0, s.t, 4).unwrap().exp();
        let elem = GrassmannElement::from_flat(Generators::SUPER, &s.state[..32]);
        assert!((elem.body().re - body).abs() < 1e-12);
        let soul = elem.coeff(BLADE_ETA_ETABAR).re;
        assert!((soul - body * g * s.t).abs() < 1e-12, "t={}", s.t);
        assert_eq!(elem.len(), if s.t == 0.0 { 1 } else { 2 });
    }
}
