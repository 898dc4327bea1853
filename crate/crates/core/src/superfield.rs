//! Component view of a real superfield
//! `Y = y + i eta lbar + i etabar l + eta etabar G`.
//!
//! Fermionic fields are odd: `l = l * beta`, `lbar = conj(l) * betabar`.
//! Their bilinear `lbar l` is proportional to `betabar beta`, so `G` carries
//! a soul part as well: `G = g0 + g1 * betabar beta`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::{Blade, Generators, GrassmannElement};

/// `eta * betabar`, carries `i * conj(l)`.
pub const BLADE_ETA_BETABAR: Blade = Blade::from_bits(0b1001);
/// `etabar * beta`, carries `i * l`.
pub const BLADE_ETABAR_BETA: Blade = Blade::from_bits(0b0110);
/// `eta * etabar`, carries `g0`.
pub const BLADE_ETA_ETABAR: Blade = Blade::from_bits(0b0011);
/// `eta * etabar * beta * betabar`; `eta etabar betabar beta` is its negative,
/// so this blade carries `-g1`.
pub const BLADE_TOP: Blade = Blade::from_bits(0b1111);

pub const ANSATZ_BLADES: [Blade; 5] = [
    Blade::SCALAR,
    BLADE_ETA_BETABAR,
    BLADE_ETABAR_BETA,
    BLADE_ETA_ETABAR,
    BLADE_TOP,
];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Relative tolerance for the reality consistency check in [`to_components`].
const REALITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error("superfield components live in the K=4 algebra, got K={0}")]
    Generators(u8),
    #[error("support on blade {0} lies outside the superfield ansatz")]
    OutsideAnsatz(Blade),
    #[error("component {component} is not real: {value}")]
    NotReal {
        component: &'static str,
        value: Complex64,
    },
}

/// `(y, l, g0, g1)` of a real superfield; `lbar` is always `conj(l)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SuperfieldComponents {
    pub y: f64,
    #[serde(default)]
    pub l: Complex64,
    #[serde(default)]
    pub g0: f64,
    #[serde(default)]
    pub g1: f64,
}

impl SuperfieldComponents {
    pub const LEN: usize = 5;

    pub fn new(y: f64, l: Complex64, g0: f64, g1: f64) -> Self {
        SuperfieldComponents { y, l, g0, g1 }
    }

    pub fn body(y: f64) -> Self {
        SuperfieldComponents {
            y,
            ..Default::default()
        }
    }

    /// Flat layout `[y, Re l, Im l, g0, g1]`.
    pub fn to_array(&self) -> [f64; 5] {
        [self.y, self.l.re, self.l.im, self.g0, self.g1]
    }

    pub fn from_slice(s: &[f64]) -> Self {
        SuperfieldComponents {
            y: s[0],
            l: Complex64::new(s[1], s[2]),
            g0: s[3],
            g1: s[4],
        }
    }

    /// Column names for the flat layout, with an optional field-name set.
    pub fn column_names(names: [&str; 4]) -> [String; 5] {
        let [body, fermion, g0, g1] = names;
        [
            body.to_string(),
            format!("re_{fermion}"),
            format!("im_{fermion}"),
            g0.to_string(),
            g1.to_string(),
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn from_components(c: &SuperfieldComponents) -> GrassmannElement {
    GrassmannElement::from_terms(
        Generators::SUPER,
        [
            (Blade::SCALAR, Complex64::new(c.y, 0.0)),
            (BLADE_ETA_BETABAR, I * c.l.conj()),
            (BLADE_ETABAR_BETA, I * c.l),
            (BLADE_ETA_ETABAR, Complex64::new(c.g0, 0.0)),
            (BLADE_TOP, Complex64::new(-c.g1, 0.0)),
        ],
    )
    .expect("ansatz blades exist for K=4")
}

fn real_part(component: &'static str, v: Complex64) -> Result<f64, ShapeError> {
    if v.im.abs() > REALITY_SLACK * (1.0 + v.re.abs()) {
        Err(ShapeError::NotReal { component, value: v })
    } else {
        Ok(v.re)
    }
}

/// Reads `(y, l, g0, g1)` back from an element of the ansatz subspace.
///
/// Fails if the element has support outside the five ansatz blades or if the
/// reality structure is broken beyond round-off.
pub fn to_components(e: &GrassmannElement) -> Result<SuperfieldComponents, ShapeError> {
    if e.generators() != Generators::SUPER {
        return Err(ShapeError::Generators(e.generators().count()));
    }
    if let Some((blade, _)) = e.terms().find(|(b, _)| !ANSATZ_BLADES.contains(b)) {
        return Err(ShapeError::OutsideAnsatz(blade));
    }
    let l = -I * e.coeff(BLADE_ETABAR_BETA);
    let lbar = -I * e.coeff(BLADE_ETA_BETABAR);
    if (lbar - l.conj()).norm() > REALITY_SLACK * (1.0 + l.norm()) {
        return Err(ShapeError::NotReal {
            component: "lbar - conj(l)",
            value: lbar - l.conj(),
        });
    }
    Ok(SuperfieldComponents {
        y: real_part("y", e.body())?,
        l,
        g0: real_part("g0", e.coeff(BLADE_ETA_ETABAR))?,
        g1: -real_part("g1", e.coeff(BLADE_TOP))?,
    })
}

/// True iff `max |e - dagger(e)| <= tol`.
pub fn check_reality(e: &GrassmannElement, tol: f64) -> bool {
    e.max_abs_diff(&e.dagger()) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{BETA, BETA_BAR, ETA, ETA_BAR};

    fn g(i: u8) -> GrassmannElement {
        GrassmannElement::generator(Generators::SUPER, i).unwrap()
    }

    #[test]
    fn scalar_component() {
        let e = from_components(&SuperfieldComponents::body(1.0));
        assert_eq!(e, GrassmannElement::one(Generators::SUPER));
    }

    #[test]
    fn fermion_component() {
        let c = SuperfieldComponents::new(0.0, Complex64::new(1.0, 0.0), 0.0, 0.0);
        let expected = (&g(ETA) * &g(BETA_BAR)).scale(&I) + (&g(ETA_BAR) * &g(BETA)).scale(&I);
        assert_eq!(from_components(&c), expected);
    }

    #[test]
    fn auxiliary_soul_sign() {
        let c = SuperfieldComponents::new(0.0, Complex64::new(0.0, 0.0), 0.0, 1.0);
        let expected = &(&(&g(ETA) * &g(ETA_BAR)) * &g(BETA_BAR)) * &g(BETA);
        assert_eq!(from_components(&c), expected);
    }

    #[test]
    fn reads_body_and_auxiliary() {
        let e = GrassmannElement::one(Generators::SUPER) + (&g(ETA) * &g(ETA_BAR)).scale_real(5.0);
        assert_eq!(
            to_components(&e).unwrap(),
            SuperfieldComponents::new(1.0, Complex64::new(0.0, 0.0), 5.0, 0.0)
        );
    }

    #[test]
    fn rejects_support_outside_ansatz() {
        let e = g(ETA);
        assert_eq!(
            to_components(&e),
            Err(ShapeError::OutsideAnsatz(Blade::from_bits(1)))
        );
        let e = &g(BETA) * &g(BETA_BAR);
        assert!(matches!(to_components(&e), Err(ShapeError::OutsideAnsatz(_))));
    }

    #[test]
    fn rejects_unpaired_fermions() {
        let e = (&g(ETA_BAR) * &g(BETA)).scale(&I);
        assert!(matches!(to_components(&e), Err(ShapeError::NotReal { .. })));
    }

    #[test]
    fn reality_examples() {
        let c = SuperfieldComponents::new(0.3, Complex64::new(-1.5, 2.25), 4.0, -0.5);
        assert!(check_reality(&from_components(&c), 0.0));
        let e = GrassmannElement::scalar(Generators::SUPER, Complex64::new(1.0, 1.0));
        assert!(!check_reality(&e, 1e-12));
    }
}
