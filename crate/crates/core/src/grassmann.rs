//! Finite Grassmann algebras on the bitmask-blade basis.
//!
//! A blade is a product of distinct generators written in ascending
//! generator order; bit `i` of its mask is set when generator `i` is present.
//! Elements are sparse maps from blades to coefficients with exact-zero
//! entries pruned. The coefficient ring is generic so the same arithmetic
//! runs on `Complex64` values and on symbolic polynomials.
//!
//! Generator order for the shipped equations is `eta = 0`, `etabar = 1`,
//! `beta = 2`, `betabar = 3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ETA: u8 = 0;
pub const ETA_BAR: u8 = 1;
pub const BETA: u8 = 2;
pub const BETA_BAR: u8 = 3;

const GENERATOR_NAMES: [&str; 8] = ["eta", "etabar", "beta", "betabar", "th4", "th5", "th6", "th7"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("generator count {0} outside supported range 2..=8")]
    GeneratorCount(u8),
    #[error("dimension mismatch: K={left} vs K={right}")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("blade {blade:#b} does not exist for K={generators}")]
    BladeOutOfRange { blade: u16, generators: u8 },
    #[error("element with zero body is not invertible")]
    NotInvertible,
    #[error("exponential requires an even-graded element")]
    Grading,
    #[error("grade {grade} exceeds generator count {generators}")]
    GradeOutOfRange { grade: u32, generators: u8 },
}

/// Number of anticommuting generators of an algebra, validated to `2..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Generators(u8);

impl Generators {
    /// The (eta, etabar, beta, betabar) algebra used by every shipped equation.
    pub const SUPER: Generators = Generators(4);

    pub fn new(k: u8) -> Result<Self, AlgebraError> {
        if (2..=8).contains(&k) {
            Ok(Generators(k))
        } else {
            Err(AlgebraError::GeneratorCount(k))
        }
    }

    pub fn count(self) -> u8 {
        self.0
    }

    /// Dimension of the algebra, `2^K`.
    pub fn dimension(self) -> usize {
        1usize << self.0
    }

    pub fn blades(self) -> impl Iterator<Item = Blade> {
        (0..self.dimension() as u16).map(Blade)
    }

    /// Conjugation partner of a generator: `2j <-> 2j+1`. An unpaired last
    /// generator (odd K) is its own partner.
    pub fn partner(self, generator: u8) -> u8 {
        let p = generator ^ 1;
        if p < self.0 {
            p
        } else {
            generator
        }
    }
}

impl TryFrom<u8> for Generators {
    type Error = AlgebraError;
    fn try_from(k: u8) -> Result<Self, Self::Error> {
        Generators::new(k)
    }
}

impl From<Generators> for u8 {
    fn from(g: Generators) -> u8 {
        g.0
    }
}

/// Basis monomial: bit `i` set iff generator `i` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Blade(u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub const fn from_bits(bits: u16) -> Self {
        Blade(bits)
    }

    /// Blade from a set of distinct generator indices, in any order.
    /// Returns `None` on a repeated generator.
    pub fn from_generators(generators: &[u8]) -> Option<Self> {
        let mut bits = 0u16;
        for &g in generators {
            let bit = 1u16 << g;
            if bits & bit != 0 {
                return None;
            }
            bits |= bit;
        }
        Some(Blade(bits))
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }

    /// Generator indices in canonical (ascending) order.
    pub fn generators(self) -> impl Iterator<Item = u8> {
        (0..16u8).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Human-readable name, e.g. `1`, `eta`, `eta*etabar`.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.generators()
            .map(|g| GENERATOR_NAMES.get(g as usize).copied().unwrap_or("th?"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Whether `a * b` picks up a minus sign when merged into canonical order.
/// Counts pairs (i in a, j in b) with i > j. Caller checks for overlap.
fn merge_is_odd(a: u16, b: u16) -> bool {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps % 2 == 1
}

/// Coefficient ring of a Grassmann algebra.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Complex conjugation (identity on real rings).
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` when it does not exist in the ring.
    fn try_recip(&self) -> Option<Self>;
}

impl Coefficient for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Element of the Grassmann algebra over `T`. Absent blades are zero; no
/// stored coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement<T = Complex64> {
    generators: Generators,
    coeffs: BTreeMap<Blade, T>,
}

impl<T: Coefficient> GrassmannElement<T> {
    pub fn zero(generators: Generators) -> Self {
        GrassmannElement {
            generators,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(generators: Generators, value: T) -> Self {
        let mut e = Self::zero(generators);
        e.accumulate(Blade::SCALAR, value);
        e
    }

    pub fn one(generators: Generators) -> Self {
        Self::scalar(generators, T::one())
    }

    /// The generator `index` itself, with unit coefficient.
    pub fn generator(generators: Generators, index: u8) -> Result<Self, AlgebraError> {
        Self::from_terms(generators, [(Blade(1 << index), T::one())])
    }

    /// Sum of `coeff * blade` terms; repeated blades accumulate.
    pub fn from_terms(
        generators: Generators,
        terms: impl IntoIterator<Item = (Blade, T)>,
    ) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(generators);
        for (blade, value) in terms {
            if blade.0 as usize >= generators.dimension() {
                return Err(AlgebraError::BladeOutOfRange {
                    blade: blade.0,
                    generators: generators.count(),
                });
            }
            e.accumulate(blade, value);
        }
        Ok(e)
    }

    fn accumulate(&mut self, blade: Blade, value: T) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.remove(&blade) {
            Some(old) => {
                let sum = old + value;
                if !sum.is_zero() {
                    self.coeffs.insert(blade, sum);
                }
            }
            None => {
                self.coeffs.insert(blade, value);
            }
        }
    }

    pub fn generators(&self) -> Generators {
        self.generators
    }

    pub fn coeff(&self, blade: Blade) -> T {
        self.coeffs.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Parity shared by every stored blade; `None` for mixed elements.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let even = self.coeffs.keys().filter(|b| b.is_even()).count();
        if even == self.coeffs.len() {
            Some(Parity::Even)
        } else if even == 0 {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.generators);
        for (b, c) in &self.coeffs {
            out.accumulate(*b, c.clone() * factor.clone());
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.generators == other.generators {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                left: self.generators.count(),
                right: other.generators.count(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.accumulate(*b, -c.clone());
        }
        Ok(out)
    }

    /// Grassmann product. Blades sharing a generator annihilate; otherwise
    /// the merged blade carries the sign of the merge permutation.
    pub fn gmul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.generators);
        for (ba, ca) in &self.coeffs {
            for (bb, cb) in &other.coeffs {
                if ba.0 & bb.0 != 0 {
                    continue;
                }
                let prod = ca.clone() * cb.clone();
                let prod = if merge_is_odd(ba.0, bb.0) { -prod } else { prod };
                out.accumulate(Blade(ba.0 | bb.0), prod);
            }
        }
        Ok(out)
    }

    /// Antilinear involution: conjugates coefficients, swaps each generator
    /// with its partner and reverses generator order inside every blade.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.generators);
        for (b, c) in &self.coeffs {
            let mapped: Vec<u8> = b
                .generators()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .map(|g| self.generators.partner(g))
                .collect();
            let mut inversions = 0usize;
            for i in 0..mapped.len() {
                for j in i + 1..mapped.len() {
                    if mapped[i] > mapped[j] {
                        inversions += 1;
                    }
                }
            }
            let blade = Blade::from_generators(&mapped).expect("partner map is a bijection");
            let value = c.conj();
            out.accumulate(blade, if inversions % 2 == 1 { -value } else { value });
        }
        out
    }

    /// Splits into the empty-blade coefficient and the nilpotent remainder.
    pub fn body_soul(&self) -> (T, Self) {
        let mut soul = self.clone();
        let body = soul.coeffs.remove(&Blade::SCALAR).unwrap_or_else(T::zero);
        (body, soul)
    }

    pub fn body(&self) -> T {
        self.coeff(Blade::SCALAR)
    }

    /// Inverse via the terminating series `(1/N) * sum_k (-soul/N)^k`.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let (body, soul) = self.body_soul();
        let inv_body = body.try_recip().ok_or(AlgebraError::NotInvertible)?;
        let ratio = soul.scale(&-inv_body.clone());
        let mut sum = Self::one(self.generators);
        let mut power = Self::one(self.generators);
        // soul^k vanishes for k > K
        for _ in 0..self.generators.count() {
            power = power.gmul(&ratio)?;
            if power.is_zero() {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        Ok(sum.scale(&inv_body))
    }

    pub fn grade_project(&self, grade: u32) -> Result<Self, AlgebraError> {
        if grade > self.generators.count() as u32 {
            return Err(AlgebraError::GradeOutOfRange {
                grade,
                generators: self.generators.count(),
            });
        }
        Ok(GrassmannElement {
            generators: self.generators,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| b.grade() == grade)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        })
    }
}

impl GrassmannElement<Complex64> {
    /// `exp(body) * sum_k soul^k / k!` for even-graded input.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if self.parity() != Some(Parity::Even) {
            return Err(AlgebraError::Grading);
        }
        let (body, soul) = self.body_soul();
        let mut sum = Self::one(self.generators);
        let mut power = Self::one(self.generators);
        for k in 1..=self.generators.count() {
            power = power.gmul(&soul)?.scale(&Complex64::new(1.0 / k as f64, 0.0));
            if power.is_zero() {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        Ok(sum.scale(&body.exp()))
    }

    pub fn real_scalar(generators: Generators, value: f64) -> Self {
        Self::scalar(generators, Complex64::new(value, 0.0))
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(&Complex64::new(factor, 0.0))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance, blade by blade.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.generators
            .blades()
            .map(|b| (self.coeff(b) - other.coeff(b)).norm())
            .fold(0.0, f64::max)
    }

    /// Flat real vector `[re(blade 0), im(blade 0), re(blade 1), ...]`.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = vec![0.0; 2 * self.generators.dimension()];
        self.write_flat(&mut out);
        out
    }

    pub fn write_flat(&self, out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        for (b, c) in &self.coeffs {
            let i = 2 * b.0 as usize;
            out[i] = c.re;
            out[i + 1] = c.im;
        }
    }

    /// Inverse of [`to_flat`](Self::to_flat). The slice length must be `2 * 2^K`.
    pub fn from_flat(generators: Generators, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), 2 * generators.dimension(), "flat state length");
        let mut e = Self::zero(generators);
        for (i, pair) in flat.chunks_exact(2).enumerate() {
            e.accumulate(Blade(i as u16), Complex64::new(pair[0], pair[1]));
        }
        e
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<T: Coefficient> $trait for &GrassmannElement<T> {
            type Output = GrassmannElement<T>;
            /// Panics on mismatched generator counts; use the `try_` form otherwise.
            fn $method(self, rhs: Self) -> GrassmannElement<T> {
                self.$inner(rhs).expect("operands from different algebras")
            }
        }

        impl<T: Coefficient> $trait for GrassmannElement<T> {
            type Output = GrassmannElement<T>;
            fn $method(self, rhs: Self) -> GrassmannElement<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, gmul);

impl<T: Coefficient> Neg for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn neg(self) -> GrassmannElement<T> {
        self.scale(&-T::one())
    }
}

impl<T: Coefficient> Neg for GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn neg(self) -> GrassmannElement<T> {
        -&self
    }
}

/// Free-function form of [`GrassmannElement::gmul`].
pub fn gmul<T: Coefficient>(
    a: &GrassmannElement<T>,
    b: &GrassmannElement<T>,
) -> Result<GrassmannElement<T>, AlgebraError> {
    a.gmul(b)
}

impl fmt::Display for GrassmannElement<Complex64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            if b.0 != 0 {
                write!(f, "*{b}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    blade: u16,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct WireElement {
    #[serde(rename = "K")]
    k: u8,
    coeffs: Vec<WireTerm>,
}

impl Serialize for GrassmannElement<Complex64> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireElement {
            k: self.generators.count(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| WireTerm {
                    blade: b.0,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GrassmannElement<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = WireElement::deserialize(deserializer)?;
        let generators = Generators::new(wire.k).map_err(D::Error::custom)?;
        GrassmannElement::from_terms(
            generators,
            wire.coeffs
                .into_iter()
                .map(|t| (Blade(t.blade), Complex64::new(t.re, t.im))),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = GrassmannElement<Complex64>;

    fn g(i: u8) -> E {
        E::generator(Generators::SUPER, i).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> E {
        E::one(Generators::SUPER)
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        let eta_etabar = &g(ETA) * &g(ETA_BAR);
        assert_eq!(eta_etabar.coeff(Blade::from_bits(0b11)), c(1.0, 0.0));
        let swapped = &g(ETA_BAR) * &g(ETA);
        assert_eq!(swapped, -eta_etabar);
        assert!((&g(ETA) * &g(ETA)).is_zero());
    }

    #[test]
    fn nilpotent_pair_product() {
        let n = &g(ETA) * &g(ETA_BAR);
        let p = &one() + &n;
        let m = &one() - &n;
        assert_eq!(&p * &m, one());
    }

    #[test]
    fn fermion_bilinear_square() {
        // (i eta betabar + i etabar beta)^2 = 2 eta etabar betabar beta
        let i = c(0.0, 1.0);
        let f = (&g(ETA) * &g(BETA_BAR)).scale(&i) + (&g(ETA_BAR) * &g(BETA)).scale(&i);
        let expected = (&(&(&g(ETA) * &g(ETA_BAR)) * &g(BETA_BAR)) * &g(BETA)).scale_real(2.0);
        assert_eq!(&f * &f, expected);
        // eta etabar betabar beta = - blade 0b1111
        assert_eq!(expected.coeff(Blade::from_bits(0b1111)), c(-2.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = E::one(Generators::new(2).unwrap());
        let b = E::one(Generators::new(3).unwrap());
        assert_eq!(
            a.gmul(&b),
            Err(AlgebraError::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn generator_count_validated() {
        assert!(Generators::new(1).is_err());
        assert!(Generators::new(9).is_err());
        assert_eq!(Generators::new(8).unwrap().dimension(), 256);
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(g(ETA).dagger(), g(ETA_BAR));
        let n = &g(ETA) * &g(ETA_BAR);
        assert_eq!(n.dagger(), n);
        let i_body = E::scalar(Generators::SUPER, c(1.0, 1.0));
        assert_eq!(i_body.dagger(), E::scalar(Generators::SUPER, c(1.0, -1.0)));
    }

    #[test]
    fn body_soul_split() {
        let n = (&g(ETA) * &g(ETA_BAR)).scale_real(2.0);
        let x = &E::real_scalar(Generators::SUPER, 3.0) + &n;
        let (body, soul) = x.body_soul();
        assert_eq!(body, c(3.0, 0.0));
        assert_eq!(soul, n);
        let (b, s) = g(ETA).body_soul();
        assert_eq!((b, s), (c(0.0, 0.0), g(ETA)));
        let (b, s) = E::zero(Generators::SUPER).body_soul();
        assert!(b.is_zero() && s.is_zero());
    }

    #[test]
    fn inverse_examples() {
        let n = &g(ETA) * &g(ETA_BAR);
        assert_eq!((&one() + &n).inverse().unwrap(), &one() - &n);

        // N = 2, V = 6: inverse = 1/2 - (3/2) eta etabar
        let x = &E::real_scalar(Generators::SUPER, 2.0) + &n.scale_real(6.0);
        let inv = x.inverse().unwrap();
        assert_eq!(inv.body(), c(0.5, 0.0));
        assert_eq!(inv.coeff(Blade::from_bits(0b11)), c(-1.5, 0.0));

        assert_eq!(
            E::zero(Generators::SUPER).inverse(),
            Err(AlgebraError::NotInvertible)
        );
        assert_eq!(g(ETA).inverse(), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn exp_examples() {
        let n = (&g(ETA) * &g(ETA_BAR)).scale_real(0.7);
        assert_eq!(n.exp().unwrap(), &one() + &n);
        assert_eq!(g(ETA).exp(), Err(AlgebraError::Grading));
        assert_eq!((&one() + &g(ETA)).exp(), Err(AlgebraError::Grading));
    }

    #[test]
    fn grade_projection() {
        let n = &g(ETA) * &g(ETA_BAR);
        let x = &(&one() + &g(ETA)) + &n;
        assert_eq!(x.grade_project(1).unwrap(), g(ETA));
        assert_eq!(x.grade_project(0).unwrap(), one());
        assert!(x.grade_project(5).is_err());
    }

    #[test]
    fn blade_names() {
        assert_eq!(Blade::SCALAR.name(), "1");
        assert_eq!(Blade::from_bits(0b1001).name(), "eta*betabar");
        assert_eq!(Blade::from_generators(&[1, 0]), Some(Blade::from_bits(3)));
        assert_eq!(Blade::from_generators(&[1, 1]), None);
    }

    #[test]
    fn json_wire_format() {
        let x = &E::real_scalar(Generators::SUPER, 3.0) + &(&g(ETA) * &g(ETA_BAR)).scale(&c(0.0, 2.0));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"K":4,"coeffs":[{"blade":0,"re":3.0,"im":0.0},{"blade":3,"re":0.0,"im":2.0}]}"#
        );
        let back: E = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<E>(r#"{"K":2,"coeffs":[{"blade":9,"re":1.0,"im":0.0}]}"#).is_err());
    }

    #[test]
    fn flat_round_trip() {
        let x = &E::real_scalar(Generators::SUPER, 3.0) + &(&g(ETA) * &g(BETA_BAR)).scale(&c(0.5, -2.0));
        let flat = x.to_flat();
        assert_eq!(flat.len(), 32);
        assert_eq!(E::from_flat(Generators::SUPER, &flat), x);
    }
}
