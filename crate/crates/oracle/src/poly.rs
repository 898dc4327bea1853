//! Multivariate Laurent polynomials with exact complex-rational
//! coefficients, usable as Grassmann coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};
use superriccati::grassmann::Coefficient;

pub type Rational = Ratio<i64>;
pub type Exact = Complex<Rational>;

/// Indeterminates carried by the symbolic derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    C,
    Y,
    L,
    LBar,
    G0,
    G1,
    BigB,
    Phi,
    PhiBar,
    A0,
    A1,
    BigD,
    Psi,
    PsiBar,
    U0,
    U1,
    N,
    V0,
    V1,
}

impl Var {
    pub const ALL: [Var; 21] = [
        Var::A,
        Var::B,
        Var::C,
        Var::Y,
        Var::L,
        Var::LBar,
        Var::G0,
        Var::G1,
        Var::BigB,
        Var::Phi,
        Var::PhiBar,
        Var::A0,
        Var::A1,
        Var::BigD,
        Var::Psi,
        Var::PsiBar,
        Var::U0,
        Var::U1,
        Var::N,
        Var::V0,
        Var::V1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::Y => "y",
            Var::L => "l",
            Var::LBar => "lbar",
            Var::G0 => "g0",
            Var::G1 => "g1",
            Var::BigB => "B",
            Var::Phi => "phi",
            Var::PhiBar => "phibar",
            Var::A0 => "A0",
            Var::A1 => "A1",
            Var::BigD => "D",
            Var::Psi => "psi",
            Var::PsiBar => "psibar",
            Var::U0 => "U0",
            Var::U1 => "U1",
            Var::N => "N",
            Var::V0 => "V0",
            Var::V1 => "V1",
        }
    }

    /// Image under complex conjugation: fermion amplitudes swap with their
    /// barred partners, everything else is real.
    pub fn conj(self) -> Var {
        match self {
            Var::L => Var::LBar,
            Var::LBar => Var::L,
            Var::Phi => Var::PhiBar,
            Var::PhiBar => Var::Phi,
            Var::Psi => Var::PsiBar,
            Var::PsiBar => Var::Psi,
            v => v,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

const VARS: usize = Var::ALL.len();

/// Exponent vector; negative entries are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([i16; VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; VARS]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; VARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> i16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial(e)
    }

    fn recip(&self) -> Monomial {
        Monomial(self.0.map(|e| -e))
    }

    fn conj(&self) -> Monomial {
        let mut e = [0; VARS];
        for v in Var::ALL {
            e[v.conj().index()] = self.0[v.index()];
        }
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = Var::ALL
            .iter()
            .filter(|v| self.exponent(**v) != 0)
            .map(|v| match self.exponent(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{e}", v.name()),
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

pub fn rational(n: i64) -> Exact {
    Complex::new(Ratio::from_integer(n), Ratio::zero())
}

pub fn imaginary_unit() -> Exact {
    Complex::new(Ratio::zero(), Ratio::one())
}

/// Finite sum of `coefficient * monomial`, with zero terms pruned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Exact>,
}

impl Poly {
    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), rational(1))
    }

    pub fn constant(c: Exact) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn integer(n: i64) -> Self {
        Poly::constant(rational(n))
    }

    pub fn term(m: Monomial, c: Exact) -> Self {
        let mut p = Poly::zero();
        p.accumulate(m, c);
        p
    }

    fn accumulate(&mut self, m: Monomial, c: Exact) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&m).map_or(c, |old| old + c);
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Exact)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Exact) -> Poly {
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.accumulate(*m, v * c);
        }
        out
    }

    /// Terms ordered by descending total degree, then by exponent vector
    /// from the highest-priority variable down.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Exact)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, *c)).collect();
        v.sort_by(|(x, _), (y, _)| y.degree().cmp(&x.degree()).then_with(|| y.0.cmp(&x.0)));
        v
    }

    /// Numeric value with every indeterminate replaced by `value(v)`.
    pub fn eval(&self, value: impl Fn(Var) -> Complex<f64>) -> Complex<f64> {
        let mut total = Complex::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex::new(ratio_to_f64(&c.re), ratio_to_f64(&c.im));
            for v in Var::ALL {
                let e = m.exponent(v);
                if e != 0 {
                    term *= value(v).powi(e as i32);
                }
            }
            total += term;
        }
        total
    }
}

fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn format_exact(c: &Exact) -> String {
    let fmt_r = |r: &Rational| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => fmt_r(&c.re),
        (true, false) => format!("{}i", fmt_r(&c.im)),
        (false, false) => format!(
            "({}{}{}i)",
            fmt_r(&c.re),
            if c.im > Ratio::zero() { "+" } else { "" },
            fmt_r(&c.im)
        ),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.im.is_zero() && c.re < Ratio::zero();
            let magnitude = if negative { -*c } else { *c };
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let coeff = format_exact(&magnitude);
            match (coeff.as_str(), *m == Monomial::ONE) {
                (c, true) => f.write_str(c)?,
                ("1", false) => write!(f, "{m}")?,
                (c, false) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::integer(1)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Coefficient for Poly {
    fn conj(&self) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.accumulate(m.conj(), c.conj());
        }
        out
    }

    /// Only single-term polynomials are units of the Laurent ring.
    fn try_recip(&self) -> Option<Self> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) => Some(Poly::term(m.recip(), rational(1) / *c)),
            _ => None,
        }
    }
}
