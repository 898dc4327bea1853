//! [`OdeSystem`] adapters that flatten superfield states for the integrator.

use crate::coeffs::CoefficientTriple;
use crate::grassmann::{Generators, GrassmannElement};
use crate::integrator::{OdeSystem, RhsError};
use crate::superfield::SuperfieldComponents;

use super::{b0_rhs, bernoulli_rhs, component_rhs, second_order_rhs, super_riccati_rhs, EquationLabel};

/// The extended Riccati equation integrated directly on the full
/// `2 * 2^K` real coefficient vector.
pub struct SuperRiccatiSystem<'a> {
    pub coeffs: &'a CoefficientTriple,
}

impl OdeSystem for SuperRiccatiSystem<'_> {
    fn dimension(&self) -> usize {
        2 * Generators::SUPER.dimension()
    }

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        let y = GrassmannElement::from_flat(Generators::SUPER, state);
        super_riccati_rhs(t, &y, self.coeffs)?.write_flat(out);
        Ok(())
    }

    fn label(&self) -> &str {
        EquationLabel::RiccatiSuper.as_str()
    }

    fn columns(&self) -> Vec<String> {
        EquationLabel::RiccatiSuper.columns()
    }
}

/// The component system on `[y, Re l, Im l, g0, g1]`.
pub struct ComponentSystem<'a> {
    pub coeffs: &'a CoefficientTriple,
}

impl OdeSystem for ComponentSystem<'_> {
    fn dimension(&self) -> usize {
        SuperfieldComponents::LEN
    }

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        let d = component_rhs(t, &SuperfieldComponents::from_slice(state), self.coeffs)?;
        out.copy_from_slice(&d.to_array());
        Ok(())
    }

    fn label(&self) -> &str {
        EquationLabel::RiccatiComponents.as_str()
    }

    fn columns(&self) -> Vec<String> {
        EquationLabel::RiccatiComponents.columns()
    }
}

/// The `b = 0` pair system on the `B` block followed by the `D` block.
pub struct B0PairSystem<'a> {
    pub coeffs: &'a CoefficientTriple,
}

impl OdeSystem for B0PairSystem<'_> {
    fn dimension(&self) -> usize {
        2 * SuperfieldComponents::LEN
    }

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        let (b, d) = state.split_at(SuperfieldComponents::LEN);
        let (bd, dd) = b0_rhs(
            t,
            &SuperfieldComponents::from_slice(b),
            &SuperfieldComponents::from_slice(d),
            self.coeffs,
        )?;
        out[..5].copy_from_slice(&bd.to_array());
        out[5..].copy_from_slice(&dd.to_array());
        Ok(())
    }

    fn label(&self) -> &str {
        EquationLabel::B0Pair.as_str()
    }

    fn columns(&self) -> Vec<String> {
        EquationLabel::B0Pair.columns()
    }
}

/// The second-order superfield equation as a first-order system on
/// `(N, N')`, both fully flattened.
pub struct LinearSuperSystem<'a> {
    pub coeffs: &'a CoefficientTriple,
}

impl OdeSystem for LinearSuperSystem<'_> {
    fn dimension(&self) -> usize {
        4 * Generators::SUPER.dimension()
    }

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        let half = state.len() / 2;
        let n = GrassmannElement::from_flat(Generators::SUPER, &state[..half]);
        let nd = GrassmannElement::from_flat(Generators::SUPER, &state[half..]);
        let (d1, d2) = second_order_rhs(t, &n, &nd, self.coeffs)?;
        d1.write_flat(&mut out[..half]);
        d2.write_flat(&mut out[half..]);
        Ok(())
    }

    fn label(&self) -> &str {
        EquationLabel::LinearSuper.as_str()
    }

    fn columns(&self) -> Vec<String> {
        EquationLabel::LinearSuper.columns()
    }
}

/// The linear equation for `D` driven by a tabulated particular solution
/// `B` on a uniform grid. Only grid times can be evaluated, so an RK4
/// step of twice the grid spacing has all its stages on the grid.
pub struct BernoulliDSystem<'a> {
    pub coeffs: &'a CoefficientTriple,
    pub t0: f64,
    pub h: f64,
    pub particular: &'a [GrassmannElement],
}

impl BernoulliDSystem<'_> {
    fn lookup(&self, t: f64) -> Result<&GrassmannElement, RhsError> {
        let pos = (t - self.t0) / self.h;
        let idx = pos.round();
        if (pos - idx).abs() > 1e-6 || idx < 0.0 || idx as usize >= self.particular.len() {
            return Err(RhsError::Precondition(format!(
                "t={t} is not a grid time of the particular solution"
            )));
        }
        Ok(&self.particular[idx as usize])
    }
}

impl OdeSystem for BernoulliDSystem<'_> {
    fn dimension(&self) -> usize {
        2 * Generators::SUPER.dimension()
    }

    fn rhs(&self, t: f64, state: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
        let d = GrassmannElement::from_flat(Generators::SUPER, state);
        bernoulli_rhs(t, &d, self.lookup(t)?, self.coeffs)?.write_flat(out);
        Ok(())
    }

    fn label(&self) -> &str {
        EquationLabel::BernoulliD.as_str()
    }

    fn columns(&self) -> Vec<String> {
        EquationLabel::BernoulliD.columns()
    }
}
