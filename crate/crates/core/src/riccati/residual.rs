use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coeffs::CoefficientTriple;
use crate::grassmann::{Blade, GrassmannElement};
use crate::integrator::Trajectory;

use super::{super_riccati_rhs, superfield_samples, uniform_step, RiccatiError};

/// Five-point stencils need two neighbours on each side.
pub const MIN_RESIDUAL_POINTS: usize = 5;

/// Blade-by-blade maximum of `|Y'_fd - f(Y)|` over interior grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub per_blade: BTreeMap<Blade, f64>,
    /// Grid spacing.
    pub h: f64,
    /// Nominal `h^4` truncation floor of the finite-difference stencils.
    pub fd_floor: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ResidualReport {
    pub(crate) fn from_residuals(per_blade: BTreeMap<Blade, f64>, h: f64, tolerance: f64) -> Self {
        let max = per_blade.values().copied().fold(0.0, f64::max);
        ResidualReport {
            per_blade,
            h,
            fd_floor: h.powi(4),
            tolerance,
            passed: max <= tolerance,
        }
    }

    pub fn max(&self) -> f64 {
        self.per_blade.values().copied().fold(0.0, f64::max)
    }
}

impl Serialize for ResidualReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Blades<'a>(&'a BTreeMap<Blade, f64>);
        impl Serialize for Blades<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (b, v) in self.0 {
                    m.serialize_entry(&b.name(), v)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(6))?;
        m.serialize_entry("max", &self.max())?;
        m.serialize_entry("per_blade", &Blades(&self.per_blade))?;
        m.serialize_entry("h", &self.h)?;
        m.serialize_entry("fd_floor", &self.fd_floor)?;
        m.serialize_entry("tolerance", &self.tolerance)?;
        m.serialize_entry("passed", &self.passed)?;
        m.end()
    }
}

/// Fourth-order central first derivative at `i`.
pub(crate) fn fd_first(v: &[GrassmannElement], i: usize, h: f64) -> GrassmannElement {
    let num = &(&v[i - 2] - &v[i + 2]) + &(&v[i + 1] - &v[i - 1]).scale_real(8.0);
    num.scale_real(1.0 / (12.0 * h))
}

/// Fourth-order central second derivative at `i`.
pub(crate) fn fd_second(v: &[GrassmannElement], i: usize, h: f64) -> GrassmannElement {
    let outer = -(&v[i - 2] + &v[i + 2]);
    let inner = (&v[i - 1] + &v[i + 1]).scale_real(16.0);
    let centre = v[i].scale_real(-30.0);
    (&(&outer + &inner) + &centre).scale_real(1.0 / (12.0 * h * h))
}

pub(crate) fn accumulate_residual(per_blade: &mut BTreeMap<Blade, f64>, r: &GrassmannElement) {
    for (b, c) in r.terms() {
        let e = per_blade.entry(b).or_insert(0.0);
        *e = e.max(c.norm());
    }
}

/// Extended-Riccati residual of a `Y` trajectory on a uniform grid.
pub fn riccati_residual(
    traj: &Trajectory,
    coeffs: &CoefficientTriple,
    tolerance: f64,
) -> Result<ResidualReport, RiccatiError> {
    let h = uniform_step(traj, MIN_RESIDUAL_POINTS)?;
    let samples = superfield_samples(traj)?;
    let values: Vec<GrassmannElement> = samples.iter().map(|(_, y)| y.clone()).collect();
    let mut per_blade = BTreeMap::new();
    for (b, _) in values.iter().flat_map(|y| y.terms()) {
        per_blade.entry(b).or_insert(0.0);
    }
    for i in 2..values.len() - 2 {
        let t = samples[i].0;
        let rhs = super_riccati_rhs(t, &values[i], coeffs).map_err(RiccatiError::rhs(t))?;
        accumulate_residual(&mut per_blade, &(&fd_first(&values, i, h) - &rhs));
    }
    Ok(ResidualReport::from_residuals(per_blade, h, tolerance))
}
