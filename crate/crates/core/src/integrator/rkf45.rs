use super::{check_divergence, IntegrateError, OdeProblem, Stepper, StepperConfig, Trajectory};

// Fehlberg 4(5) tableau.
const C: [f64; 6] = [0.0, 0.25, 0.375, 12.0 / 13.0, 1.0, 0.5];
const A: [[f64; 5]; 6] = [
    [0.0, 0.0, 0.0, 0.0, 0.0],
    [0.25, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0],
    [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0],
    [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0],
    [-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0],
];
const B5: [f64; 6] = [
    16.0 / 135.0,
    0.0,
    6656.0 / 12825.0,
    28561.0 / 56430.0,
    -9.0 / 50.0,
    2.0 / 55.0,
];
const B4: [f64; 6] = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -0.2, 0.0];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Adaptive Runge-Kutta-Fehlberg 4(5). The fifth-order solution is
/// propagated; the embedded fourth-order one only drives step control.
#[derive(Debug, Clone, PartialEq)]
pub struct Rkf45 {
    pub h0: f64,
    pub atol: f64,
    pub rtol: f64,
    pub hmin: f64,
    pub hmax: f64,
    pub record_every: usize,
}

impl Default for Rkf45 {
    fn default() -> Self {
        Rkf45 {
            h0: 1e-3,
            atol: 1e-10,
            rtol: 1e-10,
            hmin: 1e-12,
            hmax: 0.1,
            record_every: 1,
        }
    }
}

impl Rkf45 {
    pub const NAME: &'static str = "rkf45-adaptive";

    pub fn from_config(c: &StepperConfig) -> Result<Self, IntegrateError> {
        let d = Rkf45::default();
        let s = Rkf45 {
            h0: c.h0.or(c.h).unwrap_or(d.h0),
            atol: c.atol.unwrap_or(d.atol),
            rtol: c.rtol.unwrap_or(d.rtol),
            hmin: c.hmin.unwrap_or(d.hmin),
            hmax: c.hmax.unwrap_or(d.hmax),
            record_every: c.record_every,
        };
        let bad = |msg: &str| Err(IntegrateError::Config(msg.to_string()));
        if !(s.atol > 0.0 && s.rtol > 0.0) {
            return bad("atol and rtol must be positive");
        }
        if !(s.hmin > 0.0 && s.hmin <= s.hmax) {
            return bad("need 0 < hmin <= hmax");
        }
        if s.h0.is_nan() || s.h0 <= 0.0 {
            return bad("h0 must be positive");
        }
        if s.record_every == 0 {
            return bad("record_every must be >= 1");
        }
        Ok(s)
    }
}

impl Stepper for Rkf45 {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn config(&self) -> StepperConfig {
        StepperConfig {
            method: Self::NAME.to_string(),
            h: None,
            h0: Some(self.h0),
            atol: Some(self.atol),
            rtol: Some(self.rtol),
            hmin: Some(self.hmin),
            hmax: Some(self.hmax),
            record_every: self.record_every,
        }
    }

    fn integrate(&self, problem: &OdeProblem<'_>) -> Result<Trajectory, IntegrateError> {
        problem.validate()?;
        let n = problem.initial.len();
        let mut traj = problem.trajectory(self.config());
        let mut k = vec![vec![0.0; n]; 6];
        let mut tmp = vec![0.0; n];
        let mut y5 = vec![0.0; n];
        let mut y = problem.initial.clone();
        let mut t = problem.t0;
        let mut h = self.h0.clamp(self.hmin, self.hmax);
        let mut accepted = 0usize;
        traj.push(t, y.clone());

        while t < problem.t1 {
            let remaining = problem.t1 - t;
            let last = h >= remaining;
            let h_try = if last { remaining } else { h };

            for s in 0..6 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += h_try * A[s][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                problem.eval(t + C[s] * h_try, &tmp, &mut k[s])?;
            }

            let mut ratio = 0.0f64;
            for i in 0..n {
                let mut hi = y[i];
                let mut lo = y[i];
                for s in 0..6 {
                    hi += h_try * B5[s] * k[s][i];
                    lo += h_try * B4[s] * k[s][i];
                }
                y5[i] = hi;
                let scale = self.atol + self.rtol * y[i].abs();
                ratio = ratio.max((hi - lo).abs() / scale);
            }
            if !ratio.is_finite() {
                check_divergence(t + h_try, t, &y5)?;
                ratio = f64::MAX;
            }

            let factor = if ratio == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * ratio.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };

            if ratio <= 1.0 {
                check_divergence(t + h_try, t, &y5)?;
                t = if last { problem.t1 } else { t + h_try };
                std::mem::swap(&mut y, &mut y5);
                accepted += 1;
                if accepted.is_multiple_of(self.record_every) || t >= problem.t1 {
                    traj.push(t, y.clone());
                }
                h = (h_try * factor).min(self.hmax);
                if last {
                    break;
                }
                // a final sliver below hmin is allowed
                h = h.max(self.hmin.min(problem.t1 - t));
            } else {
                let next = h_try * factor;
                if next < self.hmin.min(remaining * MIN_FACTOR) {
                    return Err(IntegrateError::StepUnderflow { t, h: next });
                }
                h = next;
            }
        }
        Ok(traj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{OdeSystem, RhsError, Rk4};

    struct Decay;
    impl OdeSystem for Decay {
        fn dimension(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, s: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
            out[0] = -s[0] * s[0];
            Ok(())
        }
    }

    struct Blowup;
    impl OdeSystem for Blowup {
        fn dimension(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, s: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
            out[0] = 1.0 + s[0] * s[0];
            Ok(())
        }
    }

    #[test]
    fn inverse_decay_closed_form() {
        let traj = Rkf45::default()
            .integrate(&OdeProblem::new(&Decay, 0.0, 1.0, vec![1.0]))
            .unwrap();
        assert_eq!(traj.last().t, 1.0);
        assert!((traj.last().state[0] - 0.5).abs() < 1e-8);
        for s in &traj.samples {
            assert!((s.state[0] - 1.0 / (1.0 + s.t)).abs() < 1e-8);
        }
    }

    #[test]
    fn agrees_with_tight_fixed_step() {
        let adaptive = Rkf45::default()
            .integrate(&OdeProblem::new(&Decay, 0.0, 3.0, vec![2.0]))
            .unwrap();
        let fixed = Rk4::new(1e-4)
            .integrate(&OdeProblem::new(&Decay, 0.0, 3.0, vec![2.0]))
            .unwrap();
        let d = (adaptive.last().state[0] - fixed.last().state[0]).abs();
        assert!(d < 10.0 * Rkf45::default().atol, "{d}");
    }

    #[test]
    fn pole_is_located() {
        // y = tan t
        let err = Rkf45::default()
            .integrate(&OdeProblem::new(&Blowup, 0.0, 3.0, vec![0.0]))
            .unwrap_err();
        let t = err.location().unwrap();
        assert!(t < std::f64::consts::FRAC_PI_2 + 0.1 && t > 1.5, "{err}");
    }

    #[test]
    fn config_validation() {
        let mut c = StepperConfig::rkf45(1e-8, 1e-8);
        assert!(Rkf45::from_config(&c).is_ok());
        c.atol = Some(0.0);
        assert!(Rkf45::from_config(&c).is_err());
        c.atol = Some(1e-8);
        c.hmin = Some(1.0);
        c.hmax = Some(0.5);
        assert!(Rkf45::from_config(&c).is_err());
    }
}
