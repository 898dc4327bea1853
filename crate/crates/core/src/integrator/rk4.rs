use super::{check_divergence, IntegrateError, OdeProblem, OdeSystem, Stepper, StepperConfig, Trajectory};

/// One classical fourth-order Runge-Kutta step of size `h` from `(t, state)`.
pub fn rk4_step(system: &dyn OdeSystem, t: f64, state: &[f64], h: f64) -> Result<Vec<f64>, IntegrateError> {
    let problem = OdeProblem::new(system, t, t + h, state.to_vec());
    let mut scratch = Scratch::new(state.len());
    step(&problem, t, state, h, &mut scratch)
}

struct Scratch {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            tmp: vec![0.0; n],
        }
    }
}

fn step(
    problem: &OdeProblem<'_>,
    t: f64,
    y: &[f64],
    h: f64,
    s: &mut Scratch,
) -> Result<Vec<f64>, IntegrateError> {
    let n = y.len();
    problem.eval(t, y, &mut s.k1)?;
    offset(&mut s.tmp, y, 0.5 * h, &s.k1);
    problem.eval(t + 0.5 * h, &s.tmp, &mut s.k2)?;
    offset(&mut s.tmp, y, 0.5 * h, &s.k2);
    problem.eval(t + 0.5 * h, &s.tmp, &mut s.k3)?;
    offset(&mut s.tmp, y, h, &s.k3);
    problem.eval(t + h, &s.tmp, &mut s.k4)?;
    Ok((0..n)
        .map(|i| y[i] + h / 6.0 * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]))
        .collect())
}

fn offset(out: &mut [f64], y: &[f64], h: f64, k: &[f64]) {
    for ((o, yi), ki) in out.iter_mut().zip(y).zip(k) {
        *o = yi + h * ki;
    }
}

/// Fixed-step RK4. Takes `ceil((t1 - t0) / h)` steps, the last one shortened
/// to land on `t1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rk4 {
    pub h: f64,
    pub record_every: usize,
}

impl Rk4 {
    pub const NAME: &'static str = "rk4-fixed";

    pub fn new(h: f64) -> Self {
        Rk4 { h, record_every: 1 }
    }

    pub fn from_config(c: &StepperConfig) -> Result<Self, IntegrateError> {
        let h =
            c.h.ok_or_else(|| IntegrateError::Config("rk4-fixed requires `h`".into()))?;
        if !(h > 0.0 && h.is_finite()) {
            return Err(IntegrateError::Config(format!(
                "step size h={h} must be positive"
            )));
        }
        if c.record_every == 0 {
            return Err(IntegrateError::Config("record_every must be >= 1".into()));
        }
        Ok(Rk4 {
            h,
            record_every: c.record_every,
        })
    }

    /// Number of steps covering `span`; a span that is an integer multiple of
    /// `h` up to round-off gets no sliver step.
    pub fn step_count(&self, span: f64) -> usize {
        let ratio = span / self.h;
        let nearest = ratio.round();
        let n = if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
            nearest
        } else {
            ratio.ceil()
        };
        (n as usize).max(1)
    }
}

impl Stepper for Rk4 {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn config(&self) -> StepperConfig {
        StepperConfig::rk4(self.h).with_record_every(self.record_every)
    }

    fn integrate(&self, problem: &OdeProblem<'_>) -> Result<Trajectory, IntegrateError> {
        problem.validate()?;
        let mut traj = problem.trajectory(self.config());
        let n = self.step_count(problem.t1 - problem.t0);
        let mut scratch = Scratch::new(problem.initial.len());
        let mut y = problem.initial.clone();
        traj.push(problem.t0, y.clone());
        let mut t = problem.t0;
        for k in 1..=n {
            let t_next = if k == n {
                problem.t1
            } else {
                problem.t0 + k as f64 * self.h
            };
            y = step(problem, t, &y, t_next - t, &mut scratch)?;
            check_divergence(t_next, t, &y)?;
            t = t_next;
            if k % self.record_every == 0 || k == n {
                traj.push(t, y.clone());
            }
        }
        Ok(traj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::RhsError;

    struct Lin(f64);
    impl OdeSystem for Lin {
        fn dimension(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, s: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
            out[0] = self.0 * s[0];
            Ok(())
        }
    }

    struct Constant(f64);
    impl OdeSystem for Constant {
        fn dimension(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, _s: &[f64], out: &mut [f64]) -> Result<(), RhsError> {
            out[0] = self.0;
            Ok(())
        }
    }

    #[test]
    fn zero_rhs_keeps_state() {
        assert_eq!(rk4_step(&Constant(0.0), 0.0, &[7.0], 0.3).unwrap(), vec![7.0]);
    }

    #[test]
    fn constant_rhs_is_exact() {
        assert_eq!(rk4_step(&Constant(1.0), 0.0, &[0.0], 0.5).unwrap(), vec![0.5]);
    }

    #[test]
    fn exponential_single_step() {
        // stages: k1 = 1, k2 = 1.05, k3 = 1.0525, k4 = 1.10525
        let expected = 1.0 + 0.1 / 6.0 * (1.0 + 2.0 * 1.05 + 2.0 * 1.0525 + 1.10525);
        let y = rk4_step(&Lin(1.0), 0.0, &[1.0], 0.1).unwrap()[0];
        assert!((y - expected).abs() < 1e-15);
        assert!((y - 1.105_170_833_333_333).abs() < 1e-14);
    }

    #[test]
    fn final_partial_step_lands_on_t1() {
        let sys = Constant(1.0);
        let traj = Rk4::new(0.3)
            .integrate(&OdeProblem::new(&sys, 0.0, 1.0, vec![0.0]))
            .unwrap();
        let times = traj.times();
        assert_eq!(times.len(), 5);
        assert_eq!(*times.last().unwrap(), 1.0);
        assert!((traj.last().state[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_multiple_has_no_sliver() {
        assert_eq!(Rk4::new(1e-3).step_count(2.0), 2000);
        assert_eq!(Rk4::new(0.1).step_count(1.0), 10);
        assert_eq!(Rk4::new(0.3).step_count(1.0), 4);
    }

    #[test]
    fn record_every_thins_output() {
        let sys = Constant(1.0);
        let mut rk = Rk4::new(0.1);
        rk.record_every = 3;
        let traj = rk.integrate(&OdeProblem::new(&sys, 0.0, 1.0, vec![0.0])).unwrap();
        let times = traj.times();
        assert_eq!(times.len(), 5); // 0, 0.3, 0.6, 0.9, 1.0
        assert_eq!(*times.last().unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_problems() {
        let sys = Constant(1.0);
        assert!(matches!(
            Rk4::new(0.1).integrate(&OdeProblem::new(&sys, 1.0, 0.0, vec![0.0])),
            Err(IntegrateError::Problem(_))
        ));
        assert!(matches!(
            Rk4::new(0.1).integrate(&OdeProblem::new(&sys, 0.0, 1.0, vec![0.0, 1.0])),
            Err(IntegrateError::Problem(_))
        ));
        let mut c = StepperConfig::rk4(0.0);
        assert!(Rk4::from_config(&c).is_err());
        c.h = Some(0.1);
        c.record_every = 0;
        assert!(Rk4::from_config(&c).is_err());
    }
}
