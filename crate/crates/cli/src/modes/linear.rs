use superriccati::riccati::{
    from_linear, linear_residual, riccati_residual, to_linear, Form, LinearSuperRun, RiccatiRun,
};

use super::{route_disagreement, Mode, Outcome};
use crate::config::{Context, Field};
use crate::error::CliError;
use crate::report::Check;

/// Solves for `Y`, then maps it to `N = exp(-int a Y)`.
pub struct Linearize;

impl Mode for Linearize {
    fn name(&self) -> &'static str {
        "linearize"
    }

    fn summary(&self) -> &'static str {
        "solve for Y and map it to N = exp(-int a Y dt)"
    }

    fn requires(&self) -> &'static [Field] {
        &[Field::Coeffs, Field::Initial, Field::Interval]
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let coeffs = ctx.coeffs()?;
        let (t0, t1) = ctx.interval()?;
        let y = RiccatiRun {
            coeffs: coeffs.clone(),
            initial: ctx.initial()?,
            t0,
            t1,
            form: Form::ComponentSystem,
        }
        .solve(ctx.stepper.as_ref())?;
        let n = to_linear(&y, coeffs)?;
        let back = from_linear(&n, coeffs)?;
        let mut out = Outcome::default();
        let roundtrip = route_disagreement(&y, &back)?.expect("from_linear keeps the grid");
        out.checks
            .push(Check::at_most("roundtrip", roundtrip, ctx.tolerance.roundtrip));
        out.residual(
            "linear-residual",
            linear_residual(&n, coeffs, ctx.tolerance.residual),
        )?;
        out.primary(n);
        out.secondary(y);
        Ok(out)
    }
}

/// Integrates `N'' - (a'/a + b) N' + a c N = 0`, then maps back to
/// `Y = -(1/a) N^{-1} N'`.
pub struct Delinearize;

impl Mode for Delinearize {
    fn name(&self) -> &'static str {
        "delinearize"
    }

    fn summary(&self) -> &'static str {
        "integrate the second-order equation for N (initial = N, second = N') and map to Y"
    }

    fn requires(&self) -> &'static [Field] {
        &[Field::Coeffs, Field::Initial, Field::Second, Field::Interval]
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let coeffs = ctx.coeffs()?;
        let (t0, t1) = ctx.interval()?;
        let n = LinearSuperRun {
            coeffs: coeffs.clone(),
            n0: ctx.initial()?,
            n_dot0: ctx.second()?,
            t0,
            t1,
        }
        .solve(ctx.stepper.as_ref())?;
        let y = from_linear(&n, coeffs)?;
        let mut out = Outcome::default();
        out.residual(
            "linear-residual",
            linear_residual(&n, coeffs, ctx.tolerance.residual),
        )?;
        out.residual(
            "riccati-residual",
            riccati_residual(&y, coeffs, ctx.tolerance.residual),
        )?;
        out.primary(y);
        out.secondary(n);
        Ok(out)
    }
}
