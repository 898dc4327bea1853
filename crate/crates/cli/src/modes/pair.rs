use superriccati::riccati::{
    b0_superfield, component_samples, general_solution, integrate_bernoulli_d, riccati_residual, B0Run, Form,
    RiccatiRun,
};
use superriccati::superfield::from_components;

use super::{route_disagreement, Mode, Outcome};
use crate::config::{Context, Field};
use crate::error::CliError;
use crate::report::Check;

const FIELDS: &[Field] = &[Field::Coeffs, Field::Initial, Field::Second, Field::Interval];

/// General solution `Y = B + D^{-1}` from a particular solution `B`.
pub struct Bernoulli;

impl Mode for Bernoulli {
    fn name(&self) -> &'static str {
        "bernoulli"
    }

    fn summary(&self) -> &'static str {
        "particular solution B from `initial`, D(t0) from `second`, Y = B + D^-1"
    }

    fn requires(&self) -> &'static [Field] {
        FIELDS
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let coeffs = ctx.coeffs()?;
        let (t0, t1) = ctx.interval()?;
        let d0 = ctx.second()?;
        let particular = RiccatiRun {
            coeffs: coeffs.clone(),
            initial: ctx.initial()?,
            t0,
            t1,
            form: Form::SuperfieldDirect,
        }
        .solve(ctx.stepper.as_ref())?;
        let y = general_solution(&particular, &d0, coeffs)?;
        let d = integrate_bernoulli_d(&particular, &from_components(&d0), coeffs)?;
        let mut out = Outcome::default();
        out.residual(
            "riccati-residual",
            riccati_residual(&y, coeffs, ctx.tolerance.residual),
        )?;
        out.primary(y);
        out.secondary(particular);
        out.secondary(d);
        Ok(out)
    }
}

/// The `b = 0` pair `(B, D)`, assembled into `Y = B + D^{-1}`.
pub struct B0;

impl Mode for B0 {
    fn name(&self) -> &'static str {
        "b0"
    }

    fn summary(&self) -> &'static str {
        "integrate the b = 0 pair (B from `initial`, D from `second`) and assemble Y = B + D^-1"
    }

    fn requires(&self) -> &'static [Field] {
        FIELDS
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let coeffs = ctx.coeffs()?;
        let (t0, t1) = ctx.interval()?;
        let stepper = ctx.stepper.as_ref();
        let pair = B0Run {
            coeffs: coeffs.clone(),
            b0: ctx.initial()?,
            d0: ctx.second()?,
            t0,
            t1,
        }
        .solve(stepper)?;
        let y = b0_superfield(&pair)?;
        let direct = RiccatiRun {
            coeffs: coeffs.clone(),
            initial: component_samples(&y)?[0].1,
            t0,
            t1,
            form: Form::ComponentSystem,
        }
        .solve(stepper)?;
        let mut out = Outcome::default();
        match route_disagreement(&y, &direct)? {
            Some(d) => out
                .checks
                .push(Check::at_most("pair-vs-direct", d, ctx.tolerance.route)),
            None => out.notes.push("pair-vs-direct skipped: grids differ".into()),
        }
        out.residual(
            "riccati-residual",
            riccati_residual(&y, coeffs, ctx.tolerance.residual),
        )?;
        out.primary(pair);
        out.secondary(y);
        Ok(out)
    }
}
