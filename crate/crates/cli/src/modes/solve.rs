use superriccati::riccati::{riccati_residual, Form, RiccatiRun};

use super::{reality_defect, route_disagreement, Mode, Outcome};
use crate::config::{Context, Field};
use crate::error::CliError;
use crate::report::Check;

const FIELDS: &[Field] = &[Field::Coeffs, Field::Initial, Field::Interval];

fn riccati_run(ctx: &Context, form: Form) -> Result<RiccatiRun, CliError> {
    let (t0, t1) = ctx.interval()?;
    Ok(RiccatiRun {
        coeffs: ctx.coeffs()?.clone(),
        initial: ctx.initial()?,
        t0,
        t1,
        form,
    })
}

/// Integrates the full Grassmann state of `Y`.
pub struct SolveSuper;

impl Mode for SolveSuper {
    fn name(&self) -> &'static str {
        "solve-super"
    }

    fn summary(&self) -> &'static str {
        "integrate Y' = a Y^2 + b Y + c in the full Grassmann algebra"
    }

    fn requires(&self) -> &'static [Field] {
        FIELDS
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let traj = riccati_run(ctx, Form::SuperfieldDirect)?.solve(ctx.stepper.as_ref())?;
        let mut out = Outcome::default();
        out.checks.push(Check::at_most(
            "reality",
            reality_defect(&traj)?,
            ctx.tolerance.reality,
        ));
        out.residual(
            "riccati-residual",
            riccati_residual(&traj, ctx.coeffs()?, ctx.tolerance.residual),
        )?;
        out.primary(traj);
        Ok(out)
    }
}

/// Integrates the five real component equations.
pub struct SolveComponents;

impl Mode for SolveComponents {
    fn name(&self) -> &'static str {
        "solve-components"
    }

    fn summary(&self) -> &'static str {
        "integrate the component system for (y, l, g0, g1)"
    }

    fn requires(&self) -> &'static [Field] {
        FIELDS
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let traj = riccati_run(ctx, Form::ComponentSystem)?.solve(ctx.stepper.as_ref())?;
        let mut out = Outcome::default();
        out.residual(
            "riccati-residual",
            riccati_residual(&traj, ctx.coeffs()?, ctx.tolerance.residual),
        )?;
        out.primary(traj);
        Ok(out)
    }
}

/// Runs both routes from the same data and compares them.
pub struct Compare;

impl Mode for Compare {
    fn name(&self) -> &'static str {
        "compare"
    }

    fn summary(&self) -> &'static str {
        "integrate both routes and report their disagreement"
    }

    fn requires(&self) -> &'static [Field] {
        FIELDS
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let stepper = ctx.stepper.as_ref();
        let direct = riccati_run(ctx, Form::SuperfieldDirect)?.solve(stepper)?;
        let components = riccati_run(ctx, Form::ComponentSystem)?.solve(stepper)?;
        let route = route_disagreement(&direct, &components)?.ok_or_else(|| {
            CliError::Invalid(
                "the two routes produced different grids; compare needs a fixed-step stepper".into(),
            )
        })?;
        let mut out = Outcome::default();
        out.checks
            .push(Check::at_most("route-agreement", route, ctx.tolerance.route));
        out.checks.push(Check::at_most(
            "reality",
            reality_defect(&direct)?,
            ctx.tolerance.reality,
        ));
        out.residual(
            "riccati-residual",
            riccati_residual(&direct, ctx.coeffs()?, ctx.tolerance.residual),
        )?;
        out.primary(direct);
        out.secondary(components);
        Ok(out)
    }
}
