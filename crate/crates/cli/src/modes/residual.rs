use std::fs::File;

use superriccati::integrator::Trajectory;
use superriccati::riccati::{linear_residual, riccati_residual, EquationLabel};

use super::{Mode, Outcome};
use crate::config::{Context, Field};
use crate::error::CliError;

/// Residual of a trajectory CSV against its equation, recognized from the
/// column header.
pub struct Residual;

impl Mode for Residual {
    fn name(&self) -> &'static str {
        "residual"
    }

    fn summary(&self) -> &'static str {
        "check a trajectory CSV (`input`) against its equation"
    }

    fn requires(&self) -> &'static [Field] {
        &[Field::Coeffs, Field::Input]
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let path = ctx.input()?;
        let input_error = |message: String| CliError::Input {
            path: path.display().to_string(),
            message,
        };
        let file = File::open(path).map_err(|e| input_error(e.to_string()))?;
        let mut traj = Trajectory::read_csv(file).map_err(|e| input_error(e.to_string()))?;
        let label = EquationLabel::from_columns(&traj.columns)
            .ok_or_else(|| input_error("header matches no equation label".into()))?;
        traj.label = label.to_string();
        let coeffs = ctx.coeffs()?;
        let tol = ctx.tolerance.residual;
        let mut out = Outcome::default();
        match label {
            EquationLabel::RiccatiSuper | EquationLabel::RiccatiComponents => {
                out.residual("riccati-residual", riccati_residual(&traj, coeffs, tol))?
            }
            EquationLabel::LinearSuper => {
                out.residual("linear-residual", linear_residual(&traj, coeffs, tol))?
            }
            other => {
                return Err(input_error(format!(
                    "no residual check for `{other}` trajectories"
                )))
            }
        }
        out.notes.push(format!(
            "input recognized as `{label}` with {} samples",
            traj.len()
        ));
        Ok(out)
    }
}
