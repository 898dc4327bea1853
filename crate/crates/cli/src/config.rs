//! JSON run configuration and its validated form.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use superriccati::coeffs::{CoefficientSpec, CoefficientTriple};
use superriccati::integrator::{Stepper, StepperConfig, StepperRegistry};
use superriccati::superfield::SuperfieldComponents;

use crate::error::CliError;

/// Default fixed step when a config names no stepper.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Thresholds for the pass/fail checks of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Finite-difference residual against the target equation.
    pub residual: f64,
    /// `max |Y - dagger(Y)|` along a superfield trajectory.
    pub reality: f64,
    /// Maximum disagreement between two integration routes.
    pub route: f64,
    /// Maximum round-trip error of the linearizing maps.
    pub roundtrip: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-6,
            reality: 1e-10,
            route: 1e-8,
            roundtrip: 1e-6,
        }
    }
}

/// The config file as written by the user.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<CoefficientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<SuperfieldComponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SuperfieldComponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepper: Option<StepperConfig>,
    #[serde(default)]
    pub tolerance: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::ParseConfig {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Config fields a mode may require.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Coeffs,
    Initial,
    Second,
    Interval,
    Input,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Coeffs => "coeffs",
            Field::Initial => "initial",
            Field::Second => "second",
            Field::Interval => "interval",
            Field::Input => "input",
        }
    }
}

/// A validated config, ready for a mode to run.
pub struct Context {
    pub mode: String,
    pub coeff_spec: Option<CoefficientSpec>,
    pub coeffs: Option<CoefficientTriple>,
    pub initial: Option<SuperfieldComponents>,
    pub second: Option<SuperfieldComponents>,
    pub interval: Option<(f64, f64)>,
    pub stepper: Box<dyn Stepper>,
    pub tolerance: Tolerances,
    pub input: Option<PathBuf>,
    pub output: String,
}

impl Context {
    /// Checks that every field in `required` is present and well formed,
    /// expands presets and builds the stepper.
    pub fn prepare(config: &RunConfig, required: &[Field]) -> Result<Self, CliError> {
        let present = |f: Field| match f {
            Field::Coeffs => config.coeffs.is_some(),
            Field::Initial => config.initial.is_some(),
            Field::Second => config.second.is_some(),
            Field::Interval => config.interval.is_some(),
            Field::Input => config.input.is_some(),
        };
        let mode = config.mode.clone().unwrap_or_default();
        let missing: Vec<&str> = required
            .iter()
            .filter(|f| !present(**f))
            .map(|f| f.name())
            .collect();
        if !missing.is_empty() {
            return Err(CliError::Invalid(format!(
                "mode `{mode}` requires {}",
                missing.join(", ")
            )));
        }
        let output = config
            .output
            .clone()
            .filter(|o| !o.is_empty())
            .ok_or_else(|| CliError::Invalid("no output prefix (set `output` or pass --out)".into()))?;
        let coeff_spec = config
            .coeffs
            .as_ref()
            .map(|s| s.expand().map_err(|e| CliError::Invalid(e.to_string())))
            .transpose()?;
        let coeffs = coeff_spec
            .as_ref()
            .map(|s| CoefficientTriple::from_spec(s).map_err(|e| CliError::Invalid(e.to_string())))
            .transpose()?;
        let interval = config.interval.map(|[t0, t1]| (t0, t1));
        if let Some((t0, t1)) = interval {
            if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
                return Err(CliError::Invalid(format!(
                    "interval [{t0}, {t1}] must be finite with t1 > t0"
                )));
            }
        }
        for (name, value) in [("initial", &config.initial), ("second", &config.second)] {
            if value.is_some_and(|v| v.to_array().iter().any(|x| !x.is_finite())) {
                return Err(CliError::Invalid(format!("`{name}` has non-finite components")));
            }
        }
        let tol = config.tolerance;
        if [tol.residual, tol.reality, tol.route, tol.roundtrip]
            .iter()
            .any(|t| !(t.is_finite() && *t > 0.0))
        {
            return Err(CliError::Invalid("tolerances must be finite and positive".into()));
        }
        let stepper_config = config
            .stepper
            .clone()
            .unwrap_or_else(|| StepperConfig::rk4(DEFAULT_STEP));
        let stepper = StepperRegistry::builtin()
            .build(&stepper_config)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(Context {
            mode,
            coeff_spec,
            coeffs,
            initial: config.initial,
            second: config.second,
            interval,
            stepper,
            tolerance: tol,
            input: config.input.clone(),
            output,
        })
    }

    /// The config as actually run: presets expanded and the stepper's
    /// effective parameters filled in.
    pub fn effective_config(&self) -> RunConfig {
        RunConfig {
            mode: Some(self.mode.clone()),
            coeffs: self.coeff_spec.clone(),
            initial: self.initial,
            second: self.second,
            interval: self.interval.map(|(a, b)| [a, b]),
            stepper: Some(self.stepper.config()),
            tolerance: self.tolerance,
            input: self.input.clone(),
            output: Some(self.output.clone()),
        }
    }

    pub fn coeffs(&self) -> Result<&CoefficientTriple, CliError> {
        self.coeffs.as_ref().ok_or_else(|| missing("coeffs"))
    }

    pub fn initial(&self) -> Result<SuperfieldComponents, CliError> {
        self.initial.ok_or_else(|| missing("initial"))
    }

    pub fn second(&self) -> Result<SuperfieldComponents, CliError> {
        self.second.ok_or_else(|| missing("second"))
    }

    pub fn interval(&self) -> Result<(f64, f64), CliError> {
        self.interval.ok_or_else(|| missing("interval"))
    }

    pub fn input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| missing("input"))
    }
}

fn missing(field: &str) -> CliError {
    CliError::Invalid(format!("missing `{field}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> RunConfig {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn preset_expands_and_defaults_fill_in() {
        let c = parse(
            r#"{"mode":"solve-components","coeffs":{"preset":"const"},"initial":{"y":0},"interval":[0,1],"output":"x"}"#,
        );
        let ctx = Context::prepare(&c, &[Field::Coeffs, Field::Initial, Field::Interval]).unwrap();
        let eff = ctx.effective_config();
        assert_eq!(
            eff.coeffs,
            Some(CoefficientSpec::Explicit {
                a: "-1".into(),
                b: "0".into(),
                c: "1".into()
            })
        );
        assert_eq!(eff.stepper.unwrap().h, Some(DEFAULT_STEP));
        assert_eq!(eff.tolerance, Tolerances::default());
    }

    #[test]
    fn missing_fields_are_named() {
        let c = parse(r#"{"mode":"b0","output":"x"}"#);
        let err = Context::prepare(&c, &[Field::Coeffs, Field::Second])
            .err()
            .unwrap();
        assert_eq!(
            err.to_string(),
            "invalid config: mode `b0` requires coeffs, second"
        );
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_bad_values() {
        for text in [
            r#"{"interval":[1,0],"output":"x"}"#,
            r#"{"coeffs":{"preset":"nope"},"output":"x"}"#,
            r#"{"coeffs":{"a":"1 +","b":"0","c":"0"},"output":"x"}"#,
            r#"{"stepper":{"method":"euler"},"output":"x"}"#,
            r#"{"tolerance":{"residual":-1},"output":"x"}"#,
            r#"{}"#,
        ] {
            assert!(Context::prepare(&parse(text), &[]).is_err(), "{text}");
        }
    }

    #[test]
    fn unknown_keys_do_not_parse() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"mdoe":"x"}"#).is_err());
    }
}
