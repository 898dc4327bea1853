use serde_json::json;
use superriccati_oracle::{audit_text, derive_component_system, derive_inverse, System};

use super::{Mode, Outcome};
use crate::config::{Context, Field};
use crate::error::CliError;

/// Symbolic expansion of the component systems and the inverse, with every
/// disagreement against the printed forms flagged.
pub struct DeriveSystem;

impl Mode for DeriveSystem {
    fn name(&self) -> &'static str {
        "derive-system"
    }

    fn summary(&self) -> &'static str {
        "derive the component equations symbolically and write the audit"
    }

    fn requires(&self) -> &'static [Field] {
        &[]
    }

    fn run(&self, _ctx: &Context) -> Result<Outcome, CliError> {
        let reports = [
            derive_component_system(System::Riccati),
            derive_component_system(System::B0Pair),
            derive_inverse(),
        ];
        let systems: Vec<_> = reports
            .iter()
            .map(|r| {
                let flagged: Vec<_> = r
                    .discrepancies()
                    .map(|e| {
                        json!({
                            "component": e.name,
                            "derived": e.derived.to_string(),
                            "printed": e.printed.to_string(),
                        })
                    })
                    .collect();
                json!({
                    "system": r.system,
                    "components": r.entries.len(),
                    "discrepancies": flagged,
                    "stray_blades": r.stray.len(),
                })
            })
            .collect();
        let count: usize = reports.iter().map(|r| r.discrepancies().count()).sum();
        let mut out = Outcome {
            text: Some((".audit.txt".into(), audit_text())),
            details: Some(json!({ "systems": systems })),
            ..Outcome::default()
        };
        out.notes.push(format!(
            "{count} printed component equations differ from the expansion"
        ));
        Ok(out)
    }
}
