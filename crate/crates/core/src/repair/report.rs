//! Machine-readable outcome of a repair run.

use serde::{Deserialize, Serialize};

use super::GaConfig;
use crate::ltl::Spec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpecSummary {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub assumptions: Vec<String>,
    pub guarantees: Vec<String>,
}

impl From<&Spec> for SpecSummary {
    fn from(s: &Spec) -> Self {
        SpecSummary {
            inputs: s.inputs().to_vec(),
            outputs: s.outputs().to_vec(),
            assumptions: s.assumptions().iter().map(ToString::to_string).collect(),
            guarantees: s.guarantees().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepairEntry {
    pub rank: usize,
    pub assumptions: Vec<String>,
    pub guarantees: Vec<String>,
    pub status_score: f64,
    pub syn_sim: f64,
    pub sem_sim: f64,
    pub combined: f64,
    /// Ancestry from the repair back to the original, newest first.
    pub provenance_chain: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunStats {
    pub individuals_evaluated: usize,
    pub wall_clock_seconds: f64,
    pub backend_calls: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepairReport {
    pub config: GaConfig,
    pub original_spec: SpecSummary,
    pub repairs: Vec<RepairEntry>,
    pub stats: RunStats,
    /// Set when the run was interrupted or ran out of time.
    pub incomplete: bool,
    pub warnings: Vec<String>,
}

impl RepairReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The repaired specifications, best first.
    pub fn repaired_specs(&self, original: &Spec) -> Vec<Spec> {
        self.repairs
            .iter()
            .filter_map(|r| {
                let parse = |v: &[String]| {
                    v.iter().map(|t| crate::ltl::parse_formula(t)).collect::<Result<Vec<_>, _>>().ok()
                };
                Spec::new(
                    original.inputs().to_vec(),
                    original.outputs().to_vec(),
                    parse(&r.assumptions)?,
                    parse(&r.guarantees)?,
                )
                .ok()
            })
            .collect()
    }
}
