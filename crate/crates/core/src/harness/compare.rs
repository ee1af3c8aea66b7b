//! Classification of one set of repairs against a reference set.

use serde::{Deserialize, Serialize};

use crate::analysis::{classify_relation_with, Relation};
use crate::automata::{AutomataError, Limits};
use crate::ltl::Spec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlapRecord {
    pub ours: usize,
    pub reference: usize,
    /// Relation of our repair to the reference one.
    pub relation: Relation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlapSummary {
    /// Repairs equivalent to no reference.
    pub unique: usize,
    /// Repairs equivalent to some reference.
    pub equivalent: usize,
    /// Non-equivalent repairs implied by some reference.
    pub weaker: usize,
    /// Non-equivalent repairs implying some reference.
    pub stronger: usize,
    /// Repairs incomparable with every reference.
    pub unrelated: usize,
    pub records: Vec<OverlapRecord>,
}

/// Compare every repair with every reference through their implication
/// formulas `(∧A) -> (∧G)`.
pub fn compare_repair_sets(ours: &[Spec], reference: &[Spec], limits: &Limits) -> Result<OverlapSummary, AutomataError> {
    let mut summary = OverlapSummary::default();
    for (i, s) in ours.iter().enumerate() {
        let phi = s.implication();
        let mut relations = Vec::with_capacity(reference.len());
        for (j, r) in reference.iter().enumerate() {
            let relation = classify_relation_with(&phi, &r.implication(), limits)?;
            summary.records.push(OverlapRecord { ours: i, reference: j, relation });
            relations.push(relation);
        }
        if relations.contains(&Relation::Equivalent) {
            summary.equivalent += 1;
            continue;
        }
        summary.unique += 1;
        let weaker = relations.contains(&Relation::AWeakerThanB);
        let stronger = relations.contains(&Relation::AStrongerThanB);
        summary.weaker += weaker as usize;
        summary.stronger += stronger as usize;
        if !weaker && !stronger {
            summary.unrelated += 1;
        }
    }
    Ok(summary)
}
