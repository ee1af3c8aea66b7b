//! Spec files, repair-set comparison, effect sizes and the ranking study.

mod compare;
mod specfile;
mod stats;
mod study;

pub use compare::{compare_repair_sets, OverlapRecord, OverlapSummary};
pub use specfile::{load_spec_file, parse_spec_file, render_spec_file, save_spec_file, SpecFile, SpecFileError};
pub use stats::{spearman, vargha_delaney_a12, StatsError};
pub use study::{
    compare_rankings, misplaced_items, ranking_discrepancy, run_ranking_study, BoundResult, RankingStudyConfig, RankingStudyReport,
    SetResult,
};
