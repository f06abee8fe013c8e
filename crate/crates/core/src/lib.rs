//! Reliability indices for Likert-scale questionnaire data.
//!
//! Two families of index are computed from an `n x p` response matrix
//! (respondents by items, levels `1..=K`):
//!
//! - **Classical**: Cronbach's alpha over items, and the same coefficient over
//!   respondents (alpha of the transpose), plus a report of single-minded
//!   respondents whose answers never vary.
//! - **Information-theoretic**: the information consistency ratio
//!   `phi = 1 - H_extremal / H_ref`, built from the entropies of each
//!   respondent's empirical answer distribution.
//!
//! The [`measures`] module adds the pairwise distances between item
//! distributions (symmetrized KL, variation of information, Bhattacharyya,
//! total variation, Hellinger), and [`simulation`] contains the seeded
//! benchmark that compares phi with alpha as the share of duplicated items
//! grows.
//!
//! ```
//! use icr_core::{parse_csv, reliability_report, LikertScale};
//!
//! let m = parse_csv("q1,q2,q3\n1,1,1\n4,4,4\n2,2,2", LikertScale::FIVE_POINT).unwrap();
//! let report = reliability_report(&m).unwrap();
//! assert_eq!(report.alpha.value(), Some(1.0));
//! assert_eq!(report.phi[0].value(), Some(1.0));
//! ```

pub mod classical;
pub mod distributions;
pub mod error;
pub mod format;
pub mod icr;
pub mod matrix;
pub mod measures;
pub mod simulation;

pub use classical::{
    cronbach_alpha, item_totals, respondent_reliability, zero_variation_report, ItemTotals,
    ZeroVariationReport,
};
pub use distributions::{
    all_item_distributions, all_respondent_distributions, item_distribution,
    joint_item_distribution, modal_distribution, modal_responses, respondent_distribution,
    JointProbMatrix, ProbVector,
};
pub use error::{Error, Result};
pub use icr::{
    icr, reliability_report, DenominatorMode, EntropySummary, IcrVariant, IndexValue,
    NumeratorMode, ReliabilityReport,
};
pub use matrix::{parse_csv, read_csv, CsvTable, LikertScale, ResponseMatrix};
pub use measures::{
    bhattacharyya_coefficient, bhattacharyya_distance, distance_matrix, entropy, hellinger, kl,
    kl2, mutual_information, total_variation, variation_of_information, CellFailure,
    DistanceMatrix, Measure,
};
pub use simulation::{
    generate_benchmark, run_sweep, simulate_replicates, uniform_matrix, SimConfig, SweepRow,
};
