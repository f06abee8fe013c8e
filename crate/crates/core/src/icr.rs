//! Information consistency ratio (ICR) and the combined reliability report.
//!
//! Every variant has the form `phi = 1 - extremal / denominator`, where
//! `extremal` is the minimum or maximum entropy of the respondent
//! distributions and `denominator` is either the largest attainable entropy
//! `log2 K` or the entropy of the modal-answer distribution `H(w)`:
//!
//! | Variant | Numerator | Denominator |
//! |---------|-----------|-------------|
//! | phi1 | min | `log2 K` |
//! | phi2 | max | `log2 K` |
//! | phi3 | min | `H(w)` |
//! | phi4 | max | `H(w)` |

use serde::{Deserialize, Serialize};

use crate::classical::{
    cronbach_alpha, respondent_reliability, zero_variation_report, ZeroVariationReport,
};
use crate::distributions::{
    all_item_distributions, all_respondent_distributions, modal_distribution,
};
use crate::error::{Error, Result};
use crate::matrix::ResponseMatrix;
use crate::measures::entropy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumeratorMode {
    MinOverRespondents,
    MaxOverRespondents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorMode {
    /// `log2 K`
    TheoreticalLog2K,
    /// `H(w)`, entropy of the modal answers.
    EmpiricalModalEntropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IcrVariant {
    pub numerator_mode: NumeratorMode,
    pub denominator_mode: DenominatorMode,
}

impl IcrVariant {
    pub const PHI1: IcrVariant = IcrVariant::new(
        NumeratorMode::MinOverRespondents,
        DenominatorMode::TheoreticalLog2K,
    );
    pub const PHI2: IcrVariant = IcrVariant::new(
        NumeratorMode::MaxOverRespondents,
        DenominatorMode::TheoreticalLog2K,
    );
    pub const PHI3: IcrVariant = IcrVariant::new(
        NumeratorMode::MinOverRespondents,
        DenominatorMode::EmpiricalModalEntropy,
    );
    pub const PHI4: IcrVariant = IcrVariant::new(
        NumeratorMode::MaxOverRespondents,
        DenominatorMode::EmpiricalModalEntropy,
    );

    /// `[phi1, phi2, phi3, phi4]`
    pub const ALL: [IcrVariant; 4] = [Self::PHI1, Self::PHI2, Self::PHI3, Self::PHI4];

    pub const fn new(numerator_mode: NumeratorMode, denominator_mode: DenominatorMode) -> Self {
        IcrVariant {
            numerator_mode,
            denominator_mode,
        }
    }

    pub fn name(self) -> &'static str {
        match (self.numerator_mode, self.denominator_mode) {
            (NumeratorMode::MinOverRespondents, DenominatorMode::TheoreticalLog2K) => "phi1",
            (NumeratorMode::MaxOverRespondents, DenominatorMode::TheoreticalLog2K) => "phi2",
            (NumeratorMode::MinOverRespondents, DenominatorMode::EmpiricalModalEntropy) => "phi3",
            (NumeratorMode::MaxOverRespondents, DenominatorMode::EmpiricalModalEntropy) => "phi4",
        }
    }
}

/// The entropy summaries every ICR variant is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySummary {
    pub min_respondent: f64,
    pub max_respondent: f64,
    pub modal: f64,
    pub max_possible: f64,
}

impl EntropySummary {
    pub fn of(m: &ResponseMatrix) -> Self {
        let (min_respondent, max_respondent) = all_respondent_distributions(m)
            .iter()
            .map(entropy)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), h| {
                (lo.min(h), hi.max(h))
            });
        EntropySummary {
            min_respondent,
            max_respondent,
            modal: entropy(&modal_distribution(m)),
            max_possible: m.scale().max_entropy(),
        }
    }

    pub fn phi(&self, variant: IcrVariant) -> Result<f64> {
        let extremal = match variant.numerator_mode {
            NumeratorMode::MinOverRespondents => self.min_respondent,
            NumeratorMode::MaxOverRespondents => self.max_respondent,
        };
        let denominator = match variant.denominator_mode {
            DenominatorMode::TheoreticalLog2K => self.max_possible,
            DenominatorMode::EmpiricalModalEntropy => self.modal,
        };
        if denominator == 0.0 {
            return if extremal == 0.0 {
                Ok(1.0)
            } else {
                Err(Error::DegenerateModalEntropy)
            };
        }
        Ok(1.0 - extremal / denominator)
    }
}

/// Information consistency ratio of `m` under `variant`.
pub fn icr(m: &ResponseMatrix, variant: IcrVariant) -> Result<f64> {
    EntropySummary::of(m).phi(variant)
}

/// A report value, or the reason it is undefined for this matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexValue {
    Value(f64),
    Degenerate { degenerate: String },
}

impl IndexValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            IndexValue::Value(v) => Some(*v),
            IndexValue::Degenerate { .. } => None,
        }
    }
}

impl From<Result<f64>> for IndexValue {
    fn from(r: Result<f64>) -> Self {
        match r {
            Ok(v) => IndexValue::Value(v),
            Err(e) => IndexValue::Degenerate {
                degenerate: e.kind().to_owned(),
            },
        }
    }
}

/// Every reliability index for one response matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub n: usize,
    pub p: usize,
    pub levels: usize,
    pub alpha: IndexValue,
    pub respondent_alpha: IndexValue,
    /// `[phi1, phi2, phi3, phi4]`
    pub phi: [IndexValue; 4],
    pub min_respondent_entropy: f64,
    pub max_respondent_entropy: f64,
    /// `H(w)`
    pub modal_entropy: f64,
    pub item_entropies: Vec<f64>,
    pub zero_variation: ZeroVariationReport,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Computes every index; undefined indices are carried as markers.
///
/// Needs at least two items and two respondents.
pub fn reliability_report(m: &ResponseMatrix) -> Result<ReliabilityReport> {
    if m.p() < 2 {
        return Err(Error::TooFewItems(m.p()));
    }
    if m.n() < 2 {
        return Err(Error::TooFewRespondents(m.n()));
    }

    let summary = EntropySummary::of(m);
    let phi = IcrVariant::ALL.map(|v| IndexValue::from(summary.phi(v)));

    let mut notes = Vec::new();
    for (variant, value) in IcrVariant::ALL.iter().zip(&phi).skip(2) {
        if let Some(v) = value.value() {
            if !(0.0..=1.0).contains(&v) {
                notes.push(format!(
                    "{} = {v} lies outside [0, 1]: H(w) is below the extremal respondent entropy",
                    variant.name()
                ));
            }
        }
    }

    Ok(ReliabilityReport {
        n: m.n(),
        p: m.p(),
        levels: m.scale().levels(),
        alpha: cronbach_alpha(m).into(),
        respondent_alpha: respondent_reliability(m).into(),
        phi,
        min_respondent_entropy: summary.min_respondent,
        max_respondent_entropy: summary.max_respondent,
        modal_entropy: summary.modal,
        item_entropies: all_item_distributions(m).iter().map(entropy).collect(),
        zero_variation: zero_variation_report(m)?,
        notes,
    })
}
