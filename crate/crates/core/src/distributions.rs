//! Plug-in frequency estimates over the `K` response levels: per item, per
//! respondent, of the respondents' modal answers, and pairwise joints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ResponseMatrix;

/// Tolerance on the total mass of a probability vector.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A distribution over `K` levels; entry `k` is the mass on level `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Validates entries in `[0, 1]` summing to 1 within [`SIMPLEX_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_simplex(&probs)?;
        Ok(ProbVector(probs))
    }

    /// Relative frequencies `counts[k] / sum(counts)`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("all counts are zero".into()));
        }
        let total = total as f64;
        Ok(ProbVector(
            counts.iter().map(|&c| c as f64 / total).collect(),
        ))
    }

    /// Uniform distribution over `levels` outcomes.
    pub fn uniform(levels: usize) -> Self {
        ProbVector(vec![1.0 / levels as f64; levels])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Additive smoothing: add `eps` to every cell and renormalize.
    pub fn smoothed(&self, eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::InvalidSmoothing(eps));
        }
        let total = 1.0 + eps * self.0.len() as f64;
        Ok(ProbVector(
            self.0.iter().map(|&v| (v + eps) / total).collect(),
        ))
    }

    /// Lowest level (0-based) carrying the largest mass.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (k, &v) in self.0.iter().enumerate() {
            if v > self.0[best] {
                best = k;
            }
        }
        best
    }
}

impl TryFrom<Vec<f64>> for ProbVector {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        ProbVector::new(probs)
    }
}

impl From<ProbVector> for Vec<f64> {
    fn from(v: ProbVector) -> Vec<f64> {
        v.0
    }
}

fn check_simplex(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("no entries".into()));
    }
    if let Some(bad) = probs.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::InvalidDistribution(format!(
            "entry {bad} outside [0, 1]"
        )));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// Joint distribution of two items over `K x K` level pairs, row-major:
/// entry `(k, l)` is the mass on (first item = `k + 1`, second item = `l + 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointProbMatrix {
    levels: usize,
    probs: Vec<f64>,
}

impl JointProbMatrix {
    pub fn new(levels: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != levels * levels {
            return Err(Error::LengthMismatch(probs.len(), levels * levels));
        }
        check_simplex(&probs)?;
        Ok(JointProbMatrix { levels, probs })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.probs[k * self.levels + l]
    }

    /// All `K^2` cells row-major, as a distribution over level pairs.
    pub fn flattened(&self) -> ProbVector {
        ProbVector(self.probs.clone())
    }

    /// Marginal of the first item (row sums).
    pub fn row_marginal(&self) -> ProbVector {
        ProbVector(
            self.probs
                .chunks_exact(self.levels)
                .map(|r| r.iter().sum())
                .collect(),
        )
    }

    /// Marginal of the second item (column sums).
    pub fn col_marginal(&self) -> ProbVector {
        let mut out = vec![0.0; self.levels];
        for row in self.probs.chunks_exact(self.levels) {
            for (o, &v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        ProbVector(out)
    }
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    Ok(())
}

fn level_counts(levels: usize, responses: impl Iterator<Item = u16>) -> Vec<u64> {
    let mut counts = vec![0u64; levels];
    for x in responses {
        counts[x as usize - 1] += 1;
    }
    counts
}

/// Relative frequency of each level among the answers to item `j`.
pub fn item_distribution(m: &ResponseMatrix, j: usize) -> Result<ProbVector> {
    check_index(j, m.p())?;
    ProbVector::from_counts(&level_counts(m.scale().levels(), m.column(j)))
}

/// Relative frequency of each level among respondent `i`'s answers.
pub fn respondent_distribution(m: &ResponseMatrix, i: usize) -> Result<ProbVector> {
    check_index(i, m.n())?;
    ProbVector::from_counts(&level_counts(m.scale().levels(), m.row(i).iter().copied()))
}

/// The `p x K` item profile, one distribution per item.
pub fn all_item_distributions(m: &ResponseMatrix) -> Vec<ProbVector> {
    let levels = m.scale().levels();
    let mut counts = vec![0u64; m.p() * levels];
    for row in m.rows() {
        for (j, &x) in row.iter().enumerate() {
            counts[j * levels + x as usize - 1] += 1;
        }
    }
    counts
        .chunks_exact(levels)
        .map(|c| ProbVector::from_counts(c).expect("every item has n >= 1 answers"))
        .collect()
}

/// One distribution per respondent, in row order.
pub fn all_respondent_distributions(m: &ResponseMatrix) -> Vec<ProbVector> {
    let levels = m.scale().levels();
    m.rows()
        .map(|row| {
            ProbVector::from_counts(&level_counts(levels, row.iter().copied()))
                .expect("every respondent has p >= 1 answers")
        })
        .collect()
}

/// Each respondent's most frequent level (`1..=K`); ties go to the lowest level.
pub fn modal_responses(m: &ResponseMatrix) -> Vec<u16> {
    let levels = m.scale().levels();
    let mut counts = vec![0u64; levels];
    m.rows()
        .map(|row| {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in row {
                counts[x as usize - 1] += 1;
            }
            let mut best = 0;
            for k in 1..levels {
                if counts[k] > counts[best] {
                    best = k;
                }
            }
            (best + 1) as u16
        })
        .collect()
}

/// Distribution of the respondents' modal answers.
pub fn modal_distribution(m: &ResponseMatrix) -> ProbVector {
    let modes = modal_responses(m);
    ProbVector::from_counts(&level_counts(m.scale().levels(), modes.into_iter())).expect("n >= 1")
}

/// Empirical co-occurrence frequencies of the levels of items `i` and `j`.
pub fn joint_item_distribution(m: &ResponseMatrix, i: usize, j: usize) -> Result<JointProbMatrix> {
    check_index(i, m.p())?;
    check_index(j, m.p())?;
    let levels = m.scale().levels();
    let mut counts = vec![0u64; levels * levels];
    for row in m.rows() {
        counts[(row[i] as usize - 1) * levels + row[j] as usize - 1] += 1;
    }
    let n = m.n() as f64;
    Ok(JointProbMatrix {
        levels,
        probs: counts.iter().map(|&c| c as f64 / n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::LikertScale;

    fn scale(k: usize) -> LikertScale {
        LikertScale::new(k).unwrap()
    }

    fn column(values: &[u16], k: usize) -> ResponseMatrix {
        let rows: Vec<[u16; 1]> = values.iter().map(|&v| [v]).collect();
        ResponseMatrix::from_rows(&rows, scale(k)).unwrap()
    }

    #[test]
    fn item_distribution_examples() {
        let v = item_distribution(&column(&[1, 1, 2, 5], 5), 0).unwrap();
        assert_eq!(v.probs(), &[0.5, 0.25, 0.0, 0.0, 0.25]);
        let v = item_distribution(&column(&[3, 3, 3], 5), 0).unwrap();
        assert_eq!(v.probs(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
        let v = item_distribution(&column(&[4, 2, 5, 1, 3], 5), 0).unwrap();
        assert_eq!(v.probs(), &[0.2; 5]);
        assert!(matches!(
            item_distribution(&column(&[1], 5), 1),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn respondent_distribution_examples() {
        let m = ResponseMatrix::from_rows(
            &[[2, 2, 2, 2, 2], [1, 2, 3, 4, 5], [1, 1, 1, 5, 5]],
            scale(5),
        )
        .unwrap();
        assert_eq!(
            respondent_distribution(&m, 0).unwrap().probs(),
            &[0.0, 1.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(respondent_distribution(&m, 1).unwrap().probs(), &[0.2; 5]);
        assert!(respondent_distribution(&m, 3).is_err());

        let m = ResponseMatrix::from_rows(&[[1, 1, 1, 5]], scale(5)).unwrap();
        assert_eq!(
            respondent_distribution(&m, 0).unwrap().probs(),
            &[0.75, 0.0, 0.0, 0.0, 0.25]
        );
    }

    #[test]
    fn batch_distributions() {
        let m = ResponseMatrix::from_rows(&[[1, 1], [2, 2]], scale(2)).unwrap();
        let v = all_item_distributions(&m);
        let z = all_respondent_distributions(&m);
        assert_eq!(v.len(), 2);
        assert_eq!(z.len(), 2);
        assert!(v.iter().all(|d| d.probs() == [0.5, 0.5]));
        assert_eq!(z[0].probs(), &[1.0, 0.0]);
        assert_eq!(z[1].probs(), &[0.0, 1.0]);
        assert_eq!(all_item_distributions(&m.transpose()), z);
    }

    #[test]
    fn modal_answers() {
        let m = ResponseMatrix::from_rows(&[[1, 1, 2, 5], [1, 2, 2, 1], [4, 4, 4, 4]], scale(5))
            .unwrap();
        assert_eq!(modal_responses(&m), vec![1, 1, 4]);

        let m = ResponseMatrix::from_rows(&[[1, 1, 2], [3, 3, 1], [1, 2, 1]], scale(3)).unwrap();
        assert_eq!(modal_responses(&m), vec![1, 3, 1]);
        let w = modal_distribution(&m);
        assert!((w.probs()[0] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(w.probs()[1], 0.0);
        assert!((w.probs()[2] - 1.0 / 3.0).abs() < 1e-12);

        let m = ResponseMatrix::from_rows(&[[2, 2], [2, 2]], scale(5)).unwrap();
        assert_eq!(modal_distribution(&m).probs(), &[0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn joint_examples() {
        let m = ResponseMatrix::from_rows(&[[1, 2], [2, 1]], scale(2)).unwrap();
        let j = joint_item_distribution(&m, 0, 1).unwrap();
        assert_eq!(j.flattened().probs(), &[0.0, 0.5, 0.5, 0.0]);

        let m = ResponseMatrix::from_rows(&[[1, 1], [3, 3], [3, 3], [2, 2]], scale(3)).unwrap();
        let j = joint_item_distribution(&m, 0, 1).unwrap();
        let v = item_distribution(&m, 0).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let want = if k == l { v.probs()[k] } else { 0.0 };
                assert_eq!(j.get(k, l), want);
            }
        }
        assert_eq!(joint_item_distribution(&m, 1, 1).unwrap(), j);
        assert_eq!(j.row_marginal(), v);
        assert!(joint_item_distribution(&m, 0, 2).is_err());
    }

    #[test]
    fn validation_and_smoothing() {
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.5, -0.5]).is_err());
        assert!(ProbVector::new(vec![]).is_err());
        let s = ProbVector::new(vec![1.0, 0.0])
            .unwrap()
            .smoothed(0.5)
            .unwrap();
        assert_eq!(s.probs(), &[0.75, 0.25]);
        assert!(ProbVector::uniform(3).smoothed(-1.0).is_err());
        assert_eq!(ProbVector::new(vec![0.3, 0.4, 0.3]).unwrap().argmax(), 1);
        assert_eq!(ProbVector::uniform(4).argmax(), 0);
    }
}
