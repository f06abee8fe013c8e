//! Entropy and pairwise measures between level distributions.
//!
//! | Measure | Definition | Log base |
//! |---------|------------|----------|
//! | [`entropy`] | `-sum v log v` | 2 |
//! | [`kl`] | `sum p log(p / q)` | 2 |
//! | [`kl2`] | `(KL(p, q) + KL(q, p)) / 2` | 2 |
//! | [`mutual_information`] | `sum j log(j / (p q))` over the joint | 2 |
//! | [`variation_of_information`] | `H(i) + H(j) - 2 I(i, j)` | 2 |
//! | [`bhattacharyya_coefficient`] | `F = sum sqrt(p q)` | - |
//! | [`bhattacharyya_distance`] | `-ln F` | e |
//! | [`total_variation`] | `sum |p - q| / 2` | - |
//! | [`hellinger`] | `||sqrt p - sqrt q||_2 / sqrt 2` | - |
//!
//! Cells with zero mass contribute nothing (`0 log 0 = 0`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::{
    all_item_distributions, item_distribution, joint_item_distribution, JointProbMatrix, ProbVector,
};
use crate::error::{Error, Result};
use crate::matrix::ResponseMatrix;

/// Base of the logarithm used by entropy, KL, mutual information and VI.
pub const INFORMATION_LOG_BASE: f64 = 2.0;
/// Base of the logarithm used by the Bhattacharyya distance.
pub const BHATTACHARYYA_LOG_BASE: f64 = std::f64::consts::E;

fn check_lengths(p: &ProbVector, q: &ProbVector) {
    assert_eq!(p.len(), q.len(), "distributions must have the same length");
}

/// Shannon entropy in bits, clamped to `[0, log2 K]` against rounding.
pub fn entropy(v: &ProbVector) -> f64 {
    let h: f64 = v
        .probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    h.clamp(0.0, (v.len() as f64).log2())
}

/// Kullback-Leibler divergence `KL(p || q)` in bits.
///
/// Fails with [`Error::SupportMismatch`] at the first level where `q` has no
/// mass but `p` does; smooth both inputs with [`ProbVector::smoothed`] to
/// avoid that.
pub fn kl(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    check_lengths(p, q);
    let mut sum = 0.0;
    for (index, (&pk, &qk)) in p.probs().iter().zip(q.probs()).enumerate() {
        if pk == 0.0 {
            continue;
        }
        if qk == 0.0 {
            return Err(Error::SupportMismatch { index });
        }
        sum += pk * (pk / qk).log2();
    }
    Ok(sum.max(0.0))
}

/// Symmetrized KL divergence.
pub fn kl2(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    Ok((kl(p, q)? + kl(q, p)?) / 2.0)
}

/// Mutual information of a joint distribution against its own marginals, in bits.
pub fn mutual_information(joint: &JointProbMatrix) -> f64 {
    let rows = joint.row_marginal();
    let cols = joint.col_marginal();
    let levels = joint.levels();
    let mut sum = 0.0;
    for k in 0..levels {
        for l in 0..levels {
            let v = joint.get(k, l);
            if v > 0.0 {
                sum += v * (v / (rows.probs()[k] * cols.probs()[l])).log2();
            }
        }
    }
    sum.max(0.0)
}

/// Variation of information between items `i` and `j` of `m`, in bits.
pub fn variation_of_information(m: &ResponseMatrix, i: usize, j: usize) -> Result<f64> {
    if i == j {
        item_distribution(m, i)?;
        return Ok(0.0);
    }
    let joint = joint_item_distribution(m, i, j)?;
    let vi = entropy(&joint.row_marginal()) + entropy(&joint.col_marginal())
        - 2.0 * mutual_information(&joint);
    debug_assert!(vi > -1e-9, "variation of information {vi} below rounding");
    Ok(vi.max(0.0))
}

/// Bhattacharyya (fidelity) coefficient `F`, the overlap in `[0, 1]`.
pub fn bhattacharyya_coefficient(p: &ProbVector, q: &ProbVector) -> f64 {
    check_lengths(p, q);
    let f: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| (a * b).sqrt())
        .sum();
    f.min(1.0)
}

/// Bhattacharyya distance `-ln F`.
pub fn bhattacharyya_distance(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    let f = bhattacharyya_coefficient(p, q);
    if f == 0.0 {
        return Err(Error::DisjointSupport);
    }
    Ok(-f.ln())
}

pub fn total_variation(p: &ProbVector, q: &ProbVector) -> f64 {
    check_lengths(p, q);
    let l1: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| (a - b).abs())
        .sum();
    (l1 / 2.0).min(1.0)
}

pub fn hellinger(p: &ProbVector, q: &ProbVector) -> f64 {
    check_lengths(p, q);
    let ss: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| {
            let d = a.sqrt() - b.sqrt();
            d * d
        })
        .sum();
    (ss / 2.0).sqrt().min(1.0)
}

/// Pairwise item measures available to [`distance_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Kl2,
    Vi,
    Bc,
    Tv,
    Hellinger,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Kl2,
        Measure::Vi,
        Measure::Bc,
        Measure::Tv,
        Measure::Hellinger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Kl2 => "kl2",
            Measure::Vi => "vi",
            Measure::Bc => "bc",
            Measure::Tv => "tv",
            Measure::Hellinger => "hellinger",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMeasure(s.to_owned()))
    }
}

/// A cell of a [`DistanceMatrix`] that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub i: usize,
    pub j: usize,
    pub error: Error,
}

/// Symmetric `p x p` matrix of a pairwise item measure. Failed cells hold NaN
/// and are listed in `failures` (upper triangle only).
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    pub measure: Measure,
    pub size: usize,
    pub values: Vec<f64>,
    pub failures: Vec<CellFailure>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.size..(i + 1) * self.size]
    }
}

/// Evaluates `measure` on every item pair of `m`.
///
/// `smoothing` adds `eps` to every level of both item distributions before KL2
/// and Bhattacharyya are computed; the other measures ignore it.
pub fn distance_matrix(
    m: &ResponseMatrix,
    measure: Measure,
    smoothing: Option<f64>,
) -> Result<DistanceMatrix> {
    let p = m.p();
    let mut items = all_item_distributions(m);
    if let Some(eps) = smoothing {
        if matches!(measure, Measure::Kl2 | Measure::Bc) {
            items = items
                .iter()
                .map(|v| v.smoothed(eps))
                .collect::<Result<_>>()?;
        } else if !eps.is_finite() || eps < 0.0 {
            return Err(Error::InvalidSmoothing(eps));
        }
    }

    let mut values = vec![0.0; p * p];
    let mut failures = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            let cell = match measure {
                Measure::Kl2 => kl2(&items[i], &items[j]),
                Measure::Vi => variation_of_information(m, i, j),
                Measure::Bc => bhattacharyya_distance(&items[i], &items[j]),
                Measure::Tv => Ok(total_variation(&items[i], &items[j])),
                Measure::Hellinger => Ok(hellinger(&items[i], &items[j])),
            };
            let value = cell.unwrap_or_else(|error| {
                failures.push(CellFailure { i, j, error });
                f64::NAN
            });
            values[i * p + j] = value;
            values[j * p + i] = value;
        }
    }
    Ok(DistanceMatrix {
        measure,
        size: p,
        values,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::LikertScale;

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&pv(&[1.0, 0.0, 0.0, 0.0, 0.0])), 0.0);
        assert!((entropy(&ProbVector::uniform(5)) - 5f64.log2()).abs() < 1e-12);
        assert!((entropy(&ProbVector::uniform(5)) - 2.321928).abs() < 1e-6);
        assert_eq!(entropy(&pv(&[0.5, 0.25, 0.25])), 1.5);
    }

    #[test]
    fn kl_examples() {
        let p = pv(&[0.5, 0.5]);
        let q = pv(&[0.25, 0.75]);
        assert_eq!(kl(&p, &p).unwrap(), 0.0);
        assert!((kl(&p, &q).unwrap() - 0.207519).abs() < 1e-6);
        assert!((kl2(&p, &q).unwrap() - 0.198120).abs() < 1e-6);
        assert_eq!(kl2(&p, &q).unwrap(), kl2(&q, &p).unwrap());
        assert_eq!(
            kl(&pv(&[1.0, 0.0]), &pv(&[0.0, 1.0])),
            Err(Error::SupportMismatch { index: 0 })
        );
        assert_eq!(
            kl2(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])),
            Err(Error::SupportMismatch { index: 1 })
        );
    }

    #[test]
    fn mutual_information_examples() {
        let indep = JointProbMatrix::new(2, vec![0.125, 0.375, 0.125, 0.375]).unwrap();
        assert!(mutual_information(&indep).abs() < 1e-12);
        let diag = JointProbMatrix::new(2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(mutual_information(&diag), 1.0);
    }

    #[test]
    fn bhattacharyya_examples() {
        let v = pv(&[0.2, 0.3, 0.5]);
        assert!((bhattacharyya_coefficient(&v, &v) - 1.0).abs() < 1e-15);
        assert_eq!(bhattacharyya_distance(&v, &v).unwrap(), 0.0);
        let (a, b) = (pv(&[1.0, 0.0]), pv(&[0.0, 1.0]));
        assert_eq!(bhattacharyya_coefficient(&a, &b), 0.0);
        assert_eq!(bhattacharyya_distance(&a, &b), Err(Error::DisjointSupport));
        let (p, q) = (pv(&[0.5, 0.5]), pv(&[0.125, 0.875]));
        assert!((bhattacharyya_coefficient(&p, &q) - 0.911438).abs() < 1e-6);
        assert!((bhattacharyya_distance(&p, &q).unwrap() - 0.092732).abs() < 1e-6);
    }

    #[test]
    fn tv_and_hellinger_examples() {
        let v = pv(&[0.1, 0.9]);
        let (a, b) = (pv(&[1.0, 0.0]), pv(&[0.0, 1.0]));
        assert_eq!(total_variation(&v, &v), 0.0);
        assert_eq!(total_variation(&a, &b), 1.0);
        assert_eq!(total_variation(&pv(&[0.5, 0.5]), &pv(&[0.25, 0.75])), 0.25);
        assert_eq!(hellinger(&v, &v), 0.0);
        assert_eq!(hellinger(&a, &b), 1.0);
        let (p, q) = (pv(&[0.5, 0.5]), pv(&[0.125, 0.875]));
        let h = hellinger(&p, &q);
        assert!((h * h + bhattacharyya_coefficient(&p, &q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vi_self_and_symmetry() {
        let m = ResponseMatrix::from_rows(
            &[[1, 2, 1], [2, 2, 3], [3, 1, 3], [1, 1, 2]],
            LikertScale::new(3).unwrap(),
        )
        .unwrap();
        assert_eq!(variation_of_information(&m, 1, 1).unwrap(), 0.0);
        assert_eq!(
            variation_of_information(&m, 0, 2).unwrap(),
            variation_of_information(&m, 2, 0).unwrap()
        );
        assert!(variation_of_information(&m, 0, 3).is_err());
    }

    #[test]
    fn measure_names() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        let err = "euclid".parse::<Measure>().unwrap_err();
        assert!(err.to_string().contains("kl2, vi, bc, tv, hellinger"));
    }

    #[test]
    fn distance_matrix_shape_and_duplicates() {
        let m = ResponseMatrix::from_rows(
            &[[1, 1, 4], [2, 2, 5], [3, 3, 5], [2, 2, 1]],
            LikertScale::FIVE_POINT,
        )
        .unwrap();
        for measure in Measure::ALL {
            let d = distance_matrix(&m, measure, None).unwrap();
            assert_eq!(d.size, 3);
            for i in 0..3 {
                assert_eq!(d.get(i, i), 0.0);
                for j in 0..3 {
                    let (a, b) = (d.get(i, j), d.get(j, i));
                    assert!(a == b || (a.is_nan() && b.is_nan()));
                }
            }
            assert_eq!(d.get(0, 1), 0.0, "{measure}");
        }
    }

    #[test]
    fn distance_matrix_marks_failures_and_smooths() {
        let m = ResponseMatrix::from_rows(&[[1, 2], [1, 2]], LikertScale::new(2).unwrap()).unwrap();
        let d = distance_matrix(&m, Measure::Kl2, None).unwrap();
        assert!(d.get(0, 1).is_nan());
        assert_eq!(d.failures.len(), 1);
        assert_eq!(d.failures[0].error, Error::SupportMismatch { index: 0 });

        let d = distance_matrix(&m, Measure::Bc, None).unwrap();
        assert_eq!(d.failures[0].error, Error::DisjointSupport);

        let d = distance_matrix(&m, Measure::Kl2, Some(0.5)).unwrap();
        assert!(d.failures.is_empty());
        assert!(d.get(0, 1) > 0.0 && d.get(0, 1).is_finite());

        assert!(distance_matrix(&m, Measure::Tv, Some(-1.0)).is_err());
    }
}
