//! Benchmark generator and fraction sweep comparing the ICR variants with
//! Cronbach's alpha.
//!
//! A benchmark matrix starts as i.i.d. uniform responses. Then
//! `d = round(c * p)` columns (half rounds up), chosen uniformly without
//! replacement, are all overwritten with one shared column `s` that is itself
//! uniform across respondents. Within the replaced items each respondent is
//! perfectly consistent. Across respondents the answers stay random.
//!
//! # Reproducibility
//!
//! Each replicate draws from its own ChaCha8 stream:
//! `ChaCha8Rng::seed_from_u64(seed)` followed by
//! `set_stream((fraction_index << 32) | replicate)`. Draw order within a
//! replicate is fixed: the `n x p` uniform cells row-major, then the `n`
//! entries of the shared column, then the sampled column indices
//! (`rand::seq::index::sample`). Results are therefore independent of thread
//! scheduling.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::cronbach_alpha;
use crate::error::{Error, Result};
use crate::format::{fmt_opt, fmt_sig};
use crate::icr::{EntropySummary, IcrVariant, IndexValue};
use crate::matrix::{LikertScale, ResponseMatrix};

pub const DEFAULT_SEED: u64 = 20_190_501;
pub const DEFAULT_REPLICATES: usize = 10;

/// Index names in sweep output order.
pub const INDEX_NAMES: [&str; 5] = ["phi1", "phi2", "phi3", "phi4", "cronbach"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub p: usize,
    pub scale: LikertScale,
    /// Fractions of duplicated columns, each in `(0, 1]`.
    pub fractions: Vec<f64>,
    pub seed: u64,
    pub replicates: usize,
}

impl Default for SimConfig {
    /// 1000 respondents, 50 items, five levels, fractions 0.1 to 1.0.
    fn default() -> Self {
        SimConfig {
            n: 1000,
            p: 50,
            scale: LikertScale::FIVE_POINT,
            fractions: (1..=10).map(|k| k as f64 / 10.0).collect(),
            seed: DEFAULT_SEED,
            replicates: DEFAULT_REPLICATES,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.p < 2 {
            return Err(Error::InvalidConfig(format!(
                "need n >= 2 and p >= 2, got n = {}, p = {}",
                self.n, self.p
            )));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be positive".into()));
        }
        if self.fractions.is_empty() {
            return Err(Error::InvalidConfig("no fractions given".into()));
        }
        for &c in &self.fractions {
            check_fraction(c, self.p)?;
        }
        Ok(())
    }

    /// The independent generator for one replicate of one fraction.
    pub fn replicate_rng(&self, fraction_index: usize, replicate: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((fraction_index as u64) << 32) | replicate as u64);
        rng
    }
}

fn check_fraction(c: f64, p: usize) -> Result<usize> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidConfig(format!("fraction {c} outside (0, 1]")));
    }
    let d = duplicated_columns(c, p);
    if d == 0 {
        return Err(Error::InvalidConfig(format!(
            "fraction {c} of {p} items rounds to zero columns"
        )));
    }
    Ok(d)
}

/// `round(c * p)` with halves rounded up.
pub fn duplicated_columns(c: f64, p: usize) -> usize {
    ((c * p as f64 + 0.5).floor() as usize).min(p)
}

/// An `n x p` matrix of i.i.d. uniform responses.
pub fn uniform_matrix<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    scale: LikertScale,
    rng: &mut R,
) -> Result<ResponseMatrix> {
    let k = scale.levels() as u16;
    let cells = (0..n * p).map(|_| rng.random_range(1..=k)).collect();
    ResponseMatrix::from_vec(n, p, scale, cells)
}

/// Draws one benchmark matrix with duplicated fraction `c`.
pub fn generate_benchmark<R: Rng + ?Sized>(
    cfg: &SimConfig,
    c: f64,
    rng: &mut R,
) -> Result<ResponseMatrix> {
    let d = check_fraction(c, cfg.p)?;
    let (n, p) = (cfg.n, cfg.p);
    let k = cfg.scale.levels() as u16;

    let mut cells: Vec<u16> = (0..n * p).map(|_| rng.random_range(1..=k)).collect();
    let shared: Vec<u16> = (0..n).map(|_| rng.random_range(1..=k)).collect();
    let columns = index::sample(rng, p, d);
    for (row, &s) in cells.chunks_exact_mut(p).zip(&shared) {
        for j in columns.iter() {
            row[j] = s;
        }
    }
    ResponseMatrix::from_vec(n, p, cfg.scale, cells)
}

/// The five indices computed on one generated matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateResult {
    pub fraction: f64,
    pub replicate: usize,
    /// `[phi1, phi2, phi3, phi4, cronbach]`
    pub indices: [IndexValue; 5],
}

fn evaluate(m: &ResponseMatrix) -> [IndexValue; 5] {
    let summary = EntropySummary::of(m);
    let [a, b, c, d] = IcrVariant::ALL.map(|v| IndexValue::from(summary.phi(v)));
    [a, b, c, d, cronbach_alpha(m).into()]
}

/// Generates and scores every replicate, ordered by fraction then replicate.
pub fn simulate_replicates(cfg: &SimConfig) -> Result<Vec<ReplicateResult>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = (0..cfg.fractions.len())
        .flat_map(|f| (0..cfg.replicates).map(move |r| (f, r)))
        .collect();
    jobs.into_par_iter()
        .map(|(f, replicate)| {
            let fraction = cfg.fractions[f];
            let mut rng = cfg.replicate_rng(f, replicate);
            let m = generate_benchmark(cfg, fraction, &mut rng)?;
            Ok(ReplicateResult {
                fraction,
                replicate,
                indices: evaluate(&m),
            })
        })
        .collect()
}

/// Mean and spread of one index over the replicates of a fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSummary {
    /// Mean over replicates where the index is defined; `None` if it never is.
    pub mean: Option<f64>,
    /// Sample standard deviation, when at least two replicates are defined.
    pub stddev: Option<f64>,
    /// Replicates on which the index was undefined.
    pub degenerate: usize,
}

impl IndexSummary {
    fn of(values: &[&IndexValue]) -> Self {
        let defined: Vec<f64> = values.iter().filter_map(|v| v.value()).collect();
        let degenerate = values.len() - defined.len();
        if defined.is_empty() {
            return IndexSummary {
                mean: None,
                stddev: None,
                degenerate,
            };
        }
        let count = defined.len() as f64;
        let mean = defined.iter().sum::<f64>() / count;
        let stddev = (defined.len() > 1).then(|| {
            let ss: f64 = defined.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (count - 1.0)).sqrt()
        });
        IndexSummary {
            mean: Some(mean),
            stddev,
            degenerate,
        }
    }
}

/// One fraction of the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub fraction: f64,
    pub duplicated: usize,
    pub replicates: usize,
    /// `[phi1, phi2, phi3, phi4, cronbach]`
    pub indices: [IndexSummary; 5],
}

impl SweepRow {
    pub fn phi(&self, k: usize) -> &IndexSummary {
        &self.indices[k]
    }

    pub fn cronbach(&self) -> &IndexSummary {
        &self.indices[4]
    }
}

/// Aggregates replicate results into one row per configured fraction.
pub fn summarize(cfg: &SimConfig, results: &[ReplicateResult]) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(cfg.fractions.len());
    for (f, chunk) in results.chunks(cfg.replicates).enumerate() {
        let fraction = cfg.fractions[f];
        let indices = std::array::from_fn(|k| {
            let column: Vec<&IndexValue> = chunk.iter().map(|r| &r.indices[k]).collect();
            IndexSummary::of(&column)
        });
        rows.push(SweepRow {
            fraction,
            duplicated: duplicated_columns(fraction, cfg.p),
            replicates: chunk.len(),
            indices,
        });
    }
    rows.sort_by(|a, b| a.fraction.total_cmp(&b.fraction));
    rows
}

/// Runs the full sweep: one row per fraction, ascending.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<SweepRow>> {
    let results = simulate_replicates(cfg)?;
    Ok(summarize(cfg, &results))
}

/// `fraction,phi1,...,cronbach,phi1_sd,...,cronbach_sd`; undefined cells are `NA`.
pub fn sweep_csv(rows: &[SweepRow], precision: usize) -> String {
    let mut out = String::from("fraction");
    for name in INDEX_NAMES {
        out.push(',');
        out.push_str(name);
    }
    for name in INDEX_NAMES {
        out.push_str(&format!(",{name}_sd"));
    }
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_sig(row.fraction, precision));
        for s in &row.indices {
            out.push(',');
            out.push_str(&fmt_opt(s.mean, precision));
        }
        for s in &row.indices {
            out.push(',');
            out.push_str(&fmt_opt(s.stddev, precision));
        }
        out.push('\n');
    }
    out
}

/// Long-format plot data: `fraction,index_name,value`, one line per mean.
pub fn plot_csv(rows: &[SweepRow], precision: usize) -> String {
    let mut out = String::from("fraction,index_name,value\n");
    for (k, name) in INDEX_NAMES.iter().enumerate() {
        for row in rows {
            out.push_str(&format!(
                "{},{name},{}\n",
                fmt_sig(row.fraction, precision),
                fmt_opt(row.indices[k].mean, precision)
            ));
        }
    }
    out
}

/// Indices as rows, fractions (in percent) as columns.
pub fn table_grid(rows: &[SweepRow], precision: usize) -> String {
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(INDEX_NAMES.len() + 1);
    let mut header = vec!["Fraction".to_owned()];
    header.extend(rows.iter().map(|r| fmt_trimmed(r.fraction * 100.0)));
    grid.push(header);
    for (k, name) in ["phi1", "phi2", "phi3", "phi4", "Cronbach"]
        .iter()
        .enumerate()
    {
        let mut line = vec![(*name).to_owned()];
        line.extend(rows.iter().map(|r| fmt_opt(r.indices[k].mean, precision)));
        grid.push(line);
    }

    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &grid {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (s, &w))| {
                if c == 0 {
                    format!("{s:<w$}")
                } else {
                    format!("{s:>w$}")
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn fmt_trimmed(x: f64) -> String {
    let s = format!("{x:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(fractions: Vec<f64>) -> SimConfig {
        SimConfig {
            n: 200,
            p: 20,
            fractions,
            replicates: 3,
            ..SimConfig::default()
        }
    }

    #[test]
    fn rounding_of_duplicated_columns() {
        assert_eq!(duplicated_columns(0.5, 50), 25);
        assert_eq!(duplicated_columns(0.7, 50), 35);
        assert_eq!(duplicated_columns(0.05, 50), 3);
        assert_eq!(duplicated_columns(1.0, 50), 50);
        assert_eq!(duplicated_columns(0.01, 20), 0);
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::default().validate().is_ok());
        assert!(small(vec![0.0]).validate().is_err());
        assert!(small(vec![1.5]).validate().is_err());
        assert!(small(vec![0.01]).validate().is_err());
        assert!(small(vec![]).validate().is_err());
        assert!(SimConfig {
            replicates: 0,
            ..small(vec![0.5])
        }
        .validate()
        .is_err());
    }

    #[test]
    fn full_duplication_makes_every_row_constant() {
        let cfg = small(vec![1.0]);
        let m = generate_benchmark(&cfg, 1.0, &mut cfg.replicate_rng(0, 0)).unwrap();
        assert!(m.rows().all(|r| r.iter().all(|&x| x == r[0])));
    }

    #[test]
    fn half_duplication_structure() {
        let cfg = SimConfig::default();
        let m = generate_benchmark(&cfg, 0.5, &mut cfg.replicate_rng(4, 0)).unwrap();
        let columns: Vec<Vec<u16>> = (0..m.p()).map(|j| m.column(j).collect()).collect();
        let mut groups: Vec<(Vec<u16>, usize)> = Vec::new();
        for c in columns {
            match groups.iter_mut().find(|(g, _)| *g == c) {
                Some((_, count)) => *count += 1,
                None => groups.push((c, 1)),
            }
        }
        let mut sizes: Vec<usize> = groups.iter().map(|g| g.1).collect();
        sizes.sort_unstable();
        assert_eq!(sizes.len(), 26);
        assert_eq!(*sizes.last().unwrap(), 25);
        assert!(sizes[..25].iter().all(|&s| s == 1));
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = small(vec![0.3]);
        let a = generate_benchmark(&cfg, 0.3, &mut cfg.replicate_rng(0, 1)).unwrap();
        let b = generate_benchmark(&cfg, 0.3, &mut cfg.replicate_rng(0, 1)).unwrap();
        let c = generate_benchmark(&cfg, 0.3, &mut cfg.replicate_rng(0, 2)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sweep_rows_are_ordered_and_complete() {
        let cfg = small(vec![0.5, 1.0, 0.2]);
        let rows = run_sweep(&cfg).unwrap();
        let fractions: Vec<f64> = rows.iter().map(|r| r.fraction).collect();
        assert_eq!(fractions, vec![0.2, 0.5, 1.0]);
        for s in &rows[2].indices {
            assert_eq!(s.mean, Some(1.0));
            assert_eq!(s.stddev, Some(0.0));
            assert_eq!(s.degenerate, 0);
        }
        assert_eq!(run_sweep(&cfg).unwrap(), rows);
    }

    #[test]
    fn sweep_outputs() {
        let cfg = small(vec![0.5, 1.0]);
        let rows = run_sweep(&cfg).unwrap();
        let csv = sweep_csv(&rows, 6);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "fraction,phi1,phi2,phi3,phi4,cronbach,phi1_sd,phi2_sd,phi3_sd,phi4_sd,cronbach_sd"
        );
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1.00000,1.00000,1.00000"));

        let plot = plot_csv(&rows, 6);
        assert_eq!(plot.lines().count(), 1 + 5 * 2);
        assert!(plot.contains("1.00000,cronbach,1.00000"));

        let grid = table_grid(&rows, 3);
        assert!(grid.starts_with("Fraction"));
        assert!(grid.lines().nth(5).unwrap().starts_with("Cronbach"));
    }

    #[test]
    fn summary_handles_degenerate_values() {
        let a = IndexValue::Value(0.5);
        let b = IndexValue::Degenerate {
            degenerate: "DegenerateModalEntropy".into(),
        };
        let s = IndexSummary::of(&[&a, &b]);
        assert_eq!(s.mean, Some(0.5));
        assert_eq!(s.stddev, None);
        assert_eq!(s.degenerate, 1);
        assert_eq!(IndexSummary::of(&[&b]).mean, None);
    }
}
