use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use icr_core::format::{fmt_opt, fmt_sig};
use icr_core::simulation::{plot_csv, sweep_csv, table_grid};
use icr_core::{
    distance_matrix, read_csv, reliability_report, run_sweep, CsvTable, Error, IndexValue,
    LikertScale, ReliabilityReport, SimConfig,
};

use crate::{AnalyzeArgs, DistancesArgs, Format, InputArgs, OutputArgs, SimulateArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }

    fn from_core(e: Error, path: Option<&Path>) -> Self {
        let line = match &e {
            Error::RaggedRows { line, .. }
            | Error::OutOfRange { line, .. }
            | Error::BlankCell { line, .. }
            | Error::InvalidCell { line, .. } => Some(*line),
            _ => None,
        };
        let msg = match (path, line) {
            (Some(p), Some(l)) => format!("{}:{l}: {e}", p.display()),
            (Some(p), None) => format!("{}: {e}", p.display()),
            (None, _) => e.to_string(),
        };
        match e {
            Error::InvalidScale(_)
            | Error::InvalidSmoothing(_)
            | Error::UnknownMeasure(_)
            | Error::InvalidConfig(_) => CliError::Usage(msg),
            e if e.is_degenerate() => CliError::Degenerate(msg),
            _ => CliError::Data(msg),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Degenerate(m) => f.write_str(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn load(input: &InputArgs) -> Result<CsvTable, CliError> {
    let scale = LikertScale::new(input.scale).map_err(|e| CliError::from_core(e, None))?;
    if !input.delimiter.is_ascii() {
        return Err(CliError::Usage(format!(
            "delimiter {:?} must be a single ASCII character",
            input.delimiter
        )));
    }
    let text = fs::read_to_string(&input.input)
        .map_err(|e| CliError::Data(format!("{}: {e}", input.input.display())))?;
    read_csv(&text, scale, input.delimiter as u8)
        .map_err(|e| CliError::from_core(e, Some(&input.input)))
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let table = load(&args.input)?;
    let report = reliability_report(&table.matrix)
        .map_err(|e| CliError::from_core(e, Some(&args.input.input)))?;
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report_csv(&report, args.out.precision),
    };
    emit(&args.out, &text)
}

fn index_cell(v: &IndexValue, precision: usize) -> String {
    fmt_opt(v.value(), precision)
}

/// One header line and one data row; undefined indices are `NA`.
fn report_csv(r: &ReliabilityReport, precision: usize) -> String {
    let mut header: Vec<String> = [
        "n",
        "p",
        "levels",
        "alpha",
        "respondent_alpha",
        "phi1",
        "phi2",
        "phi3",
        "phi4",
        "min_respondent_entropy",
        "max_respondent_entropy",
        "modal_entropy",
        "nonzero_variation_count",
        "nonzero_variation_ratio",
    ]
    .map(String::from)
    .to_vec();
    header.extend((1..=r.p).map(|j| format!("item_entropy_{j}")));

    let mut row = vec![r.n.to_string(), r.p.to_string(), r.levels.to_string()];
    row.push(index_cell(&r.alpha, precision));
    row.push(index_cell(&r.respondent_alpha, precision));
    row.extend(r.phi.iter().map(|v| index_cell(v, precision)));
    for v in [
        r.min_respondent_entropy,
        r.max_respondent_entropy,
        r.modal_entropy,
    ] {
        row.push(fmt_sig(v, precision));
    }
    row.push(r.zero_variation.m.to_string());
    row.push(fmt_sig(r.zero_variation.ratio, precision));
    row.extend(r.item_entropies.iter().map(|&h| fmt_sig(h, precision)));

    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn distances(args: DistancesArgs) -> Result<(), CliError> {
    let table = load(&args.input)?;
    let m = &table.matrix;
    let d = distance_matrix(m, args.measure, args.smoothing)
        .map_err(|e| CliError::from_core(e, None))?;

    let labels: Vec<String> = match &table.header {
        Some(h) => h.iter().map(|s| csv_field(s)).collect(),
        None => (1..=m.p()).map(|j| format!("item_{j}")).collect(),
    };
    let mut text = String::from("item");
    for l in &labels {
        text.push(',');
        text.push_str(l);
    }
    text.push('\n');
    for (i, label) in labels.iter().enumerate() {
        text.push_str(label);
        for &v in d.row(i) {
            text.push(',');
            text.push_str(&fmt_sig(v, args.out.precision));
        }
        text.push('\n');
    }

    if !d.failures.is_empty() {
        let mut by_kind: BTreeMap<&str, usize> = BTreeMap::new();
        for f in &d.failures {
            *by_kind.entry(f.error.kind()).or_default() += 1;
        }
        let kinds: Vec<String> = by_kind.iter().map(|(k, c)| format!("{k}: {c}")).collect();
        eprintln!(
            "warning: {} item pairs undefined for {} ({}), rendered as NA",
            d.failures.len(),
            args.measure,
            kinds.join(", ")
        );
    }
    emit(&args.out, &text)
}

fn default_plot_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map_or_else(|| "sweep".into(), |s| s.to_string_lossy().into_owned());
    output.with_file_name(format!("{stem}_plot.csv"))
}

pub fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let scale = LikertScale::new(args.scale).map_err(|e| CliError::from_core(e, None))?;
    let cfg = SimConfig {
        n: args.n,
        p: args.p,
        scale,
        fractions: args.fractions,
        seed: args.seed,
        replicates: args.replicates,
    };
    let rows = run_sweep(&cfg).map_err(|e| CliError::from_core(e, None))?;

    let sweep = match args.format {
        Format::Csv => sweep_csv(&rows, args.precision),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("sweep serializes");
            s.push('\n');
            s
        }
    };
    let plot_path = args.plot.unwrap_or_else(|| default_plot_path(&args.output));
    write_file(&args.output, &sweep)?;
    write_file(&plot_path, &plot_csv(&rows, args.precision))?;

    print!("{}", table_grid(&rows, args.precision));
    eprintln!(
        "wrote {} and {}",
        args.output.display(),
        plot_path.display()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_path_follows_output() {
        assert_eq!(
            default_plot_path(Path::new("out/run.csv")),
            PathBuf::from("out/run_plot.csv")
        );
    }

    #[test]
    fn quoting() {
        assert_eq!(csv_field("q1"), "q1");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
