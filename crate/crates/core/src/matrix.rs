//! Response matrices: `n` respondents (rows) by `p` items (columns), every
//! cell a Likert level in `1..=K`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of ordered response levels. Levels are `1..=K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct LikertScale(usize);

impl LikertScale {
    /// The five-point agree/disagree scale.
    pub const FIVE_POINT: LikertScale = LikertScale(5);

    pub fn new(levels: usize) -> Result<Self> {
        if levels < 2 || levels > u16::MAX as usize {
            return Err(Error::InvalidScale(levels));
        }
        Ok(LikertScale(levels))
    }

    #[inline]
    pub fn levels(self) -> usize {
        self.0
    }

    #[inline]
    pub fn contains(self, level: i64) -> bool {
        level >= 1 && level <= self.0 as i64
    }

    /// Maximum attainable entropy in bits, `log2 K`.
    pub fn max_entropy(self) -> f64 {
        (self.0 as f64).log2()
    }
}

impl TryFrom<usize> for LikertScale {
    type Error = Error;

    fn try_from(levels: usize) -> Result<Self> {
        LikertScale::new(levels)
    }
}

impl From<LikertScale> for usize {
    fn from(scale: LikertScale) -> usize {
        scale.0
    }
}

/// Validated, immutable `n x p` matrix of Likert responses stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResponseMatrix {
    n: usize,
    p: usize,
    scale: LikertScale,
    cells: Vec<u16>,
}

impl ResponseMatrix {
    /// Builds a matrix from row-major cells, validating shape and range.
    pub fn from_vec(n: usize, p: usize, scale: LikertScale, cells: Vec<u16>) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::Empty);
        }
        if cells.len() != n * p {
            return Err(Error::ShapeMismatch {
                rows: n,
                cols: p,
                expected: n * p,
                found: cells.len(),
            });
        }
        if let Some(pos) = cells.iter().position(|&x| !scale.contains(x as i64)) {
            return Err(Error::OutOfRange {
                line: (pos / p + 1) as u64,
                column: pos % p + 1,
                value: cells[pos] as i64,
                levels: scale.levels(),
            });
        }
        Ok(ResponseMatrix { n, p, scale, cells })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows<R: AsRef<[u16]>>(rows: &[R], scale: LikertScale) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let p = rows[0].as_ref().len();
        let mut cells = Vec::with_capacity(n * p);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != p {
                return Err(Error::RaggedRows {
                    line: (i + 1) as u64,
                    expected: p,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::from_vec(n, p, scale, cells)
    }

    /// Respondent count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Item count.
    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn scale(&self) -> LikertScale {
        self.scale
    }

    /// Response of respondent `i` to item `j` (both 0-based), as a level in `1..=K`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.cells[i * self.p + j]
    }

    /// Responses of respondent `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u16] {
        &self.cells[i * self.p..(i + 1) * self.p]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[u16]> + '_ {
        self.cells.chunks_exact(self.p)
    }

    /// Responses to item `j` across all respondents.
    pub fn column(&self, j: usize) -> impl ExactSizeIterator<Item = u16> + '_ {
        self.cells[j..].iter().step_by(self.p).copied()
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    /// Swaps the roles of respondents and items.
    pub fn transpose(&self) -> ResponseMatrix {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.p {
            cells.extend(self.column(j));
        }
        ResponseMatrix {
            n: self.p,
            p: self.n,
            scale: self.scale,
            cells,
        }
    }

    /// Serializes as headerless delimiter-separated rows, one respondent per line.
    pub fn to_csv(&self, delimiter: u8) -> String {
        let sep = delimiter as char;
        let mut out = String::with_capacity(self.cells.len() * 2);
        for row in self.rows() {
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    out.push(sep);
                }
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// A parsed CSV file: the matrix plus its header row, if one was present.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Option<Vec<String>>,
    pub matrix: ResponseMatrix,
}

/// Parses comma-separated integer rows. See [`read_csv`].
pub fn parse_csv(text: &str, scale: LikertScale) -> Result<ResponseMatrix> {
    read_csv(text, scale, b',').map(|t| t.matrix)
}

/// Parses delimiter-separated integer rows into a validated matrix.
///
/// The first row is treated as a header when any of its cells is not an
/// integer. Blank cells are rejected. Line numbers in errors are 1-based and
/// count the header.
pub fn read_csv(text: &str, scale: LikertScale, delimiter: u8) -> Result<CsvTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(delimiter)
        .from_reader(text.as_bytes());

    let mut header = None;
    let mut width = None;
    let mut cells = Vec::new();
    let mut n = 0usize;

    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        let line = record.position().map_or(index as u64 + 1, |p| p.line());

        if index == 0
            && record
                .iter()
                .any(|t| !t.is_empty() && t.parse::<i64>().is_err())
        {
            header = Some(record.iter().map(str::to_owned).collect());
            continue;
        }

        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                line,
                expected,
                found: record.len(),
            });
        }
        for (j, token) in record.iter().enumerate() {
            let column = j + 1;
            if token.is_empty() {
                return Err(Error::BlankCell { line, column });
            }
            let value: i64 = token.parse().map_err(|_| Error::InvalidCell {
                line,
                column,
                token: token.to_owned(),
            })?;
            if !scale.contains(value) {
                return Err(Error::OutOfRange {
                    line,
                    column,
                    value,
                    levels: scale.levels(),
                });
            }
            cells.push(value as u16);
        }
        n += 1;
    }

    let p = match width {
        Some(p) if n > 0 => p,
        _ => return Err(Error::Empty),
    };
    if let Some(h) = &header {
        let h: &Vec<String> = h;
        if h.len() != p {
            return Err(Error::RaggedRows {
                line: 1,
                expected: p,
                found: h.len(),
            });
        }
    }
    let matrix = ResponseMatrix::from_vec(n, p, scale, cells)?;
    Ok(CsvTable { header, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> LikertScale {
        LikertScale::FIVE_POINT
    }

    #[test]
    fn parses_plain_rows() {
        let m = parse_csv("1,2\n3,4", k5()).unwrap();
        assert_eq!((m.n(), m.p()), (2, 2));
        assert_eq!(m.row(0), &[1, 2]);
        assert_eq!(m.row(1), &[3, 4]);
    }

    #[test]
    fn skips_detected_header() {
        let t = read_csv("a,b\n1,2", k5(), b',').unwrap();
        assert_eq!(t.header, Some(vec!["a".to_owned(), "b".to_owned()]));
        assert_eq!((t.matrix.n(), t.matrix.p()), (1, 2));
        assert_eq!(t.matrix.row(0), &[1, 2]);
    }

    #[test]
    fn out_of_range_names_the_cell() {
        let err = parse_csv("1,6\n2,2", k5()).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRange {
                line: 1,
                column: 2,
                value: 6,
                levels: 5
            }
        );
        assert!(matches!(
            parse_csv("1,2\n0,2", k5()),
            Err(Error::OutOfRange {
                line: 2,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn rejects_ragged_blank_and_empty() {
        assert!(matches!(
            parse_csv("1,2\n3", k5()),
            Err(Error::RaggedRows {
                line: 2,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_csv("1,,2", k5()),
            Err(Error::BlankCell { line: 1, column: 2 })
        ));
        assert_eq!(parse_csv("", k5()), Err(Error::Empty));
        assert_eq!(parse_csv("q1,q2\n", k5()), Err(Error::Empty));
        assert!(matches!(
            parse_csv("1,2\n3,x", k5()),
            Err(Error::InvalidCell {
                line: 2,
                column: 2,
                ..
            })
        ));
    }

    #[test]
    fn custom_delimiter_and_whitespace() {
        let t = read_csv("1; 2\n 3;4\n", k5(), b';').unwrap();
        assert_eq!(t.matrix.cells(), &[1, 2, 3, 4]);
    }

    #[test]
    fn transpose_examples() {
        let m = ResponseMatrix::from_rows(&[[1, 2], [3, 4]], k5()).unwrap();
        let t = m.transpose();
        assert_eq!(t.row(0), &[1, 3]);
        assert_eq!(t.row(1), &[2, 4]);
        assert_eq!(t.transpose(), m);

        let wide = ResponseMatrix::from_rows(&[[1, 2, 3]], k5()).unwrap();
        let tall = wide.transpose();
        assert_eq!((tall.n(), tall.p()), (3, 1));
        assert_eq!(tall.cells(), &[1, 2, 3]);
    }

    #[test]
    fn scale_bounds() {
        assert!(LikertScale::new(1).is_err());
        assert!(LikertScale::new(2).is_ok());
        assert!(ResponseMatrix::from_rows(&[[1, 3]], LikertScale::new(2).unwrap()).is_err());
    }

    #[test]
    fn csv_output_reparses() {
        let m = ResponseMatrix::from_rows(&[[1, 5, 2], [4, 4, 3]], k5()).unwrap();
        assert_eq!(m.to_csv(b','), "1,5,2\n4,4,3\n");
        assert_eq!(parse_csv(&m.to_csv(b','), k5()).unwrap(), m);
    }
}
