// SPDX-License-Identifier: Apache-2.0

//! CSV ingestion and the report formats emitted by the `ordpat` binary.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{pattern_entropy, OpdReport, PatternDistribution};
use crate::encoding::{CodeSpace, CodeTableRow, Encoder, EncodingScheme, PatternCode};
use crate::error::PatternError;
use crate::ties::GeneralizedCodec;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("line {line}, column {column}: `{cell}` is not a finite number")]
    Parse {
        line: u64,
        column: usize,
        cell: String,
    },

    #[error("line {line}: row has no column {column}")]
    MissingCell { line: u64, column: usize },

    #[error("no column named `{0}`")]
    UnknownColumn(String),

    #[error("selected column has no values")]
    EmptyColumn,

    #[error("invalid code file: {0}")]
    Codes(String),

    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// A column of a CSV file holding one series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesFile {
    pub path: PathBuf,
    /// Header name, or a zero-based column index.
    pub column: String,
    pub header: bool,
}

impl SeriesFile {
    /// First column of a file with a header row.
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            column: "0".into(),
            header: true,
        }
    }

    pub fn with_column(mut self, column: impl Into<String>) -> Self {
        self.column = column.into();
        self
    }

    pub fn with_header(mut self, header: bool) -> Self {
        self.header = header;
        self
    }
}

/// Reads the selected column of a CSV file, in file order.
pub fn read_series(file: &SeriesFile) -> Result<Vec<f64>, IoError> {
    let handle = std::fs::File::open(&file.path).map_err(|source| IoError::Io {
        path: file.path.clone(),
        source,
    })?;
    read_series_from(handle, &file.column, file.header)
}

/// [`read_series`] over any reader. A column given by name requires a header.
pub fn read_series_from<R: Read>(
    reader: R,
    column: &str,
    header: bool,
) -> Result<Vec<f64>, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let index = if header {
        let headers = rdr.headers()?;
        match headers.iter().position(|h| h == column) {
            Some(i) => i,
            None => column
                .parse()
                .map_err(|_| IoError::UnknownColumn(column.to_string()))?,
        }
    } else {
        column
            .parse()
            .map_err(|_| IoError::UnknownColumn(column.to_string()))?
    };

    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = record.get(index).ok_or(IoError::MissingCell {
            line,
            column: index,
        })?;
        match cell.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ => {
                return Err(IoError::Parse {
                    line,
                    column: index,
                    cell: cell.to_string(),
                })
            }
        }
    }
    if out.is_empty() {
        return Err(IoError::EmptyColumn);
    }
    Ok(out)
}

/// Renders codes of one `(d, space)` as their rank (or generalized rank)
/// tuples.
#[derive(Debug, Clone)]
pub struct PatternLabeler {
    inner: Labeler,
}

#[derive(Debug, Clone)]
enum Labeler {
    Encoded(Encoder),
    Generalized(GeneralizedCodec),
}

impl PatternLabeler {
    pub fn new(d: usize, space: CodeSpace) -> Result<Self, PatternError> {
        let inner = match space {
            CodeSpace::Permutation(scheme) => Labeler::Encoded(Encoder::new(d, scheme)?),
            CodeSpace::Generalized => Labeler::Generalized(GeneralizedCodec::new(d)?),
        };
        Ok(Self { inner })
    }

    pub fn label(&self, value: u64) -> Result<String, PatternError> {
        Ok(match &self.inner {
            Labeler::Encoded(enc) => enc.decode(value)?.to_rank().to_string(),
            Labeler::Generalized(codec) => codec.pattern(value)?.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SpaceName {
    Kse,
    Lehmer,
    Generalized,
}

impl From<CodeSpace> for SpaceName {
    fn from(space: CodeSpace) -> Self {
        match space {
            CodeSpace::Permutation(EncodingScheme::Kse) => SpaceName::Kse,
            CodeSpace::Permutation(EncodingScheme::Lehmer) => SpaceName::Lehmer,
            CodeSpace::Generalized => SpaceName::Generalized,
        }
    }
}

impl From<SpaceName> for CodeSpace {
    fn from(name: SpaceName) -> Self {
        match name {
            SpaceName::Kse => CodeSpace::Permutation(EncodingScheme::Kse),
            SpaceName::Lehmer => CodeSpace::Permutation(EncodingScheme::Lehmer),
            SpaceName::Generalized => CodeSpace::Generalized,
        }
    }
}

/// JSON form of an extracted code sequence; `null` marks a skipped window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodesDocument {
    pub d: usize,
    space: SpaceName,
    pub codes: Vec<Option<u64>>,
}

impl CodesDocument {
    pub fn new(d: usize, space: CodeSpace, codes: &[Option<PatternCode>]) -> Self {
        Self {
            d,
            space: space.into(),
            codes: codes.iter().map(|c| c.map(|c| c.value())).collect(),
        }
    }

    pub fn space(&self) -> CodeSpace {
        self.space.into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("codes serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Codes(e.to_string()))
    }

    pub fn distribution(&self) -> Result<PatternDistribution, IoError> {
        Ok(PatternDistribution::from_values(
            self.codes.iter().copied(),
            self.d,
            self.space(),
        )?)
    }
}

/// Reads a code file: either a [`CodesDocument`] or one code per line, with
/// empty lines for skipped windows (the latter needs `d` and `space`).
pub fn read_codes(
    path: &Path,
    fallback: Option<(usize, CodeSpace)>,
) -> Result<CodesDocument, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        return CodesDocument::from_json(&text);
    }
    let (d, space) = fallback.ok_or_else(|| {
        IoError::Codes("line-based code files need the pattern length and scheme".into())
    })?;
    let mut codes = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            codes.push(None);
        } else {
            let v = line.parse().map_err(|_| IoError::Parse {
                line: n as u64 + 1,
                column: 0,
                cell: line.to_string(),
            })?;
            codes.push(Some(v));
        }
    }
    Ok(CodesDocument {
        d,
        space: space.into(),
        codes,
    })
}

/// Newline-delimited codes, skipped windows as empty lines.
pub fn codes_lines(codes: &[Option<PatternCode>]) -> String {
    let mut out = String::with_capacity(codes.len() * 3);
    for c in codes {
        if let Some(c) = c {
            write!(out, "{}", c.value()).unwrap();
        }
        out.push('\n');
    }
    out
}

/// One line per row: `2,3,1 | 1,1,0 | kse 4 | lehmer 3`.
pub fn code_table_text(rows: &[CodeTableRow]) -> String {
    rows.iter()
        .map(|r| {
            format!(
                "{} | {} | kse {} | lehmer {}\n",
                r.rank, r.inversion, r.kse, r.lehmer
            )
        })
        .collect()
}

pub fn code_table_csv(rows: &[CodeTableRow]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "inversion", "kse", "lehmer"])?;
    for r in rows {
        w.write_record([
            r.rank.to_string(),
            r.inversion.to_string(),
            r.kse.to_string(),
            r.lehmer.to_string(),
        ])?;
    }
    Ok(csv_string(w))
}

#[derive(Serialize)]
struct TableRowJson<'a> {
    rank: &'a [usize],
    inversion: &'a [usize],
    kse: u64,
    lehmer: u64,
}

pub fn code_table_json(rows: &[CodeTableRow]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| TableRowJson {
            rank: r.rank.as_slice(),
            inversion: r.inversion.as_slice(),
            kse: r.kse,
            lehmer: r.lehmer,
        })
        .collect();
    serde_json::to_string(&rows).expect("table serializes")
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
}

/// `code,pattern,count,frequency` rows for observed codes, followed by
/// `total` and `skipped` summary rows. Frequencies use six decimals.
pub fn distribution_csv(dist: &PatternDistribution) -> Result<String, IoError> {
    let labeler = PatternLabeler::new(dist.d(), dist.space())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["code", "pattern", "count", "frequency"])?;
    for (code, freq) in dist.frequencies() {
        w.write_record([
            code.to_string(),
            labeler.label(code)?,
            dist.count(code).to_string(),
            format!("{freq:.6}"),
        ])?;
    }
    w.write_record(["total", "", &dist.total().to_string(), ""])?;
    w.write_record(["skipped", "", &dist.skipped().to_string(), ""])?;
    Ok(csv_string(w))
}

#[derive(Serialize)]
struct DistributionJson {
    d: usize,
    space: SpaceName,
    total: u64,
    skipped: u64,
    entropy: Option<f64>,
    patterns: Vec<PatternJson>,
}

#[derive(Serialize)]
struct PatternJson {
    code: u64,
    pattern: String,
    count: u64,
    frequency: f64,
}

pub fn distribution_json(dist: &PatternDistribution) -> Result<String, IoError> {
    let labeler = PatternLabeler::new(dist.d(), dist.space())?;
    let patterns = dist
        .frequencies()
        .into_iter()
        .map(|(code, frequency)| {
            Ok(PatternJson {
                code,
                pattern: labeler.label(code)?,
                count: dist.count(code),
                frequency,
            })
        })
        .collect::<Result<Vec<_>, PatternError>>()?;
    let doc = DistributionJson {
        d: dist.d(),
        space: dist.space().into(),
        total: dist.total(),
        skipped: dist.skipped(),
        entropy: pattern_entropy(dist).ok(),
        patterns,
    };
    Ok(serde_json::to_string(&doc).expect("distribution serializes"))
}

#[derive(Serialize)]
struct OpdJson {
    d: usize,
    alpha_pos: f64,
    alpha_neg: f64,
    signed: f64,
    n_windows: u64,
    degenerate: bool,
}

pub fn opd_json(report: &OpdReport) -> String {
    serde_json::to_string(&OpdJson {
        d: report.d,
        alpha_pos: report.alpha_pos,
        alpha_neg: report.alpha_neg,
        signed: report.signed,
        n_windows: report.n_windows,
        degenerate: report.degenerate,
    })
    .expect("report serializes")
}
