//! Complex vectors on disk: CSV with `re,im` columns or a JSON array of `[re, im]` pairs.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{check_dim, HilbertVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorFormat {
    Csv,
    Json,
}

impl FromStr for VectorFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

impl fmt::Display for VectorFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

impl VectorFormat {
    /// Format implied by the file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        path.extension()
            .and_then(|e| e.to_str())
            .ok_or_else(|| Error::UnsupportedFormat(path.display().to_string()))?
            .parse()
    }
}

pub fn parse_vector(text: &str, format: VectorFormat) -> Result<HilbertVector> {
    let entries = match format {
        VectorFormat::Json => {
            let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()
        }
        VectorFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .trim(csv::Trim::All)
                .comment(Some(b'#'))
                .flexible(true)
                .from_reader(text.as_bytes());
            let mut out = Vec::new();
            for (i, rec) in reader.records().enumerate() {
                let rec = rec?;
                if i == 0 && rec.get(0) == Some("re") {
                    continue;
                }
                let field = |k: usize| -> Result<f64> {
                    match rec.get(k) {
                        Some(s) => s
                            .parse()
                            .map_err(|_| Error::Parse(format!("row {}: bad number '{s}'", i + 1))),
                        None if k == 1 => Ok(0.0),
                        None => Err(Error::Parse(format!("row {}: empty", i + 1))),
                    }
                };
                if rec.len() > 2 {
                    return Err(Error::Parse(format!("row {}: expected 're,im'", i + 1)));
                }
                out.push(Complex64::new(field(0)?, field(1)?));
            }
            out
        }
    };
    HilbertVector::new(entries)
}

pub fn render_vector(v: &HilbertVector, format: VectorFormat) -> Result<String> {
    match format {
        VectorFormat::Json => {
            let pairs: Vec<[f64; 2]> = v.as_slice().iter().map(|z| [z.re, z.im]).collect();
            Ok(serde_json::to_string(&pairs)?)
        }
        VectorFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["re", "im"])?;
            for z in v.as_slice() {
                w.write_record([z.re.to_string(), z.im.to_string()])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

/// Reads a vector; with `expected_dim` set, a length mismatch is an error.
pub fn load_vector(path: &Path, format: VectorFormat, expected_dim: Option<usize>) -> Result<HilbertVector> {
    let v = parse_vector(&std::fs::read_to_string(path)?, format)?;
    if let Some(n) = expected_dim {
        check_dim(n, v.dim())?;
    }
    Ok(v)
}

pub fn save_vector(path: &Path, v: &HilbertVector, format: VectorFormat) -> Result<()> {
    std::fs::write(path, render_vector(v, format)?)?;
    Ok(())
}
