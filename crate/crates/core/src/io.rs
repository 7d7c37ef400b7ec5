//! JSON sequence files.
//!
//! ```json
//! {"dimension": 2, "field_tag": "complex", "vectors": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]}
//! ```
//!
//! `vectors[i]` is the `i`-th vector of the sequence, i.e. column `i` of the
//! synthesis matrix. Entries are plain numbers when `field_tag` is `"real"`
//! and `[re, im]` pairs (or plain numbers) when it is `"complex"`. Operators
//! use the same layout: `vectors[j]` is the image of the `j`-th standard basis
//! vector.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::VectorSeq;
use crate::linalg::{Matrix, Scalar};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("value error: {0}")]
    Value(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldTag {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(self) -> Scalar {
        match self {
            Entry::Real(x) => Scalar::new(x, 0.0),
            Entry::Complex([re, im]) => Scalar::new(re, im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub dimension: usize,
    pub field_tag: FieldTag,
    pub vectors: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SequenceFile {
    /// Serialises the columns of `m`. The tag is `"real"` only when every
    /// imaginary part is `+0.0`, so parsing the file back is bit-exact.
    pub fn from_matrix(m: &Matrix, label: Option<String>) -> Self {
        let real = m.as_slice().iter().all(|z| z.im.to_bits() == 0);
        let vectors = m
            .columns()
            .map(|col| {
                col.iter()
                    .map(|z| {
                        if real {
                            Entry::Real(z.re)
                        } else {
                            Entry::Complex([z.re, z.im])
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            dimension: m.rows(),
            field_tag: if real {
                FieldTag::Real
            } else {
                FieldTag::Complex
            },
            vectors,
            label,
        }
    }

    pub fn from_seq(s: &VectorSeq, label: Option<String>) -> Self {
        Self::from_matrix(s.synthesis(), label)
    }

    /// Columns as an `dimension x k` matrix, for any number `k` of vectors.
    pub fn to_matrix(&self) -> Result<Matrix, FileError> {
        let n = self.dimension;
        if n == 0 {
            return Err(FileError::Shape("dimension must be positive".into()));
        }
        let mut cols = Vec::with_capacity(self.vectors.len());
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != n {
                return Err(FileError::Shape(format!(
                    "vector {i} has {} entries, expected {n}",
                    v.len()
                )));
            }
            let col: Vec<Scalar> = v.iter().map(|e| e.value()).collect();
            for z in &col {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(FileError::Value(format!(
                        "vector {i} has a non-finite entry"
                    )));
                }
                if self.field_tag == FieldTag::Real && z.im != 0.0 {
                    return Err(FileError::Value(format!(
                        "vector {i} has a complex entry in a real file"
                    )));
                }
            }
            cols.push(col);
        }
        Ok(Matrix::from_columns(n, &cols))
    }

    /// Square sequence: exactly `dimension` vectors.
    pub fn to_seq(&self) -> Result<VectorSeq, FileError> {
        if self.vectors.len() != self.dimension {
            return Err(FileError::Shape(format!(
                "{} vectors for dimension {}",
                self.vectors.len(),
                self.dimension
            )));
        }
        let m = self.to_matrix()?;
        VectorSeq::new(m).map_err(|e| FileError::Value(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }
}

pub fn read_file(path: &Path) -> Result<SequenceFile, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_sequence_str(text: &str) -> Result<VectorSeq, FileError> {
    serde_json::from_str::<SequenceFile>(text)?.to_seq()
}

pub fn parse_sequence(path: &Path) -> Result<VectorSeq, FileError> {
    read_file(path)?.to_seq()
}
