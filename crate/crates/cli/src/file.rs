//! The algebra file format: structured JSON with scalars as exact strings.
//!
//! ```json
//! {"dim":2,"field":{"kind":"rational"},"constants":[["1","0","0","0"],["0","1","1","0"]]}
//! ```
//!
//! `field` is `{"kind":"rational"}` or `{"kind":"prime","p":<odd prime>}`;
//! `constants` holds `dim` rows of `dim²` scalar strings, with the structure
//! constant for `e_j·e_k` in column `(j−1)·dim + k` (1-based). Scalars are
//! never binary floats, so files are exact and diffable. The canonical
//! serialization (what [`AlgebraFile::to_canonical_json`] and the generator
//! produce) is compact single-line JSON plus a trailing newline; parsing a
//! canonical file and re-serializing reproduces it byte for byte.

use algeq_core::{FieldSpec, Mat, Msc};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub field: FieldTag,
    pub constants: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldTag {
    Rational,
    Prime { p: u64 },
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid algebra file: {e}"))
    }

    pub fn field_spec(&self) -> Result<FieldSpec, String> {
        match self.field {
            FieldTag::Rational => Ok(FieldSpec::RATIONAL),
            FieldTag::Prime { p } => FieldSpec::prime(p).map_err(|e| e.to_string()),
        }
    }

    /// Validates shapes and scalar syntax and builds the algebra.
    pub fn to_msc(&self) -> Result<Msc, String> {
        let field = self.field_spec()?;
        let m = self.dim;
        if m == 0 {
            return Err("dim must be at least 1".into());
        }
        if self.constants.len() != m {
            return Err(format!(
                "expected {m} constant rows, found {}",
                self.constants.len()
            ));
        }
        for (i, row) in self.constants.iter().enumerate() {
            if row.len() != m * m {
                return Err(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    m * m
                ));
            }
        }
        let mut parse_err = None;
        let mat = Mat::from_fn(field, m, m * m, |r, c| {
            match field.parse_scalar(&self.constants[r][c]) {
                Ok(s) => s,
                Err(e) => {
                    parse_err.get_or_insert_with(|| e.to_string());
                    field.zero()
                }
            }
        });
        if let Some(e) = parse_err {
            return Err(e);
        }
        Msc::new(m, mat).map_err(|e| e.to_string())
    }

    pub fn from_msc(a: &Msc) -> AlgebraFile {
        let field = match a.field().modulus() {
            None => FieldTag::Rational,
            Some(p) => FieldTag::Prime { p },
        };
        let m = a.dim();
        let constants = (0..m)
            .map(|r| (0..m * m).map(|c| a.mat().at(r, c).to_string()).collect())
            .collect();
        AlgebraFile {
            dim: m,
            field,
            constants,
        }
    }

    /// The canonical byte-deterministic serialization.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("algebra files always serialize");
        s.push('\n');
        s
    }
}

/// Reads and validates an algebra file from disk.
pub fn load_algebra(path: &std::path::Path) -> Result<Msc, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    AlgebraFile::parse(&text)?.to_msc()
}
