//! JSON tuple documents. Matrices are row-major nested arrays with each
//! complex entry written as `[re, im]`.

use std::fs;
use std::path::Path;

use mclab_core::{CMat, OperatorTuple, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TupleDocument {
    pub schema_version: u32,
    pub n: usize,
    pub dim: usize,
    pub operators: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

pub fn matrix_to_json(m: &CMat) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Parses a rectangular matrix; `what` names it in error messages.
pub fn matrix_from_json(rows: &MatrixJson, what: &str) -> Result<CMat, CliError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(CliError::Parse(format!("{what} is empty")));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(CliError::Parse(format!(
            "{what}: row {i} has {} entries, row 0 has {ncols}",
            r.len()
        )));
    }
    Ok(CMat::from_fn(nrows, ncols, |i, j| {
        let [re, im] = rows[i][j];
        C64::new(re, im)
    }))
}

impl TupleDocument {
    pub fn from_tuple(t: &OperatorTuple, metadata: Option<Metadata>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n: t.n(),
            dim: t.dim(),
            operators: t.ops().iter().map(matrix_to_json).collect(),
            metadata,
        }
    }

    pub fn to_tuple(&self) -> Result<OperatorTuple, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported schemaVersion {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.operators.len() != self.n {
            return Err(CliError::Parse(format!(
                "n = {} but {} operators given",
                self.n,
                self.operators.len()
            )));
        }
        let ops = self
            .operators
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mat = matrix_from_json(m, &format!("operators[{k}]"))?;
                if mat.shape() != (self.dim, self.dim) {
                    return Err(CliError::Parse(format!(
                        "operators[{k}] is {}×{}, expected {d}×{d}",
                        mat.nrows(),
                        mat.ncols(),
                        d = self.dim
                    )));
                }
                Ok(mat)
            })
            .collect::<Result<Vec<_>, _>>()?;
        OperatorTuple::new(ops).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid tuple document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_tuple(path: &Path) -> Result<OperatorTuple, CliError> {
    TupleDocument::parse(&read_text(path)?)?.to_tuple()
}
