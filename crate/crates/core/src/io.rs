//! JSON file formats.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constructions::{verify_claims, Claims, ConstructionReport, Verification};
use crate::error::{Error, Result};
use crate::gf::field;
use crate::linalg::GfMatrix;
use crate::search::{OracleResult, PerN};
use crate::vectors::{LabelSystem, ProfileDownSet, WeightProfile};

/// `{"q", "rows", "cols", "entries"}` with `entries` a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub q: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &GfMatrix) -> Self {
        MatrixFile {
            q: m.field().order() as u64,
            rows: m.n_rows(),
            cols: m.n_cols(),
            entries: m
                .values()
                .into_iter()
                .map(|row| row.into_iter().map(|v| v as u64).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<GfMatrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Malformed(format!(
                "{} rows declared, {} present",
                self.rows,
                self.entries.len()
            )));
        }
        if let Some(bad) = self.entries.iter().find(|row| row.len() != self.cols) {
            return Err(Error::Malformed(format!(
                "{} columns declared, a row has {}",
                self.cols,
                bad.len()
            )));
        }
        let flat: Vec<u64> = self.entries.iter().flatten().copied().collect();
        GfMatrix::from_values(field(self.q)?, self.rows, self.cols, &flat)
    }
}

/// `{"q", "lists", "kappa"?, "downset"?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelFile {
    pub q: u64,
    pub lists: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub downset: Option<Vec<Vec<usize>>>,
}

impl LabelFile {
    pub fn labels(&self) -> Result<LabelSystem> {
        LabelSystem::from_values(field(self.q)?, &self.lists)
    }

    pub fn kappa(&self) -> Result<WeightProfile> {
        self.kappa
            .clone()
            .map(WeightProfile::new)
            .ok_or_else(|| Error::Malformed("label file has no \"kappa\"".into()))
    }

    pub fn downset(&self) -> Result<ProfileDownSet> {
        let profiles = self
            .downset
            .clone()
            .ok_or_else(|| Error::Malformed("label file has no \"downset\"".into()))?;
        ProfileDownSet::new(profiles.into_iter().map(WeightProfile::new))
    }
}

/// Sidecar written next to a constructed matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub claims: Claims,
    pub verification: Verification,
}

impl ReportFile {
    pub fn from_report(report: &ConstructionReport) -> Result<Self> {
        Ok(ReportFile {
            claims: report.claims.clone(),
            verification: report.verify()?,
        })
    }

    /// Recomputes the verification of `matrix` against the stored claims.
    pub fn reverify(&self, matrix: &GfMatrix) -> Result<ReportFile> {
        Ok(ReportFile {
            claims: self.claims.clone(),
            verification: verify_claims(matrix, &self.claims)?,
        })
    }
}

/// `m.json` -> `m.report.json`.
pub fn report_path(matrix_path: &Path) -> PathBuf {
    let stem = matrix_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    matrix_path.with_file_name(format!("{stem}.report.json"))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub n: usize,
    pub subspace: MatrixFile,
    pub columns: MatrixFile,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerNJson {
    pub n: usize,
    pub max_count: u64,
    pub witness_count: u64,
}

impl From<&PerN> for PerNJson {
    fn from(p: &PerN) -> Self {
        PerNJson {
            n: p.n,
            max_count: p.max_count,
            witness_count: p.witness_count,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleJson {
    pub mode: &'static str,
    pub q: u64,
    pub r: usize,
    pub n_list: Vec<usize>,
    pub max_count: u64,
    pub best_n: usize,
    pub per_n: Vec<PerNJson>,
    pub witnesses: Vec<WitnessJson>,
    pub witness_supports: Vec<Vec<usize>>,
    pub witness_count: u64,
    pub truncated: bool,
    pub exhaustive: bool,
}

impl From<&OracleResult> for OracleJson {
    fn from(res: &OracleResult) -> Self {
        OracleJson {
            mode: res.query.mode.name(),
            q: res.query.field.order() as u64,
            r: res.query.r,
            n_list: res.query.n_list.clone(),
            max_count: res.max_count,
            best_n: res.best_n,
            per_n: res.per_n.iter().map(PerNJson::from).collect(),
            witnesses: res
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    n: w.n,
                    subspace: MatrixFile::from_matrix(w.subspace.basis()),
                    columns: MatrixFile::from_matrix(&w.columns),
                    support: w.support.clone(),
                })
                .collect(),
            witness_supports: res.witness_supports(),
            witness_count: res.witness_count,
            truncated: res.truncated,
            exhaustive: res.exhaustive,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Malformed(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}
