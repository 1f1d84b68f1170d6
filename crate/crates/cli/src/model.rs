//! JSON model files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use exact01_core::data::write_csv;
use exact01_core::{Dataset, Hyperplane, Sense, SolveReport};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 of the training set in canonical CSV form.
    pub dataset_hash: String,
    pub ub: usize,
    pub ub_mode: String,
    pub bounder: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema_version: u32,
    pub n: usize,
    pub d: usize,
    /// `[normal, offset]`
    pub coefficients: Vec<f64>,
    pub sense: String,
    pub optimal_loss: usize,
    pub combination: Vec<usize>,
    pub eps: f64,
    pub provenance: Provenance,
}

pub fn dataset_hash(dataset: &Dataset) -> String {
    let mut buf = Vec::new();
    write_csv(dataset, &mut buf).expect("writing to memory");
    hex::encode(Sha256::digest(&buf))
}

fn sense_name(s: Sense) -> &'static str {
    match s {
        Sense::Positive => "positive",
        Sense::Negative => "negative",
    }
}

impl ModelFile {
    pub fn from_report(dataset: &Dataset, report: &SolveReport, ub_mode: &str, bounder: &str) -> Self {
        ModelFile {
            schema_version: SCHEMA_VERSION,
            n: dataset.n(),
            d: dataset.d(),
            coefficients: report.hyperplane.homogeneous(),
            sense: sense_name(report.sense()).into(),
            optimal_loss: report.optimal_loss,
            combination: report.combination.clone(),
            eps: report.eps,
            provenance: Provenance {
                dataset_hash: dataset_hash(dataset),
                ub: report.ub,
                ub_mode: ub_mode.into(),
                bounder: bounder.into(),
            },
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::BadModel(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("unsupported schema_version {}", self.schema_version));
        }
        if self.coefficients.len() != self.d + 1 {
            return bad(format!(
                "expected {} coefficients for d = {}, found {}",
                self.d + 1,
                self.d,
                self.coefficients.len()
            ));
        }
        if self.optimal_loss > self.n {
            return bad(format!("optimal_loss {} exceeds n = {}", self.optimal_loss, self.n));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("invalid eps {}", self.eps));
        }
        self.sense()?;
        Ok(())
    }

    pub fn sense(&self) -> CliResult<Sense> {
        match self.sense.as_str() {
            "positive" => Ok(Sense::Positive),
            "negative" => Ok(Sense::Negative),
            other => Err(CliError::BadModel(format!("unknown sense {other:?}"))),
        }
    }

    pub fn hyperplane(&self) -> CliResult<Hyperplane> {
        let h = Hyperplane::from_homogeneous(&self.coefficients)
            .map_err(|e| CliError::BadModel(e.to_string()))?;
        Ok(h.with_sense(self.sense()?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let m: ModelFile = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> CliResult<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> CliResult<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
