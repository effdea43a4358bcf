//! Coefficient files (versioned JSON), sample files (CSV) and grid specs.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cutjump_core::transform::{geometric_grid, linear_grid, Geometry, MomentSequence, SampledFunction};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub schema_version: String,
    pub label: String,
    pub coefficients: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub provenance: String,
}

impl CoefficientFile {
    pub fn validate(&self) -> CliResult<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema_version {:?}; expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        if self.coefficients.is_empty() {
            return Err(CliError::Input("coefficient list is empty".into()));
        }
        if let Some(eps) = self.epsilon {
            if !(eps >= 0.0) || !eps.is_finite() {
                return Err(CliError::Input(format!("epsilon must be finite and >= 0, got {eps}")));
            }
        }
        Ok(())
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let file: Self = serde_json::from_str(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("coefficient file serializes");
        s.push('\n');
        s
    }

    pub fn moments(&self) -> CliResult<MomentSequence> {
        let seq = MomentSequence::new(self.coefficients.clone(), self.label.clone())?;
        Ok(match self.epsilon {
            Some(eps) => seq.with_noise_level(eps)?,
            None => seq,
        })
    }
}

/// `min:max:count`, spaced geometrically in x and linearly in v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(format!("grid {s:?} is not of the form min:max:count"));
        };
        let min: f64 = min.trim().parse().map_err(|e| format!("grid min: {e}"))?;
        let max: f64 = max.trim().parse().map_err(|e| format!("grid max: {e}"))?;
        let count: usize = count.trim().parse().map_err(|e| format!("grid count: {e}"))?;
        if !(min.is_finite() && max.is_finite()) || max <= min || count < 2 {
            return Err(format!("grid {s:?} needs finite min < max and count >= 2"));
        }
        Ok(Self { min, max, count })
    }
}

impl GridSpec {
    pub fn points(&self, geometry: Geometry) -> CliResult<Vec<f64>> {
        match geometry {
            Geometry::VLine => Ok(linear_grid(self.min, self.max, self.count)),
            Geometry::XHalfLine => {
                if self.min <= 0.0 {
                    return Err(CliError::Input("x-grid needs a positive minimum".into()));
                }
                Ok(geometric_grid(self.min, self.max, self.count))
            }
        }
    }
}

pub fn grid_points(spec: Option<GridSpec>, geometry: Geometry) -> CliResult<Vec<f64>> {
    match spec {
        Some(spec) => spec.points(geometry),
        None => Ok(geometry.default_grid()),
    }
}

/// A single degree `M` or an inclusive range `lo:hi`; `lo > hi` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("degree {t:?}: {e}"));
        match s.split_once(':') {
            Some((lo, hi)) => Ok(Self {
                lo: parse(lo)?,
                hi: parse(hi)?,
            }),
            None => {
                let m = parse(s)?;
                Ok(Self { lo: m, hi: m })
            }
        }
    }
}

impl DegreeRange {
    pub fn degrees(&self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }
}

/// Header line shared by the CSV outputs.
pub fn csv_header(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# {}\n", body.join("; "))
}

pub fn samples_csv(header: &str, samples: &SampledFunction) -> String {
    let mut out = String::from(header);
    out.push_str("abscissa,value\n");
    for (x, y) in samples.points() {
        writeln!(out, "{x},{y}").unwrap();
    }
    out
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&PathBuf>, contents: &str) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, contents).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(contents.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
