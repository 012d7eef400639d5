use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use salemlab_core::arith::DEFAULT_PRIME_BOUND;
use salemlab_core::spectral::MAX_DENSE_VERTICES;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Largest trace box a configuration may request.
pub const MAX_BOX_SIZE: u64 = 50_000_000;

/// A reproducible experiment: identical configs produce identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default)]
    pub format: Option<Format>,
}

fn default_jobs() -> usize {
    1
}

fn default_edge_probability() -> f64 {
    0.5
}

fn default_prime_bound() -> u64 {
    DEFAULT_PRIME_BOUND
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentKind {
    TwoCover {
        vertices: usize,
        instances: u64,
        #[serde(default = "default_edge_probability")]
        edge_probability: f64,
    },
    CyclicScaling {
        m_min: usize,
        m_max: usize,
    },
    SalemEnumeration {
        half_degree: usize,
        height: u32,
    },
    RamificationSurvey {
        half_degree: usize,
        height: u32,
        #[serde(default = "default_prime_bound")]
        prime_bound: u64,
    },
}

impl ExperimentKind {
    pub fn default_format(&self) -> Format {
        match self {
            Self::TwoCover { .. } | Self::CyclicScaling { .. } => Format::Csv,
            Self::SalemEnumeration { .. } | Self::RamificationSurvey { .. } => Format::Json,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self { experiment, seed: 0, out: None, jobs: 1, format: None }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        let config: Self =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    /// Explicit format, else the output file's extension, else the kind's default.
    pub fn resolved_format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => self.experiment.default_format(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.jobs == 0 {
            return Err(usage("jobs must be at least 1"));
        }
        match self.experiment {
            ExperimentKind::TwoCover { vertices, instances, edge_probability } => {
                if !(3..=MAX_DENSE_VERTICES / 2).contains(&vertices) {
                    return Err(usage(format!("vertices must lie in 3..={}", MAX_DENSE_VERTICES / 2)));
                }
                if instances == 0 {
                    return Err(usage("instances must be at least 1"));
                }
                if !(edge_probability > 0.0 && edge_probability <= 1.0) {
                    return Err(usage("edge_probability must lie in (0, 1]"));
                }
            }
            ExperimentKind::CyclicScaling { m_min, m_max } => {
                if m_min < 2 || m_min > m_max || 3 * m_max > MAX_DENSE_VERTICES {
                    return Err(usage(format!("need 2 <= m_min <= m_max <= {}", MAX_DENSE_VERTICES / 3)));
                }
                if m_min == m_max {
                    return Err(usage("a slope fit needs m_min < m_max"));
                }
            }
            ExperimentKind::SalemEnumeration { half_degree, height }
            | ExperimentKind::RamificationSurvey { half_degree, height, .. } => {
                if half_degree < 2 {
                    return Err(usage("half_degree must be at least 2"));
                }
                let size = (2 * u64::from(height) + 1).checked_pow(u32::try_from(half_degree).unwrap_or(u32::MAX));
                if size.is_none_or(|s| s > MAX_BOX_SIZE) {
                    return Err(usage(format!("search box exceeds {MAX_BOX_SIZE} polynomials")));
                }
            }
        }
        Ok(())
    }
}
