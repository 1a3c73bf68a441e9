//! Run configuration and run reports.

use std::path::PathBuf;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::Ambient;

/// Overrides the default worker count (available parallelism).
pub const JOBS_ENV: &str = "BMREL_JOBS";

/// Seed for randomized checks when none is given explicitly.
pub const DEFAULT_SEED: u64 = 0x5EED_B4A1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub jobs: usize,
    pub memory_cap: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub count_only: bool,
    pub materialize: bool,
    pub verify: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig { jobs: 1, memory_cap: None, output_path: None, count_only: false, materialize: false, verify: false }
    }
}

impl JobConfig {
    /// Worker count from an explicit flag, else `BMREL_JOBS`, else the
    /// machine's available parallelism.
    pub fn resolve_jobs(flag: Option<usize>) -> Result<usize> {
        Self::resolve_jobs_from(flag, std::env::var(JOBS_ENV).ok().as_deref())
    }

    pub fn resolve_jobs_from(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
        let jobs = match (flag, env) {
            (Some(n), _) => n,
            (None, Some(v)) if !v.trim().is_empty() => {
                v.trim().parse().map_err(|_| Error::Parse(format!("{JOBS_ENV}={v:?} is not a positive integer")))?
            }
            _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if jobs == 0 {
            return Err(Error::Parse("worker count must be at least 1".into()));
        }
        Ok(jobs)
    }

    pub fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(Error::Parse("worker count must be at least 1".into()));
        }
        if self.memory_cap == Some(0) {
            return Err(Error::Parse("memory cap must be positive".into()));
        }
        Ok(())
    }

    /// Largest number of relations that fit in the memory cap.
    pub fn solution_cap(&self, ambient: Ambient) -> Option<u64> {
        self.memory_cap.map(|bytes| bytes / estimated_relation_bytes(ambient))
    }
}

/// Rough in-memory footprint of one materialised relation.
pub fn estimated_relation_bytes(ambient: Ambient) -> u64 {
    let squares = (ambient.alpha * ambient.beta) as u64;
    squares * std::mem::size_of::<crate::square::GeometricSquare>() as u64 + 32
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub elapsed_ms: u128,
    pub counts: Vec<(String, String)>,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
    pub relations: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> RunReport {
        RunReport { command: command.into(), ..RunReport::default() }
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.elapsed_ms = elapsed.as_millis();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jobs_resolution_order() {
        assert_eq!(JobConfig::resolve_jobs_from(Some(3), Some("7")).unwrap(), 3);
        assert_eq!(JobConfig::resolve_jobs_from(None, Some("7")).unwrap(), 7);
        assert!(JobConfig::resolve_jobs_from(None, None).unwrap() >= 1);
        assert!(JobConfig::resolve_jobs_from(None, Some("x")).is_err());
        assert!(JobConfig::resolve_jobs_from(Some(0), None).is_err());
    }

    #[test]
    fn caps() {
        let cfg = JobConfig { memory_cap: Some(0), ..JobConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = JobConfig { memory_cap: Some(10_000), ..JobConfig::default() };
        let amb = Ambient::new(2, 2).unwrap();
        assert_eq!(cfg.solution_cap(amb), Some(10_000 / estimated_relation_bytes(amb)));
    }
}
