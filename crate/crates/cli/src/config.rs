//! Suite configuration: dimensions, sample counts, seed, tolerance
//! overrides, and the suite selection.

use projlogic_core::{Error, Result, Tolerances};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Geometry,
    Measure,
    Star,
    Logic,
    Tnorm,
    Dynamics,
    Mik,
    MainTheorem,
    All,
}

impl SuiteName {
    /// Canonical execution order of the concrete suites.
    pub const CONCRETE: [SuiteName; 8] = [
        SuiteName::Geometry,
        SuiteName::Measure,
        SuiteName::Star,
        SuiteName::Logic,
        SuiteName::Tnorm,
        SuiteName::Dynamics,
        SuiteName::Mik,
        SuiteName::MainTheorem,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Geometry => "geometry",
            SuiteName::Measure => "measure",
            SuiteName::Star => "star",
            SuiteName::Logic => "logic",
            SuiteName::Tnorm => "tnorm",
            SuiteName::Dynamics => "dynamics",
            SuiteName::Mik => "mik",
            SuiteName::MainTheorem => "main-theorem",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "geometry" => Ok(SuiteName::Geometry),
            "measure" => Ok(SuiteName::Measure),
            "star" => Ok(SuiteName::Star),
            "logic" => Ok(SuiteName::Logic),
            "tnorm" => Ok(SuiteName::Tnorm),
            "dynamics" => Ok(SuiteName::Dynamics),
            "mik" => Ok(SuiteName::Mik),
            "main-theorem" => Ok(SuiteName::MainTheorem),
            "all" => Ok(SuiteName::All),
            other => Err(format!(
                "unknown suite `{other}` (expected geometry, measure, star, logic, tnorm, dynamics, mik, main-theorem, or all)"
            )),
        }
    }
}

/// Configuration of one verification run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dim: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub tol: Tolerances,
    /// The overrides applied on top of the defaults, echoed into reports.
    pub tol_overrides: BTreeMap<String, f64>,
    pub suites: Vec<SuiteName>,
    pub family: Option<PathBuf>,
    pub operators: Vec<PathBuf>,
    /// 0 means the thread pool decides.
    pub threads: usize,
}

impl SuiteConfig {
    pub fn new(dim: usize, n_samples: usize, seed: u64, suites: Vec<SuiteName>) -> Result<Self> {
        if !(2..=8).contains(&dim) {
            return Err(Error::DimensionMismatch { left: dim, right: 8 });
        }
        if n_samples < 100 {
            return Err(Error::Parse {
                path: "--samples".into(),
                message: format!("need at least 100 samples, got {n_samples}"),
            });
        }
        Ok(Self {
            dim,
            n_samples,
            seed,
            tol: Tolerances::default(),
            tol_overrides: BTreeMap::new(),
            suites,
            family: None,
            operators: Vec::new(),
            threads: 0,
        })
    }

    pub fn apply_tol_override(&mut self, name: &str, value: f64) -> Result<()> {
        self.tol.set(name, value)?;
        self.tol_overrides.insert(name.to_string(), value);
        Ok(())
    }

    /// The concrete suites to execute, in canonical order.
    pub fn concrete_suites(&self) -> Vec<SuiteName> {
        if self.suites.contains(&SuiteName::All) {
            SuiteName::CONCRETE.to_vec()
        } else {
            let mut seen = Vec::new();
            for s in &self.suites {
                if !seen.contains(s) {
                    seen.push(*s);
                }
            }
            seen
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in SuiteName::CONCRETE {
            assert_eq!(SuiteName::from_str(name.as_str()).unwrap(), name);
        }
        assert_eq!(SuiteName::from_str("all").unwrap(), SuiteName::All);
        assert!(SuiteName::from_str("bogus").is_err());
    }

    #[test]
    fn config_validates_bounds() {
        assert!(SuiteConfig::new(1, 1000, 0, vec![SuiteName::All]).is_err());
        assert!(SuiteConfig::new(9, 1000, 0, vec![SuiteName::All]).is_err());
        assert!(SuiteConfig::new(3, 10, 0, vec![SuiteName::All]).is_err());
        let cfg = SuiteConfig::new(3, 1000, 7, vec![SuiteName::All]).unwrap();
        assert_eq!(cfg.concrete_suites().len(), 8);
    }

    #[test]
    fn tol_overrides_are_recorded() {
        let mut cfg = SuiteConfig::new(2, 1000, 7, vec![SuiteName::Star]).unwrap();
        cfg.apply_tol_override("probe", 1e-7).unwrap();
        assert_eq!(cfg.tol.probe, 1e-7);
        assert_eq!(cfg.tol_overrides["probe"], 1e-7);
        assert!(cfg.apply_tol_override("nope", 1.0).is_err());
    }
}
