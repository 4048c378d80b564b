//! Verification suites: each suite turns one layer of the library into a
//! list of [`CheckRecord`]s, deterministically under the configured seed.

mod dynamics;
mod geometry;
mod logic;
mod main_theorem;
mod measure;
mod mik;
mod star;
mod tnorm;

use crate::config::{SuiteConfig, SuiteName};
use crate::report::CheckRecord;
use projlogic_core::io;
use projlogic_core::operators::HermitianOperator;
use projlogic_core::{Error, Result};

/// Execute the configured suites in canonical order. Suites run in parallel
/// when the thread pool allows; records are merged in suite order, so the
/// output is independent of the scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suites = config.concrete_suites();
    let results: Vec<Result<Vec<CheckRecord>>> = {
        use rayon::prelude::*;
        suites.par_iter().map(|s| run_one(*s, config)).collect()
    };
    let mut records = Vec::new();
    for result in results {
        records.extend(result?);
    }
    Ok(records)
}

fn run_one(suite: SuiteName, config: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    match suite {
        SuiteName::Geometry => geometry::run(config),
        SuiteName::Measure => measure::run(config),
        SuiteName::Star => star::run(config),
        SuiteName::Logic => logic::run(config),
        SuiteName::Tnorm => tnorm::run(config),
        SuiteName::Dynamics => dynamics::run(config),
        SuiteName::Mik => mik::run(config),
        SuiteName::MainTheorem => main_theorem::run(config),
        SuiteName::All => unreachable!("expanded by concrete_suites"),
    }
}

/// Operators supplied on the command line, validated against the configured
/// dimension. They join the random corpora of the suites that accept them.
pub(crate) fn extra_operators(config: &SuiteConfig) -> Result<Vec<HermitianOperator>> {
    let mut out = Vec::new();
    for path in &config.operators {
        let (op, _defect) = io::load_hermitian(path, &config.tol)?;
        if op.dim() != config.dim {
            return Err(Error::DimensionMismatch {
                left: op.dim(),
                right: config.dim,
            });
        }
        out.push(op);
    }
    Ok(out)
}

/// Seed label helper: one stream per (suite, purpose).
pub(crate) fn label(suite: &str, purpose: &str) -> String {
    format!("suite/{suite}/{purpose}")
}
