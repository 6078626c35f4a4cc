//! Command-line surface over the `hecke_dirac` library: one verb per module operation, text or
//! JSON output, and the `verify` driver for invariant suites and reference tables.

pub mod args;
pub mod golden;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use hecke_dirac::chartab::cache_dir_from_env;
use hecke_dirac::residues::enumerate_reslin;
use hecke_dirac::rootsys::ParameterFunction;
use serde::Serialize;
use thiserror::Error;

use args::{parse_params, Cli, Command, Format, Suite};
use report::{DiracReport, PartitionsReport, PinReport, ResLinReport, TableReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Consistency(_) => 1,
        }
    }
}

/// Rendered output and whether every check it reports passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub consistent: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.consistent {
            0
        } else {
            1
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(value),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if let Some(jobs) = g.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let cache: Option<PathBuf> = g.cache_dir.clone().or_else(cache_dir_from_env);
    let cache = cache.as_deref();
    let ok = |output: String| Ok(Outcome { output, consistent: true });
    match &cli.command {
        Command::Table { ty, group } => {
            let rs = report::root_system(&ty.cartan_type)?;
            let r = TableReport::build(&rs, *group, cache)?;
            ok(render(g.format, &r, TableReport::render_text))
        }
        Command::Pin { ty } => {
            let d = report::dirac_data(&report::root_system(&ty.cartan_type)?, cache)?;
            ok(render(g.format, &PinReport::build(&d), PinReport::render_text))
        }
        Command::Elliptic { ty } => {
            let d = report::dirac_data(&report::root_system(&ty.cartan_type)?, cache)?;
            ok(render(g.format, &DiracReport::elliptic(&d), DiracReport::render_text))
        }
        Command::Index { ty } => {
            let d = report::dirac_data(&report::root_system(&ty.cartan_type)?, cache)?;
            let r = DiracReport::elliptic(&d).with_splits(&d)?;
            ok(render(g.format, &r, DiracReport::render_text))
        }
        Command::CentralChars { ty, params } => {
            let rs = report::root_system(&ty.cartan_type)?;
            let values = match params {
                Some(p) => Some(report::parameter_values(&rs, &parse_params(p).map_err(CliError::Usage)?)?),
                None => None,
            };
            let d = report::dirac_data(&rs, cache)?;
            let r = DiracReport::elliptic(&d).with_central_characters(&d, values.as_deref())?;
            ok(render(g.format, &r, DiracReport::render_text))
        }
        Command::Reslin { ty, params } => {
            let rs = report::root_system(&ty.cartan_type)?;
            let values = match params {
                Some(p) => Some(report::parameter_values(&rs, &parse_params(p).map_err(CliError::Usage)?)?),
                None => None,
            };
            let set = enumerate_reslin(&rs, &ParameterFunction::generic(&rs)).map_err(|e| CliError::Usage(e.to_string()))?;
            ok(render(g.format, &ResLinReport::build(&rs, &set, values.as_deref()), ResLinReport::render_text))
        }
        Command::Partitions { family, n, exceptional } => {
            let r = match (family, n) {
                (Some(f), Some(n)) if !exceptional => PartitionsReport::classical(*f, *n),
                _ => PartitionsReport::exceptional(),
            };
            ok(render(g.format, &r, PartitionsReport::render_text))
        }
        Command::Verify { suite, cartan_type } => {
            let mut checks = Vec::new();
            if let Some(t) = cartan_type {
                let d = report::dirac_data(&report::root_system(t)?, cache)?;
                checks.extend(verify::invariant_suite(&d));
            }
            if *suite == Suite::Golden {
                checks.extend(verify::golden_suite(cartan_type.as_deref(), cache).map_err(CliError::Consistency)?);
            }
            if checks.is_empty() {
                return Err(CliError::Usage("the invariant suite needs --type".into()));
            }
            let consistent = checks.iter().all(|c| c.passed);
            let output = match g.format {
                Format::Json => {
                    let rows: Vec<_> = checks
                        .iter()
                        .map(|c| serde_json::json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                        .collect();
                    serde_json::to_string_pretty(&serde_json::json!({ "passed": consistent, "checks": rows })).unwrap() + "\n"
                }
                Format::Text => {
                    let passed = checks.iter().filter(|c| c.passed).count();
                    let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
                    s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
                    s
                }
            };
            Ok(Outcome { output, consistent })
        }
    }
}
