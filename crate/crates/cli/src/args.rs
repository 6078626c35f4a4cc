use std::collections::HashMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_dirac::exactnum::rational::parse_rational;
use hecke_dirac::exactnum::Rational;
use hecke_dirac::residues::PartitionFamily;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "hecke-dirac", version, about = "Elliptic characters, pin covers and Dirac index data for Weyl groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Character table cache; defaults to $HECKE_DIRAC_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for character table computation.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Weyl,
    Pin,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Module invariants for one type.
    Invariants,
    /// Invariants plus the golden tables and worked example.
    Golden,
}

#[derive(Debug, Clone, Args)]
pub struct TypeArg {
    /// Cartan type, e.g. G2, F4, A1xB2.
    #[arg(long = "type", short = 't')]
    pub cartan_type: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of W, its pin cover, or the even subgroup W̃′.
    Table {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, value_enum, default_value_t = GroupKind::Weyl)]
        group: GroupKind,
    },
    /// Classes of the pin cover, spin characters and the Sg involution.
    Pin {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Elliptic Gram matrix of the quotient lattice and a pure basis.
    Elliptic {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Dirac index splits of the pure basis vectors.
    Index {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Casimir scalars of genuine pin irreducibles matched to linear residual points.
    CentralChars {
        #[command(flatten)]
        ty: TypeArg,
        /// Parameter values such as `k=1,k'=3/2`.
        #[arg(long)]
        params: Option<String>,
    },
    /// W-orbits of linear residual points.
    Reslin {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        params: Option<String>,
    },
    /// Nilpotent partitions with their flags, or the bundled exceptional component data.
    Partitions {
        #[arg(long, required_unless_present = "exceptional")]
        family: Option<PartitionFamily>,
        #[arg(long, required_unless_present = "exceptional")]
        n: Option<u32>,
        #[arg(long, conflicts_with_all = ["family", "n"])]
        exceptional: bool,
    },
    /// Run invariant suites and golden comparisons; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Golden)]
        suite: Suite,
        /// Restrict to one type; without it the golden suite checks every golden file.
        #[arg(long = "type", short = 't')]
        cartan_type: Option<String>,
    },
}

/// Parses `k=1,k'=3/2`.
pub fn parse_params(s: &str) -> Result<HashMap<String, Rational>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (name, value) = p.split_once('=').ok_or_else(|| format!("expected name=value, got {p:?}"))?;
            let value = parse_rational(value).map_err(|e| e.to_string())?;
            Ok((name.trim().to_string(), value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecke_dirac::exactnum::rational::rat;

    #[test]
    fn params_parse() {
        let p = parse_params("k=1, k'=3/2").unwrap();
        assert_eq!(p["k"], rat(1, 1));
        assert_eq!(p["k'"], rat(3, 2));
        assert!(parse_params("k").is_err());
        assert!(parse_params("k=x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
