//! Serializable results of each verb and their text rendering.
//!
//! Rationals and polynomials are carried as strings so every report round-trips through JSON.

use std::collections::HashMap;
use std::fmt::Write;
use std::path::Path;

use hecke_dirac::chartab::{load_or_compute, CharacterTable, VirtualCharacter};
use hecke_dirac::elliptic::{pure_basis, DiracData};
use hecke_dirac::exactnum::rational::format_rational;
use hecke_dirac::exactnum::{Cyclotomic, Rational};
use hecke_dirac::group::Classes;
use hecke_dirac::pincover::{PinClassInfo, PinGroup};
use hecke_dirac::residues::{
    classify_partitions, component_elliptic, enumerate_reslin, format_coordinates, ComponentGroupAction,
    PartitionFamily, ResLinSet,
};
use hecke_dirac::rootsys::{ParameterFunction, RootSystem};
use hecke_dirac::weylgrp::WeylGroup;
use serde::{Deserialize, Serialize};

use crate::args::GroupKind;
use crate::CliError;

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn matrix(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(q).collect()).collect()
}

/// `a·χ + b·ψ` in table labels; multiplicity one is left implicit.
pub fn format_virtual(labels: &[String], v: &VirtualCharacter) -> String {
    let mut out = String::new();
    for (i, &c) in v.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if c.abs() != 1 {
            let _ = write!(out, "{}*", c.abs());
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Labels of the constituents of an honest character, repeated by multiplicity.
fn constituents(labels: &[String], v: &VirtualCharacter) -> Vec<String> {
    v.coeffs
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(labels[i].clone(), c.max(0) as usize))
        .collect()
}

pub fn root_system(ty: &str) -> Result<RootSystem, CliError> {
    RootSystem::parse(ty).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn dirac_data(rs: &RootSystem, cache: Option<&Path>) -> Result<DiracData, CliError> {
    DiracData::new(rs, cache).map_err(|e| CliError::Usage(e.to_string()))
}

/// Symbol values for `rs`, rejecting unknown or missing symbols.
pub fn parameter_values(rs: &RootSystem, params: &HashMap<String, Rational>) -> Result<Vec<Rational>, CliError> {
    let generic = ParameterFunction::generic(rs);
    if let Some(extra) = params.keys().find(|k| !generic.symbols().contains(k)) {
        return Err(CliError::Usage(format!(
            "unknown parameter {extra:?}; {} has symbols {:?}",
            rs.cartan_type(),
            generic.symbols()
        )));
    }
    let specialized = ParameterFunction::specialized(rs, params)
        .map_err(|missing| CliError::Usage(format!("missing value for parameter {missing:?}")))?;
    Ok(specialized.values().expect("specialized").to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub group: GroupKind,
    pub order: usize,
    pub table: CharacterTable,
}

impl TableReport {
    pub fn build(rs: &RootSystem, group: GroupKind, cache: Option<&Path>) -> Result<TableReport, CliError> {
        let ty = rs.cartan_type().to_string();
        let usage = |e: hecke_dirac::weylgrp::WeylError| CliError::Usage(e.to_string());
        let table = match group {
            GroupKind::Weyl => {
                let w = WeylGroup::new(rs).map_err(usage)?;
                load_or_compute(cache, "weyl", &ty, &w, w.classes())
            }
            GroupKind::Pin => {
                let p = PinGroup::new(rs).map_err(usage)?;
                load_or_compute(cache, "pin", &ty, &p, p.classes())
            }
            GroupKind::Even => {
                let p = PinGroup::new(rs).map_err(usage)?;
                let sub = p.even_subgroup();
                let classes = Classes::compute(&sub);
                load_or_compute(cache, "pin-even", &ty, &sub, &classes)
            }
        };
        Ok(TableReport { cartan_type: ty, group, order: table.group_order(), table })
    }

    pub fn render_text(&self) -> String {
        let t = &self.table;
        let mut out = format!("{:?} group of type {}, order {}, {} classes\n", self.group, self.cartan_type, self.order, t.class_count());
        let _ = writeln!(out, "class sizes: {:?}", t.classes.sizes);
        let _ = writeln!(out, "element orders: {:?}", t.classes.orders);
        for i in 0..t.len() {
            let row: Vec<String> = t.character(i).iter().map(Cyclotomic::to_string).collect();
            let _ = writeln!(out, "{:>6}  {}", t.labels[i], row.join("  "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub order: usize,
    pub even_order: usize,
    pub classes: Vec<PinClassInfo>,
    pub genuine: Vec<String>,
    pub genuine_even: Vec<String>,
    pub spin_plus: Vec<Cyclotomic>,
    pub spin_minus: Vec<Cyclotomic>,
    /// `Sg` as a permutation of the `W̃′` irreducibles, by label.
    pub sg: Vec<(String, String)>,
}

impl PinReport {
    pub fn build(d: &DiracData) -> PinReport {
        let el = &d.even_table.labels;
        PinReport {
            cartan_type: d.root_system().cartan_type().to_string(),
            order: d.pin_table.group_order(),
            even_order: d.even_order(),
            classes: d.pin().class_info(),
            genuine: d.genuine_pin().iter().map(|&i| d.pin_table.labels[i].clone()).collect(),
            genuine_even: d.genuine_even().iter().map(|&i| el[i].clone()).collect(),
            spin_plus: d.spin_plus.clone(),
            spin_minus: d.spin_minus.clone(),
            sg: d.sg.iter().enumerate().map(|(i, &j)| (el[i].clone(), el[j].clone())).collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "pin cover of type {}: order {}, even subgroup order {}, {} classes\n",
            self.cartan_type,
            self.order,
            self.even_order,
            self.classes.len()
        );
        for (c, info) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  class {c:>3}: word {:?} sheet {} size {} order {}{}",
                info.representative_word,
                info.central_sheet,
                info.size,
                info.order,
                if info.split { "" } else { " (fused with z)" }
            );
        }
        let _ = writeln!(out, "genuine W̃ irreducibles: {}", self.genuine.join(", "));
        let _ = writeln!(out, "genuine W̃′ irreducibles: {}", self.genuine_even.join(", "));
        let s = |v: &[Cyclotomic]| v.iter().map(Cyclotomic::to_string).collect::<Vec<_>>().join("  ");
        let _ = writeln!(out, "S+ on W̃′ classes: {}", s(&self.spin_plus));
        let _ = writeln!(out, "S- on W̃′ classes: {}", s(&self.spin_minus));
        let moved: Vec<String> = self.sg.iter().filter(|(a, b)| a < b).map(|(a, b)| format!("{a} <-> {b}")).collect();
        let _ = writeln!(out, "Sg: {}", if moved.is_empty() { "identity".to_string() } else { moved.join(", ") });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureBasisReport {
    /// Lattice coordinates in the quotient basis.
    pub vectors: Vec<Vec<i64>>,
    /// The same vectors lifted to virtual characters of `W`.
    pub characters: Vec<String>,
    pub norms: Vec<String>,
    pub squared_defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub delta: String,
    pub delta_plus: Vec<String>,
    pub delta_minus: Vec<String>,
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharacterReport {
    pub rep: String,
    pub degree: u64,
    pub scalar: String,
    /// Scalar at the requested parameter values.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// Orbit representatives of `Res^lin` with the same norm, in coweight coordinates; `None` when
    /// the residual points were not enumerated.
    pub matched_residues: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiracReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub elliptic_rank: usize,
    pub gram: Vec<Vec<String>>,
    pub pure_basis: Option<PureBasisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_splits: Option<Vec<SplitReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_characters: Option<Vec<CentralCharacterReport>>,
}

impl DiracReport {
    pub fn elliptic(d: &DiracData) -> DiracReport {
        let el = &d.elliptic;
        let pure = pure_basis(&el.quotient_gram).ok().map(|b| PureBasisReport {
            characters: b.vectors.iter().map(|v| format_virtual(&d.weyl_table.labels, &el.lift(v))).collect(),
            norms: b.norms.iter().map(q).collect(),
            squared_defect: q(&b.squared_defect),
            vectors: b.vectors,
        });
        DiracReport {
            cartan_type: d.root_system().cartan_type().to_string(),
            elliptic_rank: el.rank(),
            gram: matrix(&el.quotient_gram),
            pure_basis: pure,
            index_splits: None,
            central_characters: None,
        }
    }

    /// Adds the splits of the pure basis vectors; a violated split invariant is a consistency failure.
    pub fn with_splits(mut self, d: &DiracData) -> Result<DiracReport, CliError> {
        let Some(basis) = &self.pure_basis else {
            return Err(CliError::Usage(format!("no pure basis for {} at this lattice rank", self.cartan_type)));
        };
        let mut splits = Vec::new();
        for v in &basis.vectors {
            let delta = d.elliptic.lift(v);
            let s = d.split_index(&delta).map_err(|e| {
                CliError::Consistency(format!("{}: {e}", format_virtual(&d.weyl_table.labels, &delta)))
            })?;
            splits.push(SplitReport {
                delta: format_virtual(&d.weyl_table.labels, &delta),
                delta_plus: constituents(&d.even_table.labels, &s.delta_plus),
                delta_minus: constituents(&d.even_table.labels, &s.delta_minus),
                norm: q(&s.norm),
            });
        }
        self.index_splits = Some(splits);
        Ok(self)
    }

    pub fn with_central_characters(mut self, d: &DiracData, values: Option<&[Rational]>) -> Result<DiracReport, CliError> {
        let rs = d.root_system();
        let reslin = enumerate_reslin(rs, &ParameterFunction::generic(rs)).ok();
        let mut rows = Vec::new();
        for i in d.genuine_pin() {
            let scalar = d.casimir_on_pin(i).map_err(|e| CliError::Consistency(e.to_string()))?;
            let matched = reslin.as_ref().map(|set| {
                set.orbits.iter().filter(|o| o.norm == scalar).map(|o| format_coordinates(&o.representative)).collect()
            });
            rows.push(CentralCharacterReport {
                rep: d.pin_table.labels[i].clone(),
                degree: d.pin_table.degrees[i],
                value: values.map(|v| q(&scalar.eval_at(v))),
                scalar: scalar.to_string(),
                matched_residues: matched,
            });
        }
        self.central_characters = Some(rows);
        Ok(self)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("type {}: elliptic rank {}\n", self.cartan_type, self.elliptic_rank);
        let _ = writeln!(out, "Gram matrix of the elliptic lattice:");
        for row in &self.gram {
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
        match &self.pure_basis {
            Some(b) => {
                let _ = writeln!(out, "pure basis (squared defect {}):", b.squared_defect);
                for ((v, c), n) in b.vectors.iter().zip(&b.characters).zip(&b.norms) {
                    let _ = writeln!(out, "  {v:?}  norm {n}  = {c}");
                }
            }
            None => {
                let _ = writeln!(out, "pure basis: not computed at this rank");
            }
        }
        if let Some(splits) = &self.index_splits {
            let _ = writeln!(out, "index splits i(δ) = δ̃⁺ - δ̃⁻:");
            for s in splits {
                let _ = writeln!(
                    out,
                    "  δ = {}  (norm {}):  δ̃⁺ = {}   δ̃⁻ = {}",
                    s.delta,
                    s.norm,
                    s.delta_plus.join(" + "),
                    s.delta_minus.join(" + ")
                );
            }
        }
        if let Some(rows) = &self.central_characters {
            let _ = writeln!(out, "Casimir scalars on genuine W̃ irreducibles:");
            for r in rows {
                let value = r.value.as_ref().map(|v| format!(" = {v}")).unwrap_or_default();
                let matched = match &r.matched_residues {
                    None => "Res^lin not enumerated".to_string(),
                    Some(m) if m.is_empty() => "no residual point".to_string(),
                    Some(m) => m.iter().map(|c| format!("({})", c.join(", "))).collect::<Vec<_>>().join(" or "),
                };
                let _ = writeln!(out, "  {:>6}  {}{}  ->  {}", r.rep, r.scalar, value, matched);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    /// Dominant representative in coweight coordinates.
    pub representative: Vec<String>,
    pub size: usize,
    pub norm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_params: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResLinReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub symbols: Vec<String>,
    pub orbits: Vec<OrbitReport>,
}

impl ResLinReport {
    pub fn build(rs: &RootSystem, set: &ResLinSet, values: Option<&[Rational]>) -> ResLinReport {
        ResLinReport {
            cartan_type: rs.cartan_type().to_string(),
            symbols: set.symbols.clone(),
            orbits: set
                .orbits
                .iter()
                .map(|o| OrbitReport {
                    representative: format_coordinates(&o.representative),
                    size: o.size,
                    norm: o.norm.to_string(),
                    at_params: values.map(|v| o.representative.eval(v).iter().map(q).collect()),
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("Res^lin({}): {} orbits\n", self.cartan_type, self.orbits.len());
        for o in &self.orbits {
            let terms: Vec<String> =
                o.representative.iter().enumerate().filter(|(_, c)| c.as_str() != "0").map(|(i, c)| format!("({c})ω{}", i + 1)).collect();
            let at = o.at_params.as_ref().map(|v| format!("  at params ({})", v.join(", "))).unwrap_or_default();
            let _ = writeln!(out, "  size {:>5}  norm {}  {}{}", o.size, o.norm, terms.join(" + "), at);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub name: String,
    pub dim: usize,
    pub rank: usize,
    pub norm: String,
}

impl ComponentReport {
    fn build(a: &ComponentGroupAction) -> ComponentReport {
        let (rank, norm) = component_elliptic(a);
        ComponentReport { name: a.name.clone(), dim: a.dim, rank, norm: q(&norm) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub partition: Vec<u32>,
    pub distinguished: bool,
    pub quasidistinguished: bool,
    /// Elliptic data of the component group, for quasidistinguished non-distinguished `so_even` orbits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<ComponentReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsReport {
    pub family: Option<PartitionFamily>,
    pub n: Option<u32>,
    pub rows: Vec<PartitionRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exceptional: Vec<ComponentReport>,
}

impl PartitionsReport {
    pub fn classical(family: PartitionFamily, n: u32) -> PartitionsReport {
        let rows = classify_partitions(family, n)
            .into_iter()
            .map(|d| PartitionRow {
                component: (family == PartitionFamily::SoEven)
                    .then(|| ComponentGroupAction::for_dn_partition(&d.partition))
                    .flatten()
                    .map(|a| ComponentReport::build(&a)),
                partition: d.partition,
                distinguished: d.distinguished,
                quasidistinguished: d.quasidistinguished,
            })
            .collect();
        PartitionsReport { family: Some(family), n: Some(n), rows, exceptional: Vec::new() }
    }

    pub fn exceptional() -> PartitionsReport {
        let exceptional = ComponentGroupAction::exceptional_data().iter().map(ComponentReport::build).collect();
        PartitionsReport { family: None, n: None, rows: Vec::new(), exceptional }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let (Some(f), Some(n)) = (self.family, self.n) {
            let _ = writeln!(out, "nilpotent orbits of {f}({n}) by Jordan type: {}", self.rows.len());
            for r in &self.rows {
                let flag = match (r.distinguished, r.quasidistinguished) {
                    (true, _) => "distinguished",
                    (false, true) => "quasidistinguished",
                    _ => "",
                };
                let comp =
                    r.component.as_ref().map(|c| format!("  component rank {} norm {}", c.rank, c.norm)).unwrap_or_default();
                let _ = writeln!(out, "  {:?}  {flag}{comp}", r.partition);
            }
        }
        for c in &self.exceptional {
            let _ = writeln!(out, "  {:<14} on dim {}: rank {} norm {}", c.name, c.dim, c.rank, c.norm);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virtual_formatting() {
        let labels: Vec<String> = ["1_1", "2_1", "6_1"].iter().map(|s| s.to_string()).collect();
        let v = VirtualCharacter { coeffs: vec![0, -1, 2] };
        assert_eq!(format_virtual(&labels, &v), "-2_1 + 2*6_1");
        assert_eq!(format_virtual(&labels, &VirtualCharacter::zero(3)), "0");
        assert_eq!(constituents(&labels, &VirtualCharacter { coeffs: vec![2, 0, 1] }), vec!["1_1", "1_1", "6_1"]);
    }

    #[test]
    fn unknown_parameter_is_a_usage_error() {
        let rs = root_system("G2").unwrap();
        let p: HashMap<String, Rational> = [("q".to_string(), Rational::from_integer(1.into()))].into();
        assert!(matches!(parameter_values(&rs, &p), Err(CliError::Usage(_))));
    }
}
