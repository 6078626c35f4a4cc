//! Invariant suites run by `verify`.

use std::fmt;
use std::path::Path;

use hecke_dirac::chartab::VirtualCharacter;
use hecke_dirac::elliptic::{is_positive_definite, parabolic_inductions, pure_basis, DiracData};
use hecke_dirac::exactnum::rational::{int, rat};
use hecke_dirac::residues::{balance_counts, enumerate_reslin};
use hecke_dirac::rootsys::{ParameterFunction, RootSystem};

use crate::golden::{check_reslin, check_tensor_example, ResLinGolden, TensorExample};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check::new(name, false, detail)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Every module invariant that is exact and desk-scale for `d`.
pub fn invariant_suite(d: &DiracData) -> Vec<Check> {
    let ty = d.root_system().cartan_type().to_string();
    let mut out = Vec::new();
    let tables = [("W", &d.weyl_table), ("W̃", &d.pin_table), ("W̃′", &d.even_table)];
    for (name, t) in tables {
        out.push(Check::new(
            format!("{ty} {name} table orthogonality"),
            t.verify_orthogonality() && t.verify_columns(),
            format!("{} irreducibles, order {}", t.len(), t.group_order()),
        ));
    }
    let el = &d.elliptic;
    let elliptic_classes = d.pin().weyl().count_elliptic_classes();
    out.push(Check::new(
        format!("{ty} elliptic rank equals elliptic class count"),
        el.rank() == elliptic_classes,
        format!("rank {}, {} elliptic classes", el.rank(), elliptic_classes),
    ));
    out.push(Check::new(
        format!("{ty} elliptic Gram is positive definite on the quotient"),
        is_positive_definite(&el.quotient_gram) && el.radical_basis.len() + el.rank() == el.irreducible_count(),
        format!("radical rank {}", el.radical_basis.len()),
    ));

    let n = d.weyl_table.len();
    let units: Vec<VirtualCharacter> = (0..n).map(|i| VirtualCharacter::unit(n, i)).collect();
    let index: Vec<_> = units.iter().map(|u| d.dirac_index(u)).collect();
    match index.iter().cloned().collect::<Result<Vec<_>, _>>() {
        Err(e) => out.push(Check::fail(format!("{ty} Dirac index"), e.to_string())),
        Ok(index) => {
            let mut bad = Vec::new();
            for a in 0..n {
                for b in a..n {
                    if int(index[a].dot(&index[b])) != int(2) * el.pair(&units[a], &units[b]) {
                        bad.push((a, b));
                    }
                }
            }
            out.push(Check::new(
                format!("{ty} index isometry over all pairs"),
                bad.is_empty(),
                format!("{} pairs, {} mismatches {:?}", n * (n + 1) / 2, bad.len(), bad.iter().take(5).collect::<Vec<_>>()),
            ));
            let anti = index.iter().all(|v| v.permute(&d.sg) == v.neg());
            out.push(Check::new(format!("{ty} Sg(i(χ)) = -i(χ)"), anti, format!("{n} irreducibles")));
        }
    }

    let inductions = parabolic_inductions(d.pin().weyl(), &d.weyl_table);
    let nonzero = inductions.iter().filter(|p| !d.dirac_index(&p.character).is_ok_and(|v| v.is_zero())).count();
    out.push(Check::new(
        format!("{ty} index vanishes on parabolic inductions"),
        nonzero == 0,
        format!("{} inductions, {nonzero} nonvanishing", inductions.len()),
    ));

    let unit_vectors = d.unit_vectors();
    let mut failures = Vec::new();
    for v in &unit_vectors {
        match d.split_index(v) {
            Ok(s) if s.delta_plus.dot(&s.delta_plus) == 1 => {}
            Ok(_) => failures.push("reducible half".to_string()),
            Err(e) => failures.push(e.to_string()),
        }
    }
    out.push(Check::new(
        format!("{ty} unit vectors split into irreducible halves"),
        failures.is_empty(),
        format!("{} unit vectors {:?}", unit_vectors.len(), failures),
    ));
    if let Ok(basis) = pure_basis(&el.quotient_gram) {
        let errors: Vec<String> =
            basis.vectors.iter().filter_map(|v| d.split_index(&el.lift(v)).err().map(|e| e.to_string())).collect();
        out.push(Check::new(
            format!("{ty} pure basis vectors split"),
            errors.is_empty(),
            format!("norms {:?} {errors:?}", basis.norms.iter().map(ToString::to_string).collect::<Vec<_>>()),
        ));
    }

    let c = rat(7, 3);
    let scaling = d.genuine_pin().into_iter().all(|i| {
        d.casimir_on_pin(i).is_ok_and(|p| p.is_homogeneous(2) && p.rescale_variables(&c) == p.scale(&(&c * &c)))
    });
    out.push(Check::new(format!("{ty} Casimir scalars are quadratic forms in the parameters"), scaling, ""));

    out.extend(reslin_checks(d.root_system()));
    out
}

fn reslin_checks(rs: &RootSystem) -> Vec<Check> {
    let ty = rs.cartan_type().to_string();
    let params = ParameterFunction::generic(rs);
    let set = match enumerate_reslin(rs, &params) {
        Ok(s) => s,
        Err(e) => return vec![Check::new(format!("{ty} Res^lin"), true, format!("skipped: {e}"))],
    };
    let generic: Vec<_> = params.symbols().iter().enumerate().map(|(i, _)| rat(23 + 14 * i as i64, 23)).collect();
    let target = rs.rank();
    let balanced = set.points().all(|(xi, _)| {
        let (o, z) = balance_counts(rs, &params, xi, None);
        let (on, zn) = balance_counts(rs, &params, xi, Some(&generic));
        o == z + target && on == zn + target
    });
    let stable = set.points().all(|(xi, o)| (0..rs.rank()).all(|i| set.orbit_of(&xi.reflect(rs, i)) == Some(o)));
    vec![
        Check::new(format!("{ty} Res^lin balance condition"), balanced, format!("{} orbits", set.len())),
        Check::new(format!("{ty} Res^lin is W-stable"), stable, ""),
    ]
}

/// The bundled reference comparisons applicable to `filter` (all of them when `None`).
pub fn golden_suite(filter: Option<&str>, cache: Option<&Path>) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let wanted = |t: &str| filter.is_none_or(|f| f.eq_ignore_ascii_case(t));
    let data = |t: &str| -> Result<DiracData, String> {
        let rs = RootSystem::parse(t).map_err(|e| e.to_string())?;
        DiracData::new(&rs, cache).map_err(|e| e.to_string())
    };
    for g in [ResLinGolden::g2(), ResLinGolden::f4()] {
        if wanted(&g.cartan_type) {
            out.extend(check_reslin(&g, &data(&g.cartan_type)?));
        }
    }
    let ex = TensorExample::d4();
    if wanted(&ex.cartan_type) {
        out.extend(check_tensor_example(&ex, &data(&ex.cartan_type)?));
    }
    Ok(out)
}
