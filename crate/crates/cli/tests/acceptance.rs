//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p hecke-dirac-cli --test acceptance`; set `HECKE_DIRAC_STRETCH=1` to attempt
//! the E7 stretch computation of criterion 10.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hecke_dirac::chartab::{product, VirtualCharacter};
use hecke_dirac::elliptic::{is_pure, parabolic_inductions, pure_basis, DiracData};
use hecke_dirac::exactnum::rational::{int, rat};
use hecke_dirac::exactnum::{Cyclotomic, Rational};
use hecke_dirac::group::Group;
use hecke_dirac::residues::partitions::{is_distinguished, is_quasidistinguished};
use hecke_dirac::residues::{classify_partitions, component_elliptic, ComponentGroupAction, PartitionFamily};
use hecke_dirac::rootsys::RootSystem;
use hecke_dirac_cli::golden::{check_reslin, check_tensor_example, match_reslin, ResLinGolden, TensorExample};
use hecke_dirac_cli::verify::Check;

const STRETCH_ENV: &str = "HECKE_DIRAC_STRETCH";

/// Elliptic conjugacy class counts from the classification of elliptic classes.
const ELLIPTIC_CLASSES: [(&str, usize); 9] =
    [("A1", 1), ("A2", 1), ("A3", 1), ("B2", 2), ("B3", 3), ("C3", 3), ("D4", 3), ("G2", 3), ("F4", 9)];

struct Outcome {
    passed: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from_checks(summary: impl Into<String>, checks: &[Check]) -> Outcome {
        let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(ToString::to_string).collect();
        Outcome { passed: failures.is_empty(), summary: summary.into(), failures }
    }
}

struct Data {
    by_type: BTreeMap<String, DiracData>,
    build_time: HashMap<String, Duration>,
}

impl Data {
    fn get(&self, ty: &str) -> &DiracData {
        &self.by_type[ty]
    }

    fn ensure(&mut self, ty: &str) {
        if !self.by_type.contains_key(ty) {
            let start = Instant::now();
            let rs = RootSystem::parse(ty).unwrap();
            self.by_type.insert(ty.to_string(), DiracData::new(&rs, None).unwrap());
            self.build_time.insert(ty.to_string(), start.elapsed());
        }
    }
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// `⟨χ_a, χ_b⟩^el` from class representatives, class sizes and determinants of `1 - w`.
fn elliptic_gram(d: &DiracData) -> Vec<Vec<Rational>> {
    let w = d.pin().weyl();
    let classes = w.classes();
    let dets: Vec<i64> = classes
        .reps
        .iter()
        .map(|&x| {
            let m = w.matrix(x);
            let one_minus: Vec<Vec<i64>> =
                (0..m.len()).map(|i| (0..m.len()).map(|j| i64::from(i == j) - m[i][j]).collect()).collect();
            det_i128(&one_minus) as i64
        })
        .collect();
    let t = &d.weyl_table;
    let pair = |a: usize, b: usize| -> Rational {
        let s: Cyclotomic = (0..classes.len())
            .filter(|&c| dets[c] != 0)
            .map(|c| (&t.character(a)[c].conj() * &t.character(b)[c]).scale(&int(dets[c] * classes.sizes[c] as i64)))
            .sum();
        s.to_rational().unwrap() / int(w.order() as i64)
    };
    (0..t.len()).map(|a| (0..t.len()).map(|b| pair(a, b)).collect()).collect()
}

fn criterion_1(data: &Data, elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    let mut ranks = Vec::new();
    for (ty, expected) in ELLIPTIC_CLASSES {
        let d = data.get(ty);
        let (rank, count) = (d.elliptic.rank(), d.pin().weyl().count_elliptic_classes());
        ranks.push(format!("{ty}={rank}"));
        if rank != expected || count != expected {
            failures.push(format!("{ty}: rank {rank}, computed class count {count}, expected {expected}"));
        }
    }
    let in_time = elapsed < Duration::from_secs(300);
    if !in_time {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome { passed: failures.is_empty(), summary: format!("elliptic ranks {} in {:.1?}", ranks.join(" "), elapsed), failures }
}

fn criterion_2(data: &Data) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (ty, _) in ELLIPTIC_CLASSES {
        let d = data.get(ty);
        let gram = elliptic_gram(d);
        let n = d.weyl_table.len();
        let index: Vec<VirtualCharacter> = (0..n).map(|i| d.dirac_index(&VirtualCharacter::unit(n, i)).unwrap()).collect();
        for a in 0..n {
            for b in a..n {
                pairs += 1;
                if int(index[a].dot(&index[b])) != int(2) * &gram[a][b] || d.elliptic.gram[a][b] != gram[a][b] {
                    failures.push(format!("{ty} ({a}, {b})"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome { passed: failures.is_empty(), summary: format!("index isometry on {pairs} pairs of irreducibles"), failures }
}

fn criterion_3(data: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for (ty, _) in ELLIPTIC_CLASSES {
        let d = data.get(ty);
        let spin = d.spin_difference();
        for ind in parabolic_inductions(d.pin().weyl(), &d.weyl_table) {
            total += 1;
            let f = d.weyl_table.class_function(&ind.character);
            let values = product(&d.pullback_to_even(&f), &spin);
            if !values.iter().all(Cyclotomic::is_zero) {
                failures.push(format!("{ty} P={:?} χ={}", ind.subset, ind.source));
            }
        }
    }
    Outcome { passed: failures.is_empty(), summary: format!("index vanishes pointwise on {total} parabolic inductions"), failures }
}

fn criterion_4(data: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for ty in ["G2", "B2", "B3", "D4", "F4"] {
        let d = data.get(ty);
        let el = &d.elliptic;
        let mut deltas = d.unit_vectors();
        if let Ok(basis) = pure_basis(&el.quotient_gram) {
            deltas.extend(basis.vectors.iter().map(|v| el.lift(v)));
        }
        for delta in &deltas {
            let coords = el.lattice_coordinates(delta);
            if !is_pure(&el.quotient_gram, &coords) {
                failures.push(format!("{ty}: {coords:?} is not pure"));
                continue;
            }
            match d.split_index(delta) {
                Ok(s) => {
                    let sg_ok = s.delta_plus.permute(&d.sg) == s.delta_minus;
                    let orthogonal = s.delta_plus.dot(&s.delta_minus) == 0;
                    let norms = int(s.delta_plus.dot(&s.delta_plus)) == s.norm && int(s.delta_minus.dot(&s.delta_minus)) == s.norm;
                    let irreducible = s.norm != int(1) || (s.delta_plus.dot(&s.delta_plus) == 1 && s.delta_plus.coeffs.iter().all(|&c| c >= 0));
                    if !(sg_ok && orthogonal && norms && irreducible) {
                        failures.push(format!("{ty} {coords:?}: sg {sg_ok} orth {orthogonal} norms {norms} irr {irreducible}"));
                    }
                }
                Err(e) => failures.push(format!("{ty} {coords:?}: {e}")),
            }
        }
        counts.push(format!("{ty}={}", deltas.len()));
    }
    Outcome { passed: failures.is_empty(), summary: format!("split contract on pure vectors {}", counts.join(" ")), failures }
}

fn criterion_5(data: &Data) -> Outcome {
    let start = Instant::now();
    let checks = check_reslin(&ResLinGolden::g2(), data.get("G2"));
    let elapsed = start.elapsed() + data.build_time["G2"];
    let mut out = Outcome::from_checks(format!("G2 residual table, {} checks in {elapsed:.1?}", checks.len()), &checks);
    if elapsed >= Duration::from_secs(60) {
        out.passed = false;
        out.failures.push(format!("took {elapsed:?}"));
    }
    out
}

fn criterion_6(data: &Data) -> Outcome {
    let start = Instant::now();
    let golden = ResLinGolden::f4();
    let d = data.get("F4");
    let mut checks = check_reslin(&golden, d);
    let shared = match match_reslin(&golden, d) {
        Ok(m) => golden.rows.iter().zip(&m.row_orbit).any(|(row, orbit)| {
            let degrees: Vec<u64> =
                m.rep_orbits.iter().filter(|(_, _, o)| orbit.is_some_and(|x| o == &[x])).map(|r| r.1).collect();
            row.reps.len() == 2 && degrees == [8, 8]
        }),
        Err(_) => false,
    };
    checks.push(Check::new("F4 shared row carries two degree-8 representations", shared, ""));
    let elapsed = start.elapsed() + data.build_time["F4"];
    let mut out = Outcome::from_checks(format!("F4 residual table, {} rows, in {elapsed:.1?}", golden.rows.len()), &checks);
    if elapsed >= Duration::from_secs(1800) {
        out.passed = false;
        out.failures.push(format!("took {elapsed:?}"));
    }
    out
}

fn criterion_7(data: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for ty in ["A1", "A2", "A3", "A4"] {
        let n = data.get(ty).irr0_gen().len();
        sizes.push(format!("{ty}={n}"));
        if n != 2 {
            failures.push(format!("{ty}: {n} constituents"));
        }
    }
    for ty in ["B2", "B3"] {
        let d = data.get(ty);
        let (irr0, genuine) = (d.irr0_gen(), d.genuine_even());
        sizes.push(format!("{ty}={}/{}", irr0.len(), genuine.len()));
        if irr0 != genuine {
            failures.push(format!("{ty}: {irr0:?} vs {genuine:?}"));
        }
    }
    Outcome { passed: failures.is_empty(), summary: format!("Irr0_gen sizes {}", sizes.join(" ")), failures }
}

fn criterion_8(data: &Data) -> Outcome {
    let checks = check_tensor_example(&TensorExample::d4(), data.get("D4"));
    Outcome::from_checks(format!("D4 tensor example, {} checks", checks.len()), &checks)
}

/// Flags recomputed from the multiplicities of the parts.
fn oracle_flags(family: PartitionFamily, p: &[u32]) -> (bool, bool) {
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in p {
        *mult.entry(x).or_default() += 1;
    }
    let parity = |a: u32| match family {
        PartitionFamily::Sp => a.is_multiple_of(2),
        _ => a % 2 == 1,
    };
    match family {
        PartitionFamily::Sl => (mult.len() == 1 && mult.values().all(|&m| m == 1), p.len() == 1),
        _ => {
            let all_parity = mult.keys().all(|&a| parity(a));
            let distinguished = all_parity && mult.values().all(|&m| m == 1);
            let mut quasi = all_parity && mult.values().all(|&m| m <= 2);
            if family == PartitionFamily::SoEven && !mult.values().any(|&m| m == 1) {
                quasi &= mult.len().is_multiple_of(2);
            }
            (distinguished, quasi)
        }
    }
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = 0;
    for family in [PartitionFamily::Sl, PartitionFamily::Sp, PartitionFamily::SoOdd, PartitionFamily::SoEven] {
        for n in 1..=12 {
            for row in classify_partitions(family, n) {
                rows += 1;
                let want = oracle_flags(family, &row.partition);
                let got = (row.distinguished, row.quasidistinguished);
                let direct = (is_distinguished(family, &row.partition), is_quasidistinguished(family, &row.partition));
                if want != got || want != direct {
                    failures.push(format!("{family} {:?}: {got:?} expected {want:?}", row.partition));
                }
            }
        }
    }
    let mut report = Vec::new();
    let mut expect = |name: String, action: &ComponentGroupAction, rank: Option<usize>, norm: Rational| {
        let (r, q) = component_elliptic(action);
        report.push(format!("{name}: rank {r} norm {q}"));
        if q != norm || rank.is_some_and(|x| x != r) {
            failures.push(format!("{name}: rank {r}, norm {q}"));
        }
    };
    for (l, k) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)] {
        expect(format!("case a l={l} k={k}"), &ComponentGroupAction::dn_case_a(l, k), None, int(1));
    }
    for l in 1..=3 {
        expect(format!("case b l={l}"), &ComponentGroupAction::dn_case_b(l), Some(1), int(2));
    }
    for action in ComponentGroupAction::exceptional_data() {
        let norm = if action.name == "E7 A4+A1" { int(2) } else { int(1) };
        let rank = if action.name == "E6 D4(a1)" || action.name == "E7 A4+A1" { Some(1) } else { None };
        expect(action.name.clone(), &action, rank, norm);
    }
    println!("  component data: {}", report.join("; "));
    Outcome { passed: failures.is_empty(), summary: format!("{rows} classical partitions and bundled component data"), failures }
}

fn criterion_10(substitutes: &[&Outcome]) -> Outcome {
    let mut failures: Vec<String> = substitutes.iter().filter(|o| !o.passed).map(|o| o.summary.clone()).collect();
    let stretch = if std::env::var(STRETCH_ENV).is_ok_and(|v| v == "1") {
        match RootSystem::parse("E7").map_err(|e| e.to_string()).and_then(|rs| DiracData::new(&rs, None).map(|_| ()).map_err(|e| e.to_string())) {
            Ok(()) => "E7 pin cover built".to_string(),
            Err(e) => {
                failures.push(format!("E7 stretch: {e}"));
                format!("E7 stretch failed: {e}")
            }
        }
    } else {
        format!("E7 stretch not run (set {STRETCH_ENV}=1)")
    };
    Outcome { passed: failures.is_empty(), summary: format!("substitute criteria 2, 3, 4 and 8; {stretch}"), failures }
}

fn criterion_11(data: &Data) -> Outcome {
    let scales = [int(2), int(3), rat(1, 2), rat(-5, 7)];
    let mut failures = Vec::new();
    let mut checked = 0;
    for ty in ["A1", "A2", "A3", "A4", "D4"] {
        let d = data.get(ty);
        for i in d.irr0_gen() {
            checked += 1;
            match d.casimir_on_even(i) {
                Ok(p) => {
                    let scaled = scales.iter().all(|c| p.rescale_variables(c) == p.scale(&(c * c)));
                    if !p.is_homogeneous(2) || !scaled {
                        failures.push(format!("{ty} {}: {p}", d.even_table.labels[i]));
                    }
                }
                Err(e) => failures.push(format!("{ty} {}: {e}", d.even_table.labels[i])),
            }
        }
    }
    Outcome { passed: failures.is_empty(), summary: format!("Casimir scalars of {checked} Irr0_gen constituents scale by c^2"), failures }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut data = Data { by_type: BTreeMap::new(), build_time: HashMap::new() };
    for ty in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"] {
        data.ensure(ty);
    }
    let c1 = criterion_1(&data, start.elapsed());
    let c2 = criterion_2(&data);
    let c3 = criterion_3(&data);
    let c4 = criterion_4(&data);
    let c5 = criterion_5(&data);
    let c6 = criterion_6(&data);
    let c7 = criterion_7(&data);
    let c8 = criterion_8(&data);
    let c9 = criterion_9();
    let c10 = criterion_10(&[&c2, &c3, &c4, &c8]);
    let c11 = criterion_11(&data);
    let all = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11];
    for (i, o) in all.iter().enumerate() {
        println!("{} criterion {}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.summary);
        for f in &o.failures {
            println!("    {f}");
        }
    }
    let passed = all.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed in {:.1?}", all.len(), start.elapsed());
    if passed == all.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
