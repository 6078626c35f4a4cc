mod common;

use hecke_dirac::chartab::{induce, restrict, CharacterTable};
use hecke_dirac::exactnum::linalg::{bilinear, from_i64, mat_vec};
use hecke_dirac::exactnum::rational::int;
use hecke_dirac::exactnum::Cyclotomic;
use hecke_dirac::group::{Classes, Group};
use hecke_dirac::pincover::PinGroup;
use hecke_dirac::rootsys::{CartanType, RootSystem};
use hecke_dirac::weylgrp::WeylGroup;
use proptest::prelude::*;

use common::{data, det_i128, one_minus, partition_count};

const TYPES: &[&str] = &["A3", "B3", "C3", "D4", "G2", "F4", "A1xB2"];

fn weyl(ty: &str) -> WeylGroup {
    WeylGroup::new(&RootSystem::parse(ty).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_is_weyl_invariant(
        ty in prop::sample::select(TYPES),
        word in prop::collection::vec(0usize..4, 0..12),
        u in prop::collection::vec(-5i64..=5, 4),
        v in prop::collection::vec(-5i64..=5, 4),
    ) {
        let w = weyl(ty);
        let n = w.rank();
        let word: Vec<usize> = word.into_iter().map(|s| s % n).collect();
        let x = w.from_word(&word);
        let m = from_i64(&w.matrix(x));
        let (u, v): (Vec<_>, Vec<_>) = (u[..n].iter().map(|&a| int(a)).collect(), v[..n].iter().map(|&a| int(a)).collect());
        let g = w.root_system().gram();
        prop_assert_eq!(bilinear(g, &mat_vec(&m, &u), &mat_vec(&m, &v)), bilinear(g, &u, &v));
    }

    #[test]
    fn roots_are_permuted(ty in prop::sample::select(TYPES), word in prop::collection::vec(0usize..4, 0..12)) {
        let w = weyl(ty);
        let word: Vec<usize> = word.into_iter().map(|s| s % w.rank()).collect();
        let x = w.from_word(&word);
        let m = w.matrix(x);
        let rs = w.root_system();
        for r in 0..rs.num_roots() {
            let img: Vec<i64> = (0..rs.rank()).map(|i| (0..rs.rank()).map(|j| m[i][j] * rs.root(r)[j]).sum()).collect();
            prop_assert_eq!(rs.root_index(&img), Some(w.act(x, r)));
        }
        prop_assert!(w.reduced_word(x).len() <= word.len());
        prop_assert_eq!(w.from_word(&w.reduced_word(x)), x);
    }
}

#[test]
fn order_is_product_of_degrees() {
    for ty in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "D4", "D5", "G2", "F4", "A1xA1", "A2xG2"] {
        let ct: CartanType = ty.parse().unwrap();
        let expected: u64 = ct.degrees().iter().product();
        assert_eq!(weyl(ty).order() as u64, expected, "{ty}");
    }
}

/// Classes containing an element without fixed vectors, found element by element.
fn elliptic_classes_brute_force(w: &WeylGroup) -> usize {
    let classes = w.classes();
    let mut hit = vec![false; classes.len()];
    for x in 0..w.order() {
        if det_i128(&one_minus(&w.matrix(x))) != 0 {
            hit[classes.class_of(x)] = true;
        }
    }
    hit.into_iter().filter(|&h| h).count()
}

#[test]
fn elliptic_class_counts() {
    for n in 2..=6 {
        let w = weyl(&format!("A{}", n - 1));
        assert_eq!(w.count_elliptic_classes(), 1, "A{}", n - 1);
        assert_eq!(elliptic_classes_brute_force(&w), 1);
    }
    for n in 2..=4 {
        let w = weyl(&format!("B{n}"));
        assert_eq!(w.count_elliptic_classes(), partition_count(n), "B{n}");
        assert_eq!(elliptic_classes_brute_force(&w), partition_count(n));
    }
    for ty in ["C3", "D4", "G2", "F4"] {
        let w = weyl(ty);
        assert_eq!(w.count_elliptic_classes(), elliptic_classes_brute_force(&w), "{ty}");
    }
}

fn assert_classes_stable<G: Group>(g: &G, classes: &Classes) {
    assert_eq!(classes.sizes.iter().sum::<usize>(), g.order());
    for (c, &size) in classes.sizes.iter().enumerate() {
        assert_eq!(g.order() % size, 0);
        assert_eq!(g.element_order(classes.reps[c]), classes.orders[c]);
        assert_eq!(classes.class_of(g.inv(classes.reps[c])), classes.inverse_class[c]);
    }
    for x in 0..g.order() {
        for s in g.generators() {
            assert_eq!(classes.class_of(g.conjugate(x, s)), classes.class_of(x));
        }
    }
}

#[test]
fn classes_are_conjugation_stable() {
    for ty in ["B3", "D4", "G2", "F4"] {
        let w = weyl(ty);
        assert_classes_stable(&w, w.classes());
    }
    for ty in ["B3", "G2"] {
        let pin = PinGroup::new(&RootSystem::parse(ty).unwrap()).unwrap();
        assert_classes_stable(&pin, pin.classes());
    }
}

#[test]
fn pin_cover_is_a_central_extension() {
    for ty in ["A3", "B3", "G2", "D4"] {
        let pin = PinGroup::new(&RootSystem::parse(ty).unwrap()).unwrap();
        let w = pin.weyl();
        assert_eq!(pin.order(), 2 * w.order());
        let z = pin.z();
        assert_eq!(pin.element_order(z), 2);
        for x in 0..pin.order() {
            assert_eq!(pin.mul(z, x), pin.mul(x, z));
        }
        for a in 0..pin.order() {
            for b in (0..pin.order()).step_by(7) {
                assert_eq!(pin.project(pin.mul(a, b)), w.mul(pin.project(a), pin.project(b)));
            }
        }
    }
}

#[test]
fn table_degrees_divide_group_order() {
    for ty in ["A3", "B3", "G2", "D4"] {
        let d = data(ty);
        for t in [&d.weyl_table, &d.pin_table, &d.even_table] {
            let order = t.group_order() as u64;
            assert!(t.degrees.iter().all(|&deg| order.is_multiple_of(deg)), "{ty}");
            assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), order, "{ty}");
        }
    }
}

#[test]
fn genuine_detector() {
    for ty in ["A2", "A3", "B2", "B3", "G2", "D4"] {
        let d = data(ty);
        let z_class = d.pin().classes().class_of(d.pin().z());
        let genuine = d.genuine_pin();
        for (i, chi) in d.pin_table.irreducibles.iter().enumerate() {
            let deg = Cyclotomic::from_int(d.pin_table.degrees[i] as i64);
            if genuine.contains(&i) {
                assert_eq!(chi[z_class], -&deg, "{ty} {i}");
            } else {
                assert_eq!(chi[z_class], deg, "{ty} {i}");
            }
        }
        assert_eq!(d.pin_table.len(), d.weyl_table.len() + genuine.len(), "{ty}");
        for chi in &d.weyl_table.irreducibles {
            let pulled = d.pullback_to_pin(chi);
            let i = d.pin_table.find(&pulled).expect("pullbacks are irreducible");
            assert!(!genuine.contains(&i));
        }
        let spin = d.spin_character_on_pin();
        assert_eq!(spin[z_class], -&spin[0], "{ty}");
        assert_eq!(d.spin_plus[0], d.spin_minus[0], "{ty}");
    }
}

#[test]
fn sg_is_an_isometric_involution_preserving_genuineness() {
    for ty in ["A2", "A3", "B2", "B3", "G2", "D4"] {
        let d = data(ty);
        let genuine = d.genuine_even();
        for (i, &j) in d.sg.iter().enumerate() {
            assert_eq!(d.sg[j], i, "{ty}");
            assert_eq!(genuine.contains(&i), genuine.contains(&j), "{ty}");
        }
        let sub = d.pin().even_subgroup();
        let t = &d.even_table;
        let images: Vec<_> = t.irreducibles.iter().map(|chi| d.pin().sg_class_function(&sub, &t.classes, chi)).collect();
        for a in 0..t.len() {
            for b in 0..t.len() {
                assert_eq!(t.inner(&images[a], &images[b]), t.inner(t.character(a), t.character(b)), "{ty}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_reciprocity(ty in prop::sample::select(&["B3", "G2", "D4", "A3"][..]), mask in 0u32..16, i in 0usize..64, j in 0usize..64) {
        let d = data(ty);
        let w = d.pin().weyl();
        let n = w.rank();
        let subset: Vec<usize> = (0..n).filter(|&s| mask & (1 << s) != 0).collect();
        let par = w.parabolic(&subset);
        let sub = CharacterTable::compute(&par.group, &par.classes);
        let psi = sub.character(i % sub.len());
        let chi = d.weyl_table.character(j % d.weyl_table.len());
        let induced = induce(psi, &par.classes, &par.fusion, w.classes());
        prop_assert_eq!(d.weyl_table.inner(&induced, chi), sub.inner(psi, &restrict(chi, &par.fusion)));
        prop_assert_eq!(induced[0].clone(), Cyclotomic::from_int((w.order() / par.group.order()) as i64 * sub.degrees[i % sub.len()] as i64));
    }
}
