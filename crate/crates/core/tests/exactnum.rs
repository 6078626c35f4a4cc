use std::f64::consts::TAU;

use hecke_dirac::exactnum::rational::{gcd_u64 as gcd, lcm_u64 as lcm, rat, to_f64};
use hecke_dirac::exactnum::{Cyclotomic, Rational};
use proptest::prelude::*;

type Term = (i64, i64, u64, i64);

/// Orders divide 2520, which bounds every conductor that arises.
fn term() -> impl Strategy<Value = Term> {
    let orders = vec![1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 24, 28, 30, 36];
    (-20i64..=20, 1i64..=9, prop::sample::select(orders), 0i64..36)
}

fn exact(terms: &[Term]) -> Cyclotomic {
    terms
        .iter()
        .map(|&(a, b, n, k)| Cyclotomic::root_of_unity(n, k).scale(&rat(a, b)))
        .sum()
}

/// Floating-point evaluation independent of the exact basis.
fn numeric(terms: &[Term]) -> (f64, f64) {
    terms.iter().fold((0.0, 0.0), |(re, im), &(a, b, n, k)| {
        let c = a as f64 / b as f64;
        let t = TAU * k as f64 / n as f64;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(x: (f64, f64), y: (f64, f64)) -> bool {
    let scale = 1.0 + x.0.abs() + x.1.abs();
    (x.0 - y.0).abs() <= 1e-9 * scale && (x.1 - y.1).abs() <= 1e-9 * scale
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #[test]
    fn canonical_form_survives_cancellation(a in prop::collection::vec(term(), 0..6), b in prop::collection::vec(term(), 0..6)) {
        let (a, b) = (exact(&a), exact(&b));
        let c = &(&a + &b) - &b;
        prop_assert_eq!(c.to_string(), a.to_string());
        prop_assert_eq!(c, a);
    }

    #[test]
    fn numeric_embedding_matches(t in prop::collection::vec(term(), 0..8)) {
        prop_assert!(close(exact(&t).to_complex(), numeric(&t)));
    }

    #[test]
    fn multiplication_embeds(a in prop::collection::vec(term(), 0..4), b in prop::collection::vec(term(), 0..4)) {
        let (x, y) = (numeric(&a), numeric(&b));
        let expected = (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        prop_assert!(close((&exact(&a) * &exact(&b)).to_complex(), expected));
    }

    #[test]
    fn conjugation_is_an_involution(t in prop::collection::vec(term(), 0..6)) {
        let x = exact(&t);
        prop_assert_eq!(x.conj().conj(), x.clone());
        let (re, im) = x.to_complex();
        prop_assert!(close(x.conj().to_complex(), (re, -im)));
    }

    #[test]
    fn conjugation_fixes_rationals(q in rational()) {
        let x = Cyclotomic::from_rational(q.clone());
        prop_assert_eq!(x.conj(), x.clone());
        prop_assert_eq!(x.to_rational(), Some(q));
    }

    #[test]
    fn galois_action_is_multiplicative(a in prop::collection::vec(term(), 0..4), b in prop::collection::vec(term(), 0..4), g in 1i64..200) {
        let (x, y) = (exact(&a), exact(&b));
        let n = (&x * &y).conductor().max(1);
        let g = (g..).find(|&g| gcd(g as u64, lcm(n, lcm(x.conductor(), y.conductor()))) == 1).unwrap();
        prop_assert_eq!((&x * &y).galois(g), &x.galois(g) * &y.galois(g));
        prop_assert_eq!((&x + &y).galois(g), &x.galois(g) + &y.galois(g));
    }

    #[test]
    fn square_roots_square_back(q in (0i64..=24, 1i64..=24).prop_map(|(a, b)| rat(a, b))) {
        let s = Cyclotomic::sqrt_rational(&q).unwrap();
        prop_assert_eq!(&s * &s, Cyclotomic::from_rational(q.clone()));
        prop_assert!(close(s.to_complex(), (to_f64(&q).sqrt(), 0.0)));
    }

    #[test]
    fn negative_square_roots_are_rejected(q in (1i64..=1000, 1i64..=1000).prop_map(|(a, b)| rat(-a, b))) {
        prop_assert!(Cyclotomic::sqrt_rational(&q).is_err());
    }

    #[test]
    fn display_round_trips(t in prop::collection::vec(term(), 0..6)) {
        let x = exact(&t);
        prop_assert_eq!(x.to_string().parse::<Cyclotomic>().unwrap(), x);
    }
}

#[test]
fn two_hundred_square_roots() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let q = rat(rng.gen_range(0..=30), rng.gen_range(1..=30));
        let s = Cyclotomic::sqrt_rational(&q).unwrap();
        assert_eq!(&s * &s, Cyclotomic::from_rational(q));
    }
}

#[test]
fn nonreal_roots_of_unity_are_not_self_conjugate() {
    for n in 3..40 {
        let z = Cyclotomic::root_of_unity(n, 1);
        assert_ne!(z.conj(), z, "ζ_{n}");
        assert_eq!(&z * &z.conj(), Cyclotomic::one());
    }
}

#[test]
fn oversized_radicands_are_rejected() {
    let p = 1_000_003;
    assert!(Cyclotomic::sqrt_rational(&rat(p, 1)).is_err());
    assert_eq!(Cyclotomic::sqrt_rational(&rat(p * p, 4)).unwrap(), Cyclotomic::from_rational(rat(p, 2)));
}
