//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over `F_p`,
//! lifted to cyclotomic values through eigenvalue multiplicities.

use rayon::prelude::*;

use crate::exactnum::modp::{char_poly, inv_mod, kernel, mul_mod, prime_above_congruent_one, roots, solve_in_span, CyclotomicReduction};
use crate::exactnum::Cyclotomic;
use crate::group::{Classes, Group};

/// Column `r` of the class matrix `A_j`: `(A_j)_{s,r} = #{x ∈ C_j : x⁻¹ g_r ∈ C_s}`.
fn class_matrix<G: Group + ?Sized>(g: &G, classes: &Classes, members: &[usize], p: u64) -> Vec<Vec<u64>> {
    let k = classes.len();
    let cols: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|r| {
            let mut col = vec![0u64; k];
            let gr = classes.reps[r];
            for &x in members {
                col[classes.class_of(g.mul(g.inv(x), gr))] += 1;
            }
            col.iter().map(|c| c % p).collect()
        })
        .collect();
    (0..k).map(|s| (0..k).map(|r| cols[r][s]).collect()).collect()
}

/// Splits a basis (rows) of an invariant subspace into eigenspaces of `a`.
fn split(a: &[Vec<u64>], basis: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let d = basis.len();
    let k = a.len();
    let columns: Vec<Vec<u64>> = basis.to_vec();
    // matrix of a restricted to span(basis), in that basis
    let mut restricted = vec![vec![0u64; d]; d];
    for (i, b) in basis.iter().enumerate() {
        let ab: Vec<u64> = (0..k).map(|s| (0..k).fold(0u64, |acc, r| (acc + mul_mod(a[s][r], b[r], p)) % p)).collect();
        let coords = solve_in_span(&columns, &ab, p).expect("subspace is invariant");
        for (j, c) in coords.into_iter().enumerate() {
            restricted[j][i] = c;
        }
    }
    let poly = char_poly(&restricted, p);
    let lambdas = roots(&poly, p);
    if lambdas.len() <= 1 {
        return vec![basis.to_vec()];
    }
    lambdas
        .into_iter()
        .map(|l| {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|j| if i == j { (restricted[i][j] + p - l) % p } else { restricted[i][j] }).collect())
                .collect();
            kernel(&shifted, d, p)
                .into_iter()
                .map(|v| (0..k).map(|r| (0..d).fold(0u64, |acc, i| (acc + mul_mod(v[i], basis[i][r], p)) % p)).collect())
                .collect()
        })
        .collect()
}

pub struct DixonResult {
    pub p: u64,
    pub values: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
}

pub fn dixon_schneider<G: Group + ?Sized>(g: &G, classes: &Classes) -> DixonResult {
    let k = classes.len();
    let order = g.order() as u64;
    let p = prime_above_congruent_one(2 * order, classes.exponent());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..g.order() {
        members[classes.class_of(x)].push(x);
    }
    let ident: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![ident];
    // larger classes first tend to separate faster; skip the identity class
    let mut order_j: Vec<usize> = (1..k).collect();
    order_j.sort_by_key(|&j| (std::cmp::Reverse(classes.sizes[j]), j));
    for j in order_j {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = class_matrix(g, classes, &members[j], p);
        spaces = spaces.into_iter().flat_map(|s| if s.len() == 1 { vec![s] } else { split(&a, &s, p) }).collect();
    }
    assert!(spaces.iter().all(|s| s.len() == 1), "class matrices separate all characters");
    assert_eq!(spaces.len(), k);
    let red = CyclotomicReduction::new(p);
    let mut values = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for s in spaces {
        let v = &s[0];
        let inv0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, p)).collect();
        // |G| / χ(1)^2 = Σ_r ω_r ω_{r*} / |C_r|
        let sum = (0..k).fold(0u64, |acc, r| {
            let t = mul_mod(mul_mod(omega[r], omega[classes.inverse_class[r]], p), inv_mod(classes.sizes[r] as u64 % p, p), p);
            (acc + t) % p
        });
        let d2 = mul_mod(order % p, inv_mod(sum, p), p);
        let d = (d2 as f64).sqrt().round() as u64;
        assert_eq!(d * d, d2, "degree squared is a perfect square below p");
        let chi_modp: Vec<u64> = (0..k).map(|r| mul_mod(mul_mod(omega[r], d, p), inv_mod(classes.sizes[r] as u64 % p, p), p)).collect();
        let row = (0..k).map(|r| lift_value(g, classes, &chi_modp, r, &red, d)).collect();
        values.push(row);
        degrees.push(d);
    }
    DixonResult { p, values, degrees }
}

/// `χ(g_r) = Σ_k m_k E(o)^k` with eigenvalue multiplicities `m_k` recovered mod p.
fn lift_value<G: Group + ?Sized>(g: &G, classes: &Classes, chi: &[u64], r: usize, red: &CyclotomicReduction, degree: u64) -> Cyclotomic {
    let p = red.p;
    let o = classes.orders[r];
    if o == 1 {
        return Cyclotomic::from_int(degree as i64);
    }
    let zeta = red.root(o).expect("p = 1 mod exponent");
    let zeta_inv = inv_mod(zeta, p);
    let rep = classes.reps[r];
    let mut power_vals = Vec::with_capacity(o as usize);
    let mut x = g.identity();
    for _ in 0..o {
        power_vals.push(chi[classes.class_of(x)]);
        x = g.mul(x, rep);
    }
    let inv_o = inv_mod(o % p, p);
    let mut terms = Vec::new();
    for kk in 0..o {
        let step = crate::exactnum::modp::pow_mod(zeta_inv, kk, p);
        let mut acc = 0u64;
        let mut z = 1u64;
        for &v in &power_vals {
            acc = (acc + mul_mod(v, z, p)) % p;
            z = mul_mod(z, step, p);
        }
        let m = mul_mod(acc, inv_o, p);
        assert!(m <= degree, "eigenvalue multiplicity exceeds the degree");
        if m > 0 {
            terms.push((kk, crate::exactnum::rational::int(m as i64)));
        }
    }
    Cyclotomic::from_terms(o, terms)
}
