//! Component groups `A(e)` acting on the toral algebra `s0`, and their elliptic pairing
//! `⟨ψ, ψ'⟩ = (1/|A|) Σ_a conj(ψ(a)) ψ'(a) det(1 - a|_{s0})`.
//!
//! A group is given by generators, each a pair of a permutation (a faithful model of the
//! abstract group) and an integer matrix on `s0`; the action may have a kernel.

use std::collections::HashMap;

use num_traits::Zero;

use crate::chartab::CharacterTable;
use crate::exactnum::linalg::{self, QMatrix};
use crate::exactnum::rational::int;
use crate::exactnum::{Cyclotomic, Rational};
use crate::group::{Classes, Group, TableGroup};

type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroupAction {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<(Vec<u8>, Matrix)>,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn diagonal(d: &[i64]) -> Matrix {
    (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    q.iter().map(|&x| p[x as usize]).collect()
}

/// Transposition of the points `2i, 2i+1` among `2m` points.
fn swap(m: usize, i: usize) -> Vec<u8> {
    (0..2 * m as u8).map(|x| if x / 2 == i as u8 { x ^ 1 } else { x }).collect()
}

impl ComponentGroupAction {
    pub fn trivial() -> Self {
        ComponentGroupAction { name: "trivial".into(), dim: 0, generators: Vec::new() }
    }

    /// `(Z/2)^m` with generator `i` acting by the diagonal sign matrix `signs[i]`.
    pub fn elementary_abelian(name: &str, signs: &[Vec<i64>]) -> Self {
        let m = signs.len();
        let dim = signs.first().map_or(0, |s| s.len());
        let generators = signs.iter().enumerate().map(|(i, s)| (swap(m, i), diagonal(s))).collect();
        ComponentGroupAction { name: name.into(), dim, generators }
    }

    /// `D_n`, `τ = (a_1,a_1,…,a_l,a_l,b_1,…,b_{2k})`: `(Z/2)^l × (Z/2)^{2k-2}` on an
    /// `l`-dimensional `s0`, the first factor by `sgn_i` on coordinate `i`, the second trivially.
    pub fn dn_case_a(l: usize, k: usize) -> Self {
        assert!(k >= 1);
        let mut signs = Vec::new();
        for i in 0..l {
            signs.push((0..l).map(|j| if i == j { -1 } else { 1 }).collect());
        }
        for _ in 0..2 * k - 2 {
            signs.push(vec![1; l]);
        }
        Self::elementary_abelian(&format!("D case (a), l={l}, k={k}"), &signs)
    }

    /// `D_n`, `τ = (a_1,a_1,…,a_{2l},a_{2l})`: modelled as the even-weight subgroup
    /// `(Z/2)^{2l-1} ⊂ (Z/2)^{2l}` acting by signs on a `2l`-dimensional `s0`. For `l = 1` this is
    /// `Z/2` acting by `2 sgn`.
    pub fn dn_case_b(l: usize) -> Self {
        let n = 2 * l;
        let signs: Vec<Vec<i64>> =
            (0..n - 1).map(|i| (0..n).map(|j| if j == i || j == n - 1 { -1 } else { 1 }).collect()).collect();
        Self::elementary_abelian(&format!("D case (b), l={l}"), &signs)
    }

    /// `S3` on its reflection representation.
    pub fn s3_reflection(name: &str) -> Self {
        let generators = vec![
            (vec![1, 0, 2], vec![vec![-1, 1], vec![0, 1]]),
            (vec![0, 2, 1], vec![vec![1, 0], vec![1, -1]]),
        ];
        ComponentGroupAction { name: name.into(), dim: 2, generators }
    }

    /// The action attached to a quasidistinguished, non-distinguished partition of `2n` in
    /// type `D`, or `None` for other partitions.
    pub fn for_dn_partition(tau: &[u32]) -> Option<Self> {
        use super::partitions::{is_distinguished, is_quasidistinguished, PartitionFamily};
        if !is_quasidistinguished(PartitionFamily::SoEven, tau) || is_distinguished(PartitionFamily::SoEven, tau) {
            return None;
        }
        let mut mult: HashMap<u32, usize> = HashMap::new();
        for &x in tau {
            *mult.entry(x).or_insert(0) += 1;
        }
        let pairs = mult.values().filter(|&&m| m == 2).count();
        let singles = mult.values().filter(|&&m| m == 1).count();
        let mut action = if singles == 0 {
            Self::dn_case_b(pairs / 2)
        } else {
            Self::dn_case_a(pairs, singles / 2)
        };
        action.name = format!("{tau:?}");
        Some(action)
    }

    /// Bundled data for the quasidistinguished, non-distinguished orbits of exceptional type `E`.
    pub fn exceptional_data() -> Vec<Self> {
        let sgn = |name: &str| Self::elementary_abelian(name, &[vec![-1]]);
        vec![
            sgn("E8 D5+A2"),
            sgn("E8 D7(a1)"),
            sgn("E8 D7(a2)"),
            sgn("E8 E6(a1)+A1"),
            sgn("E7 E6(a1)"),
            Self::elementary_abelian("E7 A4+A1", &[vec![-1, -1]]),
            Self::s3_reflection("E6 D4(a1)"),
        ]
    }

    pub fn exceptional(name: &str) -> Option<Self> {
        Self::exceptional_data().into_iter().find(|a| a.name == name)
    }

    /// Pairs `(permutation, matrix)` closed under multiplication.
    fn elements(&self) -> (TableGroup, Vec<(Vec<u8>, Matrix)>) {
        let points = self.generators.first().map_or(0, |g| g.0.len());
        let id = ((0..points as u8).collect::<Vec<u8>>(), identity(self.dim));
        TableGroup::from_generators(&self.generators, id, |a, b| (compose(&a.0, &b.0), mat_mul(&a.1, &b.1)))
    }

    /// The matrices define a representation of the permutation group.
    pub fn is_valid(&self) -> bool {
        let (_, elems) = self.elements();
        let mut by_perm: HashMap<&Vec<u8>, &Matrix> = HashMap::new();
        elems.iter().all(|(p, m)| *by_perm.entry(p).or_insert(m) == m)
    }
}

/// Rank of `R̄(A)` and `⟨triv, triv⟩^el_A`.
pub fn component_elliptic(action: &ComponentGroupAction) -> (usize, Rational) {
    assert!(action.is_valid(), "generator matrices form a representation");
    let (g, elems) = action.elements();
    let classes = Classes::compute(&g);
    let table = CharacterTable::compute(&g, &classes);
    let dets: Vec<Rational> = classes
        .reps
        .iter()
        .map(|&r| {
            let m = &elems[r].1;
            let one_minus: QMatrix = (0..action.dim)
                .map(|i| (0..action.dim).map(|j| int(i64::from(i == j) - m[i][j])).collect())
                .collect();
            linalg::determinant(&one_minus)
        })
        .collect();
    let order = Rational::from_integer(g.order().into());
    let pair = |a: &[Cyclotomic], b: &[Cyclotomic]| -> Rational {
        let s: Cyclotomic = (0..classes.len())
            .filter(|&c| !dets[c].is_zero())
            .map(|c| (&a[c].conj() * &b[c]).scale(&(&dets[c] * int(classes.sizes[c] as i64))))
            .sum();
        s.to_rational().expect("rational pairing") / &order
    };
    let n = table.len();
    let gram: QMatrix = (0..n).map(|i| (0..n).map(|j| pair(table.character(i), table.character(j))).collect()).collect();
    let triv = table.trivial();
    (linalg::rank(&gram), gram[triv][triv].clone())
}
