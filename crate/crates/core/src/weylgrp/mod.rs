//! The Weyl group of a root system, its conjugacy classes and parabolic subgroups.
//!
//! An element is stored as the permutation it induces on the roots; its matrix in the
//! simple-root basis is read off from the images of the simple roots, so two elements
//! are equal exactly when their matrices are.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::linalg;
use crate::exactnum::Rational;
use crate::group::{Classes, Group, Subgroup};
use crate::rootsys::RootSystem;

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("|W({ty})| = {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { ty: String, order: u64, bound: u64 },
}

pub struct WeylGroup {
    rs: RootSystem,
    perms: Vec<Vec<u8>>,
    index: HashMap<u64, u32>,
    length: Vec<u16>,
    /// Smallest `i` with `l(s_i w) < l(w)`; `u8::MAX` for the identity.
    descent: Vec<u8>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
    classes: Classes,
    class_det: Vec<Rational>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<WeylGroup, WeylError> {
        Self::with_bound(rs, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(rs: &RootSystem, bound: u64) -> Result<WeylGroup, WeylError> {
        let order = rs.cartan_type().weyl_order();
        if order > bound {
            return Err(WeylError::BoundExceeded { ty: rs.cartan_type().to_string(), order, bound });
        }
        let n = rs.rank();
        let nr = rs.num_roots();
        let key = |p: &[u8]| (0..n).fold(0u64, |acc, i| (acc << 8) | p[i] as u64);
        let id: Vec<u8> = (0..nr as u16).map(|x| x as u8).collect();
        let mut perms = vec![id.clone()];
        let mut index: HashMap<u64, u32> = [(key(&id), 0)].into();
        let mut length = vec![0u16];
        let mut i = 0;
        while i < perms.len() {
            for s in 0..n {
                let refl = rs.reflection_permutation(s);
                let img: Vec<u8> = perms[i].iter().map(|&r| refl[r as usize]).collect();
                let k = key(&img);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    e.insert(perms.len() as u32);
                    length.push(length[i] + 1);
                    perms.push(img);
                }
            }
            i += 1;
        }
        assert_eq!(perms.len() as u64, order, "|W| equals the product of the degrees");
        let mut w = WeylGroup {
            rs: rs.clone(),
            perms,
            index,
            length,
            descent: Vec::new(),
            inverses: Vec::new(),
            gens: Vec::new(),
            classes: Classes { class_of: vec![], reps: vec![], sizes: vec![], orders: vec![], inverse_class: vec![] },
            class_det: Vec::new(),
        };
        w.gens = (0..n).map(|s| w.reflection(s)).collect();
        w.descent = (0..w.perms.len())
            .map(|x| {
                (0..n)
                    .find(|&s| w.length[w.mul(w.gens[s], x)] < w.length[x])
                    .map(|s| s as u8)
                    .unwrap_or(u8::MAX)
            })
            .collect();
        w.inverses = (0..w.perms.len())
            .map(|x| {
                let p = &w.perms[x];
                let mut inv = vec![0u8; nr];
                for (r, &img) in p.iter().enumerate() {
                    inv[img as usize] = r as u8;
                }
                w.index[&key(&inv)]
            })
            .collect();
        w.classes = Classes::compute(&w);
        w.class_det = w.classes.reps.iter().map(|&r| w.det_one_minus(r)).collect();
        Ok(w)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn key(&self, p: &[u8]) -> u64 {
        (0..self.rank()).fold(0u64, |acc, i| (acc << 8) | p[i] as u64)
    }

    /// Image of root `r` under element `w`.
    pub fn act(&self, w: usize, r: usize) -> usize {
        self.perms[w][r] as usize
    }

    pub fn permutation(&self, w: usize) -> &[u8] {
        &self.perms[w]
    }

    /// The reflection `s_α` for a root index.
    pub fn reflection(&self, root: usize) -> usize {
        self.index[&self.key(self.rs.reflection_permutation(root))] as usize
    }

    pub fn simple_reflection(&self, i: usize) -> usize {
        self.gens[i]
    }

    pub fn length(&self, w: usize) -> usize {
        self.length[w] as usize
    }

    pub fn sign(&self, w: usize) -> i64 {
        if self.length[w].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn min_left_descent(&self, w: usize) -> Option<usize> {
        match self.descent[w] {
            u8::MAX => None,
            d => Some(d as usize),
        }
    }

    /// Lexicographically least reduced word.
    pub fn reduced_word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some(d) = self.min_left_descent(w) {
            word.push(d);
            w = self.mul(self.gens[d], w);
        }
        word
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &s| self.mul(acc, self.gens[s]))
    }

    /// Integer matrix in the simple-root basis; column `j` is `w(α_j)`.
    pub fn matrix(&self, w: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let img = self.rs.root(self.perms[w][j] as usize);
            for i in 0..n {
                m[i][j] = img[i];
            }
        }
        m
    }

    /// Element with the given matrix, if any.
    pub fn element_of_matrix(&self, m: &[Vec<i64>]) -> Option<usize> {
        let n = self.rank();
        let mut k = 0u64;
        for j in 0..n {
            let col: Vec<i64> = (0..n).map(|i| m[i][j]).collect();
            k = (k << 8) | self.rs.root_index(&col)? as u64;
        }
        self.index.get(&k).map(|&x| x as usize)
    }

    pub fn det_one_minus(&self, w: usize) -> Rational {
        let m = self.matrix(w);
        let n = self.rank();
        let one_minus: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - m[i][j]).collect()).collect();
        linalg::determinant(&linalg::from_i64(&one_minus))
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    /// `det(1 - w)` on each class.
    pub fn class_det_one_minus(&self) -> &[Rational] {
        &self.class_det
    }

    pub fn elliptic_flags(&self) -> Vec<bool> {
        self.class_det.iter().map(|d| !d.is_zero()).collect()
    }

    pub fn count_elliptic_classes(&self) -> usize {
        self.class_det.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn parabolic(&self, subset: &[usize]) -> Parabolic<'_> {
        let gens: Vec<usize> = subset.iter().map(|&i| self.gens[i]).collect();
        let group = Subgroup::generated(self, &gens);
        let classes = Classes::compute(&group);
        let fusion = classes.reps.iter().map(|&r| self.classes.class_of(group.to_parent(r))).collect();
        Parabolic { subset: subset.to_vec(), group, classes, fusion }
    }

    /// All proper subsets of the simple roots, as sorted index lists.
    pub fn proper_parabolic_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        (0..(1u32 << n) - 1).map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect()).collect()
    }
}

impl Group for WeylGroup {
    fn order(&self) -> usize {
        self.perms.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let pa = &self.perms[a];
        let pb = &self.perms[b];
        let k = (0..self.rank()).fold(0u64, |acc, i| (acc << 8) | pa[pb[i] as usize] as u64);
        self.index[&k] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// A standard parabolic subgroup `W_P` with its classes and their fusion into `W`.
pub struct Parabolic<'a> {
    pub subset: Vec<usize>,
    pub group: Subgroup<'a, WeylGroup>,
    pub classes: Classes,
    pub fusion: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    fn weyl(t: &str) -> WeylGroup {
        WeylGroup::new(&RootSystem::parse(t).unwrap()).unwrap()
    }

    #[test]
    fn orders_and_classes() {
        let a1 = weyl("A1");
        assert_eq!(a1.order(), 2);
        assert_eq!(a1.det_one_minus(1), int(2));
        assert_eq!(a1.det_one_minus(0), int(0));
        let a2 = weyl("A2");
        let mut sizes = a2.classes().sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(a2.count_elliptic_classes(), 1);
        assert_eq!(weyl("B2").classes().len(), 5);
        assert_eq!(weyl("B2").count_elliptic_classes(), 2);
        let g2 = weyl("G2");
        assert_eq!(g2.order(), 12);
        assert_eq!(g2.classes().len(), 6);
        assert_eq!(g2.count_elliptic_classes(), 3);
        assert_eq!(weyl("F4").order(), 1152);
    }

    #[test]
    fn coxeter_element_of_g2() {
        let g2 = weyl("G2");
        let c = g2.from_word(&[0, 1]);
        // eigenvalues are primitive 6th roots of unity: (1 - ζ)(1 - ζ̄) = 1
        assert_eq!(g2.det_one_minus(c), int(1));
    }

    #[test]
    fn words_and_matrices() {
        let b3 = weyl("B3");
        for w in 0..b3.order() {
            let word = b3.reduced_word(w);
            assert_eq!(word.len(), b3.length(w));
            assert_eq!(b3.from_word(&word), w);
            assert_eq!(b3.element_of_matrix(&b3.matrix(w)), Some(w));
        }
    }

    #[test]
    fn parabolic_fusion() {
        let b2 = weyl("B2");
        let full = b2.parabolic(&[0, 1]);
        assert_eq!(full.group.order(), 8);
        let mut f = full.fusion.clone();
        f.sort();
        assert_eq!(f, (0..5).collect::<Vec<_>>());
        let empty = b2.parabolic(&[]);
        assert_eq!(empty.fusion, vec![0]);
        let long = b2.parabolic(&[0]);
        let refl_class = long.fusion[1];
        assert_eq!(refl_class, b2.classes().class_of(b2.simple_reflection(0)));
        assert_ne!(refl_class, b2.classes().class_of(b2.simple_reflection(1)));
    }
}
