//! Crystallographic root systems in the simple-root basis.
//!
//! Vectors of `V` are coordinate vectors over the simple roots. The invariant
//! form is normalized so long roots have squared length 2 in every component,
//! and `V∨` is identified with `V` through it, so `α∨ = 2α/⟨α,α⟩`.
//! Simple roots follow Bourbaki numbering; in `G2` the first simple root is short.

mod cartan;
mod params;

pub use cartan::{CartanType, Family};
pub use params::ParameterFunction;

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::linalg::{self, QMatrix};
use crate::exactnum::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid Cartan type `{0}`")]
    InvalidType(String),
    #[error("rank {rank} not allowed for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("vector is not a root")]
    NotARoot,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanType,
    gram: QMatrix,
    /// Positive roots first (by height, then coordinates), then their negatives in the same order.
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    norms: Vec<Rational>,
    /// `reflect[a][b]` is the index of `s_a(b)`.
    reflect: Vec<Vec<u8>>,
    coweights: QMatrix,
    component_of_simple: Vec<usize>,
}

impl RootSystem {
    pub fn new(cartan: &CartanType) -> RootSystem {
        let (gram, component_of_simple) = cartan.gram();
        let n = gram.len();
        // closure of simple roots under simple reflections
        let simple: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        let cartan_int: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = int(2) * &gram[i][j] / &gram[j][j];
                        assert!(v.is_integer());
                        v.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect();
        let mut positives: Vec<Vec<i64>> = simple.clone();
        let mut seen: std::collections::HashSet<Vec<i64>> = positives.iter().cloned().collect();
        let mut frontier = positives.clone();
        while let Some(v) = frontier.pop() {
            for i in 0..n {
                // <v, α_i∨> = Σ_j v_j a_ji with a_ji = 2<α_j,α_i>/<α_i,α_i>
                let pairing: i64 = (0..n).map(|j| v[j] * cartan_int[j][i]).sum();
                let mut w = v.clone();
                w[i] -= pairing;
                if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && seen.insert(w.clone()) {
                    positives.push(w.clone());
                    frontier.push(w);
                }
            }
        }
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i64>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let qroots: Vec<Vec<Rational>> = roots.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let norms: Vec<Rational> = qroots.iter().map(|r| linalg::bilinear(&gram, r, r)).collect();
        assert!(roots.len() <= 256, "root indices are stored as u8");
        let reflect: Vec<Vec<u8>> = (0..roots.len())
            .map(|a| {
                let ga = linalg::mat_vec(&gram, &qroots[a]);
                (0..roots.len())
                    .map(|b| {
                        let ip = qroots[b].iter().zip(&ga).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
                        let c = (int(2) * ip / &norms[a]).to_integer();
                        let c: i64 = c.try_into().unwrap();
                        let img: Vec<i64> = roots[b].iter().zip(&roots[a]).map(|(x, y)| x - c * y).collect();
                        index[&img] as u8
                    })
                    .collect()
            })
            .collect();
        let coweights = linalg::inverse(&gram).expect("Gram matrix is nondegenerate");
        let rs = RootSystem { cartan: cartan.clone(), gram, roots, index, norms, reflect, coweights, component_of_simple };
        assert_eq!(rs.roots.len(), cartan.root_count(), "root count for {}", cartan);
        rs
    }

    pub fn parse(s: &str) -> Result<RootSystem, RootError> {
        Ok(RootSystem::new(&s.parse()?))
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_q(&self, i: usize) -> Vec<Rational> {
        self.roots[i].iter().map(|&x| int(x)).collect()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn negative(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Index of the `i`-th simple root; simple roots are the first `rank` positive roots.
    pub fn simple(&self, i: usize) -> usize {
        debug_assert_eq!(self.roots[i], unit(self.rank(), i));
        i
    }

    pub fn norm(&self, i: usize) -> &Rational {
        &self.norms[i]
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.norms[i] == int(2)
    }

    /// `s_a(b)` as a root index.
    pub fn reflect_root(&self, a: usize, b: usize) -> usize {
        self.reflect[a][b] as usize
    }

    pub fn reflection_permutation(&self, a: usize) -> &[u8] {
        &self.reflect[a]
    }

    pub fn coroot(&self, i: usize) -> Vec<Rational> {
        let f = int(2) / &self.norms[i];
        self.roots[i].iter().map(|&x| int(x) * &f).collect()
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        linalg::bilinear(&self.gram, u, v)
    }

    /// `(v, α∨)` for a root index.
    pub fn coroot_pairing(&self, v: &[Rational], a: usize) -> Rational {
        self.inner(v, &self.coroot(a))
    }

    /// Matrix of `s_a` in the simple-root basis (columns are images of simple roots).
    pub fn reflection(&self, a: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let img = &self.roots[self.reflect_root(a, j)];
            for i in 0..n {
                m[i][j] = img[i];
            }
        }
        m
    }

    pub fn reflection_of(&self, v: &[i64]) -> Result<Vec<Vec<i64>>, RootError> {
        self.root_index(v).map(|a| self.reflection(a)).ok_or(RootError::NotARoot)
    }

    /// Fundamental coweight `ω_i` as a vector of `V`, characterized by `⟨α_j, ω_i⟩ = δ_ij`.
    pub fn coweight(&self, i: usize) -> Vec<Rational> {
        self.coweights[i].clone()
    }

    /// Coefficients `c_i` with `v = Σ c_i ω_i`.
    pub fn coweight_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.gram, v)
    }

    pub fn from_coweight_coordinates(&self, c: &[Rational]) -> Vec<Rational> {
        (0..self.rank()).map(|j| (0..self.rank()).fold(Rational::zero(), |acc, i| acc + &c[i] * &self.coweights[i][j])).collect()
    }

    /// Component index of each simple root for product types.
    pub fn component_of_simple(&self) -> &[usize] {
        &self.component_of_simple
    }

    /// Component containing a root (roots never straddle components).
    pub fn component_of_root(&self, i: usize) -> usize {
        let j = self.roots[i].iter().position(|&x| x != 0).unwrap();
        self.component_of_simple[j]
    }

    /// Largest `m` with `(s_i s_j)^m = 1`.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let prod = int(4) * &self.gram[i][j] * &self.gram[i][j] / (&self.gram[i][i] * &self.gram[j][j]);
        match prod.to_integer().try_into().unwrap() {
            0i64 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("crystallographic bond"),
        }
    }

    /// Sub-root-system spanned by a subset of simple roots, as root indices of `self`.
    pub fn parabolic_roots(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.num_roots())
            .filter(|&i| self.roots[i].iter().enumerate().all(|(j, &x)| x == 0 || subset.contains(&j)))
            .collect()
    }

    pub fn dump(&self) -> RootSystemDump {
        let fmtv = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        RootSystemDump {
            cartan_type: self.cartan.to_string(),
            rank: self.rank(),
            gram: self.gram.iter().map(|r| fmtv(r)).collect(),
            positive_roots: self.roots[..self.num_positive()].to_vec(),
            squared_lengths: self.norms[..self.num_positive()].iter().map(format_rational).collect(),
            coroots: (0..self.num_positive()).map(|i| fmtv(&self.coroot(i))).collect(),
            fundamental_coweights: (0..self.rank()).map(|i| fmtv(&self.coweight(i))).collect(),
        }
    }
}

/// Serializable snapshot of a root system; all vectors in the simple-root basis.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystemDump {
    pub cartan_type: String,
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub squared_lengths: Vec<String>,
    pub coroots: Vec<Vec<String>>,
    pub fundamental_coweights: Vec<Vec<String>>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use num_traits::One;

    fn qunit(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn a1_basics() {
        let rs = RootSystem::parse("A1").unwrap();
        assert_eq!(rs.num_roots(), 2);
        assert_eq!(rs.coroot(0), vec![int(1)]);
        assert_eq!(rs.norm(0), &int(2));
        assert_eq!(rs.reflection(0), vec![vec![-1]]);
    }

    #[test]
    fn root_counts_and_lengths() {
        for (t, n) in [("A3", 12), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(RootSystem::parse(t).unwrap().num_roots(), n, "{t}");
        }
        let g2 = RootSystem::parse("G2").unwrap();
        let long = (0..12).filter(|&i| g2.is_long(i)).count();
        assert_eq!(long, 6);
        assert_eq!(g2.norm(0), &rat(2, 3));
        let f4 = RootSystem::parse("F4").unwrap();
        assert_eq!((0..48).filter(|&i| f4.is_long(i)).count(), 24);
    }

    #[test]
    fn b2_short_reflection_of_long_simple_root() {
        let rs = RootSystem::parse("B2").unwrap();
        assert!(rs.is_long(0) && !rs.is_long(1));
        let img = rs.reflect_root(1, 0);
        assert!(rs.is_positive(img));
        assert_eq!(rs.root(img), &[1, 2]);
    }

    #[test]
    fn coweights_are_dual() {
        let rs = RootSystem::parse("F4").unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let v = rs.inner(&rs.root_q(j), &rs.coweight(i));
                assert_eq!(v, if i == j { int(1) } else { int(0) });
            }
            assert_eq!(rs.coweight_coordinates(&rs.coweight(i)), qunit(4, i));
        }
    }

    #[test]
    fn coxeter_exponents() {
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.coxeter_exponent(0, 1), 6);
        let prod = RootSystem::parse("A2xA1").unwrap();
        assert_eq!(prod.coxeter_exponent(0, 2), 2);
        assert_eq!(prod.num_roots(), 8);
    }
}
