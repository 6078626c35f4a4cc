//! Character tables, class-function algebra, induction and decomposition.

mod cache;
mod dixon;

pub use cache::{cache_dir_from_env, load_or_compute, CACHE_ENV};
pub use dixon::dixon_schneider;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::rational::{int, Rational};
use crate::exactnum::Cyclotomic;
use crate::group::{Classes, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("class function is not a virtual character: multiplicity {0} at irreducible {1}")]
    NonIntegral(String, usize),
    #[error("class function has {got} values, table has {expected} classes")]
    Length { got: usize, expected: usize },
    #[error("character table fails orthogonality")]
    NotOrthogonal,
}

pub type ClassFunction = Vec<Cyclotomic>;

/// Integer combination of the irreducibles of a fixed table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VirtualCharacter {
    pub coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn zero(n: usize) -> Self {
        VirtualCharacter { coeffs: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[i] = 1;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Pairing in the irreducible basis (which is orthonormal).
    pub fn dot(&self, other: &Self) -> i64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn positive_part(&self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().map(|&a| a.max(0)).collect() }
    }

    pub fn negative_part(&self) -> Self {
        VirtualCharacter { coeffs: self.coeffs.iter().map(|&a| (-a).max(0)).collect() }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }

    /// Apply a permutation of irreducibles: `result[perm[i]] = self[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = vec![0; self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[perm[i]] = c;
        }
        VirtualCharacter { coeffs: out }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub classes: Classes,
    pub irreducibles: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    pub labels: Vec<String>,
}

impl CharacterTable {
    pub fn compute<G: Group + ?Sized>(g: &G, classes: &Classes) -> CharacterTable {
        let res = dixon_schneider(g, classes);
        let mut rows: Vec<(u64, ClassFunction)> = res.degrees.into_iter().zip(res.values).collect();
        rows.sort();
        let labels = default_labels(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
        let t = CharacterTable {
            classes: classes.clone(),
            degrees: rows.iter().map(|r| r.0).collect(),
            irreducibles: rows.into_iter().map(|r| r.1).collect(),
            labels,
        };
        debug_assert!(t.verify_orthogonality());
        t
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.classes.group_order()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    /// `⟨f, g⟩ = (1/|G|) Σ_C |C| conj(f(C)) g(C)`.
    pub fn inner(&self, f: &[Cyclotomic], g: &[Cyclotomic]) -> Cyclotomic {
        let sum: Cyclotomic = (0..self.class_count())
            .filter(|&c| !f[c].is_zero() && !g[c].is_zero())
            .map(|c| (&f[c].conj() * &g[c]).scale(&int(self.classes.sizes[c] as i64)))
            .sum();
        sum.scale(&Rational::new(1.into(), (self.group_order() as i64).into()))
    }

    pub fn verify_orthogonality(&self) -> bool {
        let n = self.len();
        if n != self.class_count() {
            return false;
        }
        let total: u64 = self.degrees.iter().map(|d| d * d).sum();
        if total != self.group_order() as u64 {
            return false;
        }
        let conj: Vec<ClassFunction> = self.irreducibles.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
        let ord = Rational::new(1.into(), (self.group_order() as i64).into());
        for i in 0..n {
            for j in i..n {
                let s: Cyclotomic = (0..n)
                    .map(|c| (&conj[i][c] * &self.irreducibles[j][c]).scale(&int(self.classes.sizes[c] as i64)))
                    .sum();
                let s = s.scale(&ord);
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    /// Column orthogonality: `Σ_χ conj(χ(C)) χ(D) = δ_CD |G|/|C|`.
    pub fn verify_columns(&self) -> bool {
        let n = self.len();
        for c in 0..n {
            for d in c..n {
                let s: Cyclotomic = self.irreducibles.iter().map(|r| &r[c].conj() * &r[d]).sum();
                let want = if c == d {
                    Cyclotomic::from_int((self.group_order() / self.classes.sizes[c]) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<VirtualCharacter, CharError> {
        if f.len() != self.class_count() {
            return Err(CharError::Length { got: f.len(), expected: self.class_count() });
        }
        let coeffs = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(i, chi)| {
                let m = self.inner(chi, f);
                m.to_i64().ok_or_else(|| CharError::NonIntegral(m.to_string(), i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VirtualCharacter { coeffs })
    }

    pub fn class_function(&self, v: &VirtualCharacter) -> ClassFunction {
        (0..self.class_count())
            .map(|c| {
                self.irreducibles
                    .iter()
                    .zip(&v.coeffs)
                    .filter(|(_, &m)| m != 0)
                    .map(|(chi, &m)| chi[c].scale(&int(m)))
                    .sum()
            })
            .collect()
    }

    pub fn degree_of(&self, v: &VirtualCharacter) -> i64 {
        v.coeffs.iter().zip(&self.degrees).map(|(&m, &d)| m * d as i64).sum()
    }

    /// Irreducibles with `χ(z) = -χ(1)`.
    pub fn genuine_irreducibles(&self, z_class: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.irreducibles[i][z_class] == -&self.irreducibles[i][0]).collect()
    }

    pub fn trivial(&self) -> usize {
        (0..self.len())
            .find(|&i| self.irreducibles[i].iter().all(|x| x == &Cyclotomic::one()))
            .expect("trivial character present")
    }

    /// Index of the irreducible with the given values.
    pub fn find(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.irreducibles.iter().position(|r| r.as_slice() == values)
    }

    pub fn labels_of(&self, v: &VirtualCharacter) -> Vec<(String, i64)> {
        v.support().into_iter().map(|i| (self.labels[i].clone(), v.coeffs[i])).collect()
    }
}

/// `deg_k` with `k` counting irreducibles of equal degree, in table order.
pub fn default_labels(degrees: &[u64]) -> Vec<String> {
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        let k = degrees[..i].iter().filter(|&&e| e == d).count() + 1;
        out.push(format!("{}_{}", d, k));
    }
    out
}

pub fn product(f: &[Cyclotomic], g: &[Cyclotomic]) -> ClassFunction {
    f.iter().zip(g).map(|(a, b)| a * b).collect()
}

pub fn conj(f: &[Cyclotomic]) -> ClassFunction {
    f.iter().map(|a| a.conj()).collect()
}

/// `Res f`: values of `f` on the `H`-classes via the fusion map.
pub fn restrict(f: &[Cyclotomic], fusion: &[usize]) -> ClassFunction {
    fusion.iter().map(|&c| f[c].clone()).collect()
}

/// `(Ind χ)(g_r) = |G| / (|H| |C_r|) Σ_{c ⊂ C_r} |c| χ(c)`.
pub fn induce(chi: &[Cyclotomic], sub: &Classes, fusion: &[usize], parent: &Classes) -> ClassFunction {
    let (gord, hord) = (parent.group_order() as i64, sub.group_order() as i64);
    (0..parent.len())
        .map(|r| {
            let s: Cyclotomic = (0..sub.len())
                .filter(|&c| fusion[c] == r && !chi[c].is_zero())
                .map(|c| chi[c].scale(&int(sub.sizes[c] as i64)))
                .sum();
            s.scale(&Rational::new(gord.into(), (hord * parent.sizes[r] as i64).into()))
        })
        .collect()
}

/// True when every value is a rational integer with nonnegative multiplicities in `table`.
pub fn is_character(table: &CharacterTable, f: &[Cyclotomic]) -> bool {
    table.decompose(f).map(|v| v.coeffs.iter().all(|c| !c.is_negative())).unwrap_or(false)
}
