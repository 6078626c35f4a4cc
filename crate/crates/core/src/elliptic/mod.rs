//! The elliptic pairing on `R(W)`, the lattice `R̄_Z(W)`, and the Dirac index data built on it.
//!
//! `R̄_Z(W)` is `Z^Irr(W)` modulo the radical of the pairing. Coordinates on the quotient come
//! from pairing against a set `S` of irreducibles whose Gram block is nonsingular; a Z-basis is
//! the row Hermite form of those coordinates, which also yields integer lifts of every basis
//! vector back to `Z^Irr(W)`.

mod dirac;
mod lattice;

pub use dirac::{DiracData, IndexSplit, SplitError};
pub use lattice::{is_pure, is_pure_brute_force, pure_basis, quadratic_form, short_vectors, PureBasis};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::chartab::{induce, CharacterTable, VirtualCharacter};
use crate::exactnum::linalg::{self, QMatrix};
use crate::exactnum::rational::int;
use crate::exactnum::{Cyclotomic, Rational};
use crate::weylgrp::WeylGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("class functions have {got} values, the group has {expected} classes")]
    GroupMismatch { got: usize, expected: usize },
    #[error("lattice rank {rank} exceeds the enumeration limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("no pure basis found with vectors of norm at most {0}")]
    NoPureBasis(String),
    #[error("Casimir scalar has a non-rational coefficient {0}")]
    Irrational(String),
}

/// `(1/|W|) Σ_w conj(σ(w)) μ(w) det(1 - w)`.
pub fn elliptic_pairing(w: &WeylGroup, sigma: &[Cyclotomic], mu: &[Cyclotomic]) -> Result<Cyclotomic, EllipticError> {
    let classes = w.classes();
    for f in [sigma, mu] {
        if f.len() != classes.len() {
            return Err(EllipticError::GroupMismatch { got: f.len(), expected: classes.len() });
        }
    }
    let dets = w.class_det_one_minus();
    let sum: Cyclotomic = (0..classes.len())
        .filter(|&c| !dets[c].is_zero())
        .map(|c| (&sigma[c].conj() * &mu[c]).scale(&(&dets[c] * int(classes.sizes[c] as i64))))
        .sum();
    Ok(sum.scale(&Rational::new(1.into(), (classes.group_order() as i64).into())))
}

/// `Ind_{W_P}^W χ` for a proper standard parabolic `W_P`, decomposed in `Irr(W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicInduction {
    pub subset: Vec<usize>,
    pub source: usize,
    pub character: VirtualCharacter,
}

/// Inductions of every irreducible of every proper standard parabolic subgroup.
pub fn parabolic_inductions(w: &WeylGroup, table: &CharacterTable) -> Vec<ParabolicInduction> {
    let mut out = Vec::new();
    for subset in w.proper_parabolic_subsets() {
        let par = w.parabolic(&subset);
        let sub_table = CharacterTable::compute(&par.group, &par.classes);
        for (i, chi) in sub_table.irreducibles.iter().enumerate() {
            let ind = induce(chi, &par.classes, &par.fusion, w.classes());
            let character = table.decompose(&ind).expect("induced characters are characters");
            out.push(ParabolicInduction { subset: subset.clone(), source: i, character });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticSpace {
    /// `⟨χ_i, χ_j⟩^el` over `Irr(W)`.
    pub gram: QMatrix,
    /// Hermite basis of the integer vectors spanned by proper parabolic inductions.
    pub radical_basis: Vec<Vec<i64>>,
    /// Integer lifts to `Z^Irr(W)` of a Z-basis of `R̄_Z(W)`.
    pub quotient_basis: Vec<Vec<i64>>,
    pub quotient_gram: QMatrix,
    /// Irreducibles whose pairings give coordinates on the quotient.
    selected: Vec<usize>,
    selected_inverse: QMatrix,
    /// Maps quotient coordinates `c(v)` to lattice coordinates.
    to_lattice: QMatrix,
}

impl EllipticSpace {
    pub fn build(w: &WeylGroup, table: &CharacterTable) -> EllipticSpace {
        let n = table.len();
        let gram: QMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        elliptic_pairing(w, table.character(i), table.character(j))
                            .expect("same group")
                            .to_rational()
                            .expect("Weyl group characters are rational")
                    })
                    .collect()
            })
            .collect();
        // greedy nonsingular principal block
        let mut selected: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut trial = selected.clone();
            trial.push(i);
            let block: QMatrix = trial.iter().map(|&a| trial.iter().map(|&b| gram[a][b].clone()).collect()).collect();
            if !linalg::determinant(&block).is_zero() {
                selected = trial;
            }
        }
        let r = selected.len();
        let block: QMatrix = selected.iter().map(|&a| selected.iter().map(|&b| gram[a][b].clone()).collect()).collect();
        let selected_inverse = linalg::inverse(&block).expect("nonsingular block");
        let coords: Vec<Vec<Rational>> =
            (0..n).map(|i| Self::coords_with(&gram, &selected, &selected_inverse, &unit(n, i))).collect();
        let denom = coords.iter().flatten().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigInt> = coords[i].iter().map(|q| (q * Rational::from(denom.clone())).to_integer()).collect();
                row.extend((0..n).map(|j| BigInt::from(i64::from(i == j))));
                row
            })
            .collect();
        let hnf = linalg::hermite_rows(&rows);
        let basis_rows: Vec<&Vec<BigInt>> = hnf.iter().filter(|row| row[..r].iter().any(|x| !x.is_zero())).collect();
        assert_eq!(basis_rows.len(), r, "projection has full rank");
        let quotient_basis: Vec<Vec<i64>> =
            basis_rows.iter().map(|row| row[r..].iter().map(|x| x.to_i64().expect("small lift")).collect()).collect();
        let image: QMatrix = basis_rows
            .iter()
            .map(|row| row[..r].iter().map(|x| Rational::new(x.clone(), denom.clone())).collect())
            .collect();
        let to_lattice = linalg::inverse(&linalg::transpose(&image)).expect("basis of the quotient");
        let quotient_gram = (0..r)
            .map(|a| (0..r).map(|b| pair_vectors(&gram, &quotient_basis[a], &quotient_basis[b])).collect())
            .collect();
        let inductions = parabolic_inductions(w, table);
        let ind_rows: Vec<Vec<BigInt>> =
            inductions.iter().map(|p| p.character.coeffs.iter().map(|&c| BigInt::from(c)).collect()).collect();
        let radical_basis: Vec<Vec<i64>> = linalg::hermite_rows(&ind_rows)
            .into_iter()
            .map(|row| row.iter().map(|x| x.to_i64().expect("small radical entries")).collect())
            .collect();
        EllipticSpace { gram, radical_basis, quotient_basis, quotient_gram, selected, selected_inverse, to_lattice }
    }

    fn coords_with(gram: &QMatrix, selected: &[usize], inv: &QMatrix, v: &[i64]) -> Vec<Rational> {
        let pairings: Vec<Rational> = selected
            .iter()
            .map(|&a| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| &gram[a][j] * int(c)).sum())
            .collect();
        linalg::mat_vec(inv, &pairings)
    }

    pub fn rank(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn irreducible_count(&self) -> usize {
        self.gram.len()
    }

    /// `⟨u, v⟩^el` for virtual characters in `Z^Irr(W)`.
    pub fn pair(&self, u: &VirtualCharacter, v: &VirtualCharacter) -> Rational {
        pair_vectors(&self.gram, &u.coeffs, &v.coeffs)
    }

    pub fn norm(&self, v: &VirtualCharacter) -> Rational {
        self.pair(v, v)
    }

    /// Coordinates of the image of `v` in the basis `quotient_basis`; always integral.
    pub fn lattice_coordinates(&self, v: &VirtualCharacter) -> Vec<i64> {
        let c = Self::coords_with(&self.gram, &self.selected, &self.selected_inverse, &v.coeffs);
        linalg::mat_vec(&self.to_lattice, &c)
            .iter()
            .map(|q| {
                assert!(q.is_integer(), "image of an integral character is integral");
                q.to_integer().to_i64().expect("small coordinates")
            })
            .collect()
    }

    /// The integer lift `Σ x_k b_k` of lattice coordinates.
    pub fn lift(&self, x: &[i64]) -> VirtualCharacter {
        let n = self.irreducible_count();
        let mut coeffs = vec![0i64; n];
        for (xk, b) in x.iter().zip(&self.quotient_basis) {
            for (c, bj) in coeffs.iter_mut().zip(b) {
                *c += xk * bj;
            }
        }
        VirtualCharacter { coeffs }
    }

    /// True when `v` pairs to zero with every irreducible.
    pub fn in_radical(&self, v: &VirtualCharacter) -> bool {
        let n = self.irreducible_count();
        (0..n).all(|i| pair_vectors(&self.gram, &unit(n, i), &v.coeffs).is_zero())
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn pair_vectors(gram: &QMatrix, u: &[i64], v: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for (i, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            if b != 0 && !gram[i][j].is_zero() {
                acc += &gram[i][j] * int(a * b);
            }
        }
    }
    acc
}

/// Positive definiteness via leading principal minors.
pub fn is_positive_definite(g: &QMatrix) -> bool {
    (1..=g.len()).all(|k| {
        let m: QMatrix = g[..k].iter().map(|row| row[..k].to_vec()).collect();
        linalg::determinant(&m).is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn setup(t: &str) -> (WeylGroup, CharacterTable) {
        let w = WeylGroup::new(&RootSystem::parse(t).unwrap()).unwrap();
        let table = CharacterTable::compute(&w, w.classes());
        (w, table)
    }

    #[test]
    fn a1_pairings() {
        let (w, t) = setup("A1");
        let triv = t.trivial();
        let sgn = 1 - triv;
        let p = |a: usize, b: usize| elliptic_pairing(&w, t.character(a), t.character(b)).unwrap();
        assert_eq!(p(sgn, sgn), Cyclotomic::one());
        assert_eq!(p(triv, sgn), Cyclotomic::from_int(-1));
        assert!(elliptic_pairing(&w, &[Cyclotomic::one()], t.character(0)).is_err());
    }

    #[test]
    fn ranks_match_elliptic_classes() {
        for ty in ["A1", "A2", "B2", "G2", "A3", "B3"] {
            let (w, t) = setup(ty);
            let e = EllipticSpace::build(&w, &t);
            assert_eq!(e.rank(), w.count_elliptic_classes(), "{ty}");
            assert!(is_positive_definite(&e.quotient_gram));
            assert_eq!(e.radical_basis.len() + e.rank(), t.len());
            for r in &e.radical_basis {
                assert!(e.in_radical(&VirtualCharacter { coeffs: r.clone() }));
            }
            for i in 0..t.len() {
                let v = VirtualCharacter::unit(t.len(), i);
                let back = e.lift(&e.lattice_coordinates(&v));
                assert!(e.in_radical(&back.sub(&v)), "{ty}: lift of coordinates differs by a radical vector");
            }
        }
    }
}
