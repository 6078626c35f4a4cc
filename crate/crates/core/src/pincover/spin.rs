//! Gamma matrices and the spin modules of `C(V)`.
//!
//! For `n = 2m` the generators act on `(C^2)^{⊗m}` by `γ_j = i·Γ_j` with `Γ_j` the usual
//! tensor products of Pauli matrices, so every entry lies in `{0, ±1, ±i}`.
//! The normalized volume element `c·γ_1⋯γ_n` (with `c = 1` for `n = 0, 3 mod 4` and `c = i`
//! otherwise) squares to the identity. For even `n` it is the chirality operator and `S⁺` is
//! its `+1` eigenspace; for odd `n` the last generator is chosen so that it acts as `+1` on `S⁺`.

use crate::exactnum::Cyclotomic;

pub type CycMatrix = Vec<Vec<Cyclotomic>>;

pub fn cmat_identity(d: usize) -> CycMatrix {
    (0..d).map(|i| (0..d).map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }).collect()).collect()
}

pub fn cmat_mul(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let d = b.len();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    (0..d)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn cmat_add(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn cmat_scale(a: &CycMatrix, c: &Cyclotomic) -> CycMatrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn trace(a: &CycMatrix) -> Cyclotomic {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

fn kron(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let (ra, rb) = (a.len(), b.len());
    (0..ra * rb)
        .map(|i| (0..ra * rb).map(|j| &a[i / rb][j / rb] * &b[i % rb][j % rb]).collect())
        .collect()
}

fn pauli(which: char) -> CycMatrix {
    let z = Cyclotomic::zero;
    let o = Cyclotomic::one;
    let i = Cyclotomic::i;
    match which {
        'x' => vec![vec![z(), o()], vec![o(), z()]],
        'y' => vec![vec![z(), -i()], vec![i(), z()]],
        'z' => vec![vec![o(), z()], vec![z(), Cyclotomic::from_int(-1)]],
        _ => cmat_identity(2),
    }
}

/// Normalizing constant making `c·e_1⋯e_n` an involution.
pub fn volume_constant(n: usize) -> Cyclotomic {
    if n.is_multiple_of(4) || n % 4 == 3 {
        Cyclotomic::one()
    } else {
        Cyclotomic::i()
    }
}

#[derive(Debug, Clone)]
pub struct SpinModule {
    dim_v: usize,
    gammas: Vec<CycMatrix>,
    chirality: Option<CycMatrix>,
}

impl SpinModule {
    pub fn new(n: usize) -> SpinModule {
        let m = n / 2;
        let mut gammas = Vec::with_capacity(n);
        for k in 0..m {
            for p in ['x', 'y'] {
                let mut mat = cmat_identity(1);
                for t in 0..m {
                    let factor = match t.cmp(&k) {
                        std::cmp::Ordering::Less => pauli('z'),
                        std::cmp::Ordering::Equal => pauli(p),
                        std::cmp::Ordering::Greater => pauli('1'),
                    };
                    mat = kron(&mat, &factor);
                }
                gammas.push(cmat_scale(&mat, &Cyclotomic::i()));
            }
        }
        let c = volume_constant(n);
        let d = 1usize << m;
        let chirality = if n.is_multiple_of(2) {
            let prod = gammas.iter().fold(cmat_identity(d), |acc, g| cmat_mul(&acc, g));
            Some(cmat_scale(&prod, &c))
        } else {
            // c·γ_1⋯γ_n = 1 forces γ_n = c^{-1}·γ_{n-1}⋯γ_1
            let rev = gammas.iter().rev().fold(cmat_identity(d), |acc, g| cmat_mul(&acc, g));
            gammas.push(cmat_scale(&rev, &c.conj()));
            None
        };
        SpinModule { dim_v: n, gammas, chirality }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Dimension of `S` (even `n`) or of each of `S±` (odd `n`).
    pub fn size(&self) -> usize {
        1 << (self.dim_v / 2)
    }

    pub fn gamma(&self, j: usize) -> &CycMatrix {
        &self.gammas[j]
    }

    pub fn chirality(&self) -> Option<&CycMatrix> {
        self.chirality.as_ref()
    }

    /// Action of `Σ a_j e_j`.
    pub fn vector_matrix(&self, coords: &[Cyclotomic]) -> CycMatrix {
        let d = self.size();
        let mut out = vec![vec![Cyclotomic::zero(); d]; d];
        for (a, g) in coords.iter().zip(&self.gammas) {
            if a.is_zero() {
                continue;
            }
            out = cmat_add(&out, &cmat_scale(g, a));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations_hold() {
        for n in 1..=6 {
            let s = SpinModule::new(n);
            let d = s.size();
            let minus_two = cmat_scale(&cmat_identity(d), &Cyclotomic::from_int(-2));
            let zero = cmat_scale(&cmat_identity(d), &Cyclotomic::zero());
            for a in 0..n {
                for b in 0..n {
                    let ab = cmat_mul(s.gamma(a), s.gamma(b));
                    let ba = cmat_mul(s.gamma(b), s.gamma(a));
                    let anti = cmat_add(&ab, &ba);
                    assert_eq!(anti, if a == b { minus_two.clone() } else { zero.clone() }, "n={n} a={a} b={b}");
                }
            }
            if let Some(g) = s.chirality() {
                assert_eq!(cmat_mul(g, g), cmat_identity(d));
                assert_eq!(trace(g), Cyclotomic::zero());
            }
        }
    }
}
