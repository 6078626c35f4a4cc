//! Short vectors, purity and pure bases of positive-definite integral-valued lattices.
//!
//! Enumeration is Fincke–Pohst on the exact decomposition
//! `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)^2`; floating point only proposes the coordinate
//! ranges, which are widened by one and then checked exactly, so the search is complete.

use num_traits::{Signed, ToPrimitive, Zero};

use super::EllipticError;
use crate::exactnum::linalg::{self, QMatrix};
use crate::exactnum::rational::{int, to_f64};
use crate::exactnum::Rational;

pub const PURE_BASIS_RANK_LIMIT: usize = 12;

fn fincke_pohst_form(gram: &QMatrix) -> QMatrix {
    let r = gram.len();
    let mut q = gram.clone();
    for i in 0..r {
        for j in i + 1..r {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..r {
            for l in k..r {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

pub fn quadratic_form(gram: &QMatrix, x: &[i64]) -> Rational {
    bilinear_form(gram, x, x)
}

pub fn bilinear_form(gram: &QMatrix, x: &[i64], y: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b != 0 {
                acc += &gram[i][j] * int(a * b);
            }
        }
    }
    acc
}

/// All nonzero `x` with `Q(x) <= bound`, both signs, in lexicographic order.
pub fn short_vectors(gram: &QMatrix, bound: &Rational) -> Vec<Vec<i64>> {
    let r = gram.len();
    let q = fincke_pohst_form(gram);
    let mut out = Vec::new();
    let mut x = vec![0i64; r];
    if r > 0 {
        descend(&q, r - 1, bound.clone(), &mut x, &mut out);
    }
    out.retain(|v| v.iter().any(|&c| c != 0));
    out.sort();
    out
}

fn descend(q: &QMatrix, i: usize, remaining: Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let r = q.len();
    let center: Rational = -(i + 1..r).map(|j| &q[i][j] * int(x[j])).sum::<Rational>();
    let radius = (to_f64(&remaining) / to_f64(&q[i][i])).max(0.0).sqrt();
    let c = to_f64(&center);
    let lo = (c - radius).floor() as i64 - 1;
    let hi = (c + radius).ceil() as i64 + 1;
    for xi in lo..=hi {
        let d = int(xi) - &center;
        let used = &q[i][i] * &d * &d;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(q, i - 1, &remaining - &used, x, out);
        }
    }
    x[i] = 0;
}

/// No decomposition `v = v1 + v2` into nonzero orthogonal lattice vectors.
pub fn is_pure(gram: &QMatrix, v: &[i64]) -> bool {
    if v.iter().all(|&c| c == 0) {
        return false;
    }
    let n = quadratic_form(gram, v);
    // orthogonal halves satisfy |v1|^2 + |v2|^2 = |v|^2
    short_vectors(gram, &n).into_iter().all(|v1| {
        if v1 == v {
            return true;
        }
        let v2: Vec<i64> = v.iter().zip(&v1).map(|(a, b)| a - b).collect();
        !bilinear_form(gram, &v1, &v2).is_zero()
    })
}

/// Reference implementation: scans the box `|x_i| <= radius`.
pub fn is_pure_brute_force(gram: &QMatrix, v: &[i64], radius: i64) -> bool {
    if v.iter().all(|&c| c == 0) {
        return false;
    }
    let r = gram.len();
    let mut x = vec![-radius; r];
    loop {
        let nonzero = x.iter().any(|&c| c != 0);
        if nonzero && x.as_slice() != v {
            let y: Vec<i64> = v.iter().zip(&x).map(|(a, b)| a - b).collect();
            if bilinear_form(gram, &x, &y).is_zero() {
                return false;
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return true;
            }
            if x[k] < radius {
                x[k] += 1;
                break;
            }
            x[k] = -radius;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureBasis {
    pub vectors: Vec<Vec<i64>>,
    pub norms: Vec<Rational>,
    /// `Π |b_i|^2 / det(G)`: the square of the orthogonality defect.
    pub squared_defect: Rational,
}

/// Greedy basis of pure vectors taken in order of increasing norm.
pub fn pure_basis(gram: &QMatrix) -> Result<PureBasis, EllipticError> {
    let r = gram.len();
    if r > PURE_BASIS_RANK_LIMIT {
        return Err(EllipticError::RankTooLarge { rank: r, limit: PURE_BASIS_RANK_LIMIT });
    }
    let det = linalg::determinant(gram);
    if r == 0 {
        return Ok(PureBasis { vectors: vec![], norms: vec![], squared_defect: int(1) });
    }
    let max_diag = (0..r).map(|i| gram[i][i].clone()).max().unwrap();
    let limit = &max_diag * int(64);
    let mut bound = (0..r).map(|i| gram[i][i].clone()).min().unwrap();
    while bound <= limit {
        let mut candidates: Vec<(Rational, Vec<i64>)> = short_vectors(gram, &bound)
            .into_iter()
            .filter(|v| v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
            .map(|v| (quadratic_form(gram, &v), v))
            .collect();
        candidates.sort();
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        for (_, v) in candidates {
            let mut trial = chosen.clone();
            trial.push(v.clone());
            if is_primitive(&trial) && is_pure(gram, &v) {
                chosen = trial;
                if chosen.len() == r {
                    let norms: Vec<Rational> = chosen.iter().map(|b| quadratic_form(gram, b)).collect();
                    let prod = norms.iter().fold(int(1), |a, b| a * b);
                    return Ok(PureBasis { vectors: chosen, norms, squared_defect: prod / &det });
                }
            }
        }
        bound *= int(2);
    }
    Err(EllipticError::NoPureBasis(crate::exactnum::rational::format_rational(&limit)))
}

/// Rows span a saturated sublattice of `Z^r`: the maximal minors have gcd 1.
fn is_primitive(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    let r = rows[0].len();
    let mut g = num_bigint::BigInt::zero();
    for cols in combinations(r, k) {
        let m: QMatrix = rows.iter().map(|row| cols.iter().map(|&c| int(row[c])).collect()).collect();
        let d = linalg::determinant(&m).to_integer();
        g = num_integer::Integer::gcd(&g, &d);
        if g.abs() == 1.into() {
            return true;
        }
    }
    g.to_i64() == Some(1)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gram_i(m: &[&[i64]]) -> QMatrix {
        m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn orthonormal_lattice() {
        let g = gram_i(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(short_vectors(&g, &int(1)).len(), 6);
        assert!(is_pure(&g, &[1, 0, 0]));
        assert!(!is_pure(&g, &[1, 1, 0]));
        let b = pure_basis(&g).unwrap();
        assert_eq!(b.vectors, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(b.squared_defect, int(1));
    }

    #[test]
    fn hexagonal_lattice() {
        let g = gram_i(&[&[2, 1], &[1, 2]]);
        assert_eq!(short_vectors(&g, &int(2)).len(), 6);
        let b = pure_basis(&g).unwrap();
        assert_eq!(b.vectors.len(), 2);
        assert!(b.vectors.iter().all(|v| is_pure(&g, v)));
        assert_eq!(b.squared_defect, crate::exactnum::rational::rat(4, 3));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[vec![1, 0], vec![0, 1]]));
        assert!(!is_primitive(&[vec![1, 1], vec![1, -1]]));
        assert!(!is_primitive(&[vec![2, 0]]));
    }

    fn small_gram() -> impl Strategy<Value = QMatrix> {
        // A^T A + I for small integer A keeps the form positive definite
        (2usize..=3).prop_flat_map(|r| {
            proptest::collection::vec(-2i64..=2, r * r).prop_map(move |a| {
                (0..r)
                    .map(|i| {
                        (0..r)
                            .map(|j| int((0..r).map(|k| a[k * r + i] * a[k * r + j]).sum::<i64>() + i64::from(i == j)))
                            .collect()
                    })
                    .collect()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn purity_matches_brute_force(g in small_gram(), seed in proptest::collection::vec(-2i64..=2, 3)) {
            let v: Vec<i64> = seed[..g.len()].to_vec();
            prop_assume!(v.iter().any(|&c| c != 0));
            // any orthogonal half has norm at most |v|^2, and the minimal eigenvalue is at least 1
            let n = quadratic_form(&g, &v);
            let radius = (to_f64(&n).sqrt().ceil() as i64) + 1;
            prop_assert_eq!(is_pure(&g, &v), is_pure_brute_force(&g, &v, radius));
        }

        #[test]
        fn short_vectors_complete(g in small_gram()) {
            let bound = int(6);
            let found = short_vectors(&g, &bound);
            let r = g.len();
            let mut count = 0;
            let mut x = vec![-3i64; r];
            loop {
                if x.iter().any(|&c| c != 0) && quadratic_form(&g, &x) <= bound {
                    count += 1;
                    prop_assert!(found.contains(&x));
                }
                let mut k = 0;
                while k < r && x[k] == 3 { x[k] = -3; k += 1; }
                if k == r { break; }
                x[k] += 1;
            }
            prop_assert_eq!(count, found.len());
        }
    }
}
