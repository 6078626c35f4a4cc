//! Prime-field helpers: primality, primitive roots, linear algebra mod `p`,
//! and the reduction homomorphism from cyclotomic integers into `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::{factor_u64, Cyclotomic};
use super::rational::Rational;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least prime `p > lower` with `p = 1 mod modulus`.
pub fn prime_above_congruent_one(lower: u64, modulus: u64) -> u64 {
    let modulus = modulus.max(1);
    let mut p = (lower / modulus + 1) * modulus + 1;
    while !is_prime(p) {
        p += modulus;
    }
    p
}

pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factor_u64(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Ring homomorphism `Z[E(N)][1/d] -> F_p` sending `E(n)` to `g^((p-1)/n)`
/// for a fixed primitive root `g`; defined whenever `n | p - 1` and `p` does not
/// divide the denominators involved. Compatible across all conductors.
#[derive(Clone, Debug)]
pub struct CyclotomicReduction {
    pub p: u64,
    generator: u64,
}

impl CyclotomicReduction {
    pub fn new(p: u64) -> Self {
        CyclotomicReduction { p, generator: primitive_root(p) }
    }

    /// Image of `E(n)`.
    pub fn root(&self, n: u64) -> Option<u64> {
        if !(self.p - 1).is_multiple_of(n) {
            return None;
        }
        Some(pow_mod(self.generator, (self.p - 1) / n, self.p))
    }

    pub fn rational(&self, q: &Rational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let d = q.denom().mod_floor(&p).to_u64()?;
        if d == 0 {
            return None;
        }
        let n = q.numer().mod_floor(&p).to_u64()?;
        Some(mul_mod(n, inv_mod(d, self.p), self.p))
    }

    pub fn reduce(&self, c: &Cyclotomic) -> Option<u64> {
        if c.is_zero() {
            return Some(0);
        }
        let z = self.root(c.conductor())?;
        let mut acc = 0u64;
        for (k, q) in c.terms() {
            let v = mul_mod(self.rational(q)?, pow_mod(z, k, self.p), self.p);
            acc = (acc + v) % self.p;
        }
        Some(acc)
    }
}

/// Basis of the right kernel of a `rows x cols` matrix over `F_p`.
pub fn kernel(mat: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = mat.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..cols {
                    let sub = mul_mod(f, m[row][c], p);
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Solves `basis * x = target` for a full-column-rank `basis` given by its columns.
pub fn solve_in_span(columns: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = target.len();
    let k = columns.len();
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r: Vec<u64> = columns.iter().map(|c| c[i] % p).collect();
            r.push(target[i] % p);
            r
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let pr = (row..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(row, pr);
        let inv = inv_mod(aug[row][col], p);
        for x in aug[row].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..n {
            if r != row && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in 0..=k {
                    let sub = mul_mod(f, aug[row][c], p);
                    aug[r][c] = (aug[r][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if aug[row..].iter().any(|r| r[k] != 0) {
        return None;
    }
    Some((0..k).map(|i| aug[i][k]).collect())
}

/// Characteristic polynomial coefficients (lowest degree first, monic) via Hessenberg reduction.
pub fn char_poly(mat: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = mat.len();
    let mut h: Vec<Vec<u64>> = mat.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    // reduce to upper Hessenberg form by similarity transforms
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for r in h.iter_mut() {
                r.swap(piv, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let f = mul_mod(h[i][j], inv, p);
            for c in 0..n {
                let sub = mul_mod(f, h[j + 1][c], p);
                h[i][c] = (h[i][c] + p - sub) % p;
            }
            for r in 0..n {
                let add = mul_mod(f, h[r][i], p);
                h[r][j + 1] = (h[r][j + 1] + add) % p;
            }
        }
    }
    // recurrence for leading principal minors of (x I - H)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let i = m - 1;
        // (x - h[i][i]) * p_{m-1}
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(h[i][i], c, p)) % p;
        }
        let mut t = 1u64;
        for r in (0..i).rev() {
            t = mul_mod(t, h[r + 1][r], p);
            let coef = mul_mod(t, h[r][i], p);
            for (d, &c) in polys[r].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// All roots in `F_p` of a polynomial (lowest degree first), found by exhaustive evaluation.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
        .collect()
}

pub fn to_signed(x: u64, p: u64) -> i64 {
    if x > p / 2 {
        x as i64 - p as i64
    } else {
        x as i64
    }
}

pub fn from_signed(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(97) && !is_prime(91) && is_prime(1_000_000_007));
        let p = prime_above_congruent_one(10, 12);
        assert_eq!(p, 13);
        let g = primitive_root(13);
        assert_eq!(pow_mod(g, 12, 13), 1);
        assert!((1..12).all(|e| pow_mod(g, e, 13) != 1));
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let red = CyclotomicReduction::new(prime_above_congruent_one(1000, 24));
        let a = &Cyclotomic::root_of_unity(8, 1) - &Cyclotomic::root_of_unity(8, 3);
        let b = &Cyclotomic::root_of_unity(3, 1).scale(&rat(2, 5)) + &Cyclotomic::i();
        let p = red.p;
        assert_eq!(red.reduce(&(&a * &b)).unwrap(), mul_mod(red.reduce(&a).unwrap(), red.reduce(&b).unwrap(), p));
        assert_eq!(red.reduce(&(&a + &b)).unwrap(), (red.reduce(&a).unwrap() + red.reduce(&b).unwrap()) % p);
        assert_eq!(mul_mod(red.reduce(&a).unwrap(), red.reduce(&a).unwrap(), p), 2);
    }

    #[test]
    fn char_poly_of_companion() {
        let p = 101;
        // companion matrix of x^3 - 2x^2 + 3x - 5
        let m = vec![vec![0, 0, 5], vec![1, 0, p - 3], vec![0, 1, 2]];
        assert_eq!(char_poly(&m, p), vec![p - 5, 3, p - 2, 1]);
        let k = kernel(&[vec![1, 2, 3], vec![2, 4, 6]], 3, p);
        assert_eq!(k.len(), 2);
    }
}
