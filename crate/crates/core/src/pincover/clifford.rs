//! The Clifford algebra of `V` with respect to an orthonormal basis `e_1, ..., e_n`,
//! with `e_i^2 = -1` and `e_i e_j = -e_j e_i` for `i != j`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use crate::exactnum::Cyclotomic;

/// Element of `C(V)`; blades are bitmasks over the orthonormal basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    dim: usize,
    coeffs: BTreeMap<u32, Cyclotomic>,
}

/// Sign of `e_A e_B` relative to `e_{A xor B}`, including `e_i^2 = -1` on the overlap.
fn blade_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let low = bb.trailing_zeros();
        swaps += (a >> (low + 1)).count_ones();
        bb &= bb - 1;
    }
    let negative = swaps + (a & b).count_ones();
    negative % 2 == 1
}

impl CliffordElement {
    pub fn zero(dim: usize) -> Self {
        CliffordElement { dim, coeffs: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: Cyclotomic) -> Self {
        let mut e = Self::zero(dim);
        if !c.is_zero() {
            e.coeffs.insert(0, c);
        }
        e
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Cyclotomic::one())
    }

    /// `Σ c_i e_i`.
    pub fn vector(coords: &[Cyclotomic]) -> Self {
        let mut e = Self::zero(coords.len());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.coeffs.insert(1 << i, c.clone());
            }
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, blade: u32) -> Cyclotomic {
        self.coeffs.get(&blade).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Cyclotomic)> {
        self.coeffs.iter().map(|(&b, c)| (b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Scalar value when the element lies in `C = C·1`.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        match self.coeffs.len() {
            0 => Some(Cyclotomic::zero()),
            1 if self.coeffs.contains_key(&0) => Some(self.coeffs[&0].clone()),
            _ => None,
        }
    }

    /// Parity automorphism: `-1` on odd blades.
    pub fn parity(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&b, c)| (b, if b.count_ones() % 2 == 1 { -c } else { c.clone() }))
            .collect();
        CliffordElement { dim: self.dim, coeffs }
    }

    /// Anti-automorphism reversing products of vectors.
    pub fn transpose(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&b, c)| {
                let r = b.count_ones();
                (b, if (r * r.saturating_sub(1) / 2) % 2 == 1 { -c } else { c.clone() })
            })
            .collect();
        CliffordElement { dim: self.dim, coeffs }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|b| b.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|b| b.count_ones() % 2 == 1)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.dim);
        for (&b, v) in &self.coeffs {
            let t = v * c;
            if !t.is_zero() {
                out.coeffs.insert(b, t);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.dim), |acc, _| &acc * self)
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.dim, rhs.dim);
        let mut acc: BTreeMap<u32, Vec<Cyclotomic>> = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                let p = x * y;
                let p = if blade_sign(a, b) { -p } else { p };
                acc.entry(a ^ b).or_default().push(p);
            }
        }
        let coeffs = acc
            .into_iter()
            .filter_map(|(b, v)| {
                let s: Cyclotomic = v.into_iter().sum();
                (!s.is_zero()).then_some((b, s))
            })
            .collect();
        CliffordElement { dim: self.dim, coeffs }
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        let mut coeffs = self.coeffs.clone();
        for (&b, y) in &rhs.coeffs {
            let s = &coeffs.get(&b).cloned().unwrap_or_else(Cyclotomic::zero) + y;
            if s.is_zero() {
                coeffs.remove(&b);
            } else {
                coeffs.insert(b, s);
            }
        }
        CliffordElement { dim: self.dim, coeffs }
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(&Cyclotomic::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis(dim: usize, i: usize) -> CliffordElement {
        let mut c = vec![Cyclotomic::zero(); dim];
        c[i] = Cyclotomic::one();
        CliffordElement::vector(&c)
    }

    #[test]
    fn relations() {
        let e0 = basis(3, 0);
        let e1 = basis(3, 1);
        assert_eq!(&e0 * &e0, CliffordElement::scalar(3, Cyclotomic::from_int(-1)));
        assert_eq!(&e0 * &e1, -&(&e1 * &e0));
        let v = e0.scale(&Cyclotomic::from_int(3));
        let w = &v + &e1.scale(&Cyclotomic::from_int(4));
        assert_eq!((&w * &w).as_scalar(), Some(Cyclotomic::from_int(-25)));
        assert_eq!((&e0 * &e1).transpose(), &e1 * &e0);
    }

    fn element(dim: usize) -> impl Strategy<Value = CliffordElement> {
        proptest::collection::vec((-3i64..4, 0u32..(1 << dim)), 1..5).prop_map(move |terms| {
            terms.into_iter().fold(CliffordElement::zero(dim), |acc, (c, b)| {
                let mut t = CliffordElement::zero(dim);
                if c != 0 {
                    t.coeffs.insert(b, Cyclotomic::from_int(c));
                }
                &acc + &t
            })
        })
    }

    proptest! {
        #[test]
        fn associative(a in element(4), b in element(4), c in element(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
