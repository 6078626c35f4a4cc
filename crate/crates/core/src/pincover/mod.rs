//! The pin double cover `W̃` of a Weyl group, realized inside `Pin(V) ⊂ C(V)^×`.
//!
//! `W̃` element `2w + s` stands for `z^s·L(w)`, where `L(w) = s̃_{i_1}⋯s̃_{i_l}` along the
//! lexicographically least reduced word and `s̃_α = α/|α|`. The central element `z` is `-1`
//! in `C(V)`. Multiplication uses the cocycle `L(w1)L(w2) = c(w1,w2)·L(w1 w2)`, which is read off
//! from spin-module matrices reduced modulo a prime `p` splitting every cyclotomic field
//! involved. The reduction is a ring map, so it preserves the sign `c`.

pub mod clifford;
pub mod spin;

pub use clifford::CliffordElement;
pub use spin::{CycMatrix, SpinModule};

use serde::{Deserialize, Serialize};

use crate::exactnum::modp::{mul_mod, prime_above_congruent_one, CyclotomicReduction};
use crate::exactnum::rational::{int, Rational};
use crate::exactnum::Cyclotomic;
use crate::group::{Classes, Group, Subgroup};
use crate::rootsys::RootSystem;
use crate::weylgrp::{WeylError, WeylGroup};

/// An element of `W̃` together with its Clifford realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinElement {
    pub clifford: CliffordElement,
    pub image: usize,
}

pub struct PinGroup {
    weyl: WeylGroup,
    spin: SpinModule,
    /// Orthonormal coordinates of `α/|α|` for each positive root.
    unit_roots: Vec<Vec<Cyclotomic>>,
    red: CyclotomicReduction,
    /// Spin matrices of the canonical lifts, reduced mod `p`, row-major.
    mats: Vec<Vec<u64>>,
    pivot: Vec<usize>,
    /// `s̃_α = z^{root_sign} L(s_α)` for positive roots.
    root_sign: Vec<u8>,
    gens: Vec<usize>,
    classes: Classes,
}

/// Class of `W̃` as reported in JSON dumps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinClassInfo {
    pub representative_word: Vec<usize>,
    pub central_sheet: u8,
    pub projected_class: usize,
    pub size: usize,
    pub order: u64,
    pub split: bool,
}

impl PinGroup {
    pub fn new(rs: &RootSystem) -> Result<PinGroup, WeylError> {
        let weyl = WeylGroup::new(rs)?;
        Ok(Self::from_weyl(weyl))
    }

    pub fn from_weyl(weyl: WeylGroup) -> PinGroup {
        let rs = weyl.root_system().clone();
        let n = rs.rank();
        let spin = SpinModule::new(n);
        let unit_roots: Vec<Vec<Cyclotomic>> = (0..rs.num_positive()).map(|a| unit_root_coordinates(&rs, a)).collect();
        let root_mats: Vec<CycMatrix> = unit_roots.iter().map(|c| spin.vector_matrix(c)).collect();
        let conductor = root_mats
            .iter()
            .flatten()
            .flatten()
            .fold(4u64, |l, c| num_integer::lcm(l, c.conductor()));
        let red = CyclotomicReduction::new(prime_above_congruent_one(1 << 30, conductor));
        let p = red.p;
        let reduce = |m: &CycMatrix| -> Vec<u64> {
            m.iter().flatten().map(|c| red.reduce(c).expect("entries reduce mod p")).collect()
        };
        let root_reduced: Vec<Vec<u64>> = root_mats.iter().map(reduce).collect();
        let d = spin.size();
        let simple_mats: Vec<Vec<u64>> = root_reduced[..n].to_vec();
        let mut mats: Vec<Vec<u64>> = Vec::with_capacity(weyl.order());
        let mut ident = vec![0u64; d * d];
        for i in 0..d {
            ident[i * d + i] = 1;
        }
        mats.push(ident);
        // elements are stored in order of nondecreasing length
        for w in 1..weyl.order() {
            let s = weyl.min_left_descent(w).unwrap();
            let rest = weyl.mul(weyl.simple_reflection(s), w);
            debug_assert!(rest < w);
            mats.push(matmul_mod(&simple_mats[s], &mats[rest], d, p));
        }
        let pivot = mats.iter().map(|m| m.iter().position(|&x| x != 0).expect("invertible")).collect();
        let mut g = PinGroup {
            weyl,
            spin,
            unit_roots,
            red,
            mats,
            pivot,
            root_sign: Vec::new(),
            gens: Vec::new(),
            classes: Classes { class_of: vec![], reps: vec![], sizes: vec![], orders: vec![], inverse_class: vec![] },
        };
        g.root_sign = (0..rs.num_positive())
            .map(|a| {
                let w = g.weyl.reflection(a);
                g.relative_sign(&root_reduced[a], w)
            })
            .collect();
        g.gens = (0..n).map(|i| 2 * g.weyl.simple_reflection(i)).collect();
        g.classes = Classes::compute(&g);
        g
    }

    /// 0 if `m = ρ(L(w))` mod p, 1 if `m = -ρ(L(w))`.
    fn relative_sign(&self, m: &[u64], w: usize) -> u8 {
        let piv = self.pivot[w];
        let target = self.mats[w][piv];
        if m[piv] == target {
            0
        } else if m[piv] == self.red.p - target {
            1
        } else {
            panic!("lifts of the same Weyl element differ by more than a sign")
        }
    }

    /// `c(w1, w2) ∈ {+1, -1}` encoded as 0 / 1.
    pub fn cocycle_bit(&self, w1: usize, w2: usize) -> u8 {
        let w = self.weyl.mul(w1, w2);
        let d = self.spin.size();
        let p = self.red.p;
        let piv = self.pivot[w];
        let (r, c) = (piv / d, piv % d);
        let (a, b) = (&self.mats[w1], &self.mats[w2]);
        let v = (0..d).fold(0u64, |acc, k| (acc + mul_mod(a[r * d + k], b[k * d + c], p)) % p);
        let target = self.mats[w][piv];
        if v == target {
            0
        } else {
            assert_eq!(v, p - target, "cocycle is a sign");
            1
        }
    }

    pub fn cocycle(&self, w1: usize, w2: usize) -> i64 {
        1 - 2 * self.cocycle_bit(w1, w2) as i64
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn root_system(&self) -> &RootSystem {
        self.weyl.root_system()
    }

    pub fn spin_module(&self) -> &SpinModule {
        &self.spin
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    pub fn element(&self, w: usize, sheet: u8) -> usize {
        2 * w + sheet as usize
    }

    /// The canonical lift `L(w)`.
    pub fn lift(&self, w: usize) -> usize {
        2 * w
    }

    pub fn z(&self) -> usize {
        1
    }

    pub fn project(&self, x: usize) -> usize {
        x / 2
    }

    pub fn sheet(&self, x: usize) -> u8 {
        (x % 2) as u8
    }

    pub fn sgn(&self, x: usize) -> i64 {
        self.weyl.sign(self.project(x))
    }

    /// `s̃_α = α/|α|` for a positive root.
    pub fn root_lift(&self, a: usize) -> usize {
        assert!(self.root_system().is_positive(a));
        self.element(self.weyl.reflection(a), self.root_sign[a])
    }

    pub fn simple_lift(&self, i: usize) -> usize {
        self.gens[i]
    }

    pub fn lift_simple_reflection(&self, i: usize) -> PinElement {
        let clifford = CliffordElement::vector(&self.unit_roots[i]);
        PinElement { clifford, image: self.weyl.simple_reflection(i) }
    }

    pub fn is_even_dim(&self) -> bool {
        self.root_system().rank().is_multiple_of(2)
    }

    /// Members of `W̃′`: the kernel of `sgn∘p` for even `dim V`, all of `W̃` otherwise.
    pub fn even_members(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| !self.is_even_dim() || self.sgn(x) == 1).collect()
    }

    pub fn even_subgroup(&self) -> Subgroup<'_, PinGroup> {
        Subgroup::from_elements(self, &self.even_members())
    }

    /// The coset representative `g = s̃_1` of `W̃ ∖ W̃′`, when `dim V` is even.
    pub fn coset_rep(&self) -> Option<usize> {
        self.is_even_dim().then(|| self.gens[0])
    }

    /// Exact Clifford element `z^s L(w)`.
    pub fn clifford_lift(&self, x: usize) -> CliffordElement {
        let n = self.root_system().rank();
        let word = self.weyl.reduced_word(self.project(x));
        let prod = word.iter().fold(CliffordElement::one(n), |acc, &i| &acc * &CliffordElement::vector(&self.unit_roots[i]));
        if self.sheet(x) == 1 {
            -&prod
        } else {
            prod
        }
    }

    /// Exact spin matrix `ρ(x)` on `S` (or `S⁺` for odd `dim V`).
    pub fn spin_matrix(&self, x: usize) -> CycMatrix {
        let d = self.spin.size();
        let word = self.weyl.reduced_word(self.project(x));
        let gens: Vec<CycMatrix> = (0..self.root_system().rank()).map(|i| self.spin.vector_matrix(&self.unit_roots[i])).collect();
        let m = word.iter().fold(spin::cmat_identity(d), |acc, &i| spin::cmat_mul(&acc, &gens[i]));
        if self.sheet(x) == 1 {
            spin::cmat_scale(&m, &Cyclotomic::from_int(-1))
        } else {
            m
        }
    }

    /// `(χ_{S⁺}(x), χ_{S⁻}(x))`. For even `dim V`, `x` must lie in `W̃′`.
    pub fn spin_character_values(&self, x: usize) -> (Cyclotomic, Cyclotomic) {
        let m = self.spin_matrix(x);
        let t = spin::trace(&m);
        match self.spin.chirality() {
            Some(gamma) => {
                assert_eq!(self.sgn(x), 1, "half-spin characters live on W̃′");
                let tg = spin::trace(&spin::cmat_mul(&m, gamma));
                let half = Rational::new(1.into(), 2.into());
                ((&t + &tg).scale(&half), (&t - &tg).scale(&half))
            }
            None => {
                let s = Cyclotomic::from_int(self.sgn(x));
                (t.clone(), &t * &s)
            }
        }
    }

    /// Spin characters on the given elements: `(χ_{S⁺}, χ_{S⁻})`.
    pub fn spin_characters(&self, elems: &[usize]) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
        elems.iter().map(|&x| self.spin_character_values(x)).unzip()
    }

    pub fn class_info(&self) -> Vec<PinClassInfo> {
        let wc = self.weyl.classes();
        (0..self.classes.len())
            .map(|c| {
                let r = self.classes.reps[c];
                let split = self.classes.class_of(r) != self.classes.class_of(self.mul(self.z(), r));
                PinClassInfo {
                    representative_word: self.weyl.reduced_word(self.project(r)),
                    central_sheet: self.sheet(r),
                    projected_class: wc.class_of(self.project(r)),
                    size: self.classes.sizes[c],
                    order: self.classes.orders[c],
                    split,
                }
            })
            .collect()
    }

    /// Values of `Sg(τ)` on `W̃′`-classes, given `τ` on the same classes.
    pub fn sg_class_function(&self, sub: &Subgroup<'_, PinGroup>, classes: &Classes, tau: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..classes.len())
            .map(|c| {
                let x = sub.to_parent(classes.reps[c]);
                match self.coset_rep() {
                    Some(g) => {
                        let y = self.conjugate(x, g);
                        tau[classes.class_of(sub.to_local(y).unwrap())].clone()
                    }
                    None => &tau[c] * &Cyclotomic::from_int(self.sgn(x)),
                }
            })
            .collect()
    }
}

fn matmul_mod(a: &[u64], b: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = (out[i * d + j] + mul_mod(x, b[k * d + j], p)) % p;
            }
        }
    }
    out
}

/// Gram–Schmidt basis `f_j` of the simple roots with `q_j = ⟨f_j, f_j⟩`.
fn orthogonal_basis(rs: &RootSystem) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = rs.rank();
    let mut fs: Vec<Vec<Rational>> = Vec::new();
    let mut qs: Vec<Rational> = Vec::new();
    for i in 0..n {
        let mut v = rs.root_q(i);
        for (f, q) in fs.iter().zip(&qs) {
            let c = rs.inner(&rs.root_q(i), f) / q;
            for (x, y) in v.iter_mut().zip(f) {
                *x -= &c * y;
            }
        }
        qs.push(rs.inner(&v, &v));
        fs.push(v);
    }
    (fs, qs)
}

/// Coordinates of `α/|α|` in the orthonormal basis `e_j = f_j/|f_j|`.
pub fn unit_root_coordinates(rs: &RootSystem, a: usize) -> Vec<Cyclotomic> {
    let (fs, qs) = orthogonal_basis(rs);
    let alpha = rs.root_q(a);
    let na = rs.norm(a).clone();
    fs.iter()
        .zip(&qs)
        .map(|(f, q)| {
            let ip = rs.inner(&alpha, f);
            let s = Cyclotomic::sqrt_rational(&(int(1) / (q * &na))).expect("positive");
            s.scale(&ip)
        })
        .collect()
}

impl Group for PinGroup {
    fn order(&self) -> usize {
        2 * self.weyl.order()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (w1, w2) = (a / 2, b / 2);
        let s = (a % 2) as u8 ^ (b % 2) as u8 ^ self.cocycle_bit(w1, w2);
        2 * self.weyl.mul(w1, w2) + s as usize
    }
    fn inv(&self, a: usize) -> usize {
        let w = a / 2;
        let wi = self.weyl.inv(w);
        // L(w)^{-1} = c(w, w^{-1}) L(w^{-1})
        2 * wi + ((a % 2) as u8 ^ self.cocycle_bit(w, wi)) as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pin(t: &str) -> PinGroup {
        PinGroup::new(&RootSystem::parse(t).unwrap()).unwrap()
    }

    #[test]
    fn a1_is_cyclic_of_order_four() {
        let g = pin("A1");
        assert_eq!(g.order(), 4);
        let s = g.simple_lift(0);
        assert_eq!(g.mul(s, s), g.z());
        assert_eq!(g.classes().len(), 4);
        assert_eq!(g.cocycle(1, 1), -1);
        let lift = g.lift_simple_reflection(0);
        let sq = &lift.clifford * &lift.clifford;
        assert_eq!(sq.as_scalar(), Some(Cyclotomic::from_int(-1)));
    }

    #[test]
    fn coxeter_presentation() {
        for t in ["A2", "B2", "G2", "B3", "D4", "F4"] {
            let g = pin(t);
            let rs = g.root_system();
            let n = rs.rank();
            for i in 0..n {
                let si = g.simple_lift(i);
                assert_eq!(g.mul(si, si), g.z(), "{t}");
                for j in 0..i {
                    let m = rs.coxeter_exponent(i, j) as u64;
                    let sisj = g.mul(si, g.simple_lift(j));
                    assert_eq!(g.pow(sisj, m), g.z(), "{t} {i} {j}");
                }
            }
            assert_eq!(g.classes().class_of(g.z()), 1);
            assert_eq!(g.classes().sizes[1], 1);
        }
    }

    #[test]
    fn g2_presentation_in_clifford_algebra() {
        let g = pin("G2");
        let a = g.lift_simple_reflection(0).clifford;
        let b = g.lift_simple_reflection(1).clifford;
        assert_eq!((&a * &b).pow(6).as_scalar(), Some(Cyclotomic::from_int(-1)));
    }

    #[test]
    fn cocycle_identity_b2() {
        let g = pin("B2");
        let w = g.weyl();
        let n = w.order();
        for x in 0..n {
            assert_eq!(g.cocycle(0, x), 1);
            for y in 0..n {
                for z in 0..n {
                    let lhs = g.cocycle(x, y) * g.cocycle(w.mul(x, y), z);
                    let rhs = g.cocycle(y, z) * g.cocycle(x, w.mul(y, z));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn lifts_agree_with_clifford_products() {
        let g = pin("B3");
        for x in [5usize, 17, 40, 77] {
            let y = 2 * 13 + 1;
            let prod = &g.clifford_lift(x) * &g.clifford_lift(y);
            assert_eq!(prod, g.clifford_lift(g.mul(x, y)));
        }
        for a in 0..g.root_system().num_positive() {
            let direct = CliffordElement::vector(&unit_root_coordinates(g.root_system(), a));
            assert_eq!(direct, g.clifford_lift(g.root_lift(a)));
        }
    }

    #[test]
    fn spin_characters_are_genuine() {
        for t in ["A1", "A2", "B3", "G2"] {
            let g = pin(t);
            let (plus, minus) = g.spin_character_values(g.z());
            let (p1, m1) = g.spin_character_values(0);
            assert_eq!(plus, -&p1);
            assert_eq!(minus, -&m1);
            if g.is_even_dim() {
                assert_eq!(p1, Cyclotomic::from_int((g.spin_module().size() / 2) as i64));
            }
        }
    }
}
