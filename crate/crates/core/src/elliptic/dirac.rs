//! The Dirac index `i(δ) = δ ⊗ (S⁺ - S⁻)` on `W̃′`, its split, `Irr⁰_gen`, and the scalar by
//! which the Casimir element `Ω_W̃` acts on genuine irreducibles.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use thiserror::Error;

use super::{EllipticError, EllipticSpace};
use crate::chartab::{self, load_or_compute, CharError, CharacterTable, ClassFunction, VirtualCharacter};
use crate::exactnum::rational::{int, Rational};
use crate::exactnum::{Cyclotomic, ParamPolynomial};
use crate::group::{Classes, Group};
use crate::pincover::{spin, PinGroup};
use crate::rootsys::{ParameterFunction, RootSystem};
use crate::weylgrp::WeylError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("the index of this virtual character vanishes")]
    Vanishing,
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("split invariant violated: {0}")]
    Invariant(String),
}

/// `i(δ) = δ̃⁺ - δ̃⁻` with both parts genuine `W̃′`-characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSplit {
    pub source: VirtualCharacter,
    pub delta_plus: VirtualCharacter,
    pub delta_minus: VirtualCharacter,
    /// `⟨δ, δ⟩^el`.
    pub norm: Rational,
}

/// Everything needed for index computations on one root system.
pub struct DiracData {
    pin: PinGroup,
    pub weyl_table: CharacterTable,
    pub pin_table: CharacterTable,
    pub even_table: CharacterTable,
    /// `W̃′` as a sorted list of `W̃` elements; position is the local index.
    even_elements: Vec<usize>,
    local_of: Vec<u32>,
    /// `χ_{S⁺}`, `χ_{S⁻}` on `W̃′` classes.
    pub spin_plus: ClassFunction,
    pub spin_minus: ClassFunction,
    /// `W̃′` class to the class of its image in `W`.
    even_to_weyl: Vec<usize>,
    /// `W̃′` class to its `W̃` class.
    even_to_pin: Vec<usize>,
    /// `Sg(χ_i) = χ_{sg[i]}` on `Irr(W̃′)`.
    pub sg: Vec<usize>,
    pub elliptic: EllipticSpace,
}

impl DiracData {
    pub fn new(rs: &RootSystem, cache: Option<&Path>) -> Result<DiracData, WeylError> {
        let pin = PinGroup::new(rs)?;
        let ty = rs.cartan_type().to_string();
        let weyl_table = load_or_compute(cache, "weyl", &ty, pin.weyl(), pin.weyl().classes());
        let pin_table = load_or_compute(cache, "pin", &ty, &pin, pin.classes());
        let (even_elements, even_table, sg) = {
            let sub = pin.even_subgroup();
            let classes = Classes::compute(&sub);
            let table = load_or_compute(cache, "pin-even", &ty, &sub, &classes);
            let sg = (0..table.len())
                .map(|i| {
                    let image = pin.sg_class_function(&sub, &classes, table.character(i));
                    table.find(&image).expect("Sg permutes irreducibles")
                })
                .collect();
            (sub.elements().to_vec(), table, sg)
        };
        let mut local_of = vec![u32::MAX; pin.order()];
        for (i, &x) in even_elements.iter().enumerate() {
            local_of[x] = i as u32;
        }
        let even_classes = &even_table.classes;
        let reps: Vec<usize> = even_classes.reps.iter().map(|&r| even_elements[r]).collect();
        let (spin_plus, spin_minus) = pin.spin_characters(&reps);
        let even_to_weyl = reps.iter().map(|&x| pin.weyl().classes().class_of(pin.project(x))).collect();
        let even_to_pin = reps.iter().map(|&x| pin.classes().class_of(x)).collect();
        let elliptic = EllipticSpace::build(pin.weyl(), &weyl_table);
        Ok(DiracData {
            pin,
            weyl_table,
            pin_table,
            even_table,
            even_elements,
            local_of,
            spin_plus,
            spin_minus,
            even_to_weyl,
            even_to_pin,
            sg,
            elliptic,
        })
    }

    pub fn pin(&self) -> &PinGroup {
        &self.pin
    }

    pub fn root_system(&self) -> &RootSystem {
        self.pin.root_system()
    }

    pub fn even_order(&self) -> usize {
        self.even_elements.len()
    }

    /// `W̃′` class of a `W̃` element, if it lies in `W̃′`.
    pub fn even_class_of(&self, x: usize) -> Option<usize> {
        let l = self.local_of[x];
        (l != u32::MAX).then(|| self.even_table.classes.class_of(l as usize))
    }

    fn even_z_class(&self) -> usize {
        self.even_class_of(self.pin.z()).expect("z lies in W̃′")
    }

    /// Genuine irreducibles of `W̃′`.
    pub fn genuine_even(&self) -> Vec<usize> {
        self.even_table.genuine_irreducibles(self.even_z_class())
    }

    /// Genuine irreducibles of `W̃`.
    pub fn genuine_pin(&self) -> Vec<usize> {
        self.pin_table.genuine_irreducibles(self.pin.classes().class_of(self.pin.z()))
    }

    /// `χ_{S⁺} - χ_{S⁻}` on `W̃′` classes.
    pub fn spin_difference(&self) -> ClassFunction {
        self.spin_plus.iter().zip(&self.spin_minus).map(|(a, b)| a - b).collect()
    }

    /// Pullback along `W̃′ → W` of a class function on `W`.
    pub fn pullback_to_even(&self, f: &[Cyclotomic]) -> ClassFunction {
        chartab::restrict(f, &self.even_to_weyl)
    }

    /// Pullback along `W̃ → W`.
    pub fn pullback_to_pin(&self, f: &[Cyclotomic]) -> ClassFunction {
        let wc = self.pin.weyl().classes();
        self.pin.classes().reps.iter().map(|&x| f[wc.class_of(self.pin.project(x))].clone()).collect()
    }

    /// Restriction of a class function from `W̃` to `W̃′`.
    pub fn restrict_to_even(&self, f: &[Cyclotomic]) -> ClassFunction {
        chartab::restrict(f, &self.even_to_pin)
    }

    /// Trace of `W̃` on the full spin module `S` (even rank) or on `S⁺` (odd rank).
    pub fn spin_character_on_pin(&self) -> ClassFunction {
        self.pin.classes().reps.iter().map(|&x| spin::trace(&self.pin.spin_matrix(x))).collect()
    }

    /// `Ind_{W′}^{W}` of a class function on `W̃′` on which `z` acts trivially,
    /// returned as a class function on `W`.
    pub fn induce_even_to_weyl(&self, f: &[Cyclotomic]) -> ClassFunction {
        let classes = &self.even_table.classes;
        for c in 0..classes.len() {
            let zx = self.pin.mul(self.pin.z(), self.even_elements[classes.reps[c]]);
            assert_eq!(f[c], f[self.even_class_of(zx).unwrap()], "class function factors through W′");
        }
        let on_pin = chartab::induce(f, classes, &self.even_to_pin, self.pin.classes());
        let wc = self.pin.weyl().classes();
        (0..wc.len())
            .map(|c| {
                let x = self.pin.lift(wc.reps[c]);
                on_pin[self.pin.classes().class_of(x)].clone()
            })
            .collect()
    }

    /// `i(δ)` for a class function `δ` on `W`, decomposed in `Irr(W̃′)`.
    pub fn index_of_class_function(&self, f: &[Cyclotomic]) -> Result<VirtualCharacter, CharError> {
        let prod = chartab::product(&self.pullback_to_even(f), &self.spin_difference());
        self.even_table.decompose(&prod)
    }

    pub fn dirac_index(&self, delta: &VirtualCharacter) -> Result<VirtualCharacter, CharError> {
        self.index_of_class_function(&self.weyl_table.class_function(delta))
    }

    /// `i(δ) = δ̃⁺ - δ̃⁻` with every invariant of the split checked.
    pub fn split_index(&self, delta: &VirtualCharacter) -> Result<IndexSplit, SplitError> {
        let index = self.dirac_index(delta)?;
        if index.is_zero() {
            return Err(SplitError::Vanishing);
        }
        let delta_plus = index.positive_part();
        let delta_minus = index.negative_part();
        let norm = self.elliptic.norm(delta);
        if delta_plus.permute(&self.sg) != delta_minus {
            return Err(SplitError::Invariant("Sg(δ̃⁺) ≠ δ̃⁻".into()));
        }
        if delta_plus.dot(&delta_minus) != 0 {
            return Err(SplitError::Invariant("⟨δ̃⁺, δ̃⁻⟩ ≠ 0".into()));
        }
        for part in [&delta_plus, &delta_minus] {
            if int(part.dot(part)) != norm {
                return Err(SplitError::Invariant(format!("|δ̃±|² = {} but ⟨δ, δ⟩ = {}", part.dot(part), norm)));
            }
        }
        Ok(IndexSplit { source: delta.clone(), delta_plus, delta_minus, norm })
    }

    /// Constituents of `i(χ)` over `χ ∈ Irr(W)`.
    pub fn irr0_gen(&self) -> Vec<usize> {
        let mut seen = vec![false; self.even_table.len()];
        for i in 0..self.weyl_table.len() {
            let idx = self.dirac_index(&VirtualCharacter::unit(self.weyl_table.len(), i)).expect("index is integral");
            for j in idx.support() {
                seen[j] = true;
            }
        }
        (0..seen.len()).filter(|&j| seen[j]).collect()
    }

    /// Coefficients of `Ω_W̃` grouped by `W̃` class and parameter monomial:
    /// `(1/4) Σ_{α,β>0, s_α(β)<0} |α∨||β∨| k_α k_β · z s̃_α s̃_β`.
    fn omega_terms(&self) -> BTreeMap<(usize, Vec<u32>), Cyclotomic> {
        let rs = self.root_system();
        let params = ParameterFunction::generic(rs);
        let nvars = params.num_orbits();
        let coroot_len: Vec<Cyclotomic> = (0..rs.num_positive())
            .map(|a| Cyclotomic::sqrt_rational(&(int(4) / rs.norm(a))).expect("positive norm"))
            .collect();
        let quarter = crate::exactnum::rational::rat(1, 4);
        let mut terms: BTreeMap<(usize, Vec<u32>), Cyclotomic> = BTreeMap::new();
        for a in 0..rs.num_positive() {
            let sa = self.pin.root_lift(a);
            for b in 0..rs.num_positive() {
                if rs.is_positive(rs.reflect_root(a, b)) {
                    continue;
                }
                let x = self.pin.mul(self.pin.z(), self.pin.mul(sa, self.pin.root_lift(b)));
                let mut exps = vec![0u32; nvars];
                exps[params.orbit_of(a)] += 1;
                exps[params.orbit_of(b)] += 1;
                let coeff = (&coroot_len[a] * &coroot_len[b]).scale(&quarter);
                let entry = terms.entry((x, exps)).or_insert_with(Cyclotomic::zero);
                *entry = &*entry + &coeff;
            }
        }
        terms
    }

    fn casimir_with<F: Fn(usize) -> Cyclotomic>(&self, chi: F, degree: u64) -> Result<ParamPolynomial, EllipticError> {
        let params = ParameterFunction::generic(self.root_system());
        let symbols = params.symbols().to_vec();
        let mut by_monomial: BTreeMap<Vec<u32>, Cyclotomic> = BTreeMap::new();
        for ((x, exps), c) in self.omega_terms() {
            let v = &chi(x) * &c;
            let e = by_monomial.entry(exps).or_insert_with(Cyclotomic::zero);
            *e = &*e + &v;
        }
        let mut out = ParamPolynomial::zero(&symbols);
        let inv_deg = Rational::new(1.into(), (degree as i64).into());
        for (exps, c) in by_monomial {
            let q = c.scale(&inv_deg).to_rational().ok_or_else(|| EllipticError::Irrational(c.to_string()))?;
            if !q.is_zero() {
                out = &out + &ParamPolynomial::monomial(&symbols, exps, q);
            }
        }
        Ok(out)
    }

    /// Scalar of `Ω_W̃` on the `W̃`-irreducible `i`.
    pub fn casimir_on_pin(&self, i: usize) -> Result<ParamPolynomial, EllipticError> {
        let chi = self.pin_table.character(i);
        let classes = self.pin.classes();
        self.casimir_with(|x| chi[classes.class_of(x)].clone(), self.pin_table.degrees[i])
    }

    /// Scalar of `Ω_W̃` on the `W̃′`-irreducible `i`; `Ω_W̃` lies in the even part.
    pub fn casimir_on_even(&self, i: usize) -> Result<ParamPolynomial, EllipticError> {
        let chi = self.even_table.character(i);
        self.casimir_with(
            |x| chi[self.even_class_of(x).expect("Ω is supported on W̃′")].clone(),
            self.even_table.degrees[i],
        )
    }

    /// Lattice vectors of norm one, one of each sign pair, lifted to `Z^Irr(W)`.
    pub fn unit_vectors(&self) -> Vec<VirtualCharacter> {
        super::short_vectors(&self.elliptic.quotient_gram, &int(1))
            .into_iter()
            .filter(|v| v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
            .map(|v| self.elliptic.lift(&v))
            .collect()
    }
}
