//! Exact elements of cyclotomic fields.
//!
//! A value is stored at its minimal conductor `n` (never `2 mod 4`, since
//! `Q(E(2m)) = Q(E(m))` for odd `m`) as a sparse combination of powers of
//! `E(n) = exp(2 pi i / n)` drawn from the Zumbroich basis of `Q(E(n))`.
//!
//! The Zumbroich basis is the tensor product over prime powers `p^v || n` of
//! the sets `{E(p^v)^j : p^(v-1) <= j < p^v}` (odd `p`) and
//! `{E(2^v)^j : 0 <= j < 2^(v-1)}` (`p = 2`), where `E(n)^k` is split into its
//! prime-power parts by the Chinese remainder theorem. Because both the basis
//! and the conductor are fixed, two equal values always have identical
//! representations and equality is structural.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, square_free_split, to_f64, Rational};
use super::NumError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, Rational>,
}

pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (a, m) = (a as i128, m as i128);
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m) as u64
}

/// CRT splitting of exponents of `E(n)` along one prime power `q = p^v`.
struct PrimeSplit {
    n: u64,
    q: u64,
    m: u64,
    m_inv: u64,
    q_inv: u64,
}

impl PrimeSplit {
    fn new(n: u64, p: u64, v: u32) -> Self {
        let q = p.pow(v);
        let m = n / q;
        PrimeSplit { n, q, m, m_inv: inv_mod(m % q, q), q_inv: inv_mod(q % m.max(1), m) }
    }

    fn split(&self, k: u64) -> (u64, u64) {
        let kp = ((k as u128 * self.m_inv as u128) % self.q as u128) as u64;
        let kr = if self.m == 1 { 0 } else { ((k as u128 * self.q_inv as u128) % self.m as u128) as u64 };
        (kp, kr)
    }

    fn join(&self, kp: u64, kr: u64) -> u64 {
        ((kp as u128 * self.m as u128 + kr as u128 * self.q as u128) % self.n as u128) as u64
    }
}

fn accumulate(map: &mut HashMap<u64, Rational>, k: u64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(k).or_insert_with(Rational::zero);
    *entry += c;
}

/// Rewrites arbitrary exponents of `E(n)` into the Zumbroich basis. `n` must not be `2 mod 4`.
fn zumbroich(n: u64, mut terms: HashMap<u64, Rational>) -> HashMap<u64, Rational> {
    for (p, v) in factor_u64(n) {
        let split = PrimeSplit::new(n, p, v);
        let step = p.pow(v - 1);
        let mut next = HashMap::with_capacity(terms.len());
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let (kp, kr) = split.split(k);
            if p == 2 {
                if kp < step {
                    accumulate(&mut next, k, c);
                } else {
                    accumulate(&mut next, split.join(kp - step, kr), -c);
                }
            } else if kp >= step {
                accumulate(&mut next, k, c);
            } else {
                for b in 1..p {
                    accumulate(&mut next, split.join(kp + b * step, kr), -c.clone());
                }
            }
        }
        terms = next;
    }
    terms.retain(|_, c| !c.is_zero());
    terms
}

/// Lowers the conductor of a Zumbroich-basis representation as far as possible.
fn reduce_conductor(mut n: u64, mut terms: HashMap<u64, Rational>) -> (u64, HashMap<u64, Rational>) {
    'outer: loop {
        if terms.is_empty() {
            return (1, terms);
        }
        for (p, v) in factor_u64(n) {
            let split = PrimeSplit::new(n, p, v);
            if v >= 2 {
                if terms.keys().all(|&k| split.split(k).0.is_multiple_of(p)) {
                    let (n2, sub) = if p == 2 && v == 2 {
                        let n2 = n / 4;
                        (n2, None)
                    } else {
                        let n2 = n / p;
                        (n2, Some(PrimeSplit::new(n2, p, v - 1)))
                    };
                    let mut next = HashMap::with_capacity(terms.len());
                    for (k, c) in terms {
                        let (kp, kr) = split.split(k);
                        let k2 = match &sub {
                            Some(s) => s.join(kp / p, kr),
                            None => kr,
                        };
                        next.insert(k2, c);
                    }
                    n = n2;
                    terms = next;
                    continue 'outer;
                }
            } else {
                let mut groups: BTreeMap<u64, Vec<&Rational>> = BTreeMap::new();
                for (&k, c) in &terms {
                    let (_, kr) = split.split(k);
                    groups.entry(kr).or_default().push(c);
                }
                let reducible = groups
                    .values()
                    .all(|cs| cs.len() as u64 == p - 1 && cs.iter().all(|c| *c == cs[0]));
                if reducible {
                    let next: HashMap<u64, Rational> =
                        groups.into_iter().map(|(kr, cs)| (kr, -cs[0].clone())).collect();
                    n /= p;
                    terms = next;
                    continue 'outer;
                }
            }
        }
        return (n, terms);
    }
}

impl Cyclotomic {
    /// Builds the canonical form of `sum c * E(n)^k` for arbitrary exponents.
    pub fn from_terms(n: u64, raw: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut terms: HashMap<u64, Rational> = HashMap::new();
        let mut n = n;
        if n % 4 == 2 {
            // E(2m)^k = (-1)^k E(m)^(k (m+1)/2) for odd m
            let m = n / 2;
            let half = m.div_ceil(2);
            for (k, c) in raw {
                let k = k % n;
                let c = if k % 2 == 1 { -c } else { c };
                accumulate(&mut terms, ((k as u128 * half as u128) % m as u128) as u64, c);
            }
            n = m;
        } else {
            for (k, c) in raw {
                accumulate(&mut terms, k % n, c);
            }
        }
        let terms = zumbroich(n, terms);
        let (n, terms) = reduce_conductor(n, terms);
        Cyclotomic { conductor: n, coeffs: terms.into_iter().collect() }
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `E(n)^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as u64;
        Self::from_terms(n, [(k, Rational::one())])
    }

    /// `E(4)`, the imaginary unit.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Basis exponents with their coefficients, in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|z| z.to_i64())
    }

    /// Image under the Galois automorphism `E(n) -> E(n)^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor;
        let a = a.rem_euclid(n as i64) as u64;
        Self::from_terms(n, self.coeffs.iter().map(|(k, c)| ((k * a) % n, c.clone())))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Double-precision embedding `E(n) -> exp(2 pi i / n)`. For display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let t = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            let c = to_f64(c);
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Nonnegative real square root of a nonnegative rational, via quadratic Gauss sums.
    /// The square-free part of `numerator * denominator` must not exceed [`MAX_SQRT_RADICAND`].
    pub fn sqrt_rational(q: &Rational) -> Result<Self, NumError> {
        if q.is_negative() {
            return Err(NumError::NegativeSqrt(format_rational(q)));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(a/b) = sqrt(a b) / b
        let a = q.numer().magnitude() * q.denom().magnitude();
        let (square, free) = square_free_split(&a);
        let mut out = Self::from_rational(Rational::new(
            BigInt::from(square),
            q.denom().clone(),
        ));
        let free = free.to_u64().filter(|&f| f <= MAX_SQRT_RADICAND).ok_or_else(|| NumError::Overflow(free.to_string()))?;
        for (p, _) in factor_u64(free) {
            out = &out * &sqrt_prime(p);
        }
        Ok(out)
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

/// The Gauss sums behind `sqrt_rational` have conductor up to four times the radicand.
pub const MAX_SQRT_RADICAND: u64 = 1 << 16;

fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::root_of_unity(8, 1) - &Cyclotomic::root_of_unity(8, 3);
    }
    let gauss = Cyclotomic::from_terms(
        p,
        (1..p).map(|k| (k, Rational::from_integer(BigInt::from(legendre(k, p))))),
    );
    if p % 4 == 1 {
        gauss
    } else {
        // the Gauss sum is i sqrt(p)
        &gauss * &Cyclotomic::root_of_unity(4, 3)
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

fn combine(a: &Cyclotomic, b: &Cyclotomic, negate_b: bool) -> Cyclotomic {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    if a.conductor == b.conductor {
        let mut coeffs = a.coeffs.clone();
        for (k, c) in &b.coeffs {
            let e = coeffs.entry(*k).or_insert_with(Rational::zero);
            if negate_b {
                *e -= c;
            } else {
                *e += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        // same basis, but the sum may live in a smaller field
        let (n, terms) = reduce_conductor(a.conductor, coeffs.into_iter().collect());
        return Cyclotomic { conductor: n, coeffs: terms.into_iter().collect() };
    }
    let l = a.conductor.lcm(&b.conductor);
    let (fa, fb) = (l / a.conductor, l / b.conductor);
    let raw = a
        .coeffs
        .iter()
        .map(|(k, c)| (k * fa, c.clone()))
        .chain(b.coeffs.iter().map(|(k, c)| (k * fb, if negate_b { -c.clone() } else { c.clone() })));
    Cyclotomic::from_terms(l, raw)
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        combine(self, rhs, false)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        combine(&self, &rhs, false)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = combine(self, rhs, false);
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        combine(self, rhs, true)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        combine(&self, &rhs, true)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.conductor == 1 {
            return rhs.scale(&self.coeffs[&0]);
        }
        if rhs.conductor == 1 {
            return self.scale(&rhs.coeffs[&0]);
        }
        let l = self.conductor.lcm(&rhs.conductor);
        let (fa, fb) = (l / self.conductor, l / rhs.conductor);
        let mut raw: HashMap<u64, Rational> = HashMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                accumulate(&mut raw, (ka * fa + kb * fb) % l, ca * cb);
            }
        }
        Cyclotomic::from_terms(l, raw)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        // collect at a common conductor and normalize once
        let items: Vec<Cyclotomic> = iter.collect();
        let l = items.iter().fold(1u64, |l, c| l.lcm(&c.conductor));
        let raw = items.iter().flat_map(|c| {
            let f = l / c.conductor;
            c.coeffs.iter().map(move |(k, q)| (k * f, q.clone()))
        });
        Cyclotomic::from_terms(l, raw)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let negative = c.is_negative();
            let mag = c.abs();
            let root = match *k {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                k => format!("E({})^{}", self.conductor, k),
            };
            let body = if root.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                root
            } else {
                format!("{}*{}", format_rational(&mag), root)
            };
            match (first, negative) {
                (true, false) => write!(f, "{}", body)?,
                (true, true) => write!(f, "-{}", body)?,
                (false, false) => write!(f, " + {}", body)?,
                (false, true) => write!(f, " - {}", body)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_term(t: &str) -> Result<Cyclotomic, NumError> {
    let bad = || NumError::Parse(t.to_string());
    let t = t.trim();
    let (coeff, root) = match t.find("E(") {
        None => (t, None),
        Some(pos) => {
            let coeff = t[..pos].trim().trim_end_matches('*').trim();
            (coeff, Some(&t[pos..]))
        }
    };
    let c = if coeff.is_empty() { Rational::one() } else { parse_rational(coeff)? };
    let Some(root) = root else {
        return Ok(Cyclotomic::from_rational(c));
    };
    let close = root.find(')').ok_or_else(bad)?;
    let n: u64 = root[2..close].trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let rest = root[close + 1..].trim();
    let k: i64 = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?
    };
    Ok(Cyclotomic::root_of_unity(n, k).scale(&c))
}

impl std::str::FromStr for Cyclotomic {
    type Err = NumError;

    /// Parses sums of terms `c`, `E(n)`, `E(n)^k`, `c*E(n)^k` joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(NumError::Parse(s.to_string()));
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 && !current.trim().ends_with('^') && !current.trim().ends_with('/') => {
                    if !current.trim().is_empty() {
                        parts.push((negative, std::mem::take(&mut current)));
                    } else {
                        current.clear();
                    }
                    negative = ch == '-';
                }
                _ => current.push(ch),
            }
        }
        if current.trim().is_empty() {
            return Err(NumError::Parse(s.to_string()));
        }
        parts.push((negative, current));
        let mut terms = Vec::with_capacity(parts.len());
        for (neg, t) in parts {
            let v = parse_term(&t)?;
            terms.push(if neg { -v } else { v });
        }
        Ok(terms.into_iter().sum())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn e(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        assert_eq!(&e(4, 1) * &e(4, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn conj_of_cube_root() {
        assert_eq!(e(3, 1).conj(), e(3, 2));
    }

    #[test]
    fn sqrt_two_identity() {
        let s = &e(8, 1) - &e(8, 3);
        assert_eq!(&s * &s, Cyclotomic::from_int(2));
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [3u64, 4, 5, 6, 8, 9, 12, 15, 24] {
            let total: Cyclotomic = (0..n as i64).map(|k| e(n, k)).sum();
            assert!(total.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        // E(6) = -E(3)^2
        assert_eq!(e(6, 1), -e(3, 2));
        assert_eq!(e(6, 1).conductor(), 3);
        assert_eq!(e(12, 3), e(4, 1));
        assert_eq!(e(12, 3).conductor(), 4);
        let r = &e(5, 1) + &e(5, 4);
        assert_eq!(r.conductor(), 5);
        assert_eq!((&r - &r).conductor(), 1);
        // E(9)^3 lives in Q(E(3))
        assert_eq!(e(9, 3), e(3, 1));
    }

    #[test]
    fn sqrt_values() {
        assert_eq!(Cyclotomic::sqrt_rational(&int(2)).unwrap(), &e(8, 1) - &e(8, 3));
        assert!(Cyclotomic::sqrt_rational(&int(0)).unwrap().is_zero());
        for q in [int(3), int(5), int(6), rat(2, 3), rat(7, 12), int(9), int(28)] {
            let s = Cyclotomic::sqrt_rational(&q).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_rational(q.clone()));
            let (re, im) = s.to_complex();
            assert!(re > 0.0 && im.abs() < 1e-12);
            assert_eq!(s.conj(), s);
        }
        assert!(Cyclotomic::sqrt_rational(&int(-1)).is_err());
    }

    #[test]
    fn text_round_trip() {
        for v in [
            Cyclotomic::zero(),
            Cyclotomic::from_rational(rat(-3, 7)),
            &e(8, 1) - &e(8, 3),
            &e(3, 1).scale(&rat(2, 5)) + &Cyclotomic::from_int(1),
            -e(4, 1),
        ] {
            let s = v.to_string();
            assert_eq!(s.parse::<Cyclotomic>().unwrap(), v, "{s}");
        }
        assert_eq!("-E(4)".parse::<Cyclotomic>().unwrap(), -e(4, 1));
        assert_eq!("1/2 - 3/2*E(3)^2".parse::<Cyclotomic>().unwrap(),
            &Cyclotomic::from_rational(rat(1, 2)) - &e(3, 2).scale(&rat(3, 2)));
        assert!("E(0)".parse::<Cyclotomic>().is_err());
        assert!("".parse::<Cyclotomic>().is_err());
    }
}
