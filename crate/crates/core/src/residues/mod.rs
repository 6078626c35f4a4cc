//! Linear residual points `Res^lin(R)`, nilpotent partition data for classical types, and
//! elliptic pairings of component groups.
//!
//! A point `ξ` is stored by its coweight coordinates `α_i(ξ)`, one rational vector per parameter
//! symbol, so `ξ = Σ_s k_s Σ_i c_{s,i} ω_i`. Root values are then integer combinations of the
//! coordinates and the simple reflections act by `c_j ↦ c_j - ⟨α_j, α_i∨⟩ c_i`.

pub mod component;
pub mod partitions;

pub use component::{component_elliptic, ComponentGroupAction};
pub use partitions::{classify_partitions, PartitionDatum, PartitionFamily};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::linalg::{self, QMatrix};
use crate::exactnum::rational::int;
use crate::exactnum::{ParamPolynomial, Rational};
use crate::rootsys::{ParameterFunction, RootSystem};

/// Upper limit on `C(|R+|, rank) · 2^rank` candidate systems.
pub const ENUMERATION_LIMIT: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{0} parameter symbols; at most 2 are supported")]
    TooManySymbols(usize),
    #[error("{0} candidate systems exceed the enumeration limit")]
    TooLarge(u128),
}

/// `ξ(k) = Σ_s k_s Σ_i coweight[s][i] ω_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearPoint {
    pub symbols: Vec<String>,
    pub coweight: Vec<Vec<Rational>>,
}

impl LinearPoint {
    pub fn zero(symbols: &[String], rank: usize) -> LinearPoint {
        LinearPoint { symbols: symbols.to_vec(), coweight: vec![vec![Rational::zero(); rank]; symbols.len()] }
    }

    /// Inverse of `coordinates`; `None` if some coordinate is not a linear form in `symbols`.
    pub fn from_coordinates(symbols: &[String], coords: &[ParamPolynomial]) -> Option<LinearPoint> {
        let mut xi = LinearPoint::zero(symbols, coords.len());
        for (i, p) in coords.iter().enumerate() {
            if p.variables() != symbols || p.degree() > 1 || !p.coefficient(&vec![0; symbols.len()]).is_zero() {
                return None;
            }
            for s in 0..symbols.len() {
                let mut e = vec![0; symbols.len()];
                e[s] = 1;
                xi.coweight[s][i] = p.coefficient(&e);
            }
        }
        Some(xi)
    }

    pub fn rank(&self) -> usize {
        self.coweight.first().map_or(0, |c| c.len())
    }

    /// `α_i(ξ)` as a linear polynomial.
    pub fn coordinate(&self, i: usize) -> ParamPolynomial {
        (0..self.symbols.len()).fold(ParamPolynomial::zero(&self.symbols), |acc, s| {
            &acc + &ParamPolynomial::var(&self.symbols, s).scale(&self.coweight[s][i])
        })
    }

    pub fn coordinates(&self) -> Vec<ParamPolynomial> {
        (0..self.rank()).map(|i| self.coordinate(i)).collect()
    }

    /// `α(ξ)` for a root given in simple-root coordinates.
    pub fn root_value(&self, root: &[i64]) -> Vec<Rational> {
        self.coweight.iter().map(|c| c.iter().zip(root).map(|(x, &n)| x * int(n)).sum()).collect()
    }

    /// Coweight coordinates at a parameter point.
    pub fn eval(&self, values: &[Rational]) -> Vec<Rational> {
        (0..self.rank()).map(|i| (0..self.symbols.len()).map(|s| &self.coweight[s][i] * &values[s]).sum()).collect()
    }

    /// Relabels simple roots: coordinate `i` moves to position `perm[i]`.
    pub fn permute_simple(&self, perm: &[usize]) -> LinearPoint {
        let coweight = self
            .coweight
            .iter()
            .map(|c| {
                let mut out = vec![Rational::zero(); c.len()];
                for (i, x) in c.iter().enumerate() {
                    out[perm[i]] = x.clone();
                }
                out
            })
            .collect();
        LinearPoint { symbols: self.symbols.clone(), coweight }
    }

    /// Image under the simple reflection `s_i`.
    pub fn reflect(&self, rs: &RootSystem, i: usize) -> LinearPoint {
        let cartan = cartan_row(rs, i);
        let coweight = self
            .coweight
            .iter()
            .map(|c| (0..c.len()).map(|j| &c[j] - &c[i] * int(cartan[j])).collect())
            .collect();
        LinearPoint { symbols: self.symbols.clone(), coweight }
    }
}

impl fmt::Display for LinearPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coordinates()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})ω{}", p, i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `⟨α_j, α_i∨⟩` for all `j`.
fn cartan_row(rs: &RootSystem, i: usize) -> Vec<i64> {
    let g = rs.gram();
    (0..rs.rank())
        .map(|j| {
            let v = int(2) * &g[i][j] / &g[i][i];
            v.to_integer().to_i64().expect("integral Cartan entry")
        })
        .collect()
}

/// `⟨ξ, ξ⟩` as a quadratic polynomial, using `⟨ω_i, ω_j⟩ = (G^{-1})_{ij}`.
pub fn reslin_norm(rs: &RootSystem, xi: &LinearPoint) -> ParamPolynomial {
    let ginv = linalg::inverse(rs.gram()).expect("nondegenerate form");
    let ns = xi.symbols.len();
    let mut out = ParamPolynomial::zero(&xi.symbols);
    for s in 0..ns {
        for t in 0..ns {
            let c = linalg::bilinear(&ginv, &xi.coweight[s], &xi.coweight[t]);
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; ns];
            e[s] += 1;
            e[t] += 1;
            out = &out + &ParamPolynomial::monomial(&xi.symbols, e, c);
        }
    }
    out
}

/// Counts `(#{α: α(ξ) = k_α}, #{α: α(ξ) = 0})` over all roots, identically in the symbols
/// when `values` is `None` and at the given parameter point otherwise.
pub fn balance_counts(rs: &RootSystem, params: &ParameterFunction, xi: &LinearPoint, values: Option<&[Rational]>) -> (usize, usize) {
    let (mut ones, mut zeros) = (0, 0);
    for a in 0..rs.num_roots() {
        let v = xi.root_value(rs.root(a));
        let orbit = params.orbit_of(a);
        match values {
            None => {
                if v.iter().all(|x| x.is_zero()) {
                    zeros += 1;
                } else if v.iter().enumerate().all(|(s, x)| *x == int(i64::from(s == orbit))) {
                    ones += 1;
                }
            }
            Some(k) => {
                let at: Rational = v.iter().zip(k).map(|(x, y)| x * y).sum();
                if at.is_zero() {
                    zeros += 1;
                } else if at == k[orbit] {
                    ones += 1;
                }
            }
        }
    }
    (ones, zeros)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResLinOrbit {
    pub representative: LinearPoint,
    pub size: usize,
    pub norm: ParamPolynomial,
}

#[derive(Debug, Clone)]
pub struct ResLinSet {
    pub symbols: Vec<String>,
    pub orbits: Vec<ResLinOrbit>,
    members: HashMap<LinearPoint, usize>,
}

impl ResLinSet {
    /// Orbit containing `xi`, if `xi` is a linear residual point.
    pub fn orbit_of(&self, xi: &LinearPoint) -> Option<usize> {
        self.members.get(xi).copied()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (&LinearPoint, usize)> {
        self.members.iter().map(|(p, &o)| (p, o))
    }
}

/// Integer form of a candidate: numerators per symbol over a common positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
struct IntPoint {
    num: Vec<Vec<i64>>,
    den: i64,
}

impl IntPoint {
    fn normalized(mut self) -> IntPoint {
        let g = self.num.iter().flatten().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.num.iter_mut().flatten().for_each(|x| *x /= g);
            self.den /= g;
        }
        self
    }

    fn to_point(&self, symbols: &[String]) -> LinearPoint {
        let coweight =
            self.num.iter().map(|c| c.iter().map(|&x| Rational::new(x.into(), self.den.into())).collect()).collect();
        LinearPoint { symbols: symbols.to_vec(), coweight }
    }

    fn root_value(&self, root: &[i64]) -> Vec<i64> {
        self.num.iter().map(|c| c.iter().zip(root).map(|(x, n)| x * n).sum()).collect()
    }

    fn reflect(&self, cartan: &[i64], i: usize) -> IntPoint {
        let num = self.num.iter().map(|c| (0..c.len()).map(|j| c[j] - c[i] * cartan[j]).collect()).collect();
        IntPoint { num, den: self.den }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// All `W`-orbits of linear residual points.
pub fn enumerate_reslin(rs: &RootSystem, params: &ParameterFunction) -> Result<ResLinSet, ResidueError> {
    let symbols = params.symbols().to_vec();
    let ns = symbols.len();
    if ns > 2 {
        return Err(ResidueError::TooManySymbols(ns));
    }
    let n = rs.rank();
    let np = rs.num_positive();
    let work = binomial(np as u128, n as u128) << n;
    if work > ENUMERATION_LIMIT {
        return Err(ResidueError::TooLarge(work));
    }
    let mut candidates: HashSet<IntPoint> = HashSet::new();
    for subset in subsets(np, n) {
        let m: QMatrix = subset.iter().map(|&a| rs.root(a).iter().map(|&x| int(x)).collect()).collect();
        let Some(inv) = linalg::inverse(&m) else { continue };
        let den = inv.iter().flatten().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let scaled: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| row.iter().map(|q| (q * Rational::from(den.clone())).to_integer().to_i64().unwrap()).collect())
            .collect();
        let den = den.to_i64().unwrap();
        for signs in 0u32..(1 << n) {
            let num: Vec<Vec<i64>> = (0..ns)
                .map(|s| {
                    (0..n)
                        .map(|r| {
                            subset
                                .iter()
                                .enumerate()
                                .filter(|(_, &a)| params.orbit_of(a) == s)
                                .map(|(i, _)| if signs & (1 << i) != 0 { -scaled[r][i] } else { scaled[r][i] })
                                .sum()
                        })
                        .collect()
                })
                .collect();
            candidates.insert(IntPoint { num, den }.normalized());
        }
    }
    let roots: Vec<&[i64]> = (0..np).map(|a| rs.root(a)).collect();
    let mut survivors: Vec<IntPoint> = candidates
        .into_iter()
        .filter(|p| {
            let (mut ones, mut zeros) = (0, 0);
            for (a, root) in roots.iter().enumerate() {
                let v = p.root_value(root);
                let o = params.orbit_of(a);
                // positive roots only: a zero counts for both ±α, and at most one of ±α takes k_α
                if v.iter().all(|&x| x == 0) {
                    zeros += 2;
                } else if v.iter().enumerate().all(|(s, &x)| if s == o { x.abs() == p.den } else { x == 0 }) {
                    ones += 1;
                }
            }
            ones == zeros + n
        })
        .collect();
    survivors.sort_by(|a, b| (a.den, &a.num).cmp(&(b.den, &b.num)));
    let cartan: Vec<Vec<i64>> = (0..n).map(|i| cartan_row(rs, i)).collect();
    let reference = reference_values(params);
    let mut members: HashMap<LinearPoint, usize> = HashMap::new();
    let mut seen: HashSet<IntPoint> = HashSet::new();
    let mut orbits = Vec::new();
    for p in survivors {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = vec![p.clone()];
        seen.insert(p.clone());
        let mut queue = VecDeque::from([p]);
        while let Some(q) = queue.pop_front() {
            for (i, row) in cartan.iter().enumerate() {
                let r = q.reflect(row, i);
                if seen.insert(r.clone()) {
                    orbit.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
        let points: Vec<LinearPoint> = orbit.iter().map(|q| q.to_point(&symbols)).collect();
        let representative = canonical(&points, &reference);
        let idx = orbits.len();
        for pt in &points {
            members.insert(pt.clone(), idx);
        }
        orbits.push(ResLinOrbit { norm: reslin_norm(rs, &representative), size: points.len(), representative });
    }
    orbits.sort_by(|a, b| (a.size, &a.representative).cmp(&(b.size, &b.representative)));
    let order: HashMap<LinearPoint, usize> =
        orbits.iter().enumerate().map(|(i, o)| (o.representative.clone(), i)).collect();
    let remap: HashMap<usize, usize> = members
        .iter()
        .filter_map(|(p, &old)| order.get(p).map(|&new| (old, new)))
        .collect();
    let members = members.into_iter().map(|(p, old)| (p, remap[&old])).collect();
    Ok(ResLinSet { symbols, orbits, members })
}

/// Generic positive test values: long roots 1, short roots 37/23.
fn reference_values(params: &ParameterFunction) -> Vec<Rational> {
    params
        .symbols()
        .iter()
        .map(|s| if s.starts_with("k'") { Rational::new(37.into(), 23.into()) } else { Rational::one() })
        .collect()
}

/// The orbit member dominant at the reference parameters, least in the derived order on ties.
fn canonical(points: &[LinearPoint], reference: &[Rational]) -> LinearPoint {
    points
        .iter()
        .filter(|p| p.eval(reference).iter().all(|c| !c.is_negative()))
        .min()
        .cloned()
        .expect("every orbit meets the dominant chamber")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Coweight coordinates as display strings, one polynomial per simple root.
pub fn format_coordinates(xi: &LinearPoint) -> Vec<String> {
    xi.coordinates().iter().map(|p| p.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn reslin(t: &str) -> (RootSystem, ParameterFunction, ResLinSet) {
        let rs = RootSystem::parse(t).unwrap();
        let p = ParameterFunction::generic(&rs);
        let set = enumerate_reslin(&rs, &p).unwrap();
        (rs, p, set)
    }

    #[test]
    fn a1_single_orbit() {
        let (rs, _, set) = reslin("A1");
        assert_eq!(set.len(), 1);
        let o = &set.orbits[0];
        assert_eq!(o.size, 2);
        assert_eq!(o.representative.coweight, vec![vec![int(1)]]);
        assert_eq!(o.norm, ParamPolynomial::monomial(&["k".to_string()], vec![2], rat(1, 2)));
        let zero = LinearPoint::zero(&["k".to_string()], 1);
        assert!(reslin_norm(&rs, &zero).is_zero());
    }

    #[test]
    fn type_a_is_principal_only() {
        for t in ["A2", "A3", "A4"] {
            let (rs, _, set) = reslin(t);
            assert_eq!(set.len(), 1, "{t}");
            // ρ∨: every simple root takes the value k
            assert!(set.orbits[0].representative.coweight[0].iter().all(|c| *c == int(1)));
            assert_eq!(set.orbits[0].size as u64, rs.cartan_type().weyl_order());
        }
    }

    #[test]
    fn g2_three_orbits_with_distinct_norms() {
        let (rs, p, set) = reslin("G2");
        assert_eq!(set.len(), 3);
        let norms: HashSet<_> = set.orbits.iter().map(|o| o.norm.clone()).collect();
        assert_eq!(norms.len(), 3);
        for o in &set.orbits {
            let (ones, zeros) = balance_counts(&rs, &p, &o.representative, None);
            assert_eq!(ones, zeros + 2);
        }
    }

    #[test]
    fn orbits_are_w_stable() {
        let (rs, _, set) = reslin("B3");
        for (pt, o) in set.points() {
            for i in 0..rs.rank() {
                assert_eq!(set.orbit_of(&pt.reflect(&rs, i)), Some(o));
            }
        }
    }
}
