use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::RootError;
use crate::exactnum::linalg::QMatrix;
use crate::exactnum::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn rank_ok(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 3,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    factors: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn new(factors: Vec<(Family, usize)>) -> Result<CartanType, RootError> {
        if factors.is_empty() {
            return Err(RootError::InvalidType(String::new()));
        }
        for &(f, n) in &factors {
            if !f.rank_ok(n) {
                return Err(RootError::InvalidRank { family: f.letter(), rank: n });
            }
        }
        Ok(CartanType { factors })
    }

    pub fn simple(family: Family, rank: usize) -> Result<CartanType, RootError> {
        CartanType::new(vec![(family, rank)])
    }

    pub fn factors(&self) -> &[(Family, usize)] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_simply_laced(&self) -> bool {
        self.factors.iter().all(|(f, _)| matches!(f, Family::A | Family::D | Family::E))
    }

    pub fn root_count(&self) -> usize {
        self.factors
            .iter()
            .map(|&(f, n)| match f {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
                Family::E => [72, 126, 240][n - 6],
                Family::F => 48,
                Family::G => 12,
            })
            .sum()
    }

    /// Degrees of the basic invariants, concatenated over factors.
    pub fn degrees(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(f, n) in &self.factors {
            let n64 = n as u64;
            match f {
                Family::A => out.extend(2..=n64 + 1),
                Family::B | Family::C => out.extend((1..=n64).map(|i| 2 * i)),
                Family::D => {
                    out.extend((1..n64).map(|i| 2 * i));
                    out.push(n64);
                }
                Family::E => out.extend_from_slice(match n {
                    6 => &[2, 5, 6, 8, 9, 12][..],
                    7 => &[2, 6, 8, 10, 12, 14, 18][..],
                    _ => &[2, 8, 12, 14, 18, 20, 24, 30][..],
                }),
                Family::F => out.extend_from_slice(&[2, 6, 8, 12]),
                Family::G => out.extend_from_slice(&[2, 6]),
            }
        }
        out
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Invariant form on the simple roots (long roots of squared length 2) and the
    /// component index of every simple root.
    pub(crate) fn gram(&self) -> (QMatrix, Vec<usize>) {
        let n = self.rank();
        let mut g = vec![vec![Rational::zero(); n]; n];
        let mut comp = Vec::with_capacity(n);
        let mut off = 0;
        for (c, &(f, r)) in self.factors.iter().enumerate() {
            let (lengths, edges) = diagram(f, r);
            for (i, l) in lengths.iter().enumerate() {
                g[off + i][off + i] = l.clone();
                comp.push(c);
            }
            for (i, j) in edges {
                let (li, lj) = (&lengths[i], &lengths[j]);
                // single bond between equal lengths, otherwise the multiple bond to a long root
                let v = if li == lj { -(li / int(2)) } else { int(-1) };
                g[off + i][off + j] = v.clone();
                g[off + j][off + i] = v;
            }
            off += r;
        }
        (g, comp)
    }
}

/// Squared lengths and edges of the Dynkin diagram, Bourbaki numbering (0-based).
fn diagram(f: Family, n: usize) -> (Vec<Rational>, Vec<(usize, usize)>) {
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match f {
        Family::A => (vec![int(2); n], chain(n)),
        Family::B => {
            let mut l = vec![int(2); n];
            l[n - 1] = int(1);
            (l, chain(n))
        }
        Family::C => {
            let mut l = vec![int(1); n];
            l[n - 1] = int(2);
            (l, chain(n))
        }
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (vec![int(2); n], e)
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            e.extend((3..n - 1).map(|i| (i, i + 1)));
            (vec![int(2); n], e)
        }
        Family::F => (vec![int(2), int(2), int(1), int(1)], chain(4)),
        Family::G => (vec![rat(2, 3), int(2)], chain(2)),
    }
}

impl FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootError::InvalidType(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let fam = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            factors.push((fam, rank));
        }
        CartanType::new(factors)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(fam, n)| format!("{}{}", fam.letter(), n)).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let t: CartanType = "A2xA1".parse().unwrap();
        assert_eq!(t.factors(), &[(Family::A, 2), (Family::A, 1)]);
        assert_eq!(t.to_string(), "A2xA1");
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("Q3".parse::<CartanType>().is_err());
        assert_eq!("F4".parse::<CartanType>().unwrap().weyl_order(), 1152);
    }
}
