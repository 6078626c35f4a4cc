//! Polynomials with rational coefficients in the Hecke parameter symbols.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use super::NumError;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamPolynomial {
    variables: Vec<String>,
    #[serde(with = "term_serde")]
    terms: BTreeMap<Vec<u32>, Rational>,
}

mod term_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(terms: &BTreeMap<Vec<u32>, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(Vec<u32>, String)> =
            terms.iter().map(|(e, c)| (e.clone(), format_rational(c))).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<u32>, Rational>, D::Error> {
        let v: Vec<(Vec<u32>, String)> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|(e, c)| parse_rational(&c).map(|c| (e, c)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl ParamPolynomial {
    pub fn zero(variables: &[String]) -> Self {
        ParamPolynomial { variables: variables.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(variables: &[String], c: Rational) -> Self {
        let mut p = Self::zero(variables);
        if !c.is_zero() {
            p.terms.insert(vec![0; variables.len()], c);
        }
        p
    }

    /// The monomial `c * prod x_i^e_i`.
    pub fn monomial(variables: &[String], exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), variables.len());
        let mut p = Self::zero(variables);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(variables: &[String], i: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[i] = 1;
        Self::monomial(variables, e, Rational::one())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(&self.variables);
        if c.is_zero() {
            return p;
        }
        p.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        p
    }

    /// Exact evaluation at a point given by symbol name.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational, NumError> {
        let values: Vec<Option<&Rational>> = self.variables.iter().map(|v| point.get(v)).collect();
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = values[i].ok_or_else(|| NumError::MissingVariable(self.variables[i].clone()))?;
                for _ in 0..k {
                    t *= v;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluation at a point given positionally.
    pub fn eval_at(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.variables.len());
        let point = self.variables.iter().cloned().zip(values.iter().cloned()).collect();
        self.eval(&point).expect("all variables assigned")
    }

    /// Substitutes `x_i -> c * x_i` for every variable.
    pub fn rescale_variables(&self, c: &Rational) -> Self {
        let mut p = Self::zero(&self.variables);
        for (e, v) in &self.terms {
            let d: u32 = e.iter().sum();
            let mut f = v.clone();
            for _ in 0..d {
                f *= c;
            }
            if !f.is_zero() {
                p.terms.insert(e.clone(), f);
            }
        }
        p
    }

    /// Parses a linear form such as `-k + k'`, `1/2*k - 1/2*k'` or `3k-k'`, the inverse of
    /// `Display` on polynomials of degree at most one.
    pub fn parse_linear(variables: &[String], s: &str) -> Result<Self, NumError> {
        let bad = || NumError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero(variables);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('-') || rest.starts_with('+') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            // longest matching variable suffix, so `k'` is not read as `k` followed by `'`
            let var = (0..variables.len())
                .filter(|&i| term.ends_with(variables[i].as_str()))
                .max_by_key(|&i| variables[i].len());
            let (coeff, exps) = match var {
                Some(i) => {
                    let c = term[..term.len() - variables[i].len()].trim_end_matches('*');
                    let c = if c.is_empty() { Rational::one() } else { parse_rational(c)? };
                    let mut e = vec![0; variables.len()];
                    e[i] = 1;
                    (c, e)
                }
                None if term.is_empty() => return Err(bad()),
                None => (parse_rational(term)?, vec![0; variables.len()]),
            };
            let coeff = if negative { -coeff } else { coeff };
            out = &out + &Self::monomial(variables, exps, coeff);
        }
        Ok(out)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.variables, other.variables, "parameter polynomials over different symbols");
    }
}

impl<'a> Add<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &'a ParamPolynomial) -> ParamPolynomial {
        self.check_vars(rhs);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let t = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *t += c;
        }
        terms.retain(|_, c| !c.is_zero());
        ParamPolynomial { variables: self.variables.clone(), terms }
    }
}

impl<'a> Sub<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &'a ParamPolynomial) -> ParamPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &'a ParamPolynomial) -> ParamPolynomial {
        self.check_vars(rhs);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let t = terms.entry(e).or_insert_with(Rational::zero);
                *t += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ParamPolynomial { variables: self.variables.clone(), terms }
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then lexicographic
        let mut items: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (idx, (e, c)) in items.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.variables[i].clone() } else { format!("{}^{}", self.variables[i], k) })
                .collect();
            let mag = c.abs();
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", format_rational(&mag), mono.join("*"))
            };
            match (idx == 0, c.is_negative()) {
                (true, false) => write!(f, "{}", body)?,
                (true, true) => write!(f, "-{}", body)?,
                (false, false) => write!(f, " + {}", body)?,
                (false, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
