use std::collections::HashMap;

use super::RootSystem;
use crate::exactnum::{ParamPolynomial, Rational};

/// A `W`-invariant parameter function `k`: one symbol per `W`-orbit of roots.
///
/// Orbits are (component, root length). Symbols are `k` for long roots and `k'`
/// for short ones, suffixed by the component number for reducible types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterFunction {
    orbit_of: Vec<usize>,
    symbols: Vec<String>,
    values: Option<Vec<Rational>>,
}

impl ParameterFunction {
    pub fn generic(rs: &RootSystem) -> ParameterFunction {
        let ncomp = rs.cartan_type().factors().len();
        let mut keys: Vec<(usize, bool)> = Vec::new();
        let orbit_key: Vec<(usize, bool)> =
            (0..rs.num_roots()).map(|i| (rs.component_of_root(i), !rs.is_long(i))).collect();
        for k in &orbit_key {
            if !keys.contains(k) {
                keys.push(*k);
            }
        }
        keys.sort();
        let symbols = keys
            .iter()
            .map(|&(c, short)| {
                let base = if short { "k'" } else { "k" };
                if ncomp == 1 {
                    base.to_string()
                } else {
                    format!("{}_{}", base, c + 1)
                }
            })
            .collect();
        let orbit_of = orbit_key.iter().map(|k| keys.iter().position(|x| x == k).unwrap()).collect();
        ParameterFunction { orbit_of, symbols, values: None }
    }

    /// The same orbits with every symbol specialized.
    pub fn specialized(rs: &RootSystem, values: &HashMap<String, Rational>) -> Result<ParameterFunction, String> {
        let mut p = Self::generic(rs);
        let vals = p
            .symbols
            .iter()
            .map(|s| values.get(s).cloned().ok_or_else(|| s.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        p.values = Some(vals);
        Ok(p)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn num_orbits(&self) -> usize {
        self.symbols.len()
    }

    pub fn orbit_of(&self, root: usize) -> usize {
        self.orbit_of[root]
    }

    /// `k_α` as a polynomial (a single symbol).
    pub fn symbolic(&self, root: usize) -> ParamPolynomial {
        ParamPolynomial::var(&self.symbols, self.orbit_of[root])
    }

    pub fn value(&self, root: usize) -> Option<&Rational> {
        self.values.as_ref().map(|v| &v[self.orbit_of[root]])
    }

    pub fn values(&self) -> Option<&[Rational]> {
        self.values.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn orbits_follow_lengths() {
        let rs = RootSystem::parse("B2").unwrap();
        let k = ParameterFunction::generic(&rs);
        assert_eq!(k.symbols(), &["k".to_string(), "k'".to_string()]);
        for i in 0..rs.num_roots() {
            assert_eq!(k.orbit_of(i), if rs.is_long(i) { 0 } else { 1 });
        }
        let a = ParameterFunction::generic(&RootSystem::parse("A3").unwrap());
        assert_eq!(a.num_orbits(), 1);
        let vals: HashMap<String, Rational> = [("k".to_string(), int(1)), ("k'".to_string(), int(2))].into();
        let s = ParameterFunction::specialized(&rs, &vals).unwrap();
        assert_eq!(s.value(1), Some(&int(2)));
    }
}
