//! Finite groups with elements indexed `0..order`, conjugacy classes, and subgroup views.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub trait Group: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;

    fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut r = self.identity();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    fn element_order(&self, a: usize) -> u64 {
        let e = self.identity();
        let mut x = a;
        let mut n = 1;
        while x != e {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }
}

/// Conjugacy classes of a finite group. Class 0 contains the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
}

impl Classes {
    pub fn compute<G: Group + ?Sized>(g: &G) -> Classes {
        let n = g.order();
        let gens = g.generators();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let id = g.identity();
        let order_iter = std::iter::once(id).chain((0..n).filter(|&x| x != id));
        for x in order_iter {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            class_of[x] = c;
            let mut size = 1;
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &s in &gens {
                    let z = g.conjugate(y, s);
                    if class_of[z] == u32::MAX {
                        class_of[z] = c;
                        size += 1;
                        queue.push_back(z);
                    }
                }
            }
            sizes.push(size);
        }
        let orders = reps.iter().map(|&r| g.element_order(r)).collect();
        let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)] as usize).collect();
        Classes { class_of, reps, sizes, orders, inverse_class }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] as usize == c).collect()
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn power_class<G: Group + ?Sized>(&self, g: &G, c: usize, k: u64) -> usize {
        self.class_of(g.pow(self.reps[c], k))
    }
}

/// Subgroup of a parent group, with local indices `0..len` (local 0 is the identity).
pub struct Subgroup<'a, G: Group + ?Sized> {
    parent: &'a G,
    elems: Vec<usize>,
    local: HashMap<usize, usize>,
    gens: Vec<usize>,
}

impl<'a, G: Group + ?Sized> Subgroup<'a, G> {
    /// Subgroup generated by the given parent elements.
    pub fn generated(parent: &'a G, gens: &[usize]) -> Self {
        let elems = closure(parent, gens);
        let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let gens = gens.iter().map(|x| local[x]).collect();
        Subgroup { parent, elems, local, gens }
    }

    /// Subgroup given by its full element set; generators are chosen greedily.
    pub fn from_elements(parent: &'a G, members: &[usize]) -> Self {
        let id = parent.identity();
        let mut elems = vec![id];
        elems.extend(members.iter().copied().filter(|&x| x != id));
        let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut chosen: Vec<usize> = Vec::new();
        let mut span: std::collections::HashSet<usize> = [id].into();
        for &x in &elems {
            if span.len() == elems.len() {
                break;
            }
            if !span.contains(&x) {
                chosen.push(x);
                span = closure(parent, &chosen).into_iter().collect();
            }
        }
        assert_eq!(span.len(), elems.len(), "element set is not a subgroup");
        let gens = chosen.iter().map(|x| local[x]).collect();
        Subgroup { parent, elems, local, gens }
    }

    pub fn parent(&self) -> &'a G {
        self.parent
    }

    pub fn to_parent(&self, x: usize) -> usize {
        self.elems[x]
    }

    pub fn to_local(&self, x: usize) -> Option<usize> {
        self.local.get(&x).copied()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }
}

impl<G: Group + ?Sized> Group for Subgroup<'_, G> {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.local[&self.parent.mul(self.elems[a], self.elems[b])]
    }
    fn inv(&self, a: usize) -> usize {
        self.local[&self.parent.inv(self.elems[a])]
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

fn closure<G: Group + ?Sized>(parent: &G, gens: &[usize]) -> Vec<usize> {
    let id = parent.identity();
    let mut elems = vec![id];
    let mut seen: std::collections::HashSet<usize> = [id].into();
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &s in gens {
            let y = parent.mul(x, s);
            if seen.insert(y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    elems
}

/// A group given by an explicit multiplication table; intended for small groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    table: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
}

impl TableGroup {
    /// Closes a set of generators under a multiplication on hashable values.
    pub fn from_generators<T, F>(gens: &[T], identity: T, mul: F) -> (TableGroup, Vec<T>)
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity];
        let mut index: HashMap<T, usize> = [(elems[0].clone(), 0)].into();
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let table: Vec<Vec<u32>> =
            elems.iter().map(|a| elems.iter().map(|b| index[&mul(a, b)] as u32).collect()).collect();
        let inverses = (0..elems.len()).map(|a| table[a].iter().position(|&p| p == 0).unwrap() as u32).collect();
        let gens = gens.iter().map(|g| index[g]).collect();
        (TableGroup { table, inverses, gens }, elems)
    }
}

impl Group for TableGroup {
    fn order(&self) -> usize {
        self.table.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}
