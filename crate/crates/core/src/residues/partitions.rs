//! Nilpotent orbits of classical Lie algebras by Jordan type, with distinguished and
//! quasidistinguished flags.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionFamily {
    Sl,
    Sp,
    SoOdd,
    SoEven,
}

impl FromStr for PartitionFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(PartitionFamily::Sl),
            "sp" => Ok(PartitionFamily::Sp),
            "so_odd" | "so-odd" => Ok(PartitionFamily::SoOdd),
            "so_even" | "so-even" => Ok(PartitionFamily::SoEven),
            other => Err(format!("unknown family {other:?}; expected sl, sp, so_odd or so_even")),
        }
    }
}

impl fmt::Display for PartitionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionFamily::Sl => "sl",
            PartitionFamily::Sp => "sp",
            PartitionFamily::SoOdd => "so_odd",
            PartitionFamily::SoEven => "so_even",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDatum {
    pub family: PartitionFamily,
    /// Weakly decreasing parts.
    pub partition: Vec<u32>,
    pub distinguished: bool,
    pub quasidistinguished: bool,
}

fn multiplicities(p: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &x in p {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Jordan types of nilpotent orbits: odd parts have even multiplicity in `sp`, even parts in `so`.
pub fn is_nilpotent_type(family: PartitionFamily, p: &[u32]) -> bool {
    let m = multiplicities(p);
    match family {
        PartitionFamily::Sl => true,
        PartitionFamily::Sp => m.iter().all(|(&a, &k)| a % 2 == 0 || k % 2 == 0),
        PartitionFamily::SoOdd | PartitionFamily::SoEven => m.iter().all(|(&a, &k)| a % 2 == 1 || k % 2 == 0),
    }
}

pub fn is_distinguished(family: PartitionFamily, p: &[u32]) -> bool {
    let m = multiplicities(p);
    let distinct = m.values().all(|&k| k == 1);
    match family {
        PartitionFamily::Sl => p.len() == 1,
        PartitionFamily::Sp => distinct && m.keys().all(|a| a % 2 == 0),
        PartitionFamily::SoOdd | PartitionFamily::SoEven => distinct && m.keys().all(|a| a % 2 == 1),
    }
}

pub fn is_quasidistinguished(family: PartitionFamily, p: &[u32]) -> bool {
    let m = multiplicities(p);
    let at_most_two = m.values().all(|&k| k <= 2);
    match family {
        PartitionFamily::Sl => p.len() == 1,
        PartitionFamily::Sp => at_most_two && m.keys().all(|a| a % 2 == 0),
        PartitionFamily::SoOdd => at_most_two && m.keys().all(|a| a % 2 == 1),
        PartitionFamily::SoEven => {
            let no_singletons = m.values().all(|&k| k != 1);
            at_most_two && m.keys().all(|a| a % 2 == 1) && (!no_singletons || m.len().is_multiple_of(2))
        }
    }
}

/// All partitions of `n`, weakly decreasing, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Nilpotent orbits of the family in dimension `n`, each with its flags.
///
/// In `so(n)` with `n` even, partitions with only even parts label two orbits; they are
/// listed once since neither is quasidistinguished.
pub fn classify_partitions(family: PartitionFamily, n: u32) -> Vec<PartitionDatum> {
    let parity_ok = match family {
        PartitionFamily::Sp | PartitionFamily::SoEven => n.is_multiple_of(2),
        PartitionFamily::SoOdd => n % 2 == 1,
        PartitionFamily::Sl => true,
    };
    if !parity_ok {
        return Vec::new();
    }
    partitions(n)
        .into_iter()
        .filter(|p| is_nilpotent_type(family, p))
        .map(|p| PartitionDatum {
            family,
            distinguished: is_distinguished(family, &p),
            quasidistinguished: is_quasidistinguished(family, &p),
            partition: p,
        })
        .collect()
}
