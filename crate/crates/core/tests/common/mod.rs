#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use hecke_dirac::elliptic::DiracData;
use hecke_dirac::rootsys::RootSystem;

/// Dirac data built once per type and shared across tests in one binary.
pub fn data(ty: &str) -> &'static DiracData {
    static CACHE: OnceLock<Mutex<HashMap<String, &'static DiracData>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(ty.to_string()).or_insert_with(|| {
        let rs = RootSystem::parse(ty).unwrap();
        Box::leak(Box::new(DiracData::new(&rs, None).unwrap()))
    })
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

/// Fraction-free determinant of a small integer matrix.
pub fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

pub fn one_minus(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..m.len()).map(|i| (0..m.len()).map(|j| i64::from(i == j) - m[i][j]).collect()).collect()
}
