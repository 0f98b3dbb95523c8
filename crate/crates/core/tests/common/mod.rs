#![allow(dead_code)]

//! Helpers shared by the integration suites.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use shapoform::matrix::Mat;
use shapoform::partitions::Partition;

pub fn pt(parts: &[u32]) -> Partition {
    if parts.is_empty() {
        Partition::empty()
    } else {
        Partition::new(parts.to_vec())
    }
}

/// Independent Smith-normal-form oracle: d_k = g_k / g_{k−1} with g_k the
/// gcd of all k×k minors, everything by brute force.
pub fn snf_by_minor_gcds(a: &Mat<BigInt>) -> Vec<BigUint> {
    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            for i in start..n {
                current.push(i);
                rec(i + 1, n, k, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }
    let bound = a.nrows().min(a.ncols());
    let mut gcds = Vec::with_capacity(bound);
    for k in 1..=bound {
        let mut g = BigUint::zero();
        for rows in combinations(a.nrows(), k) {
            for cols in combinations(a.ncols(), k) {
                let mut sub = Mat::<BigInt>::zeros(k, k);
                for (si, &i) in rows.iter().enumerate() {
                    for (sj, &j) in cols.iter().enumerate() {
                        sub[(si, sj)] = a[(i, j)].clone();
                    }
                }
                g = g.gcd(sub.det().magnitude());
            }
        }
        gcds.push(g);
    }
    let mut factors = Vec::with_capacity(bound);
    let mut prev = BigUint::one();
    for g in gcds {
        if g.is_zero() || prev.is_zero() {
            factors.push(BigUint::zero());
            prev = BigUint::zero();
        } else {
            factors.push(&g / &prev);
            prev = g;
        }
    }
    factors
}
