//! Smith normal form over arbitrary-precision integers.
//!
//! Dense elimination with pivoting on a minimal-absolute-value entry and
//! repeated row/column remainder reduction, which keeps coefficient growth
//! under control at desk scale. Pivot selection breaks ties by smallest
//! (row, column), so the computation is deterministic for a given input.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Invariant factors in divisibility order, with optional unimodular
/// transforms U, V satisfying U·A·V = diag(factors).
#[derive(Clone, Debug)]
pub struct SnfResult {
    invariant_factors: Vec<BigUint>,
    transforms: Option<(Mat<BigInt>, Mat<BigInt>)>,
}

impl SnfResult {
    /// Wrap a raw factor list (not validated; `smith_normal_form` always
    /// produces a valid divisibility chain).
    pub fn new(invariant_factors: Vec<BigUint>) -> Self {
        SnfResult {
            invariant_factors,
            transforms: None,
        }
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    /// The transforms (U, V), present when requested.
    pub fn transforms(&self) -> Option<(&Mat<BigInt>, &Mat<BigInt>)> {
        self.transforms.as_ref().map(|(u, v)| (u, v))
    }

    /// Nonzero factors only (the zeros sit at the tail).
    pub fn nonzero_factors(&self) -> &[BigUint] {
        let rank = self
            .invariant_factors
            .iter()
            .position(BigUint::is_zero)
            .unwrap_or(self.invariant_factors.len());
        &self.invariant_factors[..rank]
    }

    pub fn is_divisibility_chain(&self) -> bool {
        factors_form_chain(&self.invariant_factors)
    }
}

fn factors_form_chain(factors: &[BigUint]) -> bool {
    factors.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        }
    })
}

/// Compute the Smith normal form of an integer matrix.
///
/// Returns the invariant factors d₁ | d₂ | … (non-negative, zeros at the
/// tail) and, when `want_transforms` is set, unimodular U and V with
/// U·A·V = diag(d₁, d₂, …).
pub fn smith_normal_form(a: &Mat<BigInt>, want_transforms: bool) -> SnfResult {
    let m = a.nrows();
    let n = a.ncols();
    let mut work = a.clone();
    let mut u = want_transforms.then(|| Mat::<BigInt>::identity(m));
    let mut v = want_transforms.then(|| Mat::<BigInt>::identity(n));

    let rank_bound = m.min(n);
    for t in 0..rank_bound {
        // pivot search fails only when the remaining submatrix is zero
        while let Some((pi, pj)) = min_abs_pivot(&work, t) {
            if pi != t {
                swap_rows(&mut work, t, pi);
                if let Some(u) = &mut u {
                    swap_rows(u, t, pi);
                }
            }
            if pj != t {
                swap_cols(&mut work, t, pj);
                if let Some(v) = &mut v {
                    swap_cols(v, t, pj);
                }
            }

            // clear column t below the pivot and row t to its right
            let mut dirty = false;
            for i in t + 1..m {
                if !work[(i, t)].is_zero() {
                    let q = quotient_nearest(&work[(i, t)], &work[(t, t)]);
                    row_sub_mul(&mut work, i, t, &q, t);
                    if let Some(u) = &mut u {
                        row_sub_mul(u, i, t, &q, 0);
                    }
                    if !work[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !work[(t, j)].is_zero() {
                    let q = quotient_nearest(&work[(t, j)], &work[(t, t)]);
                    col_sub_mul(&mut work, j, t, &q, t);
                    if let Some(v) = &mut v {
                        col_sub_mul(v, j, t, &q, 0);
                    }
                    if !work[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue; // a smaller entry appeared; re-pivot
            }

            // pivot must divide the whole remaining submatrix
            let violating = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&work[(i, j)] % &work[(t, t)]).is_zero());
            match violating {
                Some((i, _)) => {
                    row_add(&mut work, t, i, t);
                    if let Some(u) = &mut u {
                        row_add(u, t, i, 0);
                    }
                }
                None => break,
            }
        }
        if work[(t, t)].is_negative() {
            negate_row(&mut work, t);
            if let Some(u) = &mut u {
                negate_row(u, t);
            }
        }
    }

    let invariant_factors = (0..rank_bound)
        .map(|t| work[(t, t)].magnitude().clone())
        .collect();
    SnfResult {
        invariant_factors,
        transforms: u.zip(v),
    }
}

/// Minimal-absolute-value nonzero entry of the trailing submatrix, ties
/// broken by smallest row then column.
fn min_abs_pivot(a: &Mat<BigInt>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            let mag = a[(i, j)].abs();
            if best.as_ref().is_none_or(|(b, _, _)| mag < *b) {
                best = Some((mag, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient rounded to nearest, which at least halves the remainder per pass.
fn quotient_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut Mat<BigInt>, r1: usize, r2: usize) {
    for j in 0..a.ncols() {
        let tmp = a[(r1, j)].clone();
        a[(r1, j)] = std::mem::replace(&mut a[(r2, j)], tmp);
    }
}

fn swap_cols(a: &mut Mat<BigInt>, c1: usize, c2: usize) {
    for i in 0..a.nrows() {
        let tmp = a[(i, c1)].clone();
        a[(i, c1)] = std::mem::replace(&mut a[(i, c2)], tmp);
    }
}

/// row_i -= q · row_t, starting from column `from`.
fn row_sub_mul(a: &mut Mat<BigInt>, i: usize, t: usize, q: &BigInt, from: usize) {
    for j in from..a.ncols() {
        let delta = q * &a[(t, j)];
        a[(i, j)] -= delta;
    }
}

/// col_j -= q · col_t, starting from row `from`.
fn col_sub_mul(a: &mut Mat<BigInt>, j: usize, t: usize, q: &BigInt, from: usize) {
    for i in from..a.nrows() {
        let delta = q * &a[(i, t)];
        a[(i, j)] -= delta;
    }
}

/// row_t += row_i, starting from column `from`.
fn row_add(a: &mut Mat<BigInt>, t: usize, i: usize, from: usize) {
    for j in from..a.ncols() {
        let delta = a[(i, j)].clone();
        a[(t, j)] += delta;
    }
}

fn negate_row(a: &mut Mat<BigInt>, i: usize) {
    for j in 0..a.ncols() {
        let x = -a[(i, j)].clone();
        a[(i, j)] = x;
    }
}

/// Position-wise product of two invariant-factor lists.
///
/// Valid when the underlying determinants are coprime; the result must
/// itself be a divisibility chain, and a violation is reported as an error.
pub fn snf_pointwise_product(s: &SnfResult, t: &SnfResult) -> Result<SnfResult> {
    if s.invariant_factors.len() != t.invariant_factors.len() {
        return Err(Error::InvalidArgument(format!(
            "invariant factor lists have different lengths ({} vs {})",
            s.invariant_factors.len(),
            t.invariant_factors.len()
        )));
    }
    let product: Vec<BigUint> = s
        .invariant_factors
        .iter()
        .zip(&t.invariant_factors)
        .map(|(a, b)| a * b)
        .collect();
    if let Some(position) = (1..product.len()).find(|&k| !factors_form_chain(&product[k - 1..=k])) {
        return Err(Error::DivisibilityViolated { position });
    }
    Ok(SnfResult::new(product))
}
