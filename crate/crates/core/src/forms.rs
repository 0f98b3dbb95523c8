//! Gram matrices of the s-form on symmetric functions and of the Shapovalov
//! pairing on colored tensor products, plus ADE Cartan data.
//!
//! The univariate Gram matrix X_s = (⟨m_λ, h_μ⟩_s) is computed by two
//! independent algorithms whose agreement is a hard postcondition:
//!
//! * conjugation: X_s = L⁻¹·diag(s^{l(λ)})·L with rational intermediates and
//!   a checked integral result;
//! * direct coefficient extraction: the entry at (λ, μ) counts the ways to
//!   split λ into sub-partitions, one of size μ_i per part of μ, weighted by
//!   binomial·multinomial factors.
//!
//! The multivariate pairing is defined by a matching-sum rule per degree: the
//! pairing of two products of colored power sums is a product over degrees n
//! of permanents of n·(Cartan submatrix), which specializes to
//! ⟨p_λ, p_λ⟩_s = s^{l(λ)}·z_λ in one color.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{LabeledMatrix, Mat};
use crate::partitions::{
    enumerate_multipartitions, enumerate_partitions, Multipartition, Partition,
};
use crate::snf::smith_normal_form;
use crate::symfunc::{binomial, multinomial, transition_matrix, Basis};

/// ⟨m_α, h_β⟩_s for a single pair, by direct coefficient extraction.
///
/// Sums over ordered tuples assigning to each part β_i a sub-partition of α
/// of size β_i, with multiset union exactly α; each tuple contributes
/// Π_i C(s, l(λ⁽ⁱ⁾))·(l(λ⁽ⁱ⁾) choose its part multiplicities).
pub fn gram_entry(alpha: &Partition, beta: &Partition, s: u32) -> Result<BigInt> {
    assert!(s >= 1);
    if alpha.size() != beta.size() {
        return Err(Error::InvalidArgument(format!(
            "gram entry needs |α| = |β|, got {} and {}",
            alpha.size(),
            beta.size()
        )));
    }
    let mut remaining = alpha.part_multiplicities();
    Ok(split_sum(&mut remaining, beta.parts(), s))
}

fn split_sum(remaining: &mut BTreeMap<u32, u32>, beta_parts: &[u32], s: u32) -> BigInt {
    let Some((&b, rest)) = beta_parts.split_first() else {
        // all of α must be consumed
        return if remaining.values().all(|&m| m == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let values: Vec<u32> = remaining.keys().copied().collect();
    let mut total = BigInt::zero();
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    choose_submultiset(remaining, &values, 0, b, &mut chosen, &mut |remaining, chosen| {
        let l: u32 = chosen.iter().map(|&(_, m)| m).sum();
        let factor = binomial(s, l);
        if factor.is_zero() {
            return;
        }
        let mults: Vec<u32> = chosen.iter().map(|&(_, m)| m).collect();
        let weight = factor * multinomial(l, &mults);
        let tail = split_sum(remaining, rest, s);
        total += BigInt::from(weight) * tail;
    });
    total
}

/// Enumerate sub-multisets of `remaining` with part sum `target`, mutating
/// `remaining` in place around the callback. `chosen` collects the picked
/// (value, multiplicity) pairs.
fn choose_submultiset(
    remaining: &mut BTreeMap<u32, u32>,
    values: &[u32],
    idx: usize,
    target: u32,
    chosen: &mut Vec<(u32, u32)>,
    callback: &mut impl FnMut(&mut BTreeMap<u32, u32>, &[(u32, u32)]),
) {
    if target == 0 {
        callback(remaining, chosen);
        return;
    }
    if idx >= values.len() {
        return;
    }
    let v = values[idx];
    let available = remaining[&v];
    let max_take = available.min(target / v);
    for take in 0..=max_take {
        *remaining.get_mut(&v).unwrap() = available - take;
        if take > 0 {
            chosen.push((v, take));
        }
        choose_submultiset(remaining, values, idx + 1, target - v * take, chosen, callback);
        if take > 0 {
            chosen.pop();
        }
    }
    *remaining.get_mut(&v).unwrap() = available;
}

/// Algorithm (b): the full Gram matrix by direct coefficient extraction.
pub fn gram_s_form_direct(s: u32, d: u32) -> Mat<BigInt> {
    let labels = enumerate_partitions(d);
    let n = labels.len();
    let mut mat = Mat::zeros(n, n);
    for (i, alpha) in labels.iter().enumerate() {
        for (j, beta) in labels.iter().enumerate() {
            mat[(i, j)] = gram_entry(alpha, beta, s).expect("sizes match");
        }
    }
    mat
}

/// Algorithm (a): X_s = L⁻¹·diag(s^{l(λ)})·L with a checked integral result.
pub fn gram_s_form_conjugation(s: u32, d: u32) -> Result<Mat<BigInt>> {
    assert!(s >= 1);
    let labels = enumerate_partitions(d);
    let l = crate::symfunc::l_matrix(d);
    // diag(s^{l(λ)})·L scales row λ
    let mut bl = l.clone();
    for (i, lambda) in labels.iter().enumerate() {
        let scale = BigInt::from(s).pow(lambda.len() as u32);
        for j in 0..bl.ncols() {
            let scaled = &bl[(i, j)] * &scale;
            bl[(i, j)] = scaled;
        }
    }
    let x = l
        .solve(&bl)
        .ok_or_else(|| Error::CrossCheckFailed("L is singular".into()))?;
    x.to_integer()
}

/// The Gram matrix X_s of the s-form at degree d, computed by both
/// algorithms with mandatory agreement.
pub fn gram_s_form(s: u32, d: u32) -> Result<LabeledMatrix<Partition>> {
    let direct = gram_s_form_direct(s, d);
    let conjugated = gram_s_form_conjugation(s, d)?;
    if direct != conjugated {
        return Err(Error::CrossCheckFailed(format!(
            "gram algorithms disagree at s={s}, d={d}"
        )));
    }
    let labels = enumerate_partitions(d);
    Ok(LabeledMatrix::new(labels.clone(), labels, direct))
}

/// X_{s^r} as the r-th matrix power of X_s.
pub fn gram_power(s: u32, r: u32, d: u32) -> Result<LabeledMatrix<Partition>> {
    assert!(r >= 1);
    let base = gram_s_form(s, d)?;
    let mat = base.mat.pow(r);
    Ok(LabeledMatrix::new(base.row_labels, base.col_labels, mat))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CartanFamily {
    A,
    D,
    E,
}

impl CartanFamily {
    pub fn letter(self) -> char {
        match self {
            CartanFamily::A => 'A',
            CartanFamily::D => 'D',
            CartanFamily::E => 'E',
        }
    }
}

/// A simply-laced Cartan matrix with its invariant factors.
#[derive(Clone, Debug)]
pub struct CartanSpec {
    pub family: CartanFamily,
    pub rank: u32,
    matrix: Mat<BigInt>,
    invariant_factors: Vec<BigUint>,
}

impl CartanSpec {
    pub fn matrix(&self) -> &Mat<BigInt> {
        &self.matrix
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }
}

/// The standard simply-laced Cartan matrix for A_l (l ≥ 1), D_l (l ≥ 4) or
/// E_6/E_7/E_8, with its Smith normal form diagonal.
pub fn cartan(family: CartanFamily, rank: u32) -> Result<CartanSpec> {
    let edges: Vec<(usize, usize)> = match (family, rank) {
        (CartanFamily::A, l) if l >= 1 => (1..l as usize).map(|i| (i, i + 1)).collect(),
        (CartanFamily::D, l) if l >= 4 => {
            let l = l as usize;
            let mut e: Vec<(usize, usize)> = (1..l - 1).map(|i| (i, i + 1)).collect();
            e.push((l - 2, l));
            e
        }
        (CartanFamily::E, l @ 6..=8) => {
            let mut e = vec![(1, 3), (3, 4), (2, 4)];
            e.extend((4..l as usize).map(|i| (i, i + 1)));
            e
        }
        (family, rank) => {
            return Err(Error::UnsupportedCartan {
                family: family.letter(),
                rank,
            })
        }
    };
    let n = rank as usize;
    let mut matrix = Mat::zeros(n, n);
    for i in 0..n {
        matrix[(i, i)] = BigInt::from(2);
    }
    for (i, j) in edges {
        matrix[(i - 1, j - 1)] = BigInt::from(-1);
        matrix[(j - 1, i - 1)] = BigInt::from(-1);
    }
    assert!(matrix.is_symmetric());
    assert!(
        matrix
            .leading_principal_minors()
            .iter()
            .all(|m| m.is_positive()),
        "Cartan matrix must be positive definite"
    );
    let invariant_factors = smith_normal_form(&matrix, false)
        .invariant_factors()
        .to_vec();
    Ok(CartanSpec {
        family,
        rank,
        matrix,
        invariant_factors,
    })
}

/// A colored power-sum generator: (degree, color index).
pub type ColoredGen = (u32, usize);

/// Pairing of two products of colored power-sum generators against a
/// symmetric integer matrix `a`.
///
/// Zero unless the degree multisets agree; otherwise a product over distinct
/// degrees n of Σ over bijections σ between the degree-n factors of
/// Π_t n·a(i_t, j_σ(t)), i.e. the permanent of the n-scaled color submatrix.
pub fn fock_pairing(left: &[ColoredGen], right: &[ColoredGen], a: &Mat<BigInt>) -> BigInt {
    let group = |gens: &[ColoredGen]| {
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &(n, color) in gens {
            assert!(n >= 1 && color < a.nrows());
            by_degree.entry(n).or_default().push(color);
        }
        by_degree
    };
    let left_groups = group(left);
    let right_groups = group(right);
    if left_groups.len() != right_groups.len()
        || left_groups
            .iter()
            .zip(&right_groups)
            .any(|((nl, cl), (nr, cr))| nl != nr || cl.len() != cr.len())
    {
        return BigInt::zero();
    }
    let mut total = BigInt::one();
    for (n, lcolors) in &left_groups {
        let block = permanent_sum(lcolors, &right_groups[n], a);
        if block.is_zero() {
            return BigInt::zero();
        }
        total *= BigInt::from(*n).pow(lcolors.len() as u32) * block;
    }
    total
}

/// Σ over bijections σ of Π_t a[l_t][r_σ(t)] (a permanent with repeated
/// rows/columns), by direct summation with zero pruning.
fn permanent_sum(lcolors: &[usize], rcolors: &[usize], a: &Mat<BigInt>) -> BigInt {
    fn rec(
        t: usize,
        lcolors: &[usize],
        rcolors: &[usize],
        used: &mut Vec<bool>,
        a: &Mat<BigInt>,
        prefix: &BigInt,
        total: &mut BigInt,
    ) {
        if t == lcolors.len() {
            *total += prefix;
            return;
        }
        for u in 0..rcolors.len() {
            if used[u] {
                continue;
            }
            let entry = &a[(lcolors[t], rcolors[u])];
            if entry.is_zero() {
                continue;
            }
            used[u] = true;
            let next = prefix * entry;
            rec(t + 1, lcolors, rcolors, used, a, &next, total);
            used[u] = false;
        }
    }
    let mut total = BigInt::zero();
    let mut used = vec![false; rcolors.len()];
    rec(0, lcolors, rcolors, &mut used, a, &BigInt::one(), &mut total);
    total
}

/// Gram matrix of the multivariate pairing on multipartitions of total size
/// d, with one color per row of the Cartan-like matrix `a`: each component's
/// h function is expanded into power sums and entries follow by bilinearity
/// from [`fock_pairing`]. The result must be integral.
pub fn shapovalov_gram(a: &Mat<BigInt>, d: u32) -> Result<LabeledMatrix<Multipartition>> {
    assert!(a.is_square() && a.is_symmetric(), "pairing matrix must be symmetric");
    let rank = a.nrows() as u32;
    assert!(rank >= 1);
    let labels = enumerate_multipartitions(d, rank);

    // h-over-p expansions per degree, shared by all components
    let mut h_to_p: BTreeMap<u32, (Vec<Partition>, Mat<BigRational>)> = BTreeMap::new();
    for deg in 0..=d {
        let t = transition_matrix(Basis::H, Basis::P, deg)?;
        h_to_p.insert(deg, (t.matrix.row_labels.clone(), t.matrix.mat));
    }

    // colored power-sum expansion of h_{λ̲}: a list of (generators, coefficient)
    let expansions: Vec<Vec<(Vec<ColoredGen>, BigRational)>> = labels
        .iter()
        .map(|mp| {
            let mut terms: Vec<(Vec<ColoredGen>, BigRational)> =
                vec![(Vec::new(), BigRational::one())];
            for (color, component) in mp.components().iter().enumerate() {
                let deg = component.size();
                let (part_labels, mat) = &h_to_p[&deg];
                let row = part_labels
                    .binary_search(component)
                    .expect("component indexes its degree");
                let mut next = Vec::new();
                for (gens, coeff) in &terms {
                    for (col, nu) in part_labels.iter().enumerate() {
                        let c = &mat[(row, col)];
                        if c.is_zero() {
                            continue;
                        }
                        let mut g = gens.clone();
                        g.extend(nu.parts().iter().map(|&part| (part, color)));
                        next.push((g, coeff * c));
                    }
                }
                terms = next;
            }
            terms
        })
        .collect();

    let n = labels.len();
    let mut mat = Mat::<BigRational>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = BigRational::zero();
            for (gl, cl) in &expansions[i] {
                for (gr, cr) in &expansions[j] {
                    let pairing = fock_pairing(gl, gr, a);
                    if !pairing.is_zero() {
                        acc += cl * cr * BigRational::from_integer(pairing);
                    }
                }
            }
            mat[(i, j)] = acc.clone();
            mat[(j, i)] = acc;
        }
    }
    let mat = mat.to_integer()?;
    Ok(LabeledMatrix::new(labels.clone(), labels, mat))
}
