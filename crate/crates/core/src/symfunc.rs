//! The graded ring of symmetric functions over exact rationals.
//!
//! A [`SymPoly`] is a homogeneous element tagged with the basis it is written
//! in: `m` (monomial), `h` (complete homogeneous) or `p` (power sum). The `h`
//! and `p` bases are free multiplicative bases, so their products reduce to
//! multiset unions of indices; products of monomial functions use the finite
//! rearrangement structure-constant rule. Transition matrices between the
//! three bases are assembled over the canonical partition order and inverted
//! by fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{LabeledMatrix, Mat};
use crate::partitions::{enumerate_partitions, z_of, Partition, Prime};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// Complete homogeneous functions h_λ.
    H,
    /// Monomial functions m_λ.
    M,
    /// Power sums p_λ.
    P,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::H => "h",
            Basis::M => "m",
            Basis::P => "p",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "h" => Ok(Basis::H),
            "m" => Ok(Basis::M),
            "p" => Ok(Basis::P),
            other => Err(Error::InvalidArgument(format!("unknown basis tag {other:?}"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// A homogeneous symmetric function: partition-indexed exact rational
/// coefficients in a tagged basis. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    degree: u32,
    basis: Basis,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SymPoly {
    pub fn zero(degree: u32, basis: Basis) -> Self {
        SymPoly {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative identity (degree 0, single term at the empty partition).
    pub fn one(basis: Basis) -> Self {
        let mut f = SymPoly::zero(0, basis);
        f.add_term(Partition::empty(), BigRational::one());
        f
    }

    /// A single basis element with coefficient 1.
    pub fn basis_element(basis: Basis, index: Partition) -> Self {
        let mut f = SymPoly::zero(index.size(), basis);
        f.add_term(index, BigRational::one());
        f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, index: &Partition) -> BigRational {
        self.coeffs.get(index).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Add `coeff`·(basis element `index`), dropping the term if it cancels.
    pub fn add_term(&mut self, index: Partition, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(index.size(), self.degree, "homogeneity violated");
        let entry = self.coeffs.entry(index);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.basis, other.basis);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (index, coeff) in &other.coeffs {
            out.add_term(index.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> SymPoly {
        if factor.is_zero() {
            return SymPoly::zero(self.degree, self.basis);
        }
        SymPoly {
            degree: self.degree,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(index, c)| (index.clone(), c * factor))
                .collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(BigRational::is_integer)
    }

    /// Product in a free multiplicative basis (`h` or `p`), where basis
    /// elements multiply by multiset union of their indices.
    pub fn mul_free(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.basis, other.basis);
        assert!(
            matches!(self.basis, Basis::H | Basis::P),
            "mul_free requires a multiplicative basis"
        );
        let mut out = SymPoly::zero(self.degree + other.degree, self.basis);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a.union(b), ca * cb);
            }
        }
        out
    }

    /// `self` raised to the k-th power in a free multiplicative basis.
    pub fn pow_free(&self, k: u32) -> SymPoly {
        let mut out = SymPoly::one(self.basis);
        for _ in 0..k {
            out = out.mul_free(self);
        }
        out
    }

    /// Divide every coefficient by `d`, failing unless the division is exact
    /// over the integers.
    pub fn div_exact(&self, d: u32, context: &str) -> Result<SymPoly> {
        let div = BigInt::from(d);
        let mut out = SymPoly::zero(self.degree, self.basis);
        for (index, c) in &self.coeffs {
            if !c.is_integer() || !(c.to_integer() % &div).is_zero() {
                return Err(Error::NonExactDivision {
                    divisor: d,
                    context: format!("{context} (coefficient of {index})"),
                });
            }
            out.add_term(index.clone(), BigRational::from_integer(c.to_integer() / &div));
        }
        Ok(out)
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (index, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}{}", c, self.basis, index)?;
        }
        Ok(())
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            index: &'a Partition,
            num: String,
            den: String,
        }
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(index, c)| Term {
                index,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("SymPoly", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("basis", self.basis.tag())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// In-place step to the lexicographically next permutation; false when done.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visit every distinct rearrangement of `parts` padded with zeros to `len`.
fn for_each_padded_rearrangement(parts: &[u32], len: usize, mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; len];
    v[len - parts.len()..].copy_from_slice(parts);
    v[len - parts.len()..].reverse();
    v.sort_unstable();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// Structure constants of the monomial basis: m_α·m_β as a map γ ↦ c_γ.
///
/// c_γ counts pairs of zero-padded rearrangements (u, v) of α and β whose
/// coordinatewise sum is the weakly decreasing representative of γ.
fn m_structure_product(alpha: &Partition, beta: &Partition) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    if alpha.is_empty() || beta.is_empty() {
        let gamma = if alpha.is_empty() { beta } else { alpha };
        out.insert(gamma.clone(), BigInt::one());
        return out;
    }
    let len = alpha.len() + beta.len();
    for_each_padded_rearrangement(alpha.parts(), len, |u| {
        let u = u.to_vec();
        for_each_padded_rearrangement(beta.parts(), len, |v| {
            let mut w = vec![0u32; len];
            for k in 0..len {
                w[k] = u[k] + v[k];
            }
            if w.windows(2).all(|t| t[0] >= t[1]) {
                let nonzero: Vec<u32> = w.iter().copied().filter(|&x| x > 0).collect();
                let gamma = if nonzero.is_empty() {
                    Partition::empty()
                } else {
                    Partition::new(nonzero)
                };
                *out.entry(gamma).or_insert_with(BigInt::zero) += 1;
            }
        });
    });
    out
}

/// Product of two monomial-basis elements, extended bilinearly.
pub fn multiply(f: &SymPoly, g: &SymPoly) -> SymPoly {
    assert_eq!(f.basis, Basis::M);
    assert_eq!(g.basis, Basis::M);
    let mut out = SymPoly::zero(f.degree + g.degree, Basis::M);
    for (alpha, ca) in &f.coeffs {
        for (beta, cb) in &g.coeffs {
            let c = ca * cb;
            for (gamma, n) in m_structure_product(alpha, beta) {
                out.add_term(gamma, &c * BigRational::from_integer(n));
            }
        }
    }
    out
}

/// p_λ expanded in the monomial basis (integer coefficients).
pub fn power_sum_in_m(lambda: &Partition) -> SymPoly {
    let mut out = SymPoly::one(Basis::M);
    for &part in lambda.parts() {
        let pk = SymPoly::basis_element(Basis::M, Partition::new(vec![part]));
        out = multiply(&out, &pk);
    }
    out
}

/// h_λ expanded in the monomial basis; h_k is the sum of all m_μ with μ ⊢ k.
pub fn homogeneous_in_m(lambda: &Partition) -> SymPoly {
    let mut out = SymPoly::one(Basis::M);
    for &part in lambda.parts() {
        let mut hk = SymPoly::zero(part, Basis::M);
        for mu in enumerate_partitions(part) {
            hk.add_term(mu, BigRational::one());
        }
        out = multiply(&out, &hk);
    }
    out
}

/// n choose k as an exact integer (zero when k > n).
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

/// Exact multinomial coefficient total! / Π parts!. Panics unless Σparts = total.
pub fn multinomial(total: u32, parts: &[u32]) -> BigUint {
    assert_eq!(
        parts.iter().sum::<u32>(),
        total,
        "multinomial parts must sum to the total"
    );
    let mut out = BigUint::one();
    let mut used = 0;
    for &part in parts {
        for i in 0..part {
            out = out * BigUint::from(used + i + 1) / BigUint::from(i + 1);
        }
        used += part;
    }
    out
}

/// Coefficients of one level-lowering step: the expansion of the n-th
/// generator at level j over products of level-(j−1) generators, i.e.
/// the coefficient C(p, l(λ))·(l(λ) choose m_1(λ), m_2(λ), …) of each λ ⊢ n.
pub fn level_step_coefficients(n: u32, p: Prime) -> Vec<(Partition, BigUint)> {
    enumerate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let l = lambda.len() as u32;
            let mults: Vec<u32> = lambda.part_multiplicities().values().copied().collect();
            let c = binomial(p.get(), l) * multinomial(l, &mults);
            (lambda, c)
        })
        .collect()
}

/// Plain-h expansions of the higher homogeneous functions h_n^{(j)} for all
/// n ≤ n_max and levels j ≤ r. `table[j][n]` is h_n^{(j)}; level 0 is h_n
/// itself, and each level applies the binomial/multinomial recursion once.
pub fn higher_homogeneous_table(n_max: u32, r: u32, p: Prime) -> Vec<Vec<SymPoly>> {
    let mut table: Vec<Vec<SymPoly>> = Vec::with_capacity(r as usize + 1);
    let level0: Vec<SymPoly> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                SymPoly::one(Basis::H)
            } else {
                SymPoly::basis_element(Basis::H, Partition::new(vec![n]))
            }
        })
        .collect();
    table.push(level0);
    for j in 1..=r {
        let prev = &table[(j - 1) as usize];
        let level: Vec<SymPoly> = (0..=n_max)
            .map(|n| {
                if n == 0 {
                    return SymPoly::one(Basis::H);
                }
                let mut out = SymPoly::zero(n, Basis::H);
                for (lambda, c) in level_step_coefficients(n, p) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut prod = SymPoly::one(Basis::H);
                    for &part in lambda.parts() {
                        prod = prod.mul_free(&prev[part as usize]);
                    }
                    out = out.add(&prod.scale(&BigRational::from_integer(BigInt::from(c))));
                }
                out
            })
            .collect();
        table.push(level);
    }
    table
}

/// h_n^{(r)} in the plain h basis: the coefficient of tⁿ in (Σ h_k t^k)^{p^r}.
pub fn higher_homogeneous(n: u32, r: u32, p: Prime) -> SymPoly {
    higher_homogeneous_table(n, r, p)
        .pop()
        .unwrap()
        .swap_remove(n as usize)
}

/// The integer matrix L = M(p,m) at degree d: row λ holds the monomial-basis
/// expansion of p_λ over the canonical order.
pub fn l_matrix(d: u32) -> Mat<BigInt> {
    expansion_matrix(d, power_sum_in_m)
}

/// The unimodular integer matrix N = M(h,m) at degree d.
pub fn n_matrix(d: u32) -> Mat<BigInt> {
    expansion_matrix(d, homogeneous_in_m)
}

fn expansion_matrix(d: u32, expand: impl Fn(&Partition) -> SymPoly) -> Mat<BigInt> {
    let labels = enumerate_partitions(d);
    let n = labels.len();
    let mut mat = Mat::zeros(n, n);
    for (i, lambda) in labels.iter().enumerate() {
        let row = expand(lambda);
        for (mu, c) in row.terms() {
            let j = labels.binary_search(mu).expect("expansion stays within degree");
            debug_assert!(c.is_integer());
            mat[(i, j)] = c.to_integer();
        }
    }
    mat
}

#[derive(Clone)]
pub struct TransitionMatrix {
    pub from: Basis,
    pub to: Basis,
    pub degree: u32,
    pub matrix: LabeledMatrix<Partition, BigRational>,
}

/// The transition matrix M(from, to) at degree d: row λ expands the `from`
/// basis element over the `to` basis. Computed from the integer base cases
/// L = M(p,m) and N = M(h,m); inverses use exact fraction-free elimination.
pub fn transition_matrix(from: Basis, to: Basis, d: u32) -> Result<TransitionMatrix> {
    let labels = enumerate_partitions(d);
    let n = labels.len();
    let mat: Mat<BigRational> = match (from, to) {
        (a, b) if a == b => Mat::identity(n),
        (Basis::P, Basis::M) => l_matrix(d).to_rational(),
        (Basis::H, Basis::M) => n_matrix(d).to_rational(),
        (Basis::M, Basis::P) => invert(l_matrix(d))?,
        (Basis::M, Basis::H) => invert(n_matrix(d))?,
        // M(h,p) = N·L⁻¹, computed by solving Lᵀ·Xᵀ = Nᵀ
        (Basis::H, Basis::P) => solve_transposed(l_matrix(d), n_matrix(d))?,
        // M(p,h) = L·N⁻¹
        (Basis::P, Basis::H) => solve_transposed(n_matrix(d), l_matrix(d))?,
        _ => unreachable!(),
    };
    Ok(TransitionMatrix {
        from,
        to,
        degree: d,
        matrix: LabeledMatrix::new(labels.clone(), labels, mat),
    })
}

fn invert(a: Mat<BigInt>) -> Result<Mat<BigRational>> {
    a.inverse()
        .ok_or_else(|| Error::CrossCheckFailed("transition matrix is singular".into()))
}

/// A·B⁻¹ via the transposed solve Bᵀ·Xᵀ = Aᵀ.
fn solve_transposed(b: Mat<BigInt>, a: Mat<BigInt>) -> Result<Mat<BigRational>> {
    let xt = b
        .transpose()
        .solve(&a.transpose())
        .ok_or_else(|| Error::CrossCheckFailed("transition matrix is singular".into()))?;
    Ok(xt.transpose())
}

/// diag(z_λ) at degree d over the canonical order.
pub fn z_diagonal(d: u32) -> Mat<BigInt> {
    let labels = enumerate_partitions(d);
    let mut mat = Mat::zeros(labels.len(), labels.len());
    for (i, lambda) in labels.iter().enumerate() {
        mat[(i, i)] = BigInt::from(z_of(lambda));
    }
    mat
}


#[cfg(test)]
mod tests {
    use super::test_oracle::*;
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        if parts.is_empty() {
            Partition::empty()
        } else {
            Partition::new(parts.to_vec())
        }
    }

    fn m_poly(terms: &[(&[u32], i64)]) -> SymPoly {
        let degree = terms[0].0.iter().sum();
        let mut f = SymPoly::zero(degree, Basis::M);
        for (index, c) in terms {
            f.add_term(pt(index), BigRational::from_integer(BigInt::from(*c)));
        }
        f
    }

    #[test]
    fn multiply_examples() {
        let m1 = SymPoly::basis_element(Basis::M, pt(&[1]));
        let m2 = SymPoly::basis_element(Basis::M, pt(&[2]));
        assert_eq!(multiply(&m1, &m1), m_poly(&[(&[2], 1), (&[1, 1], 2)]));
        assert_eq!(multiply(&m2, &m1), m_poly(&[(&[3], 1), (&[2, 1], 1)]));
        // multiplying by the identity leaves the element unchanged
        let f = m_poly(&[(&[2, 1], 3), (&[1, 1, 1], -1)]);
        assert_eq!(multiply(&f, &SymPoly::one(Basis::M)), f);
    }

    #[test]
    fn multiply_matches_variable_expansion() {
        // exhaustive comparison against the brute-force oracle in enough variables
        for da in 0..=3u32 {
            for db in 0..=3u32 {
                for alpha in enumerate_partitions(da) {
                    for beta in enumerate_partitions(db) {
                        let nvars = (alpha.len() + beta.len()).max(1);
                        let pa = m_in_variables(&alpha, nvars);
                        let pb = m_in_variables(&beta, nvars);
                        let expected = var_poly_to_m(&var_poly_mul(&pa, &pb), da + db);
                        let got = multiply(
                            &SymPoly::basis_element(Basis::M, alpha.clone()),
                            &SymPoly::basis_element(Basis::M, beta.clone()),
                        );
                        assert_eq!(got, expected, "m_{alpha} · m_{beta}");
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_commutative_and_associative() {
        let mut elems = Vec::new();
        for d in 1..=2u32 {
            for lambda in enumerate_partitions(d) {
                elems.push(SymPoly::basis_element(Basis::M, lambda));
            }
        }
        for f in &elems {
            for g in &elems {
                assert_eq!(multiply(f, g), multiply(g, f));
                for h in &elems {
                    if f.degree + g.degree + h.degree <= 6 {
                        assert_eq!(
                            multiply(&multiply(f, g), h),
                            multiply(f, &multiply(g, h))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_in_m(&pt(&[2])), m_poly(&[(&[2], 1)]));
        assert_eq!(power_sum_in_m(&pt(&[1, 1])), m_poly(&[(&[2], 1), (&[1, 1], 2)]));
        assert_eq!(power_sum_in_m(&pt(&[2, 1])), m_poly(&[(&[3], 1), (&[2, 1], 1)]));
    }

    #[test]
    fn homogeneous_examples() {
        assert_eq!(homogeneous_in_m(&pt(&[1])), m_poly(&[(&[1], 1)]));
        assert_eq!(homogeneous_in_m(&pt(&[2])), m_poly(&[(&[2], 1), (&[1, 1], 1)]));
        assert_eq!(
            homogeneous_in_m(&pt(&[1, 1])),
            m_poly(&[(&[2], 1), (&[1, 1], 2)])
        );
    }

    #[test]
    fn transition_examples() {
        let l2 = transition_matrix(Basis::P, Basis::M, 2).unwrap();
        let want = crate::matrix::int_mat(&[&[1, 0], &[1, 2]]).to_rational();
        assert_eq!(l2.matrix.mat, want);
        let n1 = transition_matrix(Basis::H, Basis::M, 1).unwrap();
        assert_eq!(n1.matrix.mat, Mat::identity(1));
    }

    #[test]
    fn transition_inverses_compose_to_identity() {
        for d in 0..=5 {
            let n = enumerate_partitions(d).len();
            for (a, b) in [(Basis::P, Basis::M), (Basis::H, Basis::M), (Basis::H, Basis::P)] {
                let fwd = transition_matrix(a, b, d).unwrap().matrix.mat;
                let bwd = transition_matrix(b, a, d).unwrap().matrix.mat;
                assert_eq!(fwd.mul(&bwd), Mat::identity(n), "M({a},{b})·M({b},{a}) at d={d}");
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]), BigUint::from(2u32));
        for k in 0..=6 {
            assert_eq!(multinomial(k, &[k]), BigUint::one());
        }
        assert_eq!(multinomial(5, &[2, 2, 1]), BigUint::from(30u32));
        assert_eq!(multinomial(0, &[]), BigUint::one());
    }

    #[test]
    #[should_panic(expected = "sum to the total")]
    fn multinomial_rejects_bad_parts() {
        multinomial(4, &[2, 1]);
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    fn h_poly(terms: &[(&[u32], i64)]) -> SymPoly {
        let degree = terms[0].0.iter().sum();
        let mut f = SymPoly::zero(degree, Basis::H);
        for (index, c) in terms {
            f.add_term(pt(index), BigRational::from_integer(BigInt::from(*c)));
        }
        f
    }

    #[test]
    fn higher_homogeneous_examples() {
        let p2 = Prime::new(2).unwrap();
        let p3 = Prime::new(3).unwrap();
        for (p, r) in [(p2, 1), (p2, 2), (p3, 1), (p3, 2)] {
            let scale = (p.get() as i64).pow(r);
            assert_eq!(
                higher_homogeneous(1, r, p),
                h_poly(&[(&[1], scale)]),
                "n=1 must give p^r·h_1"
            );
        }
        assert_eq!(
            higher_homogeneous(2, 1, p2),
            h_poly(&[(&[2], 2), (&[1, 1], 1)])
        );
        assert_eq!(
            higher_homogeneous(2, 1, p3),
            h_poly(&[(&[2], 3), (&[1, 1], 3)])
        );
    }

    /// Independent oracle: expand (1 + Σ h_k t^k)^{p^r} as a truncated series
    /// with h-basis coefficients and read off the coefficient of tⁿ.
    fn series_power_coefficient(n: u32, r: u32, p: Prime) -> SymPoly {
        let exponent = p.get().pow(r);
        // series[k] = coefficient of t^k, an h-basis SymPoly of degree k
        let mut series: Vec<SymPoly> = (0..=n)
            .map(|k| {
                if k == 0 {
                    SymPoly::one(Basis::H)
                } else {
                    SymPoly::basis_element(Basis::H, pt(&[k]))
                }
            })
            .collect();
        let base = series.clone();
        for _ in 1..exponent {
            let mut next: Vec<SymPoly> = (0..=n).map(|k| SymPoly::zero(k, Basis::H)).collect();
            for i in 0..=n {
                for j in 0..=n - i {
                    let prod = series[i as usize].mul_free(&base[j as usize]);
                    next[(i + j) as usize] = next[(i + j) as usize].add(&prod);
                }
            }
            series = next;
        }
        series.swap_remove(n as usize)
    }

    #[test]
    fn higher_homogeneous_matches_series_oracle() {
        for praw in [2u32, 3] {
            let p = Prime::new(praw).unwrap();
            for r in 1..=2 {
                for n in 0..=5 {
                    assert_eq!(
                        higher_homogeneous(n, r, p),
                        series_power_coefficient(n, r, p),
                        "p={praw}, r={r}, n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn sympoly_serialization_shape() {
        let mut f = SymPoly::zero(3, Basis::H);
        f.add_term(pt(&[2, 1]), BigRational::from_integer(BigInt::from(3)));
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "degree": 3,
                "basis": "h",
                "terms": [{"index": [2, 1], "num": "3", "den": "1"}]
            })
        );
    }
}
