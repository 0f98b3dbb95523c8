//! Auxiliary multiplicative bases that triangularize the p^r-form.
//!
//! Three families are built here, all stored as exact expansions over the
//! plain h basis:
//!
//! * the level bases g_l^{(i,r)} for 0 ≤ i ≤ r, constructed by p-adic
//!   induction on the generator index with every division by p checked
//!   exact (a failed division in the r ≤ p regime is an internal error);
//! * the G family for r = 1, generated from the level-0 basis by the
//!   relation G_(p^i·n) = p·g_{p^i·n} + (g_{p^{i−1}·n})^p and p-adic digit
//!   products;
//! * the M family, dual to the top level via the transition matrix
//!   Z = M(h^{(r)}, g^{(r,r)}), which is independent of r.
//!
//! The coefficient matrix of G_λ(x)M_μ(y) in the p-form generating series is
//! unimodularly equivalent to the Gram matrix X_p and carries the closed-form
//! divisors on its diagonal.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::gram_s_form;
use crate::matrix::{LabeledMatrix, Mat};
use crate::partitions::{enumerate_partitions, p_adic_digits, Partition, Prime};
use crate::symfunc::{higher_homogeneous_table, level_step_coefficients, Basis, SymPoly};

/// The integer coefficients c_n(λ) = (1/p)·C(p, l(λ))·(l(λ) choose mults),
/// with the exceptional value c_n((n/p)^p) = 0 when p divides n.
///
/// Zero values are kept in the map so the support is all of Par(n).
pub fn c_coefficients(n: u32, p: Prime) -> BTreeMap<Partition, BigInt> {
    assert!(n >= 1);
    let exceptional = n.is_multiple_of(p.get())
        .then(|| Partition::from_multiplicities([(n / p.get(), p.get())]));
    let mut out = BTreeMap::new();
    for (lambda, c) in level_step_coefficients(n, p) {
        let value = if Some(&lambda) == exceptional.as_ref() {
            BigInt::zero()
        } else {
            let c = BigInt::from(c);
            let (q, rem) = (&c / p.get(), &c % p.get());
            assert!(
                rem.is_zero(),
                "binomial·multinomial coefficient at {lambda} not divisible by {p}"
            );
            q
        };
        out.insert(lambda, value);
    }
    out
}

/// One row of the divisibility report behind the c coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityWitness {
    pub lambda: Partition,
    pub coefficient: String,
    pub divisible: bool,
    pub exceptional: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub n: u32,
    pub p: u32,
    /// True when every non-exceptional coefficient is divisible by p.
    pub all_pass: bool,
    pub witnesses: Vec<DivisibilityWitness>,
}

/// Check that p divides C(p, l(λ))·(l(λ) choose mults) for every λ ⊢ n except
/// the exceptional shape ((n/p)^p).
pub fn binomial_divisibility_check(n: u32, p: Prime) -> DivisibilityReport {
    let exceptional = n.is_multiple_of(p.get())
        .then(|| Partition::from_multiplicities([(n / p.get(), p.get())]));
    let witnesses: Vec<DivisibilityWitness> = level_step_coefficients(n, p)
        .into_iter()
        .map(|(lambda, c)| {
            let divisible = (&c % p.get()).is_zero();
            let exceptional = Some(&lambda) == exceptional.as_ref();
            DivisibilityWitness {
                lambda,
                coefficient: c.to_string(),
                divisible,
                exceptional,
            }
        })
        .collect();
    let all_pass = witnesses.iter().all(|w| w.divisible || w.exceptional);
    DivisibilityReport {
        n,
        p: p.get(),
        all_pass,
        witnesses,
    }
}

type CoeffTable = Vec<BTreeMap<Partition, BigInt>>; // indexed by generator - 1

/// The level bases g_l^{(i,r)} for one (p, r), generator indices ≤ d_max.
pub struct GBasis {
    pub p: Prime,
    pub r: u32,
    pub d_max: u32,
    /// coeff[s][l−1]: the coefficients c_l^{(s)}(λ); s = 0 is the top-level
    /// family (supported on (l) for l prime to p, on p-scaled partitions
    /// otherwise).
    coeff: Vec<CoeffTable>,
    /// h_levels[i][n]: plain-h expansion of the n-th level-i generator.
    h_levels: Vec<Vec<SymPoly>>,
    /// generators[i][l−1]: plain-h expansion of g_l^{(i,r)}.
    generators: Vec<Vec<SymPoly>>,
}

impl GBasis {
    /// Build the level bases by the p-adic induction. All divisions by p are
    /// exact for r ≤ p; a non-exact division is reported, which for r > p is
    /// an experimental finding rather than a bug.
    pub fn build(p: Prime, r: u32, d_max: u32) -> Result<GBasis> {
        assert!(r >= 1 && d_max >= 1);
        let h_levels = higher_homogeneous_table(d_max, r, p);
        let mut h1_products: BTreeMap<Partition, SymPoly> = BTreeMap::new();

        // coefficient tables c^{(s)} for s = 1..=r, built stage by stage
        let mut stages: Vec<CoeffTable> = Vec::with_capacity(r as usize);
        for s in 1..=r {
            let mut table: CoeffTable = Vec::with_capacity(d_max as usize);
            let mut level0: Vec<SymPoly> = Vec::with_capacity(d_max as usize);
            for l in 1..=d_max {
                let g1 = if s == 1 {
                    if l % p.get() != 0 {
                        h_level_product(
                            &h_levels,
                            1,
                            &Partition::new(vec![l]),
                            &mut h1_products,
                        )
                    } else {
                        let base = &table[(l / p.get()) as usize - 1];
                        let mut acc = SymPoly::zero(l, Basis::H);
                        for (mu, c) in base {
                            let scaled = mu.scale_parts(p.get());
                            let term = h_level_product(&h_levels, 1, &scaled, &mut h1_products);
                            acc = acc.add(&term.scale(&BigRational::from_integer(c.clone())));
                        }
                        acc
                    }
                } else {
                    let prev = &stages[s as usize - 2][l as usize - 1];
                    let mut acc = SymPoly::zero(l, Basis::H);
                    for (lambda, c) in prev {
                        let term = h_level_product(&h_levels, 1, lambda, &mut h1_products);
                        acc = acc.add(&term.scale(&BigRational::from_integer(c.clone())));
                    }
                    acc
                };
                let g0 = if l % p.get() != 0 {
                    g1.div_exact(p.get(), &format!("level-0 generator {l} at stage {s}"))?
                } else {
                    let lower: &SymPoly = &level0[(l / p.get()) as usize - 1];
                    g1.sub(&lower.pow_free(p.get()))
                        .div_exact(p.get(), &format!("level-0 generator {l} at stage {s}"))?
                };
                table.push(
                    g0.terms()
                        .map(|(lambda, c)| {
                            debug_assert!(c.is_integer());
                            (lambda.clone(), c.to_integer())
                        })
                        .collect(),
                );
                level0.push(g0);
            }
            stages.push(table);
        }

        // the top-level table c^{(0)}: δ at (l) for l prime to p, the
        // p-scaled stage-1 table otherwise
        let mut top: CoeffTable = Vec::with_capacity(d_max as usize);
        for l in 1..=d_max {
            if l % p.get() != 0 {
                top.push(BTreeMap::from([(Partition::new(vec![l]), BigInt::one())]));
            } else {
                let scaled = stages[0][(l / p.get()) as usize - 1]
                    .iter()
                    .map(|(mu, c)| (mu.scale_parts(p.get()), c.clone()))
                    .collect();
                top.push(scaled);
            }
        }
        let mut coeff = vec![top];
        coeff.extend(stages);

        // plain-h generator expansions per level
        let mut memos: Vec<BTreeMap<Partition, SymPoly>> =
            vec![BTreeMap::new(); r as usize + 1];
        let mut generators: Vec<Vec<SymPoly>> = Vec::with_capacity(r as usize + 1);
        for i in 0..=r {
            let table = &coeff[(r - i) as usize];
            let mut level_gens = Vec::with_capacity(d_max as usize);
            for l in 1..=d_max {
                let mut acc = SymPoly::zero(l, Basis::H);
                for (lambda, c) in &table[l as usize - 1] {
                    let term =
                        h_level_product(&h_levels, i, lambda, &mut memos[i as usize]);
                    acc = acc.add(&term.scale(&BigRational::from_integer(c.clone())));
                }
                level_gens.push(acc);
            }
            generators.push(level_gens);
        }

        Ok(GBasis {
            p,
            r,
            d_max,
            coeff,
            h_levels,
            generators,
        })
    }

    /// The coefficients c_l^{(s)}(λ) (nonzero entries only).
    pub fn coefficients(&self, s: u32, l: u32) -> &BTreeMap<Partition, BigInt> {
        &self.coeff[s as usize][l as usize - 1]
    }

    /// Plain-h expansion of the generator g_l^{(i,r)}.
    pub fn generator(&self, level: u32, l: u32) -> &SymPoly {
        &self.generators[level as usize][l as usize - 1]
    }

    /// Plain-h expansion of g_λ^{(i,r)} = Π_j g_{λ_j}^{(i,r)}.
    pub fn expansion(&self, level: u32, lambda: &Partition) -> SymPoly {
        let mut out = SymPoly::one(Basis::H);
        for &part in lambda.parts() {
            out = out.mul_free(self.generator(level, part));
        }
        out
    }

    /// Expansion of g_l^{(i,r)} over the level-i generators themselves,
    /// treating them as a free basis (the coefficients c_l^{(r−i)}).
    pub fn formal_generator(&self, level: u32, l: u32) -> SymPoly {
        let mut out = SymPoly::zero(l, Basis::H);
        for (lambda, c) in &self.coeff[(self.r - level) as usize][l as usize - 1] {
            out.add_term(lambda.clone(), BigRational::from_integer(c.clone()));
        }
        out
    }

    /// Plain-h expansion of h_λ^{(i)} = Π_j h_{λ_j}^{(i)}.
    pub fn h_level_expansion(&self, level: u32, lambda: &Partition) -> SymPoly {
        let mut memo = BTreeMap::new();
        h_level_product(&self.h_levels, level, lambda, &mut memo)
    }

    /// The transition matrix M(g^{(i,r)}, h^{(i)}) at degree d, over the
    /// canonical order at the i-th level.
    pub fn level_matrix(&self, level: u32, d: u32) -> Mat<BigInt> {
        let labels = enumerate_partitions(d);
        let n = labels.len();
        let mut mat = Mat::zeros(n, n);
        for (row, lambda) in labels.iter().enumerate() {
            let mut expanded = SymPoly::one(Basis::H);
            for &part in lambda.parts() {
                expanded = expanded.mul_free(&self.formal_generator(level, part));
            }
            for (mu, c) in expanded.terms() {
                let col = labels.binary_search(mu).expect("same degree");
                debug_assert!(c.is_integer());
                mat[(row, col)] = c.to_integer();
            }
        }
        mat
    }
}

fn h_level_product(
    h_levels: &[Vec<SymPoly>],
    level: u32,
    lambda: &Partition,
    memo: &mut BTreeMap<Partition, SymPoly>,
) -> SymPoly {
    if let Some(hit) = memo.get(lambda) {
        return hit.clone();
    }
    let mut out = SymPoly::one(Basis::H);
    for &part in lambda.parts() {
        out = out.mul_free(&h_levels[level as usize][part as usize]);
    }
    memo.insert(lambda.clone(), out.clone());
    out
}

/// True when the matrix is unitriangular with zeros below the diagonal.
pub fn is_upper_unitriangular(mat: &Mat<BigInt>) -> bool {
    if !mat.is_square() {
        return false;
    }
    for i in 0..mat.nrows() {
        if !mat[(i, i)].is_one() {
            return false;
        }
        for j in 0..i {
            if !mat[(i, j)].is_zero() {
                return false;
            }
        }
    }
    true
}

/// The multiplicative G family built from the r = 1 level basis.
///
/// Primitives: G_{(n^{p^i})} = g_{p^i·n} for (n,p) = 1, and
/// G_{(p^i·n)} = p·g_{p^i·n} + (g_{p^{i−1}·n})^p for i ≥ 1. General indices
/// follow the digit rule G_{(n^m)} = Π_j (G_{(n^{p^j})})^{a_j} for the p-adic
/// digits a_j of m, and G_{((p^i·n)^m)} = (G_{(p^i·n)})^m.
pub struct BigGBasis {
    pub p: Prime,
    pub d_max: u32,
    level: GBasis,
}

/// Build the G family for r = 1 with indices up to d_max.
pub fn big_g_basis(p: Prime, d_max: u32) -> Result<BigGBasis> {
    Ok(BigGBasis {
        p,
        d_max,
        level: GBasis::build(p, 1, d_max)?,
    })
}

/// A primitive G generator, identified by its prime-to-p core n and level i.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum GPrim {
    /// G_{(n^{p^i})} = g_{p^i·n}, the repeated-part primitive.
    Rep { n: u32, i: u32 },
    /// G_{(p^i·n)}, the single-part primitive (i ≥ 1).
    Single { n: u32, i: u32 },
}

type GMonomial = BTreeMap<GPrim, u32>;

impl BigGBasis {
    pub fn level_basis(&self) -> &GBasis {
        &self.level
    }

    fn rep(&self, n: u32, i: u32) -> &SymPoly {
        self.level.generator(0, n * self.p.get().pow(i))
    }

    fn single(&self, n: u32, i: u32) -> SymPoly {
        assert!(i >= 1);
        let p = self.p.get();
        let high = self.rep(n, i).scale(&BigRational::from_integer(BigInt::from(p)));
        high.add(&self.rep(n, i - 1).pow_free(p))
    }

    /// Plain-h expansion of G_λ.
    pub fn expansion(&self, lambda: &Partition) -> SymPoly {
        let mut out = SymPoly::one(Basis::H);
        for (value, mult) in lambda.part_multiplicities() {
            let (n, i) = split_p_power(value, self.p);
            if i == 0 {
                for (j, &digit) in p_adic_digits(mult, self.p).iter().enumerate() {
                    for _ in 0..digit {
                        out = out.mul_free(self.rep(n, j as u32));
                    }
                }
            } else {
                let single = self.single(n, i);
                for _ in 0..mult {
                    out = out.mul_free(&single);
                }
            }
        }
        out
    }

    /// M(G, h) at degree d: row λ holds the plain-h expansion of G_λ.
    pub fn matrix_over_h(&self, d: u32) -> Mat<BigInt> {
        let labels = enumerate_partitions(d);
        let n = labels.len();
        let mut mat = Mat::zeros(n, n);
        for (row, lambda) in labels.iter().enumerate() {
            for (mu, c) in self.expansion(lambda).terms() {
                let col = labels.binary_search(mu).expect("same degree");
                debug_assert!(c.is_integer());
                mat[(row, col)] = c.to_integer();
            }
        }
        mat
    }

    /// Expansion of the level-0 basis element g_μ over the G family, by
    /// index rewriting with the defining relation.
    pub fn g_element_in_basis(&self, mu: &Partition) -> BTreeMap<Partition, BigInt> {
        let mut start = GMonomial::new();
        for (value, mult) in mu.part_multiplicities() {
            let (n, i) = split_p_power(value, self.p);
            *start.entry(GPrim::Rep { n, i }).or_insert(0) += mult;
        }
        self.rewrite(start)
    }

    /// Expansion of (G_{(n^{p^{i−j}})})^{p^j} over the G family (0 ≤ j ≤ i).
    pub fn rep_power_in_basis(&self, n: u32, i: u32, j: u32) -> BTreeMap<Partition, BigInt> {
        assert!(j <= i && !n.is_multiple_of(self.p.get()));
        let start = GMonomial::from([(GPrim::Rep { n, i: i - j }, self.p.get().pow(j))]);
        self.rewrite(start)
    }

    /// Expansion of (G_{(n)})^m over the G family for any m ≥ 1.
    pub fn primitive_power_in_basis(&self, n: u32, m: u32) -> BTreeMap<Partition, BigInt> {
        assert!(m >= 1 && !n.is_multiple_of(self.p.get()));
        let start = GMonomial::from([(GPrim::Rep { n, i: 0 }, m)]);
        self.rewrite(start)
    }

    /// Σ c_λ·G_λ as a plain-h polynomial, for validating index rewrites.
    pub fn combination_to_h(&self, combo: &BTreeMap<Partition, BigInt>, degree: u32) -> SymPoly {
        let mut out = SymPoly::zero(degree, Basis::H);
        for (lambda, c) in combo {
            out = out.add(
                &self
                    .expansion(lambda)
                    .scale(&BigRational::from_integer(c.clone())),
            );
        }
        out
    }

    /// Rewrite (G_{(n^{p^i})})^p → G_{(p^{i+1}·n)} − p·G_{(n^{p^{i+1}})} until
    /// every repeated-part exponent is a p-adic digit, then read the G index.
    fn rewrite(&self, start: GMonomial) -> BTreeMap<Partition, BigInt> {
        let p = self.p.get();
        let mut done: BTreeMap<Partition, BigInt> = BTreeMap::new();
        let mut pending: Vec<(GMonomial, BigInt)> = vec![(start, BigInt::one())];
        while let Some((monomial, coeff)) = pending.pop() {
            let reducible = monomial.iter().find_map(|(&prim, &e)| match prim {
                GPrim::Rep { n, i } if e >= p => Some((n, i, e)),
                _ => None,
            });
            match reducible {
                Some((n, i, e)) => {
                    let mut base = monomial.clone();
                    if e == p {
                        base.remove(&GPrim::Rep { n, i });
                    } else {
                        base.insert(GPrim::Rep { n, i }, e - p);
                    }
                    let mut with_single = base.clone();
                    *with_single
                        .entry(GPrim::Single { n, i: i + 1 })
                        .or_insert(0) += 1;
                    pending.push((with_single, coeff.clone()));
                    let mut with_rep = base;
                    *with_rep.entry(GPrim::Rep { n, i: i + 1 }).or_insert(0) += 1;
                    pending.push((with_rep, -coeff * p));
                }
                None => {
                    let lambda = self.monomial_index(&monomial);
                    let entry = done.entry(lambda.clone()).or_insert_with(BigInt::zero);
                    *entry += coeff;
                    if entry.is_zero() {
                        done.remove(&lambda);
                    }
                }
            }
        }
        done
    }

    /// The partition indexing a canonical monomial: Rep{n,i}^e contributes
    /// e·p^i parts equal to n, Single{n,i}^f contributes f parts p^i·n.
    fn monomial_index(&self, monomial: &GMonomial) -> Partition {
        let mut mults: BTreeMap<u32, u32> = BTreeMap::new();
        for (&prim, &e) in monomial {
            match prim {
                GPrim::Rep { n, i } => *mults.entry(n).or_insert(0) += e * self.p.get().pow(i),
                GPrim::Single { n, i } => {
                    *mults.entry(n * self.p.get().pow(i)).or_insert(0) += e
                }
            }
        }
        Partition::from_multiplicities(mults)
    }
}

/// value = p^i · n with (n, p) = 1.
fn split_p_power(value: u32, p: Prime) -> (u32, u32) {
    let mut n = value;
    let mut i = 0;
    while n.is_multiple_of(p.get()) {
        n /= p.get();
        i += 1;
    }
    (n, i)
}

/// The M family at one degree: M(M, m) = Zᵀ for Z = M(h^{(r)}, g^{(r,r)}).
pub struct MBasis {
    pub p: Prime,
    pub r: u32,
    pub degree: u32,
    labels: Vec<Partition>,
    z: Mat<BigInt>,
}

impl MBasis {
    pub fn z_matrix(&self) -> &Mat<BigInt> {
        &self.z
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    /// M_λ in the monomial basis: column λ of Z.
    pub fn expansion(&self, lambda: &Partition) -> SymPoly {
        let col = self.labels.binary_search(lambda).expect("degree matches");
        let mut out = SymPoly::zero(self.degree, Basis::M);
        for (row, mu) in self.labels.iter().enumerate() {
            out.add_term(mu.clone(), BigRational::from_integer(self.z[(row, col)].clone()));
        }
        out
    }
}

/// Build the M family at degree d from an already-built level basis.
pub fn m_basis_from(level: &GBasis, d: u32) -> Result<MBasis> {
    assert!(d <= level.d_max);
    let labels = enumerate_partitions(d);
    let n = labels.len();
    // Z solves Z·G = H over the plain-h coefficient matrices
    let mut g = Mat::zeros(n, n);
    let mut h = Mat::zeros(n, n);
    for (row, lambda) in labels.iter().enumerate() {
        for (mu, c) in level.expansion(level.r, lambda).terms() {
            let col = labels.binary_search(mu).expect("same degree");
            g[(row, col)] = c.to_integer();
        }
        for (mu, c) in level.h_level_expansion(level.r, lambda).terms() {
            let col = labels.binary_search(mu).expect("same degree");
            h[(row, col)] = c.to_integer();
        }
    }
    let zt = g
        .transpose()
        .solve(&h.transpose())
        .ok_or_else(|| Error::CrossCheckFailed("top-level basis matrix is singular".into()))?;
    let z = zt.transpose().to_integer()?;
    Ok(MBasis {
        p: level.p,
        r: level.r,
        degree: d,
        labels,
        z,
    })
}

/// Build the M family at degree d for the given (p, r).
pub fn m_basis(p: Prime, r: u32, d: u32) -> Result<MBasis> {
    let level = GBasis::build(p, r, d.max(1))?;
    m_basis_from(&level, d)
}

/// The matrix of coefficients of G_λ(x)M_μ(y) in the p-form generating
/// series: a unimodular change of basis of X_p on both sides, so its Smith
/// normal form equals that of X_p. Row λ is divisible by its diagonal entry,
/// which is ±D₁(λ).
pub fn gm_coefficient_matrix(p: Prime, d: u32) -> Result<LabeledMatrix<Partition>> {
    assert!(d >= 1);
    let big_g = big_g_basis(p, d)?;
    let m = m_basis_from(big_g.level_basis(), d)?;
    let x = gram_s_form(p.get(), d)?;
    let w_t_inv = big_g
        .matrix_over_h(d)
        .transpose()
        .inverse()
        .ok_or_else(|| Error::CrossCheckFailed("G-basis matrix is singular".into()))?;
    let z_t_inv = m
        .z_matrix()
        .transpose()
        .inverse()
        .ok_or_else(|| Error::CrossCheckFailed("M-basis matrix is singular".into()))?;
    let gm = w_t_inv
        .mul(&x.mat.to_rational())
        .mul(&z_t_inv)
        .to_integer()?;
    Ok(LabeledMatrix::new(x.row_labels, x.col_labels, gm))
}

/// Divide each row of a square matrix by its diagonal entry, failing if any
/// entry is not divisible. Used to extract the residual (unimodular) part of
/// the G/M coefficient matrix.
pub fn rows_reduced_by_diagonal(mat: &Mat<BigInt>) -> Result<Mat<BigInt>> {
    assert!(mat.is_square());
    let n = mat.nrows();
    let mut out = Mat::zeros(n, n);
    for i in 0..n {
        let pivot = &mat[(i, i)];
        if pivot.is_zero() {
            return Err(Error::CrossCheckFailed(format!("zero diagonal at row {i}")));
        }
        for j in 0..n {
            let (q, rem) = (&mat[(i, j)] / pivot, &mat[(i, j)] % pivot);
            if !rem.is_zero() {
                return Err(Error::NonIntegralEntry {
                    row: i,
                    col: j,
                    value: format!("{}/{}", mat[(i, j)], pivot),
                });
            }
            out[(i, j)] = q;
        }
    }
    Ok(out)
}

/// True when `finer` can be obtained by splitting parts of `coarser` into
/// pieces (equivalently, the parts of `finer` group into blocks summing to
/// the parts of `coarser`).
pub fn refines(finer: &Partition, coarser: &Partition) -> bool {
    if finer.size() != coarser.size() {
        return false;
    }
    fn assign(remaining: &mut BTreeMap<u32, u32>, targets: &[u32]) -> bool {
        let Some((&t, rest)) = targets.split_first() else {
            return remaining.values().all(|&m| m == 0);
        };
        let values: Vec<u32> = remaining
            .iter()
            .filter(|&(_, &m)| m > 0)
            .map(|(&v, _)| v)
            .collect();
        subsets_summing(remaining, &values, 0, t, &mut |rem| assign(rem, rest))
    }
    fn subsets_summing(
        remaining: &mut BTreeMap<u32, u32>,
        values: &[u32],
        idx: usize,
        target: u32,
        callback: &mut impl FnMut(&mut BTreeMap<u32, u32>) -> bool,
    ) -> bool {
        if target == 0 {
            return callback(remaining);
        }
        if idx >= values.len() {
            return false;
        }
        let v = values[idx];
        let available = remaining[&v];
        let max_take = available.min(target / v);
        let mut found = false;
        for take in 0..=max_take {
            *remaining.get_mut(&v).unwrap() = available - take;
            if subsets_summing(remaining, values, idx + 1, target - v * take, callback) {
                found = true;
                break;
            }
        }
        *remaining.get_mut(&v).unwrap() = available;
        found
    }
    let mut remaining = finer.part_multiplicities();
    assign(&mut remaining, coarser.parts())
}

/// A named pass/fail outcome of one structural property check.
#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    pub name: String,
    pub pass: bool,
}

fn check(name: impl Into<String>, pass: bool) -> BasisCheck {
    BasisCheck {
        name: name.into(),
        pass,
    }
}

/// Structural properties of the level bases: the prime-to-p level scaling,
/// the level recursion, lead coefficients, the index-scaling identity of the
/// c tables, integrality of level 0, and unitriangularity of the level
/// transition matrices.
pub fn g_basis_property_checks(g: &GBasis) -> Vec<BasisCheck> {
    let p = g.p.get();
    let mut checks = Vec::new();

    let mut scaling = true;
    for l in 1..=g.d_max {
        if l % p == 0 {
            continue;
        }
        let top = g.generator(g.r, l);
        for i in 0..=g.r {
            let scale = BigRational::from_integer(BigInt::from(p).pow(g.r - i));
            if *top != g.generator(i, l).scale(&scale) {
                scaling = false;
            }
        }
    }
    checks.push(check("prime-to-p generators scale by p^(r-i) across levels", scaling));

    let mut recursion = true;
    for l in 1..=g.d_max / p {
        for i in 1..=g.r {
            let left = g.generator(i, p * l);
            let right = g
                .generator(i - 1, p * l)
                .scale(&BigRational::from_integer(BigInt::from(p)))
                .add(&g.generator(i - 1, l).pow_free(p));
            if *left != right {
                recursion = false;
            }
        }
    }
    checks.push(check(
        "level recursion g_{pl}^{(i)} = p·g_{pl}^{(i-1)} + (g_l^{(i-1)})^p",
        recursion,
    ));

    let lead = (1..=g.d_max).all(|l| {
        (0..=g.r).all(|s| {
            g.coeff[s as usize][l as usize - 1]
                .get(&Partition::new(vec![l]))
                .is_some_and(|c| c.is_one())
        })
    });
    checks.push(check("lead coefficient c_l((l)) = 1 at every level", lead));

    let mut index_scaling = true;
    for s in 1..=g.r {
        for l in 1..=g.d_max / p {
            let scaled: BTreeMap<Partition, BigInt> = g.coeff[s as usize][l as usize - 1]
                .iter()
                .map(|(mu, c)| (mu.scale_parts(p), c.clone()))
                .collect();
            let restricted: BTreeMap<Partition, BigInt> = g.coeff[s as usize - 1]
                [(p * l) as usize - 1]
                .iter()
                .filter(|(lambda, _)| lambda.parts().iter().all(|&x| x % p == 0))
                .map(|(lambda, c)| (lambda.clone(), c.clone()))
                .collect();
            if scaled != restricted {
                index_scaling = false;
            }
        }
    }
    checks.push(check(
        "index scaling c_{pl}^{(s-1)}(pλ) = c_l^{(s)}(λ)",
        index_scaling,
    ));

    let integral = (1..=g.d_max).all(|l| g.generator(0, l).is_integral());
    checks.push(check("level-0 generators have integer coefficients", integral));

    let tri_max = g.d_max.min(6);
    let unitriangular = (0..=g.r).all(|i| {
        (1..=tri_max).all(|d| is_upper_unitriangular(&g.level_matrix(i, d)))
    });
    checks.push(check(
        "level transition matrices are upper unitriangular",
        unitriangular,
    ));

    checks
}

/// Structural properties of the G family: unimodularity over h and the
/// digit-product lead coefficients of powers of the degree-n primitive.
pub fn big_g_property_checks(gb: &BigGBasis) -> Vec<BasisCheck> {
    let p = gb.p;
    let mut checks = Vec::new();

    let unimodular = (1..=gb.d_max).all(|d| gb.matrix_over_h(d).det().abs() == BigInt::one());
    checks.push(check("M(G,h) is unimodular at every degree", unimodular));

    let small = gb.d_max.min(5);
    let round_trip = (1..=small).all(|d| {
        enumerate_partitions(d).iter().all(|mu| {
            let combo = gb.g_element_in_basis(mu);
            gb.combination_to_h(&combo, d) == gb.level_basis().expansion(0, mu)
        })
    });
    checks.push(check(
        "index rewriting re-expands the level basis exactly",
        round_trip,
    ));

    let digit_lead = (1..=gb.d_max).all(|m| {
        let combo = gb.primitive_power_in_basis(1, m);
        let target = Partition::from_multiplicities([(1, m)]);
        combo.get(&target).is_some_and(|lead| {
            lead.magnitude() == &BigUint::from(p.get()).pow(crate::partitions::d_p(m, p))
        })
    });
    checks.push(check(
        "coefficient of G_(n^m) in (G_(n))^m is ±p^{d_p(m)}",
        digit_lead,
    ));

    checks
}

/// Structural properties of the M family: unitriangularity of Z, its
/// unimodularity and independence of the level parameter.
pub fn m_basis_property_checks(p: Prime, r: u32, d_max: u32) -> Result<Vec<BasisCheck>> {
    let mut checks = Vec::new();
    let level = GBasis::build(p, r, d_max.max(1))?;
    let mut unitriangular = true;
    let mut unimodular = true;
    let mut level_independent = true;
    for d in 1..=d_max {
        let m = m_basis_from(&level, d)?;
        if !is_upper_unitriangular(m.z_matrix()) {
            unitriangular = false;
        }
        if m.z_matrix().det().abs() != BigInt::one() {
            unimodular = false;
        }
        if r >= 2 {
            let base = m_basis(p, 1, d)?;
            if base.z_matrix() != m.z_matrix() {
                level_independent = false;
            }
        }
    }
    checks.push(check("Z is upper unitriangular", unitriangular));
    checks.push(check("det M(M,m) = ±1", unimodular));
    if r >= 2 {
        checks.push(check("Z is the same for all levels", level_independent));
    }
    Ok(checks)
}
