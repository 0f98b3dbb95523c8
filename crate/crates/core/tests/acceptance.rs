//! Acceptance suite: every headline claim is exercised end to end at desk
//! scale, exactly (no tolerances anywhere — all arithmetic is exact).
//!
//! Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::HashMap;

use common::{pt, snf_by_minor_gcds};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shapoform::bases::{
    binomial_divisibility_check, c_coefficients, g_basis_property_checks, gm_coefficient_matrix,
    GBasis,
};
use shapoform::divisors::{
    check_conjecture, d_r, predicted_prime_power, predicted_shapovalov_standard,
    InvariantMultiset,
};
use shapoform::forms::{
    cartan, gram_power, gram_s_form, gram_s_form_conjugation, gram_s_form_direct,
    shapovalov_gram, CartanFamily,
};
use shapoform::matrix::{int_mat, Mat};
use shapoform::partitions::{enumerate_partitions, Prime};
use shapoform::snf::smith_normal_form;

fn finish(number: u32, name: &str, failures: Vec<String>) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number} ({name}): {status}");
    assert!(
        failures.is_empty(),
        "criterion {number} ({name}) failed:\n{}",
        failures.join("\n")
    );
}

/// Criterion 1: the closed-form divisors reproduce SNF(X_{p^r}) throughout
/// the proven regime r ≤ p.
#[test]
fn criterion_1_prime_power_sweep() {
    let mut failures = Vec::new();
    for (praw, r, dmax) in [(2u32, 1u32, 8u32), (2, 2, 8), (3, 1, 8), (3, 2, 8), (3, 3, 6), (5, 1, 8)] {
        let p = Prime::new(praw).unwrap();
        for d in 0..=dmax {
            let gram = gram_power(praw, r, d).unwrap();
            let computed = InvariantMultiset::from(&smith_normal_form(&gram.mat, false));
            let predicted = predicted_prime_power(p, r, d);
            if computed != predicted {
                failures.push(format!("p={praw}, r={r}, d={d}: {computed:?} vs {predicted:?}"));
            }
        }
    }
    finish(1, "SNF of the p^r-form equals the closed-form multiset", failures);
}

/// Criterion 2: multiplicativity of the Gram matrices and of their Smith
/// normal forms for coprime parameters.
#[test]
fn criterion_2_multiplicativity() {
    let mut failures = Vec::new();
    let mut cache: HashMap<(u32, u32), Mat<BigInt>> = HashMap::new();
    let mut gram = |s: u32, d: u32, failures: &mut Vec<String>| -> Mat<BigInt> {
        cache
            .entry((s, d))
            .or_insert_with(|| match gram_s_form(s, d) {
                Ok(x) => x.mat,
                Err(e) => {
                    failures.push(format!("gram_s_form({s},{d}) failed: {e}"));
                    Mat::zeros(0, 0)
                }
            })
            .clone()
    };
    for d in 0..=6u32 {
        for s in 1..=5u32 {
            for t in 1..=5u32 {
                let xs = gram(s, d, &mut failures);
                let xt = gram(t, d, &mut failures);
                let xst = gram(s * t, d, &mut failures);
                if xst != xs.mul(&xt) {
                    failures.push(format!("X_{} ≠ X_{s}·X_{t} at d={d}", s * t));
                }
            }
        }
        let s2 = smith_normal_form(&gram(2, d, &mut failures), false);
        let s3 = smith_normal_form(&gram(3, d, &mut failures), false);
        let s6 = smith_normal_form(&gram(6, d, &mut failures), false);
        match shapoform::snf::snf_pointwise_product(&s2, &s3) {
            Ok(product) => {
                if product.invariant_factors() != s6.invariant_factors() {
                    failures.push(format!("S(X₆) ≠ S(X₂)·S(X₃) at d={d}"));
                }
            }
            Err(e) => failures.push(format!("pointwise product failed at d={d}: {e}")),
        }
    }
    finish(2, "X_st = X_s·X_t and S splits over coprime factors", failures);
}

/// Criterion 3: the Shapovalov Gram SNF equals the product-formula
/// prediction across ADE types (D-series exercises the 4 = 2² path).
#[test]
fn criterion_3_shapovalov_sweep() {
    let mut failures = Vec::new();
    let cases = [
        (CartanFamily::A, 1u32, 6u32),
        (CartanFamily::A, 2, 4),
        (CartanFamily::A, 3, 3),
        (CartanFamily::D, 4, 3),
        (CartanFamily::D, 5, 2),
        (CartanFamily::E, 6, 2),
    ];
    for (family, rank, dmax) in cases {
        let spec = cartan(family, rank).unwrap();
        let invariants: Vec<u32> = spec
            .invariant_factors()
            .iter()
            .map(|a| u32::try_from(a).unwrap())
            .collect();
        for d in 0..=dmax {
            let gram = match shapovalov_gram(spec.matrix(), d) {
                Ok(g) => g,
                Err(e) => {
                    failures.push(format!("{}_{rank} d={d}: gram failed: {e}", family.letter()));
                    continue;
                }
            };
            let computed = InvariantMultiset::from(&smith_normal_form(&gram.mat, false));
            match predicted_shapovalov_standard(&invariants, d) {
                Ok((predicted, _)) => {
                    if computed != predicted {
                        failures.push(format!(
                            "{}_{rank} d={d}: {computed:?} vs {predicted:?}",
                            family.letter()
                        ));
                    }
                }
                Err(e) => failures.push(format!("{}_{rank} d={d}: prediction failed: {e}", family.letter())),
            }
        }
    }
    finish(3, "Shapovalov SNF equals the product-formula prediction", failures);
}

/// Criterion 4: the two Gram algorithms agree entrywise, and the 1-form is
/// the identity.
#[test]
fn criterion_4_two_algorithm_oracle() {
    let mut failures = Vec::new();
    for s in 1..=6u32 {
        for d in 0..=7u32 {
            let direct = gram_s_form_direct(s, d);
            match gram_s_form_conjugation(s, d) {
                Ok(conjugated) => {
                    if direct != conjugated {
                        failures.push(format!("algorithms disagree at s={s}, d={d}"));
                    }
                }
                Err(e) => failures.push(format!("conjugation failed at s={s}, d={d}: {e}")),
            }
        }
    }
    for d in 0..=10u32 {
        match gram_s_form(1, d) {
            Ok(x) => {
                if x.mat != Mat::identity(x.mat.nrows()) {
                    failures.push(format!("X₁ is not the identity at d={d}"));
                }
            }
            Err(e) => failures.push(format!("X₁ failed at d={d}: {e}")),
        }
    }
    finish(4, "independent Gram algorithms agree; X₁ = I", failures);
}

/// Criterion 5: determinant identities for the Gram matrices and the
/// closed-form divisors over the sweep ranges.
#[test]
fn criterion_5_determinant_identities() {
    let mut failures = Vec::new();
    for s in 2..=6u32 {
        for d in 0..=7u32 {
            let x = gram_s_form(s, d).unwrap();
            let total_length: u32 = enumerate_partitions(d).iter().map(|l| l.len() as u32).sum();
            if x.mat.det().abs() != BigInt::from(s).pow(total_length) {
                failures.push(format!("|det X_{s}| ≠ {s}^Σl(λ) at d={d}"));
            }
        }
    }
    for (praw, r, dmax) in [(2u32, 1u32, 8u32), (2, 2, 8), (3, 1, 8), (3, 2, 8), (3, 3, 6), (5, 1, 8)] {
        let p = Prime::new(praw).unwrap();
        for d in 0..=dmax {
            let labels = enumerate_partitions(d);
            let product: BigUint = labels.iter().map(|lambda| d_r(lambda, p, r)).product();
            let total_length: u32 = labels.iter().map(|l| l.len() as u32).sum();
            if product != BigUint::from(praw).pow(r * total_length) {
                failures.push(format!("Π D_r ≠ p^(r·Σl) at p={praw}, r={r}, d={d}"));
            }
        }
    }
    finish(5, "determinant identities for X_s and the divisor products", failures);
}

/// Criterion 6: the level-basis construction suite.
#[test]
fn criterion_6_basis_construction() {
    let mut failures = Vec::new();
    for (praw, rmax) in [(2u32, 2u32), (3, 3)] {
        let p = Prime::new(praw).unwrap();
        for r in 1..=rmax {
            match GBasis::build(p, r, 9) {
                Ok(g) => {
                    for result in g_basis_property_checks(&g) {
                        if !result.pass {
                            failures.push(format!("p={praw}, r={r}: {}", result.name));
                        }
                    }
                }
                Err(e) => failures.push(format!("build failed at p={praw}, r={r}: {e}")),
            }
        }
        for n in 1..=9u32 {
            if !binomial_divisibility_check(n, p).all_pass {
                failures.push(format!("binomial divisibility fails at p={praw}, n={n}"));
            }
        }
        // index-scaling identity of the formula coefficients
        for n in 1..=9 / praw {
            let low = c_coefficients(n, p);
            let high = c_coefficients(praw * n, p);
            for (lambda, c) in &low {
                if high[&lambda.scale_parts(praw)] != *c {
                    failures.push(format!("c_{{pn}}(pλ) ≠ c_n(λ) at p={praw}, n={n}, λ={lambda}"));
                }
            }
        }
    }
    finish(6, "level bases satisfy the structural identities", failures);
}

/// Criterion 7: the G/M coefficient matrix carries ±D₁(λ) on the diagonal,
/// rows divisible by their diagonal entry, and the same SNF as X_p.
#[test]
fn criterion_7_coefficient_matrix_suite() {
    let mut failures = Vec::new();
    for praw in [2u32, 3] {
        let p = Prime::new(praw).unwrap();
        for d in 1..=5u32 {
            let gm = match gm_coefficient_matrix(p, d) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("p={praw}, d={d}: {e}"));
                    continue;
                }
            };
            for (i, lambda) in gm.row_labels.iter().enumerate() {
                if *gm.mat[(i, i)].magnitude() != d_r(lambda, p, 1) {
                    failures.push(format!("p={praw}, d={d}: diagonal at {lambda}"));
                }
                for j in 0..gm.mat.ncols() {
                    if !(&gm.mat[(i, j)] % &gm.mat[(i, i)]).is_zero() {
                        failures.push(format!("p={praw}, d={d}: row {lambda} not divisible"));
                    }
                }
            }
            let snf = InvariantMultiset::from(&smith_normal_form(&gm.mat, false));
            if snf != predicted_prime_power(p, 1, d) {
                failures.push(format!("p={praw}, d={d}: SNF mismatch"));
            }
        }
    }
    finish(7, "G/M coefficient matrix has diagonal ±D₁ and matching SNF", failures);
}

/// Criterion 8: the SNF kernel against the determinantal-divisor oracle and
/// exact U·A·V reconstruction on a fixed 200-case random corpus plus the
/// worked matrices.
#[test]
fn criterion_8_snf_kernel() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x53686170);
    let mut corpus: Vec<Mat<BigInt>> = Vec::new();
    for _ in 0..200 {
        let m = rng.gen_range(1..=8usize);
        let n = rng.gen_range(1..=8usize);
        let mut mat = Mat::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                mat[(i, j)] = BigInt::from(rng.gen_range(-20i64..=20));
            }
        }
        corpus.push(mat);
    }
    corpus.push(int_mat(&[&[2, 0], &[1, 4]]));
    corpus.push(int_mat(&[&[2, 0, 0], &[2, 4, 0], &[0, 2, 8]]));
    corpus.push(int_mat(&[&[4, 0], &[0, 6]]));
    corpus.push(cartan(CartanFamily::A, 2).unwrap().matrix().clone());
    corpus.push(cartan(CartanFamily::D, 4).unwrap().matrix().clone());
    corpus.push(cartan(CartanFamily::E, 6).unwrap().matrix().clone());

    for (k, a) in corpus.iter().enumerate() {
        let result = smith_normal_form(a, true);
        if !result.is_divisibility_chain() {
            failures.push(format!("case {k}: factors not a divisibility chain"));
        }
        let (u, v) = result.transforms().unwrap();
        if !u.det().abs().is_one() || !v.det().abs().is_one() {
            failures.push(format!("case {k}: transform not unimodular"));
        }
        let uav = u.mul(a).mul(v);
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let expected = if i == j {
                    BigInt::from(result.invariant_factors()[i].clone())
                } else {
                    BigInt::zero()
                };
                if uav[(i, j)] != expected {
                    failures.push(format!("case {k}: U·A·V not diagonal at ({i},{j})"));
                }
            }
        }
        if a.is_square() {
            let det = a.det();
            if !det.is_zero() {
                let product: BigUint = result.invariant_factors().iter().product();
                if product != *det.magnitude() {
                    failures.push(format!("case {k}: Π dᵢ ≠ |det|"));
                }
            }
        }
        if a.nrows().min(a.ncols()) <= 5
            && result.invariant_factors() != snf_by_minor_gcds(a) {
                failures.push(format!("case {k}: minor-gcd oracle disagrees"));
            }
    }
    finish(8, "SNF kernel matches the minor-gcd oracle with exact transforms", failures);
}

/// Criterion 9 (non-blocking probe): the conjectural regime r > p produces a
/// well-formed report; the match outcome is recorded, not asserted.
#[test]
fn criterion_9_conjecture_probe() {
    let p = Prime::new(2).unwrap();
    let report = check_conjecture(p, 3, 5).unwrap();
    let mut failures = Vec::new();
    if report.proven_regime {
        failures.push("r = 3 > p = 2 must be flagged conjectural".into());
    }
    if report.degrees.len() != 6 {
        failures.push(format!("expected 6 degrees, got {}", report.degrees.len()));
    }
    for c in &report.degrees {
        let dim = enumerate_partitions(c.d).len();
        if c.computed.len() != dim || c.predicted.len() != dim {
            failures.push(format!("degree {} has wrong multiset size", c.d));
        }
    }
    let json = serde_json::to_value(&report).unwrap();
    for field in ["p", "r", "degrees"] {
        if json.get(field).is_none() {
            failures.push(format!("report JSON lacks field {field}"));
        }
    }
    println!(
        "criterion 9 note: conjectural probe p=2, r=3, d ≤ 5 recorded match={}",
        report.all_match()
    );
    finish(9, "conjectural-regime probe emits a well-formed report", failures);
}

/// The worked example ties the pieces together: the degree-3 matrix of the
/// 2-form, its SNF, and the closed-form multiset all agree.
#[test]
fn worked_example_round_trip() {
    let x = gram_s_form(2, 3).unwrap();
    assert_eq!(x.mat, int_mat(&[&[2, 0, 0], &[2, 4, 0], &[0, 2, 8]]));
    assert_eq!(x.row_labels, vec![pt(&[3]), pt(&[2, 1]), pt(&[1, 1, 1])]);
    let snf = smith_normal_form(&x.mat, false);
    let p2 = Prime::new(2).unwrap();
    assert_eq!(InvariantMultiset::from(&snf), predicted_prime_power(p2, 1, 3));
}
