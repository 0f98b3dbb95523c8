//! Property sweeps for the library modules: transition-matrix identities,
//! Gram determinants and triangularity, congruences of the higher
//! homogeneous functions, coprime splitting, closed-form divisor identities
//! and the lead-coefficient structure of the multiplicative G family.

mod common;

use std::collections::BTreeMap;

use common::pt;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use shapoform::bases::big_g_basis;
use shapoform::divisors::{d_r, predicted_shapovalov, standard_factor_oracle, InvariantMultiset};
use shapoform::forms::{fock_pairing, gram_entry, gram_s_form, shapovalov_gram, ColoredGen};
use shapoform::matrix::{int_mat, Mat};
use shapoform::partitions::{
    enumerate_multipartitions, enumerate_partitions, z_of, Partition, Prime,
};
use shapoform::snf::{smith_normal_form, snf_pointwise_product};
use shapoform::symfunc::{
    l_matrix, level_step_coefficients, n_matrix, transition_matrix, Basis, SymPoly,
};

#[test]
fn transition_formulas_agree() {
    // M(h,m)·M(m,p) = M(h,p) and M(h,p) = M(p,m)ᵀ·diag(z_λ)⁻¹, entrywise
    for d in 0..=8 {
        let labels = enumerate_partitions(d);
        let hp = transition_matrix(Basis::H, Basis::P, d).unwrap().matrix.mat;
        let hm = transition_matrix(Basis::H, Basis::M, d).unwrap().matrix.mat;
        let mp = transition_matrix(Basis::M, Basis::P, d).unwrap().matrix.mat;
        assert!(hm.mul(&mp) == hp, "composition route differs at d={d}");

        let l = l_matrix(d);
        let n = labels.len();
        let mut transposed_route = Mat::<BigRational>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                transposed_route[(i, j)] = BigRational::new(
                    l[(j, i)].clone(),
                    BigInt::from(z_of(&labels[j])),
                );
            }
        }
        assert!(transposed_route == hp, "transpose route differs at d={d}");
    }
}

#[test]
fn transition_determinants() {
    // |det N| = 1; det L = ± Π_{λ⊢d} (product of the parts of λ)
    for d in 0..=8 {
        assert!(n_matrix(d).det().abs().is_one(), "det N at d={d}");
    }
    for d in 0..=7 {
        let det = l_matrix(d).det().abs();
        let mut expected = BigInt::one();
        for lambda in enumerate_partitions(d) {
            for &part in lambda.parts() {
                expected *= BigInt::from(part);
            }
        }
        assert_eq!(det, expected, "det L at d={d}");
    }
}

fn all_coefficients_divisible(f: &SymPoly, p: u32) -> bool {
    f.terms().all(|(_, c)| {
        c.is_integer() && (c.to_integer() % BigInt::from(p)).is_zero()
    })
}

/// One application of the level-lowering recursion as a free h-polynomial.
fn level_step(m: u32, p: Prime) -> SymPoly {
    let mut out = SymPoly::zero(m, Basis::H);
    for (lambda, c) in level_step_coefficients(m, p) {
        out.add_term(lambda, BigRational::from_integer(BigInt::from(c)));
    }
    out
}

#[test]
fn higher_homogeneous_congruences() {
    // compared one level down: h_{pλ} ≡ (h_λ)^p and, when λ has a part prime
    // to p, h_λ ≡ 0, both mod p
    for praw in [2u32, 3] {
        let p = Prime::new(praw).unwrap();
        for n in 1..=6u32 {
            for lambda in enumerate_partitions(n) {
                let mut scaled_step = SymPoly::one(Basis::H);
                for &part in lambda.parts() {
                    scaled_step = scaled_step.mul_free(&level_step(praw * part, p));
                }
                let repeated = Partition::from_multiplicities(
                    lambda
                        .part_multiplicities()
                        .into_iter()
                        .map(|(v, m)| (v, m * praw)),
                );
                let power = SymPoly::basis_element(Basis::H, repeated);
                assert!(
                    all_coefficients_divisible(&scaled_step.sub(&power), praw),
                    "p={praw}, λ={lambda}"
                );

                if lambda.parts().iter().any(|&x| x % praw != 0) {
                    let mut step = SymPoly::one(Basis::H);
                    for &part in lambda.parts() {
                        step = step.mul_free(&level_step(part, p));
                    }
                    assert!(
                        all_coefficients_divisible(&step, praw),
                        "vanishing mod p fails at p={praw}, λ={lambda}"
                    );
                }
            }
        }
    }
}

#[test]
fn gram_determinant_identity() {
    // |det X_s| = s^{Σ_{λ⊢d} l(λ)}
    for s in 2..=5u32 {
        for d in 0..=7u32 {
            let x = gram_s_form(s, d).unwrap();
            let total_length: u32 = enumerate_partitions(d).iter().map(|l| l.len() as u32).sum();
            assert_eq!(
                x.mat.det().abs(),
                BigInt::from(s).pow(total_length),
                "s={s}, d={d}"
            );
        }
    }
}

#[test]
fn gram_is_lower_triangular_with_known_corners() {
    for s in 2..=4u32 {
        for d in 1..=6u32 {
            let x = gram_s_form(s, d).unwrap();
            let n = x.mat.nrows();
            for i in 0..n {
                for j in i + 1..n {
                    assert!(x.mat[(i, j)].is_zero(), "upper entry at s={s}, d={d}");
                }
            }
            // weak diagonal checks: s at λ=(d), s^d at λ=(1^d)
            assert_eq!(x.mat[(0, 0)], BigInt::from(s));
            assert_eq!(x.mat[(n - 1, n - 1)], BigInt::from(s).pow(d));
            assert_eq!(
                gram_entry(&pt(&[d]), &pt(&[d]), s).unwrap(),
                BigInt::from(s)
            );
        }
    }
}

#[test]
fn rank_one_pairing_matches_s_form() {
    // a 1×1 pairing matrix (s) must reproduce the s-form invariant factors
    for s in 2..=4u32 {
        for d in 0..=4u32 {
            let pairing = shapovalov_gram(&int_mat(&[&[s as i64]]), d).unwrap();
            let direct = gram_s_form(s, d).unwrap();
            assert_eq!(
                smith_normal_form(&pairing.mat, false).invariant_factors(),
                smith_normal_form(&direct.mat, false).invariant_factors(),
                "s={s}, d={d}"
            );
        }
    }
}

#[test]
fn fock_pairing_power_sum_norms() {
    for s in [2i64, 3] {
        let a = int_mat(&[&[s]]);
        for d in 0..=8u32 {
            for lambda in enumerate_partitions(d) {
                let gens: Vec<ColoredGen> = lambda.parts().iter().map(|&x| (x, 0)).collect();
                let want =
                    BigInt::from(s).pow(lambda.len() as u32) * BigInt::from(z_of(&lambda));
                assert_eq!(fock_pairing(&gens, &gens, &a), want, "s={s}, λ={lambda}");
            }
        }
    }
}

#[test]
fn coprime_pointwise_splitting() {
    for (s, t) in [(2u32, 3u32), (2, 5), (3, 4)] {
        for d in 0..=5u32 {
            let xs = gram_s_form(s, d).unwrap().mat;
            let xt = gram_s_form(t, d).unwrap().mat;
            let product_snf = smith_normal_form(&xs.mul(&xt), false);
            let combined = snf_pointwise_product(
                &smith_normal_form(&xs, false),
                &smith_normal_form(&xt, false),
            )
            .unwrap();
            assert_eq!(
                product_snf.invariant_factors(),
                combined.invariant_factors(),
                "s={s}, t={t}, d={d}"
            );
        }
    }
}

#[test]
fn divisor_product_matches_determinant_power() {
    // Π_{λ⊢d} D_r(λ) = p^{r·Σ_{λ⊢d} l(λ)}
    for praw in [2u32, 3, 5] {
        let p = Prime::new(praw).unwrap();
        for r in 1..=3u32 {
            for d in 0..=10u32 {
                let labels = enumerate_partitions(d);
                let product: BigUint = labels
                    .iter()
                    .map(|lambda| d_r(lambda, p, r))
                    .product();
                let total_length: u32 = labels.iter().map(|l| l.len() as u32).sum();
                assert_eq!(
                    product,
                    BigUint::from(praw).pow(r * total_length),
                    "p={praw}, r={r}, d={d}"
                );
            }
        }
    }
}

#[test]
fn single_form_prediction_decomposes_by_degree() {
    // with invariants (1,…,1,s), the prediction is the union over d′ ≤ d of
    // the s-form factors at d′, each repeated once per multipartition of
    // d−d′ into the remaining l−1 slots
    for (l, s, dmax) in [(3u32, 2u32, 3u32), (2, 3, 4), (2, 4, 3)] {
        let mut invariants = vec![1u32; l as usize];
        invariants[l as usize - 1] = s;
        for d in 0..=dmax {
            let mut oracle = |a: u32, dk: u32| standard_factor_oracle(a, dk).map(|(f, _)| f);
            let got = predicted_shapovalov(&invariants, d, &mut oracle).unwrap();
            let mut expected = Vec::new();
            for dprime in 0..=d {
                let (factors, _) = standard_factor_oracle(s, dprime).unwrap();
                let repeats = if l == 1 {
                    usize::from(dprime == d)
                } else {
                    enumerate_multipartitions(d - dprime, l - 1).len()
                };
                for _ in 0..repeats {
                    expected.extend(factors.iter().cloned());
                }
            }
            assert_eq!(
                got,
                InvariantMultiset::from_unsorted(expected),
                "l={l}, s={s}, d={d}"
            );
        }
    }
}

#[test]
fn rep_power_lead_coefficients_full_range() {
    // (G_(n^{p^{i-j}}))^{p^j} over the G family for i ≤ 2: the coefficient at
    // G_(n^{p^i}) is ±p^{(p^j−1)/(p−1)}, every support partition has all
    // parts of the form p^k·n, and the expansion re-validates against the
    // plain-h route. The largest case runs at degree 18.
    for (praw, cores) in [(2u32, vec![1u32]), (3, vec![1, 2])] {
        let p = Prime::new(praw).unwrap();
        for n in cores {
            let gb = big_g_basis(p, n * praw.pow(2)).unwrap();
            for i in 0..=2u32 {
                for j in 0..=i {
                    let combo = gb.rep_power_in_basis(n, i, j);
                    let degree = n * praw.pow(i);
                    let direct = gb
                        .level_basis()
                        .generator(0, n * praw.pow(i - j))
                        .pow_free(praw.pow(j));
                    assert_eq!(
                        gb.combination_to_h(&combo, degree),
                        direct,
                        "h validation at p={praw}, n={n}, i={i}, j={j}"
                    );
                    for lambda in combo.keys() {
                        assert!(lambda.parts().iter().all(|&x| {
                            let mut core = x;
                            while core % praw == 0 {
                                core /= praw;
                            }
                            core == n
                        }));
                    }
                    let target = Partition::from_multiplicities([(n, praw.pow(i))]);
                    let lead = combo.get(&target).expect("lead term present");
                    assert_eq!(
                        lead.abs(),
                        BigInt::from(praw).pow((praw.pow(j) - 1) / (praw - 1)),
                        "lead at p={praw}, n={n}, i={i}, j={j}"
                    );
                }
            }
        }
    }
}

#[test]
fn level_coefficient_cross_stage_identity() {
    // c_{pl}^{(s−1)}(pλ) = c_l^{(s)}(λ) realized by the built tables for
    // every admissible stage pair
    use shapoform::bases::GBasis;
    for (praw, r) in [(2u32, 2u32), (3, 3)] {
        let p = Prime::new(praw).unwrap();
        let g = GBasis::build(p, r, 9).unwrap();
        for s in 1..=r {
            for l in 1..=9 / praw {
                let low: BTreeMap<Partition, BigInt> = g
                    .coefficients(s, l)
                    .iter()
                    .map(|(mu, c)| (mu.scale_parts(praw), c.clone()))
                    .collect();
                let high: BTreeMap<Partition, BigInt> = g
                    .coefficients(s - 1, praw * l)
                    .iter()
                    .filter(|(lambda, _)| lambda.parts().iter().all(|&x| x % praw == 0))
                    .map(|(lambda, c)| (lambda.clone(), c.clone()))
                    .collect();
                assert_eq!(low, high, "p={praw}, s={s}, l={l}");
            }
        }
    }
}
