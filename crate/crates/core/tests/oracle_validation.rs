//! Cross-validation of every residual operation against brute-force
//! oracles: components re-derived from raw (non-normalized) series
//! products, alpha values from raw series division, and derivatives
//! from the literal difference quotient. The oracle paths share only
//! the scalar and polynomial plumbing with the library; all series and
//! sequence arithmetic is recomputed differently.

use pqcalc::families::{
    family_sequence, hermite_printed_difference_residual, hermite_printed_recurrence_residual,
    FamilyKind,
};
use pqcalc::poly::Poly;
use pqcalc::rational::{binom2, Rational};
use pqcalc::recurrence::{
    alpha_series, derived_recurrence_residual, derived_shift_residual,
    printed_difference_residual, printed_recurrence_residual, printed_shift_residual,
};
use pqcalc::sampling::{random_sequence, sample_contexts, seeded_rng};
use pqcalc::{AppellSequence, PQContext};
use pqcalc_testkit::{
    classical_bernoulli_numbers, classical_hermite, oracle_alpha, oracle_components_from_coeffs,
    oracle_difference_residual, oracle_family_components, oracle_recurrence_residual,
    quotient_derivative,
};

const DEPTH: usize = 8;

/// Three p != q contexts: two fixed plus one seeded sample.
fn oracle_contexts() -> Vec<PQContext> {
    let mut contexts = vec![
        PQContext::from_ints(2, 1).unwrap(),
        PQContext::new(Rational::new(3, 2), Rational::new(1, 2)).unwrap(),
    ];
    contexts.extend(sample_contexts(42, 1));
    contexts
}

fn oracle_components(seq: &AppellSequence, n_max: usize) -> Vec<Poly> {
    oracle_components_from_coeffs(seq.context(), seq.coefficients(), n_max)
}

#[test]
fn family_components_match_raw_series_extraction() {
    for ctx in oracle_contexts() {
        for kind in FamilyKind::ALL {
            let seq = family_sequence(kind, &ctx, DEPTH);
            let oracle = oracle_family_components(kind, &ctx, DEPTH);
            for n in 0..=DEPTH {
                assert_eq!(
                    seq.component(n).unwrap(),
                    oracle[n],
                    "{kind} at {ctx} n={n}"
                );
            }
        }
    }
}

#[test]
fn random_sequence_components_match_raw_series_extraction() {
    let mut rng = seeded_rng(7);
    for ctx in oracle_contexts() {
        for _ in 0..2 {
            let seq = random_sequence(&mut rng, &ctx, DEPTH);
            let oracle = oracle_components(&seq, DEPTH);
            for n in 0..=DEPTH {
                assert_eq!(seq.component(n).unwrap(), oracle[n], "{ctx} n={n}");
            }
        }
    }
}

#[test]
fn alpha_matches_raw_series_division() {
    let mut rng = seeded_rng(11);
    for ctx in oracle_contexts() {
        let mut sequences = vec![
            family_sequence(FamilyKind::Bernoulli, &ctx, DEPTH + 1),
            family_sequence(FamilyKind::Euler, &ctx, DEPTH + 1),
            family_sequence(FamilyKind::Hermite, &ctx, DEPTH + 1),
        ];
        sequences.push(random_sequence(&mut rng, &ctx, DEPTH + 1));
        for seq in &sequences {
            let alpha = alpha_series(seq, DEPTH).unwrap();
            let oracle = oracle_alpha(&ctx, seq.coefficients(), DEPTH);
            assert_eq!(alpha.values(), &oracle[..], "{ctx}");
        }
    }
}

#[test]
fn derivative_matches_difference_quotient() {
    for ctx in oracle_contexts() {
        let seq = family_sequence(FamilyKind::Bernoulli, &ctx, DEPTH);
        for n in 0..=DEPTH {
            let f = seq.component(n).unwrap();
            assert_eq!(f.pq_derivative(), quotient_derivative(&f), "{ctx} n={n}");
        }
    }
}

#[test]
fn printed_recurrence_matches_oracle_assembly() {
    for ctx in oracle_contexts() {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Hermite] {
            let seq = family_sequence(kind, &ctx, DEPTH + 1);
            let comps = oracle_components(&seq, DEPTH);
            let alpha = oracle_alpha(&ctx, seq.coefficients(), DEPTH);
            for n in 1..=DEPTH {
                let expected = oracle_recurrence_residual(&ctx, &comps, &alpha, n);
                assert_eq!(
                    printed_recurrence_residual(&seq, n).unwrap(),
                    expected,
                    "{kind} at {ctx} n={n}"
                );
            }
        }
    }
}

#[test]
fn printed_difference_matches_oracle_assembly() {
    for ctx in oracle_contexts() {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Hermite] {
            let seq = family_sequence(kind, &ctx, DEPTH + 1);
            let comps = oracle_components(&seq, DEPTH);
            let alpha = oracle_alpha(&ctx, seq.coefficients(), DEPTH);
            for n in 1..=DEPTH {
                let expected = oracle_difference_residual(&ctx, &comps, &alpha, n);
                assert_eq!(
                    printed_difference_residual(&seq, n).unwrap(),
                    expected,
                    "{kind} at {ctx} n={n}"
                );
            }
        }
    }
}

#[test]
fn shift_residuals_match_oracle_assembly() {
    for ctx in oracle_contexts() {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Hermite, FamilyKind::Genocchi] {
            let seq = family_sequence(kind, &ctx, DEPTH);
            let comps = oracle_components(&seq, DEPTH);
            for n in 0..=DEPTH {
                let mut dk = comps[n].clone();
                for k in 0..=n {
                    if k > 0 {
                        dk = quotient_derivative(&dk);
                    }
                    let ratio = &ctx.pq_factorial(n) / &ctx.pq_factorial(n - k);
                    let printed_expected =
                        &dk - &comps[n - k].dilate(&ctx.p_pow(k as i64)).scale(&ratio);
                    assert_eq!(
                        printed_shift_residual(&seq, n, k).unwrap(),
                        printed_expected,
                        "{kind} at {ctx} printed n={n} k={k}"
                    );
                    // the corrected form is exactly zero on oracle parts too
                    let corrected = comps[n - k]
                        .dilate(&ctx.p_pow(k as i64))
                        .scale(&(&ratio * &ctx.p_pow(binom2(k))));
                    assert_eq!(dk, corrected, "{kind} at {ctx} corrected n={n} k={k}");
                    assert!(derived_shift_residual(&seq, n, k).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn derived_recurrence_validated_by_oracle_components() {
    // the corrected recurrence evaluated entirely on oracle parts
    for ctx in oracle_contexts() {
        for kind in [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Hermite] {
            let seq = family_sequence(kind, &ctx, DEPTH + 1);
            let comps = oracle_components(&seq, DEPTH);
            let alpha = oracle_alpha(&ctx, seq.coefficients(), DEPTH);
            let q_over_p = ctx.q() / ctx.p();
            for n in 1..=DEPTH {
                let lhs = comps[n].scale(&ctx.pq_number(n));
                let mut rhs = &Poly::monomial(
                    &ctx,
                    &ctx.pq_number(n) * &ctx.p_pow(n as i64 - 1),
                    1,
                ) * &comps[n - 1];
                for k in 0..=n {
                    if alpha[k].is_zero() {
                        continue;
                    }
                    let c = &(&ctx.pq_binomial(n, k as isize) * &alpha[k])
                        * &ctx.p_pow((n - k) as i64);
                    rhs = &rhs + &comps[n - k].dilate(&q_over_p).scale(&c);
                }
                assert!((&lhs - &rhs).is_zero(), "{kind} at {ctx} n={n}");
                assert!(derived_recurrence_residual(&seq, n).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn hermite_audits_match_oracle_assembly() {
    for ctx in oracle_contexts() {
        let comps = oracle_family_components(FamilyKind::Hermite, &ctx, DEPTH + 1);
        for n in 1..=DEPTH {
            // printed three-term recurrence, assembled from oracle parts
            let lhs = comps[n + 1].dilate(ctx.p());
            let x_term = &Poly::monomial(&ctx, ctx.p_pow(n as i64 + 1), 1)
                * &comps[n].dilate(ctx.q());
            let tail = comps[n - 1]
                .dilate(ctx.q())
                .scale(&(&ctx.p_pow(n as i64 - 1) * &ctx.pq_number(n)));
            let expected = &(&lhs - &x_term) + &tail;
            assert_eq!(
                hermite_printed_recurrence_residual(&ctx, n),
                expected,
                "{ctx} recurrence n={n}"
            );

            // printed difference equation via quotient derivatives
            let d1 = quotient_derivative(&comps[n]);
            let d2 = quotient_derivative(&d1);
            let first = d2.dilate(&ctx.p_pow(-2));
            let second = &Poly::monomial(&ctx, &ctx.p_pow(2) * &ctx.q_pow(-1), 1)
                * &d1.dilate(&ctx.p_pow(-1));
            let third = comps[n]
                .dilate(&(ctx.p() / ctx.q()))
                .scale(&(&ctx.p_pow(2 - n as i64) * &ctx.pq_number(n)));
            let expected = &(&first - &second) + &third;
            assert_eq!(
                hermite_printed_difference_residual(&ctx, n),
                expected,
                "{ctx} difference n={n}"
            );
        }
    }
}

#[test]
fn classical_family_numbers_match_plain_oracles() {
    let ctx = PQContext::from_ints(1, 1).unwrap();
    let bernoulli = family_sequence(FamilyKind::Bernoulli, &ctx, DEPTH);
    assert_eq!(
        bernoulli.coefficients(),
        &classical_bernoulli_numbers(DEPTH)[..]
    );

    let hermite = family_sequence(FamilyKind::Hermite, &ctx, DEPTH);
    let he = classical_hermite(&ctx, DEPTH);
    for n in 0..=DEPTH {
        assert_eq!(hermite.component(n).unwrap(), he[n], "He_{n}");
    }
}
