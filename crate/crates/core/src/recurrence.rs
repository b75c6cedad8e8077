//! The alpha series and the recurrence / difference-equation audits.
//!
//! The alpha series collects the normalized coefficients of
//! `t * D_t A(t) / A(pt)`; it drives both the three-term-style
//! recurrence and the difference equation for an Appell sequence.
//!
//! The `printed_*` operations evaluate those identities exactly as
//! printed and return the exact residual polynomial — they never assume
//! the identity holds, because at generic (p,q) it does not: the printed
//! derivations simplify `D_t e_{p,q}(pxt)` to `px e_{p,q}(pqxt)` where
//! the n-th-derivative rule produces `px e_{p,q}(p^2xt)`, and they
//! iterate the Appell rule without the dilation factor it accumulates.
//! The `derived_*` twins evaluate the corrected identities obtained by
//! redoing the same derivations with the product rule applied
//! consistently; those residuals are exactly zero (checked against
//! brute-force oracles in the test suite before being relied on).

use crate::appell::AppellSequence;
use crate::context::PQContext;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binom2, Rational};
use crate::series::Series;

/// Normalized coefficients `alpha_0..alpha_N` of `t D_t A(t) / A(pt)`.
/// The leading factor t forces `alpha_0 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaSeries {
    ctx: PQContext,
    alpha: Vec<Rational>,
}

impl AlphaSeries {
    pub fn context(&self) -> &PQContext {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn value(&self, n: usize) -> &Rational {
        &self.alpha[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.alpha
    }
}

/// Computes the alpha series of a non-degenerate sequence up to order
/// `n_max`, in normalized series arithmetic.
///
/// In normalized storage `t * D_t A(t)` has coefficient `[j] a_j` (the
/// shift from `D_t` and the `[j]` from re-normalizing the factor t), so
/// the numerator is built directly from the determining coefficients;
/// the quotient is a Cauchy product with the reciprocal of `A(pt)`.
pub fn alpha_series(f: &AppellSequence, n_max: usize) -> Result<AlphaSeries> {
    if f.is_degenerate() {
        return Err(Error::DegenerateSequence("alpha series"));
    }
    let ctx = f.context().clone();
    // alpha_n depends only on a_0..a_n, so a longer cached prefix serves
    // every shorter request
    {
        let cache = f.alpha_cache().lock().unwrap();
        if cache.len() > n_max {
            return Ok(AlphaSeries {
                ctx,
                alpha: cache[..=n_max].to_vec(),
            });
        }
    }
    let a = f.determining_series(n_max)?;
    let numerator = {
        let coeffs: Vec<Rational> = (0..=n_max)
            .map(|j| &ctx.pq_number(j) * &f.coefficient(j))
            .collect();
        Series::from_scalar_coeffs(&ctx, &coeffs)
    };
    let denominator = a.dilate_t(ctx.p()).reciprocal()?;
    let quotient = numerator.cauchy_product(&denominator)?;
    let alpha: Vec<Rational> = (0..=n_max)
        .map(|n| quotient.coefficient(n).coeff(0))
        .collect();
    let mut cache = f.alpha_cache().lock().unwrap();
    if cache.len() <= n_max {
        *cache = alpha.clone();
    }
    Ok(AlphaSeries { ctx, alpha })
}

fn check_n_range(f: &AppellSequence, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "recurrence residuals need n >= 1 (division by [0])".into(),
        ));
    }
    if n > f.order() {
        return Err(Error::IndexOutOfRange {
            index: n,
            order: f.order(),
        });
    }
    Ok(())
}

/// Exact residual of the recurrence as printed:
///
/// ```text
/// f_n(px/q) = (1/[n]) sum_{k=0}^{n} [n choose k] alpha_k f_(n-k)(x)
///             + p^n q^(-1) x f_(n-1)(x)
/// ```
///
/// Zero certifies the identity at this context; nonzero is a quantified
/// erratum (expected for p != q).
pub fn printed_recurrence_residual(f: &AppellSequence, n: usize) -> Result<Poly> {
    check_n_range(f, n)?;
    let ctx = f.context();
    let alpha = alpha_series(f, f.order())?;
    let lhs = f.component(n)?.dilate(&(ctx.p() / ctx.q()));

    let mut sum = Poly::zero(ctx);
    for k in 0..=n {
        if alpha.value(k).is_zero() {
            continue;
        }
        let c = &ctx.pq_binomial(n, k as isize) * alpha.value(k);
        sum = &sum + &f.component(n - k)?.scale(&c);
    }
    let mut rhs = sum.scale(&ctx.pq_number(n).recip());
    let x_term = &Poly::monomial(ctx, &ctx.p_pow(n as i64) * &ctx.q_pow(-1), 1)
        * &f.component(n - 1)?;
    rhs = &rhs + &x_term;
    Ok(&lhs - &rhs)
}

/// Exact residual of the corrected recurrence
///
/// ```text
/// [n] f_n(x) = [n] p^(n-1) x f_(n-1)(x)
///              + sum_{k=0}^{n} [n choose k] alpha_k p^(n-k) f_(n-k)(qx/p)
/// ```
///
/// obtained by rerunning the printed derivation with
/// `D_t e_{p,q}(pxt) = px e_{p,q}(p^2 xt)`. Contract: zero for every
/// non-degenerate sequence.
pub fn derived_recurrence_residual(f: &AppellSequence, n: usize) -> Result<Poly> {
    check_n_range(f, n)?;
    let ctx = f.context();
    let alpha = alpha_series(f, f.order())?;
    let q_over_p = ctx.q() / ctx.p();

    let lhs = f.component(n)?.scale(&ctx.pq_number(n));
    let mut rhs = (&Poly::monomial(ctx, &ctx.pq_number(n) * &ctx.p_pow(n as i64 - 1), 1)
        * &f.component(n - 1)?)
        .clone();
    for k in 0..=n {
        if alpha.value(k).is_zero() {
            continue;
        }
        let c = &(&ctx.pq_binomial(n, k as isize) * alpha.value(k))
            * &ctx.p_pow((n - k) as i64);
        rhs = &rhs + &f.component(n - k)?.dilate(&q_over_p).scale(&c);
    }
    Ok(&lhs - &rhs)
}

/// Exact evaluation of the difference equation as printed:
///
/// ```text
/// (sum_{k=0}^{n} alpha_k/[k]! L_p^(-k) D^k + p^n q^(-1) x L_p^(-1) D) f_n(x)
///   - [n] f_n(px/q)
/// ```
///
/// where `L_p^(-k) g(x) = g(p^(-k) x)`. Reported, not assumed zero.
pub fn printed_difference_residual(f: &AppellSequence, n: usize) -> Result<Poly> {
    check_n_range(f, n)?;
    let ctx = f.context();
    let alpha = alpha_series(f, f.order())?;
    let fn_poly = f.component(n)?;

    let mut acc = Poly::zero(ctx);
    let mut dk = fn_poly.clone();
    for k in 0..=n {
        if k > 0 {
            dk = dk.pq_derivative();
        }
        if alpha.value(k).is_zero() {
            continue;
        }
        let c = alpha.value(k) / &ctx.pq_factorial(k);
        acc = &acc + &dk.dilate(&ctx.p_pow(-(k as i64))).scale(&c);
    }
    let x_term = &Poly::monomial(ctx, &ctx.p_pow(n as i64) * &ctx.q_pow(-1), 1)
        * &fn_poly.pq_derivative().dilate(&ctx.p_pow(-1));
    acc = &acc + &x_term;

    let lhs_shift = fn_poly
        .dilate(&(ctx.p() / ctx.q()))
        .scale(&ctx.pq_number(n));
    Ok(&acc - &lhs_shift)
}

/// Residual of the iterated Appell rule as printed in the difference-
/// equation derivation: `D^k f_n(x) - ([n]!/[n-k]!) f_(n-k)(p^k x)`.
///
/// Iterating `D f_(n+1)(x) = [n+1] f_n(px)` actually accumulates a
/// dilation factor (see [`derived_shift_residual`]), so this residual is
/// nonzero for k >= 2 whenever p != 1; it is evaluated literally and
/// reported like the other printed identities.
pub fn printed_shift_residual(f: &AppellSequence, n: usize, k: usize) -> Result<Poly> {
    shift_residual(f, n, k, false)
}

/// Residual of the corrected iterated Appell rule
/// `D^k f_n(x) = ([n]!/[n-k]!) p^C(k,2) f_(n-k)(p^k x)`, the form the
/// defining rule actually iterates to (each derivative passes through
/// one more dilation and picks up one factor p). Contract: zero.
pub fn derived_shift_residual(f: &AppellSequence, n: usize, k: usize) -> Result<Poly> {
    shift_residual(f, n, k, true)
}

fn shift_residual(f: &AppellSequence, n: usize, k: usize, corrected: bool) -> Result<Poly> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "shift residual needs k <= n, got k={k}, n={n}"
        )));
    }
    if n > f.order() {
        return Err(Error::IndexOutOfRange {
            index: n,
            order: f.order(),
        });
    }
    let ctx = f.context();
    let lhs = f.component(n)?.pq_derivative_n(k);
    let mut c = &ctx.pq_factorial(n) / &ctx.pq_factorial(n - k);
    if corrected {
        c *= &ctx.p_pow(binom2(k));
    }
    let rhs = f
        .component(n - k)?
        .dilate(&ctx.p_pow(k as i64))
        .scale(&c);
    Ok(&lhs - &rhs)
}

/// Consistency link between the two printed theorems: substituting
/// `f_(n-k)(x) -> ([n-k]!/[n]!) L_p^(-k) D^k f_n(x)` into the printed
/// recurrence and multiplying by `-[n]` must reproduce the printed
/// difference expression identically — that substitution is how the
/// difference equation was derived. Returns the residual of that exact
/// polynomial equality. Contract: zero (independent of whether either
/// printed identity itself holds).
pub fn difference_vs_recurrence_residual(f: &AppellSequence, n: usize) -> Result<Poly> {
    check_n_range(f, n)?;
    let ctx = f.context();
    let alpha = alpha_series(f, f.order())?;
    let fn_poly = f.component(n)?;

    // printed recurrence residual with every component rewritten
    let rewrite = |k: usize| -> Poly {
        // f_(n-k)(x) -> ([n-k]!/[n]!) (D^k f_n)(p^(-k) x)
        let c = &ctx.pq_factorial(n - k) / &ctx.pq_factorial(n);
        fn_poly
            .pq_derivative_n(k)
            .dilate(&ctx.p_pow(-(k as i64)))
            .scale(&c)
    };
    let mut sum = Poly::zero(ctx);
    for k in 0..=n {
        if alpha.value(k).is_zero() {
            continue;
        }
        let c = &ctx.pq_binomial(n, k as isize) * alpha.value(k);
        sum = &sum + &rewrite(k).scale(&c);
    }
    let mut rewritten = fn_poly.dilate(&(ctx.p() / ctx.q()));
    rewritten = &rewritten - &sum.scale(&ctx.pq_number(n).recip());
    rewritten =
        &rewritten - &(&Poly::monomial(ctx, &ctx.p_pow(n as i64) * &ctx.q_pow(-1), 1) * &rewrite(1));

    let difference = printed_difference_residual(f, n)?;
    Ok(&difference + &rewritten.scale(&ctx.pq_number(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bernoulli_sequence, hermite_sequence};

    fn ctx(p: (i64, i64), q: (i64, i64)) -> PQContext {
        PQContext::new(Rational::new(p.0, p.1), Rational::new(q.0, q.1)).unwrap()
    }

    #[test]
    fn alpha_of_identity_is_zero() {
        let c = ctx((3, 2), (1, 2));
        let id = AppellSequence::identity(&c, 8);
        let alpha = alpha_series(&id, 8).unwrap();
        assert!(alpha.values().iter().all(Rational::is_zero));
    }

    #[test]
    fn alpha_of_hermite_is_minus_two_factorial() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2))] {
            let c = ctx(p, q);
            let h = hermite_sequence(&c, 8);
            let alpha = alpha_series(&h, 8).unwrap();
            for n in 0..=8 {
                let expected = if n == 2 {
                    -c.pq_factorial(2)
                } else {
                    Rational::zero()
                };
                assert_eq!(alpha.value(n), &expected, "n={n}");
            }
        }
    }

    #[test]
    fn alpha_of_bernoulli_at_classical_point() {
        // oracle-fixed: (0, -1/2, -1/6, 0, 1/30)
        let c = ctx((1, 1), (1, 1));
        let b = bernoulli_sequence(&c, 4);
        let alpha = alpha_series(&b, 4).unwrap();
        let expected = [
            Rational::zero(),
            Rational::new(-1, 2),
            Rational::new(-1, 6),
            Rational::zero(),
            Rational::new(1, 30),
        ];
        assert_eq!(alpha.values(), &expected);
    }

    #[test]
    fn alpha_numerator_matches_series_route() {
        // the direct [j] a_j numerator equals mul_t(derivative_t(A))
        let c = ctx((3, 2), (1, 2));
        let f = AppellSequence::new(
            &c,
            vec![
                Rational::new(2, 3),
                Rational::from_int(1),
                Rational::new(-1, 4),
                Rational::from_int(5),
                Rational::new(1, 7),
                Rational::from_int(-2),
            ],
        );
        let a = f.determining_series(5).unwrap();
        let composed = a.derivative_t().mul_t();
        for j in 0..=4 {
            assert_eq!(
                composed.coefficient(j).coeff(0),
                &c.pq_number(j) * &f.coefficient(j),
                "j={j}"
            );
        }
    }

    #[test]
    fn alpha_rejects_degenerate() {
        let c = ctx((2, 1), (1, 1));
        let g = AppellSequence::new(&c, vec![Rational::zero(), Rational::one()]);
        assert_eq!(
            alpha_series(&g, 1).unwrap_err(),
            Error::DegenerateSequence("alpha series")
        );
    }

    #[test]
    fn printed_recurrence_identity_sequence_n1() {
        let c = ctx((3, 2), (1, 2));
        let id = AppellSequence::identity(&c, 4);
        assert!(printed_recurrence_residual(&id, 1).unwrap().is_zero());
    }

    #[test]
    fn printed_recurrence_rejects_n0() {
        let c = ctx((2, 1), (1, 1));
        let id = AppellSequence::identity(&c, 4);
        assert!(matches!(
            printed_recurrence_residual(&id, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn printed_recurrence_hermite_n2_residual() {
        // oracle-fixed: residual = p^2 x^2 (p - q) / q^2
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2))] {
            let c = ctx(p, q);
            let h = hermite_sequence(&c, 4);
            let res = printed_recurrence_residual(&h, 2).unwrap();
            let coeff = &(&c.p_pow(2) * &(c.p() - c.q())) / &c.q_pow(2);
            assert_eq!(res, Poly::monomial(&c, coeff, 2));
        }
    }

    #[test]
    fn printed_residuals_vanish_at_classical_point() {
        let c = ctx((1, 1), (1, 1));
        let b = bernoulli_sequence(&c, 8);
        let h = hermite_sequence(&c, 8);
        for f in [&b, &h] {
            for n in 1..=8 {
                assert!(printed_recurrence_residual(f, n).unwrap().is_zero(), "n={n}");
                assert!(printed_difference_residual(f, n).unwrap().is_zero(), "n={n}");
            }
        }
    }

    #[test]
    fn derived_recurrence_is_exact() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            let id = AppellSequence::identity(&c, 10);
            let b = bernoulli_sequence(&c, 10);
            let h = hermite_sequence(&c, 10);
            for f in [&id, &b, &h] {
                for n in 1..=10 {
                    assert!(
                        derived_recurrence_residual(f, n).unwrap().is_zero(),
                        "p={p:?} q={q:?} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn printed_difference_hermite_n2_oracle_value() {
        // oracle-fixed at (2,1): -12x^2 - 3
        let c = ctx((2, 1), (1, 1));
        let h = hermite_sequence(&c, 4);
        let res = printed_difference_residual(&h, 2).unwrap();
        let expected = Poly::from_coeffs(
            &c,
            vec![Rational::from_int(-3), Rational::zero(), Rational::from_int(-12)],
        );
        assert_eq!(res, expected);
    }

    #[test]
    fn printed_shift_residual_examples() {
        let c = ctx((2, 1), (1, 1));
        let h = hermite_sequence(&c, 6);
        // k = 0 is trivially exact
        assert!(printed_shift_residual(&h, 4, 0).unwrap().is_zero());
        // k = 1 is the defining rule itself
        assert!(printed_shift_residual(&h, 4, 1).unwrap().is_zero());
        // oracle-fixed: n=3, k=2 at (2,1) leaves 84x
        let res = printed_shift_residual(&h, 3, 2).unwrap();
        assert_eq!(res, Poly::monomial(&c, Rational::from_int(84), 1));

        // constant check n = k: residual [n]! a_0 (p^C(n,2) - 1)
        let b = bernoulli_sequence(&c, 5);
        let res = printed_shift_residual(&b, 5, 5).unwrap();
        let expected = &(&c.pq_factorial(5) * &b.coefficient(0))
            * &(&c.p_pow(binom2(5)) - &Rational::one());
        assert_eq!(res, Poly::constant(&c, expected));
    }

    #[test]
    fn printed_shift_residual_vanishes_at_p_one() {
        let c = ctx((1, 1), (1, 2));
        let b = bernoulli_sequence(&c, 8);
        for n in 0..=8 {
            for k in 0..=n {
                assert!(printed_shift_residual(&b, n, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn derived_shift_residual_is_exact() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            let b = bernoulli_sequence(&c, 8);
            let h = hermite_sequence(&c, 8);
            for f in [&b, &h] {
                for n in 0..=8 {
                    for k in 0..=n {
                        assert!(
                            derived_shift_residual(f, n, k).unwrap().is_zero(),
                            "p={p:?} q={q:?} n={n} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn shift_residual_rejects_k_above_n() {
        let c = ctx((2, 1), (1, 1));
        let id = AppellSequence::identity(&c, 4);
        assert!(matches!(
            printed_shift_residual(&id, 2, 3),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn difference_links_to_recurrence_by_rewriting() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            let b = bernoulli_sequence(&c, 8);
            let h = hermite_sequence(&c, 8);
            for f in [&b, &h] {
                for n in 1..=8 {
                    assert!(
                        difference_vs_recurrence_residual(f, n).unwrap().is_zero(),
                        "p={p:?} q={q:?} n={n}"
                    );
                }
            }
        }
    }
}
