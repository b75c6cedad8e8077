//! Brute-force reference computations for validating pqcalc.
//!
//! Everything here recomputes results through a deliberately different
//! route than the library:
//!
//! - series live in RAW t-power storage (coefficient of `t^n` directly,
//!   no factorial normalization), so products are plain convolutions and
//!   reciprocals are plain power-series inversion — no (p,q)-binomials
//!   anywhere;
//! - the (p,q)-derivative is taken via the literal difference quotient
//!   `(f(px) - f(qx))/((p-q)x)` instead of the coefficient rule;
//! - classical families come from their textbook recurrences.
//!
//! This crate is a dev-dependency only; it never ships with the library.

use pqcalc::families::FamilyKind;
use pqcalc::poly::Poly;
use pqcalc::rational::{binom2, Rational};
use pqcalc::PQContext;

/// Truncated power series in raw storage: `coeffs[n]` is the polynomial
/// coefficient of `t^n` itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawSeries {
    ctx: PQContext,
    coeffs: Vec<Poly>,
}

impl RawSeries {
    pub fn new(ctx: &PQContext, coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty());
        RawSeries {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_scalars(ctx: &PQContext, scalars: &[Rational]) -> Self {
        RawSeries::new(
            ctx,
            scalars
                .iter()
                .map(|c| Poly::constant(ctx, c.clone()))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    /// Plain convolution product, truncated to the smaller order.
    pub fn mul(&self, other: &RawSeries) -> RawSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Poly::zero(&self.ctx);
                for k in 0..=n {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        RawSeries::new(&self.ctx, coeffs)
    }

    /// Plain power-series inversion:
    /// `b_0 = 1/a_0`, `b_n = -(1/a_0) sum_{k=1}^{n} a_k b_(n-k)`.
    pub fn reciprocal(&self) -> RawSeries {
        let a0 = &self.coeffs[0];
        assert!(
            a0.degree() == Some(0),
            "raw reciprocal needs a nonzero constant term"
        );
        let inv = a0.coeff(0).recip();
        let mut coeffs = vec![Poly::constant(&self.ctx, inv.clone())];
        for n in 1..=self.order() {
            let mut acc = Poly::zero(&self.ctx);
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = &acc + &(a * &coeffs[n - k]);
                }
            }
            coeffs.push(acc.scale(&-&inv));
        }
        RawSeries::new(&self.ctx, coeffs)
    }

    /// Raw t-derivative: `D_t t^n = [n] t^(n-1)` straight from the
    /// definition, so raw coefficient n of the result is `[n+1] c_(n+1)`.
    pub fn derivative_t(&self) -> RawSeries {
        if self.order() == 0 {
            return RawSeries::new(&self.ctx, vec![Poly::zero(&self.ctx)]);
        }
        let coeffs = (0..self.order())
            .map(|n| self.coeffs[n + 1].scale(&self.ctx.pq_number(n + 1)))
            .collect();
        RawSeries::new(&self.ctx, coeffs)
    }

    /// `t -> ct`.
    pub fn dilate_t(&self, c: &Rational) -> RawSeries {
        let mut pow = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n > 0 {
                    pow *= c;
                }
                a.scale(&pow)
            })
            .collect();
        RawSeries::new(&self.ctx, coeffs)
    }

    /// Multiply by t (raw storage: plain shift up; top term falls off).
    pub fn mul_t(&self) -> RawSeries {
        let mut coeffs = vec![Poly::zero(&self.ctx)];
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        RawSeries::new(&self.ctx, coeffs)
    }

    pub fn coefficients_mut(&mut self) -> &mut Vec<Poly> {
        &mut self.coeffs
    }
}

/// `e_{p,q}(lambda t)` in raw storage: coefficient of `t^n` is
/// `p^C(n,2) lambda^n / [n]!`.
pub fn raw_small_exp(ctx: &PQContext, lambda: &Rational, order: usize) -> RawSeries {
    let coeffs = (0..=order)
        .map(|n| {
            let c = &(&ctx.p_pow(binom2(n)) * &lambda.pow(n as i64)) / &ctx.pq_factorial(n);
            Poly::constant(ctx, c)
        })
        .collect();
    RawSeries::new(ctx, coeffs)
}

/// The kernel `e_{p,q}(xt)` in raw storage: coefficient of `t^n` is
/// `p^C(n,2) x^n / [n]!`.
pub fn raw_kernel(ctx: &PQContext, order: usize) -> RawSeries {
    let coeffs = (0..=order)
        .map(|n| Poly::monomial(ctx, &ctx.p_pow(binom2(n)) / &ctx.pq_factorial(n), n))
        .collect();
    RawSeries::new(ctx, coeffs)
}

/// Determining function of a family in raw storage, built from the raw
/// generating-function definitions (never from the library's
/// coefficient formulas).
pub fn raw_determining(kind: FamilyKind, ctx: &PQContext, order: usize) -> RawSeries {
    match kind {
        FamilyKind::Bernoulli => {
            // (e(t) - 1)/t, then invert
            let e = raw_small_exp(ctx, &Rational::one(), order + 1);
            let shifted = (0..=order)
                .map(|n| e.coefficient(n + 1).clone())
                .collect();
            RawSeries::new(ctx, shifted).reciprocal()
        }
        FamilyKind::Euler => {
            let mut e = raw_small_exp(ctx, &Rational::one(), order);
            let bumped = &e.coefficients_mut()[0].clone() + &Poly::one(ctx);
            e.coefficients_mut()[0] = bumped;
            let mut recip = e.reciprocal();
            for c in recip.coefficients_mut() {
                *c = c.scale(&Rational::from_int(2));
            }
            recip
        }
        FamilyKind::Genocchi => raw_determining(FamilyKind::Euler, ctx, order).mul_t(),
        FamilyKind::Hermite => {
            let mut coeffs = vec![Poly::zero(ctx); order + 1];
            for m in 0..=order / 2 {
                let dd = ctx.pq_double_factorial(2 * m).unwrap();
                let mut c = &ctx.p_pow((m * m) as i64 - m as i64) / &dd;
                if m % 2 == 1 {
                    c = -c;
                }
                coeffs[2 * m] = Poly::constant(ctx, c);
            }
            RawSeries::new(ctx, coeffs)
        }
    }
}

/// Family components by brute force: `f_n` is `[n]!` times the raw
/// coefficient of `t^n` in `A(t) e_{p,q}(xt)`.
pub fn oracle_family_components(kind: FamilyKind, ctx: &PQContext, n_max: usize) -> Vec<Poly> {
    let product = raw_determining(kind, ctx, n_max).mul(&raw_kernel(ctx, n_max));
    (0..=n_max)
        .map(|n| product.coefficient(n).scale(&ctx.pq_factorial(n)))
        .collect()
}

/// Components of an arbitrary determining-coefficient sequence by brute
/// force (the raw coefficient of `A(t)` at `t^n` is `a_n/[n]!`).
pub fn oracle_components_from_coeffs(ctx: &PQContext, a: &[Rational], n_max: usize) -> Vec<Poly> {
    assert!(n_max < a.len());
    let raw_a: Vec<Rational> = (0..=n_max)
        .map(|n| &a[n] / &ctx.pq_factorial(n))
        .collect();
    let product = RawSeries::from_scalars(ctx, &raw_a).mul(&raw_kernel(ctx, n_max));
    (0..=n_max)
        .map(|n| product.coefficient(n).scale(&ctx.pq_factorial(n)))
        .collect()
}

/// Alpha values `alpha_0..alpha_(n_max)` by brute force: normalized
/// coefficients of `t D_t A(t) / A(pt)`, computed entirely in raw
/// storage through the composed route (derivative, then multiply by t,
/// then divide). Needs `a_0..a_(n_max+1)`.
pub fn oracle_alpha(ctx: &PQContext, a: &[Rational], n_max: usize) -> Vec<Rational> {
    assert!(n_max + 1 < a.len(), "need coefficients up to a_(n_max+1)");
    assert!(!a[0].is_zero(), "alpha series needs a_0 != 0");
    let raw_a: Vec<Rational> = a[..=n_max + 1]
        .iter()
        .enumerate()
        .map(|(n, c)| c / &ctx.pq_factorial(n))
        .collect();
    let a_series = RawSeries::from_scalars(ctx, &raw_a);
    let numerator = a_series.derivative_t().mul_t();
    let denominator = a_series.dilate_t(ctx.p()).reciprocal();
    let quotient = numerator.mul(&denominator);
    (0..=n_max)
        .map(|n| &quotient.coefficient(n).coeff(0) * &ctx.pq_factorial(n))
        .collect()
}

/// The (p,q)-derivative via the literal difference quotient. Panics on
/// p = q (the quotient degenerates there) and if the division leaves a
/// remainder, which for polynomials it never does.
pub fn quotient_derivative(f: &Poly) -> Poly {
    let ctx = f.context();
    assert!(ctx.p() != ctx.q(), "difference quotient needs p != q");
    let numerator = &f.dilate(ctx.p()) - &f.dilate(ctx.q());
    assert!(numerator.coeff(0).is_zero());
    let scale = (&ctx.p_pow(1) - &ctx.q_pow(1)).recip();
    let top = match numerator.degree() {
        None => return Poly::zero(ctx),
        Some(d) => d,
    };
    let coeffs = (1..=top).map(|i| &numerator.coeff(i) * &scale).collect();
    Poly::from_coeffs(ctx, coeffs)
}

/// The printed recurrence residual assembled from oracle parts only
/// (brute-force components and alpha values).
pub fn oracle_recurrence_residual(
    ctx: &PQContext,
    comps: &[Poly],
    alpha: &[Rational],
    n: usize,
) -> Poly {
    let lhs = comps[n].dilate(&(ctx.p() / ctx.q()));
    let mut sum = Poly::zero(ctx);
    for k in 0..=n {
        let c = &ctx.pq_binomial(n, k as isize) * &alpha[k];
        sum = &sum + &comps[n - k].scale(&c);
    }
    let mut rhs = sum.scale(&ctx.pq_number(n).recip());
    rhs =
        &rhs + &(&Poly::monomial(ctx, &ctx.p_pow(n as i64) * &ctx.q_pow(-1), 1) * &comps[n - 1]);
    &lhs - &rhs
}

/// The printed difference expression assembled from oracle parts:
/// difference-quotient derivatives and explicit dilations.
pub fn oracle_difference_residual(
    ctx: &PQContext,
    comps: &[Poly],
    alpha: &[Rational],
    n: usize,
) -> Poly {
    let mut acc = Poly::zero(ctx);
    let mut dk = comps[n].clone();
    for k in 0..=n {
        if k > 0 {
            dk = quotient_derivative(&dk);
        }
        if alpha[k].is_zero() {
            continue;
        }
        let c = &alpha[k] / &ctx.pq_factorial(k);
        acc = &acc + &dk.dilate(&ctx.p_pow(-(k as i64))).scale(&c);
    }
    let first = quotient_derivative(&comps[n]).dilate(&ctx.p_pow(-1));
    acc = &acc + &(&Poly::monomial(ctx, &ctx.p_pow(n as i64) * &ctx.q_pow(-1), 1) * &first);
    let shifted = comps[n]
        .dilate(&(ctx.p() / ctx.q()))
        .scale(&ctx.pq_number(n));
    &acc - &shifted
}

/// Probabilists' Hermite polynomials from the classical three-term
/// recurrence `He_(n+1) = x He_n - n He_(n-1)`.
pub fn classical_hermite(ctx: &PQContext, n_max: usize) -> Vec<Poly> {
    let x = Poly::monomial(ctx, Rational::one(), 1);
    let mut out = vec![Poly::one(ctx)];
    if n_max >= 1 {
        out.push(x.clone());
    }
    for n in 1..n_max {
        let next = &(&x * &out[n]) - &out[n - 1].scale(&Rational::from_int(n as i64));
        out.push(next);
    }
    out
}

/// Classical Bernoulli numbers via plain inversion of `(e^t - 1)/t`
/// (ordinary factorials, no (p,q) machinery).
pub fn classical_bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let mut factorials = vec![Rational::one()];
    for n in 1..=(n_max + 1) as i64 {
        let next = factorials.last().unwrap() * &Rational::from_int(n);
        factorials.push(next);
    }
    // raw coefficients of (e^t - 1)/t: 1/(n+1)!
    let g: Vec<Rational> = (0..=n_max).map(|n| factorials[n + 1].recip()).collect();
    let mut b = vec![Rational::one()];
    for n in 1..=n_max {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += &(&g[k] * &b[n - k]);
        }
        b.push(-acc);
    }
    (0..=n_max).map(|n| &b[n] * &factorials[n]).collect()
}
