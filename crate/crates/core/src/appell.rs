//! (p,q)-Appell polynomial sequences.
//!
//! A sequence is stored by its determining coefficients `a_0..a_N` (the
//! normalized coefficients of the determining function `A(t)`), and its
//! component polynomials are materialized on demand through
//!
//! ```text
//! f_n(x) = sum_{k=0}^{n} [n choose k] p^C(n-k,2) a_k x^(n-k)
//! ```
//!
//! which is one of four equivalent characterizations; the others
//! (the defining derivative rule, the generating series
//! `A(t) e_{p,q}(xt)`, and the derivative-operator form) are implemented
//! as separate code paths so they can be checked against each other.
//!
//! The set of non-degenerate sequences over a fixed context forms a
//! commutative group under the convolution `*` (determining functions
//! multiply); `+` and scalar multiplication act coefficient-wise.
//! Sequences with `a_0 = 0` (the Genocchi case) are admitted behind a
//! `degenerate` flag: construction, components and convolution work,
//! while inversion and everything built on it are rejected.

use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::context::PQContext;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binom2, Rational};
use crate::series::{small_exp_in_x, Series};

#[derive(Clone)]
pub struct AppellSequence {
    ctx: PQContext,
    a: Vec<Rational>,
    degenerate: bool,
    /// Lazily materialized component prefix; clones share it. The value
    /// is fully determined by `ctx` and `a`, so the fill is idempotent.
    components: Arc<Mutex<Vec<Poly>>>,
    /// Cached alpha-series prefix (filled by the recurrence module).
    alpha: Arc<Mutex<Vec<Rational>>>,
    /// Cached determining coefficients of the inverse sequence.
    inverse_coeffs: Arc<Mutex<Option<Vec<Rational>>>>,
}

impl PartialEq for AppellSequence {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.a == other.a
    }
}

impl Eq for AppellSequence {}

impl fmt::Debug for AppellSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AppellSequence")
            .field("ctx", &self.ctx)
            .field("a", &self.a)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}

impl AppellSequence {
    /// Sequence with the given determining coefficients `a_0..a_N`.
    /// The degenerate flag is derived from `a_0`.
    pub fn new(ctx: &PQContext, a: Vec<Rational>) -> Self {
        assert!(!a.is_empty(), "a determining sequence needs at least a_0");
        let degenerate = a[0].is_zero();
        AppellSequence {
            ctx: ctx.clone(),
            a,
            degenerate,
            components: Arc::new(Mutex::new(Vec::new())),
            alpha: Arc::new(Mutex::new(Vec::new())),
            inverse_coeffs: Arc::new(Mutex::new(None)),
        }
    }

    pub(crate) fn alpha_cache(&self) -> &Mutex<Vec<Rational>> {
        &self.alpha
    }

    /// The identity element I: determining function 1, components
    /// `p^C(n,2) x^n`.
    pub fn identity(ctx: &PQContext, order: usize) -> Self {
        let mut a = vec![Rational::zero(); order + 1];
        a[0] = Rational::one();
        AppellSequence::new(ctx, a)
    }

    pub fn context(&self) -> &PQContext {
        &self.ctx
    }

    /// Largest n for which coefficients (and components) are stored.
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.a.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The determining function `A(t)` as a scalar series of the given
    /// order (at most the stored order).
    pub fn determining_series(&self, order: usize) -> Result<Series> {
        self.check_order(order)?;
        Ok(Series::from_scalar_coeffs(&self.ctx, &self.a[..=order]))
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(Error::IndexOutOfRange {
                index: n,
                order: self.order(),
            });
        }
        Ok(())
    }

    fn check_ctx(&self, other: &AppellSequence) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// The n-th component polynomial, from the explicit binomial sum.
    pub fn component(&self, n: usize) -> Result<Poly> {
        self.check_order(n)?;
        let mut cache = self.components.lock().unwrap();
        while cache.len() <= n {
            let m = cache.len();
            cache.push(self.compute_component(m));
        }
        Ok(cache[n].clone())
    }

    fn compute_component(&self, n: usize) -> Poly {
        let mut poly = Poly::zero(&self.ctx);
        for k in 0..=n {
            if self.a[k].is_zero() {
                continue;
            }
            let c = &(&self.ctx.pq_binomial(n, k as isize) * &self.ctx.p_pow(binom2(n - k)))
                * &self.a[k];
            poly = &poly + &Poly::monomial(&self.ctx, c, n - k);
        }
        poly
    }

    /// Components `f_0..f_n` in one call.
    pub fn components(&self, n: usize) -> Result<Vec<Poly>> {
        (0..=n).map(|m| self.component(m)).collect()
    }

    /// The generating series `A(t) e_{p,q}(xt)` truncated at the given
    /// order. Its normalized coefficient n equals `component(n)` —
    /// computed through the Cauchy product, not the closed form, so the
    /// two routes stay independent.
    pub fn generating_series(&self, order: usize) -> Result<Series> {
        let a = self.determining_series(order)?;
        a.cauchy_product(&small_exp_in_x(&self.ctx, &Rational::one(), order))
    }

    /// The derivative-operator characterization:
    /// `f_n = (sum_k a_k p^C(n-k,2)/[k]! D^k) x^n`, evaluated by
    /// actually iterating the (p,q)-derivative on `x^n`.
    pub fn operator_form(&self, n: usize) -> Result<Poly> {
        self.check_order(n)?;
        let mut result = Poly::zero(&self.ctx);
        let mut dk = Poly::monomial(&self.ctx, Rational::one(), n);
        for k in 0..=n {
            if k > 0 {
                dk = dk.pq_derivative();
            }
            if self.a[k].is_zero() {
                continue;
            }
            let c = &(&self.a[k] * &self.ctx.p_pow(binom2(n - k))) / &self.ctx.pq_factorial(k);
            result = &result + &dk.scale(&c);
        }
        Ok(result)
    }

    /// Sum of polynomial sets: determining coefficients add. Defined
    /// only when the constant terms do not cancel (degree collapse).
    pub fn add(&self, other: &AppellSequence) -> Result<AppellSequence> {
        self.check_ctx(other)?;
        if (&self.a[0] + &other.a[0]).is_zero() {
            return Err(Error::ZeroConstantSum);
        }
        let order = self.order().min(other.order());
        let a = (0..=order).map(|k| &self.a[k] + &other.a[k]).collect();
        Ok(AppellSequence::new(&self.ctx, a))
    }

    /// `lambda f`: every component (hence every coefficient) scaled.
    pub fn scalar_mul(&self, lambda: &Rational) -> Result<AppellSequence> {
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let a = self.a.iter().map(|c| c * lambda).collect();
        Ok(AppellSequence::new(&self.ctx, a))
    }

    /// The Appell convolution `f * g`: determining functions multiply,
    /// so the coefficients undergo the (p,q)-binomial convolution.
    pub fn convolve(&self, other: &AppellSequence) -> Result<AppellSequence> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        let product = self
            .determining_series(order)?
            .cauchy_product(&other.determining_series(order)?)?;
        let a = (0..=order).map(|n| product.coefficient(n).coeff(0)).collect();
        Ok(AppellSequence::new(&self.ctx, a))
    }

    /// Inverse with respect to `*`: determining function `A(t)^(-1)`.
    pub fn inverse(&self) -> Result<AppellSequence> {
        if self.degenerate {
            return Err(Error::DegenerateSequence("inverse"));
        }
        let mut cached = self.inverse_coeffs.lock().unwrap();
        if cached.is_none() {
            let recip = self.determining_series(self.order())?.reciprocal()?;
            *cached = Some(
                (0..=self.order())
                    .map(|n| recip.coefficient(n).coeff(0))
                    .collect(),
            );
        }
        Ok(AppellSequence::new(&self.ctx, cached.clone().unwrap()))
    }

    /// Iterated convolution power; `f^0 = I`, negative powers go through
    /// the inverse and require a non-degenerate sequence.
    pub fn power(&self, k: i64) -> Result<AppellSequence> {
        if k == 0 {
            return Ok(AppellSequence::identity(&self.ctx, self.order()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.convolve(&base)?;
        }
        Ok(acc)
    }

    /// Residual of the monomial expansion
    /// `x^n = p^(-C(n,2)) sum_k [n choose k] b_k f_(n-k)(x)`
    /// where the `b_k` determine `A(t)^(-1)`. Contract: zero.
    pub fn monomial_expansion_residual(&self, n: usize) -> Result<Poly> {
        if self.degenerate {
            return Err(Error::DegenerateSequence("monomial expansion"));
        }
        self.check_order(n)?;
        let b = self.inverse()?;
        let mut sum = Poly::zero(&self.ctx);
        for k in 0..=n {
            let f = self.component(n - k)?;
            let c = &self.ctx.pq_binomial(n, k as isize) * &b.a[k];
            sum = &sum + &f.scale(&c);
        }
        let rhs = sum.scale(&self.ctx.p_pow(-binom2(n)));
        Ok(&Poly::monomial(&self.ctx, Rational::one(), n) - &rhs)
    }

    pub fn to_json(&self) -> AppellSequenceJson {
        AppellSequenceJson {
            p: self.ctx.p().to_string(),
            q: self.ctx.q().to_string(),
            order: self.order(),
            a: self.a.iter().map(Rational::to_string).collect(),
            degenerate: self.degenerate,
        }
    }
}

/// Wire form: `{ "p": "…", "q": "…", "order": N, "a": [...], "degenerate": bool }`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AppellSequenceJson {
    pub p: String,
    pub q: String,
    pub order: usize,
    pub a: Vec<String>,
    pub degenerate: bool,
}

impl AppellSequenceJson {
    pub fn to_sequence(&self) -> Result<AppellSequence> {
        let ctx = PQContext::new(self.p.parse()?, self.q.parse()?)?;
        let a = self
            .a
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Rational>>>()?;
        Ok(AppellSequence::new(&ctx, a))
    }
}

/// True iff the list satisfies the defining rule
/// `D f_(n+1)(x) = [n+1] f_n(px)` for every consecutive pair AND every
/// `f_n` has exact degree n.
pub fn is_appell(polys: &[Poly]) -> bool {
    assert!(!polys.is_empty(), "empty polynomial list");
    polys
        .iter()
        .enumerate()
        .all(|(n, f)| f.degree() == Some(n))
        && appell_recurrence_holds(polys)
}

/// The derivative rule alone, without the exact-degree clause — the
/// form degenerate sequences (components of one degree less) satisfy.
pub fn appell_recurrence_holds(polys: &[Poly]) -> bool {
    assert!(!polys.is_empty(), "empty polynomial list");
    let ctx = polys[0].context();
    polys.windows(2).enumerate().all(|(n, w)| {
        let lhs = w[1].pq_derivative();
        let rhs = w[0].dilate(ctx.p()).scale(&ctx.pq_number(n + 1));
        lhs == rhs
    })
}

/// The general `*` on arbitrary polynomial sets: with
/// `f_n(x) = sum_k alpha(n,k) x^k`, the n-th component of `f * g` is
/// `sum_k alpha(n,k) p^(-C(k,2)) g_k(x)`. The left operand must be
/// triangular (`deg f_n = n`); on two Appell sets this agrees with
/// [`AppellSequence::convolve`].
pub fn star_general(fpolys: &[Poly], gpolys: &[Poly]) -> Result<Vec<Poly>> {
    assert!(
        !fpolys.is_empty() && !gpolys.is_empty(),
        "empty polynomial list"
    );
    let ctx = fpolys[0].context().clone();
    for (n, f) in fpolys.iter().enumerate() {
        if f.degree() != Some(n) {
            return Err(Error::DegreeViolation(n));
        }
    }
    let len = fpolys.len().min(gpolys.len());
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = Poly::zero(&ctx);
        for k in 0..=n {
            let alpha = fpolys[n].coeff(k);
            if alpha.is_zero() {
                continue;
            }
            acc = &acc + &gpolys[k].scale(&(&alpha * &ctx.p_pow(-binom2(k))));
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::falling_power;

    fn ctx(p: (i64, i64), q: (i64, i64)) -> PQContext {
        PQContext::new(Rational::new(p.0, p.1), Rational::new(q.0, q.1)).unwrap()
    }

    fn seq(c: &PQContext, coeffs: &[(i64, i64)]) -> AppellSequence {
        AppellSequence::new(
            c,
            coeffs.iter().map(|&(n, d)| Rational::new(n, d)).collect(),
        )
    }

    #[test]
    fn identity_components() {
        let c = ctx((2, 1), (1, 1));
        let id = AppellSequence::identity(&c, 6);
        for n in 0..=6 {
            assert_eq!(
                id.component(n).unwrap(),
                Poly::monomial(&c, c.p_pow(binom2(n)), n)
            );
        }
        assert_eq!(
            id.component(2).unwrap(),
            Poly::monomial(&c, Rational::from_int(2), 2)
        );
    }

    #[test]
    fn component_out_of_range() {
        let c = ctx((2, 1), (1, 1));
        let id = AppellSequence::identity(&c, 3);
        assert_eq!(
            id.component(4).unwrap_err(),
            Error::IndexOutOfRange { index: 4, order: 3 }
        );
    }

    #[test]
    fn generating_series_matches_components() {
        let c = ctx((3, 2), (1, 2));
        let f = seq(&c, &[(2, 1), (-1, 3), (5, 2), (0, 1), (7, 1), (1, 6), (-2, 7), (1, 1), (3, 5)]);
        let series = f.generating_series(8).unwrap();
        for n in 0..=8 {
            assert_eq!(series.coefficient(n), &f.component(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn operator_form_matches_components() {
        let c = ctx((2, 1), (1, 1));
        let f = seq(&c, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            f.operator_form(3).unwrap(),
            Poly::monomial(&c, Rational::from_int(8), 3)
        );
        let c = ctx((3, 2), (2, 3));
        let g = seq(&c, &[(3, 4), (1, 1), (-2, 5), (0, 1), (1, 1), (9, 2), (1, 7)]);
        for n in 0..=6 {
            assert_eq!(g.operator_form(n).unwrap(), g.component(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn is_appell_on_hermite_prefix() {
        let c = ctx((2, 1), (1, 1));
        // H_0 = 1, H_1 = x, H_2 = px^2 - 1 at (2,1)
        let polys = vec![
            Poly::one(&c),
            Poly::monomial(&c, Rational::one(), 1),
            Poly::from_coeffs(
                &c,
                vec![Rational::from_int(-1), Rational::zero(), Rational::from_int(2)],
            ),
        ];
        assert!(is_appell(&polys));
    }

    #[test]
    fn is_appell_on_falling_powers() {
        let c = ctx((3, 2), (1, 2));
        let a = Rational::one();
        let polys: Vec<Poly> = (0..=8).map(|n| falling_power(&c, &a, n)).collect();
        assert!(is_appell(&polys));
    }

    #[test]
    fn is_appell_rejects_degree_mismatch() {
        let c = ctx((2, 1), (1, 1));
        let polys = vec![Poly::one(&c), Poly::monomial(&c, Rational::one(), 2)];
        assert!(!is_appell(&polys));
    }

    #[test]
    fn add_examples() {
        let c = ctx((2, 1), (1, 1));
        let f = seq(&c, &[(1, 1), (-2, 3), (4, 21)]);
        let doubled = f.add(&f).unwrap();
        assert_eq!(doubled.coefficient(0), Rational::from_int(2));
        assert_eq!(doubled.coefficient(1), Rational::new(-4, 3));
        for n in 0..=2 {
            assert_eq!(
                doubled.component(n).unwrap(),
                &f.component(n).unwrap() + &f.component(n).unwrap()
            );
        }

        let g = seq(&c, &[(-1, 1), (5, 1), (0, 1)]);
        assert_eq!(f.add(&g).unwrap_err(), Error::ZeroConstantSum);
    }

    #[test]
    fn scalar_mul_examples() {
        let c = ctx((2, 1), (1, 1));
        let id = AppellSequence::identity(&c, 4);
        assert_eq!(id.scalar_mul(&Rational::one()).unwrap(), id);
        let neg = id.scalar_mul(&Rational::from_int(-1)).unwrap();
        assert_eq!(
            neg.component(1).unwrap(),
            Poly::monomial(&c, Rational::from_int(-1), 1)
        );
        assert_eq!(id.scalar_mul(&Rational::zero()).unwrap_err(), Error::ZeroScalar);
    }

    #[test]
    fn convolve_identity_and_commutativity() {
        let c = ctx((3, 2), (1, 2));
        let f = seq(&c, &[(2, 1), (1, 3), (-1, 2), (5, 1), (0, 1), (1, 7)]);
        let id = AppellSequence::identity(&c, 5);
        assert_eq!(f.convolve(&id).unwrap(), f);
        let g = seq(&c, &[(1, 2), (4, 1), (1, 5), (-3, 2), (2, 1), (0, 1)]);
        assert_eq!(f.convolve(&g).unwrap(), g.convolve(&f).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let c = ctx((3, 2), (1, 2));
        let id = AppellSequence::identity(&c, 5);
        assert_eq!(id.inverse().unwrap(), id);

        let f = seq(&c, &[(2, 3), (1, 1), (-1, 4), (0, 1), (5, 6), (1, 1)]);
        assert_eq!(f.inverse().unwrap().inverse().unwrap(), f);
        assert_eq!(f.convolve(&f.inverse().unwrap()).unwrap(), id);

        let degenerate = seq(&c, &[(0, 1), (1, 1)]);
        assert!(degenerate.is_degenerate());
        assert_eq!(
            degenerate.inverse().unwrap_err(),
            Error::DegenerateSequence("inverse")
        );
    }

    #[test]
    fn power_examples() {
        let c = ctx((2, 1), (1, 1));
        let f = seq(&c, &[(1, 1), (1, 2), (-1, 3), (2, 1), (0, 1)]);
        let id = AppellSequence::identity(&c, 4);
        assert_eq!(f.power(0).unwrap(), id);
        assert_eq!(f.power(1).unwrap(), f);
        assert_eq!(f.power(-1).unwrap(), f.inverse().unwrap());
        assert_eq!(f.power(3).unwrap(), f.convolve(&f).unwrap().convolve(&f).unwrap());
        assert_eq!(
            f.power(2).unwrap().convolve(&f.power(-2).unwrap()).unwrap(),
            id
        );
    }

    #[test]
    fn star_general_identity_laws() {
        let c = ctx((3, 2), (1, 2));
        let id = AppellSequence::identity(&c, 6);
        let id_polys = id.components(6).unwrap();
        let f = seq(&c, &[(1, 1), (2, 3), (0, 1), (-1, 2), (1, 1), (4, 5), (1, 9)]);
        let f_polys = f.components(6).unwrap();
        assert_eq!(star_general(&id_polys, &f_polys).unwrap(), f_polys);
        assert_eq!(star_general(&f_polys, &id_polys).unwrap(), f_polys);
    }

    #[test]
    fn star_general_agrees_with_convolve() {
        let c = ctx((3, 2), (1, 2));
        let f = seq(&c, &[(1, 1), (2, 3), (0, 1), (-1, 2), (1, 1), (4, 5), (1, 9)]);
        let g = seq(&c, &[(5, 2), (-1, 1), (1, 3), (2, 1), (0, 1), (1, 4), (-2, 3)]);
        let starred = star_general(&f.components(6).unwrap(), &g.components(6).unwrap()).unwrap();
        let convolved = f.convolve(&g).unwrap();
        for n in 0..=6 {
            assert_eq!(starred[n], convolved.component(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn star_general_rejects_non_triangular_left_operand() {
        let c = ctx((2, 1), (1, 1));
        let bad = vec![Poly::one(&c), Poly::one(&c)];
        let good = AppellSequence::identity(&c, 1).components(1).unwrap();
        assert_eq!(
            star_general(&bad, &good).unwrap_err(),
            Error::DegreeViolation(1)
        );
    }

    #[test]
    fn monomial_expansion_residual_is_zero() {
        let c = ctx((3, 2), (1, 2));
        let id = AppellSequence::identity(&c, 6);
        assert!(id.monomial_expansion_residual(0).unwrap().is_zero());
        assert!(id.monomial_expansion_residual(3).unwrap().is_zero());
        let f = seq(&c, &[(2, 1), (1, 3), (-1, 2), (5, 1), (0, 1), (1, 7), (2, 9)]);
        for n in 0..=6 {
            assert!(f.monomial_expansion_residual(n).unwrap().is_zero(), "n={n}");
        }
        let degenerate = seq(&c, &[(0, 1), (1, 1)]);
        assert_eq!(
            degenerate.monomial_expansion_residual(1).unwrap_err(),
            Error::DegenerateSequence("monomial expansion")
        );
    }

    #[test]
    fn json_round_trip() {
        let c = ctx((3, 2), (1, 2));
        let f = seq(&c, &[(0, 1), (1, 1), (-1, 1)]);
        let json = f.to_json();
        assert!(json.degenerate);
        let back = json.to_sequence().unwrap();
        assert_eq!(back, f);
        let text = serde_json::to_string(&json).unwrap();
        let reparsed: AppellSequenceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed, json);
    }
}
