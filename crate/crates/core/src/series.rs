//! Truncated formal power series in t with polynomial coefficients.
//!
//! Storage is factorial-normalized: entry `n` holds `c_n` where the
//! series is `sum c_n t^n / [n]!`. That makes the Cauchy product a
//! (p,q)-binomial convolution and the t-derivative a pure shift, which
//! is exactly how the generating-function identities are organized.
//! Explicit zeros are kept: the list always has length `order + 1`.

use serde::{Deserialize, Serialize};

use crate::context::PQContext;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binom2, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    ctx: PQContext,
    coeffs: Vec<Poly>,
}

impl Series {
    /// Zero series of the given truncation order.
    pub fn zero(ctx: &PQContext, order: usize) -> Self {
        Series {
            ctx: ctx.clone(),
            coeffs: vec![Poly::zero(ctx); order + 1],
        }
    }

    /// The unit series: `c_0 = 1`, rest zero.
    pub fn one(ctx: &PQContext, order: usize) -> Self {
        let mut s = Series::zero(ctx, order);
        s.coeffs[0] = Poly::one(ctx);
        s
    }

    /// Series with scalar normalized coefficients (degree-0 polynomials).
    pub fn from_scalar_coeffs(ctx: &PQContext, coeffs: &[Rational]) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 entry");
        Series {
            ctx: ctx.clone(),
            coeffs: coeffs
                .iter()
                .map(|c| Poly::constant(ctx, c.clone()))
                .collect(),
        }
    }

    pub fn from_polys(ctx: &PQContext, coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 entry");
        assert!(
            coeffs.iter().all(|c| c.context() == ctx),
            "series coefficients must share one context"
        );
        Series {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn context(&self) -> &PQContext {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Normalized coefficient `c_n` (of `t^n/[n]!`).
    pub fn coefficient(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Truncate (or keep) to the given order; extending pads with zeros.
    pub fn truncated(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Poly::zero(&self.ctx));
        Series {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn check_ctx(&self, other: &Series) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Normalized Cauchy product: coefficient n of the result is
    /// `sum_k [n choose k] a_k b_(n-k)`. Result order is the minimum of
    /// the operand orders.
    pub fn cauchy_product(&self, other: &Series) -> Result<Series> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = Poly::zero(&self.ctx);
            for k in 0..=n {
                let a = &self.coeffs[k];
                let b = &other.coeffs[n - k];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let term = (a * b).scale(&self.ctx.pq_binomial(n, k as isize));
                acc = &acc + &term;
            }
            coeffs.push(acc);
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse up to the stored order, by forward
    /// substitution `b_n = -(1/a_0) sum_{k=1}^{n} [n choose k] a_k b_(n-k)`.
    /// Requires a nonzero constant `a_0`.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() || a0.degree() != Some(0) {
            return Err(Error::NonInvertibleSeries);
        }
        let inv_a0 = a0.coeff(0).recip();
        let mut coeffs = vec![Poly::constant(&self.ctx, inv_a0.clone())];
        for n in 1..=self.order() {
            let mut acc = Poly::zero(&self.ctx);
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                let term = (a * &coeffs[n - k]).scale(&self.ctx.pq_binomial(n, k as isize));
                acc = &acc + &term;
            }
            coeffs.push(acc.scale(&-&inv_a0));
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// t-derivative. In normalized storage `D_t` is a shift: the result
    /// coefficient `n` is `c_(n+1)` and the order drops by one (an
    /// order-0 input yields the zero series of order 0).
    pub fn derivative_t(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(&self.ctx, 0);
        }
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Argument scaling `t -> c t`: coefficient n multiplied by `c^n`.
    pub fn dilate_t(&self, c: &Rational) -> Series {
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
        Series {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Multiplication by t. In normalized storage the coefficient moves
    /// up one slot and picks up `[n]`: result coefficient n is
    /// `[n] c_(n-1)`. The order is preserved (the top entry falls off).
    pub fn mul_t(&self) -> Series {
        let mut coeffs = vec![Poly::zero(&self.ctx)];
        for n in 1..=self.order() {
            coeffs.push(self.coeffs[n - 1].scale(&self.ctx.pq_number(n)));
        }
        Series {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_ctx(other)?;
        let order = self.order().min(other.order());
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// JSON form: normalized coefficients as arrays of rational strings.
    pub fn coeff_strings(&self) -> Vec<Vec<String>> {
        self.coeffs.iter().map(Poly::coeff_strings).collect()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeff_strings(),
        }
    }
}

/// Wire form: `{ "order": N, "coeffs": [Poly JSON, ...] }`. The entries
/// are the coefficients of `t^n/[n]!` (normalized storage), ascending.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<Vec<String>>,
}

impl SeriesJson {
    pub fn to_series(&self, ctx: &PQContext) -> Result<Series> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series of order {} must carry exactly {} coefficients, got {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|strings| Poly::from_coeff_strings(ctx, strings))
            .collect::<Result<Vec<Poly>>>()?;
        Ok(Series::from_polys(ctx, coeffs))
    }
}

/// `e_{p,q}(lambda t)`: normalized coefficient `c_n = p^C(n,2) lambda^n`.
pub fn small_exp(ctx: &PQContext, lambda: &Rational, order: usize) -> Series {
    exp_series(ctx, lambda, order, true)
}

/// `E_{p,q}(lambda t)`: normalized coefficient `c_n = q^C(n,2) lambda^n`.
pub fn big_exp(ctx: &PQContext, lambda: &Rational, order: usize) -> Series {
    exp_series(ctx, lambda, order, false)
}

fn exp_series(ctx: &PQContext, lambda: &Rational, order: usize, small: bool) -> Series {
    let coeffs = (0..=order)
        .map(|n| {
            let base = if small {
                ctx.p_pow(binom2(n))
            } else {
                ctx.q_pow(binom2(n))
            };
            Poly::constant(ctx, &base * &lambda.pow(n as i64))
        })
        .collect();
    Series::from_polys(ctx, coeffs)
}

/// The Appell kernel `e_{p,q}(scale * x * t)` with polynomial
/// coefficients: entry n is `p^C(n,2) scale^n x^n`.
pub fn small_exp_in_x(ctx: &PQContext, scale: &Rational, order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|n| {
            Poly::monomial(
                ctx,
                &ctx.p_pow(binom2(n)) * &scale.pow(n as i64),
                n,
            )
        })
        .collect();
    Series::from_polys(ctx, coeffs)
}

/// Residual of `D_t^n e_{p,q}(lambda t) - lambda^n p^C(n,2) e_{p,q}(lambda p^n t)`
/// up to order `order - n`. Contract: zero.
pub fn nth_derivative_small_exp_residual(
    ctx: &PQContext,
    lambda: &Rational,
    n: usize,
    order: usize,
) -> Series {
    assert!(n <= order, "derivative order exceeds truncation order");
    let mut lhs = small_exp(ctx, lambda, order);
    for _ in 0..n {
        lhs = lhs.derivative_t();
    }
    let scaled_arg = lambda * &ctx.p_pow(n as i64);
    let rhs = small_exp(ctx, &scaled_arg, order - n)
        .scale(&(&lambda.pow(n as i64) * &ctx.p_pow(binom2(n))));
    lhs.sub(&rhs).expect("same context")
}

/// Residual of `D_t^n E_{p,q}(lambda t) - lambda^n q^C(n,2) E_{p,q}(lambda q^n t)`
/// up to order `order - n`. Contract: zero.
pub fn nth_derivative_big_exp_residual(
    ctx: &PQContext,
    lambda: &Rational,
    n: usize,
    order: usize,
) -> Series {
    assert!(n <= order, "derivative order exceeds truncation order");
    let mut lhs = big_exp(ctx, lambda, order);
    for _ in 0..n {
        lhs = lhs.derivative_t();
    }
    let scaled_arg = lambda * &ctx.q_pow(n as i64);
    let rhs = big_exp(ctx, &scaled_arg, order - n)
        .scale(&(&lambda.pow(n as i64) * &ctx.q_pow(binom2(n))));
    lhs.sub(&rhs).expect("same context")
}
