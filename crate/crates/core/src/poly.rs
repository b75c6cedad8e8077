//! Dense exact polynomials in x, the (p,q)-derivative, dilation, the
//! falling/raising (p,q)-powers and the Taylor reconstruction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::context::PQContext;
use crate::rational::{binom2, Rational};

/// Dense univariate polynomial over [`Rational`]. `coeffs[i]` is the
/// coefficient of `x^i`; trailing zeros are trimmed so the zero
/// polynomial has an empty coefficient list and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: PQContext,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero(ctx: &PQContext) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ctx: &PQContext, c: Rational) -> Self {
        Poly::from_coeffs(ctx, vec![c])
    }

    pub fn one(ctx: &PQContext) -> Self {
        Poly::constant(ctx, Rational::one())
    }

    /// `c * x^deg`
    pub fn monomial(ctx: &PQContext, c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(ctx);
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Ascending-degree coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(ctx: &PQContext, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn context(&self) -> &PQContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x0) + c;
        }
        acc
    }

    /// `g(x) = f(c x)`: coefficient `i` scaled by `c^i`.
    pub fn dilate(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i > 0 {
                    pow *= c;
                }
                a * &pow
            })
            .collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// The (p,q)-derivative, computed coefficient-wise: the coefficient
    /// of `x^(n-1)` in the output is `[n]` times the coefficient of
    /// `x^n` in the input. For polynomials this agrees with the
    /// difference quotient `(f(px) - f(qx))/((p-q)x)` whenever `p != q`
    /// and stays defined at `p = q`.
    pub fn pq_derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a * &self.ctx.pq_number(n))
            .collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// Iterated (p,q)-derivative.
    pub fn pq_derivative_n(&self, k: usize) -> Poly {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.pq_derivative();
        }
        f
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Coefficients as display strings, ascending degree (the JSON form).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Rational::to_string).collect()
    }

    /// Rebuild from the JSON coefficient form.
    pub fn from_coeff_strings(ctx: &PQContext, strings: &[String]) -> crate::error::Result<Poly> {
        let coeffs = strings
            .iter()
            .map(|s| s.parse())
            .collect::<crate::error::Result<Vec<Rational>>>()?;
        Ok(Poly::from_coeffs(ctx, coeffs))
    }

    /// LaTeX rendering, descending degree.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            match i {
                0 => out.push_str(&coeff_str),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coeff_str);
                    }
                    if i == 1 {
                        out.push('x');
                    } else {
                        out.push_str(&format!("x^{{{i}}}"));
                    }
                }
            }
        }
        out
    }
}

fn assert_same_ctx(a: &Poly, b: &Poly) {
    assert!(
        a.ctx == b.ctx,
        "polynomial operands belong to different (p,q) contexts"
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same_ctx(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_same_ctx(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same_ctx(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Text form, descending degree: `8x^3 - 7x`, `(3/2)x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        // parenthesize fractions juxtaposed with x
                        if mag.is_integer() {
                            write!(f, "{mag}")?;
                        } else {
                            write!(f, "({mag})")?;
                        }
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Falling (p,q)-power `(x (-) a)^n = prod_{k=0}^{n-1} (p^k x - q^k a)`;
/// the empty product (n = 0) is 1.
pub fn falling_power(ctx: &PQContext, a: &Rational, n: usize) -> Poly {
    power_product(ctx, a, n, true)
}

/// Raising (p,q)-power `(x (+) a)^n = prod_{k=0}^{n-1} (p^k x + q^k a)`.
pub fn raising_power(ctx: &PQContext, a: &Rational, n: usize) -> Poly {
    power_product(ctx, a, n, false)
}

fn power_product(ctx: &PQContext, a: &Rational, n: usize, falling: bool) -> Poly {
    let mut acc = Poly::one(ctx);
    for k in 0..n {
        let aq = &ctx.q_pow(k as i64) * a;
        let constant = if falling { -aq } else { aq };
        let factor = Poly::from_coeffs(ctx, vec![constant, ctx.p_pow(k as i64)]);
        acc = &acc * &factor;
    }
    acc
}

/// Rebuilds `f` from its Taylor data `c_k = (D^k f)(0) / [k]!` and
/// returns `sum c_k x^k`. Contract: equals `f`.
pub fn taylor_reconstruct(f: &Poly) -> Poly {
    let ctx = f.context();
    let zero = Rational::zero();
    let deg = match f.degree() {
        None => return Poly::zero(ctx),
        Some(d) => d,
    };
    let mut coeffs = Vec::with_capacity(deg + 1);
    let mut derivative = f.clone();
    for k in 0..=deg {
        if k > 0 {
            derivative = derivative.pq_derivative();
        }
        coeffs.push(&derivative.eval(&zero) / &ctx.pq_factorial(k));
    }
    Poly::from_coeffs(ctx, coeffs)
}

/// Residual between the binomial expansion of the falling power
/// `(a (-) x)^n = sum_k [n choose k] q^C(k,2) p^C(n-k,2) (-x)^k a^(n-k)`
/// and its product form, as a polynomial in x. Contract: zero.
pub fn falling_expansion_check(ctx: &PQContext, a: &Rational, n: usize) -> Poly {
    // product form of (a (-) x)^n, with a in the role of the variable:
    // prod_{k=0}^{n-1} (p^k a - q^k x)
    let mut product = Poly::one(ctx);
    for k in 0..n {
        let factor = Poly::from_coeffs(
            ctx,
            vec![&ctx.p_pow(k as i64) * a, -ctx.q_pow(k as i64)],
        );
        product = &product * &factor;
    }
    let mut sum = Poly::zero(ctx);
    for k in 0..=n {
        let mut c = ctx.pq_binomial(n, k as isize);
        c *= &ctx.q_pow(binom2(k));
        c *= &ctx.p_pow(binom2(n - k));
        c *= &a.pow((n - k) as i64);
        if k % 2 == 1 {
            c = -c;
        }
        sum = &sum + &Poly::monomial(ctx, c, k);
    }
    &sum - &product
}
