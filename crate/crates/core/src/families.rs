//! The four concrete families: (p,q)-Bernoulli, Euler, Genocchi and
//! Hermite sequences, their number sequences (the determining
//! coefficients), the explicit Hermite representation, and the
//! Hermite-specific recurrence/difference audits.
//!
//! Determining functions:
//!   Bernoulli  t / (e_{p,q}(t) - 1)
//!   Euler      2 / (e_{p,q}(t) + 1)
//!   Genocchi   2t / (e_{p,q}(t) + 1)   (constant term 0: degenerate)
//!   Hermite    sum (-1)^m p^(m(m-1)) t^(2m) / [2m]!!
//!
//! Bernoulli's determining function is computed as the reciprocal of
//! `(e(t) - 1)/t`, which has unit constant term; division by a series
//! with zero constant term is never attempted.

use std::fmt;
use std::str::FromStr;

use crate::appell::AppellSequence;
use crate::context::PQContext;
use crate::error::Error;
use crate::poly::Poly;
use crate::rational::{binom2, Rational};
use crate::recurrence::printed_recurrence_residual;
use crate::series::Series;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    Bernoulli,
    Euler,
    Genocchi,
    Hermite,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Bernoulli,
        FamilyKind::Euler,
        FamilyKind::Genocchi,
        FamilyKind::Hermite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Euler => "euler",
            FamilyKind::Genocchi => "genocchi",
            FamilyKind::Hermite => "hermite",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(FamilyKind::Bernoulli),
            "euler" => Ok(FamilyKind::Euler),
            "genocchi" => Ok(FamilyKind::Genocchi),
            "hermite" => Ok(FamilyKind::Hermite),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Normalized coefficients of `(e_{p,q}(t) - 1)/t`: entry n is
/// `p^C(n+1,2) / [n+1]` (constant term 1).
fn exp_minus_one_over_t(ctx: &PQContext, order: usize) -> Series {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|n| &ctx.p_pow(binom2(n + 1)) / &ctx.pq_number(n + 1))
        .collect();
    Series::from_scalar_coeffs(ctx, &coeffs)
}

/// Normalized coefficients of `e_{p,q}(t) + 1`.
fn exp_plus_one(ctx: &PQContext, order: usize) -> Series {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|n| {
            if n == 0 {
                Rational::from_int(2)
            } else {
                ctx.p_pow(binom2(n))
            }
        })
        .collect();
    Series::from_scalar_coeffs(ctx, &coeffs)
}

fn scalar_coeffs(series: &Series) -> Vec<Rational> {
    (0..=series.order())
        .map(|n| series.coefficient(n).coeff(0))
        .collect()
}

/// The (p,q)-Bernoulli sequence; its determining coefficients are the
/// (p,q)-Bernoulli numbers.
pub fn bernoulli_sequence(ctx: &PQContext, order: usize) -> AppellSequence {
    let recip = exp_minus_one_over_t(ctx, order)
        .reciprocal()
        .expect("unit constant term");
    AppellSequence::new(ctx, scalar_coeffs(&recip))
}

/// The (p,q)-Euler sequence; coefficients are the (p,q)-Euler numbers.
pub fn euler_sequence(ctx: &PQContext, order: usize) -> AppellSequence {
    let recip = exp_plus_one(ctx, order)
        .reciprocal()
        .expect("constant term 2");
    let coeffs: Vec<Rational> = scalar_coeffs(&recip)
        .into_iter()
        .map(|c| &c * &Rational::from_int(2))
        .collect();
    AppellSequence::new(ctx, coeffs)
}

/// The (p,q)-Genocchi sequence: the Euler determining function times t,
/// so `a_0 = 0` and the sequence is degenerate by construction.
pub fn genocchi_sequence(ctx: &PQContext, order: usize) -> AppellSequence {
    let mut a = vec![Rational::zero()];
    if order > 0 {
        let euler = euler_sequence(ctx, order - 1);
        for n in 1..=order {
            a.push(&ctx.pq_number(n) * &euler.coefficient(n - 1));
        }
    }
    AppellSequence::new(ctx, a)
}

/// The (p,q)-Hermite sequence: even determining coefficients
/// `a_(2m) = (-1)^m p^(m(m-1)) [2m]!/[2m]!!`, odd ones zero.
pub fn hermite_sequence(ctx: &PQContext, order: usize) -> AppellSequence {
    let mut a = vec![Rational::zero(); order + 1];
    for m in 0..=order / 2 {
        let dd = ctx.pq_double_factorial(2 * m).expect("even argument");
        let mut c = &ctx.pq_factorial(2 * m) / &dd;
        c *= &ctx.p_pow((m * m) as i64 - m as i64);
        if m % 2 == 1 {
            c = -c;
        }
        a[2 * m] = c;
    }
    AppellSequence::new(ctx, a)
}

/// Construct any of the four families.
pub fn family_sequence(kind: FamilyKind, ctx: &PQContext, order: usize) -> AppellSequence {
    match kind {
        FamilyKind::Bernoulli => bernoulli_sequence(ctx, order),
        FamilyKind::Euler => euler_sequence(ctx, order),
        FamilyKind::Genocchi => genocchi_sequence(ctx, order),
        FamilyKind::Hermite => hermite_sequence(ctx, order),
    }
}

/// Residual between the representation
/// `f_n(x) = sum_k [n choose k] p^C(n-k,2) a_k x^(n-k)` and the n-th
/// normalized coefficient of the generating series `A(t) e_{p,q}(xt)`
/// (computed through the Cauchy product). Contract: zero.
pub fn family_representation_residual(kind: FamilyKind, ctx: &PQContext, n: usize) -> Poly {
    let seq = family_sequence(kind, ctx, n);
    let series = seq.generating_series(n).expect("order within bounds");
    let mut explicit = Poly::zero(ctx);
    for k in 0..=n {
        let number = seq.coefficient(k);
        if number.is_zero() {
            continue;
        }
        let c = &(&ctx.pq_binomial(n, k as isize) * &ctx.p_pow(binom2(n - k))) * &number;
        explicit = &explicit + &Poly::monomial(ctx, c, n - k);
    }
    &explicit - series.coefficient(n)
}

/// The explicit Hermite representation
/// `H_n = sum_{k=0}^{floor(n/2)} (-1)^k p^(C(n-2k,2)+k(k-1)) [n]!/([2k]!![n-2k]!) x^(n-2k)`.
/// Contract: equals `hermite_sequence(ctx, n).component(n)`.
pub fn hermite_explicit(ctx: &PQContext, n: usize) -> Poly {
    let mut poly = Poly::zero(ctx);
    for k in 0..=n / 2 {
        let dd = ctx.pq_double_factorial(2 * k).expect("even argument");
        let mut c = &ctx.pq_factorial(n) / &(&dd * &ctx.pq_factorial(n - 2 * k));
        c *= &ctx.p_pow(binom2(n - 2 * k) + (k * k) as i64 - k as i64);
        if k % 2 == 1 {
            c = -c;
        }
        poly = &poly + &Poly::monomial(ctx, c, n - 2 * k);
    }
    poly
}

/// Exact residual of the Hermite three-term recurrence as printed:
/// `H_(n+1)(px) - p^(n+1) x H_n(qx) + p^(n-1) [n] H_(n-1)(qx)`, n >= 1.
/// Reported, not assumed zero (nonzero for p != q).
pub fn hermite_printed_recurrence_residual(ctx: &PQContext, n: usize) -> Poly {
    assert!(n >= 1, "recurrence starts at n = 1");
    let h = hermite_sequence(ctx, n + 1);
    let lhs = h.component(n + 1).unwrap().dilate(ctx.p());
    let x_term = &Poly::monomial(ctx, ctx.p_pow(n as i64 + 1), 1)
        * &h.component(n).unwrap().dilate(ctx.q());
    let tail = h
        .component(n - 1)
        .unwrap()
        .dilate(ctx.q())
        .scale(&(&ctx.p_pow(n as i64 - 1) * &ctx.pq_number(n)));
    &(&lhs - &x_term) + &tail
}

/// Exact evaluation of the Hermite difference equation as printed:
/// `L_p^(-2) D^2 H_n - p^2 q^(-1) x L_p^(-1) D H_n + p^(2-n) [n] H_n(px/q)`.
/// Reported, not assumed zero.
pub fn hermite_printed_difference_residual(ctx: &PQContext, n: usize) -> Poly {
    let h = hermite_sequence(ctx, n).component(n).unwrap();
    let d1 = h.pq_derivative();
    let d2 = d1.pq_derivative();
    let first = d2.dilate(&ctx.p_pow(-2));
    let second = &Poly::monomial(ctx, &ctx.p_pow(2) * &ctx.q_pow(-1), 1)
        * &d1.dilate(&ctx.p_pow(-1));
    let third = h
        .dilate(&(ctx.p() / ctx.q()))
        .scale(&(&ctx.p_pow(2 - n as i64) * &ctx.pq_number(n)));
    &(&first - &second) + &third
}

/// Exact residual of the corrected Hermite recurrence
/// `H_n(x) = p^(n-1) x H_(n-1)(x) - [n-1] p^(n-2) H_(n-2)(qx/p)`, n >= 2
/// (the corrected general recurrence specialized to alpha_2 = -[2]!).
/// Contract: zero.
pub fn hermite_derived_recurrence_residual(ctx: &PQContext, n: usize) -> Poly {
    assert!(n >= 2, "three-term form starts at n = 2");
    let h = hermite_sequence(ctx, n);
    let lhs = h.component(n).unwrap();
    let x_term = &Poly::monomial(ctx, ctx.p_pow(n as i64 - 1), 1) * &h.component(n - 1).unwrap();
    let tail = h
        .component(n - 2)
        .unwrap()
        .dilate(&(ctx.q() / ctx.p()))
        .scale(&(&ctx.pq_number(n - 1) * &ctx.p_pow(n as i64 - 2)));
    &(&lhs - &x_term) + &tail
}

/// Theorem-audit consistency: the printed Hermite recurrence must equal
/// the printed general recurrence specialized to the Hermite alpha
/// series (n -> n+1, x -> qx), up to the exact factor-of-`p^(n-1)`
/// discrepancy between the two printed displays:
///
/// ```text
/// hermite_printed(n) = dilate(printed_general(n+1), q)
///                      + [n] (p^(n-1) - 1) H_(n-1)(qx)
/// ```
///
/// Returns the residual of this bookkeeping identity. Contract: zero.
pub fn hermite_recurrence_consistency_residual(ctx: &PQContext, n: usize) -> Poly {
    assert!(n >= 1);
    let h = hermite_sequence(ctx, n + 1);
    let specialized = printed_recurrence_residual(&h, n + 1)
        .expect("hermite is non-degenerate")
        .dilate(ctx.q());
    let discrepancy = h
        .component(n - 1)
        .unwrap()
        .dilate(ctx.q())
        .scale(&(&ctx.pq_number(n) * &(&ctx.p_pow(n as i64 - 1) - &Rational::one())));
    &(&hermite_printed_recurrence_residual(ctx, n) - &specialized) - &discrepancy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::{appell_recurrence_holds, is_appell};

    fn ctx(p: (i64, i64), q: (i64, i64)) -> PQContext {
        PQContext::new(Rational::new(p.0, p.1), Rational::new(q.0, q.1)).unwrap()
    }

    fn rationals(vals: &[(i64, i64)]) -> Vec<Rational> {
        vals.iter().map(|&(n, d)| Rational::new(n, d)).collect()
    }

    #[test]
    fn family_kind_parsing() {
        assert_eq!("hermite".parse::<FamilyKind>().unwrap(), FamilyKind::Hermite);
        assert_eq!("Bernoulli".parse::<FamilyKind>().unwrap(), FamilyKind::Bernoulli);
        assert_eq!(
            "gamma".parse::<FamilyKind>().unwrap_err(),
            Error::UnknownFamily("gamma".to_string())
        );
    }

    #[test]
    fn bernoulli_low_coefficients() {
        let c = ctx((2, 1), (1, 1));
        let b = bernoulli_sequence(&c, 4);
        assert_eq!(b.coefficient(0), Rational::one());
        assert_eq!(b.coefficient(1), Rational::new(-2, 3)); // -p/(p+q)
        // oracle-fixed at (2,1): 1, -2/3, 4/21, 8/45, 464/1953
        assert_eq!(b.coefficient(2), Rational::new(4, 21));
        assert_eq!(b.coefficient(3), Rational::new(8, 45));
        assert_eq!(b.coefficient(4), Rational::new(464, 1953));

        let c = ctx((3, 2), (1, 2));
        let b = bernoulli_sequence(&c, 1);
        assert_eq!(b.coefficient(1), Rational::new(-3, 4)); // -p/(p+q) = -(3/2)/2
    }

    #[test]
    fn bernoulli_classical_numbers() {
        let c = ctx((1, 1), (1, 1));
        let b = bernoulli_sequence(&c, 8);
        let expected = rationals(&[
            (1, 1),
            (-1, 2),
            (1, 6),
            (0, 1),
            (-1, 30),
            (0, 1),
            (1, 42),
            (0, 1),
            (-1, 30),
        ]);
        assert_eq!(b.coefficients(), &expected);
    }

    #[test]
    fn euler_classical_numbers() {
        let c = ctx((1, 1), (1, 1));
        let e = euler_sequence(&c, 8);
        let expected = rationals(&[
            (1, 1),
            (-1, 2),
            (0, 1),
            (1, 4),
            (0, 1),
            (-1, 2),
            (0, 1),
            (17, 8),
            (0, 1),
        ]);
        assert_eq!(e.coefficients(), &expected);
    }

    #[test]
    fn bernoulli_inverse_has_closed_form() {
        // inverse coefficients are p^C(n+1,2)/[n+1], i.e. (e(t)-1)/t
        let c = ctx((3, 2), (1, 2));
        let b = bernoulli_sequence(&c, 6);
        let inv = b.inverse().unwrap();
        for n in 0..=6usize {
            let expected = &c.p_pow(crate::rational::binom2(n + 1)) / &c.pq_number(n + 1);
            assert_eq!(inv.coefficient(n), expected, "n={n}");
        }
        assert!(b.monomial_expansion_residual(4).unwrap().is_zero());
    }

    #[test]
    fn euler_a1_is_parameter_free() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((7, 3), (2, 5))] {
            let e = euler_sequence(&ctx(p, q), 1);
            assert_eq!(e.coefficient(0), Rational::one());
            assert_eq!(e.coefficient(1), Rational::new(-1, 2));
        }
    }

    #[test]
    fn genocchi_classical_numbers() {
        let c = ctx((1, 1), (1, 1));
        let g = genocchi_sequence(&c, 8);
        let expected = rationals(&[
            (0, 1),
            (1, 1),
            (-1, 1),
            (0, 1),
            (1, 1),
            (0, 1),
            (-3, 1),
            (0, 1),
            (17, 1),
        ]);
        assert_eq!(g.coefficients(), &expected);
        assert!(g.is_degenerate());
    }

    #[test]
    fn genocchi_a1_at_any_context() {
        let g = genocchi_sequence(&ctx((3, 2), (1, 2)), 2);
        assert_eq!(g.coefficient(0), Rational::zero());
        assert_eq!(g.coefficient(1), Rational::one()); // [1] * euler a_0
    }

    #[test]
    fn hermite_coefficients() {
        let c = ctx((3, 2), (1, 2));
        let h = hermite_sequence(&c, 4);
        assert_eq!(h.coefficient(0), Rational::one());
        assert_eq!(h.coefficient(1), Rational::zero());
        assert_eq!(h.coefficient(2), Rational::from_int(-1)); // -[2]!/[2]!!
        assert_eq!(h.coefficient(3), Rational::zero());

        // classical a_4 = 3 (exp(-t^2/2) has t^4 coefficient 1/8; 4!/8 = 3)
        let classical = hermite_sequence(&ctx((1, 1), (1, 1)), 6);
        assert_eq!(classical.coefficient(4), Rational::from_int(3));
        assert_eq!(classical.coefficient(6), Rational::from_int(-15));
    }

    #[test]
    fn hermite_components_at_2_1() {
        // oracle-fixed: H_2 = 2x^2 - 1, H_3 = 8x^3 - 7x, H_4 = 64x^4 - 70x^2 + 28
        let c = ctx((2, 1), (1, 1));
        let h = hermite_sequence(&c, 4);
        assert_eq!(
            h.component(2).unwrap(),
            Poly::from_coeffs(&c, rationals(&[(-1, 1), (0, 1), (2, 1)]))
        );
        assert_eq!(
            h.component(3).unwrap(),
            Poly::from_coeffs(&c, rationals(&[(0, 1), (-7, 1), (0, 1), (8, 1)]))
        );
        assert_eq!(
            h.component(4).unwrap(),
            Poly::from_coeffs(&c, rationals(&[(28, 1), (0, 1), (-70, 1), (0, 1), (64, 1)]))
        );
    }

    #[test]
    fn classical_hermite_matches_three_term_recurrence() {
        // He_(n+1) = x He_n - n He_(n-1), generated independently
        let c = ctx((1, 1), (1, 1));
        let h = hermite_sequence(&c, 8);
        let x = Poly::monomial(&c, Rational::one(), 1);
        let mut prev = Poly::one(&c);
        let mut cur = x.clone();
        assert_eq!(h.component(0).unwrap(), prev);
        assert_eq!(h.component(1).unwrap(), cur);
        for n in 1..8usize {
            let next = &(&x * &cur) - &prev.scale(&Rational::from_int(n as i64));
            assert_eq!(h.component(n + 1).unwrap(), next, "n+1={}", n + 1);
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn all_families_satisfy_appell_rule() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            for kind in FamilyKind::ALL {
                let seq = family_sequence(kind, &c, 12);
                let polys = seq.components(12).unwrap();
                if seq.is_degenerate() {
                    assert!(appell_recurrence_holds(&polys), "{kind} at {p:?},{q:?}");
                } else {
                    assert!(is_appell(&polys), "{kind} at {p:?},{q:?}");
                }
            }
        }
    }

    #[test]
    fn representation_residuals_vanish() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            for kind in FamilyKind::ALL {
                for n in 0..=12 {
                    assert!(
                        family_representation_residual(kind, &c, n).is_zero(),
                        "{kind} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn hermite_explicit_matches_components() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            let h = hermite_sequence(&c, 12);
            for n in 0..=12 {
                assert_eq!(hermite_explicit(&c, n), h.component(n).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn hermite_explicit_spot_values() {
        let c = ctx((2, 1), (1, 1));
        assert_eq!(hermite_explicit(&c, 0), Poly::one(&c));
        assert_eq!(hermite_explicit(&c, 1), Poly::monomial(&c, Rational::one(), 1));
        // H_2 = p x^2 - 1, H_3 = p^3 x^3 - [3] x
        assert_eq!(
            hermite_explicit(&c, 2),
            Poly::from_coeffs(&c, rationals(&[(-1, 1), (0, 1), (2, 1)]))
        );
        assert_eq!(
            hermite_explicit(&c, 3),
            Poly::from_coeffs(&c, rationals(&[(0, 1), (-7, 1), (0, 1), (8, 1)]))
        );
    }

    #[test]
    fn hermite_printed_recurrence_oracle_values() {
        // oracle-fixed: at (2,1), n=1 the residual is 4x^2
        let c = ctx((2, 1), (1, 1));
        let res = hermite_printed_recurrence_residual(&c, 1);
        assert_eq!(res, Poly::monomial(&c, Rational::from_int(4), 2));

        // zero at the classical point
        let classical = ctx((1, 1), (1, 1));
        for n in 1..=8 {
            assert!(hermite_printed_recurrence_residual(&classical, n).is_zero());
        }
        // zero whenever p = q
        let pq = ctx((2, 1), (2, 1));
        for n in 1..=6 {
            assert!(hermite_printed_recurrence_residual(&pq, n).is_zero());
        }
    }

    #[test]
    fn hermite_printed_difference_oracle_values() {
        // n = 0: every term vanishes
        let c = ctx((2, 1), (1, 1));
        assert!(hermite_printed_difference_residual(&c, 0).is_zero());
        // oracle-fixed: at (2,1), n=2 the value is 12x^2 + 3
        let res = hermite_printed_difference_residual(&c, 2);
        assert_eq!(
            res,
            Poly::from_coeffs(&c, rationals(&[(3, 1), (0, 1), (12, 1)]))
        );
        // classical point: reduces to He_n'' - x He_n' + n He_n = 0
        let classical = ctx((1, 1), (1, 1));
        for n in 0..=8 {
            assert!(hermite_printed_difference_residual(&classical, n).is_zero());
        }
    }

    #[test]
    fn hermite_derived_recurrence_is_exact() {
        let c = ctx((2, 1), (1, 1));
        // n=3 at (2,1): (8x^3-7x) - (4x(2x^2-1) - 3*2*(x/2)) = 0
        assert!(hermite_derived_recurrence_residual(&c, 3).is_zero());
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            for n in 2..=12 {
                assert!(
                    hermite_derived_recurrence_residual(&c, n).is_zero(),
                    "p={p:?} q={q:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn hermite_consistency_with_general_recurrence() {
        for (p, q) in [((2, 1), (1, 1)), ((3, 2), (1, 2)), ((1, 1), (1, 1))] {
            let c = ctx(p, q);
            for n in 1..=8 {
                assert!(
                    hermite_recurrence_consistency_residual(&c, n).is_zero(),
                    "p={p:?} q={q:?} n={n}"
                );
            }
        }
    }
}
