//! Exact (p,q)-calculus and (p,q)-Appell polynomial sequences.
//!
//! Everything is computed over arbitrary-precision rationals — there are
//! no floating-point numbers and no tolerances anywhere. The library
//! provides:
//!
//! - twin-basic numbers, factorials, double factorials and binomial
//!   coefficients over a [`PQContext`] ([`context`]);
//! - dense exact polynomials with the (p,q)-derivative, dilation
//!   operators, falling/raising powers and Taylor reconstruction
//!   ([`poly`]);
//! - truncated formal power series in factorial-normalized storage with
//!   Cauchy products, reciprocals and both (p,q)-exponentials
//!   ([`series`]);
//! - Appell sequences built from determining coefficients, their four
//!   equivalent characterizations, and the commutative group they form
//!   under convolution ([`appell`]);
//! - the alpha series with exact residual evaluators for the recurrence
//!   and difference-equation identities, both as printed and in
//!   corrected form ([`recurrence`]);
//! - the Bernoulli, Euler, Genocchi and Hermite families with their
//!   representation checks and Hermite-specific audits ([`families`]);
//! - a seeded, deterministic verification suite producing a structured
//!   report with exact errata for the printed identities ([`suite`]).

pub mod appell;
pub mod context;
pub mod error;
pub mod families;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod sampling;
pub mod series;
pub mod suite;

pub use appell::{appell_recurrence_holds, is_appell, star_general, AppellSequence};
pub use context::PQContext;
pub use error::{Error, Result};
pub use families::{
    bernoulli_sequence, euler_sequence, family_sequence, genocchi_sequence, hermite_explicit,
    hermite_sequence, FamilyKind,
};
pub use poly::{falling_power, raising_power, taylor_reconstruct, Poly};
pub use rational::Rational;
pub use recurrence::{alpha_series, AlphaSeries};
pub use series::{big_exp, small_exp, small_exp_in_x, Series, SeriesJson};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
