//! Seeded generation of rational (p,q) contexts and random test
//! material.
//!
//! Identity checking works by exact evaluation at pseudo-random rational
//! points: every identity under test is polynomial in (p, q, x), and a
//! nonzero polynomial cannot vanish at generic rational points, so exact
//! agreement at a handful of seeded samples (plus the distinguished
//! classical and q-calculus points) is decisive without any tolerance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::appell::AppellSequence;
use crate::context::PQContext;
use crate::poly::Poly;
use crate::rational::Rational;

/// The deterministic generator used throughout the suite.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational strictly inside (0,1) with a small denominator.
fn unit_interval_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=9i64);
    let num = rng.gen_range(1..den);
    Rational::new(num, den)
}

/// Sampled contexts: q in (0,1), p in (1,2), so q < 1 < p always.
/// Duplicates are re-drawn to keep the set of points distinct.
pub fn sample_contexts(seed: u64, samples: usize) -> Vec<PQContext> {
    let mut rng = seeded_rng(seed);
    let mut out: Vec<PQContext> = Vec::with_capacity(samples);
    while out.len() < samples {
        let p = &Rational::one() + &unit_interval_rational(&mut rng);
        let q = unit_interval_rational(&mut rng);
        let ctx = PQContext::new(p, q).expect("nonzero by construction");
        if !out.contains(&ctx) {
            out.push(ctx);
        }
    }
    out
}

/// The two distinguished degeneration points: classical (1,1) and the
/// q-calculus point (1, 1/2).
pub fn distinguished_contexts() -> Vec<PQContext> {
    vec![
        PQContext::from_ints(1, 1).unwrap(),
        PQContext::new(Rational::one(), Rational::new(1, 2)).unwrap(),
    ]
}

/// Sampled contexts with the distinguished points appended.
pub fn suite_contexts(seed: u64, samples: usize) -> Vec<PQContext> {
    let mut out = sample_contexts(seed, samples);
    out.extend(distinguished_contexts());
    out
}

/// Small random rational with numerator in [-9, 9] and denominator in
/// [1, 9]; optionally guaranteed nonzero.
pub fn random_rational(rng: &mut ChaCha8Rng, allow_zero: bool) -> Rational {
    loop {
        let num = rng.gen_range(-9..=9i64);
        if num == 0 && !allow_zero {
            continue;
        }
        let den = rng.gen_range(1..=9i64);
        return Rational::new(num, den);
    }
}

/// Random polynomial of exactly the given degree.
pub fn random_poly(rng: &mut ChaCha8Rng, ctx: &PQContext, degree: usize) -> Poly {
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| random_rational(rng, true)).collect();
    coeffs.push(random_rational(rng, false));
    Poly::from_coeffs(ctx, coeffs)
}

/// Random non-degenerate determining sequence of the given order.
pub fn random_sequence(rng: &mut ChaCha8Rng, ctx: &PQContext, order: usize) -> AppellSequence {
    let mut a = vec![random_rational(rng, false)];
    a.extend((0..order).map(|_| random_rational(rng, true)));
    AppellSequence::new(ctx, a)
}
