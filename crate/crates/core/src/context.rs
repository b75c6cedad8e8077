//! The (p,q) parameter pair and the exact combinatorial quantities built
//! from it: twin-basic numbers, factorials, double factorials, binomial
//! coefficients, and the alternating delta sum.
//!
//! `[n]` is computed as the homogeneous sum `sum p^i q^(n-1-i)`, which
//! equals `(p^n - q^n)/(p - q)` whenever `p != q` and stays defined at
//! `p = q`, so the classical point `p = q = 1` and the q-point `p = 1`
//! are ordinary contexts, not limits.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::rational::{binom2, Rational};

#[derive(Default)]
struct Caches {
    /// `numbers[n] = [n]`
    numbers: Vec<Rational>,
    /// `factorials[n] = [n]!`
    factorials: Vec<Rational>,
    /// `double_factorials[m] = [2m]!!`
    double_factorials: Vec<Rational>,
    /// `p_powers[k] = p^k`
    p_powers: Vec<Rational>,
    /// `q_powers[k] = q^k`
    q_powers: Vec<Rational>,
    /// `binomials[n][k] = [n choose k]`
    binomials: Vec<Vec<Rational>>,
}

struct Inner {
    p: Rational,
    q: Rational,
    cache: Mutex<Caches>,
}

/// Fixed rational parameters (p, q) plus memo tables for `[n]`, `[n]!`
/// and `[2n]!!`. Cheap to clone (shared interior); cache entries are
/// filled once and never change, and the fill is idempotent, so the
/// context is safe to share across threads.
#[derive(Clone)]
pub struct PQContext {
    inner: Arc<Inner>,
}

impl PQContext {
    /// Both parameters must be nonzero. `p == q` is allowed.
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroParameter("p"));
        }
        if q.is_zero() {
            return Err(Error::ZeroParameter("q"));
        }
        Ok(PQContext {
            inner: Arc::new(Inner {
                p,
                q,
                cache: Mutex::new(Caches::default()),
            }),
        })
    }

    /// Shorthand for small integer parameters.
    pub fn from_ints(p: i64, q: i64) -> Result<Self> {
        Self::new(Rational::from_int(p), Rational::from_int(q))
    }

    pub fn p(&self) -> &Rational {
        &self.inner.p
    }

    pub fn q(&self) -> &Rational {
        &self.inner.q
    }

    /// `p^k`, `k` may be negative.
    pub fn p_pow(&self, k: i64) -> Rational {
        self.cached_pow(k, true)
    }

    /// `q^k`, `k` may be negative.
    pub fn q_pow(&self, k: i64) -> Rational {
        self.cached_pow(k, false)
    }

    fn cached_pow(&self, k: i64, use_p: bool) -> Rational {
        let mag = k.unsigned_abs() as usize;
        let positive = {
            let mut cache = self.inner.cache.lock().unwrap();
            let (base, powers) = if use_p {
                (&self.inner.p, &mut cache.p_powers)
            } else {
                (&self.inner.q, &mut cache.q_powers)
            };
            if powers.is_empty() {
                powers.push(Rational::one());
            }
            while powers.len() <= mag {
                let next = powers.last().unwrap() * base;
                powers.push(next);
            }
            powers[mag].clone()
        };
        if k < 0 {
            positive.recip()
        } else {
            positive
        }
    }

    /// The twin-basic number `[n] = sum_{i=0}^{n-1} p^i q^(n-1-i)`.
    pub fn pq_number(&self, n: usize) -> Rational {
        let mut cache = self.inner.cache.lock().unwrap();
        if cache.numbers.is_empty() {
            cache.numbers.push(Rational::zero());
        }
        while cache.numbers.len() <= n {
            // [n+1] = p*[n] + q^n
            let m = cache.numbers.len();
            let next = &(&self.inner.p * cache.numbers.last().unwrap())
                + &self.inner.q.pow(m as i64 - 1);
            cache.numbers.push(next);
        }
        cache.numbers[n].clone()
    }

    /// `[n]! = prod_{k=1}^{n} [k]`, with `[0]! = 1`.
    pub fn pq_factorial(&self, n: usize) -> Rational {
        self.pq_number(n); // make sure numbers[..=n] exist
        let mut cache = self.inner.cache.lock().unwrap();
        if cache.factorials.is_empty() {
            cache.factorials.push(Rational::one());
        }
        while cache.factorials.len() <= n {
            let m = cache.factorials.len();
            let next = cache.factorials.last().unwrap() * &cache.numbers[m];
            cache.factorials.push(next);
        }
        cache.factorials[n].clone()
    }

    /// `[n choose k] = [n]!/([k]![n-k]!)`; zero outside `0 <= k <= n`.
    pub fn pq_binomial(&self, n: usize, k: isize) -> Rational {
        if k < 0 || k as usize > n {
            return Rational::zero();
        }
        let k = k as usize;
        self.pq_factorial(n); // fill factorials[..=n] before taking the lock
        let mut cache = self.inner.cache.lock().unwrap();
        while cache.binomials.len() <= n {
            let m = cache.binomials.len();
            let row = (0..=m)
                .map(|j| {
                    &(&cache.factorials[m] / &cache.factorials[j]) / &cache.factorials[m - j]
                })
                .collect();
            cache.binomials.push(row);
        }
        cache.binomials[n][k].clone()
    }

    /// `[n]!! = prod_{k=1}^{n/2} [2k]` for even n, `[0]!! = 1`.
    pub fn pq_double_factorial(&self, n: usize) -> Result<Rational> {
        if n % 2 != 0 {
            return Err(Error::OddDoubleFactorial(n));
        }
        let half = n / 2;
        self.pq_number(n);
        let mut cache = self.inner.cache.lock().unwrap();
        if cache.double_factorials.is_empty() {
            cache.double_factorials.push(Rational::one());
        }
        while cache.double_factorials.len() <= half {
            let m = cache.double_factorials.len();
            let next = cache.double_factorials.last().unwrap() * &cache.numbers[2 * m];
            cache.double_factorials.push(next);
        }
        Ok(cache.double_factorials[half].clone())
    }

    /// `sum_{k=0}^{n} [n choose k] (-1)^k q^C(k,2) p^C(n-k,2)`.
    ///
    /// Equals `delta_{n,0}`; evaluated literally so the lemma can be
    /// checked rather than assumed.
    pub fn alternating_delta_sum(&self, n: usize) -> Rational {
        let mut sum = Rational::zero();
        for k in 0..=n {
            let mut term = self.pq_binomial(n, k as isize);
            term *= &self.q_pow(binom2(k));
            term *= &self.p_pow(binom2(n - k));
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
        }
        sum
    }
}

impl PartialEq for PQContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.q == other.inner.q)
    }
}

impl Eq for PQContext {}

impl fmt::Debug for PQContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PQContext(p={}, q={})", self.inner.p, self.inner.q)
    }
}

impl fmt::Display for PQContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.inner.p, self.inner.q)
    }
}
