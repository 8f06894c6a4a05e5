//! Brute-force enumeration of the k-almost primes, for cross-checking the
//! analytic evaluations against truncated sums.

use std::sync::Arc;

use rug::Float;

use crate::context::NumericContext;
use crate::error::{domain, Result};
use crate::special::{EvalResult, Work};

/// Largest sieve limit accepted.
pub const SIEVE_MAX: u64 = 100_000_000;

/// Ω(n), the number of prime factors of n counted with multiplicity, by
/// trial division.
pub fn big_omega(n: u64) -> Result<u32> {
    if n < 2 {
        return Err(domain("n", n, "n >= 2"));
    }
    let mut m = n;
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= m {
        while m % p == 0 {
            m /= p;
            count += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        count += 1;
    }
    Ok(count)
}

/// Ω(n) for every n ≤ N.
///
/// Linear sieve: each composite is reached exactly once, as i·p with p its
/// smallest prime factor, and inherits Ω(i) + 1.
#[derive(Debug)]
pub struct OmegaSieve {
    omega: Vec<u8>,
}

impl OmegaSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > SIEVE_MAX {
            return Err(domain("N", limit, "N <= 10^8"));
        }
        let n = limit as usize;
        let mut omega = vec![0u8; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if omega[i] == 0 {
                omega[i] = 1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                let Some(m) = i.checked_mul(p).filter(|&m| m <= n) else {
                    break;
                };
                omega[m] = omega[i] + 1;
                if i % p == 0 {
                    break;
                }
            }
        }
        Ok(OmegaSieve { omega })
    }

    pub fn limit(&self) -> u64 {
        self.omega.len() as u64 - 1
    }

    /// Ω(n) for 2 ≤ n ≤ limit.
    pub fn omega(&self, n: u64) -> Option<u32> {
        if n < 2 {
            return None;
        }
        self.omega.get(n as usize).map(|&w| u32::from(w))
    }

    /// Sums term(n) over n ∈ ℕ_k, reporting the running total at each limit
    /// in `checkpoints` (which must be increasing and ≤ the sieve limit).
    pub fn checkpoint_sums<F>(&self, k: u32, checkpoints: &[u64], mut term: F) -> Vec<f64>
    where
        F: FnMut(u64) -> f64,
    {
        let mut out = Vec::with_capacity(checkpoints.len());
        let mut sum = Neumaier::default();
        let mut n = 2u64;
        for &limit in checkpoints {
            let limit = limit.min(self.limit());
            while n <= limit {
                if u32::from(self.omega[n as usize]) == k {
                    sum.add(term(n));
                }
                n += 1;
            }
            out.push(sum.total());
        }
        out
    }
}

/// The elements of ℕ_k up to N, in increasing order.
pub struct AlmostPrimeStream {
    sieve: Arc<OmegaSieve>,
    k: u32,
    next: u64,
}

impl AlmostPrimeStream {
    pub fn new(sieve: Arc<OmegaSieve>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(domain("k", k, "k >= 1"));
        }
        // Nothing below 2^k has k prime factors.
        let start = 1u64.checked_shl(k).unwrap_or(u64::MAX);
        Ok(AlmostPrimeStream { sieve, k, next: start })
    }
}

impl Iterator for AlmostPrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next <= self.sieve.limit() {
            let n = self.next;
            self.next += 1;
            if self.sieve.omega(n) == Some(self.k) {
                return Some(n);
            }
        }
        None
    }
}

/// Stream over {n ≤ N : Ω(n) = k}.
pub fn enumerate(k: u32, limit: u64) -> Result<AlmostPrimeStream> {
    AlmostPrimeStream::new(Arc::new(OmegaSieve::new(limit)?), k)
}

/// Compensated summation.
#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn as_eval(value: f64, err_bound: f64, terms: usize, ctx: &NumericContext) -> EvalResult {
    EvalResult {
        value: Float::with_val(ctx.prec(), value),
        err_bound,
        work: Work {
            terms,
            ..Work::default()
        },
    }
}

/// Σ_{n > N} n^{−s} ≤ N^{1−s}/(s−1), an upper end for the missing tail.
pub fn zeta_tail_majorant(s: f64, limit: u64) -> f64 {
    (limit as f64).powf(1.0 - s) / (s - 1.0)
}

/// Σ_{n∈ℕ_k, n≤N} n^{−s}. `err_bound` is the coarse window
/// [0, N^{1−s}/(s−1)] for the omitted tail.
pub fn partial_zeta(k: u32, s: f64, limit: u64, ctx: &NumericContext) -> Result<EvalResult> {
    if !(s > 1.0) {
        return Err(domain("s", s, "s > 1"));
    }
    let sieve = OmegaSieve::new(limit)?;
    let value = sieve.checkpoint_sums(k, &[limit], |n| (-s * (n as f64).ln()).exp())[0];
    Ok(as_eval(value, zeta_tail_majorant(s, limit), limit as usize, ctx))
}

/// Σ_{n∈ℕ_k, n≤N} 1/(n(log n + h)). The tail decays only like 1/log N;
/// `err_bound` is the uncertified window 2/log N.
pub fn partial_f(k: u32, h: f64, limit: u64, ctx: &NumericContext) -> Result<EvalResult> {
    if !(h >= 0.0) {
        return Err(domain("h", h, "h >= 0"));
    }
    let sieve = OmegaSieve::new(limit)?;
    let value = sieve.checkpoint_sums(k, &[limit], |n| f_term(n, h))[0];
    Ok(as_eval(value, 2.0 / (limit as f64).ln(), limit as usize, ctx))
}

/// 1/(n(log n + h)).
pub fn f_term(n: u64, h: f64) -> f64 {
    let x = n as f64;
    1.0 / (x * (x.ln() + h))
}
