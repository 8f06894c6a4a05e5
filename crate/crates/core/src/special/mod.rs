//! Number-theoretic and analytic kernels: ζ and ζ' on the real ray s > 1,
//! Bernoulli numbers, Möbius values, primes and the integer-order upper
//! incomplete gamma function.

mod bernoulli;
mod gamma;
mod sieve;
mod zeta;

pub use bernoulli::BernoulliCache;
pub use gamma::{upper_incomplete_gamma_int, upper_incomplete_gamma_int_f64};
pub use sieve::{moebius_upto, primes_upto};
pub use zeta::{zeta, zeta_at, zeta_prime, ZetaEval};

use rug::Float;

use crate::context::NumericContext;
use crate::error::{domain, Result};

/// A real value with an error bound and diagnostic counters.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Float,
    /// Bound on |value - exact|. Conservative but heuristic in places.
    pub err_bound: f64,
    pub work: Work,
}

/// Diagnostic counters attached to an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Work {
    pub terms: usize,
    pub levels: u32,
    pub evaluations: usize,
}

impl EvalResult {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// A point s > 1 carried together with s − 1.
///
/// Points extremely close to 1 (s − 1 below the working precision) keep
/// their offset exactly, so 1/(s − 1) and N^{1−s} stay accurate.
#[derive(Clone, Debug)]
pub struct Arg {
    s: Float,
    s_minus_one: Float,
}

impl Arg {
    /// Builds the point `s`, requiring s > 1.
    pub fn new(s: Float) -> Result<Arg> {
        let s_minus_one = Float::with_val(s.prec(), &s - 1u32);
        Arg::checked(s, s_minus_one)
    }

    pub fn from_f64(s: f64, ctx: &NumericContext) -> Result<Arg> {
        if !s.is_finite() {
            return Err(domain("s", s, "finite s > 1"));
        }
        Arg::new(ctx.float(s))
    }

    /// Builds the point s = 1 + offset.
    pub fn from_offset(offset: Float) -> Result<Arg> {
        let s = Float::with_val(offset.prec(), &offset + 1u32);
        Arg::checked(s, offset)
    }

    fn checked(s: Float, s_minus_one: Float) -> Result<Arg> {
        if s_minus_one.is_nan() || s_minus_one <= 0 || s.is_infinite() {
            return Err(domain("s", s.to_f64(), "s > 1"));
        }
        Ok(Arg { s, s_minus_one })
    }

    /// The point m·s.
    pub fn scaled(&self, m: u32) -> Arg {
        let prec = self.s.prec();
        let s = Float::with_val(prec, &self.s * m);
        let mut s_minus_one = Float::with_val(prec, &self.s_minus_one * m);
        s_minus_one += m - 1;
        Arg { s, s_minus_one }
    }

    pub fn s(&self) -> &Float {
        &self.s
    }

    pub fn s_minus_one(&self) -> &Float {
        &self.s_minus_one
    }

    pub fn to_f64(&self) -> f64 {
        self.s.to_f64()
    }
}
