//! Precision and tolerance regime shared by every evaluation.

use std::sync::Arc;

use rug::Float;

use crate::error::{Error, Result};
use crate::special::{moebius_upto, BernoulliCache};

/// Smallest supported working precision in significant decimal digits.
pub const MIN_DIGITS: u32 = 15;

/// Precision, tolerances and truncation caps for one family of computations.
///
/// A context is immutable once built. Cloning is cheap: the precomputed tables
/// (logarithms, Bernoulli numbers, Möbius values) sit behind an [`Arc`].
#[derive(Clone, Debug)]
pub struct NumericContext {
    digits: u32,
    prec: u32,
    /// Absolute tolerance for evaluated quantities (integrals, P, P_k).
    pub eps_eval: f64,
    /// Residual tolerance for located roots.
    pub eps_root: f64,
    /// Cap on tanh-sinh refinement levels.
    pub max_quad_level: u32,
    /// Cap on the number of terms of the Möbius series for P.
    pub max_moebius_terms: usize,
    /// Number of direct terms in the Euler–Maclaurin evaluation of ζ.
    pub zeta_em_nodes: usize,
    /// Cap on Euler–Maclaurin Bernoulli correction terms.
    pub zeta_em_bernoulli: usize,
    tables: Arc<Tables>,
}

#[derive(Debug)]
pub(crate) struct Tables {
    /// ln n for n = 0..=zeta_em_nodes (index 0 and 1 hold zero).
    pub ln: Vec<Float>,
    /// Smallest prime factor for n = 0..=zeta_em_nodes.
    pub spf: Vec<u32>,
    /// B_{2j}/(2j)! for j = 1..=zeta_em_bernoulli, at working precision.
    pub bernoulli_scaled: Vec<Float>,
    /// μ(m) for m = 0..=max_moebius_terms (index 0 unused).
    pub moebius: Vec<i8>,
}

impl NumericContext {
    /// Builds a context for `digits` significant decimal digits.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::PrecisionTooLow(digits));
        }
        let prec = (f64::from(digits) * 3.33).ceil() as u32 + 32;
        let zeta_em_nodes = 20usize.max((1.5 * f64::from(digits)).ceil() as usize);
        let zeta_em_bernoulli = digits as usize + 10;
        let max_moebius_terms = 256;

        let ln = (0..=zeta_em_nodes)
            .map(|n| {
                if n < 2 {
                    Float::with_val(prec, 0)
                } else {
                    Float::with_val(prec, n).ln()
                }
            })
            .collect();
        let spf = smallest_prime_factors(zeta_em_nodes);
        let bernoulli = BernoulliCache::new(zeta_em_bernoulli + 1);
        let bernoulli_scaled = (1..=zeta_em_bernoulli + 1)
            .map(|j| bernoulli.scaled_float(j, prec))
            .collect();
        let moebius = moebius_upto(max_moebius_terms);
        let tables = Tables {
            ln,
            spf,
            bernoulli_scaled,
            moebius,
        };

        Ok(NumericContext {
            digits,
            prec,
            eps_eval: 1e-13,
            eps_root: 1e-10,
            max_quad_level: 12,
            max_moebius_terms,
            zeta_em_nodes,
            zeta_em_bernoulli,
            tables: Arc::new(tables),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision of every working float.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Target absolute accuracy of a single ζ evaluation: 10^-digits.
    pub fn zeta_tol(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.prec, x)
    }

    pub(crate) fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Returns a copy with a different evaluation tolerance.
    pub fn with_eps_eval(mut self, eps_eval: f64) -> Result<Self> {
        if !(eps_eval > 0.0) || eps_eval > self.eps_root {
            return Err(crate::error::domain(
                "eps_eval",
                eps_eval,
                "0 < eps_eval <= eps_root",
            ));
        }
        self.eps_eval = eps_eval;
        Ok(self)
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext::new(30).expect("30 digits is a valid precision")
    }
}

/// Builds a context for `digits` significant decimal digits.
pub fn make_context(digits: u32) -> Result<NumericContext> {
    NumericContext::new(digits)
}

fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// Formats `x` with exactly `places` fractional digits, rounding half to even.
///
/// Rounding acts on the decimal expansion that the float's precision
/// supports, so a binary value such as `1.044655_f64` rounds as the decimal
/// `1.044655` it was written as.
pub fn round_for_display(x: &Float, places: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.to_string();
    }
    let sig = ((f64::from(x.prec()) * std::f64::consts::LOG10_2).floor() as usize).max(1);
    let (negative, digits, exp) = match x.to_sign_string_exp(10, Some(sig)) {
        (neg, digits, Some(exp)) => (neg, digits, exp),
        (neg, _, None) => (neg, String::from("0"), 1),
    };
    round_decimal_half_even(negative, digits.as_bytes(), exp, places)
}

/// Convenience wrapper for plain doubles.
pub fn round_f64_for_display(x: f64, places: usize) -> String {
    round_for_display(&Float::with_val(53, x), places)
}

/// `digits` are significant digits d1 d2 ... with value 0.d1d2... × 10^exp.
fn round_decimal_half_even(negative: bool, digits: &[u8], exp: i32, places: usize) -> String {
    // Integer digits of value × 10^places, plus the discarded remainder.
    let keep = exp as i64 + places as i64;
    let mut kept: Vec<u8> = Vec::new();
    let mut rest: &[u8] = &[];
    if keep > 0 {
        let keep = keep as usize;
        if keep >= digits.len() {
            kept.extend(digits.iter().map(|d| d - b'0'));
            kept.extend(std::iter::repeat_n(0, keep - digits.len()));
        } else {
            kept.extend(digits[..keep].iter().map(|d| d - b'0'));
            rest = &digits[keep..];
        }
    } else {
        // Everything is discarded; a leading zero run means the remainder is < 1/2.
        rest = if keep == 0 { digits } else { &[] };
    }

    let round_up = match rest.split_first() {
        None => false,
        Some((&first, tail)) => {
            if first > b'5' {
                true
            } else if first < b'5' {
                false
            } else if tail.iter().any(|&d| d != b'0') {
                true
            } else {
                kept.last().is_some_and(|d| d % 2 == 1)
            }
        }
    };
    if round_up {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }

    while kept.len() < places + 1 {
        kept.insert(0, 0);
    }
    let split = kept.len() - places;
    let mut out = String::new();
    if negative && kept.iter().any(|&d| d != 0) {
        out.push('-');
    }
    out.extend(kept[..split].iter().map(|d| char::from(b'0' + d)));
    if places > 0 {
        out.push('.');
        out.extend(kept[split..].iter().map(|d| char::from(b'0' + d)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_context_carries_accuracy_goal() {
        let ctx = make_context(30).unwrap();
        assert_eq!(ctx.eps_eval, 1e-13);
        assert!(ctx.eps_root >= ctx.eps_eval);
        assert_eq!(ctx.prec(), 132);
    }

    #[test]
    fn minimal_and_rejected_precision() {
        assert!(make_context(15).is_ok());
        assert_eq!(make_context(10).unwrap_err(), Error::PrecisionTooLow(10));
    }

    #[test]
    fn cutoffs_grow_with_digits() {
        let mut last = make_context(15).unwrap();
        for d in [20, 30, 40, 60, 100] {
            let ctx = make_context(d).unwrap();
            assert!(ctx.zeta_em_nodes >= last.zeta_em_nodes);
            assert!(ctx.zeta_em_bernoulli >= last.zeta_em_bernoulli);
            assert!(ctx.prec() > last.prec());
            last = ctx;
        }
    }

    #[test]
    fn eps_override_is_validated() {
        let ctx = make_context(30).unwrap();
        assert!(ctx.clone().with_eps_eval(1e-20).is_ok());
        assert!(ctx.clone().with_eps_eval(0.0).is_err());
        assert!(ctx.with_eps_eval(1e-3).is_err());
    }

    #[test]
    fn display_rounding() {
        assert_eq!(round_f64_for_display(1.044655, 5), "1.04466");
        assert_eq!(round_f64_for_display(1.0, 5), "1.00000");
        assert_eq!(round_f64_for_display(0.8035245, 6), "0.803524");
        assert_eq!(round_f64_for_display(0.8035255, 6), "0.803526");
        assert_eq!(round_f64_for_display(2.5, 0), "2");
        assert_eq!(round_f64_for_display(3.5, 0), "4");
        assert_eq!(round_f64_for_display(0.0004, 3), "0.000");
        assert_eq!(round_f64_for_display(0.0006, 3), "0.001");
        assert_eq!(round_f64_for_display(0.0005, 3), "0.000");
        assert_eq!(round_f64_for_display(9.9999996, 6), "10.000000");
        assert_eq!(round_f64_for_display(-1.25, 1), "-1.2");
        assert_eq!(round_f64_for_display(-0.01, 1), "0.0");
        assert_eq!(round_f64_for_display(123456.0, 2), "123456.00");
        assert_eq!(round_f64_for_display(0.0, 3), "0.000");
    }

    #[test]
    fn display_rounding_of_high_precision_value() {
        let x = Float::with_val(132, 2).sqrt();
        assert_eq!(round_for_display(&x, 20), "1.41421356237309504880");
    }
}
