//! Translated Erdős sums of the k-almost primes,
//!
//!   f(ℕ_k, h) = Σ_{Ω(n)=k} 1/(n(log n + h)) = ∫_1^∞ P_k(s) e^{(1−s)h} ds,
//!
//! integrated numerically on [1, S] with the remainder beyond S bounded by
//! the majorant P_k(s) ≤ P_k(S)·2^{k(S−s)}.

use std::collections::HashMap;
use std::sync::Arc;

use rug::Float;

use crate::almost_prime::{almost_zeta_series, AlmostPrimeSeries};
use crate::context::NumericContext;
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_de_samples, QuadratureResult, Sample};
use crate::special::{Arg, EvalResult, Work};

/// Candidate split points S, tried in order.
pub const SPLIT_LADDER: [f64; 4] = [10.0, 20.0, 40.0, 80.0];

/// Upper bound for ∫_S^∞ P_k(s) e^{(1−s)h} ds:
/// P_k(S)·e^{(1−S)h}/(k·ln 2 + h).
pub fn tail_bound(k: u32, h: f64, split: f64, ctx: &NumericContext) -> Result<f64> {
    check_args(k, h)?;
    let p = almost_zeta_series(k, &Arg::from_f64(split, ctx)?, false, ctx)?;
    Ok(tail_from_value(k, h, split, p.values[k as usize].to_f64()))
}

fn tail_from_value(k: u32, h: f64, split: f64, p_k_at_split: f64) -> f64 {
    p_k_at_split * ((1.0 - split) * h).exp() / (f64::from(k) * std::f64::consts::LN_2 + h)
}

fn check_args(k: u32, h: f64) -> Result<()> {
    if k == 0 {
        return Err(domain("k", k, "k >= 1"));
    }
    if !(h >= 0.0) || !h.is_finite() {
        return Err(domain("h", h, "finite h >= 0"));
    }
    Ok(())
}

/// f(ℕ_k, h).
pub fn f_translated(k: u32, h: f64, ctx: &NumericContext) -> Result<EvalResult> {
    TranslatedSums::new(k, ctx).f(k, h)
}

/// D(h) = f(ℕ_k, h) − f(ℕ_1, h), as one integral of (P_k − P)·e^{(1−s)h}.
pub fn f_difference(k: u32, h: f64, ctx: &NumericContext) -> Result<EvalResult> {
    TranslatedSums::new(k, ctx).difference(k, h)
}

/// Evaluator for f(ℕ_k, h) and D_k(h) over many (k, h).
///
/// Each quadrature node is sampled once for all k ≤ kmax; later integrals at
/// other k or h reuse the stored P_0..P_kmax values and only recompute the
/// exponential weight.
pub struct TranslatedSums<'c> {
    ctx: &'c NumericContext,
    kmax: u32,
    nodes: HashMap<(u32, i64), Arc<AlmostPrimeSeries>>,
    at_split: HashMap<u32, Arc<AlmostPrimeSeries>>,
}

impl<'c> TranslatedSums<'c> {
    pub fn new(kmax: u32, ctx: &'c NumericContext) -> Self {
        TranslatedSums {
            ctx,
            kmax: kmax.max(1),
            nodes: HashMap::new(),
            at_split: HashMap::new(),
        }
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn context(&self) -> &NumericContext {
        self.ctx
    }

    /// Number of distinct quadrature nodes sampled so far.
    pub fn sampled_nodes(&self) -> usize {
        self.nodes.len()
    }

    fn check_k(&self, k: u32) -> Result<()> {
        if k > self.kmax {
            return Err(domain("k", k, "k <= kmax of the evaluator"));
        }
        Ok(())
    }

    fn series_at_split(&mut self, split: f64) -> Result<Arc<AlmostPrimeSeries>> {
        let key = split as u32;
        if let Some(series) = self.at_split.get(&key) {
            return Ok(series.clone());
        }
        let series = Arc::new(almost_zeta_series(
            self.kmax,
            &Arg::from_f64(split, self.ctx)?,
            false,
            self.ctx,
        )?);
        self.at_split.insert(key, series.clone());
        Ok(series)
    }

    /// Tail majorant for the weighted combination Σ c_k P_k (coefficients by k).
    fn tail(&mut self, coeffs: &[(u32, f64)], h: f64, split: f64) -> Result<f64> {
        let series = self.series_at_split(split)?;
        Ok(coeffs
            .iter()
            .map(|&(k, c)| c.abs() * tail_from_value(k, h, split, series.values[k as usize].to_f64()))
            .sum())
    }

    /// Smallest split point of the ladder whose tail bound is below eps_eval/2.
    fn choose_split(&mut self, coeffs: &[(u32, f64)], h: f64) -> Result<(f64, f64)> {
        for split in SPLIT_LADDER {
            let tail = self.tail(coeffs, h, split)?;
            if tail < self.ctx.eps_eval / 2.0 {
                return Ok((split, tail));
            }
        }
        Err(Error::NotConverged {
            what: "tail split ladder",
            tol: self.ctx.eps_eval / 2.0,
            cap: SPLIT_LADDER.len(),
        })
    }

    /// ∫_1^∞ Σ_k c_k P_k(s) e^{(1−s)h} ds for integer coefficients c_k.
    pub fn integrate_combination(
        &mut self,
        coeffs: &[(u32, f64)],
        h: f64,
    ) -> Result<QuadratureResult> {
        for &(k, _) in coeffs {
            check_args(k, h)?;
            self.check_k(k)?;
        }
        let (split, tail) = self.choose_split(coeffs, h)?;
        let ctx = self.ctx;
        let prec = ctx.prec();
        let kmax = self.kmax;
        let split_key = split as u32;
        let h_f = ctx.float(h);
        let nodes = &mut self.nodes;
        let mut result = integrate_de_samples(
            |node| {
                let series = match nodes.get(&(split_key, node.key)) {
                    Some(series) => series.clone(),
                    None => {
                        let arg = Arg::from_offset(node.from_left.clone())?;
                        let series = Arc::new(almost_zeta_series(kmax, &arg, false, ctx)?);
                        nodes.insert((split_key, node.key), series.clone());
                        series
                    }
                };
                let mut value = Float::with_val(prec, 0);
                let mut err = 0.0;
                for &(k, c) in coeffs {
                    let v = &series.values[k as usize];
                    value += Float::with_val(prec, v * c);
                    err += c.abs() * series.errs[k as usize];
                }
                let decay = Float::with_val(prec, &node.from_left * &h_f);
                let decay = (-decay).exp();
                err *= decay.to_f64();
                value *= &decay;
                Ok(Sample { value, err })
            },
            1.0,
            split,
            ctx,
        )?;
        result.tail_bound = tail;
        result.split_point = split;
        Ok(result)
    }

    pub fn f_detailed(&mut self, k: u32, h: f64) -> Result<QuadratureResult> {
        self.integrate_combination(&[(k, 1.0)], h)
    }

    pub fn difference_detailed(&mut self, k: u32, h: f64) -> Result<QuadratureResult> {
        if k < 2 {
            return Err(domain("k", k, "k >= 2 for D(h)"));
        }
        self.integrate_combination(&[(k, 1.0), (1, -1.0)], h)
    }

    /// f(ℕ_k, h).
    pub fn f(&mut self, k: u32, h: f64) -> Result<EvalResult> {
        Ok(to_eval(self.f_detailed(k, h)?))
    }

    /// f(ℕ_k, h) − f(ℕ_1, h).
    pub fn difference(&mut self, k: u32, h: f64) -> Result<EvalResult> {
        Ok(to_eval(self.difference_detailed(k, h)?))
    }
}

fn to_eval(q: QuadratureResult) -> EvalResult {
    EvalResult {
        err_bound: q.err_estimate + q.tail_bound,
        work: Work {
            terms: 0,
            levels: q.levels_used,
            evaluations: q.evaluations,
        },
        value: q.value,
    }
}
