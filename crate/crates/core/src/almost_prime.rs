//! Zeta functions of the k-almost primes, P_k(s) = Σ_{Ω(n)=k} n^{-s}.
//!
//! The working route is the Newton-type recursion
//!
//!   P_k(s)  = (1/k) Σ_{j=1}^{k} P_{k-j}(s) P(js),   P_0 := 1
//!   P'_k(s) = Σ_{j=1}^{k} P_{k-j}(s) P'(js)
//!
//! The partition-sum expansion is kept as an independent cross-check.

use std::collections::BTreeMap;
use std::sync::Arc;

use rug::ops::Pow;
use rug::Float;

use crate::context::NumericContext;
use crate::error::{domain, Error, Result};
use crate::prime_zeta::{PrimeZetaEval, PrimeZetaKernel};
use crate::special::Arg;

/// Largest k accepted by the partition-sum oracle (p(20) = 627 partitions).
pub const PARTITION_ORACLE_MAX_K: u32 = 20;

#[derive(Clone, Debug)]
pub struct AlmostPrimeZetaEval {
    pub k: u32,
    pub s: f64,
    pub value: Float,
    pub derivative: Option<Float>,
    pub err_bound: f64,
    pub deriv_err_bound: f64,
}

impl AlmostPrimeZetaEval {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn derivative_f64(&self) -> Option<f64> {
        self.derivative.as_ref().map(Float::to_f64)
    }
}

/// P_0, ..., P_kmax (and derivatives) at one point.
#[derive(Clone, Debug)]
pub struct AlmostPrimeSeries {
    pub values: Vec<Float>,
    pub errs: Vec<f64>,
    pub derivs: Option<Vec<Float>>,
    pub deriv_errs: Vec<f64>,
}

impl AlmostPrimeSeries {
    pub fn kmax(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    fn eval(&self, k: u32, s: f64) -> AlmostPrimeZetaEval {
        let k_us = k as usize;
        AlmostPrimeZetaEval {
            k,
            s,
            value: self.values[k_us].clone(),
            derivative: self.derivs.as_ref().map(|d| d[k_us].clone()),
            err_bound: self.errs[k_us],
            deriv_err_bound: self.deriv_errs.get(k_us).copied().unwrap_or(0.0),
        }
    }
}

/// Evaluates P_0..=P_kmax at `arg` through the recursion.
pub fn almost_zeta_series(
    kmax: u32,
    arg: &Arg,
    want_deriv: bool,
    ctx: &NumericContext,
) -> Result<AlmostPrimeSeries> {
    let prec = ctx.prec();
    let mut kernel = PrimeZetaKernel::new(arg.clone(), want_deriv, ctx);
    let primes: Vec<PrimeZetaEval> = (1..=kmax).map(|j| kernel.eval(j)).collect::<Result<_>>()?;
    let pf: Vec<f64> = primes.iter().map(|p| p.value.to_f64().abs()).collect();

    let n = kmax as usize;
    let mut values: Vec<Float> = Vec::with_capacity(n + 1);
    let mut errs = Vec::with_capacity(n + 1);
    values.push(Float::with_val(prec, 1));
    errs.push(0.0);
    for k in 1..=n {
        let mut acc = Float::with_val(prec, 0);
        let mut err = 0.0;
        for j in 1..=k {
            acc += Float::with_val(prec, &values[k - j] * &primes[j - 1].value);
            err += errs[k - j] * pf[j - 1] + values[k - j].to_f64().abs() * primes[j - 1].err_bound;
        }
        acc /= k as u32;
        values.push(acc);
        errs.push(2.0 * err / k as f64);
    }

    let (derivs, deriv_errs) = if want_deriv {
        let mut derivs = Vec::with_capacity(n + 1);
        let mut derrs = Vec::with_capacity(n + 1);
        derivs.push(Float::with_val(prec, 0));
        derrs.push(0.0);
        for k in 1..=n {
            let mut acc = Float::with_val(prec, 0);
            let mut err = 0.0;
            for j in 1..=k {
                let dp = primes[j - 1].derivative.as_ref().expect("kernel built with derivatives");
                acc += Float::with_val(prec, &values[k - j] * dp);
                err += errs[k - j] * dp.to_f64().abs()
                    + values[k - j].to_f64().abs() * primes[j - 1].deriv_err_bound;
            }
            derivs.push(acc);
            derrs.push(2.0 * err);
        }
        (Some(derivs), derrs)
    } else {
        (None, Vec::new())
    };

    Ok(AlmostPrimeSeries {
        values,
        errs,
        derivs,
        deriv_errs,
    })
}

/// P_k(s) by the recursion; k = 0 gives 1.
pub fn almost_zeta(k: u32, s: f64, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
    almost_zeta_at(k, &Arg::from_f64(s, ctx)?, false, ctx)
}

/// P_k(s) and P'_k(s) by the recursion.
pub fn almost_zeta_deriv(k: u32, s: f64, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
    almost_zeta_at(k, &Arg::from_f64(s, ctx)?, true, ctx)
}

pub fn almost_zeta_at(
    k: u32,
    arg: &Arg,
    want_deriv: bool,
    ctx: &NumericContext,
) -> Result<AlmostPrimeZetaEval> {
    Ok(almost_zeta_series(k, arg, want_deriv, ctx)?.eval(k, arg.to_f64()))
}

/// A partition of k written as multiplicities: part j occurs n_j times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionTerm {
    multiplicities: BTreeMap<u32, u32>,
}

impl PartitionTerm {
    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.multiplicities
    }

    /// Σ j·n_j
    pub fn total(&self) -> u32 {
        self.multiplicities.iter().map(|(j, n)| j * n).sum()
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .multiplicities
            .iter()
            .flat_map(|(&j, &n)| std::iter::repeat_n(j, n as usize))
            .collect();
        parts.reverse();
        parts
    }
}

/// All partitions of k, each exactly once, in reverse lexicographic order of parts.
pub fn partitions(k: u32) -> Vec<PartitionTerm> {
    fn walk(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<PartitionTerm>) {
        if remaining == 0 {
            let mut multiplicities = BTreeMap::new();
            for &p in current.iter() {
                *multiplicities.entry(p).or_insert(0) += 1;
            }
            out.push(PartitionTerm { multiplicities });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            walk(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        walk(k, k, &mut Vec::new(), &mut out);
    }
    out
}

/// P_k(s) from the explicit partition sum
/// Σ_{n_1+2n_2+...=k} Π_j (P(js)/j)^{n_j} / n_j!.
pub fn almost_zeta_partition(k: u32, s: f64, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
    almost_zeta_partition_at(k, &Arg::from_f64(s, ctx)?, ctx)
}

pub fn almost_zeta_partition_at(k: u32, arg: &Arg, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
    if k == 0 || k > PARTITION_ORACLE_MAX_K {
        return Err(domain("k", k, "1 <= k <= 20 for the partition sum"));
    }
    let prec = ctx.prec();
    let mut kernel = PrimeZetaKernel::new(arg.clone(), false, ctx);
    let scaled: Vec<(Float, f64)> = (1..=k)
        .map(|j| {
            kernel.eval(j).map(|p| {
                let v = Float::with_val(prec, &p.value / j);
                (v, p.err_bound / f64::from(j))
            })
        })
        .collect::<Result<_>>()?;

    let mut value = Float::with_val(prec, 0);
    let mut err = 0.0;
    for partition in partitions(k) {
        let mut term = Float::with_val(prec, 1);
        let mut rel = 0.0;
        for (&j, &n) in partition.multiplicities() {
            let (base, base_err) = &scaled[j as usize - 1];
            let mut factor = Float::with_val(prec, base.pow(n));
            for i in 2..=n {
                factor /= i;
            }
            term *= &factor;
            rel += f64::from(n) * base_err / base.to_f64().abs();
        }
        err += term.to_f64().abs() * rel;
        value += &term;
    }
    Ok(AlmostPrimeZetaEval {
        k,
        s: arg.to_f64(),
        value,
        derivative: None,
        err_bound: 2.0 * err,
        deriv_err_bound: 0.0,
    })
}

/// A named way of evaluating P_k, selectable at runtime.
pub trait AlmostZetaMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn evaluate(&self, k: u32, arg: &Arg, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval>;
}

pub struct Recursion;
pub struct PartitionSum;

impl AlmostZetaMethod for Recursion {
    fn name(&self) -> &'static str {
        "recursion"
    }

    fn describe(&self) -> &'static str {
        "P_k = (1/k) sum_j P_{k-j}(s) P(js), with derivatives"
    }

    fn evaluate(&self, k: u32, arg: &Arg, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
        almost_zeta_at(k, arg, true, ctx)
    }
}

impl AlmostZetaMethod for PartitionSum {
    fn name(&self) -> &'static str {
        "partition"
    }

    fn describe(&self) -> &'static str {
        "explicit sum over the partitions of k (k <= 20)"
    }

    fn evaluate(&self, k: u32, arg: &Arg, ctx: &NumericContext) -> Result<AlmostPrimeZetaEval> {
        almost_zeta_partition_at(k, arg, ctx)
    }
}

/// Evaluation methods for P_k, looked up by name.
#[derive(Clone)]
pub struct MethodRegistry {
    methods: Vec<Arc<dyn AlmostZetaMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry { methods: Vec::new() }
    }

    pub fn register(&mut self, method: Arc<dyn AlmostZetaMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn AlmostZetaMethod>> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .cloned()
            .ok_or_else(|| Error::Unknown {
                kind: "P_k method",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        let mut registry = MethodRegistry::empty();
        registry.register(Arc::new(Recursion));
        registry.register(Arc::new(PartitionSum));
        registry
    }
}
