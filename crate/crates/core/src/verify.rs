//! Named verification suites, each producing a list of pass/fail/report
//! checks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rug::Float;

use crate::almost_prime::{almost_zeta, almost_zeta_partition};
use crate::bounds::{envelope, lower_bound_spot_check, verify_theorem2_chain, ELL_RANGE};
use crate::context::NumericContext;
use crate::enumerator::{f_term, OmegaSieve};
use crate::error::{Error, Result};
use crate::roots::{build_table, check_orderings};
use crate::translated::TranslatedSums;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Computed and shown, but not asserted.
    Report,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Report => "report",
        }
    }

    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub k: Option<u32>,
    /// The computed quantity the status is based on (usually a margin).
    pub value: f64,
    pub err_bound: f64,
    pub status: Status,
    pub detail: String,
}

/// True when no check failed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Enumeration bound for the brute-force oracle.
    pub limit: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { limit: 1_000_000 }
    }
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, opts: &SuiteOptions, ctx: &NumericContext) -> Result<Vec<Check>>;
}

/// s_k < σ_k < t_k and t_k < s'_k for k = 2..20; the second ordering fails
/// at k = 2 and is reported there.
pub struct Orderings;
/// The inequality chain at h = h_2 and the lower bounds ℓ_k.
pub struct Theorem2;
/// 0 < P(s) − log(α/(s−1)) < 1.4(s−1) on a grid in [1, 2].
pub struct Envelope;
/// Recursion against partition sums, and analytic values against truncated
/// sums over enumerated almost primes.
pub struct Oracle;

impl VerifySuite for Orderings {
    fn name(&self) -> &'static str {
        "orderings"
    }
    fn describe(&self) -> &'static str {
        "s_k < sigma_k < t_k < s'_k for k = 2..20"
    }
    fn run(&self, _opts: &SuiteOptions, ctx: &NumericContext) -> Result<Vec<Check>> {
        let rows = build_table(20, ctx)?;
        Ok(check_orderings(&rows)
            .rows
            .iter()
            .map(|r| {
                let status = match (r.sigma_bracketed, r.t_below_s_prime, r.asserted()) {
                    (false, _, _) => Status::Fail,
                    (true, true, _) => Status::Pass,
                    (true, false, true) => Status::Fail,
                    (true, false, false) => Status::Report,
                };
                let relation = if r.t_below_s_prime { "<" } else { ">" };
                Check {
                    name: "s_k<sigma_k<t_k<s_prime_k".into(),
                    k: Some(r.k),
                    value: r.s_prime_k - r.t_k,
                    err_bound: 0.0,
                    status,
                    detail: format!("t_k = {:.6} {relation} s'_k = {:.6}", r.t_k, r.s_prime_k),
                }
            })
            .collect())
    }
}

impl VerifySuite for Theorem2 {
    fn name(&self) -> &'static str {
        "theorem2"
    }
    fn describe(&self) -> &'static str {
        "f(N_k, h_2) > f(N_1, h_2) for all k > 1 via the l_k lower bounds"
    }
    fn run(&self, _opts: &SuiteOptions, ctx: &NumericContext) -> Result<Vec<Check>> {
        let report = verify_theorem2_chain(ctx)?;
        let mut checks: Vec<Check> = report
            .steps
            .iter()
            .map(|s| Check {
                name: s.label.clone(),
                k: None,
                value: s.margin(),
                err_bound: s.err,
                status: Status::from_bool(s.holds()),
                detail: format!("{:.12} vs {:.12}", s.lhs, s.rhs),
            })
            .collect();
        let d2 = &report.d2_at_h2;
        checks.push(Check {
            name: "f(N_2,h_2) = f(N_1,h_2)".into(),
            k: Some(2),
            value: d2.to_f64(),
            err_bound: d2.err_bound,
            status: Status::Report,
            detail: "equal by definition of h_2".into(),
        });
        checks.push(Check {
            name: format!("l_k increasing for k = {}..{}", ELL_RANGE.0, ELL_RANGE.1),
            k: None,
            value: report.ell[&ELL_RANGE.1] - report.ell[&ELL_RANGE.0],
            err_bound: 0.0,
            status: Status::from_bool(report.ell_increasing),
            detail: format!("l_20 = {:.10}", report.ell[&20]),
        });
        for k in [21, 25, 30] {
            let s = lower_bound_spot_check(k, report.h2, ctx)?;
            checks.push(Check {
                name: s.label.clone(),
                k: Some(k),
                value: s.margin(),
                err_bound: s.err,
                status: Status::from_bool(s.holds()),
                detail: format!("{:.12} vs {:.12}", s.lhs, s.rhs),
            });
        }
        Ok(checks)
    }
}

impl VerifySuite for Envelope {
    fn name(&self) -> &'static str {
        "envelope"
    }
    fn describe(&self) -> &'static str {
        "0 < P(s) - log(alpha/(s-1)) < 1.4(s-1) on a grid in [1, 2]"
    }
    fn run(&self, _opts: &SuiteOptions, ctx: &NumericContext) -> Result<Vec<Check>> {
        Ok(envelope(ctx)?
            .into_iter()
            .map(|p| Check {
                name: format!("envelope at s = {}", p.s),
                k: None,
                value: p.gap,
                err_bound: p.err,
                status: Status::from_bool(p.holds()),
                detail: format!("0 < {:.3e} < {:.3e}", p.gap, p.upper),
            })
            .collect())
    }
}

/// Grid for the recursion/partition comparison.
pub const ORACLE_S_GRID: [f64; 5] = [1.01, 1.1, 1.5, 2.0, 3.0];
/// Largest k compared against enumeration.
pub const ORACLE_ENUM_MAX_K: u32 = 6;
/// Exponents at which the enumerated sums are sampled.
pub const ORACLE_S_ENUM: [f64; 2] = [1.5, 2.0];

/// Decades 10^4, 10^5, ... up to `limit`, ending exactly at `limit`.
pub fn checkpoints(limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(10_000u64), |n| n.checked_mul(10))
        .take_while(|&n| n < limit)
        .collect();
    out.push(limit);
    out
}

impl VerifySuite for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn describe(&self) -> &'static str {
        "recursion vs partition sums; analytic values vs enumerated partial sums"
    }
    fn run(&self, opts: &SuiteOptions, ctx: &NumericContext) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        let tol = 10f64.powi(-(ctx.digits() as i32 - 5));
        for k in 2..=12 {
            for s in ORACLE_S_GRID {
                let a = almost_zeta(k, s, ctx)?;
                let b = almost_zeta_partition(k, s, ctx)?;
                let diff = Float::with_val(ctx.prec(), &a.value - &b.value).abs().to_f64();
                let allowed = tol * a.to_f64().abs().max(1.0);
                checks.push(Check {
                    name: format!("recursion = partition at s = {s}"),
                    k: Some(k),
                    value: diff,
                    err_bound: allowed,
                    status: Status::from_bool(diff <= allowed),
                    detail: format!("P_k = {:.15e}", a.to_f64()),
                });
            }
        }

        let limit = opts.limit.max(10_000);
        let marks = checkpoints(limit);
        let sieve = OmegaSieve::new(limit)?;
        let mut sums = TranslatedSums::new(ORACLE_ENUM_MAX_K, ctx);
        for k in 1..=ORACLE_ENUM_MAX_K {
            for s in ORACLE_S_ENUM {
                let full = almost_zeta(k, s, ctx)?;
                let partial = sieve.checkpoint_sums(k, &marks, |n| (-s * (n as f64).ln()).exp());
                checks.push(enumeration_check(
                    format!("partial P_k({s}) < P_k({s}), gap shrinking"),
                    k,
                    full.to_f64(),
                    full.err_bound,
                    &partial,
                ));
            }
            let full = sums.f(k, 0.0)?;
            let partial = sieve.checkpoint_sums(k, &marks, |n| f_term(n, 0.0));
            checks.push(enumeration_check(
                "partial f(N_k) < f(N_k), gap shrinking".into(),
                k,
                full.to_f64(),
                full.err_bound,
                &partial,
            ));
        }
        Ok(checks)
    }
}

fn enumeration_check(name: String, k: u32, full: f64, err: f64, partial: &[f64]) -> Check {
    let gaps: Vec<f64> = partial.iter().map(|p| full - p).collect();
    let below = gaps.iter().all(|&g| g > -err);
    let shrinking = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = *gaps.last().expect("at least one checkpoint");
    Check {
        name,
        k: Some(k),
        value: last,
        err_bound: err,
        status: Status::from_bool(below && shrinking),
        detail: format!(
            "gaps {}",
            gaps.iter().map(|g| format!("{g:.3e}")).collect::<Vec<_>>().join(" ")
        ),
    }
}

#[derive(Clone)]
pub struct SuiteRegistry {
    suites: BTreeMap<&'static str, Arc<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry {
            suites: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, suite: Arc<dyn VerifySuite>) {
        self.suites.insert(suite.name(), suite);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn VerifySuite>> {
        self.suites.get(name).cloned().ok_or_else(|| Error::Unknown {
            kind: "verification suite",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(Arc::new(Orderings));
        r.register(Arc::new(Theorem2));
        r.register(Arc::new(Envelope));
        r.register(Arc::new(Oracle));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    #[test]
    fn checkpoint_decades() {
        assert_eq!(checkpoints(10_000), vec![10_000]);
        assert_eq!(checkpoints(1_000_000), vec![10_000, 100_000, 1_000_000]);
        assert_eq!(checkpoints(250_000), vec![10_000, 100_000, 250_000]);
    }

    #[test]
    fn envelope_suite() {
        let ctx = make_context(30).unwrap();
        let checks = Envelope.run(&SuiteOptions::default(), &ctx).unwrap();
        assert_eq!(checks.len(), 7);
        assert!(all_passed(&checks));
    }

    #[test]
    fn oracle_suite_small() {
        let ctx = make_context(30).unwrap();
        let checks = Oracle.run(&SuiteOptions { limit: 100_000 }, &ctx).unwrap();
        for c in &checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn registry() {
        let reg = SuiteRegistry::default();
        assert_eq!(reg.names(), vec!["envelope", "oracle", "orderings", "theorem2"]);
        assert!(reg.get("bogus").is_err());
    }

    #[test]
    fn status_strings() {
        assert_eq!(Status::Report.to_string(), "report");
        assert!(!all_passed(&[Check {
            name: String::new(),
            k: None,
            value: 0.0,
            err_bound: 0.0,
            status: Status::Fail,
            detail: String::new(),
        }]));
    }
}
