//! The prime zeta function P(s) = Σ_p p^{-s} and its derivative, through
//! Möbius inversion of log ζ:
//!
//!   P(s)  = Σ_{m≥1} μ(m)/m · log ζ(ms)
//!   P'(s) = Σ_{m≥1} μ(m) · ζ'(ms)/ζ(ms)

use std::collections::HashMap;

use rug::Float;

use crate::context::NumericContext;
use crate::error::{Error, Result};
use crate::special::{zeta_at, Arg};

#[derive(Clone, Debug)]
pub struct PrimeZetaEval {
    pub s: f64,
    pub value: Float,
    pub derivative: Option<Float>,
    pub err_bound: f64,
    pub deriv_err_bound: f64,
    pub terms_used: usize,
}

impl PrimeZetaEval {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn derivative_f64(&self) -> Option<f64> {
        self.derivative.as_ref().map(Float::to_f64)
    }
}

/// P(s) for real s > 1.
pub fn prime_zeta(s: f64, ctx: &NumericContext) -> Result<PrimeZetaEval> {
    prime_zeta_at(&Arg::from_f64(s, ctx)?, false, ctx)
}

/// P(s) together with P'(s).
pub fn prime_zeta_deriv(s: f64, ctx: &NumericContext) -> Result<PrimeZetaEval> {
    prime_zeta_at(&Arg::from_f64(s, ctx)?, true, ctx)
}

pub fn prime_zeta_at(arg: &Arg, want_deriv: bool, ctx: &NumericContext) -> Result<PrimeZetaEval> {
    PrimeZetaKernel::new(arg.clone(), want_deriv, ctx).eval(1)
}

/// Number of Möbius terms M, with the tail majorant Σ_{m>M} 2^{1-ms}/m
/// that the truncation leaves behind.
pub fn moebius_terms(s: f64, ctx: &NumericContext) -> Result<(usize, f64)> {
    let eps = ctx.eps_eval;
    let wanted = (((1.0 / eps).log2() + 4.0) / s).ceil() as usize + 4;
    let m = wanted.min(ctx.max_moebius_terms);
    let next = (m + 1) as f64;
    let tail = (1.0 - next * s).exp2() / (next * (1.0 - (-s).exp2()));
    if tail >= eps / 2.0 {
        return Err(Error::NotConverged {
            what: "Moebius series for P(s)",
            tol: eps / 2.0,
            cap: ctx.max_moebius_terms,
        });
    }
    Ok((m, tail))
}

#[derive(Clone, Debug)]
struct LogZeta {
    log: Float,
    err: f64,
    /// ζ'/ζ at the same point.
    dlog: Option<Float>,
    derr: f64,
}

/// Evaluates P and P' at integer multiples j·s of one base point, sharing
/// log ζ(n·s) between the Möbius series of different multiples.
///
/// The memo lives only as long as the kernel; nothing is cached across calls.
pub struct PrimeZetaKernel<'c> {
    ctx: &'c NumericContext,
    base: Arg,
    want_deriv: bool,
    memo: HashMap<u32, LogZeta>,
}

impl<'c> PrimeZetaKernel<'c> {
    pub fn new(base: Arg, want_deriv: bool, ctx: &'c NumericContext) -> Self {
        PrimeZetaKernel {
            ctx,
            base,
            want_deriv,
            memo: HashMap::new(),
        }
    }

    pub fn base(&self) -> &Arg {
        &self.base
    }

    fn log_zeta(&mut self, n: u32) -> Result<&LogZeta> {
        if !self.memo.contains_key(&n) {
            let prec = self.ctx.prec();
            let arg = self.base.scaled(n);
            let z = zeta_at(&arg, self.want_deriv, self.ctx)?;
            let log = Float::with_val(prec, z.minus_one.ln_1p_ref());
            let zf = z.value.to_f64();
            let err = z.err / zf;
            let (dlog, derr) = match &z.deriv {
                Some(d) => {
                    let ratio = Float::with_val(prec, d / &z.value);
                    let derr = z.deriv_err / zf + ratio.to_f64().abs() * err;
                    (Some(ratio), derr)
                }
                None => (None, 0.0),
            };
            self.memo.insert(
                n,
                LogZeta {
                    log,
                    err,
                    dlog,
                    derr,
                },
            );
        }
        Ok(&self.memo[&n])
    }

    /// P(j·s), and P'(j·s) when the kernel was built with derivatives.
    pub fn eval(&mut self, j: u32) -> Result<PrimeZetaEval> {
        let prec = self.ctx.prec();
        let s = self.base.to_f64() * f64::from(j);
        let (m_max, tail) = moebius_terms(s, self.ctx)?;
        let mut value = Float::with_val(prec, 0);
        let mut deriv = self.want_deriv.then(|| Float::with_val(prec, 0));
        let mut err = tail;
        // |ζ'/ζ(x)| ≤ 2·2^{-x} for x ≥ 5 bounds the derivative tail the same way.
        let mut derr = 2.0 * tail * ((m_max + 1) as f64);
        for m in 1..=m_max {
            let mu = self.ctx.tables().moebius[m];
            if mu == 0 {
                continue;
            }
            let lz = self.log_zeta(m as u32 * j)?.clone();
            let term = Float::with_val(prec, &lz.log / m as u32);
            if mu > 0 {
                value += &term;
            } else {
                value -= &term;
            }
            err += lz.err / m as f64;
            if let (Some(d), Some(dl)) = (deriv.as_mut(), lz.dlog.as_ref()) {
                if mu > 0 {
                    *d += dl;
                } else {
                    *d -= dl;
                }
                derr += lz.derr;
            }
        }
        Ok(PrimeZetaEval {
            s,
            value,
            derivative: deriv,
            err_bound: err,
            deriv_err_bound: derr,
            terms_used: m_max,
        })
    }
}
