use rug::Float;

use super::{Arg, EvalResult, Work};
use crate::context::NumericContext;
use crate::error::{Error, Result};

/// Raw output of one ζ evaluation at a point.
#[derive(Clone, Debug)]
pub struct ZetaEval {
    pub value: Float,
    /// ζ(s) − 1, computed without cancellation when s is large.
    pub minus_one: Float,
    pub deriv: Option<Float>,
    pub err: f64,
    pub deriv_err: f64,
    pub terms: usize,
}

/// ζ(s) for real s > 1.
pub fn zeta(s: f64, ctx: &NumericContext) -> Result<EvalResult> {
    let z = zeta_at(&Arg::from_f64(s, ctx)?, false, ctx)?;
    Ok(EvalResult {
        value: z.value,
        err_bound: z.err,
        work: Work {
            terms: z.terms,
            ..Work::default()
        },
    })
}

/// ζ'(s) for real s > 1, from the term-wise differentiated Euler–Maclaurin formula.
pub fn zeta_prime(s: f64, ctx: &NumericContext) -> Result<EvalResult> {
    let z = zeta_at(&Arg::from_f64(s, ctx)?, true, ctx)?;
    Ok(EvalResult {
        value: z.deriv.expect("derivative requested"),
        err_bound: z.deriv_err,
        work: Work {
            terms: z.terms,
            ..Work::default()
        },
    })
}

/// ζ (and optionally ζ') at `arg`.
///
/// Large arguments are summed directly with an integral tail bound; the rest
/// go through Euler–Maclaurin with N = `ctx.zeta_em_nodes` direct terms and
/// Bernoulli corrections until the first omitted one drops below tolerance.
pub fn zeta_at(arg: &Arg, want_deriv: bool, ctx: &NumericContext) -> Result<ZetaEval> {
    let tol = ctx.zeta_tol();
    let x = arg.s().to_f64();
    match direct_cutoff(x, want_deriv, tol, ctx.zeta_em_nodes) {
        Some(n1) => Ok(direct(arg, n1, want_deriv, ctx)),
        None => euler_maclaurin(arg, want_deriv, tol, ctx),
    }
}

/// Smallest n1 ≤ n_max whose integral tail bounds fall under tol/2.
fn direct_cutoff(x: f64, want_deriv: bool, tol: f64, n_max: usize) -> Option<usize> {
    if x < 2.0 {
        return None;
    }
    let xm1 = x - 1.0;
    (2..=n_max).find(|&n| {
        let n = n as f64;
        let base = (-xm1 * n.ln()).exp();
        let tail = base / xm1;
        let dtail = base * (n.ln() / xm1 + 1.0 / (xm1 * xm1));
        tail <= tol / 2.0 && (!want_deriv || dtail <= tol / 2.0)
    })
}

/// n^{-x} for n = 0..=n_max (entries 0 and 1 hold 1). Prime powers use one
/// exponential each; composites are products of earlier entries.
fn negative_powers(x: &Float, n_max: usize, ctx: &NumericContext) -> Vec<Float> {
    let prec = ctx.prec();
    let tables = ctx.tables();
    let mut pows: Vec<Float> = Vec::with_capacity(n_max + 1);
    pows.push(Float::with_val(prec, 1));
    pows.push(Float::with_val(prec, 1));
    for n in 2..=n_max {
        let p = tables.spf[n] as usize;
        let v = if p == n {
            let mut e = Float::with_val(prec, x * &tables.ln[n]);
            e = -e;
            e.exp()
        } else {
            Float::with_val(prec, &pows[p] * &pows[n / p])
        };
        pows.push(v);
    }
    pows
}

fn rounding_slack(value: &Float, terms: usize) -> f64 {
    let ulp = 2f64.powi(-(value.prec() as i32) + 4);
    value.to_f64().abs() * ulp * (terms as f64 + 1.0)
}

fn direct(arg: &Arg, n1: usize, want_deriv: bool, ctx: &NumericContext) -> ZetaEval {
    let prec = ctx.prec();
    let x = arg.s();
    let pows = negative_powers(x, n1, ctx);
    let mut minus_one = Float::with_val(prec, 0);
    for p in &pows[2..] {
        minus_one += p;
    }
    let xf = x.to_f64();
    let xm1 = xf - 1.0;
    let base = (-xm1 * (n1 as f64).ln()).exp();
    let value = Float::with_val(prec, &minus_one + 1u32);
    let err = base / xm1 + rounding_slack(&value, n1);

    let (deriv, deriv_err) = if want_deriv {
        let ln = &ctx.tables().ln;
        let mut d = Float::with_val(prec, 0);
        for n in 2..=n1 {
            d -= Float::with_val(prec, &ln[n] * &pows[n]);
        }
        let dtail = base * ((n1 as f64).ln() / xm1 + 1.0 / (xm1 * xm1));
        let slack = rounding_slack(&d, n1);
        (Some(d), dtail + slack)
    } else {
        (None, 0.0)
    };

    ZetaEval {
        value,
        minus_one,
        deriv,
        err,
        deriv_err,
        terms: n1,
    }
}

fn euler_maclaurin(
    arg: &Arg,
    want_deriv: bool,
    tol: f64,
    ctx: &NumericContext,
) -> Result<ZetaEval> {
    let prec = ctx.prec();
    let tables = ctx.tables();
    let n = ctx.zeta_em_nodes;
    let x = arg.s();
    let u = arg.s_minus_one();
    let ln_n = &tables.ln[n];
    let pows = negative_powers(x, n, ctx);

    let mut value = Float::with_val(prec, 0);
    for p in &pows[1..n] {
        value += p;
    }
    // N^{1-s}/(s-1), written through s - 1 so that s near 1 stays exact.
    let mut decay = Float::with_val(prec, u * ln_n);
    decay = (-decay).exp();
    let tail = Float::with_val(prec, &decay / u);
    let half = Float::with_val(prec, &pows[n] / 2u32);
    value += &tail;
    value += &half;

    let mut deriv = if want_deriv {
        let mut d = Float::with_val(prec, 0);
        for m in 2..n {
            d -= Float::with_val(prec, &tables.ln[m] * &pows[m]);
        }
        // d/ds [N^{1-s}/(s-1)] = -N^{1-s}/(s-1) · (ln N + 1/(s-1))
        let inv_u = Float::with_val(prec, u.recip_ref());
        let factor = Float::with_val(prec, ln_n + &inv_u);
        d -= Float::with_val(prec, &tail * &factor);
        d -= Float::with_val(prec, &half * ln_n);
        Some(d)
    } else {
        None
    };

    // Correction terms T_j = B_{2j}/(2j)! · s(s+1)...(s+2j-2) · N^{-s-2j+1}.
    let n_sq = (n * n) as u32;
    let mut poch = x.clone();
    let mut npow = Float::with_val(prec, &pows[n] / n as u32);
    let mut recip_sum = Float::with_val(prec, x.recip_ref());
    let cap = ctx.zeta_em_bernoulli;
    let mut err = None;
    let mut deriv_err = 0.0;
    let mut used = 0;
    for j in 1..=cap + 1 {
        if j > 1 {
            let a = Float::with_val(prec, x + (2 * j - 3) as u32);
            let b = Float::with_val(prec, x + (2 * j - 2) as u32);
            recip_sum += Float::with_val(prec, a.recip_ref());
            recip_sum += Float::with_val(prec, b.recip_ref());
            poch *= &a;
            poch *= &b;
            npow /= n_sq;
        }
        let mut term = Float::with_val(prec, &tables.bernoulli_scaled[j - 1] * &poch);
        term *= &npow;
        let dterm = if want_deriv {
            let w = Float::with_val(prec, &recip_sum - ln_n);
            Some(Float::with_val(prec, &term * &w))
        } else {
            None
        };
        let small = term.to_f64().abs() <= tol / 2.0;
        let dsmall = dterm.as_ref().is_none_or(|d| d.to_f64().abs() <= tol / 2.0);
        if small && dsmall {
            err = Some(2.0 * term.to_f64().abs());
            deriv_err = dterm.map_or(0.0, |d| 2.0 * d.to_f64().abs());
            break;
        }
        if j > cap {
            break;
        }
        value += &term;
        if let (Some(d), Some(dt)) = (deriv.as_mut(), dterm) {
            *d += dt;
        }
        used = j;
    }
    let err = err.ok_or(Error::NotConverged {
        what: "Euler-Maclaurin zeta",
        tol,
        cap,
    })?;

    let err = err + rounding_slack(&value, n + used);
    if let Some(d) = &deriv {
        deriv_err += rounding_slack(d, n + used);
    }
    let minus_one = Float::with_val(prec, &value - 1u32);
    Ok(ZetaEval {
        value,
        minus_one,
        deriv,
        err,
        deriv_err,
        terms: n + used,
    })
}
