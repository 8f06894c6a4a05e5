//! Bracketed root finding and the families of constants located with it.

mod families;
mod table;

pub use families::{
    FamilyRegistry, HInfinity, HK, RootFamily, SPrimeK, SigmaK, SK, TK, Workspace,
};
pub use table::{build_table, build_table_with, check_orderings, OrderingReport, OrderingRow, TableRow};

use crate::context::NumericContext;
use crate::error::{Error, Result};

/// Iteration cap for [`find_root`].
pub const MAX_ITERATIONS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    /// Final sign-changing bracket.
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub converged: bool,
}

/// Brent's method: bisection safeguarding secant and inverse quadratic steps.
///
/// `g(lo)` and `g(hi)` must differ in sign. Iteration continues until the
/// bracket is as tight as f64 allows (or g vanishes exactly), so the
/// iteration order and the result are deterministic.
pub fn find_root<G>(mut g: G, lo: f64, hi: f64, ctx: &NumericContext) -> Result<RootResult>
where
    G: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = g(a)?;
    let mut fb = g(b)?;
    if fa == 0.0 {
        return Ok(exact(a, (a, a)));
    }
    if fb == 0.0 {
        return Ok(exact(b, (b, b)));
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::InvalidBracket { lo, hi });
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;

    for iteration in 1..=MAX_ITERATIONS {
        let tol = 2.0 * f64::EPSILON * b.abs() + 1e-300;
        if (b - a).abs() <= tol {
            return Ok(finish(b, fb, a, iteration, ctx));
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let mid = (3.0 * a + b) / 4.0;
        let outside = !((s > mid.min(b)) && (s < mid.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < tol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < tol
        };
        if outside || slow {
            s = (a + b) / 2.0;
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = g(s)?;
        d = c;
        c = b;
        fc = fb;
        if fs == 0.0 {
            return Ok(exact(s, (s, s)));
        }
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::NotConverged {
        what: "bracketed root search",
        tol: ctx.eps_root,
        cap: MAX_ITERATIONS,
    })
}

fn exact(x: f64, bracket: (f64, f64)) -> RootResult {
    RootResult {
        root: x,
        residual: 0.0,
        bracket,
        iterations: 0,
        converged: true,
    }
}

fn finish(b: f64, fb: f64, a: f64, iterations: usize, ctx: &NumericContext) -> RootResult {
    RootResult {
        root: b,
        residual: fb,
        bracket: (a.min(b), a.max(b)),
        iterations,
        converged: fb.abs() <= ctx.eps_root,
    }
}
