//! Tanh-sinh (double-exponential) quadrature on a finite interval.
//!
//! With x = c + d·tanh(π/2·sinh t) the nodes crowd doubly exponentially into
//! both endpoints, which absorbs integrable endpoint singularities such as
//! the log^k(1/(s−1)) growth of P_k near s = 1. Every node also carries its
//! exact distance to each endpoint, so integrands may work in an offset
//! variable instead of subtracting nearly equal numbers.

use rug::float::Constant;
use rug::Float;

use crate::context::NumericContext;
use crate::error::{domain, Error, Result};

/// Refinement levels always computed before the convergence test applies.
pub const MIN_LEVEL: u32 = 3;

/// One quadrature node.
#[derive(Clone, Debug)]
pub struct Abscissa {
    pub x: Float,
    pub from_left: Float,
    pub from_right: Float,
    /// t·2^max_level, unique per node and stable across levels.
    pub key: i64,
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: Float,
    /// Level-to-level difference plus endpoint truncation and propagated
    /// integrand error.
    pub err_estimate: f64,
    /// Bound on any analytically handled tail beyond `split_point` (zero for
    /// plain finite integrals).
    pub tail_bound: f64,
    pub levels_used: u32,
    /// Right end of the numerically integrated range.
    pub split_point: f64,
    pub evaluations: usize,
}

/// Value of the integrand at a node together with an error bound on it.
#[derive(Clone, Debug)]
pub struct Sample {
    pub value: Float,
    pub err: f64,
}

impl Sample {
    pub fn exact(value: Float) -> Self {
        Sample { value, err: 0.0 }
    }
}

/// Largest |t| kept, chosen so that no node lies closer to an endpoint than
/// 10^{-2·digits}·(b − a).
fn t_max(ctx: &NumericContext) -> f64 {
    // 1/(e^{2y} + 1) ≥ 10^{-2·digits}
    let y_max = f64::from(ctx.digits()) * std::f64::consts::LN_10;
    (2.0 * y_max / std::f64::consts::PI).asinh()
}

struct Rule {
    a: Float,
    b: Float,
    half_width: Float,
    half_pi: Float,
    t_max: f64,
    max_level: u32,
    prec: u32,
}

impl Rule {
    fn node(&self, i: i64, level: u32) -> (Abscissa, Float) {
        let prec = self.prec;
        let t = Float::with_val(prec, i) >> level;
        let (sinh_t, cosh_t) = t.clone().sinh_cosh(Float::new(prec));
        let y = Float::with_val(prec, &self.half_pi * &sinh_t);
        let ey = Float::with_val(prec, y.abs_ref()).exp();
        let e2y = Float::with_val(prec, ey.square_ref());
        // distance to the nearer endpoint: (b - a)/(e^{2|y|} + 1)
        let near = Float::with_val(prec, &self.half_width * 2u32) / (e2y + 1u32);
        let far = Float::with_val(prec, &self.half_width * 2u32) - &near;
        let (from_left, from_right) = if t < 0 { (near, far) } else { (far, near) };
        let x = if t < 0 {
            Float::with_val(prec, &self.a + &from_left)
        } else {
            Float::with_val(prec, &self.b - &from_right)
        };
        // w = d·(π/2)·cosh t / cosh² y, with cosh y = (e^{|y|} + e^{-|y|})/2
        let inv_ey = Float::with_val(prec, ey.recip_ref());
        let cosh_y = (ey + inv_ey) / 2u32;
        let weight = Float::with_val(prec, &self.half_width * &self.half_pi) * cosh_t
            / Float::with_val(prec, cosh_y.square_ref());
        let key = i << (self.max_level - level);
        (
            Abscissa {
                x,
                from_left,
                from_right,
                key,
            },
            weight,
        )
    }

    /// Node indices introduced at `level`.
    fn indices(&self, level: u32) -> Vec<i64> {
        let scale = f64::from(1u32 << level);
        let last = (self.t_max * scale).floor() as i64;
        let mut out: Vec<i64> = Vec::new();
        for i in -last..=last {
            if level == 0 || i.rem_euclid(2) == 1 {
                out.push(i);
            }
        }
        out
    }
}

/// ∫_a^b f over a finite interval with endpoint singularities at worst of
/// logarithmic-power type.
pub fn integrate_de<F>(mut f: F, a: f64, b: f64, ctx: &NumericContext) -> Result<QuadratureResult>
where
    F: FnMut(&Abscissa) -> Result<Float>,
{
    integrate_de_samples(|node| f(node).map(Sample::exact), a, b, ctx)
}

/// As [`integrate_de`], for integrands that report their own error.
pub fn integrate_de_samples<F>(
    mut f: F,
    a: f64,
    b: f64,
    ctx: &NumericContext,
) -> Result<QuadratureResult>
where
    F: FnMut(&Abscissa) -> Result<Sample>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(domain("interval", format!("[{a}, {b}]"), "finite a < b"));
    }
    let prec = ctx.prec();
    let a_f = Float::with_val(prec, a);
    let b_f = Float::with_val(prec, b);
    let half_width = Float::with_val(prec, &b_f - &a_f) / 2u32;
    let rule = Rule {
        a: a_f,
        b: b_f,
        half_width,
        half_pi: Float::with_val(prec, Constant::Pi) / 2u32,
        t_max: t_max(ctx),
        max_level: ctx.max_quad_level,
        prec,
    };

    let mut raw = Float::with_val(prec, 0);
    let mut inner_err = 0.0;
    let mut evaluations = 0;
    let mut previous: Option<Float> = None;
    let mut edge = 0.0;
    for level in 0..=ctx.max_quad_level {
        let indices = rule.indices(level);
        let outermost = (indices.first().copied(), indices.last().copied());
        for i in indices {
            let (node, weight) = rule.node(i, level);
            let sample = f(&node)?;
            evaluations += 1;
            let contribution = Float::with_val(prec, &sample.value * &weight);
            if level == 0 && (Some(i) == outermost.0 || Some(i) == outermost.1) {
                edge += contribution.to_f64().abs();
            }
            inner_err += sample.err * weight.to_f64();
            raw += contribution;
        }
        let step = (-(level as i32)) as f64;
        let estimate = Float::with_val(prec, &raw) * step.exp2();
        if let Some(prev) = previous.as_ref() {
            let diff = Float::with_val(prec, &estimate - prev).abs().to_f64();
            if level >= MIN_LEVEL && diff < ctx.eps_eval {
                let err_estimate = diff + edge + inner_err * step.exp2();
                return Ok(QuadratureResult {
                    value: estimate,
                    err_estimate,
                    tail_bound: 0.0,
                    levels_used: level,
                    split_point: b,
                    evaluations,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NotConverged {
        what: "tanh-sinh quadrature",
        tol: ctx.eps_eval,
        cap: ctx.max_quad_level as usize,
    })
}
