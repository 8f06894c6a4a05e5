//! The six root families behind the table, selectable by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use rug::ops::PowAssign;
use rug::Float;

use super::{find_root, RootResult};
use crate::almost_prime::almost_zeta_series;
use crate::context::NumericContext;
use crate::error::{domain, Error, Result};
use crate::prime_zeta::prime_zeta_at;
use crate::special::Arg;
use crate::translated::TranslatedSums;

/// Largest k the families are defined for.
pub const FAMILY_MAX_K: u32 = 20;

/// Upper cap on the s-bracket expansion.
const S_CAP: f64 = 3.0;
/// Halvings of the distance to 1 allowed when a root lies below the seed.
const MAX_LEFT_STEPS: u32 = 80;

/// Shared evaluation state for a sequence of root searches.
pub struct Workspace<'c> {
    ctx: &'c NumericContext,
    sums: TranslatedSums<'c>,
}

impl<'c> Workspace<'c> {
    pub fn new(ctx: &'c NumericContext) -> Self {
        Workspace {
            ctx,
            sums: TranslatedSums::new(FAMILY_MAX_K, ctx),
        }
    }

    pub fn context(&self) -> &'c NumericContext {
        self.ctx
    }

    pub fn sums(&mut self) -> &mut TranslatedSums<'c> {
        &mut self.sums
    }

    /// P_k(s) for k ≥ 1.
    pub fn almost_zeta(&self, k: u32, s: f64) -> Result<Float> {
        let arg = Arg::from_f64(s, self.ctx)?;
        if k == 1 {
            return Ok(prime_zeta_at(&arg, false, self.ctx)?.value);
        }
        let mut series = almost_zeta_series(k, &arg, false, self.ctx)?;
        Ok(series.values.swap_remove(k as usize))
    }
}

pub trait RootFamily: Send + Sync {
    /// Registry key, e.g. `sigma`.
    fn name(&self) -> &'static str;
    /// Column label, e.g. `sigma_k`.
    fn symbol(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn takes_k(&self) -> bool {
        true
    }
    /// The function whose sign change defines the root.
    fn residual(&self, k: u32, x: f64, ws: &mut Workspace) -> Result<f64>;
    fn bracket(&self, k: u32, ws: &mut Workspace) -> Result<(f64, f64)>;

    fn solve(&self, k: u32, ws: &mut Workspace) -> Result<RootResult> {
        if self.takes_k() && !(2..=FAMILY_MAX_K).contains(&k) {
            return Err(domain("k", k, "2 <= k <= 20"));
        }
        let wrap = |e: Error| Error::Family {
            family: self.name(),
            k,
            source: Box::new(e),
        };
        let (lo, hi) = self.bracket(k, ws).map_err(wrap)?;
        let ctx = ws.context();
        let r = find_root(|x| self.residual(k, x, ws), lo, hi, ctx).map_err(wrap)?;
        if !r.converged {
            return Err(wrap(Error::NotConverged {
                what: "root residual",
                tol: ctx.eps_root,
                cap: r.iterations,
            }));
        }
        Ok(r)
    }
}

/// Bracket for a function of s that is positive just right of 1 and
/// negative further out: seeded at 1 + 1/k³, doubled away from 1 up to
/// s = 3, or halved towards 1 when the seed already lies past the root.
fn s_bracket<F>(k: u32, mut g: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let seed = 1.0 / f64::from(k).powi(3);
    if g(1.0 + seed)? > 0.0 {
        let mut lo = seed;
        loop {
            let hi = (2.0 * lo).min(S_CAP - 1.0);
            if g(1.0 + hi)? < 0.0 {
                return Ok((1.0 + lo, 1.0 + hi));
            }
            if hi >= S_CAP - 1.0 {
                return Err(Error::InvalidBracket {
                    lo: 1.0 + seed,
                    hi: S_CAP,
                });
            }
            lo = hi;
        }
    }
    let mut hi = seed;
    for _ in 0..MAX_LEFT_STEPS {
        let lo = hi / 2.0;
        if g(1.0 + lo)? > 0.0 {
            return Ok((1.0 + lo, 1.0 + hi));
        }
        hi = lo;
    }
    Err(Error::InvalidBracket {
        lo: 1.0 + hi,
        hi: 1.0 + seed,
    })
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// s_k: P(s) = (k!)^{1/(k−1)}.
pub struct SK;
/// t_k: P_k(t) = 2^{−t} + 3^{−t}.
pub struct TK;
/// s'_k: P_{k−1}(s) = 1.
pub struct SPrimeK;
/// σ_k: P_k(s) = P(s).
pub struct SigmaK;
/// h_k: f(ℕ_k, h) = f(ℕ_1, h).
pub struct HK;
/// h_∞: f(ℕ_1, h) = 1.
pub struct HInfinity;

impl RootFamily for SK {
    fn name(&self) -> &'static str {
        "sk"
    }
    fn symbol(&self) -> &'static str {
        "s_k"
    }
    fn describe(&self) -> &'static str {
        "P(s) = (k!)^(1/(k-1))"
    }
    fn residual(&self, k: u32, s: f64, ws: &mut Workspace) -> Result<f64> {
        let target = factorial(k).powf(1.0 / f64::from(k - 1));
        Ok(ws.almost_zeta(1, s)?.to_f64() - target)
    }
    fn bracket(&self, k: u32, ws: &mut Workspace) -> Result<(f64, f64)> {
        s_bracket(k, |s| self.residual(k, s, ws))
    }
}

impl RootFamily for TK {
    fn name(&self) -> &'static str {
        "tk"
    }
    fn symbol(&self) -> &'static str {
        "t_k"
    }
    fn describe(&self) -> &'static str {
        "P_k(t) / (2^-t + 3^-t) = 1"
    }
    fn residual(&self, k: u32, t: f64, ws: &mut Workspace) -> Result<f64> {
        let p = ws.almost_zeta(k, t)?;
        let mut denom = ws.context().float(2.0);
        denom.pow_assign(-t);
        let mut three = ws.context().float(3.0);
        three.pow_assign(-t);
        denom += three;
        Ok((p / denom).to_f64() - 1.0)
    }
    fn bracket(&self, k: u32, ws: &mut Workspace) -> Result<(f64, f64)> {
        s_bracket(k, |s| self.residual(k, s, ws))
    }
}

impl RootFamily for SPrimeK {
    fn name(&self) -> &'static str {
        "spk"
    }
    fn symbol(&self) -> &'static str {
        "s_prime_k"
    }
    fn describe(&self) -> &'static str {
        "P_{k-1}(s) = 1"
    }
    fn residual(&self, k: u32, s: f64, ws: &mut Workspace) -> Result<f64> {
        Ok(ws.almost_zeta(k - 1, s)?.to_f64() - 1.0)
    }
    fn bracket(&self, k: u32, ws: &mut Workspace) -> Result<(f64, f64)> {
        s_bracket(k, |s| self.residual(k, s, ws))
    }
}

impl RootFamily for SigmaK {
    fn name(&self) -> &'static str {
        "sigma"
    }
    fn symbol(&self) -> &'static str {
        "sigma_k"
    }
    fn describe(&self) -> &'static str {
        "P_k(s) = P(s)"
    }
    fn residual(&self, k: u32, s: f64, ws: &mut Workspace) -> Result<f64> {
        let arg = Arg::from_f64(s, ws.context())?;
        let series = almost_zeta_series(k, &arg, false, ws.context())?;
        let diff = Float::with_val(ws.context().prec(), &series.values[k as usize] - &series.values[1]);
        Ok(diff.to_f64())
    }
    fn bracket(&self, k: u32, ws: &mut Workspace) -> Result<(f64, f64)> {
        s_bracket(k, |s| self.residual(k, s, ws))
    }
}

/// Interval searched for h_k and h_∞.
pub const H_BRACKET: (f64, f64) = (0.0, 2.0);

impl RootFamily for HK {
    fn name(&self) -> &'static str {
        "hk"
    }
    fn symbol(&self) -> &'static str {
        "h_k"
    }
    fn describe(&self) -> &'static str {
        "f(N_k, h) = f(N_1, h)"
    }
    fn residual(&self, k: u32, h: f64, ws: &mut Workspace) -> Result<f64> {
        Ok(ws.sums().difference(k, h)?.to_f64())
    }
    fn bracket(&self, _k: u32, _ws: &mut Workspace) -> Result<(f64, f64)> {
        Ok(H_BRACKET)
    }
}

impl RootFamily for HInfinity {
    fn name(&self) -> &'static str {
        "hinf"
    }
    fn symbol(&self) -> &'static str {
        "h_inf"
    }
    fn describe(&self) -> &'static str {
        "f(N_1, h) = 1"
    }
    fn takes_k(&self) -> bool {
        false
    }
    fn residual(&self, _k: u32, h: f64, ws: &mut Workspace) -> Result<f64> {
        Ok(ws.sums().f(1, h)?.to_f64() - 1.0)
    }
    fn bracket(&self, _k: u32, _ws: &mut Workspace) -> Result<(f64, f64)> {
        Ok(H_BRACKET)
    }
}

#[derive(Clone)]
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Arc<dyn RootFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            families: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, family: Arc<dyn RootFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn RootFamily>> {
        self.families.get(name).cloned().ok_or_else(|| Error::Unknown {
            kind: "root family",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = FamilyRegistry::empty();
        r.register(Arc::new(SK));
        r.register(Arc::new(TK));
        r.register(Arc::new(SPrimeK));
        r.register(Arc::new(SigmaK));
        r.register(Arc::new(HK));
        r.register(Arc::new(HInfinity));
        r
    }
}
