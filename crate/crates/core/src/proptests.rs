//! Randomized invariants over the public API.

use std::sync::OnceLock;

use proptest::prelude::*;
use rug::Float;

use crate::almost_prime::{almost_zeta, almost_zeta_partition};
use crate::context::{make_context, round_f64_for_display, NumericContext};
use crate::enumerator::{big_omega, OmegaSieve};
use crate::prime_zeta::prime_zeta;
use crate::roots::find_root;
use crate::translated::TranslatedSums;

fn ctx() -> &'static NumericContext {
    static CTX: OnceLock<NumericContext> = OnceLock::new();
    CTX.get_or_init(|| make_context(30).unwrap())
}

fn sieve() -> &'static OmegaSieve {
    static SIEVE: OnceLock<OmegaSieve> = OnceLock::new();
    SIEVE.get_or_init(|| OmegaSieve::new(1_000_000).unwrap())
}

fn f64_of(x: &Float) -> f64 {
    x.to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursion_matches_partition_sum(k in 2u32..=12, s in 1.01f64..4.0) {
        let a = almost_zeta(k, s, ctx()).unwrap();
        let b = almost_zeta_partition(k, s, ctx()).unwrap();
        let diff = f64_of(&Float::with_val(ctx().prec(), &a.value - &b.value)).abs();
        prop_assert!(diff <= 1e-25 * a.to_f64().abs().max(1.0), "diff {diff:e}");
    }

    #[test]
    fn prime_zeta_decreasing(a in 1.0001f64..40.0, b in 1.0001f64..40.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let p_lo = prime_zeta(lo, ctx()).unwrap().to_f64();
        let p_hi = prime_zeta(hi, ctx()).unwrap().to_f64();
        prop_assert!(p_lo > p_hi);
    }

    #[test]
    fn almost_zeta_above_leading_partition(k in 2u32..=10, s in 1.01f64..3.0) {
        let pk = almost_zeta(k, s, ctx()).unwrap().to_f64();
        let p = prime_zeta(s, ctx()).unwrap().to_f64();
        let factorial: f64 = (1..=k).map(f64::from).product();
        prop_assert!(pk > p.powi(k as i32) / factorial);
    }

    #[test]
    fn almost_zeta_weighted_decreasing(
        k in prop::sample::select(vec![2u32, 5, 10]),
        a in 1.1f64..5.0,
        b in 1.1f64..5.0,
    ) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let c = f64::from(k) - 0.1;
        let w = |s: f64| almost_zeta(k, s, ctx()).unwrap().to_f64() * (c * s).exp2();
        prop_assert!(w(lo) > w(hi));
    }

    #[test]
    fn sieve_agrees_with_trial_division(n in 2u64..=1_000_000) {
        prop_assert_eq!(sieve().omega(n).unwrap(), big_omega(n).unwrap());
    }

    #[test]
    fn omega_is_additive(a in 2u64..100_000, b in 2u64..100_000) {
        prop_assert_eq!(big_omega(a * b).unwrap(), big_omega(a).unwrap() + big_omega(b).unwrap());
    }

    #[test]
    fn display_rounding_is_close(x in -1e6f64..1e6, places in 0usize..10) {
        let shown: f64 = round_f64_for_display(x, places).parse().unwrap();
        prop_assert!((shown - x).abs() <= 0.5 * 10f64.powi(-(places as i32)) * (1.0 + 1e-9) + 1e-9 * x.abs());
    }

    #[test]
    fn root_of_linear_function(root in -10.0f64..10.0, slope in 0.1f64..100.0) {
        let r = find_root(|x| Ok(slope * (x - root)), -20.0, 20.0, ctx()).unwrap();
        prop_assert!(r.converged);
        prop_assert!((r.root - root).abs() <= 1e-12 * (1.0 + root.abs()));
        prop_assert!(r.bracket.0 <= r.root && r.root <= r.bracket.1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn translated_sum_decreasing_in_h(
        k in prop::sample::select(vec![1u32, 2, 10]),
        a in 0.0f64..5.0,
        b in 0.0f64..5.0,
    ) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let mut sums = TranslatedSums::new(k, ctx());
        prop_assert!(sums.f(k, lo).unwrap().to_f64() > sums.f(k, hi).unwrap().to_f64());
    }
}

#[test]
fn weighted_difference_increasing() {
    // D_k(h)·e^{(σ_k − 1)h} is increasing in h.
    use crate::roots::{RootFamily, SigmaK, Workspace};
    let mut ws = Workspace::new(ctx());
    for k in [2, 3, 5] {
        let sigma = SigmaK.solve(k, &mut ws).unwrap().root;
        let values: Vec<f64> = (0..=8)
            .map(|i| {
                let h = 0.25 * f64::from(i);
                ws.sums().difference(k, h).unwrap().to_f64() * ((sigma - 1.0) * h).exp()
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "k={k}: {values:?}");
    }
}
