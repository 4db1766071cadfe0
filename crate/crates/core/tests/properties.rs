mod common;

use hhv_core::exact::{bernoulli_table, gen_binomial};
use hhv_core::inequalities::{kernel_double_sum, rhs_31, rhs_yang13, verify_31, verify_32};
use hhv_core::sequences::Sequence;
use hhv_core::weights::{bound_24, weight_omega, weight_omega_dual};
use hhv_core::zeta::{integral_test_bracket, tail_power_sum, zeta_em};
use hhv_core::{EmSettings, HolderParams};
use proptest::prelude::*;

use common::naive_double_sum;

fn within_ulps(x: f64, y: f64, ulps: f64, scale: f64) -> bool {
    (x - y).abs() <= ulps * f64::EPSILON * scale
}

/// Admissible `(p, lambda)`: lambda drawn over the open-closed admissible range.
fn params() -> impl Strategy<Value = HolderParams> {
    (1.05f64..6.0, 0.0f64..1.0).prop_map(|(p, t)| {
        let q = p / (p - 1.0);
        let edge = 2.0 - p.min(q);
        let lambda = edge + 1e-3 + t * (2.0 - edge - 1e-3);
        HolderParams::new(p, lambda).unwrap()
    })
}

fn sequence(max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0.0f64..10.0, 1..max_len)
        .prop_filter("needs a positive entry", |v| v.iter().any(|&x| x > 0.0))
        .prop_map(|v| Sequence::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pascal_rule(alpha in -20.0f64..20.0, k in 1u32..=20) {
        let lhs = gen_binomial(alpha, k).unwrap();
        let a = gen_binomial(alpha - 1.0, k).unwrap();
        let b = gen_binomial(alpha - 1.0, k - 1).unwrap();
        let scale = a.abs().max(b.abs()).max(lhs.abs());
        prop_assert!(within_ulps(lhs, a + b, 8.0, scale), "{lhs} vs {a} + {b}");
    }

    #[test]
    fn zeta_settings_agree(rho in 0.0f64..6.0) {
        prop_assume!((rho - 1.0).abs() > 1e-3);
        let a = zeta_em(rho, EmSettings::new(16, 8).unwrap()).unwrap();
        let b = zeta_em(rho, EmSettings::new(64, 10).unwrap()).unwrap();
        prop_assert!(a.intersect(&b).is_some(), "{a} vs {b}");
    }

    #[test]
    fn tail_inside_integral_bracket(s in 1.01f64..5.0, m in 1u64..400) {
        let t = tail_power_sum(s, m, EmSettings::default()).unwrap();
        let i = integral_test_bracket(s, m, 4);
        prop_assert!(t.is_subset_of(&i));
        prop_assert!(t.width() <= i.width());
    }

    #[test]
    fn weight_below_bound_and_positive(h in params(), m in 1u64..300) {
        let s = EmSettings::default();
        let w = weight_omega(m, &h, s).unwrap();
        prop_assert!(w.lo() > 0.0);
        prop_assert!(w.hi() < bound_24(m, &h), "m={m} {w} vs {}", bound_24(m, &h));
        // weaker scaled form
        prop_assert!((m as f64).powf(h.lambda() - 1.0) * w.hi() < h.k_lambda());
    }

    #[test]
    fn dual_weight_is_swapped_weight(h in params(), n in 1u64..100) {
        let s = EmSettings::default();
        prop_assert_eq!(weight_omega_dual(n, &h, s).unwrap(), weight_omega(n, &h.swapped(), s).unwrap());
    }

    #[test]
    fn prefix_kernel_matches_naive(a in sequence(64), b in sequence(64), h in params()) {
        let fast = kernel_double_sum(&a, &b, &h);
        let slow = naive_double_sum(a.values(), b.values(), h.lambda());
        prop_assert!((fast - slow).abs() <= 1e-12 * slow.abs());
    }

    #[test]
    fn theorem_holds_with_strict_improvement(a in sequence(40), b in sequence(40), h in params()) {
        let r = verify_31(&a, &b, &h).unwrap();
        prop_assert!(r.holds, "{r:?}");
        prop_assert!(r.rhs < r.rhs_baseline);
        prop_assert!(r.improvement > 0.0);
        let r = verify_32(&a, &h, 2 * a.len() + 50).unwrap();
        prop_assert!(r.holds, "{r:?}");
    }

    #[test]
    fn zero_padding_changes_nothing(a in sequence(30), b in sequence(30), h in params(), pad in 1usize..20) {
        let r = verify_31(&a, &b, &h).unwrap();
        let mut padded = verify_31(&a.padded(pad), &b, &h).unwrap();
        padded.a = r.a.clone();
        prop_assert_eq!(&r, &padded);
        let r = verify_32(&a, &h, 100).unwrap();
        let p = verify_32(&a.padded(pad), &h, 100).unwrap();
        prop_assert_eq!(r, p);
    }

    #[test]
    fn homogeneous_in_a(a in sequence(30), b in sequence(30), h in params(), c in 0.01f64..100.0) {
        let ca = a.scaled(c).unwrap();
        let lhs = kernel_double_sum(&a, &b, &h);
        let clhs = kernel_double_sum(&ca, &b, &h);
        prop_assert!(within_ulps(clhs, c * lhs, 4.0, clhs.abs()), "{clhs} vs {}", c * lhs);
        let rhs = rhs_31(&a, &b, &h).unwrap();
        let crhs = rhs_31(&ca, &b, &h).unwrap();
        prop_assert!(within_ulps(crhs, c * rhs, 4.0, crhs.abs()), "{crhs} vs {}", c * rhs);
    }

    #[test]
    fn symmetric_kernel_at_p_two(a in sequence(50), b in sequence(50), l in 0.01f64..2.0) {
        let h = HolderParams::new(2.0, l).unwrap();
        let ab = kernel_double_sum(&a, &b, &h);
        let ba = kernel_double_sum(&b, &a, &h);
        prop_assert!((ab - ba).abs() <= 1e-14 * ab);
        prop_assert!(rhs_31(&a, &b, &h).unwrap() < rhs_yang13(&a, &b, &h));
    }
}

#[test]
fn odd_bernoulli_vanish() {
    for n in 1..=40usize {
        let t = bernoulli_table(2 * n + 1).unwrap();
        assert!(common::is_zero(t.get(2 * n + 1).unwrap()));
    }
}
