use cyclokzb::hecke::{psi_commutes, shift_commutes, tp_preserves_relations};
use cyclokzb::numeric::polylog::distribution_residual;
use cyclokzb::Root;
use proptest::prelude::*;

fn coprime_prime(n: u64) -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11]).prop_filter("p must not divide N", move |p| n % p != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_commutes_with_psi((n, p) in (1u64..=15).prop_flat_map(|n| (Just(n), coprime_prime(n))), m in 3u32..=7) {
        prop_assert!(psi_commutes(n, m, p).unwrap());
        prop_assert!(tp_preserves_relations(n, m - 1, p).unwrap());
    }

    #[test]
    fn level_shift_commutes_with_hecke((n, p) in (1u64..=8).prop_flat_map(|n| (Just(n), coprime_prime(2 * 3 * n))), d in 2u64..=3, m in 3u32..=6) {
        prop_assert!(shift_commutes(n, m, d, p).unwrap());
    }

    #[test]
    fn distribution_relation(n in 1u64..=8, k in 0u64..8, l in 2u64..=3, m in 2u32..=5) {
        let r = Root::new((k % n) as i64, n);
        prop_assert!(distribution_residual(m, l, r, 128).unwrap() < 1e-30);
    }
}
