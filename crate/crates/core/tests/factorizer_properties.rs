use proptest::prelude::*;
use wavefactor_core::{
    factorize, is_separated, min_discriminating_terms, oracle_factorize, scan, Error,
    ScanParams, SumKind, Verdict,
};

#[test]
fn factorize_matches_oracle_small_range() {
    let params = ScanParams::default();
    for n in 2..5_000u64 {
        let got = factorize(n, &params).unwrap();
        assert_eq!(got.prime_factors, oracle_factorize(n).unwrap(), "N = {n}");
        assert_eq!(got.prime_factors.iter().product::<u64>(), n);
    }
}

#[test]
fn kummer_ghost_at_nine_persists() {
    // cubes mod 9 are 0, 1, 8: for N = 1 mod 9 the full period sums to 3 + 6 cos(2 pi / 9)
    let err = min_discriminating_terms(10_403, SumKind::Kummer, 0.75).unwrap_err();
    assert_eq!(err, Error::NotSeparated { trial: 9, cap: 10_000 });
}

#[test]
fn factorize_fixed_truncation_and_other_kinds() {
    for kind in [SumKind::Fourier, SumKind::Kummer, SumKind::SelfExponential] {
        let params = ScanParams::new(kind).with_terms(3).with_threshold(0.5);
        for n in [2u64, 97, 360, 1001, 65_536, 999_983, 999_999] {
            let got = factorize(n, &params).unwrap();
            assert_eq!(got.prime_factors, oracle_factorize(n).unwrap(), "{kind} N = {n}");
            assert!(got.terms_used_per_level().iter().all(|&t| t == 3));
        }
    }
}

#[test]
fn discrimination_is_tight() {
    for n in [15u64, 21, 35, 77, 143, 221, 1_001, 10_403] {
        for kind in [SumKind::Fourier, SumKind::Gauss, SumKind::Kummer] {
            let m = match min_discriminating_terms(n, kind, 0.75) {
                Ok(m) => m,
                Err(Error::NotSeparated { trial, cap }) => {
                    assert_ne!(n % trial, 0);
                    assert!(!is_separated(n, kind, 0.75, cap).unwrap());
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            assert!(is_separated(n, kind, 0.75, m).unwrap(), "{kind} N = {n} M* = {m}");
            if m > 1 {
                assert!(!is_separated(n, kind, 0.75, m - 1).unwrap(), "{kind} N = {n} M* = {m}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn no_false_factors_and_complete(n in 4u64..2_000_000, m in 1u64..12, threshold in 0.05f64..0.99) {
        let params = ScanParams::new(SumKind::Gauss).with_terms(m).with_threshold(threshold);
        let rows = scan(n, &params).unwrap();
        prop_assert_eq!(rows.len() as u64, n.isqrt() - 1);
        for row in rows {
            match row.verdict {
                Verdict::Factor => {
                    prop_assert_eq!(n % row.trial, 0);
                    prop_assert_eq!(row.complement.unwrap() * row.trial, n);
                }
                Verdict::Ghost => {
                    prop_assert!(row.magnitude >= threshold && n % row.trial != 0);
                }
                Verdict::NonFactor => prop_assert!(n % row.trial != 0),
            }
        }
    }

    #[test]
    fn lowering_threshold_only_adds_ghosts(n in 4u64..500_000, m in 1u64..10,
                                           high in 0.5f64..0.99, drop in 0.0f64..0.45) {
        let base = ScanParams::new(SumKind::Kummer).with_terms(m);
        let hi_rows = scan(n, &base.with_threshold(high)).unwrap();
        let lo_rows = scan(n, &base.with_threshold(high - drop)).unwrap();
        for (a, b) in hi_rows.iter().zip(&lo_rows) {
            prop_assert_eq!(a.trial, b.trial);
            if a.verdict == Verdict::Factor {
                prop_assert_eq!(b.verdict, Verdict::Factor);
                prop_assert_eq!(a.complement, b.complement);
            }
            if b.verdict == Verdict::Factor {
                prop_assert_eq!(a.verdict, Verdict::Factor);
            }
            if a.verdict == Verdict::Ghost {
                prop_assert_eq!(b.verdict, Verdict::Ghost);
            }
        }
    }

    #[test]
    fn factorization_product(n in 2u64..10_000_000) {
        let r = factorize(n, &ScanParams::default()).unwrap();
        prop_assert_eq!(r.prime_factors.iter().product::<u64>(), n);
        prop_assert_eq!(r.prime_factors, oracle_factorize(n).unwrap());
    }
}
