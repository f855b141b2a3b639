mod common;

use common::*;
use proptest::prelude::*;
use twisig::bounds::{
    min_genus_bound, slice_check_general, slice_check_simple, span_check, span_check_general_n, surface_betti,
    SliceBetti, SpanBetti, SurfaceDescriptor, SurfacePiece,
};
use twisig::invariants::{levine_tristram, signature_scan, Mode, ScanSource};
use twisig::local_system::{comparison_field, CoefficientField, MonodromyAssignment};
use twisig::par::Execution;

/// Second implementation of the two span right-hand sides, term by term.
fn span_rhs_oracle(b: &SpanBetti) -> (i64, i64) {
    let get = |v: &[u64], k: i64| -> i64 {
        if k < 0 {
            0
        } else {
            v[k as usize] as i64
        }
    };
    let (mut r2, mut r3) = (0i64, 0i64);
    let mut sign = 1i64;
    for s in 0..=2 * b.r {
        r2 += sign * (get(&b.relative, b.n + s + 1) + get(&b.absolute, b.n + s));
        r3 += sign * (get(&b.relative, b.n - s) + get(&b.absolute, b.n - s - 1));
        sign = -sign;
    }
    (r2, r3)
}

fn span_strategy() -> impl Strategy<Value = SpanBetti> {
    (1i64..6)
        .prop_flat_map(|n| (Just(n), 0..=n / 2))
        .prop_flat_map(|(n, r)| {
            let len = (n + 2 * r + 2) as usize;
            (Just(n), Just(r), prop::collection::vec(0u64..6, len), prop::collection::vec(0u64..6, len))
        })
        .prop_map(|(n, r, relative, absolute)| SpanBetti { n, r, relative, absolute, warnings: vec![] })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn span_general_matches_oracle(b in span_strategy(), sigma in -8i64..8, nullity in 0i64..5) {
        let [v2, v3] = span_check_general_n(sigma, nullity, &b).unwrap();
        let (r2, r3) = span_rhs_oracle(&b);
        prop_assert_eq!((v2.rhs, v3.rhs), (r2, r3));
        prop_assert_eq!(v2.holds, sigma.abs() + nullity <= r2);
        prop_assert_eq!(v3.holds, sigma.abs() + nullity <= r3);
        prop_assert_eq!(v2.slack, r2 - sigma.abs() - nullity);
    }

    #[test]
    fn raising_a_positive_term_keeps_a_holding_verdict(b in span_strategy(), sigma in -8i64..8, nullity in 0i64..5, idx in 0usize..20, rel in any::<bool>()) {
        let before = span_check_general_n(sigma, nullity, &b).unwrap();
        let len = b.relative.len();
        let k = idx % len;
        let mut raised = b.clone();
        if rel { raised.relative[k] += 1 } else { raised.absolute[k] += 1 }
        let after = span_check_general_n(sigma, nullity, &raised).unwrap();
        // Coefficient of the raised entry in each inequality, from the oracle.
        let (o2, o3) = span_rhs_oracle(&b);
        let (n2, n3) = span_rhs_oracle(&raised);
        for (i, coeff) in [(0, n2 - o2), (1, n3 - o3)] {
            if coeff > 0 && before[i].holds {
                prop_assert!(after[i].holds);
                prop_assert!(after[i].slack > before[i].slack);
            }
        }
    }

    #[test]
    fn classical_span_is_the_n1_case(pieces in prop::collection::vec((0u64..4, 1u64..4), 1..4), sigma in -8i64..8, nullity in 0i64..4) {
        let s = SurfaceDescriptor::single(pieces.iter().map(|&(g, b)| SurfacePiece { genus: g, boundary_components: b }).collect());
        let b = surface_betti(&s).unwrap();
        prop_assert_eq!(span_check(sigma, nullity, &b).unwrap(), span_check_general_n(sigma, nullity, &b).unwrap());
        // Disjoint pieces: both right-hand sides agree by duality.
        let [v2, v3] = span_check(sigma, nullity, &b).unwrap();
        prop_assert_eq!(v2.rhs, v3.rhs);
    }

    #[test]
    fn slice_general_at_r0_is_simple_plus_complement(sigma in -8i64..8, h_lambda in 0u64..10, h_comp in 0u64..10) {
        let b = SliceBetti { n: 1, r: 0, lambda: vec![0, h_lambda], complement: vec![0, h_comp] };
        let general = slice_check_general(sigma, 0, &b).unwrap();
        let simple = slice_check_simple(sigma, h_lambda);
        prop_assert_eq!(general.rhs, simple.rhs + h_comp as i64);
        if simple.holds {
            prop_assert!(general.holds);
        }
    }
}

fn roots(k: i64, n: i64) -> MonodromyAssignment {
    format!("{k}/{n}").parse().unwrap()
}

#[test]
fn genus_bound_never_exceeds_the_seifert_surface() {
    for e in knots() {
        let v = seifert(&diagram(e));
        assert_eq!(v.size() as u64, 2 * e.seifert_genus, "{}", e.name);
        let scan = signature_scan(&ScanSource::Seifert(v), 36, Mode::Exact, Execution::Parallel).unwrap();
        let best = scan.rows.iter().map(|r| r.sample.sigma.abs() + r.sample.nullity as i64).max().unwrap();
        let bound = min_genus_bound(best, 0, 1);
        assert!(bound <= e.seifert_genus, "{}: bound {} > genus {}", e.name, bound, e.seifert_genus);
    }
}

#[test]
fn trefoil_disk_violation_over_every_valid_field() {
    let z = roots(1, 2);
    let choice = comparison_field(&z);
    assert_eq!(choice.field, CoefficientField::Prime(2));
    let v = seifert(&pd_diagram(TREFOIL_PD));
    let s = levine_tristram(&v, &z).unwrap();
    let disk =
        surface_betti(&SurfaceDescriptor::single(vec![SurfacePiece { genus: 0, boundary_components: 1 }])).unwrap();
    for _field in choice.valid_fields() {
        let [v2, v3] = span_check(s.sigma, s.nullity as i64, &disk).unwrap();
        assert!(!v2.holds && !v3.holds);
    }
}

#[test]
fn slice_simple_is_conjugation_invariant() {
    for e in CORPUS {
        let v = seifert(&diagram(e));
        for s in samples() {
            let z: MonodromyAssignment = s.parse().unwrap();
            let a = levine_tristram(&v, &z).unwrap();
            let b = levine_tristram(&v, &z.conj()).unwrap();
            for h in 0..8 {
                assert_eq!(slice_check_simple(a.sigma, h), slice_check_simple(b.sigma, h));
            }
        }
    }
}
