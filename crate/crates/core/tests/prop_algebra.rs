mod common;

use common::complexes::{random_complex, stabilize};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisig::chain_complex::{
    betti, specialize_twisted, specialize_untwisted, twisted_betti, untwisted_betti, GroupRingComplex, LaurentMatrix,
};
use twisig::hermitian::{signature_nullity, signature_nullity_float, FormKind, HermitianMatrixExact};
use twisig::laurent::Laurent;
use twisig::local_system::{specialization_d, CoefficientField, MonodromyAssignment};
use twisig::scalars::{Cyclotomic, RootOfUnity};

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24, 30];

fn cyclotomic_strategy() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(CONDUCTORS), prop::collection::vec((0i64..30, -5i64..=5), 0..5))
        .prop_map(|(n, terms)| Cyclotomic::from_power_sum(n, terms.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn float_embedding_is_a_ring_map(a in cyclotomic_strategy(), b in cyclotomic_strategy()) {
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(close((&a + &b).to_complex(), x + y));
        prop_assert!(close((&a - &b).to_complex(), x - y));
        prop_assert!(close((&a * &b).to_complex(), x * y));
        prop_assert!(close(a.conj().to_complex(), x.conj()));
    }

    #[test]
    fn real_sign_is_odd(a in cyclotomic_strategy()) {
        let re = &a + &a.conj();
        prop_assume!(!re.is_zero());
        let s = re.real_sign().unwrap();
        let t = (-&re).real_sign().unwrap();
        prop_assert_eq!(s * t, -1);
        prop_assert_eq!(s as f64, re.to_complex().re.signum());
    }

    #[test]
    fn conjugation_is_multiplicative(a in cyclotomic_strategy(), b in cyclotomic_strategy()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }
}

fn roots_strategy(max_colors: usize) -> impl Strategy<Value = Vec<RootOfUnity>> {
    prop::collection::vec((1i64..40, 2i64..40), 1..=max_colors)
        .prop_map(|v| v.into_iter().map(|(k, n)| RootOfUnity::new(k, n).unwrap()).collect())
}

fn d_of(roots: Vec<RootOfUnity>) -> u64 {
    specialization_d(&MonodromyAssignment::exact(roots).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_is_galois_and_permutation_invariant(roots in roots_strategy(3), seed in any::<u64>()) {
        let d = d_of(roots.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = roots.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(d_of(shuffled), d);
        let i = rng.gen_range(0..roots.len());
        let mut inverted = roots.clone();
        inverted[i] = inverted[i].inverse();
        prop_assert_eq!(d_of(inverted), d);
    }

    #[test]
    fn duplicating_a_color_never_increases_d(roots in roots_strategy(3), j in 0usize..3) {
        let d = d_of(roots.clone());
        let mut more = roots.clone();
        more.push(roots[j % roots.len()]);
        let e = d_of(more);
        // Divisibility order, with 0 at the top.
        prop_assert!(e == d || (e != 0 && d.is_multiple_of(e)), "d = {}, after duplication {}", d, e);
    }
}

fn random_zeta(rng: &mut ChaCha8Rng, m: usize, allow_trivial: bool) -> MonodromyAssignment {
    let roots = (0..m)
        .map(|_| {
            let n = rng.gen_range(2..13);
            let lo = if allow_trivial { 0 } else { 1 };
            RootOfUnity::new(rng.gen_range(lo..n), n).unwrap()
        })
        .collect();
    MonodromyAssignment::exact(roots).unwrap()
}

fn euler(ranks: &[usize]) -> i64 {
    ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn twisted_betti_survives_stabilization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=2);
        let top = rng.gen_range(1..=3);
        let c = random_complex(&mut rng, m, top, 4);
        let k = rng.gen_range(0..top);
        let s = stabilize(&c, k, &mut rng);
        let z = random_zeta(&mut rng, m, true);
        prop_assert_eq!(twisted_betti(&c, &z).unwrap().dims, twisted_betti(&s, &z).unwrap().dims);
        prop_assert_eq!(
            untwisted_betti(&c, &CoefficientField::Rationals).unwrap().dims,
            untwisted_betti(&s, &CoefficientField::Rationals).unwrap().dims
        );
    }

    #[test]
    fn euler_characteristic_is_field_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=2);
        let t = rng.gen_range(1..=3);
        let c = random_complex(&mut rng, m, t, 5);
        let chi = euler(&c.ranks);
        let z = random_zeta(&mut rng, m, true);
        prop_assert_eq!(twisted_betti(&c, &z).unwrap().euler_characteristic(), chi);
        prop_assert_eq!(twisted_betti(&c, &z.to_float()).unwrap().euler_characteristic(), chi);
        for f in [CoefficientField::Rationals, CoefficientField::Prime(2), CoefficientField::Prime(3)] {
            prop_assert_eq!(untwisted_betti(&c, &f).unwrap().euler_characteristic(), chi);
        }
    }

    #[test]
    fn mod_p_betti_dominates_rational(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=2);
        let t = rng.gen_range(1..=3);
        let c = random_complex(&mut rng, m, t, 5);
        let q = betti(&specialize_untwisted(&c, &CoefficientField::Rationals).unwrap());
        let fp = betti(&specialize_untwisted(&c, &CoefficientField::Prime(p)).unwrap());
        for k in 0..c.ranks.len() {
            prop_assert!(fp.get(k) >= q.get(k), "degree {}: F_{} {} < Q {}", k, p, fp.get(k), q.get(k));
        }
    }

    #[test]
    fn unimodular_multiple_of_t_minus_one_is_acyclic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let i = rng.gen_range(1..=m);
        // Upper unitriangular U with Laurent entries, times (t_i - 1).
        let ti = Laurent::var(i).sub(&Laurent::one());
        let mut d = LaurentMatrix::zeros(k, k);
        for r in 0..k {
            for c in r..k {
                let u = if r == c { Laurent::one() } else { common::complexes::random_laurent(&mut rng, m, 2) };
                d.set(r, c, u.mul(&ti));
            }
        }
        let cx = GroupRingComplex::new(m, vec![k, k], vec![d]).unwrap();
        let mut z = random_zeta(&mut rng, m, true);
        let mut roots = z.roots().unwrap();
        if roots[i - 1].is_one() {
            roots[i - 1] = RootOfUnity::new(1, rng.gen_range(2..9)).unwrap();
            z = MonodromyAssignment::exact(roots).unwrap();
        }
        prop_assert_eq!(twisted_betti(&cx, &z).unwrap().dims, vec![0, 0]);
        prop_assert_eq!(twisted_betti(&GroupRingComplex::circle(), &z.to_float()).unwrap().dims.len(), 2);
    }
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, n: u32) -> Cyclotomic {
    let terms: Vec<(i64, BigInt)> =
        (0..rng.gen_range(0..3)).map(|_| (rng.gen_range(0..n as i64), BigInt::from(rng.gen_range(-3..=3)))).collect();
    Cyclotomic::from_power_sum(n, terms)
}

/// Random Hermitian matrix over `Q(zeta_n)`, with some forced degeneracy.
#[allow(clippy::needless_range_loop)]
fn random_hermitian(rng: &mut ChaCha8Rng, size: usize, n: u32) -> HermitianMatrixExact {
    let mut a = vec![vec![Cyclotomic::zero(); size]; size];
    for i in 0..size {
        let x = random_cyclotomic(rng, n);
        a[i][i] = &x + &x.conj();
        for j in i + 1..size {
            let y = random_cyclotomic(rng, n);
            a[j][i] = y.conj();
            a[i][j] = y;
        }
    }
    if size >= 2 && rng.gen_bool(0.3) {
        // Make the last row a multiple of the first so the form is degenerate.
        let c = Cyclotomic::from_int(rng.gen_range(-2..=2));
        let cc = c.conj();
        for j in 0..size {
            a[size - 1][j] = &c * &a[0][j];
        }
        for i in 0..size {
            a[i][size - 1] = a[size - 1][i].conj();
        }
        a[size - 1][size - 1] = &(&c * &cc) * &a[0][0];
    }
    HermitianMatrixExact::new(FormKind::Hermitian, a).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, size: usize, n: u32) -> Vec<Vec<Cyclotomic>> {
    // Lower unitriangular times a nonzero rational diagonal times upper unitriangular.
    let mut l = vec![vec![Cyclotomic::zero(); size]; size];
    let mut u = vec![vec![Cyclotomic::zero(); size]; size];
    for i in 0..size {
        l[i][i] = Cyclotomic::from_rational(BigRational::new(
            (*[-3i64, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap()).into(),
            BigInt::from(rng.gen_range(1..4)),
        ));
        u[i][i] = Cyclotomic::one();
        for j in 0..i {
            l[i][j] = random_cyclotomic(rng, n);
            u[j][i] = random_cyclotomic(rng, n);
        }
    }
    (0..size)
        .map(|i| {
            (0..size).map(|j| (0..size).fold(Cyclotomic::zero(), |acc, k| &acc + &(&l[i][k] * &u[k][j]))).collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn signature_is_a_congruence_invariant(seed in any::<u64>(), n in prop::sample::select(vec![3u32, 4, 5, 8, 12])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = rng.gen_range(1..=4);
        let a = random_hermitian(&mut rng, size, n);
        let p = random_invertible(&mut rng, size, n);
        prop_assert_eq!(signature_nullity(&a).unwrap(), signature_nullity(&a.congruent(&p)).unwrap());
    }

    #[test]
    fn signature_is_additive_and_conjugation_invariant(seed in any::<u64>(), n in prop::sample::select(vec![3u32, 4, 5, 8])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rng.gen_range(0..=3);
        let a = random_hermitian(&mut rng, t, n);
        let t = rng.gen_range(0..=3);
        let b = random_hermitian(&mut rng, t, n);
        let (sa, sb) = (signature_nullity(&a).unwrap(), signature_nullity(&b).unwrap());
        prop_assert_eq!(signature_nullity(&a.direct_sum(&b)).unwrap(), sa.plus(&sb));
        prop_assert_eq!(signature_nullity(&a.conj()).unwrap(), sa);
    }

    #[test]
    fn exact_and_float_signatures_agree(seed in any::<u64>(), n in prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 12])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rng.gen_range(0..=5);
        let a = random_hermitian(&mut rng, t, n);
        prop_assert_eq!(signature_nullity(&a).unwrap(), signature_nullity_float(&a.to_float()));
    }

    #[test]
    fn float_and_exact_specializations_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=2);
        let t = rng.gen_range(1..=3);
        let c = random_complex(&mut rng, m, t, 4);
        let z = random_zeta(&mut rng, m, true);
        let exact = betti(&specialize_twisted(&c, &z).unwrap());
        let float = betti(&specialize_twisted(&c, &z.to_float()).unwrap());
        prop_assert_eq!(exact.dims, float.dims);
    }
}
