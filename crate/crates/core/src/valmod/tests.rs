use super::*;
use crate::branch::curve_data;
use crate::testutil::{oracle_value_set, param};
use crate::valueset::distance_diff;
use proptest::prelude::*;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn spec_of(ps: &[Parametrization]) -> (CurveSpec, CurveData) {
    let spec = CurveSpec::new(ps.to_vec());
    let data = curve_data(&spec, 64).unwrap();
    (spec, data)
}

fn cusp_pair() -> (CurveSpec, CurveData) {
    spec_of(&[param(2, &[(3, 1)]), param(2, &[(3, 1), (4, 1)])])
}

fn kahler_gens() -> Vec<Generator> {
    vec![Generator::Form(PullbackForm::dx()), Generator::Form(PullbackForm::dy())]
}

fn members_1d(s: &BoxedValueSet, range: core::ops::Range<i64>) -> Vec<i64> {
    range.filter(|&v| s.contains(&[v])).collect()
}

#[test]
fn cusp_semigroup_and_kahler() {
    let (spec, data) = spec_of(&[param(2, &[(3, 1)])]);
    let s = semigroup_values(&spec, &data, &cfg()).unwrap();
    assert_eq!(members_1d(s.set(), 0..8), vec![0, 2, 3, 4, 5, 6, 7]);
    let l = kahler_values(&spec, &data, &cfg()).unwrap();
    assert_eq!(members_1d(l.set(), 0..8), vec![2, 3, 4, 5, 6, 7]);
    assert_eq!(l.set().conductor(), &[2]);
}

#[test]
fn e6_kahler_misses_five() {
    let (spec, data) = spec_of(&[param(3, &[(4, 1)])]);
    let l = kahler_values(&spec, &data, &cfg()).unwrap();
    assert!(!l.set().contains(&[5]));
    for v in [3, 4, 6, 7, 8, 9, 10] {
        assert!(l.set().contains(&[v]), "{v}");
    }
}

#[test]
fn cusp_pair_sets() {
    let (spec, data) = cusp_pair();
    assert_eq!(data.intersections[0][1], 7);
    assert_eq!(data.conductor, vec![9, 9]);
    let s = semigroup_values(&spec, &data, &cfg()).unwrap();
    assert_eq!(s.set().conductor(), &[9, 9]);
    assert!(s.set().contains(&[2, 2]) && s.set().contains(&[3, 3]));
    let oracle = crate::testutil::span_value_set(&spec.branches, &[10, 10], 10);
    assert!(s.set().same_set(&oracle));
    let l = kahler_values(&spec, &data, &cfg()).unwrap();
    assert_eq!(l.set().conductor(), &[6, 6]);
    let l_oracle = oracle_value_set(&spec.branches, &kahler_gens(), &[10, 10], 10);
    assert!(l.set().same_set(&l_oracle), "{:?}", l.set().first_difference(&l_oracle));
    // (I - β̄_0, I - β̄_0) is an absolute maximal.
    assert!(l.set().maximals().absolute_maximals.contains(&vec![5, 5]));
    // d(Λ̄ ∖ S) = c.
    let lbar = l.set().with_point(&[0, 0]);
    assert_eq!(distance_diff(&lbar, s.set()).unwrap(), 2);
}

#[test]
fn jacobian_relation_small_cases() {
    let cases: Vec<Vec<Parametrization>> = vec![
        vec![param(2, &[(3, 1)])],
        vec![param(1, &[]), param(1, &[]).swapped()],
        vec![param(2, &[(3, 1)]), param(2, &[(3, 1), (4, 1)])],
    ];
    for ps in cases {
        let (spec, data) = spec_of(&ps);
        let f = crate::branch::curve_equation(&spec).unwrap();
        let j = jacobian_values(&spec, &data, &f, &cfg()).unwrap();
        let l = kahler_values(&spec, &data, &cfg()).unwrap();
        let shifted = shifted_kahler(l.set(), &data.conductor);
        assert!(j.set().same_set(&shifted), "{:?}", j.set().first_difference(&shifted));
    }
}

#[test]
fn cusp_jacobian_values() {
    let (spec, data) = spec_of(&[param(2, &[(3, 1)])]);
    let f = crate::branch::curve_equation(&spec).unwrap();
    let j = jacobian_values(&spec, &data, &f, &cfg()).unwrap();
    assert_eq!(members_1d(j.set(), 0..9), vec![3, 4, 5, 6, 7, 8]);
}

#[test]
fn kernel_of_cusp_pair() {
    let (spec, data) = cusp_pair();
    let m = ValuedModule::kahler(&spec, &data).unwrap();
    let k = m.kernel_values_certified(&[0], 2, &cfg()).unwrap();
    assert_eq!(members_1d(k.set(), 0..12), vec![6, 7, 8, 9, 10, 11]);
    let ring = ValuedModule::ring(&spec, &data).unwrap();
    let k = ring.kernel_values(&[0], &cfg()).unwrap();
    // I + S_2 lies in the kernel values (multiples of f_1).
    for s in [0, 2, 3, 4] {
        assert!(k.set().contains(&[7 + s]));
    }
}

#[test]
fn residues() {
    let cusp = residue_values_irreducible(&param(2, &[(3, 1)]), &cfg()).unwrap();
    assert_eq!(cusp.conductor(), &[-1]);
    assert!(!cusp.contains(&[-2]));
    let e6 = residue_values_irreducible(&param(3, &[(4, 1)]), &cfg()).unwrap();
    assert!(e6.contains(&[-5]));
    let smooth = residue_values_irreducible(&param(1, &[]), &cfg()).unwrap();
    assert_eq!(smooth.conductor(), &[0]);
    assert!(!smooth.contains(&[-1]));
}

#[test]
fn theta_two_ways_for_cusp_pair() {
    let (spec, data) = cusp_pair();
    let m = ValuedModule::kahler(&spec, &data).unwrap();
    let l = m.values(&cfg()).unwrap();
    let by_kernel = theta_by_kernels(&m, l.set(), &cfg()).unwrap();
    assert_eq!(by_kernel, vec![0, 4]);
    assert_eq!(l.set().theta_gh(), by_kernel);
    // I - 2β̄_0 + 1 at the conductor of Λ.
    assert_eq!(l.set().gh_colength(&[6, 6], &by_kernel).unwrap(), 4);
    assert_eq!(l.set().chain_colength(&[6, 6]).unwrap(), 4);
    assert_eq!(l.colength(&[2, 2], &[6, 6]), 4);
}

#[test]
fn normalization_has_no_theta() {
    // Ō is generated by the idempotents; as a module over O it is spanned
    // by (1, 0) and (0, 1), which the functions 1 and f_2 realize up to the
    // conductor. Its value set is N^2 and both Θ vanish.
    let n2 = BoxedValueSet::orthant(vec![0, 0], vec![3, 3]);
    assert_eq!(n2.theta_gh(), vec![0, 0]);
}

#[test]
fn membership_is_stable_under_wider_truncation() {
    let (spec, data) = cusp_pair();
    for m in [ValuedModule::ring(&spec, &data).unwrap(), ValuedModule::kahler(&spec, &data).unwrap()] {
        m.values_certified(2, &cfg()).unwrap();
    }
}

#[test]
fn rational_fallback_agrees() {
    let (spec, data) = cusp_pair();
    let m = ValuedModule::kahler(&spec, &data).unwrap();
    let fast = m.values(&cfg()).unwrap();
    // Two different primes force the exact route.
    let slow = m.values(&EngineConfig { primes: [1_000_000_007, 998_244_353] }).unwrap();
    assert_eq!(fast, slow);
    let (lo, h) = m.table_over(&Rationals, m.gamma_ref()).unwrap();
    assert_eq!(ValueTable::from_ranks(lo, m.gamma_ref().to_vec(), h).unwrap(), fast);
}

#[test]
fn table_colength_matches_chain_distance() {
    let (spec, data) = spec_of(&[param(2, &[(3, 1)]), param(2, &[(3, 1), (5, 1)]), param(3, &[(4, 1)])]);
    let s = semigroup_values(&spec, &data, &cfg()).unwrap();
    let c = s.set().conductor().to_vec();
    let m = s.set().min_element().unwrap();
    assert_eq!(s.colength(&m, &c), s.set().chain_distance(&m, &c).unwrap());
    assert_eq!(s.set().chain_distance(&m, &c).unwrap(), data.delta());
    let theta = s.set().theta_gh();
    assert_eq!(s.set().gh_colength(&c, &theta).unwrap() as u64, data.delta());
    let module = ValuedModule::ring(&spec, &data).unwrap();
    assert_eq!(theta_by_kernels(&module, s.set(), &cfg()).unwrap(), theta);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pullback_is_linear(a in 0u32..3, b in 0u32..3, k in 4u32..8, c in -3i64..4) {
        let p = param(2, &[(3, 1), (k, c)]);
        let h = BivarPoly::from_i64_terms(&[(a, b, 1), (a + 1, b, c)]);
        let w = PullbackForm::dy().times(&BivarPoly::from_i64_terms(&[(1, 0, 2)]));
        let lhs = w.times(&h).pullback(&p, 20);
        let (x, y) = p.series(20);
        let rhs = poly_eval_series(&h, &x, &y).mul(&w.pullback(&p, 20));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kahler_matches_rank_oracle(k in 4u32..7, c in 1i64..3) {
        let (spec, data) = spec_of(&[param(2, &[(3, 1)]), param(2, &[(3, 1), (k, c)])]);
        let l = kahler_values(&spec, &data, &cfg()).unwrap();
        let hi: Vec<i64> = data.conductor.iter().map(|v| v + 1).collect();
        let oracle = oracle_value_set(&spec.branches, &kahler_gens(), &hi, hi[0] as u32);
        prop_assert!(l.set().same_set(&oracle));
    }
}
