//! Randomized checks of the relations between invariants, on branches and
//! pairs drawn from several equisingularity classes.

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curvelab_core::branch::{implicitize, CurveSpec, Parametrization};
use curvelab_core::family::{Family, PairKind};
use curvelab_core::invariants::{tjurina_oracle, verify_all, AnalysisOptions, ClosedFormula, InvariantReport, Status};

const CLASSES: &[&[u32]] = &[&[2, 3], &[2, 5], &[3, 4], &[3, 5], &[4, 6, 13]];

/// Gaps of the numerical semigroup generated by `gens`, by direct
/// enumeration of sums.
fn gap_count(gens: &[u32]) -> u64 {
    let bound = (gens.iter().max().unwrap() * gens.iter().max().unwrap() * 2) as usize;
    let mut member = vec![false; bound + 1];
    member[0] = true;
    for v in 1..=bound {
        member[v] = gens.iter().any(|&g| v >= g as usize && member[v - g as usize]);
    }
    member.iter().filter(|m| !**m).count() as u64
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() }
}

fn passes(rep: &InvariantReport, name: &str) -> bool {
    rep.verdict(name).is_some_and(|v| v.status == Status::Pass)
}

fn class(i: usize) -> Family {
    Family::from_semigroup(CLASSES[i % CLASSES.len()]).unwrap()
}

fn diagonal_pair(class_index: usize, offset: u32, seed: u64) -> (Family, u32, Parametrization, Parametrization) {
    // The three classes of genus one or two with a boundary above zero.
    let fam = class([0, 2, 4][class_index % 3]);
    let i = fam.chars().n_g_beta_bar_g().unwrap() + 1 + offset;
    assert_eq!(fam.pair_kind(i), Some(PairKind::Diagonal));
    let (p, q) = fam.random_pair(i, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    (fam, i, p, q)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn jacobian_relation_holds(seed in any::<u64>(), r in 1usize..=3, pick in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Branches from the small classes keep r = 3 cheap.
        let branches: Vec<Parametrization> = (0..r).map(|k| class((pick + k) % 4).random_branch(&mut rng)).collect();
        prop_assume!(branches.windows(2).all(|w| w[0] != w[1]));
        let rep = verify_all(&CurveSpec::new(branches), &AnalysisOptions { oracle: false, ..Default::default() }).unwrap();
        prop_assert!(passes(&rep, "jacobian_relation"), "{:?}", rep.verdict("jacobian_relation"));
    }

    #[test]
    fn single_branch_invariants(seed in any::<u64>(), pick in 0usize..5) {
        let fam = class(pick);
        let p = fam.random_branch(&mut ChaCha8Rng::seed_from_u64(seed));
        let rep = verify_all(&CurveSpec::new(vec![p.clone()]), &AnalysisOptions::default()).unwrap();
        let gaps = gap_count(CLASSES[pick]);
        prop_assert_eq!(rep.delta, gaps);
        prop_assert_eq!(rep.milnor, 2 * gaps);
        prop_assert_eq!(rep.milnor_oracle, Some(2 * gaps));
        let tau = tjurina_oracle(&implicitize(&p).unwrap(), &AnalysisOptions::default().oracle_config()).unwrap();
        prop_assert_eq!(rep.branches[0].tjurina_berger, tau);
        prop_assert_eq!(rep.tjurina_berger, tau);
        prop_assert!(passes(&rep, "colength_two_way"));
        prop_assert!(passes(&rep, "delta_two_way"));
        prop_assert!(3 * rep.milnor < 4 * rep.tjurina_berger || rep.milnor == 0);
    }

    #[test]
    fn diagonal_pairs_match_closed_forms(seed in any::<u64>(), which in 0usize..3, offset in 0u32..4) {
        let (fam, i, p, q) = diagonal_pair(which, offset, seed);
        let c = fam.chars().conductor as u64;
        let rep = verify_all(&CurveSpec::new(vec![p, q]), &AnalysisOptions::default()).unwrap();
        let i = i as u64;
        prop_assert_eq!(rep.intersections[0][1] as u64, i);
        prop_assert_eq!(rep.milnor, 2 * c + 2 * i - 1);
        prop_assert_eq!(rep.tjurina_closed, ClosedFormula::Value(2 * i + c - 1));
        prop_assert_eq!(rep.tjurina_berger, 2 * i + c - 1);
        prop_assert_eq!(rep.tjurina_oracle, Some(2 * i + c - 1));
        let b0 = fam.chars().beta[0] as i64;
        prop_assert_eq!(rep.kahler_conductor.clone(), vec![i as i64 - b0 + 1; 2]);
        for name in ["kahler_conductor", "log_values", "ratio_identity", "ratio_bound", "colength_two_way", "theta_closed"] {
            prop_assert!(passes(&rep, name), "{} {:?}", name, rep.verdict(name));
        }
        prop_assert_eq!(4 * rep.tjurina_berger as i64 - 3 * rep.milnor as i64, 2 * i as i64 - 2 * c as i64 - 1);
    }

    #[test]
    fn every_check_passes_on_pairs(seed in any::<u64>(), pick in 0usize..4) {
        let fam = class(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (fam.random_branch(&mut rng), fam.random_branch(&mut rng));
        prop_assume!(p != q);
        let rep = verify_all(&CurveSpec::new(vec![p, q]), &AnalysisOptions::default()).unwrap();
        let failed: Vec<_> = rep.verdicts.iter().filter(|v| v.status == Status::Fail).collect();
        prop_assert!(failed.is_empty(), "{:?}", failed);
        prop_assert_eq!(rep.milnor_oracle, Some(rep.milnor));
        prop_assert_eq!(rep.milnor, 2 * rep.delta - 1);
    }
}
