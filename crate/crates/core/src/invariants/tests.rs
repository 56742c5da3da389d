use super::*;
use crate::branch::Parametrization;
use crate::branch::{spec_from_equations, spec_from_inputs, BranchInput};
use crate::exactalg::{parse_rat, Rat};
use crate::testutil::{param, poly};

fn opts() -> AnalysisOptions {
    AnalysisOptions::default()
}

fn cusp_pair() -> CurveSpec {
    CurveSpec::new(vec![param(2, &[(3, 1)]), param(2, &[(3, 1), (4, 1)])])
}

fn failed(report: &InvariantReport) -> Vec<&Verdict> {
    report.verdicts.iter().filter(|v| v.status == Status::Fail).collect()
}

#[test]
fn cusp() {
    let report = verify_all(&CurveSpec::new(vec![param(2, &[(3, 1)])]), &opts()).unwrap();
    assert_eq!((report.milnor, report.delta, report.tjurina_berger), (2, 1, 2));
    assert_eq!(report.tjurina_oracle, Some(2));
    assert_eq!(report.tjurina_closed, ClosedFormula::NotApplicable);
    assert_eq!(report.theta, vec![0]);
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn node() {
    let spec = CurveSpec::new(vec![param(1, &[]), param(1, &[]).swapped()]);
    let report = verify_all(&spec, &opts()).unwrap();
    assert_eq!((report.milnor, report.tjurina_berger), (1, 1));
    // Smooth branches are never diagonal.
    assert_eq!(report.tjurina_closed, ClosedFormula::NotApplicable);
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn diagonal_cusp_pair() {
    let report = verify_all(&cusp_pair(), &opts()).unwrap();
    assert_eq!(report.intersections[0][1], 7);
    assert_eq!((report.milnor, report.delta), (17, 9));
    assert_eq!(report.tjurina_berger, 15);
    assert_eq!(report.tjurina_closed, ClosedFormula::Value(15));
    assert_eq!(report.tjurina_oracle, Some(15));
    assert_eq!(report.milnor_oracle, Some(17));
    assert_eq!(report.theta, vec![0, 4]);
    assert_eq!(report.kahler_conductor, vec![6, 6]);
    for name in
        ["ratio_identity", "kahler_conductor", "log_values", "theta_closed", "diagonal_points", "jacobian_relation"]
    {
        assert_eq!(report.verdict(name).unwrap().status, Status::Pass, "{name}");
    }
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn delta_cross_check() {
    let spec = cusp_pair();
    let data = curve_data(&spec, 64).unwrap();
    let s = semigroup_values(&spec, &data, &EngineConfig::default()).unwrap();
    assert_eq!(delta_invariant(&data, s.set()), 9);
}

#[test]
fn ratio_arithmetic() {
    let check = ratio_check(17, 15, Some((7, 2)));
    assert!(check.bound);
    assert_eq!(check.identity, Some(true));
    // The quasihomogeneous case sits well inside the bound.
    assert!(ratio_check(2, 2, None).bound);
    assert!(!ratio_check(4, 3, None).bound);
}

#[test]
fn oracle_can_be_disabled() {
    let o = AnalysisOptions { oracle: false, ..opts() };
    let report = verify_all(&cusp_pair(), &o).unwrap();
    assert_eq!(report.tjurina_oracle, None);
    assert_eq!(report.verdict("berger_vs_oracle").unwrap().status, Status::Skipped);
}

#[test]
fn boundary_pair_is_not_closed_form() {
    // I = 6 = n_1 β̄_1 for two cusps.
    let spec = CurveSpec::new(vec![param(2, &[(3, 1)]), param(2, &[(3, 2)])]);
    let report = verify_all(&spec, &opts()).unwrap();
    assert_eq!(report.intersections[0][1], 6);
    assert_eq!(report.tjurina_closed, ClosedFormula::NotApplicable);
    assert_eq!(report.tjurina_oracle, Some(report.tjurina_berger));
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn six_nine_nineteen_pair() {
    let r = |s: &str| -> Rat { parse_rat(s).unwrap() };
    let f = Parametrization::puiseux(6, &[(9, r("1")), (10, r("1"))]).unwrap();
    let g = Parametrization::puiseux(6, &[(9, r("1")), (10, r("1")), (11, r("-1/2"))]).unwrap();
    let o = AnalysisOptions { oracle: false, ..opts() };
    let report = verify_all(&CurveSpec::new(vec![f, g]), &o).unwrap();
    assert_eq!(report.branches[0].chars.conductor, 42);
    assert_eq!(report.intersections[0][1], 58);
    assert_eq!(report.milnor, 199);
    assert_eq!(report.tjurina_berger, 157);
    assert_eq!(report.tjurina_closed, ClosedFormula::Value(157));
    assert_eq!(4 * 157 - 3 * 199, 2 * 58 - 2 * 42 - 1);
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn single_branch_berger() {
    // (t^4, t^6 + t^7): not quasihomogeneous, so τ < μ = 16.
    let p = param(4, &[(6, 1), (7, 1)]);
    let report = verify_all(&CurveSpec::new(vec![p]), &opts()).unwrap();
    let b = &report.branches[0];
    assert_eq!(b.milnor, 16);
    assert_eq!(Some(b.tjurina_berger), b.tjurina_oracle);
    assert!(b.tjurina_berger < 16);
    assert_eq!(report.tjurina_berger, b.tjurina_berger);
}

#[test]
fn equations_with_adaptive_precision() {
    // y^4 - x^5 + x^3 y^2 and a smooth branch through it.
    let f = poly(&[(0, 4, "1"), (5, 0, "-1"), (3, 2, "1")]);
    let l = poly(&[(0, 1, "1"), (1, 0, "-3/2")]);
    let spec = spec_from_equations(&[f.clone(), l.clone()], None).unwrap();
    assert_eq!(spec.r(), 2);
    assert!(spec.branch_equations.iter().all(Option::is_some));
    let report = verify_all(&spec, &opts()).unwrap();
    assert_eq!(report.branches[0].tjurina_oracle, Some(11));
    assert_eq!(report.intersections[0][1], 4);
    assert_eq!(report.tjurina_oracle, Some(report.tjurina_berger));
    assert!(report.all_pass(), "{:?}", failed(&report));
}

#[test]
fn repeated_equation_is_rejected() {
    let f = poly(&[(0, 2, "1"), (3, 0, "-1")]);
    assert_eq!(spec_from_equations(&[f.clone(), f], None).unwrap_err(), Error::BranchesNotDistinct);
}

#[test]
fn node_from_one_equation() {
    let spec = spec_from_equations(&[poly(&[(0, 2, "1"), (2, 0, "-1"), (3, 0, "-1")])], None).unwrap();
    assert_eq!(spec.r(), 2);
    assert!(spec.branch_equations.iter().all(Option::is_none));
    let report = verify_all(&spec, &opts()).unwrap();
    assert_eq!((report.milnor, report.tjurina_berger, report.tjurina_oracle), (1, 1, Some(1)));
}

#[test]
fn parametrized_and_implicit_branches_together() {
    let cusp = param(2, &[(3, 1)]);
    let other = poly(&[(0, 2, "1"), (2, 1, "-2"), (4, 0, "1"), (3, 0, "-1")]);
    let spec = spec_from_inputs(&[BranchInput::Param(cusp.clone()), BranchInput::Equation(other)], None).unwrap();
    let report = verify_all(&spec, &opts()).unwrap();
    assert_eq!(report.tjurina_berger, 15);
    assert_eq!(report.tjurina_oracle, Some(15));

    let same = poly(&[(0, 2, "1"), (3, 0, "-1")]);
    let dup = spec_from_inputs(&[BranchInput::Param(cusp), BranchInput::Equation(same)], None);
    assert_eq!(dup.unwrap_err(), Error::BranchesNotDistinct);
}
