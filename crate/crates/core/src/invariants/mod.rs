//! Curve invariants and the checks tying them together.
//!
//! `μ` and `δ` come from characteristic data and intersection numbers.
//! `τ` has up to three independent routes: `μ - d(Λ̄ ∖ S)` from the value
//! sets, `2I + c - 1` for diagonal pairs, and the colength of
//! `(f, f_x, f_y)`. [`verify_all`] computes everything that applies and
//! records each cross-check as a [`Verdict`].

pub mod oracle;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use oracle::{colength, intersection_oracle, milnor_oracle, newton_weights, tjurina_oracle, OracleConfig};

use crate::branch::{
    branch_equation, curve_data, curve_equation, diagonal_from_data, CharData, CurveData, CurveSpec, DiagonalCheck,
};
use crate::exactalg::BivarPoly;
use crate::valmod::{
    jacobian_values, kahler_values, semigroup_values, shifted_kahler, theta_by_kernels, EngineConfig, ValuedModule,
};
use crate::valueset::{distance_diff, BoxedValueSet};
use crate::Error;

pub use crate::branch::DEFAULT_TRUNCATION;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub engine: EngineConfig,
    /// Run the colength oracles when an equation is available.
    pub oracle: bool,
    pub oracle_cap: Option<u32>,
    pub truncation: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            engine: EngineConfig::default(),
            oracle: true,
            oracle_cap: None,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

impl AnalysisOptions {
    pub fn oracle_config(&self) -> OracleConfig {
        OracleConfig { primes: self.engine.primes, cap: self.oracle_cap }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormula {
    Value(u64),
    /// Not a diagonal pair (including the boundary `I = n_g β̄_g`).
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    fn check(name: &'static str, ok: bool, detail: String) -> Self {
        Verdict { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Verdict { name, status: Status::Skipped, detail: why.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub chars: CharData,
    pub milnor: u64,
    pub delta: u64,
    /// `μ_i - #(Λ_i ∖ S_i)`.
    pub tjurina_berger: u64,
    pub tjurina_oracle: Option<u64>,
    pub kahler: BoxedValueSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub branches: Vec<BranchReport>,
    pub intersections: Vec<Vec<u32>>,
    pub milnor: u64,
    pub milnor_oracle: Option<u64>,
    pub delta: u64,
    pub semigroup_conductor: Vec<i64>,
    pub tjurina_berger: u64,
    pub tjurina_closed: ClosedFormula,
    pub tjurina_oracle: Option<u64>,
    /// `Θ_1..Θ_r` of `Λ`, through kernels.
    pub theta: Vec<u64>,
    pub kahler_conductor: Vec<i64>,
    /// Present for two-branch curves.
    pub diagonal: Option<DiagonalCheck>,
    pub semigroup: BoxedValueSet,
    pub kahler: BoxedValueSet,
    pub verdicts: Vec<Verdict>,
}

impl InvariantReport {
    /// No verdict failed.
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

pub fn milnor(data: &CurveData) -> u64 {
    data.milnor()
}

/// `δ` from the branch data, checked against `d_S(0, c_S)`.
pub fn delta_invariant(data: &CurveData, s: &BoxedValueSet) -> u64 {
    let chain = s.chain_distance(&vec![0; data.r()], &data.conductor).expect("0 and c_S belong to S");
    assert_eq!(data.delta(), chain, "δ from the formula disagrees with the chain length in S");
    chain
}

/// `μ - d(Λ ∪ {0} ∖ S)`.
pub fn tjurina_berger(data: &CurveData, s: &BoxedValueSet, lambda: &BoxedValueSet) -> Result<u64, Error> {
    let lbar = lambda.with_point(&vec![0; data.r()]);
    Ok(data.milnor() - distance_diff(&lbar, s)?)
}

/// `2I + c - 1` for diagonal pairs.
pub fn tjurina_closed(data: &CurveData) -> ClosedFormula {
    if data.r() != 2 {
        return ClosedFormula::NotApplicable;
    }
    let i = data.intersections[0][1];
    if diagonal_from_data(&data.chars[0], &data.chars[1], i).diagonal {
        ClosedFormula::Value(2 * i as u64 + data.chars[0].conductor as u64 - 1)
    } else {
        ClosedFormula::NotApplicable
    }
}

/// `Θ_2 = I - β_0 + 1 - #(N ∖ Λ_2) - #{λ > β_0 : λ ∉ Λ_1}` for a diagonal
/// pair, with `Λ_i` the Kähler value sets of the branches.
pub fn theta2_closed(data: &CurveData, lambda1: &BoxedValueSet, lambda2: &BoxedValueSet) -> i64 {
    let i = data.intersections[0][1] as i64;
    let b0 = data.chars[0].multiplicity() as i64;
    let gaps2 = (0..lambda2.conductor()[0]).filter(|&v| !lambda2.contains(&[v])).count() as i64;
    let gaps1 = (b0 + 1..lambda1.conductor()[0]).filter(|&v| !lambda1.contains(&[v])).count() as i64;
    i - b0 + 1 - gaps2 - gaps1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    /// `μ/τ < 4/3`.
    pub bound: bool,
    /// `4τ - 3μ = 2I - 2c - 1`, for diagonal pairs.
    pub identity: Option<bool>,
}

/// `diagonal` carries `(I, c)` of a diagonal pair.
pub fn ratio_check(mu: u64, tau: u64, diagonal: Option<(u64, u64)>) -> RatioCheck {
    let identity = diagonal.map(|(i, c)| 4 * tau as i64 - 3 * mu as i64 == 2 * i as i64 - 2 * c as i64 - 1);
    RatioCheck { bound: 3 * mu < 4 * tau, identity }
}

/// `μ - #(Λ ∖ S)` for a single branch.
pub fn branch_tjurina_berger(mu: u64, s: &BoxedValueSet, lambda: &BoxedValueSet) -> u64 {
    let top = s.conductor()[0].max(lambda.conductor()[0]);
    let extra = (0..top).filter(|&v| lambda.contains(&[v]) && !s.contains(&[v])).count() as u64;
    mu - extra
}

fn branch_report(spec: &CurveSpec, i: usize, opts: &AnalysisOptions) -> Result<BranchReport, Error> {
    let mut single = CurveSpec::new(vec![spec.branches[i].clone()]);
    single.branch_equations[0] = spec.branch_equations[i].clone();
    let data = curve_data(&single, opts.truncation)?;
    let s = semigroup_values(&single, &data, &opts.engine)?.into_set();
    let lambda = kahler_values(&single, &data, &opts.engine)?.into_set();
    let mu = data.milnor();
    let tjurina_oracle = match (opts.oracle, branch_equation(spec, i)) {
        (true, Ok(f)) => Some(tjurina_oracle(&f, &opts.oracle_config())?),
        _ => None,
    };
    Ok(BranchReport {
        chars: data.chars[0].clone(),
        milnor: mu,
        delta: data.delta(),
        tjurina_berger: branch_tjurina_berger(mu, &s, &lambda),
        tjurina_oracle,
        kahler: lambda,
    })
}

fn equal_verdict(name: &'static str, a: u64, b: Option<u64>, what: &str) -> Verdict {
    match b {
        Some(b) => Verdict::check(name, a == b, format!("{a} vs {b}")),
        None => Verdict::skipped(name, what),
    }
}

/// Every invariant that applies to the curve, with one verdict per check.
/// Failed checks are reported, not raised.
pub fn verify_all(spec: &CurveSpec, opts: &AnalysisOptions) -> Result<InvariantReport, Error> {
    let cfg = &opts.engine;
    let r = spec.r();
    let data = curve_data(spec, opts.truncation)?;
    let branches = (0..r).map(|i| branch_report(spec, i, opts)).collect::<Result<Vec<_>, _>>()?;
    let s_table = semigroup_values(spec, &data, cfg)?;
    let kahler_module = ValuedModule::kahler(spec, &data)?;
    let l_table = kahler_module.values(cfg)?;
    let (s, lambda) = (s_table.set(), l_table.set());
    let mu = data.milnor();
    let tau = tjurina_berger(&data, s, lambda)?;
    let closed = tjurina_closed(&data);
    let f: Option<BivarPoly> = curve_equation(spec).ok();
    let ocfg = opts.oracle_config();
    let (milnor_o, tjurina_o) = match (&f, opts.oracle) {
        (Some(f), true) => (Some(milnor_oracle(f, &ocfg)?), Some(tjurina_oracle(f, &ocfg)?)),
        _ => (None, None),
    };
    let no_oracle = if opts.oracle { "no equation available" } else { "oracle disabled" };
    let mut verdicts = Vec::new();

    verdicts.push(equal_verdict("milnor_two_way", mu, milnor_o, no_oracle));
    let zero = vec![0; r];
    let chain = s.chain_distance(&zero, &data.conductor)?;
    verdicts.push(Verdict::check("delta_two_way", data.delta() == chain, format!("{} vs {chain}", data.delta())));
    verdicts.push(equal_verdict("berger_vs_oracle", tau, tjurina_o, no_oracle));
    verdicts.push(match closed {
        ClosedFormula::Value(c) => Verdict::check("closed_vs_berger", c == tau, format!("{c} vs {tau}")),
        ClosedFormula::NotApplicable => Verdict::skipped("closed_vs_berger", "not a diagonal pair"),
    });
    verdicts.push(match &f {
        Some(f) => {
            let j = jacobian_values(spec, &data, f, cfg)?;
            let shifted = shifted_kahler(lambda, &data.conductor);
            let diff = j.set().first_difference(&shifted);
            Verdict::check(
                "jacobian_relation",
                diff.is_none(),
                diff.map_or_else(String::new, |p| format!("differ at {p:?}")),
            )
        }
        None => Verdict::skipped("jacobian_relation", "no equation available"),
    });
    verdicts.push(Verdict::check(
        "branch_berger_vs_oracle",
        branches.iter().all(|b| b.tjurina_oracle.map_or(true, |t| t == b.tjurina_berger)),
        branches.iter().map(|b| format!("{}/{:?}", b.tjurina_berger, b.tjurina_oracle)).collect::<Vec<_>>().join(" "),
    ));

    let theta = theta_by_kernels(&kahler_module, lambda, cfg)?;
    let theta_gh = lambda.theta_gh();
    verdicts.push(Verdict::check("theta_two_way", theta == theta_gh, format!("{theta:?} vs {theta_gh:?}")));

    let mut colength_ok = true;
    let mut notes = Vec::new();
    for (name, table) in [("S", &s_table), ("Λ", &l_table)] {
        let set = table.set();
        let c = set.conductor().to_vec();
        let th = if name == "S" { set.theta_gh() } else { theta.clone() };
        let gh = set.gh_colength(&c, &th)?;
        let ch = set.chain_colength(&c)?;
        let tb = table.colength(&set.min_element().expect("nonempty value set"), &c);
        colength_ok &= gh == ch as i64 && ch == tb;
        notes.push(format!("{name}: {gh}/{ch}/{tb}"));
    }
    verdicts.push(Verdict::check("colength_two_way", colength_ok, notes.join(", ")));

    let ratio = ratio_check(mu, tau, None);
    verdicts.push(Verdict::check("ratio_bound", ratio.bound, format!("μ = {mu}, τ = {tau}")));

    let diagonal = (r == 2).then(|| diagonal_from_data(&data.chars[0], &data.chars[1], data.intersections[0][1]));
    if let Some(diag) = diagonal.as_ref().filter(|d| d.diagonal) {
        let i = diag.intersection as i64;
        let c = data.chars[0].conductor as i64;
        let b0 = data.chars[0].multiplicity() as i64;
        let ident = ratio_check(mu, tau, Some((i as u64, c as u64))).identity == Some(true);
        verdicts.push(Verdict::check("ratio_identity", ident, format!("4τ - 3μ = {}", 4 * tau as i64 - 3 * mu as i64)));

        let expect = vec![i - b0 + 1; 2];
        verdicts.push(Verdict::check(
            "kahler_conductor",
            lambda.conductor() == expect.as_slice(),
            format!("{:?} vs {expect:?}", lambda.conductor()),
        ));

        let kernel = kahler_module.kernel_values(&[0], cfg)?.into_set();
        let lambda1 = &branches[0].kahler;
        let bad: Vec<i64> =
            (i - b0 - c..=i + c).filter(|&v| kernel.contains(&[v]) != !lambda1.contains(&[i - v])).collect();
        verdicts.push(Verdict::check("log_values", bad.is_empty(), format!("mismatches at {bad:?}")));

        let closed_theta = theta2_closed(&data, lambda1, &branches[1].kahler);
        verdicts.push(Verdict::check(
            "theta_closed",
            closed_theta == theta[1] as i64,
            format!("{closed_theta} vs {}", theta[1]),
        ));

        let top = lambda.conductor()[0];
        let s1 = branches[0].chars.semigroup_table(top as u32);
        let missing: Vec<i64> = (1..=top).filter(|&a| s1[a as usize] && !lambda.contains(&[a, a])).collect();
        verdicts.push(Verdict::check("diagonal_points", missing.is_empty(), format!("missing {missing:?}")));
    } else {
        for name in ["ratio_identity", "kahler_conductor", "log_values", "theta_closed", "diagonal_points"] {
            verdicts.push(Verdict::skipped(name, "not a diagonal pair"));
        }
    }

    Ok(InvariantReport {
        milnor: mu,
        milnor_oracle: milnor_o,
        delta: data.delta(),
        semigroup_conductor: data.conductor.clone(),
        tjurina_berger: tau,
        tjurina_closed: closed,
        tjurina_oracle: tjurina_o,
        theta,
        kahler_conductor: lambda.conductor().to_vec(),
        diagonal,
        semigroup: s.clone(),
        kahler: lambda.clone(),
        intersections: data.intersections,
        branches,
        verdicts,
    })
}

#[cfg(test)]
mod tests;
