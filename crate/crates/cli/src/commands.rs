//! The `analyze`, `semigroup` and `lambda` commands, plus the option
//! resolution shared with `experiment`.

use std::fmt::Write as _;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use curvelab_core::branch::{curve_data, spec_from_inputs, CurveSpec, DEFAULT_TRUNCATION};
use curvelab_core::exactalg::field::{is_prime_u64, prime_pair};
use curvelab_core::invariants::{verify_all, AnalysisOptions, ClosedFormula, Status};
use curvelab_core::valmod::{semigroup_values, theta_by_kernels, EngineConfig, ValuedModule, DEFAULT_PRIMES};

use crate::error::CliError;
use crate::input::{CurveInput, FileOptions, Switch};
use crate::report::{
    all_pass, gaps, AnalyzeReport, CharOut, Header, LambdaBranchOut, LambdaReport, SemigroupBranchOut, SemigroupReport,
    VerdictOut,
};

/// Settings from the command line and the environment.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub seed: u64,
    pub truncation: Option<u32>,
    pub oracle: Option<Switch>,
    /// Size of randomly drawn modular primes, from `CURVELAB_PRIME_BITS`.
    pub prime_bits: Option<u32>,
}

/// Options after merging the command line, the input file and defaults
/// (in that order of precedence).
#[derive(Clone, Debug)]
pub struct Resolved {
    pub analysis: AnalysisOptions,
    /// Fixed expansion order for equations; `None` is adaptive.
    pub precision: Option<u32>,
}

pub fn resolve(cfg: &RunConfig, file: &FileOptions) -> Result<Resolved, CliError> {
    let primes = match (cfg.prime_bits, file.modular_primes) {
        (Some(bits), _) => {
            if !(8..=62).contains(&bits) {
                return Err(CliError::Invalid(format!("CURVELAB_PRIME_BITS must be within 8..=62, got {bits}")));
            }
            prime_pair(bits, &mut ChaCha8Rng::seed_from_u64(cfg.seed))
        }
        (None, Some(ps)) => {
            for p in ps {
                if !(3..1u64 << 63).contains(&p) || !is_prime_u64(p) {
                    return Err(CliError::Invalid(format!("modular prime {p} must be an odd prime below 2^63")));
                }
            }
            if ps[0] == ps[1] {
                return Err(CliError::Invalid("the two modular primes must differ".into()));
            }
            ps
        }
        (None, None) => DEFAULT_PRIMES,
    };
    let oracle = cfg.oracle.or(file.oracle).unwrap_or(Switch::On).is_on();
    let precision = cfg.truncation.or(file.truncation_cap);
    let analysis = AnalysisOptions {
        engine: EngineConfig { primes },
        oracle,
        oracle_cap: None,
        truncation: precision.unwrap_or(DEFAULT_TRUNCATION),
    };
    Ok(Resolved { analysis, precision })
}

/// A finished command: its JSON and text renderings and whether every
/// verdict passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub all_pass: bool,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn build(input: &CurveInput, opts: &Resolved) -> Result<CurveSpec, CliError> {
    Ok(spec_from_inputs(&input.branches, opts.precision)?)
}

pub(crate) fn verdict_lines(out: &mut String, verdicts: &[VerdictOut]) {
    out.push_str("checks:\n");
    for v in verdicts {
        let status = match v.status {
            crate::report::StatusOut::Pass => "pass",
            crate::report::StatusOut::Fail => "FAIL",
            crate::report::StatusOut::Skipped => "skip",
        };
        let _ = writeln!(out, "  {status:<5} {:<24} {}", v.name, v.detail);
    }
    let _ = writeln!(out, "result: {}", if all_pass(verdicts) { "all checks pass" } else { "some checks FAILED" });
}

pub(crate) fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn analyze(input: &CurveInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let opts = resolve(cfg, &input.options)?;
    let spec = build(input, &opts)?;
    let rep = verify_all(&spec, &opts.analysis)?;
    let equations: Vec<Option<String>> =
        spec.branch_equations.iter().map(|e| e.as_ref().map(|f| f.to_string())).collect();
    let report = AnalyzeReport::new(&rep, &spec.branches, &equations);

    let mut text = String::new();
    for (i, b) in rep.branches.iter().enumerate() {
        let _ = writeln!(
            text,
            "branch {}: semigroup {:?}, c = {}, μ = {}, τ = {} (oracle {})",
            i + 1,
            b.chars.beta_bar,
            b.chars.conductor,
            b.milnor,
            b.tjurina_berger,
            opt(b.tjurina_oracle)
        );
    }
    for i in 0..spec.r() {
        for j in i + 1..spec.r() {
            let _ = writeln!(text, "I({}, {}) = {}", i + 1, j + 1, rep.intersections[i][j]);
        }
    }
    let closed = match rep.tjurina_closed {
        ClosedFormula::Value(v) => v.to_string(),
        ClosedFormula::NotApplicable => "n/a".into(),
    };
    let _ = writeln!(text, "μ = {} (oracle {}), δ = {}", rep.milnor, opt(rep.milnor_oracle), rep.delta);
    let _ = writeln!(text, "τ = {} (closed formula {closed}, oracle {})", rep.tjurina_berger, opt(rep.tjurina_oracle));
    let _ =
        writeln!(text, "c(S) = {:?}, c(Λ) = {:?}, Θ = {:?}", rep.semigroup_conductor, rep.kahler_conductor, rep.theta);
    verdict_lines(&mut text, &report.verdicts);
    Ok(Outcome { json: to_json(&report), text, all_pass: report.all_pass })
}

pub fn semigroup(input: &CurveInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let opts = resolve(cfg, &input.options)?;
    let spec = build(input, &opts)?;
    let data = curve_data(&spec, opts.analysis.truncation)?;
    let s = semigroup_values(&spec, &data, &opts.analysis.engine)?.into_set();
    let chain = s.chain_distance(&vec![0; spec.r()], &data.conductor)?;
    let verdicts = vec![VerdictOut::new(
        "delta_two_way",
        if chain == data.delta() { Status::Pass } else { Status::Fail },
        format!("{} vs {chain}", data.delta()),
    )];
    let report = SemigroupReport {
        header: Header::new("semigroup"),
        branches: spec
            .branches
            .iter()
            .zip(&data.chars)
            .map(|(p, c)| SemigroupBranchOut { parametrization: p.into(), chars: CharOut::from(c) })
            .collect(),
        intersections: data.intersections.clone(),
        conductor: data.conductor.clone(),
        delta: data.delta(),
        milnor: data.milnor(),
        semigroup: (&s).into(),
        all_pass: all_pass(&verdicts),
        verdicts,
    };
    let mut text = String::new();
    for (i, c) in data.chars.iter().enumerate() {
        let _ = writeln!(text, "branch {}: semigroup {:?}, c = {}", i + 1, c.beta_bar, c.conductor);
    }
    let _ = writeln!(text, "c(S) = {:?}, δ = {}, μ = {}", data.conductor, data.delta(), data.milnor());
    verdict_lines(&mut text, &report.verdicts);
    Ok(Outcome { json: to_json(&report), text, all_pass: report.all_pass })
}

pub fn lambda(input: &CurveInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let opts = resolve(cfg, &input.options)?;
    let engine = &opts.analysis.engine;
    let spec = build(input, &opts)?;
    let data = curve_data(&spec, opts.analysis.truncation)?;
    let module = ValuedModule::kahler(&spec, &data)?;
    let lambda = module.values(engine)?.into_set();
    let s = semigroup_values(&spec, &data, engine)?.into_set();
    let theta = theta_by_kernels(&module, &lambda, engine)?;
    let theta_maximals = lambda.theta_gh();

    let mut branches = Vec::with_capacity(spec.r());
    for p in &spec.branches {
        let single = CurveSpec::new(vec![p.clone()]);
        let d = curve_data(&single, opts.analysis.truncation)?;
        let l = ValuedModule::kahler(&single, &d)?.values(engine)?.into_set();
        branches.push(LambdaBranchOut { kahler_conductor: l.conductor()[0], kahler_gaps: gaps(&l) });
    }

    let zero = vec![0; spec.r()];
    let missing: Vec<Vec<i64>> = s.members().filter(|a| *a != zero && !lambda.contains(a)).take(5).collect();
    let verdicts = vec![
        VerdictOut::new(
            "theta_two_way",
            if theta == theta_maximals { Status::Pass } else { Status::Fail },
            format!("{theta:?} vs {theta_maximals:?}"),
        ),
        VerdictOut::new(
            "semigroup_in_kahler",
            if missing.is_empty() { Status::Pass } else { Status::Fail },
            if missing.is_empty() { String::new() } else { format!("missing {missing:?}") },
        ),
    ];
    let report = LambdaReport {
        header: Header::new("lambda"),
        branches,
        semigroup_conductor: data.conductor.clone(),
        kahler_conductor: lambda.conductor().to_vec(),
        theta,
        theta_maximals,
        kahler: (&lambda).into(),
        all_pass: all_pass(&verdicts),
        verdicts,
    };
    let mut text = String::new();
    for (i, b) in report.branches.iter().enumerate() {
        let _ = writeln!(text, "branch {}: c(Λ) = {}, gaps {:?}", i + 1, b.kahler_conductor, b.kahler_gaps);
    }
    let _ = writeln!(text, "c(Λ) = {:?}, Θ = {:?}", report.kahler_conductor, report.theta);
    verdict_lines(&mut text, &report.verdicts);
    Ok(Outcome { json: to_json(&report), text, all_pass: report.all_pass })
}
