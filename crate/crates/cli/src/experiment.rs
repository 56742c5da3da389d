//! Sampling pairs in an equisingularity class and recording their Tjurina
//! numbers.
//!
//! Pairs are drawn one after another from a single seeded stream and only
//! then evaluated in parallel, so the report does not depend on `--jobs`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use curvelab_core::branch::{spec_from_inputs, BranchInput, Parametrization};
use curvelab_core::family::Family;
use curvelab_core::invariants::{verify_all, ClosedFormula, InvariantReport, Status};

use crate::commands::{opt, resolve, to_json, verdict_lines, Outcome, Resolved, RunConfig};
use crate::error::CliError;
use crate::input::FamilyInput;
use crate::report::{all_pass, ExperimentReport, FamilyOut, Header, InstanceOut, PairKindOut, SummaryOut, VerdictOut};

/// Stream of the experiment generator, kept apart from the one used for
/// modular primes.
const PAIR_STREAM: u64 = 1;

enum Source {
    Random { target: u32, drawn: Result<(Parametrization, Parametrization), String> },
    Given([BranchInput; 2]),
}

struct Job {
    id: String,
    source: Source,
}

fn kind_of(rep: &InvariantReport) -> PairKindOut {
    match &rep.diagonal {
        Some(d) if d.diagonal => PairKindOut::Diagonal,
        Some(d) if d.equisingular && d.n_g_beta_bar_g == Some(d.intersection) => PairKindOut::Boundary,
        _ => PairKindOut::Other,
    }
}

fn kind_rank(k: &PairKindOut) -> u8 {
    match k {
        PairKindOut::Diagonal => 0,
        PairKindOut::Boundary => 1,
        PairKindOut::Other => 2,
    }
}

fn evaluate(job: &Job, opts: &Resolved) -> InstanceOut {
    let (source, target, inputs) = match &job.source {
        Source::Random { target, drawn } => match drawn {
            Ok((p, q)) => ("random", Some(*target), vec![BranchInput::Param(p.clone()), BranchInput::Param(q.clone())]),
            Err(e) => return blank(&job.id, "random", Some(*target), Some(format!("generation failed: {e}"))),
        },
        Source::Given(pair) => ("given", None, pair.to_vec()),
    };
    let run = || -> Result<(Vec<Parametrization>, InvariantReport), curvelab_core::Error> {
        let spec = spec_from_inputs(&inputs, opts.precision)?;
        let rep = verify_all(&spec, &opts.analysis)?;
        Ok((spec.branches, rep))
    };
    match run() {
        Ok((branches, rep)) => InstanceOut {
            id: job.id.clone(),
            source,
            target_intersection: target,
            kind: Some(kind_of(&rep)),
            intersection: Some(rep.intersections[0][1]),
            branch_conductor: Some(rep.branches[0].chars.conductor),
            milnor: Some(rep.milnor),
            tjurina_berger: Some(rep.tjurina_berger),
            tjurina_closed: match rep.tjurina_closed {
                ClosedFormula::Value(v) => Some(v),
                ClosedFormula::NotApplicable => None,
            },
            tjurina_oracle: rep.tjurina_oracle,
            checks_pass: Some(rep.all_pass()),
            branches: branches.iter().map(Into::into).collect(),
            error: None,
        },
        Err(e) => blank(&job.id, source, target, Some(e.to_string())),
    }
}

fn blank(id: &str, source: &'static str, target: Option<u32>, error: Option<String>) -> InstanceOut {
    InstanceOut {
        id: id.into(),
        source,
        target_intersection: target,
        kind: None,
        intersection: None,
        branch_conductor: None,
        milnor: None,
        tjurina_berger: None,
        tjurina_closed: None,
        tjurina_oracle: None,
        checks_pass: None,
        branches: Vec::new(),
        error,
    }
}

pub fn experiment(input: &FamilyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let opts = resolve(cfg, &input.options)?;
    let family = Family::from_semigroup(&input.semigroup)?;
    let conductor = family.chars().conductor;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(PAIR_STREAM);
    let mut jobs = Vec::new();
    for &target in &input.intersections {
        if family.pair_kind(target).is_none() {
            return Err(CliError::Invalid(format!(
                "intersection {target} is below n_g β̄_g = {} for semigroup {:?}",
                family.chars().n_g_beta_bar_g().unwrap_or(0),
                input.semigroup
            )));
        }
        for k in 0..input.samples {
            let drawn = family.random_pair(target, &mut rng).map_err(|e| e.to_string());
            jobs.push(Job { id: format!("I={target}#{}", k + 1), source: Source::Random { target, drawn } });
        }
    }
    for (k, [f, g]) in input.pairs.iter().enumerate() {
        let pair = [BranchInput::Equation(f.clone()), BranchInput::Equation(g.clone())];
        jobs.push(Job { id: format!("given#{}", k + 1), source: Source::Given(pair) });
    }

    let instances: Vec<InstanceOut> = jobs.par_iter().map(|j| evaluate(j, &opts)).collect();

    let mut groups: BTreeMap<(u32, u32, u8), Vec<&InstanceOut>> = BTreeMap::new();
    for inst in &instances {
        if let (Some(i), Some(c), Some(k)) = (inst.intersection, inst.branch_conductor, &inst.kind) {
            groups.entry((i, c, kind_rank(k))).or_default().push(inst);
        }
    }
    let mut summary = Vec::new();
    let mut verdicts = Vec::new();
    for ((i, c, rank), members) in &groups {
        let kind = members[0].kind.clone().expect("grouped instances have a kind");
        let taus: Vec<u64> = members.iter().filter_map(|m| m.tjurina_berger).collect();
        let (lo, hi) = (taus.iter().min().copied(), taus.iter().max().copied());
        let closed = 2 * *i as u64 + *c as u64 - 1;
        summary.push(SummaryOut {
            intersection: *i,
            branch_conductor: *c,
            kind: kind.clone(),
            instances: members.len(),
            tjurina_min: lo,
            tjurina_max: hi,
            two_i_plus_c_minus_1: closed,
            two_i_plus_c: closed + 1,
        });
        let checks = members.iter().all(|m| m.checks_pass == Some(true));
        match rank {
            0 => {
                let oracle_ok = members.iter().all(|m| m.tjurina_oracle.map_or(true, |o| Some(o) == m.tjurina_berger));
                let closed_ok =
                    members.iter().all(|m| m.tjurina_closed.is_some() && m.tjurina_closed == m.tjurina_berger);
                let ok = lo == hi && closed_ok && oracle_ok && checks;
                verdicts.push(VerdictOut::new(
                    format!("diagonal_I={i}_c={c}"),
                    if ok { Status::Pass } else { Status::Fail },
                    format!("{} instances, τ in [{}, {}], 2I + c - 1 = {closed}", members.len(), opt(lo), opt(hi)),
                ));
            }
            _ => {
                verdicts.push(VerdictOut::new(
                    format!("checks_I={i}_c={c}_{}", if *rank == 1 { "boundary" } else { "other" }),
                    if checks { Status::Pass } else { Status::Fail },
                    format!(
                        "{} instances, τ in [{}, {}], 2I + c = {} (observation only)",
                        members.len(),
                        opt(lo),
                        opt(hi),
                        closed + 1
                    ),
                ));
            }
        }
    }
    for inst in &instances {
        if let Some(e) = &inst.error {
            let status = if e.starts_with("generation failed") { Status::Skipped } else { Status::Fail };
            verdicts.push(VerdictOut::new(format!("instance_{}", inst.id), status, e.clone()));
        }
    }

    let report = ExperimentReport {
        header: Header::new("experiment"),
        seed: cfg.seed,
        family: FamilyOut {
            semigroup: input.semigroup.clone(),
            conductor,
            n_g_beta_bar_g: family.chars().n_g_beta_bar_g(),
        },
        all_pass: all_pass(&verdicts),
        instances,
        summary,
        verdicts,
    };

    let mut text = String::new();
    let _ = writeln!(text, "{:<12} {:>6} {:<9} {:>8} {:>8} {:>8}", "instance", "I", "kind", "τ", "closed", "oracle");
    for inst in &report.instances {
        let kind = match &inst.kind {
            Some(PairKindOut::Diagonal) => "diagonal",
            Some(PairKindOut::Boundary) => "boundary",
            Some(PairKindOut::Other) => "other",
            None => "error",
        };
        let _ = writeln!(
            text,
            "{:<12} {:>6} {:<9} {:>8} {:>8} {:>8}",
            inst.id,
            inst.intersection.map_or_else(|| "-".into(), |v| v.to_string()),
            kind,
            opt(inst.tjurina_berger),
            opt(inst.tjurina_closed),
            opt(inst.tjurina_oracle)
        );
    }
    verdict_lines(&mut text, &report.verdicts);
    Ok(Outcome { json: to_json(&report), text, all_pass: report.all_pass })
}
