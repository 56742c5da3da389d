//! Serializable reports. Field order is declaration order and no maps are
//! used, so identical inputs give byte-identical JSON.

use serde::Serialize;

use curvelab_core::branch::{CharData, DiagonalCheck, Parametrization};
use curvelab_core::exactalg::{Rat, UniPoly};
use curvelab_core::invariants::{ClosedFormula, InvariantReport, Status, Verdict};
use curvelab_core::valueset::BoxedValueSet;

pub const SCHEMA: &str = "curvelab.report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub schema: &'static str,
    pub schema_version: u32,
    pub command: &'static str,
}

impl Header {
    pub fn new(command: &'static str) -> Self {
        Header { schema: SCHEMA, schema_version: SCHEMA_VERSION, command }
    }
}

/// `[[exponent, "coefficient"], ...]` in increasing exponent order.
pub fn series_terms(p: &UniPoly) -> Vec<(usize, String)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != Rat::from_integer(0.into()))
        .map(|(k, c)| (k, c.to_string()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamOut {
    pub x: Vec<(usize, String)>,
    pub y: Vec<(usize, String)>,
    /// `null` for an exact parametrization, else the last certified order.
    pub precision: Option<u32>,
}

impl From<&Parametrization> for ParamOut {
    fn from(p: &Parametrization) -> Self {
        ParamOut { x: series_terms(p.x()), y: series_terms(p.y()), precision: p.precision() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharOut {
    pub multiplicity: u32,
    pub genus: usize,
    pub beta: Vec<u32>,
    pub beta_bar: Vec<u32>,
    pub e: Vec<u32>,
    pub n: Vec<u32>,
    pub conductor: u32,
}

impl From<&CharData> for CharOut {
    fn from(c: &CharData) -> Self {
        CharOut {
            multiplicity: c.multiplicity(),
            genus: c.g,
            beta: c.beta.clone(),
            beta_bar: c.beta_bar.clone(),
            e: c.e.clone(),
            n: c.n_seq.clone(),
            conductor: c.conductor,
        }
    }
}

/// A value set inside its box. `rows` lists membership along the last
/// coordinate (`'1'` member, `'0'` not), with the other coordinates in
/// row-major order starting from `lo`.
#[derive(Clone, Debug, Serialize)]
pub struct SetDump {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub conductor: Vec<i64>,
    pub members_in_box: usize,
    pub rows: Vec<String>,
}

impl From<&BoxedValueSet> for SetDump {
    fn from(s: &BoxedValueSet) -> Self {
        let (lo, hi) = (s.lo().to_vec(), s.hi().to_vec());
        let r = lo.len();
        let mut rows = Vec::new();
        let mut prefix: Vec<i64> = lo[..r - 1].to_vec();
        loop {
            let row: String = (lo[r - 1]..=hi[r - 1])
                .map(|last| {
                    let mut p = prefix.clone();
                    p.push(last);
                    if s.contains(&p) {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            rows.push(row);
            // Odometer over the leading coordinates.
            let mut k = r - 1;
            loop {
                if k == 0 {
                    return SetDump {
                        conductor: s.conductor().to_vec(),
                        members_in_box: s.count_in_box(),
                        lo,
                        hi,
                        rows,
                    };
                }
                k -= 1;
                if prefix[k] < hi[k] {
                    prefix[k] += 1;
                    break;
                }
                prefix[k] = lo[k];
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusOut {
    Pass,
    Fail,
    Skipped,
}

impl From<Status> for StatusOut {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => StatusOut::Pass,
            Status::Fail => StatusOut::Fail,
            Status::Skipped => StatusOut::Skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictOut {
    pub name: String,
    pub status: StatusOut,
    pub detail: String,
}

impl VerdictOut {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        VerdictOut { name: name.into(), status: status.into(), detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, StatusOut::Fail)
    }
}

impl From<&Verdict> for VerdictOut {
    fn from(v: &Verdict) -> Self {
        VerdictOut::new(v.name, v.status, v.detail.clone())
    }
}

pub fn all_pass(verdicts: &[VerdictOut]) -> bool {
    !verdicts.iter().any(VerdictOut::failed)
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchOut {
    pub parametrization: ParamOut,
    pub equation: Option<String>,
    pub chars: CharOut,
    pub delta: u64,
    pub milnor: u64,
    pub tjurina_berger: u64,
    pub tjurina_oracle: Option<u64>,
    /// `ℕ ∖ Λ_i` for the branch alone.
    pub kahler_gaps: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TjurinaOut {
    pub berger: u64,
    /// `null` when the closed formula does not apply.
    pub closed: Option<u64>,
    pub oracle: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalOut {
    pub equisingular: bool,
    pub intersection: u32,
    pub n_g_beta_bar_g: Option<u32>,
    pub diagonal: bool,
}

impl From<&DiagonalCheck> for DiagonalOut {
    fn from(d: &DiagonalCheck) -> Self {
        DiagonalOut {
            equisingular: d.equisingular,
            intersection: d.intersection,
            n_g_beta_bar_g: d.n_g_beta_bar_g,
            diagonal: d.diagonal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueSetsOut {
    pub semigroup: SetDump,
    pub kahler: SetDump,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    #[serde(flatten)]
    pub header: Header,
    pub branches: Vec<BranchOut>,
    pub intersections: Vec<Vec<u32>>,
    pub milnor: u64,
    pub milnor_oracle: Option<u64>,
    pub delta: u64,
    pub semigroup_conductor: Vec<i64>,
    pub tjurina: TjurinaOut,
    pub theta: Vec<u64>,
    pub kahler_conductor: Vec<i64>,
    pub diagonal: Option<DiagonalOut>,
    pub value_sets: ValueSetsOut,
    pub verdicts: Vec<VerdictOut>,
    pub all_pass: bool,
}

pub fn gaps(s: &BoxedValueSet) -> Vec<i64> {
    (0..s.conductor()[0]).filter(|&v| !s.contains(&[v])).collect()
}

impl AnalyzeReport {
    pub fn new(rep: &InvariantReport, params: &[Parametrization], equations: &[Option<String>]) -> Self {
        let branches = rep
            .branches
            .iter()
            .zip(params)
            .zip(equations)
            .map(|((b, p), eq)| BranchOut {
                parametrization: p.into(),
                equation: eq.clone(),
                chars: (&b.chars).into(),
                delta: b.delta,
                milnor: b.milnor,
                tjurina_berger: b.tjurina_berger,
                tjurina_oracle: b.tjurina_oracle,
                kahler_gaps: gaps(&b.kahler),
            })
            .collect();
        let verdicts: Vec<VerdictOut> = rep.verdicts.iter().map(VerdictOut::from).collect();
        AnalyzeReport {
            header: Header::new("analyze"),
            branches,
            intersections: rep.intersections.clone(),
            milnor: rep.milnor,
            milnor_oracle: rep.milnor_oracle,
            delta: rep.delta,
            semigroup_conductor: rep.semigroup_conductor.clone(),
            tjurina: TjurinaOut {
                berger: rep.tjurina_berger,
                closed: match rep.tjurina_closed {
                    ClosedFormula::Value(v) => Some(v),
                    ClosedFormula::NotApplicable => None,
                },
                oracle: rep.tjurina_oracle,
            },
            theta: rep.theta.clone(),
            kahler_conductor: rep.kahler_conductor.clone(),
            diagonal: rep.diagonal.as_ref().map(DiagonalOut::from),
            value_sets: ValueSetsOut { semigroup: (&rep.semigroup).into(), kahler: (&rep.kahler).into() },
            all_pass: all_pass(&verdicts),
            verdicts,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemigroupBranchOut {
    pub parametrization: ParamOut,
    pub chars: CharOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemigroupReport {
    #[serde(flatten)]
    pub header: Header,
    pub branches: Vec<SemigroupBranchOut>,
    pub intersections: Vec<Vec<u32>>,
    pub conductor: Vec<i64>,
    pub delta: u64,
    pub milnor: u64,
    pub semigroup: SetDump,
    pub verdicts: Vec<VerdictOut>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaBranchOut {
    pub kahler_conductor: i64,
    pub kahler_gaps: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    #[serde(flatten)]
    pub header: Header,
    pub branches: Vec<LambdaBranchOut>,
    pub semigroup_conductor: Vec<i64>,
    pub kahler_conductor: Vec<i64>,
    /// `Θ_1..Θ_r` through kernels of the projections.
    pub theta: Vec<u64>,
    /// The same numbers from relative maximal points.
    pub theta_maximals: Vec<u64>,
    pub kahler: SetDump,
    pub verdicts: Vec<VerdictOut>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyOut {
    pub semigroup: Vec<u32>,
    pub conductor: u32,
    pub n_g_beta_bar_g: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKindOut {
    Diagonal,
    Boundary,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceOut {
    pub id: String,
    pub source: &'static str,
    pub target_intersection: Option<u32>,
    pub kind: Option<PairKindOut>,
    pub intersection: Option<u32>,
    /// Conductor of the first branch.
    pub branch_conductor: Option<u32>,
    pub milnor: Option<u64>,
    pub tjurina_berger: Option<u64>,
    pub tjurina_closed: Option<u64>,
    pub tjurina_oracle: Option<u64>,
    /// Every consistency verdict of the full analysis passed.
    pub checks_pass: Option<bool>,
    pub branches: Vec<ParamOut>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryOut {
    pub intersection: u32,
    pub branch_conductor: u32,
    pub kind: PairKindOut,
    pub instances: usize,
    pub tjurina_min: Option<u64>,
    pub tjurina_max: Option<u64>,
    /// `2I + c - 1`, the value for diagonal pairs.
    pub two_i_plus_c_minus_1: u64,
    /// `2I + c`, compared against the minimum at the boundary.
    pub two_i_plus_c: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    #[serde(flatten)]
    pub header: Header,
    pub seed: u64,
    pub family: FamilyOut,
    pub instances: Vec<InstanceOut>,
    pub summary: Vec<SummaryOut>,
    pub verdicts: Vec<VerdictOut>,
    pub all_pass: bool,
}
