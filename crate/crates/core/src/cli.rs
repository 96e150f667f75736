//! Command execution and JSON reports.
//!
//! Every command maps a family to one report document and an exit status.
//! Ratios are always written as exact fraction strings.

use serde::Serialize;

use crate::document::RationalLiteral;
use crate::error::{Error, Result};
use crate::family::{IndexSet, OrderedPartition, VectorFamily};
use crate::fundamental::construct_fundamental;
use crate::linalg::{format_rational, Rational, RationalVector};
use crate::oracle::Oracle;
use crate::rado_horn::{
    check_inequality, generalized_check, partition_into_k, redundant_witness, screen_zero_vectors,
    RemovalVerdict, ZeroScreen,
};
use crate::young::{render_young, CellLabels, DiagramStyle};

pub const SCHEMA_VERSION: &str = "1";

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    InputError = 1,
    /// Violated, degenerate, infeasible, or no witness applicable.
    Negative = 2,
    BudgetExceeded = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Partition,
    Analyze { k: usize },
    Construct,
    Witness { k: usize },
    Remove { k: usize, l: usize },
    Oracle,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Partition => "partition",
            Self::Analyze { .. } => "analyze",
            Self::Construct => "construct",
            Self::Witness { .. } => "witness",
            Self::Remove { .. } => "remove",
            Self::Oracle => "oracle",
        }
    }

    fn k(&self) -> Option<usize> {
        match *self {
            Self::Analyze { k } | Self::Witness { k } | Self::Remove { k, .. } => Some(k),
            _ => None,
        }
    }

    fn l(&self) -> Option<usize> {
        match *self {
            Self::Remove { l, .. } => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub render: bool,
    pub ascii_only: bool,
    pub trace: bool,
}

impl Options {
    fn style(&self) -> DiagramStyle {
        if self.ascii_only {
            DiagramStyle::Ascii
        } else {
            DiagramStyle::Box
        }
    }

    fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.render {
            out.push("--render");
        }
        if self.ascii_only {
            out.push("--ascii-only");
        }
        if self.trace {
            out.push("--trace");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    /// Pretty-printed JSON with a trailing newline.
    pub report: String,
}

#[derive(Serialize)]
struct CommandEcho {
    name: &'static str,
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    flags: Vec<&'static str>,
}

#[derive(Serialize)]
struct Report<B: Serialize> {
    schema_version: &'static str,
    command: CommandEcho,
    verdict: &'static str,
    #[serde(flatten)]
    body: B,
}

#[derive(Serialize)]
struct Degenerate {
    zero_vectors: Vec<String>,
    ratio: &'static str,
}

#[derive(Serialize)]
struct PartitionBody {
    dimension: usize,
    size: usize,
    partition: Vec<Vec<String>>,
    profile: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<Vec<String>>,
}

#[derive(Serialize)]
struct MaxRatio {
    subset: Vec<String>,
    ratio: String,
}

#[derive(Serialize)]
struct Decomposition {
    k: usize,
    transversal_rank: usize,
    expression: String,
}

#[derive(Serialize)]
struct AnalyzeBody {
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transversal: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Decomposition>,
    max_ratio: MaxRatio,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ProjectedVector {
    id: String,
    coords: Vec<RationalLiteral>,
}

#[derive(Serialize)]
struct StageBody {
    stage: usize,
    transversal: Vec<String>,
    slices: Vec<Vec<String>>,
    t: usize,
    k: usize,
    s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    projected: Option<Vec<ProjectedVector>>,
}

#[derive(Serialize)]
struct MergeBody {
    stage: usize,
    absorbed: Vec<String>,
    merged: Vec<String>,
}

#[derive(Serialize)]
struct ConstructBody {
    stages: Vec<StageBody>,
    merges: Vec<MergeBody>,
    partition: Vec<Vec<String>>,
    profile: Vec<usize>,
    total_dim: usize,
    max_spanning_sets: usize,
    diagram: Vec<String>,
}

#[derive(Serialize)]
struct Conditions {
    equal_spans: bool,
    ratio_exceeds_k: bool,
    remainders_independent: bool,
}

#[derive(Serialize)]
struct WitnessBody {
    k: usize,
    blocks: Vec<Vec<String>>,
    subspace_basis: Vec<Vec<RationalLiteral>>,
    dim: usize,
    slices: Vec<Vec<String>>,
    saturated: Vec<String>,
    ratio: String,
    conditions: Conditions,
}

#[derive(Serialize)]
struct NoWitnessBody {
    k: usize,
    explanation: String,
}

#[derive(Serialize)]
struct RemoveBody {
    k: usize,
    l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    removed: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<String>,
}

#[derive(Serialize)]
struct OracleBody {
    partition_count: usize,
    fundamental: Vec<Vec<String>>,
    fundamental_profile: Vec<usize>,
    max_ratio: MaxRatio,
    min_parts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<Vec<String>>,
}

#[derive(Serialize)]
struct BudgetBody {
    size: usize,
    limit: usize,
}

struct Context<'a> {
    command: Command,
    input: &'a str,
    family: &'a VectorFamily,
    options: Options,
}

impl Context<'_> {
    fn emit<B: Serialize>(&self, status: ExitStatus, verdict: &'static str, body: B) -> Outcome {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            command: CommandEcho {
                name: self.command.name(),
                input: self.input.to_owned(),
                k: self.command.k(),
                l: self.command.l(),
                flags: self.options.flags(),
            },
            verdict,
            body,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        Outcome {
            status,
            report: text,
        }
    }

    fn ids(&self, set: &IndexSet) -> Vec<String> {
        self.family.labels(set)
    }

    fn blocks(&self, blocks: &[IndexSet]) -> Vec<Vec<String>> {
        blocks.iter().map(|b| self.ids(b)).collect()
    }

    fn diagram(&self, partition: &OrderedPartition, labels: &CellLabels) -> Vec<String> {
        render_young(&partition.profile(), Some(labels), self.options.style())
            .lines()
            .map(str::to_owned)
            .collect()
    }

    /// Cells labelled with the ids of the vectors in each block.
    fn id_labels(&self, partition: &OrderedPartition) -> CellLabels {
        let mut labels = CellLabels::new();
        for (r, block) in partition.blocks().iter().enumerate() {
            for (c, &i) in block.iter().enumerate() {
                labels.insert((r + 1, c + 1), self.family.label(i).to_owned());
            }
        }
        labels
    }

    fn max_ratio(&self, set: &IndexSet, ratio: &Rational) -> MaxRatio {
        MaxRatio {
            subset: self.ids(set),
            ratio: format_rational(ratio),
        }
    }
}

/// Runs `command` on `family`. `input` is echoed into the report.
///
/// Argument errors (`k = 0`, `L > M`) surface as [`Error`]s, which callers
/// map to [`ExitStatus::InputError`].
pub fn execute(
    command: Command,
    input: &str,
    family: &VectorFamily,
    options: Options,
) -> Result<Outcome> {
    if command.k() == Some(0) {
        return Err(Error::InvalidArgument("--k must be at least 1".into()));
    }
    if let Some(l) = command.l() {
        if l > family.len() {
            return Err(Error::InvalidArgument(format!(
                "--l {l} exceeds the family size {}",
                family.len()
            )));
        }
    }
    let cx = Context {
        command,
        input,
        family,
        options,
    };
    if let ZeroScreen::Degenerate(zeros) = screen_zero_vectors(family) {
        let zero_vectors = zeros.iter().map(|&i| family.label(i).to_owned()).collect();
        return Ok(cx.emit(
            ExitStatus::Negative,
            "degenerate",
            Degenerate {
                zero_vectors,
                ratio: "inf",
            },
        ));
    }
    match command {
        Command::Partition => partition(&cx),
        Command::Analyze { k } => analyze(&cx, k),
        Command::Construct => construct(&cx),
        Command::Witness { k } => witness(&cx, k),
        Command::Remove { k, l } => remove(&cx, k, l),
        Command::Oracle => oracle(&cx),
    }
}

fn partition(cx: &Context) -> Result<Outcome> {
    let (partition, _) = construct_fundamental(cx.family)?;
    let diagram = cx
        .options
        .render
        .then(|| cx.diagram(&partition, &cx.id_labels(&partition)));
    Ok(cx.emit(
        ExitStatus::Success,
        "ok",
        PartitionBody {
            dimension: cx.family.dimension(),
            size: cx.family.len(),
            partition: cx.blocks(partition.blocks()),
            profile: partition.profile().sizes().to_vec(),
            diagram,
        },
    ))
}

fn analyze(cx: &Context, k: usize) -> Result<Outcome> {
    let inequality = check_inequality(cx.family, k)?;
    let certificate = partition_into_k(cx.family, k)?;
    if inequality.is_satisfiable() != certificate.is_satisfiable() {
        return Err(Error::Internal(
            "inequality check and partition construction disagree".into(),
        ));
    }
    let max_ratio = match (&inequality.witness, &inequality.ratio) {
        (Some(set), Some(ratio)) => cx.max_ratio(set, ratio),
        _ => MaxRatio {
            subset: Vec::new(),
            ratio: "0".into(),
        },
    };
    let mut body = AnalyzeBody {
        k,
        partition: None,
        profile: None,
        witness: None,
        ratio: None,
        transversal: None,
        decomposition: None,
        max_ratio,
        diagram: None,
    };
    if let Some(partition) = &certificate.partition {
        body.partition = Some(cx.blocks(partition.blocks()));
        body.profile = Some(partition.profile().sizes().to_vec());
        if cx.options.render {
            body.diagram = Some(cx.diagram(partition, &cx.id_labels(partition)));
        }
        return Ok(cx.emit(ExitStatus::Success, "satisfiable", body));
    }
    let rank_t = certificate
        .transversal_rank
        .ok_or_else(|| Error::Internal("violation without transversal".into()))?;
    body.witness = certificate.witness.as_ref().map(|w| cx.ids(w));
    body.ratio = certificate.ratio.as_ref().map(format_rational);
    body.transversal = certificate
        .transversal
        .as_ref()
        .map(|t| cx.blocks(t.slices()));
    body.decomposition = Some(Decomposition {
        k,
        transversal_rank: rank_t,
        expression: format!("{k} + 1/{rank_t}"),
    });
    Ok(cx.emit(ExitStatus::Negative, "violated", body))
}

fn construct(cx: &Context) -> Result<Outcome> {
    let (partition, trace) = construct_fundamental(cx.family)?;
    let stages = trace
        .stages
        .iter()
        .enumerate()
        .map(|(j, stage)| StageBody {
            stage: j + 1,
            transversal: cx.ids(&stage.transversal),
            slices: cx.blocks(&stage.slices),
            t: stage.t,
            k: stage.k,
            s: stage.s,
            projected: cx.options.trace.then(|| {
                stage
                    .projected
                    .iter()
                    .map(|(i, v)| ProjectedVector {
                        id: cx.family.label(*i).to_owned(),
                        coords: literal_coords(v),
                    })
                    .collect()
            }),
        })
        .collect();
    let merges = trace
        .merges
        .iter()
        .map(|m| MergeBody {
            stage: m.stage,
            absorbed: cx.ids(&m.absorbed),
            merged: cx.ids(&m.merged),
        })
        .collect();
    Ok(cx.emit(
        ExitStatus::Success,
        "ok",
        ConstructBody {
            stages,
            merges,
            partition: cx.blocks(partition.blocks()),
            profile: partition.profile().sizes().to_vec(),
            total_dim: trace.total_dim(),
            max_spanning_sets: trace.max_spanning_sets(),
            diagram: cx.diagram(&partition, &trace.cell_labels(&partition)),
        },
    ))
}

fn literal_coords(v: &RationalVector) -> Vec<RationalLiteral> {
    v.coords().iter().cloned().map(RationalLiteral).collect()
}

fn witness(cx: &Context, k: usize) -> Result<Outcome> {
    let w = match redundant_witness(cx.family, k) {
        Ok(w) => w,
        Err(Error::Feasible { k }) => {
            return Ok(cx.emit(
                ExitStatus::Negative,
                "feasible",
                NoWitnessBody {
                    k,
                    explanation: format!(
                        "the family splits into {k} linearly independent sets, so no redundancy witness exists"
                    ),
                },
            ))
        }
        Err(e) => return Err(e),
    };
    let conditions = w.conditions(cx.family);
    Ok(cx.emit(
        ExitStatus::Success,
        "redundant",
        WitnessBody {
            k,
            blocks: cx.blocks(&w.partition),
            subspace_basis: w.subspace_basis.iter().map(literal_coords).collect(),
            dim: w.dim(),
            slices: cx.blocks(&w.slices),
            saturated: cx.ids(&w.saturated),
            ratio: format_rational(&w.ratio()),
            conditions: Conditions {
                equal_spans: conditions.equal_spans,
                ratio_exceeds_k: conditions.ratio_exceeds_k,
                remainders_independent: conditions.remainders_independent,
            },
        },
    ))
}

fn remove(cx: &Context, k: usize, l: usize) -> Result<Outcome> {
    let r = generalized_check(cx.family, k, l)?;
    let body = RemoveBody {
        k,
        l,
        removed: r.removed.as_ref().map(|h| cx.ids(h)),
        partition: r.partition.as_ref().map(|p| cx.blocks(p.blocks())),
        witness: r.witness.as_ref().map(|j| cx.ids(j)),
        ratio: r.ratio.as_ref().map(format_rational),
    };
    Ok(match r.verdict {
        RemovalVerdict::Feasible => cx.emit(ExitStatus::Success, "feasible", body),
        RemovalVerdict::Infeasible => cx.emit(ExitStatus::Negative, "infeasible", body),
    })
}

fn oracle(cx: &Context) -> Result<Outcome> {
    let oracle = Oracle::default();
    let run = || -> Result<OracleBody> {
        let count = {
            let mut n = 0;
            oracle.for_each_independent_partition(cx.family, |_| n += 1)?;
            n
        };
        let fundamental = oracle.fundamental(cx.family)?;
        let (set, ratio) = oracle.max_ratio(cx.family)?;
        let min_parts = oracle.min_parts(cx.family)?;
        Ok(OracleBody {
            partition_count: count,
            fundamental: cx.blocks(fundamental.blocks()),
            fundamental_profile: fundamental.profile().sizes().to_vec(),
            max_ratio: cx.max_ratio(&set, &ratio),
            min_parts,
            diagram: cx
                .options
                .render
                .then(|| cx.diagram(&fundamental, &cx.id_labels(&fundamental))),
        })
    };
    match run() {
        Ok(body) => Ok(cx.emit(ExitStatus::Success, "ok", body)),
        Err(Error::BudgetExceeded { size, limit }) => Ok(cx.emit(
            ExitStatus::BudgetExceeded,
            "budget_exceeded",
            BudgetBody { size, limit },
        )),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(rows: &[&[i64]]) -> VectorFamily {
        VectorFamily::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn analyze_reports_fraction_strings() {
        let f = fam(&[&[1, 0], &[0, 1], &[1, 1]]);
        let out = execute(Command::Analyze { k: 1 }, "a.json", &f, Options::default()).unwrap();
        assert_eq!(out.status, ExitStatus::Negative);
        assert!(out.report.contains("\"ratio\": \"3/2\""));
        assert!(out.report.contains("\"expression\": \"1 + 1/2\""));
    }

    #[test]
    fn degenerate_family_exits_two() {
        let f = fam(&[&[1, 0], &[0, 0]]);
        for cmd in [
            Command::Partition,
            Command::Construct,
            Command::Oracle,
            Command::Analyze { k: 3 },
        ] {
            let out = execute(cmd, "z.json", &f, Options::default()).unwrap();
            assert_eq!(out.status, ExitStatus::Negative);
            assert!(out.report.contains("\"degenerate\""));
            assert!(out.report.contains("\"phi2\""));
        }
    }

    #[test]
    fn bad_arguments_are_errors() {
        let f = fam(&[&[1, 0]]);
        assert!(execute(Command::Analyze { k: 0 }, "x", &f, Options::default()).is_err());
        assert!(execute(Command::Remove { k: 1, l: 2 }, "x", &f, Options::default()).is_err());
    }

    #[test]
    fn oracle_budget_exit_three() {
        let rows: Vec<Vec<i64>> = (0..11).map(|i| vec![1, i]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let out = execute(Command::Oracle, "big.json", &fam(&refs), Options::default()).unwrap();
        assert_eq!(out.status, ExitStatus::BudgetExceeded);
    }
}
