//! Command dispatch. Every command returns a report envelope carrying the
//! effective configuration, so identical configs give identical bytes.

use std::path::PathBuf;

use gammacx_core::{
    blowup::BlowupComplex,
    graph::small_graphs,
    metric::{random_allowable, validate_allowable, SkewedStructure, TotalLabelOrder},
    partition::{compatible_collections, enumerate_partitions},
    DefiningGraph,
};
use serde::Serialize;

use crate::{
    dot,
    io::{read_graph, read_structure, select_collections, CollectionSelector, GraphDoc, InputError, Selected},
    report::{self, defect_findings, Finding},
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    GraphInfo,
    Partitions,
    Collections,
    BlowupBuild,
    BlowupVerify,
    ToriVerify,
    MetricRandom,
    MetricValidate,
    MetricStraighten,
    Audit,
    Census,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::GraphInfo => "graph-info",
            Command::Partitions => "partitions",
            Command::Collections => "collections",
            Command::BlowupBuild => "blowup-build",
            Command::BlowupVerify => "blowup-verify",
            Command::ToriVerify => "tori-verify",
            Command::MetricRandom => "metric-random",
            Command::MetricValidate => "metric-validate",
            Command::MetricStraighten => "metric-straighten",
            Command::Audit => "audit",
            Command::Census => "census",
        }
    }

    /// Commands that work on a single complex default to collection 0; the
    /// others default to every collection.
    fn default_selector(self) -> CollectionSelector {
        match self {
            Command::BlowupBuild | Command::MetricRandom | Command::MetricValidate | Command::MetricStraighten => {
                CollectionSelector::Index(0)
            }
            _ => CollectionSelector::All,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Dot,
}

pub const DEFAULT_T: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const DEFAULT_AUDIT_SEEDS: u64 = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub graph: Option<PathBuf>,
    pub collection: Option<CollectionSelector>,
    pub seed: Option<u64>,
    pub t: Vec<f64>,
    pub structure: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, graph: None, collection: None, seed: None, t: Vec::new(), structure: None, format: Format::Json }
    }
}

/// Result of a run: the machine report (JSON or DOT) and a short summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub report: String,
    pub summary: String,
}

/// The configuration as it was actually applied, defaults filled in.
#[derive(Debug, Serialize)]
struct Effective {
    graph: Option<GraphDoc>,
    collection: String,
    seed: u64,
    seeds: Option<String>,
    t: Vec<f64>,
    order: &'static str,
    structure: Option<String>,
}

#[derive(Debug, Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'static str,
    config: &'a Effective,
    passed: bool,
    result: T,
}

const ORDER: &str = "twist order extended by (star size, representative, vertices first, label index)";

struct Ctx {
    cfg: RunConfig,
    graph: Option<DefiningGraph>,
    effective: Effective,
}

impl Ctx {
    fn graph(&self) -> Result<&DefiningGraph, InputError> {
        self.graph.as_ref().ok_or_else(|| InputError::Argument(format!("{} needs --graph", self.cfg.command.name())))
    }

    fn finish<T: Serialize>(&self, passed: bool, result: T, summary: String) -> Result<Outcome, InputError> {
        let env = Envelope { command: self.cfg.command.name(), config: &self.effective, passed, result };
        let mut report = serde_json::to_string_pretty(&env).expect("reports serialize");
        report.push('\n');
        let verdict = if passed { "PASS" } else { "FAIL" };
        Ok(Outcome { passed, report, summary: format!("{} {verdict}: {summary}", self.cfg.command.name()) })
    }

    fn single(&self) -> Result<(Option<usize>, BlowupComplex), InputError> {
        let g = self.graph()?;
        let sel = self.cfg.collection.clone().unwrap_or_else(|| self.cfg.command.default_selector());
        let mut chosen = select_collections(g, &sel)?;
        if chosen.len() != 1 {
            return Err(InputError::Collection {
                selector: sel.to_string(),
                reason: format!("{} needs a single collection", self.cfg.command.name()),
            });
        }
        let (index, parts) = chosen.pop().unwrap();
        let b = BlowupComplex::build(g, &parts).map_err(InputError::Graph)?;
        Ok((index, b))
    }

    fn collections(&self) -> Result<Vec<Selected>, InputError> {
        let sel = self.cfg.collection.clone().unwrap_or_else(|| self.cfg.command.default_selector());
        select_collections(self.graph()?, &sel)
    }

    /// The structure from `--structure`, or the seeded sample.
    fn structure(&self, b: &BlowupComplex) -> Result<(SkewedStructure, Option<u64>), InputError> {
        match &self.cfg.structure {
            Some(p) => Ok((read_structure(p)?.to_structure(b)?, None)),
            None => {
                let seed = self.effective.seed;
                Ok((random_allowable(b, &TotalLabelOrder::default_for(b), seed), Some(seed)))
            }
        }
    }
}

pub fn run_command(cfg: &RunConfig) -> Result<Outcome, InputError> {
    if let Some(&t) = cfg.t.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(InputError::Argument(format!("t = {t} is outside [0, 1]")));
    }
    if cfg.format == Format::Dot && cfg.command != Command::BlowupBuild {
        return Err(InputError::Argument(String::from("--format dot is only available for blowup-build")));
    }
    let graph = cfg.graph.as_deref().map(read_graph).transpose()?;
    let t = if cfg.t.is_empty() { DEFAULT_T.to_vec() } else { cfg.t.clone() };
    let effective = Effective {
        graph: graph.as_ref().map(GraphDoc::of),
        collection: cfg.collection.clone().unwrap_or_else(|| cfg.command.default_selector()).to_string(),
        seed: cfg.seed.unwrap_or(0),
        seeds: (cfg.command == Command::Audit && cfg.seed.is_none())
            .then(|| format!("unit metric and seeds 0..{DEFAULT_AUDIT_SEEDS}")),
        t,
        order: ORDER,
        structure: cfg.structure.as_ref().map(|p| p.display().to_string()),
    };
    let ctx = Ctx { cfg: cfg.clone(), graph, effective };
    match cfg.command {
        Command::GraphInfo => {
            let g = ctx.graph()?;
            let info = report::graph_info(g);
            let summary = format!("{} vertices, {} edges, {} partitions", g.len(), g.edges().len(), info.partitions);
            ctx.finish(true, info, summary)
        }
        Command::Partitions => {
            let g = ctx.graph()?;
            let parts: Vec<_> = enumerate_partitions(g).iter().map(|p| report::partition_info(g, p)).collect();
            let summary = format!("{} partitions", parts.len());
            ctx.finish(true, parts, summary)
        }
        Command::Collections => {
            let g = ctx.graph()?;
            let all: Vec<_> =
                compatible_collections(g).iter().enumerate().map(|(i, c)| report::collection_info(g, Some(i), c)).collect();
            let summary = format!("{} collections", all.len());
            ctx.finish(true, all, summary)
        }
        Command::BlowupBuild => {
            let (index, b) = ctx.single()?;
            if cfg.format == Format::Dot {
                return Ok(Outcome {
                    passed: true,
                    report: dot::one_skeleton(&b),
                    summary: format!("blowup-build PASS: f-vector {:?}", b.f_vector()),
                });
            }
            let doc = report::complex_doc(&b, index);
            let summary = format!("f-vector {:?}, euler {}", doc.f_vector, doc.euler);
            ctx.finish(true, doc, summary)
        }
        Command::BlowupVerify => {
            let g = ctx.graph()?;
            let checks: Vec<_> = ctx.collections()?.iter().map(|(i, c)| report::blowup_check(g, *i, c)).collect();
            let bad: usize = checks.iter().map(|c| c.violations.len()).sum();
            let summary = format!("{} collections, {bad} violations", checks.len());
            ctx.finish(bad == 0, checks, summary)
        }
        Command::ToriVerify => {
            let g = ctx.graph()?;
            let checks: Vec<_> = ctx.collections()?.iter().map(|(i, c)| report::tori_check(g, *i, c)).collect();
            let bad: usize = checks.iter().map(|c| c.violations.len()).sum();
            let tori: usize = checks.iter().map(|c| c.tori.len()).sum();
            let summary = format!("{} collections, {tori} tori, {bad} violations", checks.len());
            ctx.finish(bad == 0, checks, summary)
        }
        Command::MetricRandom | Command::MetricValidate => {
            let (index, b) = ctx.single()?;
            let (s, seed) = ctx.structure(&b)?;
            let r = report::structure_report(&b, index, &s, seed);
            let summary = format!("{} defects, rectilinear {}", r.defects.len(), r.rectilinear);
            ctx.finish(r.defects.is_empty(), r, summary)
        }
        Command::MetricStraighten => {
            let (index, b) = ctx.single()?;
            let (s, _) = ctx.structure(&b)?;
            let defects = validate_allowable(&b, &TotalLabelOrder::default_for(&b), &s);
            if !defects.is_empty() {
                let findings: Vec<Finding> = defect_findings(&b, &defects);
                let summary = format!("input structure has {} defects", findings.len());
                return ctx.finish(false, findings, summary);
            }
            let r = report::straighten_report(&b, index, &s, &ctx.effective.t);
            let summary = format!("{} steps", r.steps.len());
            ctx.finish(r.passed(), r, summary)
        }
        Command::Audit => audit(&ctx),
        Command::Census => census(&ctx),
    }
}

fn audit(ctx: &Ctx) -> Result<Outcome, InputError> {
    let g = ctx.graph()?;
    let mut out = Vec::new();
    for (index, parts) in ctx.collections()? {
        let b = BlowupComplex::build(g, &parts).map_err(InputError::Graph)?;
        let order = TotalLabelOrder::default_for(&b);
        let mut metrics: Vec<(String, SkewedStructure)> = Vec::new();
        match ctx.cfg.seed {
            Some(seed) => metrics.push((format!("seed {seed}"), random_allowable(&b, &order, seed))),
            None => {
                metrics.push((String::from("unit"), SkewedStructure::unit(&b)));
                for seed in 0..DEFAULT_AUDIT_SEEDS {
                    metrics.push((format!("seed {seed}"), random_allowable(&b, &order, seed)));
                }
            }
        }
        out.push(report::CollectionAudit {
            collection: report::collection_info(g, index, &parts),
            central_decomposition: report::central_doc(&b),
            metrics: metrics.into_iter().map(|(name, s)| report::metric_audit(&b, name, &s)).collect(),
        });
    }
    let failed = out.iter().filter(|a| !a.passed()).count();
    let groups: usize = out.iter().flat_map(|a| a.metrics.iter()).count();
    let summary = format!("{} collections, {groups} isometry groups, {failed} collections with violations", out.len());
    ctx.finish(failed == 0, out, summary)
}

fn census(ctx: &Ctx) -> Result<Outcome, InputError> {
    let graphs: Vec<DefiningGraph> = match &ctx.graph {
        Some(g) => vec![g.clone()],
        None => small_graphs(4),
    };
    // one worker per graph; results are collected in graph order
    let docs: Vec<report::GraphCensusDoc> = std::thread::scope(|s| {
        let handles: Vec<_> = graphs.iter().map(|g| s.spawn(move || report::graph_census(g))).collect();
        handles.into_iter().map(|h| h.join().expect("census worker")).collect()
    });
    let collections: usize = docs.iter().map(|d| d.collections).sum();
    let violations: usize = docs.iter().map(|d| d.violations.len()).sum();
    let summary = match docs.as_slice() {
        [d] => format!("{} collections, {} complexes, euler {:?}, {violations} violations", d.collections, d.complexes, d.euler),
        _ => format!("{} graphs, {collections} collections, {violations} violations", docs.len()),
    };
    ctx.finish(violations == 0, docs, summary)
}
