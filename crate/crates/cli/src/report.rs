//! Serializable report bodies, one per command, built from core values.
//! Field order is declaration order, so reports are stable byte for byte.

use std::collections::BTreeMap;

use gammacx_core::{
    algebra::ls_generators,
    blowup::{check_flag, collapse_partition, free_face_check, BlowupComplex, Cell},
    census::{census_graph, check_collection, clique_euler},
    homology::betti_numbers,
    isometry::{central_decomposition, cubical_isometries, trivial_h1_audit, H1Matrix},
    metric::{straighten, validate_allowable, Defect, SkewedStructure, TotalLabelOrder, TOLERANCE},
    partition::{enumerate_partitions, WhiteheadPartition},
    set::VertexSet,
    tori::{all_maximal_tori, chain_tori, intersect_tori, torus_cover},
    DefiningGraph,
};
use serde::Serialize;

use crate::{
    dot::region_sides,
    io::{GraphDoc, PartitionDoc, StructureDoc},
};

fn names(g: &DefiningGraph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| g.name(v).to_string()).collect()
}

fn label_names(b: &BlowupComplex, c: &Cell) -> Vec<String> {
    c.labels.iter().map(|l| b.label_name(l)).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Finding {
    pub check: String,
    pub detail: String,
}

impl Finding {
    pub fn new(check: &str, detail: impl Into<String>) -> Self {
        Finding { check: check.into(), detail: detail.into() }
    }
}

#[derive(Debug, Serialize)]
pub struct VertexInfo {
    pub name: String,
    pub link: Vec<String>,
    pub star: Vec<String>,
    pub twist_dominant: bool,
}

#[derive(Debug, Serialize)]
pub struct GraphInfo {
    pub graph: GraphDoc,
    pub vertices: Vec<VertexInfo>,
    pub maximal_cliques: Vec<Vec<String>>,
    pub center: Vec<String>,
    pub clique_counts: Vec<usize>,
    pub euler: i64,
    pub automorphisms: usize,
    pub ls_generators: usize,
    pub partitions: usize,
}

pub fn graph_info(g: &DefiningGraph) -> GraphInfo {
    GraphInfo {
        graph: GraphDoc::of(g),
        vertices: (0..g.len())
            .map(|v| VertexInfo {
                name: g.name(v).into(),
                link: names(g, g.link(v)),
                star: names(g, g.star(v)),
                twist_dominant: g.twist_dominant(v),
            })
            .collect(),
        maximal_cliques: g.maximal_cliques().into_iter().map(|c| names(g, c)).collect(),
        center: names(g, g.central_clique()),
        clique_counts: g.clique_counts(),
        euler: clique_euler(g),
        automorphisms: g.automorphisms().len(),
        ls_generators: ls_generators(g).len(),
        partitions: enumerate_partitions(g).len(),
    }
}

#[derive(Debug, Serialize)]
pub struct PartitionInfo {
    pub text: String,
    pub sides: PartitionDoc,
    pub sing: Vec<String>,
    pub max: Vec<String>,
}

pub fn partition_info(g: &DefiningGraph, p: &WhiteheadPartition) -> PartitionInfo {
    PartitionInfo { text: p.display(g), sides: PartitionDoc::of(g, p), sing: names(g, p.sing()), max: names(g, p.max_set(g)) }
}

#[derive(Debug, Serialize)]
pub struct CollectionInfo {
    pub index: Option<usize>,
    pub partitions: Vec<String>,
}

pub fn collection_info(g: &DefiningGraph, index: Option<usize>, c: &[WhiteheadPartition]) -> CollectionInfo {
    CollectionInfo { index, partitions: c.iter().map(|p| p.display(g)).collect() }
}

#[derive(Debug, Serialize)]
pub struct RegionDoc {
    pub index: usize,
    pub sides: String,
}

#[derive(Debug, Serialize)]
pub struct EdgeDoc {
    pub index: usize,
    pub label: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Serialize)]
pub struct CubeCellDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub base: usize,
    pub maximal: bool,
}

#[derive(Debug, Serialize)]
pub struct ComplexDoc {
    pub collection: CollectionInfo,
    pub regions: Vec<RegionDoc>,
    pub edges: Vec<EdgeDoc>,
    pub cubes: Vec<CubeCellDoc>,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub betti: Vec<usize>,
}

pub fn complex_doc(b: &BlowupComplex, index: Option<usize>) -> ComplexDoc {
    let maximal = b.maximal_cells();
    ComplexDoc {
        collection: collection_info(b.graph(), index, b.partitions()),
        regions: (0..b.regions().len()).map(|r| RegionDoc { index: r, sides: region_sides(b, r) }).collect(),
        edges: b
            .cells(1)
            .iter()
            .enumerate()
            .map(|(index, e)| {
                let (from, to) = b.endpoints(*e);
                EdgeDoc { index, label: b.label_name(b.edge_label(*e)), from, to }
            })
            .collect(),
        cubes: (2..=b.dim())
            .flat_map(|k| b.cells(k).iter())
            .map(|c| CubeCellDoc { dim: c.dim(), labels: label_names(b, c), base: c.base, maximal: maximal.contains(c) })
            .collect(),
        f_vector: b.f_vector(),
        euler: b.euler_characteristic(),
        betti: betti_numbers(b),
    }
}

#[derive(Debug, Serialize)]
pub struct CollapseDoc {
    pub partition: String,
    pub f_vector: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct BlowupCheck {
    pub collection: CollectionInfo,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub flag: bool,
    pub no_free_faces: bool,
    pub collapses: Vec<CollapseDoc>,
    pub violations: Vec<Finding>,
}

pub fn blowup_check(g: &DefiningGraph, index: Option<usize>, c: &[WhiteheadPartition]) -> BlowupCheck {
    let (_, bad) = check_collection(g, c);
    let violations: Vec<Finding> = bad.iter().map(|(k, d)| Finding::new(k, d.clone())).collect();
    let collection = collection_info(g, index, c);
    match BlowupComplex::build(g, c) {
        Err(_) => BlowupCheck {
            collection,
            f_vector: vec![],
            euler: 0,
            flag: false,
            no_free_faces: false,
            collapses: vec![],
            violations,
        },
        Ok(b) => BlowupCheck {
            collection,
            f_vector: b.f_vector(),
            euler: b.euler_characteristic(),
            flag: check_flag(&b),
            no_free_faces: free_face_check(&b),
            collapses: (0..c.len())
                .filter_map(|i| {
                    collapse_partition(&b, i)
                        .ok()
                        .map(|(q, _)| CollapseDoc { partition: c[i].display(g), f_vector: q.f_vector() })
                })
                .collect(),
            violations,
        },
    }
}

#[derive(Debug, Serialize)]
pub struct TorusDoc {
    pub clique: Vec<String>,
    pub base: usize,
    pub cycle_lengths: Vec<usize>,
    pub f_vector: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct IntersectionDoc {
    pub first: usize,
    pub second: usize,
    pub clique: Vec<String>,
    pub f_vector: Vec<usize>,
    pub factor_f_vector: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ChainDoc {
    pub first: usize,
    pub second: usize,
    pub tori: usize,
}

#[derive(Debug, Serialize)]
pub struct ToriCheck {
    pub collection: CollectionInfo,
    pub tori: Vec<TorusDoc>,
    pub uncovered_cells: usize,
    pub intersections: Vec<IntersectionDoc>,
    pub chains: Vec<ChainDoc>,
    pub violations: Vec<Finding>,
}

pub fn tori_check(g: &DefiningGraph, index: Option<usize>, c: &[WhiteheadPartition]) -> ToriCheck {
    let mut out = ToriCheck {
        collection: collection_info(g, index, c),
        tori: vec![],
        uncovered_cells: 0,
        intersections: vec![],
        chains: vec![],
        violations: vec![],
    };
    let b = match BlowupComplex::build(g, c) {
        Ok(b) => b,
        Err(e) => {
            out.violations.push(Finding::new("build", e.to_string()));
            return out;
        }
    };
    let tori = match all_maximal_tori(&b) {
        Ok(t) => t,
        Err(e) => {
            out.violations.push(Finding::new("tori", e.to_string()));
            return out;
        }
    };
    out.tori = tori
        .iter()
        .map(|t| TorusDoc { clique: names(g, t.clique), base: t.base, cycle_lengths: t.cycle_lengths(), f_vector: t.f_vector() })
        .collect();
    out.uncovered_cells = torus_cover(&b, &tori).iter().filter(|(_, w)| w.is_none()).count();
    if out.uncovered_cells > 0 {
        out.violations.push(Finding::new("torus_cover", format!("{} maximal cells in no torus", out.uncovered_cells)));
    }
    for (i, t1) in tori.iter().enumerate() {
        for (j, t2) in tori.iter().enumerate().skip(i + 1) {
            if t1.shares_vertex(t2) {
                match intersect_tori(&b, t1, t2) {
                    Ok(x) => out.intersections.push(IntersectionDoc {
                        first: i,
                        second: j,
                        clique: names(g, x.clique),
                        f_vector: x.f_vector(),
                        factor_f_vector: gammacx_core::tori::f_vector_of(&x.factor),
                    }),
                    Err(e) => out.violations.push(Finding::new("torus_intersection", format!("T{i} ∩ T{j}: {e}"))),
                }
            }
            match chain_tori(&b, &tori, t1, t2) {
                Ok(ch) => out.chains.push(ChainDoc { first: i, second: j, tori: ch.len() }),
                Err(e) => out.violations.push(Finding::new("torus_chain", format!("T{i} to T{j}: {e}"))),
            }
        }
    }
    out
}

pub fn defect_findings(b: &BlowupComplex, defects: &[Defect]) -> Vec<Finding> {
    defects.iter().map(|d| Finding::new(d.code(), d.describe(b))).collect()
}

#[derive(Debug, Serialize)]
pub struct StructureReport {
    pub collection: CollectionInfo,
    pub rectilinear: bool,
    pub structure: StructureDoc,
    pub defects: Vec<Finding>,
}

pub fn structure_report(b: &BlowupComplex, index: Option<usize>, s: &SkewedStructure, seed: Option<u64>) -> StructureReport {
    let defects = validate_allowable(b, &TotalLabelOrder::default_for(b), s);
    StructureReport {
        collection: collection_info(b.graph(), index, b.partitions()),
        rectilinear: s.is_rectilinear(),
        structure: StructureDoc::of(b, s, seed),
        defects: defect_findings(b, &defects),
    }
}

#[derive(Debug, Serialize)]
pub struct StraightenStep {
    pub t: f64,
    pub max_length_error: f64,
    pub rectilinear: bool,
    pub defects: Vec<Finding>,
}

#[derive(Debug, Serialize)]
pub struct StraightenReport {
    pub collection: CollectionInfo,
    pub steps: Vec<StraightenStep>,
    /// The structure at the last requested `t`.
    pub result: Option<StructureDoc>,
}

impl StraightenReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.defects.is_empty() && s.max_length_error <= TOLERANCE && (s.t < 1.0 || s.rectilinear))
    }
}

pub fn straighten_report(b: &BlowupComplex, index: Option<usize>, s: &SkewedStructure, ts: &[f64]) -> StraightenReport {
    let order = TotalLabelOrder::default_for(b);
    let mut steps = Vec::new();
    let mut result = None;
    for &t in ts {
        match straighten(s, t) {
            Ok(st) => {
                let max_length_error = st
                    .frames
                    .iter()
                    .flat_map(|f| f.labels.iter().enumerate().map(move |(j, &l)| (f, j, l)))
                    .map(|(f, j, l)| (f.column_norm(j) - s.lengths[l]).abs())
                    .fold(0.0, f64::max);
                steps.push(StraightenStep {
                    t,
                    max_length_error,
                    rectilinear: st.is_rectilinear(),
                    defects: defect_findings(b, &validate_allowable(b, &order, &st)),
                });
                result = Some(StructureDoc::of(b, &st, None));
            }
            Err(e) => steps.push(StraightenStep {
                t,
                max_length_error: f64::INFINITY,
                rectilinear: false,
                defects: vec![Finding::new("straighten", e.to_string())],
            }),
        }
    }
    StraightenReport { collection: collection_info(b.graph(), index, b.partitions()), steps, result }
}

#[derive(Debug, Serialize)]
pub struct MetricAudit {
    /// `unit` or `seed N`.
    pub metric: String,
    pub group_order: usize,
    pub kernel_order: usize,
    pub injective: bool,
    pub h1_images: Vec<H1Matrix>,
    pub survives_straightening: bool,
    pub violations: Vec<Finding>,
}

#[derive(Debug, Serialize)]
pub struct CentralDoc {
    pub center: Vec<String>,
    pub complement_f_vector: Vec<usize>,
    pub f_vector: Vec<usize>,
    pub certified: bool,
}

#[derive(Debug, Serialize)]
pub struct CollectionAudit {
    pub collection: CollectionInfo,
    pub central_decomposition: CentralDoc,
    pub metrics: Vec<MetricAudit>,
}

impl CollectionAudit {
    pub fn passed(&self) -> bool {
        self.central_decomposition.certified
            && self.metrics.iter().all(|m| m.violations.is_empty() && m.kernel_order == 1 && m.survives_straightening)
    }
}

pub fn metric_audit(b: &BlowupComplex, metric: String, s: &SkewedStructure) -> MetricAudit {
    let r = trivial_h1_audit(b, s);
    let mut violations: Vec<Finding> = r.violations.iter().map(|v| Finding::new("audit", v.clone())).collect();
    if r.kernel_order != 1 {
        violations.push(Finding::new("kernel", format!("{} isometries act trivially on H1", r.kernel_order)));
    }
    let survives_straightening = match straighten(s, 1.0) {
        Ok(st) => {
            let big = cubical_isometries(b, &st);
            cubical_isometries(b, s).iter().all(|f| big.contains(f))
        }
        Err(_) => false,
    };
    if !survives_straightening {
        violations.push(Finding::new("covariance", "an isometry is lost by straightening"));
    }
    MetricAudit {
        metric,
        group_order: r.group_order,
        kernel_order: r.kernel_order,
        injective: r.injective,
        h1_images: r.h1_images,
        survives_straightening,
        violations,
    }
}

pub fn central_doc(b: &BlowupComplex) -> CentralDoc {
    let c = central_decomposition(b);
    CentralDoc {
        center: names(b.graph(), c.center),
        complement_f_vector: c.complement_f_vector.clone(),
        f_vector: c.f_vector.clone(),
        certified: c.certified(),
    }
}

#[derive(Debug, Serialize)]
pub struct FVectorCount {
    pub f_vector: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct GraphCensusDoc {
    pub graph: GraphDoc,
    pub partitions: usize,
    pub collections: usize,
    pub complexes: usize,
    pub euler: Vec<i64>,
    pub f_vectors: Vec<FVectorCount>,
    pub violations: Vec<CensusViolation>,
}

#[derive(Debug, Serialize)]
pub struct CensusViolation {
    pub collection: usize,
    pub check: String,
    pub detail: String,
}

pub fn graph_census(g: &DefiningGraph) -> GraphCensusDoc {
    let c = census_graph(g);
    let mut hist: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in &c.complexes {
        *hist.entry(s.f_vector.clone()).or_default() += 1;
    }
    let mut euler: Vec<i64> = c.complexes.iter().map(|s| s.euler).collect();
    euler.sort();
    euler.dedup();
    GraphCensusDoc {
        graph: GraphDoc::of(g),
        partitions: c.partitions,
        collections: compatible_count(&c),
        complexes: c.complexes.len(),
        euler,
        f_vectors: hist.into_iter().map(|(f_vector, count)| FVectorCount { f_vector, count }).collect(),
        violations: c
            .violations
            .iter()
            .map(|v| CensusViolation { collection: v.collection, check: v.check.into(), detail: v.detail.clone() })
            .collect(),
    }
}

/// Collections examined: every one yields a complex unless it failed to build.
fn compatible_count(c: &gammacx_core::census::GraphCensus) -> usize {
    c.complexes.len() + c.violations.iter().filter(|v| v.check == "build").count()
}
