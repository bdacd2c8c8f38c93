//! Exhaustive invariant sweep: every compatible collection of a graph, every
//! structural check on its blowup.

use alloc::{format, string::String, vec::Vec};

use crate::{
    blowup::{check_flag, collapse_partition, free_face_check, BlowupComplex},
    graph::DefiningGraph,
    partition::{compatible_collections, enumerate_partitions, WhiteheadPartition},
    tori::{all_maximal_tori, chain_tori, intersect_tori, torus_cover},
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index into the graph's collection list.
    pub collection: usize,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSummary {
    pub partitions: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCensus {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub partitions: usize,
    pub complexes: Vec<ComplexSummary>,
    pub violations: Vec<Violation>,
}

impl GraphCensus {
    pub fn collections(&self) -> usize {
        self.complexes.len()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Σ_k (−1)^k` times the number of `k`-cliques.
pub fn clique_euler(g: &DefiningGraph) -> i64 {
    g.clique_counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// All checks on one collection. Returns the summary (if the blowup could
/// be built) and the failed checks.
pub fn check_collection(
    g: &DefiningGraph,
    collection: &[WhiteheadPartition],
) -> (Option<ComplexSummary>, Vec<(&'static str, String)>) {
    let mut bad: Vec<(&'static str, String)> = Vec::new();
    let b = match BlowupComplex::build(g, collection) {
        Ok(b) => b,
        Err(e) => return (None, alloc::vec![("build", format!("{e}"))]),
    };
    let summary = ComplexSummary { partitions: collection.len(), f_vector: b.f_vector(), euler: b.euler_characteristic() };
    if !check_flag(&b) {
        bad.push(("flag", String::from("a vertex link is not flag")));
    }
    let chi = clique_euler(g);
    if summary.euler != chi {
        bad.push(("euler", format!("χ = {} but the Salvetti complex has {}", summary.euler, chi)));
    }
    for i in 0..collection.len() {
        if let Err(e) = collapse_partition(&b, i) {
            bad.push(("collapse", format!("P{i}: {e}")));
        }
    }
    if !free_face_check(&b) {
        bad.push(("free_faces", String::from("a maximal cube has a free face")));
    }
    match all_maximal_tori(&b) {
        Err(e) => bad.push(("tori", format!("{e}"))),
        Ok(tori) => {
            let uncovered = torus_cover(&b, &tori).iter().filter(|(_, w)| w.is_none()).count();
            if uncovered > 0 {
                bad.push(("torus_cover", format!("{uncovered} maximal cells in no torus")));
            }
            for (i, t1) in tori.iter().enumerate() {
                for (j, t2) in tori.iter().enumerate().skip(i + 1) {
                    if t1.shares_vertex(t2) {
                        if let Err(e) = intersect_tori(&b, t1, t2) {
                            bad.push(("torus_intersection", format!("T{i} ∩ T{j}: {e}")));
                        }
                    }
                    if let Err(e) = chain_tori(&b, &tori, t1, t2) {
                        bad.push(("torus_chain", format!("T{i} to T{j}: {e}")));
                    }
                }
            }
        }
    }
    (Some(summary), bad)
}

pub fn census_graph(g: &DefiningGraph) -> GraphCensus {
    let collections = compatible_collections(g);
    let mut complexes = Vec::with_capacity(collections.len());
    let mut violations = Vec::new();
    for (i, c) in collections.iter().enumerate() {
        let (summary, bad) = check_collection(g, c);
        if let Some(s) = summary {
            complexes.push(s);
        }
        violations.extend(bad.into_iter().map(|(check, detail)| Violation { collection: i, check, detail }));
    }
    GraphCensus { vertices: g.len(), edges: g.edges(), partitions: enumerate_partitions(g).len(), complexes, violations }
}
