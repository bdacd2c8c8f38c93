//! Maximal tori: products of characteristic cycles over maximal cliques.
//!
//! Because every edge move is an XOR on region bits, a characteristic cycle
//! is a sequence of offsets from its base, and a product cell is obtained by
//! XOR-ing one offset per factor onto the torus base.

use alloc::{collections::BTreeSet, vec, vec::Vec};

use crate::{
    blowup::{characteristic_cycle, cycle_vertices, BlowupComplex, Cell, EdgeCycle, LabelSet},
    homology::subcomplex_acyclic,
    set::VertexSet,
    Error, Result,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalTorus {
    pub clique: VertexSet,
    /// Base corner of the cube labeled by the clique.
    pub base: usize,
    /// One characteristic cycle per clique vertex, in vertex order.
    pub cycles: Vec<EdgeCycle>,
    pub cells: BTreeSet<Cell>,
}

impl MaximalTorus {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        f_vector_of(&self.cells)
    }

    pub fn labels(&self) -> LabelSet {
        self.cells.iter().fold(LabelSet::EMPTY, |s, c| s.union(c.labels))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().filter(|c| c.dim() == 0).map(|c| c.base)
    }

    pub fn shares_vertex(&self, other: &MaximalTorus) -> bool {
        self.vertices().any(|v| other.cells.contains(&Cell::vertex(v)))
    }
}

pub fn f_vector_of<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> Vec<usize> {
    let mut f = Vec::new();
    for c in cells {
        if f.len() <= c.dim() {
            f.resize(c.dim() + 1, 0);
        }
        f[c.dim()] += 1;
    }
    f
}

/// Cells of a cycle as (offset of the cell's base from the cycle base,
/// labels): the `L` vertices followed by the `L` edges.
fn cycle_cells(b: &BlowupComplex, base: usize, cycle: &EdgeCycle) -> Vec<(u64, LabelSet)> {
    let r0 = b.regions()[base];
    let mut out: Vec<(u64, LabelSet)> =
        cycle_vertices(b, cycle).into_iter().map(|r| (b.regions()[r] ^ r0, LabelSet::EMPTY)).collect();
    out.extend(cycle.steps.iter().map(|s| (b.regions()[s.edge.base] ^ r0, s.edge.labels)));
    out
}

/// Image of the product of `factors` translated to `base`, in product
/// order. `None` if some product cell is not a cell of `b`.
fn product_cells(b: &BlowupComplex, base_bits: u64, factors: &[Vec<(u64, LabelSet)>]) -> Option<Vec<Cell>> {
    let mut acc: Vec<(u64, LabelSet)> = vec![(base_bits, LabelSet::EMPTY)];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for &(bits, labels) in &acc {
            for &(off, l) in f {
                if !labels.intersection(l).is_empty() {
                    return None;
                }
                next.push((bits ^ off, labels.union(l)));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(bits, labels)| {
            let r = b.regions().binary_search(&bits).ok()?;
            let c = Cell { labels, base: r };
            b.contains(&c).then_some(c)
        })
        .collect()
}

fn vertex_labels(clique: VertexSet) -> LabelSet {
    LabelSet(clique.0 as u128)
}

pub fn maximal_torus(b: &BlowupComplex, clique: VertexSet) -> Result<MaximalTorus> {
    if !b.graph().maximal_cliques().contains(&clique) {
        return Err(Error::NotMaximalClique);
    }
    let labels = vertex_labels(clique);
    let cubes: Vec<Cell> = b.cells(clique.len()).iter().copied().filter(|c| c.labels == labels).collect();
    if cubes.len() != 1 {
        return Err(Error::Construction("clique does not label a unique cube"));
    }
    let base = cubes[0].base;
    let cycles = clique
        .iter()
        .map(|v| characteristic_cycle(b, v, Cell { labels: LabelSet::singleton(v), base }))
        .collect::<Result<Vec<_>>>()?;
    let factors: Vec<_> = cycles.iter().map(|c| cycle_cells(b, base, c)).collect();
    let image = product_cells(b, b.regions()[base], &factors).ok_or(Error::Construction("torus product cell missing"))?;
    let cells: BTreeSet<Cell> = image.iter().copied().collect();
    if cells.len() != image.len() {
        return Err(Error::Construction("torus product map is not injective"));
    }
    Ok(MaximalTorus { clique, base, cycles, cells })
}

/// One maximal torus per maximal clique, in clique order.
pub fn all_maximal_tori(b: &BlowupComplex) -> Result<Vec<MaximalTorus>> {
    b.graph().maximal_cliques().into_iter().map(|c| maximal_torus(b, c)).collect()
}

/// `f`-vector of a product of cycles of the given lengths:
/// `f_k = C(n, k) · Π L_i`.
pub fn product_f_vector(lengths: &[usize]) -> Vec<usize> {
    let n = lengths.len();
    let prod: usize = lengths.iter().product();
    let mut binom = 1usize;
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(binom * prod);
        binom = binom * (n - k) / (k + 1);
    }
    out
}

/// For each maximal cell, the index of the first torus containing it.
pub fn torus_cover(b: &BlowupComplex, tori: &[MaximalTorus]) -> Vec<(Cell, Option<usize>)> {
    b.maximal_cells().into_iter().map(|c| (c, tori.iter().position(|t| t.cells.contains(&c)))).collect()
}

pub fn torus_cover_check(b: &BlowupComplex) -> Result<bool> {
    let tori = all_maximal_tori(b)?;
    Ok(torus_cover(b, &tori).iter().all(|(_, w)| w.is_some()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusIntersection {
    pub clique: VertexSet,
    pub cells: BTreeSet<Cell>,
    /// The contractible factor, through the least common vertex.
    pub factor: Vec<Cell>,
}

impl TorusIntersection {
    pub fn f_vector(&self) -> Vec<usize> {
        f_vector_of(&self.cells)
    }
}

/// Position of a vertex of `t` along each of its cycles.
pub fn torus_coordinates(b: &BlowupComplex, t: &MaximalTorus, region: usize) -> Option<Vec<usize>> {
    let target = b.regions()[region] ^ b.regions()[t.base];
    let offsets: Vec<Vec<u64>> = t
        .cycles
        .iter()
        .map(|c| cycle_vertices(b, c).into_iter().map(|r| b.regions()[r] ^ b.regions()[t.base]).collect())
        .collect();
    let mut pos = vec![0usize; offsets.len()];
    loop {
        if pos.iter().zip(&offsets).fold(0, |acc, (&p, o)| acc ^ o[p]) == target {
            return Some(pos);
        }
        let mut i = 0;
        while i < pos.len() {
            pos[i] += 1;
            if pos[i] < offsets[i].len() {
                break;
            }
            pos[i] = 0;
            i += 1;
        }
        if i == pos.len() {
            return None;
        }
    }
}

/// Intersect two tori and certify the decomposition `K × T_Δ`, where
/// `Δ = Δ₁ ∩ Δ₂` and `K` is connected and acyclic.
pub fn intersect_tori(b: &BlowupComplex, t1: &MaximalTorus, t2: &MaximalTorus) -> Result<TorusIntersection> {
    let cells: BTreeSet<Cell> = t1.cells.intersection(&t2.cells).copied().collect();
    let x0 = cells.iter().find(|c| c.dim() == 0).ok_or(Error::NoCommonVertex)?.base;
    let clique = t1.clique.intersection(t2.clique);

    // labels of the torus factor: Δ and everything on its cycles
    let family: Vec<usize> = t1.clique.iter().enumerate().filter(|(_, v)| clique.contains(*v)).map(|(i, _)| i).collect();
    let family_labels =
        family.iter().fold(LabelSet::EMPTY, |s, &i| t1.cycles[i].steps.iter().fold(s, |s, st| s.union(st.edge.labels)));

    // K: component of x0 among intersection cells avoiding the family labels
    let free: BTreeSet<Cell> = cells.iter().copied().filter(|c| c.labels.intersection(family_labels).is_empty()).collect();
    let mut factor = BTreeSet::from([Cell::vertex(x0)]);
    let mut frontier = vec![Cell::vertex(x0)];
    while let Some(c) = frontier.pop() {
        for d in free.iter() {
            if factor.contains(d) {
                continue;
            }
            let touches = if d.dim() > c.dim() { b.closure(*d).contains(&c) } else { b.closure(c).contains(d) };
            if touches {
                factor.insert(*d);
                frontier.push(*d);
            }
        }
    }
    let factor: Vec<Cell> = factor.into_iter().collect();

    // product certificate: K × T_Δ is exactly the intersection, with the
    // cycles of Δ rephased to pass through x0
    let coords = torus_coordinates(b, t1, x0).ok_or(Error::Construction("common vertex outside torus"))?;
    let cycle_factors: Vec<Vec<(u64, LabelSet)>> = family
        .iter()
        .map(|&i| {
            let cells = cycle_cells(b, t1.base, &t1.cycles[i]);
            let phase = cells[coords[i]].0;
            cells.into_iter().map(|(off, l)| (off ^ phase, l)).collect()
        })
        .collect();
    let x0_bits = b.regions()[x0];
    let mut image = Vec::new();
    for k in &factor {
        let mut fs = vec![vec![(b.regions()[k.base] ^ x0_bits, k.labels)]];
        fs.extend(cycle_factors.iter().cloned());
        image.extend(product_cells(b, x0_bits, &fs).ok_or(Error::Construction("intersection product cell missing"))?);
    }
    let image_set: BTreeSet<Cell> = image.iter().copied().collect();
    if image_set.len() != image.len() || image_set != cells {
        return Err(Error::Construction("torus intersection is not K × T_Δ"));
    }
    if !subcomplex_acyclic(b, &factor) {
        return Err(Error::Construction("intersection factor is not contractible"));
    }
    Ok(TorusIntersection { clique, cells, factor })
}

/// A chain of tori from `t1` to `t2`, consecutive members sharing a vertex.
/// Follows an `E^Π` geodesic between the bases, covering each edge by a
/// torus, then drops members that can be skipped.
pub fn chain_tori(b: &BlowupComplex, tori: &[MaximalTorus], t1: &MaximalTorus, t2: &MaximalTorus) -> Result<Vec<MaximalTorus>> {
    if t1 == t2 {
        return Ok(vec![t1.clone()]);
    }
    let mut chain = vec![t1.clone()];
    for step in crate::blowup::partition_geodesic(b, t1.base, t2.base) {
        let t = tori.iter().find(|t| t.cells.contains(&step.edge)).ok_or(Error::Construction("E^Π edge in no maximal torus"))?;
        chain.push(t.clone());
    }
    chain.push(t2.clone());

    let mut out = vec![chain[0].clone()];
    let mut i = 0;
    while i + 1 < chain.len() {
        let j = (i + 1..chain.len()).rev().find(|&j| chain[i].shares_vertex(&chain[j])).unwrap_or(i + 1);
        if !chain[i].shares_vertex(&chain[j]) {
            return Err(Error::Construction("chain of tori breaks"));
        }
        if chain[j] != *out.last().unwrap() {
            out.push(chain[j].clone());
        }
        i = j;
    }
    Ok(out)
}
