//! Blowups of the Salvetti complex along compatible collections of
//! Whitehead partitions.
//!
//! A region is stored as a bitmask over the collection (bit `i` set means
//! the region picks `P_i⁻`). Every edge move is an XOR: crossing a partition
//! edge toggles that partition's bit, and crossing a `v`-edge toggles the
//! bits of every partition splitting `v`. A cube is therefore determined by
//! its label set and one distinguished corner, its *base*, at which every
//! partition label sits on its `P⁺` side and every vertex label `v` sits at
//! a terminal region for `v`. All cube edges are oriented away from the base
//! corner, so abstract cube coordinates and complex edge orientations agree.

use alloc::{
    collections::{BTreeMap, BTreeSet, VecDeque},
    vec,
    vec::Vec,
};
use core::fmt;

use crate::{
    graph::DefiningGraph,
    partition::{compatible, partitions_adjacent, WhiteheadPartition},
    set::{BitIter, SignedGenerator, VertexSet},
    Error, Result,
};

/// Edge labels `V ∪ Π`: vertex `v` is label `v`, partition `P_i` is label
/// `|V| + i`.
pub type Label = usize;

/// A set of labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(pub u128);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn singleton(l: Label) -> Self {
        LabelSet(1 << l)
    }

    pub fn contains(self, l: Label) -> bool {
        self.0 >> l & 1 == 1
    }

    pub fn with(self, l: Label) -> Self {
        LabelSet(self.0 | 1 << l)
    }

    pub fn without(self, l: Label) -> Self {
        LabelSet(self.0 & !(1 << l))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: LabelSet) -> Self {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> Self {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> Self {
        LabelSet(self.0 & !other.0)
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        iter.into_iter().fold(LabelSet::EMPTY, |s, l| s.with(l))
    }
}

/// A cube: its labels and its base region (an index into
/// [`BlowupComplex::regions`]). Vertices have no labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub labels: LabelSet,
    pub base: usize,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex(region: usize) -> Self {
        Cell { labels: LabelSet::EMPTY, base: region }
    }
}

/// An edge traversed forward (base to tip) or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: Cell,
    pub forward: bool,
}

/// A closed edge path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCycle {
    pub steps: Vec<Step>,
}

impl EdgeCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.steps.iter().map(|s| s.edge.labels.iter().next().unwrap()).collect()
    }
}

/// The cube complex `Ŝ^Π` with its cells grouped by dimension.
#[derive(Clone, Debug)]
pub struct BlowupComplex {
    graph: DefiningGraph,
    partitions: Vec<WhiteheadPartition>,
    regions: Vec<u64>,
    region_index: BTreeMap<u64, usize>,
    cells: Vec<Vec<Cell>>,
    cell_index: BTreeMap<Cell, usize>,
    label_adj: Vec<LabelSet>,
    label_max: Vec<VertexSet>,
    masks: Vec<u64>,
}

/// Regions of a compatible collection: side choices whose chosen sides meet
/// for every non-adjacent pair. Bit `i` set selects `P_i⁻`.
pub fn enumerate_regions(g: &DefiningGraph, partitions: &[WhiteheadPartition]) -> Result<Vec<u64>> {
    let k = partitions.len();
    if k > 64 {
        return Err(Error::CollectionTooLarge(k));
    }
    for i in 0..k {
        for j in i + 1..k {
            if !compatible(g, &partitions[i], &partitions[j])? {
                return Err(Error::Incompatible(i, j));
            }
        }
    }
    let constrained: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && !partitions_adjacent(g, &partitions[i], &partitions[j])).collect()).collect();
    let mut out = Vec::new();
    fn go(i: usize, region: u64, parts: &[WhiteheadPartition], constrained: &[Vec<bool>], out: &mut Vec<u64>) {
        if i == parts.len() {
            out.push(region);
            return;
        }
        for minus in [false, true] {
            let side = parts[i].side(!minus);
            let ok = (0..i).all(|j| !constrained[i][j] || !parts[j].side(region >> j & 1 == 0).is_disjoint(side));
            if ok {
                go(i + 1, region | (minus as u64) << i, parts, constrained, out);
            }
        }
    }
    go(0, 0, partitions, &constrained, &mut out);
    out.sort();
    Ok(out)
}

impl BlowupComplex {
    /// The Salvetti complex: one vertex, a loop per generator, a `k`-cube per
    /// `k`-clique.
    pub fn salvetti(g: &DefiningGraph) -> Self {
        Self::build(g, &[]).expect("the empty collection is compatible")
    }

    pub fn build(g: &DefiningGraph, partitions: &[WhiteheadPartition]) -> Result<Self> {
        let regions = enumerate_regions(g, partitions)?;
        let n = g.len();
        let k = partitions.len();
        if n + k > 128 {
            return Err(Error::CollectionTooLarge(k));
        }
        let region_index: BTreeMap<u64, usize> = regions.iter().enumerate().map(|(i, &r)| (r, i)).collect();

        let mut label_max = Vec::with_capacity(n + k);
        for v in 0..n {
            label_max.push(VertexSet::singleton(v));
        }
        for p in partitions {
            label_max.push(p.max_set(g));
        }
        let mut label_adj = vec![LabelSet::EMPTY; n + k];
        for a in 0..n + k {
            for b in 0..n + k {
                if a == b {
                    continue;
                }
                let adj = match (a < n, b < n) {
                    (true, true) => g.adjacent(a, b),
                    (true, false) => g.link(partitions[b - n].base).contains(a),
                    (false, true) => g.link(partitions[a - n].base).contains(b),
                    (false, false) => partitions_adjacent(g, &partitions[a - n], &partitions[b - n]),
                };
                if adj {
                    label_adj[a] = label_adj[a].with(b);
                }
            }
        }
        let mut masks = vec![0u64; n + k];
        for v in 0..n {
            masks[v] = (0..k).filter(|&i| partitions[i].splits(v)).fold(0, |m, i| m | 1 << i);
        }
        for i in 0..k {
            masks[n + i] = 1 << i;
        }

        let mut b = BlowupComplex {
            graph: g.clone(),
            partitions: partitions.to_vec(),
            regions,
            region_index,
            cells: Vec::new(),
            cell_index: BTreeMap::new(),
            label_adj,
            label_max,
            masks,
        };
        b.attach_cells()?;
        Ok(b)
    }

    fn attach_cells(&mut self) -> Result<()> {
        let mut found: BTreeSet<Cell> = BTreeSet::new();
        for r in 0..self.regions.len() {
            let present: Vec<Label> = (0..self.label_count()).filter(|&l| self.base_end(l, r).is_some()).collect();
            let mut stack: Vec<(LabelSet, usize)> = vec![(LabelSet::EMPTY, 0)];
            while let Some((s, start)) = stack.pop() {
                let base = s.iter().fold(self.regions[r], |acc, l| if self.at_base(l, acc) { acc } else { acc ^ self.masks[l] });
                let cell = Cell { labels: s, base: self.region_index[&base] };
                if !found.contains(&cell) {
                    self.check_corners(cell)?;
                    found.insert(cell);
                }
                for (i, &l) in present.iter().enumerate().skip(start) {
                    if s.is_subset(self.label_adj[l]) {
                        stack.push((s.with(l), i + 1));
                    }
                }
            }
        }
        let top = found.iter().map(|c| c.dim()).max().unwrap_or(0);
        self.cells = vec![Vec::new(); top + 1];
        for c in found {
            self.cells[c.dim()].push(c);
        }
        for dim in &mut self.cells {
            dim.sort();
        }
        self.reindex();
        Ok(())
    }

    fn reindex(&mut self) {
        self.cell_index.clear();
        for dim in &self.cells {
            for (i, c) in dim.iter().enumerate() {
                self.cell_index.insert(*c, i);
            }
        }
    }

    /// Every corner of `cell` is a region and sits at the correct end of each
    /// of its labels.
    fn check_corners(&self, cell: Cell) -> Result<()> {
        let labels: Vec<Label> = cell.labels.iter().collect();
        for eps in 0u32..1 << labels.len() {
            let r = self.corner_bits(cell, eps);
            if !self.region_index.contains_key(&r) {
                return Err(Error::Construction("cube corner is not a region"));
            }
            for (i, &l) in labels.iter().enumerate() {
                let at_base = self.at_base(l, r);
                let at_tip = self.at_base(l, r ^ self.masks[l]);
                let ok = if eps >> i & 1 == 0 { at_base } else { at_tip };
                if !ok {
                    return Err(Error::Construction("cube corner misses an edge end"));
                }
            }
        }
        Ok(())
    }

    /// Is region `r` the base end of an edge labeled `l`?
    fn at_base(&self, l: Label, r: u64) -> bool {
        let n = self.graph.len();
        if l >= n {
            return r >> (l - n) & 1 == 0;
        }
        self.terminal(r, SignedGenerator::pos(l))
    }

    /// `r` selects the side containing `x` of every partition not having
    /// `x` in its link.
    fn terminal(&self, r: u64, x: SignedGenerator) -> bool {
        self.partitions.iter().enumerate().all(|(i, p)| match p.side_of(x) {
            None => true,
            Some(plus) => (r >> i & 1 == 0) == plus,
        })
    }

    /// Base region of the `l`-edge incident to region index `r`, if any.
    fn base_end(&self, l: Label, r: usize) -> Option<u64> {
        let bits = self.regions[r];
        let other = bits ^ self.masks[l];
        if !self.region_index.contains_key(&other) {
            return None;
        }
        if self.at_base(l, bits) {
            Some(bits)
        } else if self.at_base(l, other) {
            Some(other)
        } else {
            None
        }
    }

    fn corner_bits(&self, cell: Cell, eps: u32) -> u64 {
        cell.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| eps >> i & 1 == 1)
            .fold(self.regions[cell.base], |acc, (_, l)| acc ^ self.masks[l])
    }

    /// Region index of the corner of `cell` selected by `eps` (bit `i`
    /// refers to the `i`-th smallest label).
    pub fn corner(&self, cell: Cell, eps: u32) -> usize {
        self.region_index[&self.corner_bits(cell, eps)]
    }

    // ----- accessors -----

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn partitions(&self) -> &[WhiteheadPartition] {
        &self.partitions
    }

    pub fn regions(&self) -> &[u64] {
        &self.regions
    }

    pub fn label_count(&self) -> usize {
        self.graph.len() + self.partitions.len()
    }

    pub fn is_vertex_label(&self, l: Label) -> bool {
        l < self.graph.len()
    }

    pub fn partition_label(&self, i: usize) -> Label {
        self.graph.len() + i
    }

    /// `max(A)`, with `max(v) = {v}`.
    pub fn label_max(&self, l: Label) -> VertexSet {
        self.label_max[l]
    }

    pub fn labels_adjacent(&self, a: Label, b: Label) -> bool {
        self.label_adj[a].contains(b)
    }

    /// Labels adjacent to `l`.
    pub fn label_neighbors(&self, l: Label) -> LabelSet {
        self.label_adj[l]
    }

    /// XOR mask applied to a region when crossing an `l`-edge.
    pub fn mask(&self, l: Label) -> u64 {
        self.masks[l]
    }

    /// Region index reached from `r` by XOR with `mask`, if it is a region.
    pub fn region_after(&self, r: usize, mask: u64) -> Option<usize> {
        self.region_index.get(&(self.regions[r] ^ mask)).copied()
    }

    pub fn label_name(&self, l: Label) -> alloc::string::String {
        let n = self.graph.len();
        if l < n {
            self.graph.name(l).into()
        } else {
            alloc::format!("P{}", l - n)
        }
    }

    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().flatten().copied()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cell_index.contains_key(c)
    }

    /// Position of `c` among the cells of its dimension.
    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.cell_index.get(c).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(|d| d.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    /// Endpoints `(base, tip)` of an edge.
    pub fn endpoints(&self, edge: Cell) -> (usize, usize) {
        (edge.base, self.corner(edge, 1))
    }

    pub fn edge_label(&self, edge: Cell) -> Label {
        edge.labels.iter().next().expect("edge has one label")
    }

    /// Codimension-one faces `(label, side, face)`: `side = false` is the
    /// face through the base corner.
    pub fn facets(&self, cell: Cell) -> Vec<(Label, bool, Cell)> {
        let mut out = Vec::with_capacity(2 * cell.dim());
        for l in cell.labels.iter() {
            let labels = cell.labels.without(l);
            out.push((l, false, Cell { labels, base: cell.base }));
            let far = self.region_index[&(self.regions[cell.base] ^ self.masks[l])];
            out.push((l, true, Cell { labels, base: far }));
        }
        out
    }

    /// The edge of `cell` in direction `l` at the corner `eps`, and which end
    /// of it (`false` = base) that corner is.
    pub fn edge_at_corner(&self, cell: Cell, eps: u32, l: Label) -> (Cell, bool) {
        let labels: Vec<Label> = cell.labels.iter().collect();
        let i = labels.iter().position(|&x| x == l).expect("label of cell");
        let tip = eps >> i & 1 == 1;
        let base = self.corner(cell, eps & !(1 << i));
        (Cell { labels: LabelSet::singleton(l), base }, tip)
    }

    /// All faces of `cell` of every dimension, including itself.
    pub fn closure(&self, cell: Cell) -> BTreeSet<Cell> {
        let mut out = BTreeSet::new();
        let mut stack = vec![cell];
        while let Some(c) = stack.pop() {
            if out.insert(c) {
                for (_, _, f) in self.facets(c) {
                    stack.push(f);
                }
            }
        }
        out
    }

    /// Cells that are not a proper face of another cell.
    pub fn maximal_cells(&self) -> Vec<Cell> {
        let mut covered = BTreeSet::new();
        for c in self.all_cells() {
            for (_, _, f) in self.facets(c) {
                covered.insert(f);
            }
        }
        self.all_cells().filter(|c| !covered.contains(c)).collect()
    }

    /// Cells whose labels are all partitions; `E^Π`.
    pub fn partition_subcomplex(&self) -> Vec<Cell> {
        let vmask = LabelSet((1u128 << self.graph.len()) - 1);
        self.all_cells().filter(|c| c.labels.intersection(vmask).is_empty()).collect()
    }

    /// A copy with `removed` and every cell having one of them as a face
    /// deleted. Used to build non-examples.
    pub fn without(&self, removed: &[Cell]) -> Self {
        let mut out = self.clone();
        let doomed: BTreeSet<Cell> = self.all_cells().filter(|c| removed.iter().any(|r| self.closure(*c).contains(r))).collect();
        for dim in &mut out.cells {
            dim.retain(|c| !doomed.contains(c));
        }
        while out.cells.len() > 1 && out.cells.last().is_some_and(|d| d.is_empty()) {
            out.cells.pop();
        }
        out.reindex();
        out
    }

    /// Cellular boundary matrix from dimension `k` to `k - 1`, as
    /// `rows = (k-1)-cells`, `cols = k-cells`.
    pub fn boundary_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        crate::homology::boundary_matrix(self, self.cells(k), self.cells(k.wrapping_sub(1)))
    }
}

// ----- hyperplanes -----

/// The hyperplane dual to a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub label: Label,
    pub dual_edges: Vec<Cell>,
    /// Closure of all cubes crossing the hyperplane.
    pub carrier: BTreeSet<Cell>,
}

/// Classes of edges under "opposite sides of a square".
pub fn dual_classes(b: &BlowupComplex) -> Vec<Vec<Cell>> {
    let edges = b.cells(1);
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for sq in b.cells(2) {
        for l in sq.labels.iter() {
            let e0 = b.edge_at_corner(*sq, 0, l).0;
            let other = sq.labels.without(l).iter().next().unwrap();
            let e1 = b.edge_at_corner(*sq, 1 << sq.labels.iter().position(|x| x == other).unwrap(), l).0;
            let (i, j) = (b.index_of(&e0).unwrap(), b.index_of(&e1).unwrap());
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for i in 0..edges.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(edges[i]);
    }
    let mut out: Vec<Vec<Cell>> = classes.into_values().collect();
    out.sort();
    out
}

pub fn hyperplane_of(b: &BlowupComplex, label: Label) -> Result<Hyperplane> {
    let dual_edges: Vec<Cell> = b.cells(1).iter().copied().filter(|e| e.labels.contains(label)).collect();
    if dual_edges.is_empty() {
        return Err(Error::LabelAbsent);
    }
    let classes = dual_classes(b);
    let class = classes.iter().find(|c| c.contains(&dual_edges[0])).unwrap();
    if class.len() != dual_edges.len() || class.iter().any(|e| !e.labels.contains(label)) {
        return Err(Error::Construction("label edges are dual to more than one hyperplane"));
    }
    let mut carrier = BTreeSet::new();
    for c in b.all_cells().filter(|c| c.labels.contains(label)) {
        carrier.extend(b.closure(c));
    }
    Ok(Hyperplane { label, dual_edges, carrier })
}

// ----- link condition -----

/// Gromov's link condition: every vertex link is a flag simplicial complex.
pub fn check_flag(b: &BlowupComplex) -> bool {
    flag_violations(b).is_empty()
}

/// Regions whose link fails to be a flag simplicial complex.
pub fn flag_violations(b: &BlowupComplex) -> Vec<usize> {
    let mut out = Vec::new();
    for r in 0..b.regions.len() {
        if !link_is_flag(b, r) {
            out.push(r);
        }
    }
    out
}

/// Simplices of the link at region `r`, each a sorted list of edge-ends
/// `(edge, is_tip)`.
pub fn link_simplices(b: &BlowupComplex, r: usize) -> Vec<Vec<(Cell, bool)>> {
    let mut out = Vec::new();
    for c in b.all_cells().filter(|c| c.dim() > 0) {
        for eps in 0u32..1 << c.dim() {
            if b.corner(c, eps) != r {
                continue;
            }
            let mut simplex: Vec<(Cell, bool)> = c.labels.iter().map(|l| b.edge_at_corner(c, eps, l)).collect();
            simplex.sort();
            out.push(simplex);
        }
    }
    out
}

fn link_is_flag(b: &BlowupComplex, r: usize) -> bool {
    let simplices = link_simplices(b, r);
    let set: BTreeSet<Vec<(Cell, bool)>> = simplices.iter().cloned().collect();
    if set.len() != simplices.len() {
        return false;
    }
    let mut verts: Vec<(Cell, bool)> = simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    verts.sort();
    let idx = |x: &(Cell, bool)| verts.binary_search(x).ok();
    let m = verts.len();
    let mut adj = vec![0u128; m];
    for s in &simplices {
        if s.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if s.len() == 2 {
            let (i, j) = (idx(&s[0]).unwrap(), idx(&s[1]).unwrap());
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    // every clique of the 1-skeleton must span a simplex
    fn grow(cur: &mut Vec<usize>, cand: u128, adj: &[u128], verts: &[(Cell, bool)], set: &BTreeSet<Vec<(Cell, bool)>>) -> bool {
        if cur.len() >= 3 {
            let simplex: Vec<(Cell, bool)> = cur.iter().map(|&i| verts[i]).collect();
            if !set.contains(&simplex) {
                return false;
            }
        }
        for i in BitIter(cand) {
            cur.push(i);
            let higher = cand & !((2u128 << i) - 1);
            let ok = grow(cur, higher & adj[i], adj, verts, set);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let all = if m >= 128 { u128::MAX } else { (1u128 << m) - 1 };
    grow(&mut Vec::new(), all, &adj, &verts, &set)
}

/// No free faces: every codimension-one face of a maximal cube is attached
/// at least twice, counting every attachment to a cell one dimension up.
pub fn free_face_check(b: &BlowupComplex) -> bool {
    free_faces(b).is_empty()
}

/// Codimension-one faces of maximal cubes with a single coface attachment.
pub fn free_faces(b: &BlowupComplex) -> Vec<Cell> {
    let mut count: BTreeMap<Cell, usize> = BTreeMap::new();
    for c in b.all_cells() {
        for (_, _, f) in b.facets(c) {
            *count.entry(f).or_default() += 1;
        }
    }
    let mut out: BTreeSet<Cell> = BTreeSet::new();
    for c in b.maximal_cells() {
        for (_, _, f) in b.facets(c) {
            if count[&f] < 2 {
                out.insert(f);
            }
        }
    }
    out.into_iter().collect()
}

// ----- collapse -----

/// A cellular map; `images[d][i]` is the image of the `i`-th `d`-cell and
/// whether it drops dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalMap {
    pub images: Vec<Vec<(Cell, bool)>>,
}

impl CubicalMap {
    pub fn image(&self, b: &BlowupComplex, c: &Cell) -> (Cell, bool) {
        self.images[c.dim()][b.index_of(c).expect("cell of source")]
    }
}

fn drop_bit(r: u64, i: usize) -> u64 {
    let low = r & ((1u64 << i) - 1);
    let high = (r >> (i + 1)) << i;
    low | high
}

/// Relabel a label of `Π` into `Π ∖ {P_i}`.
fn drop_label(l: Label, n: usize, i: usize) -> Option<Label> {
    if l < n || l < n + i {
        Some(l)
    } else if l == n + i {
        None
    } else {
        Some(l - 1)
    }
}

fn drop_labels(s: LabelSet, n: usize, i: usize) -> LabelSet {
    s.iter().filter_map(|l| drop_label(l, n, i)).collect()
}

/// Collapse the hyperplane of partition `i`, verify the quotient is
/// cubically isomorphic to the blowup of the remaining partitions, and
/// return that blowup with the collapse map.
pub fn collapse_partition(b: &BlowupComplex, i: usize) -> Result<(BlowupComplex, CubicalMap)> {
    if i >= b.partitions.len() {
        return Err(Error::PartitionNotInCollection);
    }
    let n = b.graph.len();
    let p_label = n + i;
    let mut rest = b.partitions.clone();
    rest.remove(i);
    let target = BlowupComplex::build(&b.graph, &rest)?;

    let image_of = |c: &Cell| -> Result<(Cell, bool)> {
        let base = drop_bit(b.regions[c.base], i);
        let base = *target.region_index.get(&base).ok_or(Error::Construction("collapsed region missing"))?;
        let img = Cell { labels: drop_labels(c.labels, n, i), base };
        if !target.contains(&img) {
            return Err(Error::Construction("collapsed cell missing from smaller blowup"));
        }
        Ok((img, c.labels.contains(p_label)))
    };

    let mut images = Vec::with_capacity(b.cells.len());
    for dim in &b.cells {
        images.push(dim.iter().map(&image_of).collect::<Result<Vec<_>>>()?);
    }
    let map = CubicalMap { images };

    // fibres over each target cell among cells not crossing H_P
    let mut fibres: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    for c in b.all_cells().filter(|c| !c.labels.contains(p_label)) {
        fibres.entry(map.image(b, &c).0).or_default().push(c);
    }
    if fibres.len() != target.all_cells().count() {
        return Err(Error::Construction("collapse is not onto the smaller blowup"));
    }
    for (img, fibre) in &fibres {
        let crossed = Cell { labels: fibre[0].labels.with(p_label), base: fibre[0].base };
        let through = b.contains(&crossed)
            || b.region_after(fibre[0].base, b.masks[p_label])
                .is_some_and(|r| b.contains(&Cell { labels: crossed.labels, base: r }));
        let expected = if through { 2 } else { 1 };
        if fibre.len() != expected {
            return Err(Error::Construction("collapse identifies the wrong cells"));
        }
        if fibre.len() == 2 && b.regions[fibre[0].base] ^ b.regions[fibre[1].base] != b.masks[p_label] {
            return Err(Error::Construction("identified cells are not opposite across H_P"));
        }
        // faces commute with the map
        let mut mapped: Vec<(Label, bool, Cell)> =
            b.facets(fibre[0]).into_iter().map(|(l, s, f)| (drop_label(l, n, i).unwrap(), s, map.image(b, &f).0)).collect();
        let mut direct = target.facets(*img);
        mapped.sort();
        direct.sort();
        if mapped != direct {
            return Err(Error::Construction("collapse does not commute with faces"));
        }
    }
    Ok((target, map))
}

// ----- characteristic cycles -----

fn partition_bfs(b: &BlowupComplex, from: usize) -> Vec<usize> {
    let n = b.graph.len();
    let mut dist = vec![usize::MAX; b.regions.len()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(r) = q.pop_front() {
        for i in 0..b.partitions.len() {
            if let Some(s) = b.region_after(r, b.masks[n + i]) {
                if dist[s] == usize::MAX {
                    dist[s] = dist[r] + 1;
                    q.push_back(s);
                }
            }
        }
    }
    dist
}

/// The partition edge between `r` and its neighbor across `P_i`, traversed
/// from `r`.
fn partition_step(b: &BlowupComplex, r: usize, i: usize) -> Option<(Step, usize)> {
    let l = b.graph.len() + i;
    let s = b.region_after(r, b.masks[l])?;
    let forward = b.regions[r] >> i & 1 == 0;
    let base = if forward { r } else { s };
    Some((Step { edge: Cell { labels: LabelSet::singleton(l), base }, forward }, s))
}

/// Greedy descent from `from` to `to`: cross the least-index partition
/// separating the current region from `to` whose crossing stays a region.
fn descend(b: &BlowupComplex, from: usize, to: usize) -> Vec<Step> {
    let target = b.regions[to];
    let mut out = Vec::new();
    let mut r = from;
    while r != to {
        let (step, s) =
            BitIter((b.regions[r] ^ target) as u128).find_map(|i| partition_step(b, r, i)).expect("E^Π is a median graph");
        out.push(step);
        r = s;
    }
    out
}

fn reversed(path: Vec<Step>) -> Vec<Step> {
    path.into_iter().rev().map(|s| Step { edge: s.edge, forward: !s.forward }).collect()
}

/// The chosen shortest `E^Π` edge path between two regions.
///
/// Paths run through the median of the endpoints and region 0, descending
/// greedily from each endpoint. The choice is symmetric (the path from `y`
/// to `x` is the reverse of the path from `x` to `y`) and closed under
/// taking sub-paths, so two chosen paths meet in a connected set.
pub fn partition_geodesic(b: &BlowupComplex, from: usize, to: usize) -> Vec<Step> {
    let (x, y, z) = (b.regions[from], b.regions[to], b.regions[0]);
    let m = (x & y) | (x & z) | (y & z);
    let m = b.region_index[&m];
    let mut path = descend(b, from, m);
    path.extend(reversed(descend(b, to, m)));
    path
}

/// Label sets of every shortest `E^Π` path between two regions.
pub fn all_geodesic_label_sets(b: &BlowupComplex, from: usize, to: usize) -> BTreeSet<LabelSet> {
    let dist = partition_bfs(b, to);
    let mut out = BTreeSet::new();
    fn go(b: &BlowupComplex, r: usize, to: usize, acc: LabelSet, dist: &[usize], out: &mut BTreeSet<LabelSet>) {
        if r == to {
            out.insert(acc);
            return;
        }
        for i in 0..b.partitions.len() {
            if let Some((step, s)) = partition_step(b, r, i) {
                if dist[s] + 1 == dist[r] {
                    go(b, s, to, acc.union(step.edge.labels), dist, out);
                }
            }
        }
    }
    go(b, from, to, LabelSet::EMPTY, &dist, &mut out);
    out
}

/// The characteristic cycle through a `v`-edge: the edge, then a shortest
/// path in `E^Π` back to its base.
pub fn characteristic_cycle(b: &BlowupComplex, v: usize, edge: Cell) -> Result<EdgeCycle> {
    if edge.labels != LabelSet::singleton(v) || v >= b.graph.len() {
        return Err(Error::WrongEdgeLabel);
    }
    if !b.contains(&edge) {
        return Err(Error::LabelAbsent);
    }
    let (base, tip) = b.endpoints(edge);
    let mut steps = vec![Step { edge, forward: true }];
    steps.extend(partition_geodesic(b, tip, base));
    Ok(EdgeCycle { steps })
}

/// Characteristic cycles of `v`, one per `v`-edge.
pub fn characteristic_cycles(b: &BlowupComplex, v: usize) -> Vec<EdgeCycle> {
    b.cells(1)
        .iter()
        .filter(|e| e.labels == LabelSet::singleton(v))
        .map(|e| characteristic_cycle(b, v, *e).expect("v-edge"))
        .collect()
}

/// Vertices visited by a cycle, starting at the base of its first edge.
pub fn cycle_vertices(b: &BlowupComplex, c: &EdgeCycle) -> Vec<usize> {
    c.steps
        .iter()
        .map(|s| {
            let (base, tip) = b.endpoints(s.edge);
            if s.forward {
                base
            } else {
                tip
            }
        })
        .collect()
}

/// Image of a cycle under the standard collapse to the Salvetti complex:
/// the signed vertex letters it crosses.
pub fn collapse_cycle(b: &BlowupComplex, c: &EdgeCycle) -> Vec<SignedGenerator> {
    c.steps
        .iter()
        .filter_map(|s| {
            let l = b.edge_label(s.edge);
            b.is_vertex_label(l).then_some(SignedGenerator { vertex: l, inverse: !s.forward })
        })
        .collect()
}

/// The `f`-vector and Euler characteristic.
pub fn f_vector_euler(b: &BlowupComplex) -> (Vec<usize>, i64) {
    (b.f_vector(), b.euler_characteristic())
}
