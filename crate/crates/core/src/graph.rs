//! The defining graph of a right-angled Artin group.

use alloc::{
    borrow::ToOwned,
    string::{String, ToString},
    vec,
    vec::Vec,
};

use crate::{set::VertexSet, Error, Result};

/// Which neighborhood of a vertex: `lk(v)` or `st(v) = {v} ∪ lk(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    Link,
    Star,
}

/// Fold order compares links, twist order compares stars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Fold,
    Twist,
}

/// A finite simple graph with a fixed vertex order.
///
/// Vertices are addressed by index in declaration order; that order drives
/// every deterministic iteration in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningGraph {
    names: Vec<String>,
    adj: Vec<VertexSet>,
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        if vertices.len() > 63 {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if names.iter().any(|n| n == v) {
                return Err(Error::DuplicateVertex(v.to_owned()));
            }
            names.push(v.to_owned());
        }
        let mut g = DefiningGraph { adj: vec![VertexSet::EMPTY; names.len()], names };
        for (a, b) in edges {
            let (i, j) = (g.index(a.as_ref())?, g.index(b.as_ref())?);
            if i == j {
                return Err(Error::SelfLoop(a.as_ref().to_owned()));
            }
            if g.adj[i].contains(j) {
                return Err(Error::DuplicateEdge(a.as_ref().to_owned(), b.as_ref().to_owned()));
            }
            g.adj[i].insert(j);
            g.adj[j].insert(i);
        }
        Ok(g)
    }

    /// Graph on vertices named `a`, `b`, ... from an index edge list.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Self {
        let names: Vec<String> = (0..n).map(default_name).collect();
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(i, j) in edges {
            assert!(i != j && i < n && j < n);
            adj[i].insert(j);
            adj[j].insert(i);
        }
        DefiningGraph { names, adj }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    pub fn neighborhood(&self, v: usize, kind: Neighborhood) -> VertexSet {
        match kind {
            Neighborhood::Link => self.link(v),
            Neighborhood::Star => self.star(v),
        }
    }

    /// `u ≤_f v` (`lk(u) ⊆ lk(v)`) or `u ≤_t v` (`st(u) ⊆ st(v)`).
    pub fn order_leq(&self, u: usize, v: usize, kind: OrderKind) -> bool {
        match kind {
            OrderKind::Fold => self.link(u).is_subset(self.link(v)),
            OrderKind::Twist => self.star(u).is_subset(self.star(v)),
        }
    }

    /// Some `w ≠ v` satisfies `w ≤_t v`.
    pub fn twist_dominant(&self, v: usize) -> bool {
        (0..self.len()).any(|w| w != v && self.order_leq(w, v, OrderKind::Twist))
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(self.adj[v]))
    }

    /// Maximal cliques, each listed once, sorted by bitmask.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if !self.is_empty() {
            self.bron_kerbosch(VertexSet::EMPTY, self.vertices(), VertexSet::EMPTY, &mut out);
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p.union(x).iter().max_by_key(|&u| p.intersection(self.adj[u]).len()).unwrap();
        let (mut p, mut x) = (p, x);
        for v in p.difference(self.adj[pivot]).iter() {
            let nv = self.adj[v];
            let mut r2 = r;
            r2.insert(v);
            self.bron_kerbosch(r2, p.intersection(nv), x.intersection(nv), out);
            p.remove(v);
            x.insert(v);
        }
    }

    /// Intersection of all maximal cliques; equals `{v : st(v) = V}`.
    pub fn central_clique(&self) -> VertexSet {
        self.maximal_cliques().into_iter().fold(self.vertices(), |acc, c| acc.intersection(c))
    }

    /// Connected components of the subgraph induced on `s`, ordered by least vertex.
    pub fn components(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v].intersection(s));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Components of `Γ ∖ st(v)`.
    pub fn components_minus_star(&self, v: usize) -> Vec<VertexSet> {
        self.components(self.vertices().difference(self.star(v)))
    }

    /// Number of `k`-cliques for `k = 0..=ω`, counting the empty clique.
    pub fn clique_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.len() + 1];
        self.count_cliques(VertexSet::EMPTY, self.vertices(), &mut counts);
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        counts
    }

    fn count_cliques(&self, r: VertexSet, cand: VertexSet, counts: &mut [usize]) {
        counts[r.len()] += 1;
        for v in cand.iter() {
            let mut r2 = r;
            r2.insert(v);
            // only extend by larger vertices so each clique is counted once
            let higher = VertexSet(cand.0 & !((2u64 << v) - 1));
            self.count_cliques(r2, higher.intersection(self.adj[v]), counts);
        }
    }

    /// All vertex permutations preserving adjacency; `perm[v]` is the image of `v`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = VertexSet::EMPTY;
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, v: usize, perm: &mut [usize], used: &mut VertexSet, out: &mut Vec<Vec<usize>>) {
        let n = self.len();
        if v == n {
            out.push(perm.to_vec());
            return;
        }
        for image in 0..n {
            if used.contains(image) || self.adj[v].len() != self.adj[image].len() {
                continue;
            }
            let consistent = (0..v).all(|u| self.adjacent(u, v) == self.adjacent(perm[u], image));
            if !consistent {
                continue;
            }
            perm[v] = image;
            used.insert(image);
            self.extend_automorphism(v + 1, perm, used, out);
            used.remove(image);
        }
        perm[v] = usize::MAX;
    }

    /// Adjacency bitmask of the upper triangle, used as a labeled-graph code.
    fn edge_code(&self) -> u64 {
        let n = self.len();
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacent(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }
}

pub fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        alloc::format!("v{i}")
    }
}

/// One representative of every isomorphism class of simple graphs on
/// `1..=max_n` vertices. The representative is the labeling with the least
/// edge code.
pub fn small_graphs(max_n: usize) -> Vec<DefiningGraph> {
    assert!(max_n <= 6, "exhaustive enumeration is only meant for tiny graphs");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = alloc::collections::BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            let canon = perms
                .iter()
                .map(|p| {
                    let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (p[i], p[j])).collect();
                    DefiningGraph::from_indices(n, &relabeled).edge_code()
                })
                .min()
                .unwrap();
            if seen.insert(canon) && canon == mask {
                out.push(DefiningGraph::from_indices(n, &edges));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    go(n, &mut cur, &mut out);
    out
}

/// The small graphs used throughout the documentation and tests.
pub mod fixtures {
    use super::DefiningGraph;

    /// A single edge `a–b`.
    pub fn e2() -> DefiningGraph {
        DefiningGraph::from_indices(2, &[(0, 1)])
    }

    /// Two isolated vertices.
    pub fn d2() -> DefiningGraph {
        DefiningGraph::from_indices(2, &[])
    }

    /// Path `a–b–c`.
    pub fn p3() -> DefiningGraph {
        DefiningGraph::from_indices(3, &[(0, 1), (1, 2)])
    }

    /// Triangle.
    pub fn k3() -> DefiningGraph {
        DefiningGraph::from_indices(3, &[(0, 1), (1, 2), (0, 2)])
    }

    /// 4-cycle `a–b–c–d–a`.
    pub fn c4() -> DefiningGraph {
        DefiningGraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    /// Vertices `a, b, w` with the single edge `a–b`.
    pub fn f3() -> DefiningGraph {
        DefiningGraph::new(&["a", "b", "w"], &[("a", "b")]).unwrap()
    }

    pub fn all() -> [(&'static str, DefiningGraph); 6] {
        [("E2", e2()), ("D2", d2()), ("P3", p3()), ("K3", k3()), ("C4", c4()), ("F3", f3())]
    }
}
