//! Brute-force oracles written straight from the definitions. Shared by the
//! oracle tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use gammacx_core::{blowup::BlowupComplex, partition::WhiteheadPartition, DefiningGraph};

pub fn link(g: &DefiningGraph, v: usize) -> Vec<usize> {
    (0..g.len()).filter(|&u| u != v && g.adjacent(u, v)).collect()
}

pub fn components(g: &DefiningGraph, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for &s in verts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in verts {
                if !seen[y] && g.adjacent(x, y) {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Every side assignment of `V^±` to {+, −, link}, checked against the
/// definition for every possible base. Sides are bitmasks with bit `2v` for
/// `v` and `2v + 1` for `v^-1`.
pub fn partition_oracle(g: &DefiningGraph) -> BTreeSet<(u128, u128)> {
    let n = g.len();
    let mut out = BTreeSet::new();
    let total = 3usize.pow(2 * n as u32);
    for code in 0..total {
        let mut parts = vec![0u8; 2 * n];
        let mut c = code;
        for p in parts.iter_mut() {
            *p = (c % 3) as u8;
            c /= 3;
        }
        let side = |s: u8| -> u128 { (0..2 * n).filter(|&i| parts[i] == s).fold(0, |m, i| m | 1 << i) };
        let (plus, minus) = (side(0), side(1));
        let split = |v: usize| parts[2 * v] < 2 && parts[2 * v + 1] < 2 && parts[2 * v] != parts[2 * v + 1];
        let valid_for = |m: usize| {
            let lk = link(g, m);
            let link_ok = (0..n).all(|v| (parts[2 * v] == 2) == lk.contains(&v) && (parts[2 * v + 1] == 2) == lk.contains(&v));
            if !link_ok || !split(m) || plus.count_ones() < 2 || minus.count_ones() < 2 {
                return false;
            }
            let outside: Vec<usize> = (0..n).filter(|&v| v != m && !lk.contains(&v)).collect();
            let comps_ok = components(g, &outside).iter().filter(|c| c.len() >= 2).all(|c| {
                let s = parts[2 * c[0]];
                c.iter().all(|&v| parts[2 * v] == s && parts[2 * v + 1] == s)
            });
            let folds_ok = (0..n).filter(|&v| split(v)).all(|v| link(g, v).iter().all(|u| lk.contains(u)));
            comps_ok && folds_ok
        };
        if (0..n).any(valid_for) {
            out.insert((plus.min(minus), plus.max(minus)));
        }
    }
    out
}

/// A label of the oracle blowup: a vertex or a partition index.
#[derive(Clone, Copy, PartialEq)]
pub enum Lab {
    V(usize),
    P(usize),
}

pub struct Oracle<'a> {
    pub g: &'a DefiningGraph,
    pub parts: &'a [WhiteheadPartition],
}

impl Oracle<'_> {
    pub fn bit(x: usize, inverse: bool) -> u128 {
        1 << (2 * x + inverse as usize)
    }

    /// Chosen side of partition `i` in assignment `r` (bit set = minus).
    pub fn side(&self, r: u64, i: usize) -> u128 {
        if r >> i & 1 == 1 {
            self.parts[i].minus.0
        } else {
            self.parts[i].plus.0
        }
    }

    pub fn splits(&self, i: usize, v: usize) -> bool {
        let p = &self.parts[i];
        let (a, b) = (Self::bit(v, false), Self::bit(v, true));
        (p.plus.0 & a != 0 && p.minus.0 & b != 0) || (p.minus.0 & a != 0 && p.plus.0 & b != 0)
    }

    pub fn max(&self, i: usize) -> Vec<usize> {
        let lk = link(self.g, self.parts[i].base);
        (0..self.g.len()).filter(|&v| self.splits(i, v) && link(self.g, v) == lk).collect()
    }

    pub fn adjacent(&self, x: Lab, y: Lab) -> bool {
        match (x, y) {
            (Lab::V(a), Lab::V(b)) => a != b && self.g.adjacent(a, b),
            (Lab::V(a), Lab::P(i)) | (Lab::P(i), Lab::V(a)) => link(self.g, self.parts[i].base).contains(&a),
            (Lab::P(i), Lab::P(j)) => {
                i != j && self.max(i).iter().all(|&a| self.max(j).iter().all(|&b| a != b && self.g.adjacent(a, b)))
            }
        }
    }

    pub fn regions(&self) -> Vec<u64> {
        let k = self.parts.len();
        (0u64..1 << k)
            .filter(|&r| {
                (0..k).all(|i| (i + 1..k).all(|j| self.adjacent(Lab::P(i), Lab::P(j)) || self.side(r, i) & self.side(r, j) != 0))
            })
            .collect()
    }

    /// `r` contains every side containing `v`.
    pub fn terminal(&self, r: u64, v: usize) -> bool {
        (0..self.parts.len()).all(|i| {
            let p = &self.parts[i];
            let b = Self::bit(v, false);
            (p.plus.0 | p.minus.0) & b == 0 || self.side(r, i) & b != 0
        })
    }

    pub fn toggle(&self, l: Lab) -> u64 {
        match l {
            Lab::P(i) => 1 << i,
            Lab::V(v) => (0..self.parts.len()).filter(|&i| self.splits(i, v)).fold(0, |m, i| m | 1 << i),
        }
    }

    /// Cells counted as (pairwise adjacent labels, base corner): every
    /// partition label on its plus side, every vertex label terminal, and
    /// every corner a region.
    pub fn f_vector(&self) -> Vec<usize> {
        let n = self.g.len();
        let labels: Vec<Lab> = (0..n).map(Lab::V).chain((0..self.parts.len()).map(Lab::P)).collect();
        let regions = self.regions();
        let mut f = vec![0usize; labels.len() + 1];
        for subset in 0u64..1 << labels.len() {
            let chosen: Vec<Lab> = (0..labels.len()).filter(|&i| subset >> i & 1 == 1).map(|i| labels[i]).collect();
            if !chosen.iter().enumerate().all(|(i, &x)| chosen[i + 1..].iter().all(|&y| self.adjacent(x, y))) {
                continue;
            }
            for &r in &regions {
                let at_base = chosen.iter().all(|&l| match l {
                    Lab::P(i) => r >> i & 1 == 0,
                    Lab::V(v) => self.terminal(r, v),
                });
                let corners_ok = (0u64..1 << chosen.len()).all(|eps| {
                    let c = (0..chosen.len()).filter(|&i| eps >> i & 1 == 1).fold(r, |acc, i| acc ^ self.toggle(chosen[i]));
                    regions.contains(&c)
                });
                if at_base && corners_ok {
                    f[chosen.len()] += 1;
                }
            }
        }
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        f
    }
}

pub fn clique_counts(g: &DefiningGraph) -> Vec<usize> {
    let n = g.len();
    let mut f = vec![0usize; n + 1];
    for s in 0u64..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        if vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.adjacent(a, b))) {
            f[vs.len()] += 1;
        }
    }
    while *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

/// Distance in the graph of partition edges, by breadth-first search.
pub fn partition_distance(b: &BlowupComplex, from: usize, to: usize) -> usize {
    let regions = b.regions();
    let k = b.partitions().len();
    let mut dist = vec![usize::MAX; regions.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for i in 0..k {
            if let Some(y) = regions.iter().position(|&r| r == regions[x] ^ 1 << i) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    dist[to]
}

pub fn splitters(b: &BlowupComplex, v: usize) -> BTreeSet<usize> {
    let n = b.graph().len();
    (0..b.partitions().len()).filter(|&i| b.partitions()[i].splits(v)).map(|i| n + i).collect()
}

pub fn product_polynomial(lengths: &[usize]) -> Vec<usize> {
    let mut f = vec![1usize];
    for &l in lengths {
        let mut next = vec![0; f.len() + 1];
        for (k, &c) in f.iter().enumerate() {
            next[k] += c * l;
            next[k + 1] += c * l;
        }
        f = next;
    }
    f
}
