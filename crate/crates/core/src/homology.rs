//! Integer cellular homology of cube complexes.

use alloc::{collections::BTreeMap, vec, vec::Vec};

use crate::blowup::{BlowupComplex, Cell};

/// Homology in one degree: free rank and torsion coefficients (> 1).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Boundary of `cols` into `rows`. The facet of a cube across its `i`-th
/// label carries sign `(-1)^i` on the far side and `-(-1)^i` on the near.
pub fn boundary_matrix(b: &BlowupComplex, cols: &[Cell], rows: &[Cell]) -> Vec<Vec<i64>> {
    let row_index: BTreeMap<Cell, usize> = rows.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (pos, (_, far, f)) in b.facets(*c).into_iter().enumerate() {
            let i = pos / 2;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            if let Some(&r) = row_index.get(&f) {
                m[r][j] += if far { sign } else { -sign };
            }
        }
    }
    m
}

/// Nonzero invariant factors of an integer matrix.
pub fn invariant_factors(mut m: Vec<Vec<i64>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // divisibility: fold any entry not divisible by the pivot into row t
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t onto the pivot
            let mut bi = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            m.swap(t, bi.0);
            for row in m.iter_mut() {
                row.swap(t, bi.1);
            }
        }
        out.push(m[t][t].unsigned_abs());
        t += 1;
    }
    out
}

/// Integer homology `H_0, ..., H_dim`.
pub fn homology(b: &BlowupComplex) -> Vec<HomologyGroup> {
    let dim = b.dim();
    // factors[k] = invariant factors of ∂_k : C_k -> C_{k-1}
    let mut factors: Vec<Vec<u64>> = vec![Vec::new(); dim + 2];
    for (k, f) in factors.iter_mut().enumerate().take(dim + 1).skip(1) {
        *f = invariant_factors(boundary_matrix(b, b.cells(k), b.cells(k - 1)));
    }
    (0..=dim)
        .map(|k| {
            let ck = b.cells(k).len();
            let rank_out = factors[k].len();
            let incoming = &factors[k + 1];
            HomologyGroup { rank: ck - rank_out - incoming.len(), torsion: incoming.iter().copied().filter(|&d| d > 1).collect() }
        })
        .collect()
}

pub fn betti_numbers(b: &BlowupComplex) -> Vec<usize> {
    homology(b).into_iter().map(|h| h.rank).collect()
}

/// Connected with trivial homology in positive degrees.
pub fn is_acyclic(b: &BlowupComplex) -> bool {
    let h = homology(b);
    h[0].rank == 1 && h[0].torsion.is_empty() && h[1..].iter().all(|g| g.is_trivial())
}

/// Homology of a subcomplex given as a set of cells closed under faces.
pub fn subcomplex_homology(b: &BlowupComplex, cells: &[Cell]) -> Vec<HomologyGroup> {
    let dim = cells.iter().map(|c| c.dim()).max().unwrap_or(0);
    let by_dim: Vec<Vec<Cell>> = (0..=dim).map(|k| cells.iter().copied().filter(|c| c.dim() == k).collect()).collect();
    let mut factors: Vec<Vec<u64>> = vec![Vec::new(); dim + 2];
    for k in 1..=dim {
        factors[k] = invariant_factors(boundary_matrix(b, &by_dim[k], &by_dim[k - 1]));
    }
    (0..=dim)
        .map(|k| HomologyGroup {
            rank: by_dim[k].len() - factors[k].len() - factors[k + 1].len(),
            torsion: factors[k + 1].iter().copied().filter(|&d| d > 1).collect(),
        })
        .collect()
}

/// Nonempty, connected and acyclic. For the cube complexes here (aspherical
/// pieces of NPC complexes) this is the contractibility test.
pub fn subcomplex_acyclic(b: &BlowupComplex, cells: &[Cell]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let h = subcomplex_homology(b, cells);
    h[0].rank == 1 && h[0].torsion.is_empty() && h[1..].iter().all(|g| g.is_trivial())
}
