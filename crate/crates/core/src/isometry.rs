//! Cubical metric automorphisms of a blowup, their action on `H_1`, and the
//! audit that the isometries acting trivially on homology are central
//! translations.

use alloc::{collections::BTreeMap, format, string::String, vec, vec::Vec};

use crate::{
    blowup::{characteristic_cycles, BlowupComplex, Cell, Label, LabelSet},
    metric::{SkewedStructure, TOLERANCE},
    set::VertexSet,
    tori::{torus_coordinates, MaximalTorus},
    Error, Result,
};

/// A cubical automorphism. `edges[i] = (j, flipped)` sends the `i`-th edge
/// to the `j`-th, exchanging its ends when `flipped`. `cubes[k]` maps the
/// `k`-cubes for `k ≥ 2` (empty for `k < 2`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicalIsometry {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, bool)>,
    pub cubes: Vec<Vec<usize>>,
}

impl CubicalIsometry {
    pub fn identity(b: &BlowupComplex) -> Self {
        CubicalIsometry {
            vertices: (0..b.cells(0).len()).collect(),
            edges: (0..b.cells(1).len()).map(|i| (i, false)).collect(),
            cubes: (0..=b.dim()).map(|k| if k < 2 { Vec::new() } else { (0..b.cells(k).len()).collect() }).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v) && self.edges.iter().enumerate().all(|(i, &(e, f))| i == e && !f)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CubicalIsometry) -> CubicalIsometry {
        CubicalIsometry {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other
                .edges
                .iter()
                .map(|&(e, f)| {
                    let (e2, f2) = self.edges[e];
                    (e2, f ^ f2)
                })
                .collect(),
            cubes: other.cubes.iter().zip(&self.cubes).map(|(o, s)| o.iter().map(|&c| s[c]).collect()).collect(),
        }
    }

    pub fn inverse(&self) -> CubicalIsometry {
        let invert = |m: &[usize]| {
            let mut out = vec![0; m.len()];
            for (i, &j) in m.iter().enumerate() {
                out[j] = i;
            }
            out
        };
        let mut edges = vec![(0, false); self.edges.len()];
        for (i, &(j, f)) in self.edges.iter().enumerate() {
            edges[j] = (i, f);
        }
        CubicalIsometry { vertices: invert(&self.vertices), edges, cubes: self.cubes.iter().map(|m| invert(m)).collect() }
    }

    /// Image of a cell of the complex.
    pub fn image(&self, b: &BlowupComplex, c: &Cell) -> Cell {
        let i = b.index_of(c).expect("cell of the complex");
        match c.dim() {
            0 => b.cells(0)[self.vertices[i]],
            1 => b.cells(1)[self.edges[i].0],
            k => b.cells(k)[self.cubes[k][i]],
        }
    }
}

type EdgeEnd = (usize, bool);

struct Frame<'a> {
    b: &'a BlowupComplex,
    edge_ends: Vec<(usize, usize)>,
    /// `(vertex, sorted edge-ends)` to `(cube dimension, index, corner)`.
    simplices: BTreeMap<(usize, Vec<EdgeEnd>), (usize, usize, u32)>,
}

impl<'a> Frame<'a> {
    fn new(b: &'a BlowupComplex) -> Self {
        let edge_ends = b.cells(1).iter().map(|e| b.endpoints(*e)).collect();
        let mut simplices = BTreeMap::new();
        for k in 2..=b.dim() {
            for (ci, c) in b.cells(k).iter().enumerate() {
                for eps in 0u32..1 << k {
                    simplices.insert((b.corner(*c, eps), Self::ends_at(b, *c, eps)), (k, ci, eps));
                }
            }
        }
        Frame { b, edge_ends, simplices }
    }

    /// Edge-ends at corner `eps` of `c`, sorted.
    fn ends_at(b: &BlowupComplex, c: Cell, eps: u32) -> Vec<EdgeEnd> {
        let mut v: Vec<EdgeEnd> = c
            .labels
            .iter()
            .map(|l| {
                let (e, tip) = b.edge_at_corner(c, eps, l);
                (b.index_of(&e).unwrap(), tip)
            })
            .collect();
        v.sort();
        v
    }

    /// Edge-ends at corner `eps` of `c`, in label order.
    fn ends_in_order(b: &BlowupComplex, c: Cell, eps: u32) -> Vec<EdgeEnd> {
        c.labels
            .iter()
            .map(|l| {
                let (e, tip) = b.edge_at_corner(c, eps, l);
                (b.index_of(&e).unwrap(), tip)
            })
            .collect()
    }
}

fn lengths_equal(s: &SkewedStructure, x: Label, y: Label) -> bool {
    libm::fabs(s.lengths[x] - s.lengths[y]) <= TOLERANCE
}

/// Signed Gram entry of two outgoing edge-ends at a corner.
fn corner_gram(s: &SkewedStructure, x: (Label, bool), y: (Label, bool)) -> f64 {
    let g = if x.0 == y.0 { s.lengths[x.0] * s.lengths[x.0] } else { s.gram_entry(x.0, y.0).unwrap_or(0.0) };
    if x.1 ^ y.1 {
        -g
    } else {
        g
    }
}

/// Extend an edge and vertex assignment to cubes, checking incidence and
/// corner Gram matrices. `None` if it is not a metric automorphism.
fn complete(fr: &Frame<'_>, s: &SkewedStructure, vertices: &[usize], edges: &[(usize, bool)]) -> Option<CubicalIsometry> {
    let b = fr.b;
    let label = |e: usize| b.edge_label(b.cells(1)[e]);
    let map_end = |(e, tip): EdgeEnd| {
        let (e2, f) = edges[e];
        (e2, tip ^ f)
    };
    let mut cubes: Vec<Vec<usize>> = vec![Vec::new(); b.dim() + 1];
    for k in 2..=b.dim() {
        let mut used = vec![false; b.cells(k).len()];
        for c in b.cells(k) {
            let ends0 = Frame::ends_in_order(b, *c, 0);
            let mut image0: Vec<EdgeEnd> = ends0.iter().map(|&x| map_end(x)).collect();
            image0.sort();
            let &(dim, t, eps0) = fr.simplices.get(&(vertices[b.corner(*c, 0)], image0))?;
            if dim != k {
                return None;
            }
            let target = b.cells(k)[t];
            let target_ends = Frame::ends_in_order(b, target, eps0);
            // direction i of `c` goes to direction dir[i] of the target
            let dir: Vec<usize> =
                ends0.iter().map(|&x| target_ends.iter().position(|&y| y == map_end(x))).collect::<Option<_>>()?;
            for eps in 0u32..1 << k {
                let image_eps = (0..k).filter(|&i| eps >> i & 1 == 1).fold(eps0, |acc, i| acc ^ 1 << dir[i]);
                let ends = Frame::ends_in_order(b, *c, eps);
                let there = Frame::ends_in_order(b, target, image_eps);
                if (0..k).any(|i| map_end(ends[i]) != there[dir[i]]) {
                    return None;
                }
                for i in 0..k {
                    for j in 0..k {
                        let (x, y) = (ends[i], ends[j]);
                        let (p, q) = (there[dir[i]], there[dir[j]]);
                        let before = corner_gram(s, (label(x.0), x.1), (label(y.0), y.1));
                        let after = corner_gram(s, (label(p.0), p.1), (label(q.0), q.1));
                        if libm::fabs(before - after) > TOLERANCE {
                            return None;
                        }
                    }
                }
            }
            if used[t] {
                return None;
            }
            used[t] = true;
            cubes[k].push(t);
        }
    }
    Some(CubicalIsometry { vertices: vertices.to_vec(), edges: edges.to_vec(), cubes })
}

/// Every cubical automorphism preserving edge lengths and corner Gram
/// matrices, sorted.
pub fn cubical_isometries(b: &BlowupComplex, s: &SkewedStructure) -> Vec<CubicalIsometry> {
    let fr = Frame::new(b);
    let ne = b.cells(1).len();
    let nv = b.cells(0).len();
    let label = |e: usize| b.edge_label(b.cells(1)[e]);

    // edges ordered so each after the first touches an earlier endpoint
    let mut order: Vec<usize> = Vec::with_capacity(ne);
    let mut seen_v = vec![false; nv];
    let mut placed = vec![false; ne];
    while order.len() < ne {
        let next = (0..ne)
            .filter(|&e| !placed[e])
            .find(|&e| seen_v[fr.edge_ends[e].0] || seen_v[fr.edge_ends[e].1])
            .unwrap_or_else(|| (0..ne).find(|&e| !placed[e]).unwrap());
        placed[next] = true;
        seen_v[fr.edge_ends[next].0] = true;
        seen_v[fr.edge_ends[next].1] = true;
        order.push(next);
    }

    struct State {
        vmap: Vec<Option<usize>>,
        vused: Vec<bool>,
        emap: Vec<(usize, bool)>,
        eused: Vec<bool>,
    }
    let mut st = State { vmap: vec![None; nv], vused: vec![false; nv], emap: vec![(0, false); ne], eused: vec![false; ne] };
    let mut out = Vec::new();

    fn assign(st: &mut State, x: usize, y: usize, undo: &mut Vec<usize>) -> bool {
        match st.vmap[x] {
            Some(z) => z == y,
            None if st.vused[y] => false,
            None => {
                st.vmap[x] = Some(y);
                st.vused[y] = true;
                undo.push(x);
                true
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        order: &[usize],
        st: &mut State,
        fr: &Frame<'_>,
        s: &SkewedStructure,
        label: &dyn Fn(usize) -> Label,
        out: &mut Vec<CubicalIsometry>,
    ) {
        let ne = order.len();
        if i == ne {
            if st.vmap.iter().all(|v| v.is_some()) {
                let vertices: Vec<usize> = st.vmap.iter().map(|v| v.unwrap()).collect();
                if let Some(f) = complete(fr, s, &vertices, &st.emap) {
                    out.push(f);
                }
            }
            return;
        }
        let e = order[i];
        let (x, y) = fr.edge_ends[e];
        for t in 0..ne {
            if st.eused[t] || !lengths_equal(s, label(e), label(t)) {
                continue;
            }
            let (tx, ty) = fr.edge_ends[t];
            if (x == y) != (tx == ty) {
                continue;
            }
            for flip in [false, true] {
                let (ix, iy) = if flip { (ty, tx) } else { (tx, ty) };
                let mut undo = Vec::new();
                if assign(st, x, ix, &mut undo) && assign(st, y, iy, &mut undo) {
                    st.eused[t] = true;
                    st.emap[e] = (t, flip);
                    go(i + 1, order, st, fr, s, label, out);
                    st.eused[t] = false;
                }
                for v in undo {
                    st.vused[st.vmap[v].unwrap()] = false;
                    st.vmap[v] = None;
                }
            }
        }
    }

    if ne == 0 {
        return vec![CubicalIsometry::identity(b)];
    }
    go(0, &order, &mut st, &fr, s, &label, &mut out);
    out.sort();
    out
}

/// Closed under composition and inverses, and contains the identity.
pub fn is_group(b: &BlowupComplex, group: &[CubicalIsometry]) -> bool {
    let mut sorted = group.to_vec();
    sorted.sort();
    let has = |f: &CubicalIsometry| sorted.binary_search(f).is_ok();
    has(&CubicalIsometry::identity(b))
        && group.iter().all(|f| has(&f.inverse()))
        && group.iter().all(|f| group.iter().all(|g| has(&f.compose(g))))
}

/// Square integer matrix indexed by the vertices of `Γ`; column `v` is the
/// image of the class of `v`.
pub type H1Matrix = Vec<Vec<i64>>;

/// Action on `H_1 = Z^V`: push a characteristic cycle of each `v` through
/// `f`, collapse to the Salvetti complex, abelianize.
pub fn h1_action(b: &BlowupComplex, f: &CubicalIsometry) -> H1Matrix {
    let n = b.graph().len();
    let mut m = vec![vec![0i64; n]; n];
    for v in 0..n {
        let cycle = characteristic_cycles(b, v).into_iter().next().expect("every vertex labels an edge");
        for step in &cycle.steps {
            let (e, flip) = f.edges[b.index_of(&step.edge).unwrap()];
            let l = b.edge_label(b.cells(1)[e]);
            if b.is_vertex_label(l) {
                m[l][v] += if step.forward ^ flip { 1 } else { -1 };
            }
        }
    }
    m
}

pub fn identity_matrix(n: usize) -> H1Matrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn matmul(a: &H1Matrix, b: &H1Matrix) -> H1Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Bareiss fraction-free determinant.
pub fn determinant(m: &H1Matrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Least `k ≥ 1` with `m^k = I`, searching up to `bound`.
pub fn matrix_order(m: &H1Matrix, bound: usize) -> Option<usize> {
    let id = identity_matrix(m.len());
    let mut p = m.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = matmul(&p, m);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralDecomposition {
    pub center: VertexSet,
    /// Cells with no central label.
    pub complement: Vec<Cell>,
    pub complement_f_vector: Vec<usize>,
    pub f_vector: Vec<usize>,
    pub violations: Vec<String>,
}

impl CentralDecomposition {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `B = X₀ × T_Z` cellwise, with `T_Z` the product of the central loops.
pub fn central_decomposition(b: &BlowupComplex) -> CentralDecomposition {
    let g = b.graph();
    let center = g.central_clique();
    let zl = LabelSet(center.0 as u128);
    let mut violations = Vec::new();
    for (i, p) in b.partitions().iter().enumerate() {
        if center.iter().any(|v| p.splits(v)) {
            violations.push(format!("P{i} splits a central vertex"));
        }
    }
    let complement: Vec<Cell> = b.all_cells().filter(|c| c.labels.intersection(zl).is_empty()).collect();
    let mut hit = 0usize;
    let subsets: Vec<LabelSet> = (0u128..1 << center.len())
        .map(|m| center.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| v).collect())
        .collect();
    for c in &complement {
        for z in &subsets {
            let cell = Cell { labels: c.labels.union(*z), base: c.base };
            if b.contains(&cell) {
                hit += 1;
            } else {
                violations.push(format!("missing product cell {:?}", cell));
            }
        }
    }
    let total = b.all_cells().count();
    if hit != total {
        violations.push(format!("product covers {hit} of {total} cells"));
    }
    let complement_f_vector = crate::tori::f_vector_of(&complement);
    // f(B) = f(X₀) · (1 + x)^|Z|
    let mut expected = complement_f_vector.clone();
    for _ in 0..center.len() {
        let mut next = vec![0; expected.len() + 1];
        for (k, &f) in expected.iter().enumerate() {
            next[k] += f;
            next[k + 1] += f;
        }
        expected = next;
    }
    let f_vector = b.f_vector();
    if expected != f_vector {
        violations.push(format!("f-vector {:?} is not {:?}", f_vector, expected));
    }
    CentralDecomposition { center, complement, complement_f_vector, f_vector, violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    /// Shift along each cycle of the torus, in cycle order.
    pub shift: Vec<usize>,
    pub violations: Vec<String>,
}

/// Restrict an isometry acting trivially on `H_1` to a maximal torus and
/// certify that it is a translation along central coordinates.
pub fn restriction_to_torus(b: &BlowupComplex, f: &CubicalIsometry, t: &MaximalTorus) -> Result<TranslationReport> {
    if h1_action(b, f) != identity_matrix(b.graph().len()) {
        return Err(Error::NontrivialH1);
    }
    let mut violations = Vec::new();
    for c in &t.cells {
        if !t.cells.contains(&f.image(b, c)) {
            violations.push(format!("{:?} leaves the torus", c));
        }
    }
    let lengths = t.cycle_lengths();
    let mut shift: Option<Vec<usize>> = None;
    for x in t.vertices() {
        let (Some(p), Some(q)) = (torus_coordinates(b, t, x), torus_coordinates(b, t, f.vertices[x])) else {
            violations.push(format!("vertex {x} has no torus coordinates"));
            continue;
        };
        let s: Vec<usize> = (0..lengths.len()).map(|i| (q[i] + lengths[i] - p[i]) % lengths[i]).collect();
        match &shift {
            None => shift = Some(s),
            Some(prev) if *prev != s => violations.push(String::from("restriction is not a shift")),
            Some(_) => {}
        }
    }
    let shift = shift.unwrap_or_else(|| vec![0; lengths.len()]);
    let center = b.graph().central_clique();
    for (i, v) in t.clique.iter().enumerate() {
        if shift[i] != 0 && !center.contains(v) {
            violations.push(format!("shift along non-central cycle {}", b.graph().name(v)));
        }
    }
    Ok(TranslationReport { shift, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub group_order: usize,
    pub kernel_order: usize,
    /// Distinct `H_1` matrices of the group, sorted.
    pub h1_images: Vec<H1Matrix>,
    pub injective: bool,
    pub violations: Vec<String>,
}

/// The trivial-`H_1` subgroup must consist of central translations; with
/// single-loop central circles that is the identity alone.
pub fn trivial_h1_audit(b: &BlowupComplex, s: &SkewedStructure) -> AuditReport {
    let group = cubical_isometries(b, s);
    let n = b.graph().len();
    let id = identity_matrix(n);
    let mut violations = Vec::new();
    if !is_group(b, &group) {
        violations.push(String::from("isometries do not form a group"));
    }
    let mats: Vec<H1Matrix> = group.iter().map(|f| h1_action(b, f)).collect();
    for (f, m) in group.iter().zip(&mats) {
        let d = determinant(m);
        if d != 1 && d != -1 {
            violations.push(format!("determinant {d}"));
        }
        if matrix_order(m, group.len()).is_none() {
            violations.push(String::from("h1 image of infinite order"));
        }
        if *m == id && !f.is_identity() {
            violations.push(String::from("nontrivial isometry acts trivially on H1"));
        }
    }
    for (i, f) in group.iter().enumerate().take(8) {
        for (j, g) in group.iter().enumerate().take(8) {
            if h1_action(b, &f.compose(g)) != matmul(&mats[i], &mats[j]) {
                violations.push(String::from("h1 action is not a homomorphism"));
            }
        }
    }
    let kernel_order = mats.iter().filter(|m| **m == id).count();
    let mut h1_images = mats.clone();
    h1_images.sort();
    h1_images.dedup();
    let injective = h1_images.len() == group.len();
    if kernel_order == 1 && !injective {
        violations.push(String::from("distinct isometries share an H1 image"));
    }
    AuditReport { group_order: group.len(), kernel_order, h1_images, injective, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::metric::{random_allowable, TotalLabelOrder};
    use crate::partition::tests::part;
    use crate::tori::all_maximal_tori;

    #[test]
    fn rose_isometries() {
        let b = BlowupComplex::salvetti(&d2());
        let unit = SkewedStructure::unit(&b);
        let g = cubical_isometries(&b, &unit);
        assert_eq!(g.len(), 8);
        assert!(is_group(&b, &g));
        let distinct = SkewedStructure::rectilinear(&b, unit.order.clone(), vec![1.0, 2.0]);
        assert_eq!(cubical_isometries(&b, &distinct).len(), 4);
        let inv = g.iter().find(|f| f.edges == [(0, true), (1, false)]).unwrap();
        assert_eq!(h1_action(&b, inv), vec![vec![-1, 0], vec![0, 1]]);
        let swap = g.iter().find(|f| f.edges == [(1, false), (0, false)]).unwrap();
        assert_eq!(restriction_to_torus(&b, swap, &all_maximal_tori(&b).unwrap()[0]), Err(Error::NontrivialH1));
    }

    #[test]
    fn theta_isometries() {
        let d = d2();
        let b = BlowupComplex::build(&d, &[part(&d, "a b | a^-1 b^-1")]).unwrap();
        let s = SkewedStructure::rectilinear(&b, TotalLabelOrder::default_for(&b), vec![1.0, 2.0, 3.0]);
        let g = cubical_isometries(&b, &s);
        assert_eq!(g.len(), 2);
        let swap = g.iter().find(|f| !f.is_identity()).unwrap();
        assert_eq!(h1_action(&b, swap), vec![vec![-1, 0], vec![0, -1]]);
        let o = TotalLabelOrder::default_for(&b);
        let r = trivial_h1_audit(&b, &random_allowable(&b, &o, 5));
        assert_eq!(r.kernel_order, 1);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn k3_salvetti_audit() {
        let b = BlowupComplex::salvetti(&k3());
        let r = trivial_h1_audit(&b, &SkewedStructure::unit(&b));
        assert_eq!((r.group_order, r.kernel_order, r.injective), (48, 1, true));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn central_decompositions() {
        let p = p3();
        let b = BlowupComplex::build(&p, &[part(&p, "a c | a^-1 c^-1")]).unwrap();
        let c = central_decomposition(&b);
        assert!(c.certified(), "{:?}", c.violations);
        assert_eq!((c.complement_f_vector.clone(), c.f_vector.clone()), (vec![2, 3], vec![2, 5, 3]));
        let k = central_decomposition(&BlowupComplex::salvetti(&k3()));
        assert_eq!(k.complement_f_vector, [1]);
        let d = d2();
        let t = central_decomposition(&BlowupComplex::build(&d, &[part(&d, "a b | a^-1 b^-1")]).unwrap());
        assert_eq!((t.center, t.complement.len()), (VertexSet::EMPTY, 5));
    }

    #[test]
    fn identity_restricts_to_zero_shift() {
        let p = p3();
        let b = BlowupComplex::build(&p, &[part(&p, "a c | a^-1 c^-1")]).unwrap();
        let id = CubicalIsometry::identity(&b);
        for t in all_maximal_tori(&b).unwrap() {
            let r = restriction_to_torus(&b, &id, &t).unwrap();
            assert!(r.shift.iter().all(|&s| s == 0) && r.violations.is_empty());
        }
    }

    #[test]
    fn half_flips_are_not_cubical() {
        let p = p3();
        let b = BlowupComplex::build(&p, &[part(&p, "a c | a^-1 c^-1")]).unwrap();
        let g = cubical_isometries(&b, &SkewedStructure::unit(&b));
        // reversing only one of the two b-loops does not extend over the squares
        let loops: Vec<usize> = (0..5).filter(|&i| b.edge_label(b.cells(1)[i]) == 1).collect();
        assert!(g.iter().all(|f| f.edges[loops[0]].1 == f.edges[loops[1]].1));
        let r = trivial_h1_audit(&b, &SkewedStructure::unit(&b));
        assert_eq!(r.kernel_order, 1);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(&identity_matrix(3)), 1);
    }
}
