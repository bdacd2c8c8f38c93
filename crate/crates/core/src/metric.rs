//! Allowable parallelotope structures: each maximal cube with labels
//! `A₁ ⪰ … ⪰ A_n` carries `M = DU` (`D` positive diagonal, `U` upper
//! unipotent), and the edge vector of `A_j` is column `j` of `M`.

use alloc::{collections::BTreeMap, format, string::String, vec, vec::Vec};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{
    blowup::{characteristic_cycles, BlowupComplex, Cell, Label},
    Error, Result,
};

pub const TOLERANCE: f64 = 1e-9;

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

fn close(a: f64, b: f64) -> bool {
    libm::fabs(a - b) <= TOLERANCE
}

/// Vertex whose star stands in for a label in twist comparisons: the least
/// element of `max(A)`. All of `max(A)` is fold equivalent.
pub fn twist_rep(b: &BlowupComplex, l: Label) -> usize {
    b.label_max(l).first().expect("max set is nonempty")
}

/// `A ≤_t B` on labels: `st(max A) ⊆ st(max B)`.
pub fn label_twist_leq(b: &BlowupComplex, x: Label, y: Label) -> bool {
    let g = b.graph();
    g.star(twist_rep(b, x)).is_subset(g.star(twist_rep(b, y)))
}

/// A total order `⪯` on labels, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalLabelOrder {
    pub ascending: Vec<Label>,
}

impl TotalLabelOrder {
    /// Strict twist order extended by `(|st|, representative, vertex before
    /// partition, label index)`.
    pub fn default_for(b: &BlowupComplex) -> Self {
        let g = b.graph();
        let mut ascending: Vec<Label> = (0..b.label_count()).collect();
        ascending.sort_by_key(|&l| {
            let r = twist_rep(b, l);
            (g.star(r).len(), r, !b.is_vertex_label(l), l)
        });
        TotalLabelOrder { ascending }
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.ascending.len()];
        for (i, &l) in self.ascending.iter().enumerate() {
            rank[l] = i;
        }
        rank
    }

    /// A permutation of the labels in which every strict twist relation
    /// `A <_t B` has `A ≺ B`. Twist-equivalent labels may come in any order.
    pub fn is_valid(&self, b: &BlowupComplex) -> bool {
        let n = b.label_count();
        let mut seen = vec![false; n];
        for &l in &self.ascending {
            if l >= n || seen[l] {
                return false;
            }
            seen[l] = true;
        }
        if self.ascending.len() != n {
            return false;
        }
        let rank = self.ranks();
        (0..n).all(|x| (0..n).all(|y| !(label_twist_leq(b, x, y) && !label_twist_leq(b, y, x)) || rank[x] < rank[y]))
    }

    /// Labels of a cube, greatest first.
    pub fn descending(&self, labels: impl Iterator<Item = Label>) -> Vec<Label> {
        let rank = self.ranks();
        let mut v: Vec<Label> = labels.collect();
        v.sort_by_key(|&l| core::cmp::Reverse(rank[l]));
        v
    }
}

/// `M = DU` on one maximal cube.
#[derive(Clone, Debug, PartialEq)]
pub struct CubeFrame {
    pub cube: Cell,
    /// Greatest first.
    pub labels: Vec<Label>,
    pub diagonal: Vec<f64>,
    /// `shear[i][j]` for `i < j`; other entries are ignored and kept zero.
    pub shear: Vec<Vec<f64>>,
}

impl CubeFrame {
    /// `M = DU`, row-major.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let n = self.labels.len();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diagonal[i];
            for j in i + 1..n {
                m[i][j] = self.diagonal[i] * self.shear[i][j];
            }
        }
        m
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        let m = self.matrix();
        let n = m.len();
        let mut g = vec![vec![0.0; n]; n];
        for j in 0..n {
            for k in 0..n {
                g[j][k] = (0..n).map(|i| m[i][j] * m[i][k]).sum();
            }
        }
        g
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        let m = self.matrix();
        sqrt((0..m.len()).map(|i| m[i][j] * m[i][j]).sum())
    }

    fn position(&self, l: Label) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkewedStructure {
    pub order: TotalLabelOrder,
    pub lengths: Vec<f64>,
    /// One frame per maximal cube of positive dimension, in cell order.
    pub frames: Vec<CubeFrame>,
}

impl SkewedStructure {
    /// Orthotopes with the given edge lengths.
    pub fn rectilinear(b: &BlowupComplex, order: TotalLabelOrder, lengths: Vec<f64>) -> Self {
        let frames = b
            .maximal_cells()
            .into_iter()
            .filter(|c| c.dim() > 0)
            .map(|cube| {
                let labels = order.descending(cube.labels.iter());
                let n = labels.len();
                CubeFrame { cube, diagonal: labels.iter().map(|&l| lengths[l]).collect(), labels, shear: vec![vec![0.0; n]; n] }
            })
            .collect();
        SkewedStructure { order, lengths, frames }
    }

    pub fn unit(b: &BlowupComplex) -> Self {
        Self::rectilinear(b, TotalLabelOrder::default_for(b), vec![1.0; b.label_count()])
    }

    pub fn is_rectilinear(&self) -> bool {
        self.frames.iter().all(|f| f.shear.iter().flatten().all(|&u| u == 0.0))
    }

    /// The inner product of the edge vectors of two labels, from the first
    /// frame containing both.
    pub fn gram_entry(&self, x: Label, y: Label) -> Option<f64> {
        self.frames.iter().find_map(|f| {
            let (i, j) = (f.position(x)?, f.position(y)?);
            Some(f.gram()[i][j])
        })
    }

    pub fn cosine(&self, x: Label, y: Label) -> Option<f64> {
        self.gram_entry(x, y).map(|g| g / (self.lengths[x] * self.lengths[y]))
    }

    pub fn frame_of(&self, cube: &Cell) -> Option<&CubeFrame> {
        self.frames.iter().find(|f| f.cube == *cube)
    }
}

/// Why a structure is not allowable.
#[derive(Clone, Debug, PartialEq)]
pub enum Defect {
    OrderInvalid,
    FramesMismatch,
    NonPositive { label: Label },
    ShearForbidden { cube: Cell, upper: Label, lower: Label },
    LengthMismatch { cube: Cell, label: Label },
    FaceIncoherent { x: Label, y: Label },
    AngleCondition { label: Label, rep: usize, other: Label },
}

impl Defect {
    pub fn code(&self) -> &'static str {
        match self {
            Defect::OrderInvalid => "order_invalid",
            Defect::FramesMismatch => "frames_mismatch",
            Defect::NonPositive { .. } => "nonpositive",
            Defect::ShearForbidden { .. } => "shear_forbidden",
            Defect::LengthMismatch { .. } => "length_mismatch",
            Defect::FaceIncoherent { .. } => "face_incoherent",
            Defect::AngleCondition { .. } => "angle_condition",
        }
    }

    /// One line naming the labels involved.
    pub fn describe(&self, b: &BlowupComplex) -> String {
        let n = |l: Label| b.label_name(l);
        match self {
            Defect::OrderInvalid => "label order is not a linear extension of the twist order".into(),
            Defect::FramesMismatch => "frames do not match the maximal cubes".into(),
            Defect::NonPositive { label } => format!("nonpositive length or diagonal for {}", n(*label)),
            Defect::ShearForbidden { cube, upper, lower } => {
                format!("shear of {} onto {} in cube at {} not allowed", n(*lower), n(*upper), cube.base)
            }
            Defect::LengthMismatch { cube, label } => format!("{} has the wrong length in cube at {}", n(*label), cube.base),
            Defect::FaceIncoherent { x, y } => format!("cubes disagree on the angle between {} and {}", n(*x), n(*y)),
            Defect::AngleCondition { label, rep, other } => {
                format!("angle between {} and {} differs from that between {} and {}", n(*label), n(*other), n(*rep), n(*other))
            }
        }
    }
}

/// Every defect of `s` as a structure on `b` with order `order`.
pub fn validate_allowable(b: &BlowupComplex, order: &TotalLabelOrder, s: &SkewedStructure) -> Vec<Defect> {
    let mut out = Vec::new();
    if !order.is_valid(b) || *order != s.order {
        out.push(Defect::OrderInvalid);
        return out;
    }
    let maximal: Vec<Cell> = b.maximal_cells().into_iter().filter(|c| c.dim() > 0).collect();
    let shape_ok = s.lengths.len() == b.label_count()
        && s.frames.len() == maximal.len()
        && s.frames.iter().zip(&maximal).all(|(f, c)| {
            let n = c.dim();
            f.cube == *c
                && f.labels == order.descending(c.labels.iter())
                && f.diagonal.len() == n
                && f.shear.len() == n
                && f.shear.iter().all(|r| r.len() == n)
        });
    if !shape_ok {
        out.push(Defect::FramesMismatch);
        return out;
    }
    for (l, &len) in s.lengths.iter().enumerate() {
        if len.is_nan() || len <= 0.0 {
            out.push(Defect::NonPositive { label: l });
        }
    }
    let mut gram: BTreeMap<(Label, Label), f64> = BTreeMap::new();
    for f in &s.frames {
        for (i, &d) in f.diagonal.iter().enumerate() {
            if d.is_nan() || d <= 0.0 {
                out.push(Defect::NonPositive { label: f.labels[i] });
            }
        }
        let n = f.labels.len();
        for i in 0..n {
            for j in i + 1..n {
                if f.shear[i][j] != 0.0 && !label_twist_leq(b, f.labels[j], f.labels[i]) {
                    out.push(Defect::ShearForbidden { cube: f.cube, upper: f.labels[i], lower: f.labels[j] });
                }
            }
        }
        for j in 0..n {
            if !close(f.column_norm(j), s.lengths[f.labels[j]]) {
                out.push(Defect::LengthMismatch { cube: f.cube, label: f.labels[j] });
            }
        }
        let g = f.gram();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (f.labels[i].min(f.labels[j]), f.labels[i].max(f.labels[j]));
                match gram.get(&(x, y)) {
                    Some(&e) if !close(e, g[i][j]) => out.push(Defect::FaceIncoherent { x, y }),
                    Some(_) => {}
                    None => {
                        gram.insert((x, y), g[i][j]);
                    }
                }
            }
        }
    }
    let cos = |x: Label, y: Label| gram.get(&(x.min(y), x.max(y))).map(|g| g / (s.lengths[x] * s.lengths[y]));
    let g = b.graph();
    for a in 0..b.label_count() {
        let m = b.label_max(a);
        let Some(v) = m.first() else { continue };
        if m.len() != 1 || a == v || !g.twist_dominant(v) {
            continue;
        }
        for other in b.label_neighbors(a).iter() {
            if let (Some(x), Some(y)) = (cos(a, other), cos(v, other)) {
                if !close(x, y) {
                    out.push(Defect::AngleCondition { label: a, rep: v, other });
                }
            }
        }
    }
    out.dedup();
    out
}

pub fn is_allowable(b: &BlowupComplex, order: &TotalLabelOrder, s: &SkewedStructure) -> bool {
    validate_allowable(b, order, s).is_empty()
}

/// Column-by-column diagonal with `‖column j‖ = ℓ(A_j)`.
fn diagonal_for(labels: &[Label], shear: &[Vec<f64>], lengths: &[f64], cube: Cell) -> Result<Vec<f64>> {
    let mut d: Vec<f64> = Vec::with_capacity(labels.len());
    for j in 0..labels.len() {
        let l = lengths[labels[j]];
        let rad = l * l - (0..j).map(|i| d[i] * d[i] * shear[i][j] * shear[i][j]).sum::<f64>();
        if rad.is_nan() || rad <= 0.0 {
            return Err(Error::RadicandNonPositive { cube: cube.base, column: j });
        }
        d.push(sqrt(rad));
    }
    Ok(d)
}

/// Rebuild a frame's diagonal after its shears changed.
pub fn refit_frame(frame: &mut CubeFrame, lengths: &[f64]) -> Result<()> {
    frame.diagonal = diagonal_for(&frame.labels, &frame.shear, lengths, frame.cube)?;
    Ok(())
}

/// `σ_t`: shears scaled by `1 − t`, diagonals refitted to keep lengths.
pub fn straighten(s: &SkewedStructure, t: f64) -> Result<SkewedStructure> {
    let mut out = s.clone();
    if t == 0.0 {
        return Ok(out);
    }
    for f in &mut out.frames {
        for row in f.shear.iter_mut() {
            for u in row.iter_mut() {
                *u = if t == 1.0 { 0.0 } else { *u * (1.0 - t) };
            }
        }
        refit_frame(f, &s.lengths)?;
    }
    Ok(out)
}

struct Uniform(ChaCha8Rng);

impl Uniform {
    fn next(&mut self, lo: f64, hi: f64) -> f64 {
        let x = (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * x
    }
}

/// `LDLᵀ`-style factorization `G = Uᵀ D² U` of a cube Gram matrix given
/// greatest label first.
fn factor_gram(g: &[Vec<f64>]) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = g.len();
    let mut d2 = vec![0.0; n];
    let mut u = vec![vec![0.0; n]; n];
    for j in 0..n {
        for i in 0..j {
            let s: f64 = (0..i).map(|k| d2[k] * u[k][i] * u[k][j]).sum();
            u[i][j] = (g[i][j] - s) / d2[i];
        }
        d2[j] = g[j][j] - (0..j).map(|k| d2[k] * u[k][j] * u[k][j]).sum::<f64>();
        if d2[j] <= TOLERANCE {
            return None;
        }
    }
    Some((d2.into_iter().map(sqrt).collect(), u))
}

/// A seeded random allowable structure.
///
/// Lengths are drawn per label. Cosines are drawn per pair of twist
/// representatives and only for twist-comparable pairs, so the angle
/// condition and face coherence hold by construction; each cube is then
/// factored as `M = DU`. If some cube's factor breaks positivity or the
/// shear pattern, cosines are halved and the cubes refactored; after a few
/// rounds the structure falls back to rectilinear.
pub fn random_allowable(b: &BlowupComplex, order: &TotalLabelOrder, seed: u64) -> SkewedStructure {
    let mut rng = Uniform(ChaCha8Rng::seed_from_u64(seed));
    let n = b.label_count();
    let lengths: Vec<f64> = (0..n).map(|_| rng.next(0.5, 2.0)).collect();
    let g = b.graph();
    let rep = |l: Label| {
        let m = b.label_max(l);
        match m.first() {
            Some(v) if m.len() == 1 && g.twist_dominant(v) => v,
            _ => l,
        }
    };
    let mut cosines: BTreeMap<(Label, Label), f64> = BTreeMap::new();
    for x in 0..n {
        for y in b.label_neighbors(x).iter().filter(|&y| y > x) {
            let comparable = label_twist_leq(b, x, y) || label_twist_leq(b, y, x);
            let key = (rep(x).min(rep(y)), rep(x).max(rep(y)));
            if comparable && !cosines.contains_key(&key) {
                cosines.insert(key, rng.next(-0.35, 0.35));
            }
        }
    }
    let rectilinear = SkewedStructure::rectilinear(b, order.clone(), lengths.clone());
    let mut scale = 1.0;
    for _ in 0..4 {
        let mut s = rectilinear.clone();
        let mut ok = true;
        for f in &mut s.frames {
            let k = f.labels.len();
            let mut gram = vec![vec![0.0; k]; k];
            for i in 0..k {
                for j in 0..k {
                    let (x, y) = (f.labels[i], f.labels[j]);
                    gram[i][j] = if i == j {
                        lengths[x] * lengths[x]
                    } else {
                        let key = (rep(x).min(rep(y)), rep(x).max(rep(y)));
                        scale * cosines.get(&key).copied().unwrap_or(0.0) * lengths[x] * lengths[y]
                    };
                }
            }
            match factor_gram(&gram) {
                Some((d, u)) => {
                    f.diagonal = d;
                    for (i, row) in u.iter().enumerate() {
                        for j in i + 1..k {
                            f.shear[i][j] = if libm::fabs(row[j]) < 1e-15 { 0.0 } else { row[j] };
                        }
                    }
                }
                None => ok = false,
            }
        }
        if ok && is_allowable(b, order, &s) {
            return s;
        }
        scale /= 2.0;
    }
    rectilinear
}

/// Along every characteristic cycle of `v`, consecutive edges `A, B` and
/// every label `L` adjacent to both satisfy
/// `cos(A, L) = cos(v, L) = cos(B, L)` wherever the cosines are defined.
pub fn geodesic_cycle_check(b: &BlowupComplex, s: &SkewedStructure, v: usize) -> Result<bool> {
    if !b.graph().twist_dominant(v) {
        return Err(Error::NotTwistDominant);
    }
    for cycle in characteristic_cycles(b, v) {
        let labels = cycle.labels();
        for k in 0..labels.len() {
            let (x, y) = (labels[k], labels[(k + 1) % labels.len()]);
            let common = b.label_neighbors(x).intersection(b.label_neighbors(y));
            for l in common.iter() {
                let reference = s.cosine(v, l);
                for a in [x, y] {
                    if let (Some(c), Some(r)) = (s.cosine(a, l), reference) {
                        if !close(c, r) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Metric-independent: see [`crate::blowup::free_face_check`].
pub fn free_face_check(b: &BlowupComplex, _s: &SkewedStructure) -> bool {
    crate::blowup::free_face_check(b)
}
