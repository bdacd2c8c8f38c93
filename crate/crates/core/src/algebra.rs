//! Words in `A_Γ`, their normal form, and the standard automorphisms.

use alloc::{string::String, vec::Vec};
use core::fmt::Write as _;

use crate::{
    graph::{DefiningGraph, OrderKind},
    partition::WhiteheadPartition,
    set::{SignedGenerator, VertexSet},
    Error, Result,
};

/// A word over `V^±`. Reduction is an operation, not an invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<SignedGenerator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(v: usize) -> Self {
        Word(alloc::vec![SignedGenerator::pos(v)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Parse whitespace-separated letters such as `a b^-1`; `1` or blank is
    /// the empty word.
    pub fn parse(g: &DefiningGraph, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            if name.is_empty() {
                return Err(Error::ParseWord(tok.into()));
            }
            let vertex = g.index(name).map_err(|_| Error::ParseWord(tok.into()))?;
            out.push(SignedGenerator { vertex, inverse });
        }
        Ok(Word(out))
    }

    pub fn display(&self, g: &DefiningGraph) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(g.name(l.vertex));
            if l.inverse {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Exponent sum per vertex.
    pub fn abelianize(&self, n: usize) -> Vec<i64> {
        let mut out = alloc::vec![0i64; n];
        for l in &self.0 {
            out[l.vertex] += if l.inverse { -1 } else { 1 };
        }
        out
    }
}

fn commute(g: &DefiningGraph, u: usize, v: usize) -> bool {
    u == v || g.adjacent(u, v)
}

/// Cancel `x … x^-1` pairs whose intermediate letters all commute with `x`,
/// until none remain.
fn reduce(g: &DefiningGraph, w: &[SignedGenerator]) -> Vec<SignedGenerator> {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[j] == w[i].inv() {
                    w.remove(j);
                    w.remove(i);
                    continue 'outer;
                }
                if !commute(g, w[i].vertex, w[j].vertex) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Canonical representative: fully cancelled, then the shortlex-least
/// rearrangement under commutation (letters ordered by vertex, `v` before
/// `v^-1`).
pub fn normal_form(g: &DefiningGraph, w: &Word) -> Word {
    let mut rest = reduce(g, &w.0);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // a letter can move to the front iff it commutes with, and differs in
        // vertex from, everything before it
        let mut best: Option<usize> = None;
        for k in 0..rest.len() {
            let free = rest[..k].iter().all(|x| x.vertex != rest[k].vertex && g.adjacent(x.vertex, rest[k].vertex));
            if free && best.is_none_or(|b| rest[k] < rest[b]) {
                best = Some(k);
            }
        }
        out.push(rest.remove(best.expect("first letter is always free")));
    }
    Word(out)
}

pub fn equal_in_group(g: &DefiningGraph, u: &Word, v: &Word) -> bool {
    normal_form(g, &u.concat(&v.inverse())).is_empty()
}

/// A map `V → A_Γ` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    pub images: Vec<Word>,
}

impl Endomorphism {
    pub fn identity(n: usize) -> Self {
        Endomorphism { images: (0..n).map(Word::gen).collect() }
    }

    fn with_images(n: usize, f: impl Fn(usize) -> Word) -> Self {
        Endomorphism { images: (0..n).map(f).collect() }
    }

    /// Substitute images letter by letter without reducing.
    fn substitute(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for l in &w.0 {
            let img = &self.images[l.vertex];
            if l.inverse {
                out.extend(img.inverse().0);
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        Word(out)
    }

    pub fn apply(&self, g: &DefiningGraph, w: &Word) -> Word {
        normal_form(g, &self.substitute(w))
    }

    /// `self ∘ other`.
    pub fn compose(&self, g: &DefiningGraph, other: &Endomorphism) -> Endomorphism {
        Endomorphism { images: other.images.iter().map(|w| self.apply(g, w)).collect() }
    }

    pub fn is_identity(&self, g: &DefiningGraph) -> bool {
        self.images.iter().enumerate().all(|(v, w)| normal_form(g, w) == Word::gen(v))
    }

    pub fn display(&self, g: &DefiningGraph) -> Vec<(String, String)> {
        self.images.iter().enumerate().map(|(v, w)| (g.name(v).into(), w.display(g))).collect()
    }

    /// Induced integer matrix on `H_1 = Z^V`; column `v` is the exponent sum
    /// of the image of `v`.
    pub fn abelianization(&self, n: usize) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.abelianize(n)).collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
    }
}

/// Every defining relator `[v, w]` maps to the identity.
pub fn verify_relators(g: &DefiningGraph, phi: &Endomorphism) -> bool {
    g.edges().into_iter().all(|(v, w)| {
        let rel = Word::commutator(&Word::gen(v), &Word::gen(w));
        phi.apply(g, &rel).is_empty()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    GraphAutomorphism(Vec<usize>),
    Inversion(usize),
    /// Conjugation by `by` on one component of `Γ ∖ st(by)`.
    PartialConjugation {
        by: usize,
        component: VertexSet,
    },
    /// `target ↦ by · target`; a twist when `target ≤_t by`, else a fold.
    Transvection {
        by: usize,
        target: usize,
        twist: bool,
    },
}

/// A Laurence–Servatius generator together with its explicit inverse.
#[derive(Clone, Debug)]
pub struct LsGenerator {
    pub kind: GeneratorKind,
    pub map: Endomorphism,
    pub inverse: Endomorphism,
}

pub fn inversion(g: &DefiningGraph, v: usize) -> Endomorphism {
    Endomorphism::with_images(g.len(), |x| if x == v { Word::gen(v).inverse() } else { Word::gen(x) })
}

/// `w ↦ v^e w v^-e` for `w ∈ component`.
pub fn partial_conjugation(g: &DefiningGraph, v: usize, component: VertexSet, inverse: bool) -> Endomorphism {
    let by = Word(alloc::vec![SignedGenerator { vertex: v, inverse }]);
    Endomorphism::with_images(g.len(), |x| {
        if component.contains(x) {
            by.concat(&Word::gen(x)).concat(&by.inverse())
        } else {
            Word::gen(x)
        }
    })
}

/// `target ↦ v^e target`.
pub fn transvection(g: &DefiningGraph, v: usize, target: usize, inverse: bool) -> Endomorphism {
    let by = Word(alloc::vec![SignedGenerator { vertex: v, inverse }]);
    Endomorphism::with_images(g.len(), |x| if x == target { by.concat(&Word::gen(x)) } else { Word::gen(x) })
}

pub fn ls_generators(g: &DefiningGraph) -> Vec<LsGenerator> {
    let n = g.len();
    let mut out = Vec::new();
    for perm in g.automorphisms() {
        let map = Endomorphism::with_images(n, |x| Word::gen(perm[x]));
        let mut inv = alloc::vec![0; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let inverse = Endomorphism::with_images(n, |x| Word::gen(inv[x]));
        out.push(LsGenerator { kind: GeneratorKind::GraphAutomorphism(perm), map, inverse });
    }
    for v in 0..n {
        let map = inversion(g, v);
        out.push(LsGenerator { kind: GeneratorKind::Inversion(v), inverse: map.clone(), map });
    }
    for v in 0..n {
        for c in g.components_minus_star(v) {
            out.push(LsGenerator {
                kind: GeneratorKind::PartialConjugation { by: v, component: c },
                map: partial_conjugation(g, v, c, false),
                inverse: partial_conjugation(g, v, c, true),
            });
        }
    }
    for v in 0..n {
        for w in (0..n).filter(|&w| w != v && g.link(w).is_subset(g.star(v))) {
            out.push(LsGenerator {
                kind: GeneratorKind::Transvection { by: v, target: w, twist: g.order_leq(w, v, OrderKind::Twist) },
                map: transvection(g, v, w, false),
                inverse: transvection(g, v, w, true),
            });
        }
    }
    out
}

/// The Whitehead automorphism `φ(P, m)` with `m` normalized into `P⁺`:
/// `m ↦ m^-1`; a split `v ∈ P⁺` goes to `v m^-1` (so `v ∈ P⁻` goes to `m v`);
/// an unsplit generator with both signs in `P⁻` is conjugated by `m`;
/// everything else is fixed.
pub fn whitehead_automorphism(g: &DefiningGraph, p: &WhiteheadPartition, m: usize) -> Result<Endomorphism> {
    p.validate(g).map_err(Error::InvalidPartition)?;
    if !p.max_set(g).contains(m) {
        return Err(Error::NotMaximal);
    }
    let (plus, minus) = if p.plus.contains(SignedGenerator::pos(m)) { (p.plus, p.minus) } else { (p.minus, p.plus) };
    let mw = Word::gen(m);
    let mi = mw.inverse();
    Ok(Endomorphism::with_images(g.len(), |x| {
        let (xp, xn) = (SignedGenerator::pos(x), SignedGenerator::neg(x));
        if x == m {
            mi.clone()
        } else if plus.contains(xp) && minus.contains(xn) {
            Word::gen(x).concat(&mi)
        } else if minus.contains(xp) && plus.contains(xn) {
            mw.concat(&Word::gen(x))
        } else if minus.contains(xp) && minus.contains(xn) {
            mw.concat(&Word::gen(x)).concat(&mi)
        } else {
            Word::gen(x)
        }
    }))
}

/// Render an endomorphism as `a -> a^-1, b -> b a^-1`.
pub fn describe(g: &DefiningGraph, phi: &Endomorphism) -> String {
    let mut s = String::new();
    for (i, (v, w)) in phi.display(g).into_iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{v} -> {w}");
    }
    s
}
