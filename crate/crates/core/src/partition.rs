//! Γ-Whitehead partitions: validation, enumeration, adjacency and
//! compatibility.

use alloc::{string::String, vec, vec::Vec};

use crate::{
    graph::DefiningGraph,
    set::{SignedGenerator, SignedSet, VertexSet},
    Error, Result,
};

/// Why a candidate fails to be a Γ-Whitehead partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionDefect {
    UnknownBase,
    /// Sides overlap, meet the link, or together with it miss part of `V^±`.
    NotAPartition,
    /// The complement of the sides is not `lk(m) ∪ lk(m)^-1`.
    LinkMismatch,
    /// `m` and `m^-1` lie on the same side.
    BaseNotSplit,
    SingletonSide,
    /// Two vertices of one component of `Γ ∖ st(m)` are separated.
    ComponentSplit,
    /// A split generator `v` has `lk(v) ⊄ lk(m)`.
    SplitNotFoldBelow,
}

/// A partition of `V^±` into two sides and `lk(m)^±`.
///
/// Equality and ordering use the unordered pair of sides; `base` is a
/// witness from `max(P)`.
#[derive(Clone, Copy, Debug)]
pub struct WhiteheadPartition {
    pub base: usize,
    pub plus: SignedSet,
    pub minus: SignedSet,
}

impl PartialEq for WhiteheadPartition {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for WhiteheadPartition {}

impl WhiteheadPartition {
    pub fn new(base: usize, plus: SignedSet, minus: SignedSet) -> Self {
        WhiteheadPartition { base, plus, minus }
    }

    /// Build from sides alone, choosing the least split vertex whose link
    /// matches the complement of the sides as base.
    pub fn from_sides(g: &DefiningGraph, plus: SignedSet, minus: SignedSet) -> core::result::Result<Self, PartitionDefect> {
        let rest = SignedSet::all(g.len()).0 & !(plus.0 | minus.0);
        let base = (0..g.len())
            .find(|&m| {
                let split = (plus.contains(SignedGenerator::pos(m)) && minus.contains(SignedGenerator::neg(m)))
                    || (minus.contains(SignedGenerator::pos(m)) && plus.contains(SignedGenerator::neg(m)));
                split && SignedSet::both(g.link(m)).0 == rest
            })
            .ok_or(PartitionDefect::UnknownBase)?;
        let p = WhiteheadPartition { base, plus, minus };
        p.validate(g)?;
        Ok(p.normalized(g))
    }

    /// Parse `"a b^-1 | a^-1 b"`: the two sides, separated by `|`.
    pub fn parse(g: &DefiningGraph, s: &str) -> Result<Self> {
        let (l, r) = s.split_once('|').ok_or_else(|| Error::ParseWord(s.into()))?;
        let side = |t: &str| -> Result<SignedSet> { Ok(crate::algebra::Word::parse(g, t)?.0.into_iter().collect()) };
        WhiteheadPartition::from_sides(g, side(l)?, side(r)?).map_err(Error::InvalidPartition)
    }

    /// Render as `"a b^-1 | a^-1 b"`.
    pub fn display(&self, g: &DefiningGraph) -> String {
        let side = |s: SignedSet| crate::algebra::Word(s.iter().collect()).display(g);
        alloc::format!("{} | {}", side(self.plus), side(self.minus))
    }

    /// Unordered side pair.
    pub fn key(&self) -> (SignedSet, SignedSet) {
        if self.plus <= self.minus {
            (self.plus, self.minus)
        } else {
            (self.minus, self.plus)
        }
    }

    pub fn link_set(&self, g: &DefiningGraph) -> SignedSet {
        SignedSet::both(g.link(self.base))
    }

    pub fn validate(&self, g: &DefiningGraph) -> core::result::Result<(), PartitionDefect> {
        let m = self.base;
        if m >= g.len() {
            return Err(PartitionDefect::UnknownBase);
        }
        let all = SignedSet::all(g.len());
        let link = self.link_set(g);
        if !self.plus.is_disjoint(self.minus) || self.plus.0 & !all.0 != 0 || self.minus.0 & !all.0 != 0 {
            return Err(PartitionDefect::NotAPartition);
        }
        if all.0 & !(self.plus.0 | self.minus.0) != link.0 {
            return Err(if link.is_disjoint(self.plus.union(self.minus)) {
                PartitionDefect::NotAPartition
            } else {
                PartitionDefect::LinkMismatch
            });
        }
        let (mp, mn) = (SignedGenerator::pos(m), SignedGenerator::neg(m));
        let separated =
            (self.plus.contains(mp) && self.minus.contains(mn)) || (self.minus.contains(mp) && self.plus.contains(mn));
        if !separated {
            return Err(PartitionDefect::BaseNotSplit);
        }
        if self.plus.len() < 2 || self.minus.len() < 2 {
            return Err(PartitionDefect::SingletonSide);
        }
        for comp in g.components_minus_star(m).into_iter().filter(|c| c.len() > 1) {
            let both = SignedSet::both(comp);
            if !(both.0 & !self.plus.0 == 0 || both.0 & !self.minus.0 == 0) {
                return Err(PartitionDefect::ComponentSplit);
            }
        }
        for v in self.sing().iter() {
            if !g.link(v).is_subset(g.link(m)) {
                return Err(PartitionDefect::SplitNotFoldBelow);
            }
        }
        Ok(())
    }

    /// Generators `v` with `v`, `v^-1` on different sides.
    pub fn sing(&self) -> VertexSet {
        const EVEN: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;
        let (p, m) = (self.plus.0, self.minus.0);
        SignedSet(EVEN & ((p & m >> 1) | (m & p >> 1))).support()
    }

    /// Split generators fold-equivalent to the base.
    pub fn max_set(&self, g: &DefiningGraph) -> VertexSet {
        let lk = g.link(self.base);
        self.sing().iter().filter(|&v| g.link(v) == lk).collect()
    }

    pub fn splits(&self, v: usize) -> bool {
        self.sing().contains(v)
    }

    /// `Some(true)` for `P⁺`, `Some(false)` for `P⁻`, `None` in the link.
    pub fn side_of(&self, x: SignedGenerator) -> Option<bool> {
        if self.plus.contains(x) {
            Some(true)
        } else if self.minus.contains(x) {
            Some(false)
        } else {
            None
        }
    }

    /// The side with index `plus_side` (`true` = `P⁺`).
    pub fn side(&self, plus_side: bool) -> SignedSet {
        if plus_side {
            self.plus
        } else {
            self.minus
        }
    }

    /// Rebase at the least element of `max(P)` and put its positive letter
    /// in `P⁺`.
    pub fn normalized(&self, g: &DefiningGraph) -> Self {
        let base = self.max_set(g).first().unwrap_or(self.base);
        let (plus, minus) =
            if self.plus.contains(SignedGenerator::pos(base)) { (self.plus, self.minus) } else { (self.minus, self.plus) };
        WhiteheadPartition { base, plus, minus }
    }

    fn sort_key(&self, g: &DefiningGraph) -> (Vec<usize>, Vec<usize>) {
        let n = self.normalized(g);
        (n.max_set(g).iter().collect(), crate::set::BitIter(n.plus.0).collect())
    }
}

/// Sing and max of a valid partition.
pub fn sing_and_max(g: &DefiningGraph, p: &WhiteheadPartition) -> Result<(VertexSet, VertexSet)> {
    p.validate(g).map_err(Error::InvalidPartition)?;
    Ok((p.sing(), p.max_set(g)))
}

/// All Γ-Whitehead partitions, one per side pair, ordered by
/// `(max set, P⁺)` after normalization.
pub fn enumerate_partitions(g: &DefiningGraph) -> Vec<WhiteheadPartition> {
    let mut out: Vec<WhiteheadPartition> = Vec::new();
    for m in 0..g.len() {
        let comps = g.components_minus_star(m);
        // each non-singleton component picks a side; singleton {v} places v
        // and v^-1 independently
        let mut choices: Vec<Vec<(SignedSet, SignedSet)>> = Vec::new();
        for c in &comps {
            if c.len() == 1 {
                let v = c.first().unwrap();
                let (vp, vn) = (SignedGenerator::pos(v), SignedGenerator::neg(v));
                let s = |x: &[SignedGenerator]| x.iter().copied().collect::<SignedSet>();
                choices.push(vec![
                    (s(&[vp, vn]), SignedSet::EMPTY),
                    (SignedSet::EMPTY, s(&[vp, vn])),
                    (s(&[vp]), s(&[vn])),
                    (s(&[vn]), s(&[vp])),
                ]);
            } else {
                let both = SignedSet::both(*c);
                choices.push(vec![(both, SignedSet::EMPTY), (SignedSet::EMPTY, both)]);
            }
        }
        let base_plus: SignedSet = [SignedGenerator::pos(m)].into_iter().collect();
        let base_minus: SignedSet = [SignedGenerator::neg(m)].into_iter().collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let (mut plus, mut minus) = (base_plus, base_minus);
            for (k, &i) in idx.iter().enumerate() {
                plus = plus.union(choices[k][i].0);
                minus = minus.union(choices[k][i].1);
            }
            let p = WhiteheadPartition::new(m, plus, minus);
            if p.validate(g).is_ok() && !out.contains(&p) {
                out.push(p.normalized(g));
            }
            // odometer
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort_by_cached_key(|p| p.sort_key(g));
    out
}

/// A vertex label or a partition label.
#[derive(Clone, Copy, Debug)]
pub enum LabelRef<'a> {
    Vertex(usize),
    Partition(&'a WhiteheadPartition),
}

/// Every element of `max(P)` is adjacent to every element of `max(Q)`.
pub fn partitions_adjacent(g: &DefiningGraph, p: &WhiteheadPartition, q: &WhiteheadPartition) -> bool {
    let (mp, mq) = (p.max_set(g), q.max_set(g));
    mp.iter().all(|a| mq.iter().all(|b| g.adjacent(a, b)))
}

pub fn adjacent(g: &DefiningGraph, x: LabelRef<'_>, y: LabelRef<'_>) -> Result<bool> {
    use LabelRef::*;
    match (x, y) {
        (Vertex(u), Vertex(v)) if u == v => Err(Error::EqualArguments),
        (Vertex(u), Vertex(v)) => Ok(g.adjacent(u, v)),
        (Vertex(v), Partition(p)) | (Partition(p), Vertex(v)) => Ok(g.link(p.base).contains(v)),
        (Partition(p), Partition(q)) if p == q => Err(Error::EqualArguments),
        (Partition(p), Partition(q)) => Ok(partitions_adjacent(g, p, q)),
    }
}

/// Side choices `(P side, Q side)` whose intersection is empty.
pub fn disjoint_side_pairs(p: &WhiteheadPartition, q: &WhiteheadPartition) -> Vec<(bool, bool)> {
    let mut out = Vec::new();
    for a in [true, false] {
        for b in [true, false] {
            if p.side(a).is_disjoint(q.side(b)) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn compatible(g: &DefiningGraph, p: &WhiteheadPartition, q: &WhiteheadPartition) -> Result<bool> {
    if p == q {
        return Err(Error::EqualArguments);
    }
    Ok(partitions_adjacent(g, p, q) || !disjoint_side_pairs(p, q).is_empty())
}

/// Every pairwise-compatible subset of `partitions` (including the empty
/// one), as sorted index lists in depth-first lexicographic order.
pub fn compatible_subsets(g: &DefiningGraph, partitions: &[WhiteheadPartition]) -> Vec<Vec<usize>> {
    let k = partitions.len();
    let compat: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && compatible(g, &partitions[i], &partitions[j]).unwrap_or(false)).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, cur: &mut Vec<usize>, compat: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in start..compat.len() {
            if cur.iter().all(|&j| compat[i][j]) {
                cur.push(i);
                go(i + 1, cur, compat, out);
                cur.pop();
            }
        }
    }
    go(0, &mut cur, &compat, &mut out);
    out
}

/// All compatible collections of Γ-Whitehead partitions.
pub fn compatible_collections(g: &DefiningGraph) -> Vec<Vec<WhiteheadPartition>> {
    let parts = enumerate_partitions(g);
    compatible_subsets(g, &parts).into_iter().map(|ix| ix.into_iter().map(|i| parts[i]).collect()).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    pub(crate) fn part(g: &DefiningGraph, s: &str) -> WhiteheadPartition {
        WhiteheadPartition::parse(g, s).unwrap()
    }

    fn names(g: &DefiningGraph, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| g.name(v)).collect()
    }

    #[test]
    fn validation_examples() {
        let d = d2();
        assert!(part(&d, "a b | a^-1 b^-1").validate(&d).is_ok());
        let (a, b) = (0, 1);
        let single = WhiteheadPartition::new(
            a,
            [SignedGenerator::pos(a)].into_iter().collect(),
            [SignedGenerator::neg(a), SignedGenerator::pos(b), SignedGenerator::neg(b)].into_iter().collect(),
        );
        assert_eq!(single.validate(&d), Err(PartitionDefect::SingletonSide));
        let p = p3();
        let q = part(&p, "a c^-1 | a^-1 c");
        assert_eq!(q.base, 0);
        assert!(q.validate(&p).is_ok());
    }

    #[test]
    fn link_must_match_base() {
        let p = p3();
        // base a, but b's letters placed on sides instead of the link
        let bad = WhiteheadPartition::new(
            0,
            [SignedGenerator::pos(0), SignedGenerator::pos(1), SignedGenerator::pos(2)].into_iter().collect(),
            [SignedGenerator::neg(0), SignedGenerator::neg(1), SignedGenerator::neg(2)].into_iter().collect(),
        );
        assert_eq!(bad.validate(&p), Err(PartitionDefect::LinkMismatch));
    }

    #[test]
    fn sing_max_examples() {
        let d = d2();
        let (s, m) = sing_and_max(&d, &part(&d, "a b | a^-1 b^-1")).unwrap();
        assert_eq!((names(&d, s), names(&d, m)), (vec!["a", "b"], vec!["a", "b"]));
        let p = p3();
        let (s, m) = sing_and_max(&p, &part(&p, "a c | a^-1 c^-1")).unwrap();
        assert_eq!((names(&p, s), names(&p, m)), (vec!["a", "c"], vec!["a", "c"]));
        let f = f3();
        let (s, m) = sing_and_max(&f, &part(&f, "b w | b^-1 w^-1")).unwrap();
        assert_eq!((names(&f, s), names(&f, m)), (vec!["b", "w"], vec!["b"]));
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_partitions(&k3()).is_empty());
        assert_eq!(enumerate_partitions(&d2()).len(), 2);
        let f = f3();
        let parts = enumerate_partitions(&f);
        assert_eq!(parts.len(), 4);
        assert!(parts.contains(&part(&f, "b w | b^-1 w^-1")));
    }

    #[test]
    fn adjacency_examples() {
        let p = p3();
        let pp = part(&p, "a c | a^-1 c^-1");
        assert!(adjacent(&p, LabelRef::Vertex(1), LabelRef::Partition(&pp)).unwrap());
        let d = d2();
        let dp = part(&d, "a b | a^-1 b^-1");
        assert!(!adjacent(&d, LabelRef::Vertex(0), LabelRef::Partition(&dp)).unwrap());
        let c = c4();
        let (pa, pb) = (part(&c, "a c | a^-1 c^-1"), part(&c, "b d | b^-1 d^-1"));
        assert!(adjacent(&c, LabelRef::Partition(&pa), LabelRef::Partition(&pb)).unwrap());
        assert_eq!(adjacent(&c, LabelRef::Partition(&pa), LabelRef::Partition(&pa)), Err(Error::EqualArguments));
        assert_eq!(adjacent(&c, LabelRef::Vertex(1), LabelRef::Vertex(1)), Err(Error::EqualArguments));
    }

    #[test]
    fn compatibility_examples() {
        let d = d2();
        assert!(!compatible(&d, &part(&d, "a b | a^-1 b^-1"), &part(&d, "a b^-1 | a^-1 b")).unwrap());
        let c = c4();
        assert!(compatible(&c, &part(&c, "a c | a^-1 c^-1"), &part(&c, "b d | b^-1 d^-1")).unwrap());
        let p = p3();
        assert!(!compatible(&p, &part(&p, "a c | a^-1 c^-1"), &part(&p, "a c^-1 | a^-1 c")).unwrap());
        let x = part(&p, "a c | a^-1 c^-1");
        assert_eq!(compatible(&p, &x, &x), Err(Error::EqualArguments));
    }

    #[test]
    fn collection_examples() {
        assert_eq!(compatible_collections(&k3()), vec![Vec::new()]);
        assert_eq!(compatible_collections(&d2()).len(), 3);
        let c = c4();
        let pair = [part(&c, "a c | a^-1 c^-1"), part(&c, "b d | b^-1 d^-1")];
        assert!(compatible_collections(&c).iter().any(|col| col.len() == 2 && pair.iter().all(|p| col.contains(p))));
    }

    #[test]
    fn base_independence() {
        // rebasing at any element of max(P) gives the same Sing and max
        for g in crate::graph::small_graphs(4) {
            for p in enumerate_partitions(&g) {
                let mx = p.max_set(&g);
                for m in mx.iter() {
                    let q = WhiteheadPartition::new(m, p.plus, p.minus);
                    assert!(q.validate(&g).is_ok());
                    assert_eq!(q.sing(), p.sing());
                    assert_eq!(q.max_set(&g), mx);
                }
            }
        }
    }
}
