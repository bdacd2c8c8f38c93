//! Small bitsets over vertex indices and signed generators.

use core::fmt;

/// A set of vertex indices, at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0 as u128)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Iterator over set bits, lowest first.
pub struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A signed generator `v` or `v^-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedGenerator {
    pub vertex: usize,
    pub inverse: bool,
}

impl SignedGenerator {
    pub fn pos(vertex: usize) -> Self {
        SignedGenerator { vertex, inverse: false }
    }

    pub fn neg(vertex: usize) -> Self {
        SignedGenerator { vertex, inverse: true }
    }

    pub fn inv(self) -> Self {
        SignedGenerator { vertex: self.vertex, inverse: !self.inverse }
    }

    /// Bit position in a [`SignedSet`]: `2v` for `v`, `2v + 1` for `v^-1`.
    pub fn index(self) -> usize {
        2 * self.vertex + self.inverse as usize
    }

    pub fn from_index(i: usize) -> Self {
        SignedGenerator { vertex: i / 2, inverse: i % 2 == 1 }
    }
}

/// A subset of `V^±`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedSet(pub u128);

impl SignedSet {
    pub const EMPTY: SignedSet = SignedSet(0);

    /// `S ∪ S^-1` for a vertex set `S`.
    pub fn both(vs: VertexSet) -> Self {
        let mut out = 0u128;
        for v in vs.iter() {
            out |= 3u128 << (2 * v);
        }
        SignedSet(out)
    }

    pub fn all(n: usize) -> Self {
        SignedSet::both(VertexSet::full(n))
    }

    pub fn contains(self, g: SignedGenerator) -> bool {
        self.0 >> g.index() & 1 == 1
    }

    pub fn insert(&mut self, g: SignedGenerator) {
        self.0 |= 1 << g.index();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: SignedSet) -> Self {
        SignedSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SignedSet) -> Self {
        SignedSet(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: SignedSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Swap `v` and `v^-1` for every vertex.
    pub fn inverted(self) -> Self {
        const EVEN: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;
        SignedSet((self.0 & EVEN) << 1 | (self.0 >> 1) & EVEN)
    }

    pub fn iter(self) -> impl Iterator<Item = SignedGenerator> {
        BitIter(self.0).map(SignedGenerator::from_index)
    }

    /// Vertices with at least one sign present.
    pub fn support(self) -> VertexSet {
        self.iter().map(|g| g.vertex).collect()
    }
}

impl fmt::Debug for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<SignedGenerator> for SignedSet {
    fn from_iter<I: IntoIterator<Item = SignedGenerator>>(iter: I) -> Self {
        let mut s = SignedSet::EMPTY;
        for g in iter {
            s.insert(g);
        }
        s
    }
}
