//! Dense binary relations over `0..n` and the preorders built from them.
//!
//! Positions are model-local indices; world identities live in the model.

use alloc::vec::Vec;

use crate::bitset::BitSet;

/// A binary relation over `0..n`, one bit row per element.
///
/// `row(i)` holds every `j` with `(i, j)` in the relation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    rows: Vec<BitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|_| BitSet::empty(n)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn total(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|_| BitSet::full(n)).collect(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    r.insert(i, j);
                }
            }
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i].remove(j);
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |j| (i, j)))
    }

    pub fn transpose(&self) -> Relation {
        let n = self.size();
        let mut t = Relation::empty(n);
        for (i, j) in self.pairs() {
            t.insert(j, i);
        }
        t
    }

    /// Warshall's algorithm on bit rows.
    pub fn transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        let n = r.size();
        for k in 0..n {
            let via = r.rows[k].clone();
            for i in 0..n {
                if r.rows[i].contains(k) {
                    r.rows[i].union_with(&via);
                }
            }
        }
        r
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..r.size() {
            r.insert(i, i);
        }
        r.transitive_closure()
    }

    /// Pairs `(i, j)` in the relation whose converse is absent.
    pub fn asymmetric_part(&self) -> Relation {
        let t = self.transpose();
        Relation {
            rows: self.rows.iter().zip(&t.rows).map(|(r, c)| r.difference(c)).collect(),
        }
    }

    /// Sub-relation on `keep`, re-indexed by rank within `keep`.
    pub fn restrict(&self, keep: &BitSet) -> Relation {
        let kept: Vec<usize> = keep.iter().collect();
        Relation::from_fn(kept.len(), |a, b| self.contains(kept[a], kept[b]))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|i| !self.contains(i, i))
    }

    /// First missing reflexive or transitive pair, if any.
    pub fn preorder_violation(&self) -> Option<PreorderViolation> {
        let n = self.size();
        if let Some(w) = (0..n).find(|&i| !self.contains(i, i)) {
            return Some(PreorderViolation::NotReflexive { world: w });
        }
        self.transitivity_violation()
    }

    pub fn transitivity_violation(&self) -> Option<PreorderViolation> {
        let n = self.size();
        for a in 0..n {
            for b in self.rows[a].iter() {
                let missing = self.rows[b].difference(&self.rows[a]);
                if let Some(c) = missing.iter().next() {
                    return Some(PreorderViolation::NotTransitive { a, b, c });
                }
            }
        }
        None
    }
}

/// Witness that a relation is not a preorder.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PreorderViolation {
    #[error("not reflexive: missing ({world}, {world})")]
    NotReflexive { world: usize },
    #[error("not transitive: ({a}, {b}) and ({b}, {c}) present but ({a}, {c}) missing")]
    NotTransitive { a: usize, b: usize, c: usize },
}

/// A reflexive, transitive relation over `0..n`.
///
/// `le(i, j)` reads "i is at least as preferred as j"; smaller is better.
/// The converse relation is cached so downward queries are row lookups.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Preorder {
    up: Relation,
    down: Relation,
}

impl Preorder {
    pub fn new(rel: Relation) -> Result<Self, PreorderViolation> {
        match rel.preorder_violation() {
            Some(v) => Err(v),
            None => Ok(Self::from_relation_unchecked(rel)),
        }
    }

    /// Wraps `rel` without checking it. [`Preorder::validate`] can be used
    /// afterwards to confirm the invariants.
    pub fn from_relation_unchecked(rel: Relation) -> Self {
        let down = rel.transpose();
        Preorder { up: rel, down }
    }

    /// Reflexive-transitive closure of the generator pairs.
    pub fn closure_of<I: IntoIterator<Item = (usize, usize)>>(n: usize, generators: I) -> Self {
        Self::from_relation_unchecked(Relation::from_pairs(n, generators).reflexive_transitive_closure())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_relation_unchecked(Relation::identity(n))
    }

    pub fn total(n: usize) -> Self {
        Self::from_relation_unchecked(Relation::total(n))
    }

    pub fn size(&self) -> usize {
        self.up.size()
    }

    pub fn relation(&self) -> &Relation {
        &self.up
    }

    pub fn into_relation(self) -> Relation {
        self.up
    }

    pub fn validate(&self) -> Result<(), PreorderViolation> {
        match self.up.preorder_violation() {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up.contains(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && !self.le(j, i)
    }

    /// Everything `i` is at least as good as: `{j | i <= j}`.
    pub fn weakly_above(&self, i: usize) -> &BitSet {
        self.up.row(i)
    }

    /// `{j | j <= i}`.
    pub fn weakly_below(&self, i: usize) -> &BitSet {
        self.down.row(i)
    }

    /// `{j | i < j}`.
    pub fn strictly_above(&self, i: usize) -> BitSet {
        self.up.row(i).difference(self.down.row(i))
    }

    /// `{j | j < i}`.
    pub fn strictly_below(&self, i: usize) -> BitSet {
        self.down.row(i).difference(self.up.row(i))
    }

    /// `{(w, w') | w <= w' and not w' <= w}`.
    pub fn strict_part(&self) -> Relation {
        self.up.asymmetric_part()
    }

    /// Elements of `s` with nothing in `s` strictly below them.
    ///
    /// Panics if `s` ranges over a different carrier size.
    pub fn min_set(&self, s: &BitSet) -> BitSet {
        assert_eq!(s.capacity(), self.size(), "set outside the preorder's carrier");
        let mut out = s.clone();
        for w in s.iter() {
            if self.strictly_below(w).intersects(s) {
                out.remove(w);
            }
        }
        out
    }

    /// The induced suborder on `keep`, re-indexed by rank within `keep`.
    pub fn restrict(&self, keep: &BitSet) -> Preorder {
        Self::from_relation_unchecked(self.up.restrict(keep))
    }
}
