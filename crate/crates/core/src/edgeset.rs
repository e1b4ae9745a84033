use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::EdgeId;

/// Maximum number of edges a graph may carry; edge subsets are stored as a `u128` mask.
pub const MAX_EDGES: usize = 128;

/// A set of edge ids backed by a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(pub u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            EdgeSet(u128::MAX)
        } else {
            EdgeSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: EdgeId) -> Self {
        EdgeSet(1u128 << e.0)
    }

    pub fn contains(self, e: EdgeId) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.0 |= 1u128 << e.0;
    }

    pub fn remove(&mut self, e: EdgeId) {
        self.0 &= !(1u128 << e.0);
    }

    pub fn with(self, e: EdgeId) -> Self {
        EdgeSet(self.0 | 1u128 << e.0)
    }

    pub fn without(self, e: EdgeId) -> Self {
        EdgeSet(self.0 & !(1u128 << e.0))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: EdgeSet) -> Self {
        EdgeSet(self.0 | o.0)
    }

    pub fn intersection(self, o: EdgeSet) -> Self {
        EdgeSet(self.0 & o.0)
    }

    pub fn difference(self, o: EdgeSet) -> Self {
        EdgeSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: EdgeSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> EdgeSetIter {
        EdgeSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<EdgeId> {
        self.iter().collect()
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

pub struct EdgeSetIter(u128);

impl Iterator for EdgeSetIter {
    type Item = EdgeId;

    fn next(&mut self) -> Option<EdgeId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(EdgeId(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for EdgeSetIter {}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}
