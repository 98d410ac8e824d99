//! The interval `[1, π]` of the pattern poset, materialised with its strict
//! order relation as bit rows.

use std::collections::{BTreeMap, HashMap};

use crate::perm::Permutation;

/// All patterns of a permutation, grouped by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Downset {
    source: Permutation,
    by_len: BTreeMap<usize, Vec<Permutation>>,
}

impl Downset {
    /// Enumerates every non-empty subset of positions and flattens it.
    pub fn of(pi: &Permutation) -> Self {
        Self::from_elements(pi, pi.patterns())
    }

    /// Closure of `{π}` under one-point deletion.
    pub fn by_deletion(pi: &Permutation) -> Self {
        let mut seen: std::collections::BTreeSet<Permutation> = [pi.clone()].into();
        let mut frontier = vec![pi.clone()];
        while let Some(cur) = frontier.pop() {
            if cur.len() < 2 {
                continue;
            }
            for pos in 0..cur.len() {
                let child = cur.delete_point(pos);
                if seen.insert(child.clone()) {
                    frontier.push(child);
                }
            }
        }
        Self::from_elements(pi, seen)
    }

    fn from_elements(pi: &Permutation, elems: impl IntoIterator<Item = Permutation>) -> Self {
        let mut by_len: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
        for e in elems {
            by_len.entry(e.len()).or_default().push(e);
        }
        for v in by_len.values_mut() {
            v.sort();
        }
        Downset { source: pi.clone(), by_len }
    }

    pub fn source(&self) -> &Permutation {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.by_len.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_len.is_empty()
    }

    pub fn of_length(&self, n: usize) -> &[Permutation] {
        self.by_len.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Elements by increasing length, lexicographic within a length.
    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.by_len.values().flatten()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.by_len
            .get(&p.len())
            .is_some_and(|v| v.binary_search(p).is_ok())
    }
}

/// Dense square bit matrix; row `i` holds the strict down-set of element `i`.
#[derive(Debug, Clone)]
pub(crate) struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize) -> Self {
        let words = rows.div_ceil(64).max(1);
        BitRows { words, data: vec![0; rows * words] }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// `row[dst] |= row[src]`, requires `src < dst`.
    fn or_into(&mut self, dst: usize, src: usize) {
        debug_assert!(src < dst);
        let w = self.words;
        let (head, tail) = self.data.split_at_mut(dst * w);
        for (d, s) in tail[..w].iter_mut().zip(&head[src * w..(src + 1) * w]) {
            *d |= *s;
        }
    }

    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// `[1, π]` with elements indexed `0..len()`, sorted by length (so index 0 is
/// `1` and the last index is `π`).
#[derive(Debug, Clone)]
pub struct Interval {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    covers: Vec<Vec<usize>>,
    below: BitRows,
}

impl Interval {
    pub fn new(pi: &Permutation) -> Self {
        let down = Downset::by_deletion(pi);
        let elems: Vec<Permutation> = down.iter().cloned().collect();
        let index: HashMap<Permutation, usize> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut covers = vec![Vec::new(); elems.len()];
        let mut below = BitRows::new(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if e.len() < 2 {
                continue;
            }
            let mut children: Vec<usize> = (0..e.len()).map(|pos| index[&e.delete_point(pos)]).collect();
            children.sort_unstable();
            children.dedup();
            for &c in &children {
                below.or_into(i, c);
                below.set(i, c);
            }
            covers[i] = children;
        }
        Interval { elems, index, covers, below }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Elements covered by element `i` (its one-point deletions).
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// True iff element `j` is strictly below element `i`.
    pub fn is_below(&self, j: usize, i: usize) -> bool {
        self.below.get(i, j)
    }

    /// Indices strictly below element `i`, ascending.
    pub fn strictly_below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below.ones(i)
    }

    pub fn cover_edges(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }
}
