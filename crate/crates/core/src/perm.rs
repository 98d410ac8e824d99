//! Permutations in one-line notation and the structural predicates used
//! throughout the crate: containment, sums, symmetries, intervals and corners.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored in one-line notation.
///
/// Values are kept as `u8`, so lengths up to 255 are representable. Everything
/// in this crate that enumerates subsets or chains is only practical far below
/// that.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    /// Builds a permutation from one-line values, checking the bijection.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Malformed(String::new()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::NotBijection {
                    len: n,
                    detail: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::NotBijection {
                    len: n,
                    detail: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn from_slice(values: &[usize]) -> Result<Self> {
        if values.len() > 255 {
            return Err(Error::TooLong);
        }
        let mut out = Vec::with_capacity(values.len());
        for &v in values {
            if v > 255 {
                return Err(Error::NotBijection {
                    len: values.len(),
                    detail: format!("value {v} out of range"),
                });
            }
            out.push(v as u8);
        }
        Self::new(out)
    }

    /// Caller guarantees `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Permutation(values)
    }

    /// The permutation `1`.
    pub fn one() -> Self {
        Permutation(vec![1])
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=255).contains(&n));
        Permutation((1..=n as u8).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        assert!((1..=255).contains(&n));
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1
    }

    /// Uniformly random permutation of length `n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut v: Vec<u8> = (1..=n as u8).collect();
        v.shuffle(rng);
        Permutation(v)
    }

    /// True iff `self` is contained in `other` as a pattern.
    pub fn is_contained_in(&self, other: &Permutation) -> bool {
        contains(self, other)
    }

    /// Strict containment: contained and not equal.
    pub fn is_strictly_below(&self, other: &Permutation) -> bool {
        self.len() < other.len() && contains(self, other)
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.0.len() as u8 + 1;
        Permutation(self.0.iter().map(|&v| n - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize - 1] = i as u8 + 1;
        }
        Permutation(out)
    }

    /// Quarter turn of the permutation plot: the point `(i, π_i)` moves to
    /// `(π_i, n + 1 − i)`. The four rotations are exactly the symmetries that
    /// fix `2413`.
    pub fn rotate(&self) -> Self {
        let n = self.0.len();
        let mut out = vec![0u8; n];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize - 1] = (n - i) as u8;
        }
        Permutation(out)
    }

    /// Removes the point at `pos` (0-based) and flattens the rest.
    pub fn delete_point(&self, pos: usize) -> Self {
        assert!(self.len() >= 2 && pos < self.len());
        let removed = self.0[pos];
        Permutation(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// `τ` with `self = 1 ⊕ τ`.
    pub fn split_one_plus(&self) -> Option<Self> {
        (self.len() >= 2 && self.0[0] == 1).then(|| self.delete_point(0))
    }

    /// `τ` with `self = τ ⊕ 1`.
    pub fn split_plus_one(&self) -> Option<Self> {
        let n = self.len();
        (n >= 2 && self.0[n - 1] as usize == n).then(|| self.delete_point(n - 1))
    }

    /// `τ` with `self = 1 ⊖ τ`.
    pub fn split_one_minus(&self) -> Option<Self> {
        let n = self.len();
        (n >= 2 && self.0[0] as usize == n).then(|| self.delete_point(0))
    }

    /// `τ` with `self = τ ⊖ 1`.
    pub fn split_minus_one(&self) -> Option<Self> {
        let n = self.len();
        (n >= 2 && self.0[n - 1] == 1).then(|| self.delete_point(n - 1))
    }

    /// All patterns contained in `self`, found by flattening every non-empty
    /// subset of positions.
    pub fn patterns(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        assert!(n < 32, "subset enumeration needs n < 32");
        let mut out = BTreeSet::new();
        let mut buf = Vec::with_capacity(n);
        for mask in 1u32..(1u32 << n) {
            buf.clear();
            for (i, &v) in self.0.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    buf.push(v);
                }
            }
            out.insert(flatten(&buf));
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses a digit string (`"2413"`, lengths up to 9) or a comma-separated
/// list (`"2,8,4,6,3,5,1,7"`).
pub fn parse(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Malformed(text.to_string()));
    }
    let values: Vec<usize> = if text.contains(',') {
        text.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Malformed(text.to_string()))
            })
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| match c {
                '1'..='9' => Ok(c as usize - '0' as usize),
                _ => Err(Error::Malformed(text.to_string())),
            })
            .collect::<Result<_>>()?
    };
    Permutation::from_slice(&values)
}

/// Order-isomorphic permutation of a sequence of distinct values.
pub fn flatten(values: &[u8]) -> Permutation {
    let mut bits = [0u64; 4];
    for &v in values {
        bits[(v >> 6) as usize] |= 1u64 << (v & 63);
    }
    let mut before = [0u32; 4];
    for w in 1..4 {
        before[w] = before[w - 1] + bits[w - 1].count_ones();
    }
    let ranked = values
        .iter()
        .map(|&v| {
            let w = (v >> 6) as usize;
            let low = bits[w] & ((1u64 << (v & 63)) - 1);
            (before[w] + low.count_ones() + 1) as u8
        })
        .collect();
    Permutation(ranked)
}

/// True iff `sigma` is contained in `pi`.
///
/// Backtracking embedding search. Each newly placed point only has to land in
/// the value window between the images of its nearest smaller and nearest
/// larger predecessors in `sigma`.
pub fn contains(sigma: &Permutation, pi: &Permutation) -> bool {
    let (s, p) = (sigma.values(), pi.values());
    let (m, n) = (s.len(), p.len());
    if m > n {
        return false;
    }
    if m == n {
        return s == p;
    }
    let mut lower = vec![usize::MAX; m];
    let mut upper = vec![usize::MAX; m];
    for r in 0..m {
        for q in 0..r {
            if s[q] < s[r] && (lower[r] == usize::MAX || s[q] > s[lower[r]]) {
                lower[r] = q;
            }
            if s[q] > s[r] && (upper[r] == usize::MAX || s[q] < s[upper[r]]) {
                upper[r] = q;
            }
        }
    }
    let mut chosen = vec![0u8; m];
    embed(p, m, &lower, &upper, 0, 0, &mut chosen)
}

fn embed(
    p: &[u8],
    m: usize,
    lower: &[usize],
    upper: &[usize],
    r: usize,
    start: usize,
    chosen: &mut [u8],
) -> bool {
    if r == m {
        return true;
    }
    let lo = if lower[r] == usize::MAX { 0 } else { chosen[lower[r]] as u16 };
    let hi = if upper[r] == usize::MAX { u16::MAX } else { chosen[upper[r]] as u16 };
    let last = p.len() - (m - r);
    for (pos, &v) in p.iter().enumerate().take(last + 1).skip(start) {
        let v16 = v as u16;
        if lo < v16 && v16 < hi {
            chosen[r] = v;
            if embed(p, m, lower, upper, r + 1, pos + 1, chosen) {
                return true;
            }
        }
    }
    false
}

/// Flattening of the values of `pi` at the given 0-based positions.
pub fn pattern_of(pi: &Permutation, positions: &[usize]) -> Result<Permutation> {
    let mut pos: Vec<usize> = positions.to_vec();
    pos.sort_unstable();
    pos.dedup();
    if pos.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(&bad) = pos.iter().find(|&&i| i >= pi.len()) {
        return Err(Error::PositionOutOfRange { pos: bad, len: pi.len() });
    }
    let vals: Vec<u8> = pos.iter().map(|&i| pi.values()[i]).collect();
    Ok(flatten(&vals))
}

/// `α ⊕ β`.
pub fn direct_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let a = alpha.len() as u8;
    let mut v = alpha.values().to_vec();
    v.extend(beta.values().iter().map(|&x| x + a));
    Permutation::from_vec_unchecked(v)
}

/// `α ⊖ β`.
pub fn skew_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let b = beta.len() as u8;
    let mut v: Vec<u8> = alpha.values().iter().map(|&x| x + b).collect();
    v.extend_from_slice(beta.values());
    Permutation::from_vec_unchecked(v)
}

/// The `r`-fold direct sum `α ⊕ … ⊕ α`.
pub fn n_sums(r: usize, alpha: &Permutation) -> Permutation {
    assert!(r >= 1, "n_sums needs r >= 1");
    (1..r).fold(alpha.clone(), |acc, _| direct_sum(&acc, alpha))
}

/// Orbit of `pi` under reverse, complement and inverse.
pub fn symmetries(pi: &Permutation) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    for base in [pi.clone(), pi.inverse()] {
        let r = base.reverse();
        out.insert(base.complement());
        out.insert(r.complement());
        out.insert(r);
        out.insert(base);
    }
    out
}

/// Lexicographically least member of the symmetry orbit.
pub fn canonical(pi: &Permutation) -> Permutation {
    symmetries(pi).into_iter().next().expect("orbit is non-empty")
}

/// Every interval other than single points and the whole permutation, as
/// 0-based inclusive position ranges.
pub fn nontrivial_intervals(pi: &Permutation) -> Vec<RangeInclusive<usize>> {
    let v = pi.values();
    let n = v.len();
    let mut out = Vec::new();
    for start in 0..n {
        let (mut lo, mut hi) = (v[start], v[start]);
        for (end, &x) in v.iter().enumerate().skip(start + 1) {
            lo = lo.min(x);
            hi = hi.max(x);
            if (hi - lo) as usize == end - start && !(start == 0 && end == n - 1) {
                out.push(start..=end);
            }
        }
    }
    out
}

pub fn is_simple(pi: &Permutation) -> bool {
    nontrivial_intervals(pi).is_empty()
}

pub fn simple_patterns(pi: &Permutation) -> BTreeSet<Permutation> {
    pi.patterns().into_iter().filter(is_simple).collect()
}

/// Number of points extremal in both position and value. `1` has one corner.
pub fn corners(pi: &Permutation) -> usize {
    let v = pi.values();
    let n = v.len();
    if n == 1 {
        return 1;
    }
    let extremal = |x: u8| x == 1 || x as usize == n;
    extremal(v[0]) as usize + extremal(v[n - 1]) as usize
}

/// True iff `pi` is `1⊕1⊕τ`, `1⊖1⊖τ`, `τ⊕1⊕1` or `τ⊖1⊖1` with `τ` non-empty.
pub fn has_long_corner(pi: &Permutation) -> bool {
    let v = pi.values();
    let n = v.len();
    if n < 3 {
        return false;
    }
    let (n8, m8) = (n as u8, (n - 1) as u8);
    (v[0] == 1 && v[1] == 2)
        || (v[0] == n8 && v[1] == m8)
        || (v[n - 1] == n8 && v[n - 2] == m8)
        || (v[n - 1] == 1 && v[n - 2] == 2)
}

/// Length of the longest run of adjacent positions whose values step by a
/// constant `+1` or `−1`.
pub fn longest_monotone_interval(pi: &Permutation) -> usize {
    let v = pi.values();
    let mut best = 1;
    let (mut up, mut down) = (1, 1);
    for w in v.windows(2) {
        up = if w[1] == w[0] + 1 { up + 1 } else { 1 };
        down = if w[1] + 1 == w[0] { down + 1 } else { 1 };
        best = best.max(up).max(down);
    }
    best
}

/// A monotone interval of exactly three points.
pub fn has_triple_adjacency(pi: &Permutation) -> bool {
    pi.values().windows(3).any(|w| {
        (w[1] == w[0] + 1 && w[2] == w[1] + 1) || (w[1] + 1 == w[0] && w[2] + 1 == w[1])
    })
}

pub fn is_monotone(pi: &Permutation) -> bool {
    longest_monotone_interval(pi) == pi.len()
}

/// The four one-corner shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CornerForm {
    /// `1 ⊕ τ`
    OnePlus,
    /// `τ ⊕ 1`
    PlusOne,
    /// `1 ⊖ τ`
    OneMinus,
    /// `τ ⊖ 1`
    MinusOne,
}

impl fmt::Display for CornerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CornerForm::OnePlus => "1+tau",
            CornerForm::PlusOne => "tau+1",
            CornerForm::OneMinus => "1-tau",
            CornerForm::MinusOne => "tau-1",
        })
    }
}

/// Every way `pi` splits off a single corner point.
pub fn corner_decompositions(pi: &Permutation) -> Vec<(CornerForm, Permutation)> {
    [
        (CornerForm::OnePlus, pi.split_one_plus()),
        (CornerForm::PlusOne, pi.split_plus_one()),
        (CornerForm::OneMinus, pi.split_one_minus()),
        (CornerForm::MinusOne, pi.split_minus_one()),
    ]
    .into_iter()
    .filter_map(|(form, tau)| tau.map(|t| (form, t)))
    .collect()
}

/// All permutations of length `n` in lexicographic order.
pub fn permutations_of_length(n: usize) -> Permutations {
    assert!((1..=255).contains(&n));
    Permutations {
        next: Some((1..=n as u8).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<u8>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(cur))
    }
}

fn next_lexicographic(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("2413").values(), &[2, 4, 1, 3]);
        assert_eq!(p("2,8,4,6,3,5,1,7").values(), &[2, 8, 4, 6, 3, 5, 1, 7]);
        assert_eq!(p("2,8,4,6,3,5,1,7"), p("28463517"));
        assert!(matches!(parse("1,1"), Err(Error::NotBijection { .. })));
        assert!(matches!(parse("13"), Err(Error::NotBijection { .. })));
        assert!(matches!(parse("12a"), Err(Error::Malformed(_))));
        assert!(matches!(parse(""), Err(Error::Malformed(_))));
        assert!(matches!(parse("1,,2"), Err(Error::Malformed(_))));
        assert!(matches!(parse("0"), Err(Error::Malformed(_))));
    }

    #[test]
    fn display_switches_to_commas_above_nine() {
        assert_eq!(p("25314").to_string(), "25314");
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(parse(&long.to_string()).unwrap(), long);
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&p("21"), &p("264315")));
        assert!(contains(&p("213"), &p("264315")));
        assert!(!contains(&p("123"), &p("321")));
        assert!(contains(&p("231"), &p("25314")));
        assert!(contains(&p("1"), &p("1")));
        assert!(!contains(&p("12"), &p("21")));
    }

    #[test]
    fn pattern_of_examples() {
        assert_eq!(pattern_of(&p("25314"), &[0, 1, 2]).unwrap(), p("132"));
        assert_eq!(pattern_of(&p("2413"), &[0, 1, 2, 3]).unwrap(), p("2413"));
        assert_eq!(pattern_of(&p("264315"), &[2, 3, 5]).unwrap(), p("213"));
        assert_eq!(pattern_of(&p("21"), &[]), Err(Error::EmptySelection));
        assert!(matches!(
            pattern_of(&p("21"), &[2]),
            Err(Error::PositionOutOfRange { pos: 2, len: 2 })
        ));
    }

    #[test]
    fn sums() {
        let one = Permutation::one();
        assert_eq!(direct_sum(&one, &one), p("12"));
        assert_eq!(skew_sum(&one, &one), p("21"));
        assert_eq!(n_sums(3, &one), p("123"));
        assert_eq!(direct_sum(&p("21"), &p("132")), p("21354"));
        assert_eq!(skew_sum(&p("21"), &p("132")), p("54132"));
    }

    #[test]
    fn symmetry_orbits() {
        assert_eq!(symmetries(&p("1")).len(), 1);
        assert_eq!(symmetries(&p("12")), [p("12"), p("21")].into());
        assert_eq!(symmetries(&p("2413")), [p("2413"), p("3142")].into());
        assert_eq!(canonical(&p("3142")), p("2413"));
    }

    #[test]
    fn rotation_has_order_four_and_fixes_2413() {
        assert_eq!(p("2413").rotate(), p("2413"));
        let x = p("263415");
        assert_ne!(x.rotate(), x);
        assert_eq!(x.rotate().rotate().rotate().rotate(), x);
        assert!(symmetries(&x).contains(&x.rotate()));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&p("2413")));
        assert!(!is_simple(&p("1324")));
        assert!(nontrivial_intervals(&p("1324")).contains(&(1..=2)));
        assert!(is_simple(&p("1")));
        assert!(is_simple(&p("12")));
        assert!(!is_simple(&p("123")));
        assert!(is_simple(&p("25314")));
    }

    #[test]
    fn simple_pattern_sets() {
        let expect: BTreeSet<_> = ["1", "12", "21", "2413", "25314"].iter().map(|s| p(s)).collect();
        assert_eq!(simple_patterns(&p("25314")), expect);
        assert_eq!(simple_patterns(&p("123")), [p("1"), p("12")].into());
        assert_eq!(simple_patterns(&p("1")), [p("1")].into());
    }

    #[test]
    fn corner_predicates() {
        assert_eq!(corners(&p("2413")), 0);
        let framed = direct_sum(&direct_sum(&Permutation::one(), &p("2413")), &Permutation::one());
        assert_eq!(corners(&framed), 2);
        assert_eq!(corners(&p("1")), 1);
        assert_eq!(corners(&p("132")), 1);
        let long = direct_sum(&p("12"), &p("21"));
        assert!(has_long_corner(&long));
        assert!(!has_long_corner(&p("132")));
        assert!(has_triple_adjacency(&p("123")));
        assert!(!has_triple_adjacency(&p("2413")));
        assert_eq!(longest_monotone_interval(&p("1432")), 3);
        assert_eq!(longest_monotone_interval(&p("2413")), 1);
        assert!(is_monotone(&p("321")));
        assert!(is_monotone(&p("1")));
        assert!(!is_monotone(&p("132")));
    }

    #[test]
    fn corner_decomposition_examples() {
        assert_eq!(corner_decompositions(&p("132")), vec![(CornerForm::OnePlus, p("21"))]);
        assert!(corner_decompositions(&p("2413")).is_empty());
        assert_eq!(
            corner_decompositions(&p("123")),
            vec![(CornerForm::OnePlus, p("12")), (CornerForm::PlusOne, p("12"))]
        );
    }

    #[test]
    fn permutation_enumeration() {
        let all: Vec<_> = permutations_of_length(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], p("123"));
        assert_eq!(all[5], p("321"));
        assert_eq!(permutations_of_length(6).count(), 720);
        assert_eq!(permutations_of_length(1).count(), 1);
    }

    #[test]
    fn patterns_of_increasing_run() {
        assert_eq!(p("123").patterns(), [p("1"), p("12"), p("123")].into());
    }
}
