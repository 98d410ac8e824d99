//! 2413-balloons, the general `(i,j)`-balloon, reductions of a balloon and the
//! core of a pivot.
//!
//! The four extremal points of `⟨2413, β⟩` are called the red points and are
//! labelled by their value in `2413`: `2` is the leftmost point, `4` the
//! topmost, `1` the bottommost and `3` the rightmost.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{corners, flatten, is_monotone, Permutation};

/// `⟨2413, β⟩`: `β` inflated into the centre of `2413`.
pub fn balloon_2413(beta: &Permutation) -> Permutation {
    let b = beta.len() as u8;
    let mut v = Vec::with_capacity(beta.len() + 4);
    v.push(2);
    v.push(b + 4);
    v.extend(beta.values().iter().map(|&x| x + 2));
    v.push(1);
    v.push(b + 3);
    Permutation::from_vec_unchecked(v)
}

/// Inverse of [`balloon_2413`].
pub fn unballoon_2413(pi: &Permutation) -> Option<Permutation> {
    let v = pi.values();
    let n = v.len();
    if n < 5 {
        return None;
    }
    let n8 = n as u8;
    if v[0] != 2 || v[1] != n8 || v[n - 2] != 1 || v[n - 1] != n8 - 1 {
        return None;
    }
    // the remaining values are then exactly 3..=n-2
    Some(Permutation::from_vec_unchecked(
        v[2..n - 2].iter().map(|&x| x - 2).collect(),
    ))
}

pub fn is_2413_balloon(pi: &Permutation) -> bool {
    unballoon_2413(pi).is_some()
}

/// `π^(n)`: `1`, `12`, `132`, `2413`, then `⟨2413, π^(n−4)⟩`.
pub fn pi_sequence(n: usize) -> Result<Permutation> {
    let base = match n {
        0 => return Err(Error::SequenceIndex),
        1 => "1",
        2 => "12",
        3 => "132",
        4 => "2413",
        _ => return Ok(balloon_2413(&pi_sequence(n - 4)?)),
    };
    base.parse()
}

/// Indexes of a general balloon `⟨i,j⟩(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralBalloonSpec {
    alpha: Permutation,
    i: usize,
    j: usize,
}

impl GeneralBalloonSpec {
    pub fn new(alpha: Permutation, i: usize, j: usize) -> Result<Self> {
        if i > alpha.len() || j > alpha.len() {
            return Err(Error::BalloonIndex { i, j, len: alpha.len() });
        }
        Ok(GeneralBalloonSpec { alpha, i, j })
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn column(&self) -> usize {
        self.i
    }

    pub fn row(&self) -> usize {
        self.j
    }
}

/// `⟨i,j⟩(α, β)`, implemented case by case from the five-case definition:
/// columns `1..=i` of `α`, then `β` shifted up by `j`, then the rest of `α`,
/// with every value of `α` above `j` lifted by `|β|`.
///
/// Note that with `i = j = 0` this yields `β ⊕ α`, and with `i = j = |α|`
/// it yields `α ⊕ β`.
pub fn balloon_general(spec: &GeneralBalloonSpec, beta: &Permutation) -> Permutation {
    let (a, b) = (spec.alpha.values(), beta.len());
    let (i, j) = (spec.i, spec.j);
    let lift = |x: u8| if (x as usize) <= j { x } else { x + b as u8 };
    let mut v = Vec::with_capacity(a.len() + b);
    for x in 1..=a.len() + b {
        let value = if x <= i {
            lift(a[x - 1])
        } else if x <= i + b {
            beta.values()[x - i - 1] + j as u8
        } else {
            lift(a[x - b - 1])
        };
        v.push(value);
    }
    Permutation::from_vec_unchecked(v)
}

/// Recovers `β` from `π = ⟨i,j⟩(α, β)`, if `π` has that shape.
pub fn unballoon_general(spec: &GeneralBalloonSpec, pi: &Permutation) -> Option<Permutation> {
    let a = spec.alpha.len();
    if pi.len() <= a {
        return None;
    }
    let b = pi.len() - a;
    let middle = &pi.values()[spec.i..spec.i + b];
    let shifted: Vec<u8> = middle
        .iter()
        .map(|&x| (x as usize).checked_sub(spec.j).filter(|&y| (1..=b).contains(&y)))
        .map(|y| y.map(|y| y as u8))
        .collect::<Option<_>>()?;
    let beta = Permutation::new(shifted).ok()?;
    (balloon_general(spec, &beta) == *pi).then_some(beta)
}

/// Which of the red points `2, 4, 1, 3` a reduction keeps.
///
/// Bit 0 is the point `2` (left), bit 1 is `4` (top), bit 2 is `1` (bottom)
/// and bit 3 is `3` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RedMask(u8);

impl RedMask {
    pub const LEFT: u8 = 0b0001;
    pub const TOP: u8 = 0b0010;
    pub const BOTTOM: u8 = 0b0100;
    pub const RIGHT: u8 = 0b1000;
    pub const ALL: RedMask = RedMask(0b1111);
    pub const NONE: RedMask = RedMask(0);

    pub fn new(bits: u8) -> Self {
        assert!(bits <= 0b1111);
        RedMask(bits)
    }

    /// Mask from the kept points named by their labels in `2413`.
    pub fn kept(labels: &str) -> Self {
        let mut bits = 0;
        for c in labels.chars() {
            bits |= match c {
                '2' => Self::LEFT,
                '4' => Self::TOP,
                '1' => Self::BOTTOM,
                '3' => Self::RIGHT,
                _ => panic!("red point labels are 2, 4, 1, 3"),
            };
        }
        RedMask(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn keeps(self, bit: u8) -> bool {
        self.0 & bit != 0
    }

    /// The mask after a quarter turn ([`Permutation::rotate`]): left goes to
    /// top, top to right, right to bottom and bottom to left.
    pub fn rotate(self) -> Self {
        let mut out = 0;
        if self.keeps(Self::LEFT) {
            out |= Self::TOP;
        }
        if self.keeps(Self::TOP) {
            out |= Self::RIGHT;
        }
        if self.keeps(Self::RIGHT) {
            out |= Self::BOTTOM;
        }
        if self.keeps(Self::BOTTOM) {
            out |= Self::LEFT;
        }
        RedMask(out)
    }

    /// Overline notation, e.g. `_2 4 1 _3` for a reduction that drops 2 and 3.
    pub fn overline(self) -> String {
        [(Self::LEFT, '2'), (Self::TOP, '4'), (Self::BOTTOM, '1'), (Self::RIGHT, '3')]
            .iter()
            .map(|&(bit, c)| if self.keeps(bit) { c.to_string() } else { format!("_{c}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for RedMask {
    /// Kept flags in the order `2, 4, 1, 3`, e.g. `0111` for `⟨2̄413, β⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in [Self::LEFT, Self::TOP, Self::BOTTOM, Self::RIGHT] {
            f.write_str(if self.keeps(bit) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for RedMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let flags: Vec<char> = s.chars().collect();
        if flags.len() != 4 || flags.iter().any(|c| *c != '0' && *c != '1') {
            return Err(Error::Malformed(s.to_string()));
        }
        let order = [Self::LEFT, Self::TOP, Self::BOTTOM, Self::RIGHT];
        Ok(RedMask(
            flags.iter().zip(order).filter(|(c, _)| **c == '1').map(|(_, b)| b).sum(),
        ))
    }
}

/// The fifteen reduction shapes in display order: three red points, two,
/// one, then `β` alone.
pub const REDUCTION_MASKS: [&str; 15] = [
    "413", "213", "243", "241", "13", "43", "41", "23", "21", "24", "2", "4", "1", "3", "",
];

/// How `β` sits relative to the balloon construction; decides which
/// reductions are proper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaShape {
    Balloon,
    NoCorners,
    /// One corner; the payload is the number of quarter turns that bring the
    /// corner to the bottom left (`β = 1 ⊕ γ`).
    OneCorner(u8),
    /// Two corners; quarter turns that bring `β` to `1 ⊕ γ ⊕ 1`.
    TwoCorners(u8),
}

impl BetaShape {
    pub fn of(beta: &Permutation) -> Self {
        if is_2413_balloon(beta) {
            return BetaShape::Balloon;
        }
        match corners(beta) {
            0 => BetaShape::NoCorners,
            1 => BetaShape::OneCorner(turns_until(beta, |b| b.values()[0] == 1)),
            _ => BetaShape::TwoCorners(turns_until(beta, |b| {
                let n = b.len();
                b.values()[0] == 1 && b.values()[n - 1] as usize == n
            })),
        }
    }

    /// Improper masks for this shape, in the orientation of `β` itself.
    fn improper_masks(self) -> Vec<RedMask> {
        let (labels, turns): (&[&str], u8) = match self {
            BetaShape::Balloon => (&[""], 0),
            BetaShape::NoCorners => (&[], 0),
            BetaShape::OneCorner(k) => (&["13", "1", "3", ""], k),
            BetaShape::TwoCorners(k) => (&["13", "24", "2", "4", "1", "3", ""], k),
        };
        labels
            .iter()
            .map(|l| unrotate(RedMask::kept(l), turns))
            .collect()
    }
}

fn turns_until(beta: &Permutation, ok: impl Fn(&Permutation) -> bool) -> u8 {
    let mut cur = beta.clone();
    for k in 0..4 {
        if ok(&cur) {
            return k;
        }
        cur = cur.rotate();
    }
    unreachable!("a corner can always be turned to the bottom left")
}

/// Mask `m` of the turned `β` corresponds to `unrotate(m, k)` of `β` itself.
fn unrotate(mask: RedMask, turns: u8) -> RedMask {
    (0..(4 - turns) % 4).fold(mask, |m, _| m.rotate())
}

/// One reduction `σ` of `⟨2413, β⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionRecord {
    pub sigma: Permutation,
    pub red_mask: RedMask,
    pub proper: bool,
}

impl fmt::Display for ReductionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.proper { "proper" } else { "improper" };
        write!(f, "{} {} {}", self.red_mask, self.sigma, kind)
    }
}

impl std::str::FromStr for ReductionRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [mask, sigma, kind] = parts[..] else {
            return Err(Error::Malformed(line.to_string()));
        };
        let proper = match kind {
            "proper" => true,
            "improper" => false,
            _ => return Err(Error::Malformed(line.to_string())),
        };
        Ok(ReductionRecord { sigma: sigma.parse()?, red_mask: mask.parse()?, proper })
    }
}

/// `π = ⟨2413, β⟩` with the red points not in `mask` removed.
pub fn reduce(beta: &Permutation, mask: RedMask) -> Permutation {
    let pi = balloon_2413(beta);
    let n = pi.len();
    let keep = |pos: usize| match pos {
        0 => mask.keeps(RedMask::LEFT),
        1 => mask.keeps(RedMask::TOP),
        p if p == n - 2 => mask.keeps(RedMask::BOTTOM),
        p if p == n - 1 => mask.keeps(RedMask::RIGHT),
        _ => true,
    };
    let kept: Vec<u8> = pi
        .values()
        .iter()
        .enumerate()
        .filter(|&(pos, _)| keep(pos))
        .map(|(_, &v)| v)
        .collect();
    flatten(&kept)
}

/// All fifteen reductions of `⟨2413, β⟩` with their proper/improper
/// classification.
///
/// When `β` is monotone different masks can flatten to the same `σ`; only the
/// first record for each `σ` is kept in that case (use [`reduction_records`]
/// for the raw list).
pub fn reductions(beta: &Permutation) -> Vec<ReductionRecord> {
    let all = reduction_records(beta);
    if !is_monotone(beta) {
        return all;
    }
    let mut seen = BTreeSet::new();
    all.into_iter().filter(|r| seen.insert(r.sigma.clone())).collect()
}

/// The fifteen records, one per mask, without deduplication.
pub fn reduction_records(beta: &Permutation) -> Vec<ReductionRecord> {
    let improper = BetaShape::of(beta).improper_masks();
    REDUCTION_MASKS
        .iter()
        .map(|labels| {
            let red_mask = RedMask::kept(labels);
            ReductionRecord {
                sigma: reduce(beta, red_mask),
                red_mask,
                proper: !improper.contains(&red_mask),
            }
        })
        .collect()
}

/// `R_π` for `π = ⟨2413, β⟩`.
pub fn proper_reductions(beta: &Permutation) -> BTreeSet<Permutation> {
    reduction_records(beta)
        .into_iter()
        .filter(|r| r.proper)
        .map(|r| r.sigma)
        .collect()
}

/// Table coefficients: `μ(σ) = coefficient · μ(β)` for each proper reduction.
///
/// Tables are stated for `β` a balloon, `β` cornerless, `β = 1 ⊕ γ` and
/// `β = 1 ⊕ γ ⊕ 1`; other corner orientations are turned into those first.
pub fn reduction_mu_table(beta: &Permutation) -> Result<Vec<(ReductionRecord, i64)>> {
    if is_monotone(beta) {
        return Err(Error::MonotoneBeta(beta.clone()));
    }
    let shape = BetaShape::of(beta);
    let (table, turns): (&[(&str, i64)], u8) = match shape {
        BetaShape::Balloon => (BALLOON_TABLE, 0),
        BetaShape::NoCorners => (NO_CORNER_TABLE, 0),
        BetaShape::OneCorner(k) => (ONE_CORNER_TABLE, k),
        BetaShape::TwoCorners(k) => (TWO_CORNER_TABLE, k),
    };
    let records = reduction_records(beta);
    let mut out = Vec::with_capacity(table.len());
    for &(labels, coeff) in table {
        let mask = unrotate(RedMask::kept(labels), turns);
        let record = records
            .iter()
            .find(|r| r.red_mask == mask)
            .expect("every mask has a record")
            .clone();
        debug_assert!(record.proper);
        out.push((record, coeff));
    }
    Ok(out)
}

const BALLOON_TABLE: &[(&str, i64)] = &[
    ("413", -1),
    ("213", -1),
    ("243", -1),
    ("241", -1),
    ("13", 1),
    ("43", 1),
    ("41", 1),
    ("23", 1),
    ("21", 1),
    ("24", 1),
    ("2", -1),
    ("4", -1),
    ("1", -1),
    ("3", -1),
];

const NO_CORNER_TABLE: &[(&str, i64)] = &[
    ("413", -1),
    ("213", -1),
    ("243", -1),
    ("241", -1),
    ("13", 1),
    ("43", 1),
    ("41", 1),
    ("23", 1),
    ("21", 1),
    ("24", 1),
    ("2", -1),
    ("4", -1),
    ("1", -1),
    ("3", -1),
    ("", 1),
];

// β = 1 ⊕ γ
const ONE_CORNER_TABLE: &[(&str, i64)] = &[
    ("413", -1),
    ("213", 0),
    ("243", -1),
    ("241", -1),
    ("43", 1),
    ("41", 1),
    ("23", 0),
    ("21", 0),
    ("24", 1),
    ("2", 0),
    ("4", -1),
];

// β = 1 ⊕ γ ⊕ 1
const TWO_CORNER_TABLE: &[(&str, i64)] = &[
    ("413", -1),
    ("213", 0),
    ("243", 0),
    ("241", -1),
    ("43", 0),
    ("41", 1),
    ("23", 0),
    ("21", 0),
];

/// Value of `μ(⟨2413, β⟩)` predicted from `μ(β)`.
pub fn predicted_mu_balloon(beta: &Permutation, mu_beta: i64) -> i64 {
    match beta.to_string().as_str() {
        "1" => 4,
        "2413" => -6,
        _ if is_2413_balloon(beta) => 2 * mu_beta,
        _ => mu_beta,
    }
}

#[derive(Clone, Copy)]
enum Strip {
    OnePlus,
    PlusOne,
    OneMinus,
    MinusOne,
}

impl Strip {
    fn apply(self, p: &Permutation) -> Option<Permutation> {
        match self {
            Strip::OnePlus => p.split_one_plus(),
            Strip::PlusOne => p.split_plus_one(),
            Strip::OneMinus => p.split_one_minus(),
            Strip::MinusOne => p.split_minus_one(),
        }
    }
}

use Strip::{MinusOne, OneMinus, OnePlus, PlusOne};

// Each form is peeled from the outside in.
const CORE_TIERS: [&[&[Strip]]; 3] = [
    &[
        &[OneMinus, PlusOne, MinusOne], // 1 ⊖ ((η ⊖ 1) ⊕ 1)
        &[PlusOne, MinusOne, OnePlus],  // ((1 ⊕ η) ⊖ 1) ⊕ 1
        &[OnePlus, OneMinus, PlusOne],  // 1 ⊕ (1 ⊖ (η ⊕ 1))
        &[MinusOne, OnePlus, OneMinus], // (1 ⊕ (1 ⊖ η)) ⊖ 1
    ],
    &[
        &[PlusOne, MinusOne], // (η ⊖ 1) ⊕ 1
        &[OneMinus, PlusOne], // 1 ⊖ (η ⊕ 1)
        &[OneMinus, MinusOne], // 1 ⊖ η ⊖ 1
        &[OnePlus, PlusOne],  // 1 ⊕ η ⊕ 1
        &[MinusOne, OnePlus], // (1 ⊕ η) ⊖ 1
        &[OnePlus, OneMinus], // 1 ⊕ (1 ⊖ η)
    ],
    &[&[OnePlus], &[OneMinus], &[MinusOne], &[PlusOne]],
];

/// The core `η` of a pivot `ψ`: the first form (tier by tier, in order) that
/// `ψ` matches decides `η`; with no match `η = ψ`.
pub fn core(psi: &Permutation) -> Permutation {
    for tier in CORE_TIERS {
        for form in tier {
            let peeled = form
                .iter()
                .try_fold(psi.clone(), |cur, strip| strip.apply(&cur));
            if let Some(eta) = peeled {
                return eta;
            }
        }
    }
    psi.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{contains, direct_sum, permutations_of_length, skew_sum};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn balloon_examples() {
        assert_eq!(balloon_2413(&p("21")), p("264315"));
        assert_eq!(balloon_2413(&p("1")), p("25314"));
        assert_eq!(balloon_2413(&p("2413")), p("28463517"));
    }

    #[test]
    fn unballoon_examples() {
        assert_eq!(unballoon_2413(&p("264315")), Some(p("21")));
        assert_eq!(unballoon_2413(&p("2413")), None);
        assert_eq!(unballoon_2413(&p("25314")), Some(p("1")));
        assert_eq!(unballoon_2413(&p("25341")), None);
        assert!(!is_2413_balloon(&p("1")));
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(pi_sequence(5).unwrap(), p("25314"));
        assert_eq!(pi_sequence(8).unwrap(), p("28463517"));
        assert_eq!(pi_sequence(3).unwrap(), p("132"));
        assert_eq!(pi_sequence(0), Err(Error::SequenceIndex));
    }

    #[test]
    fn general_balloon_examples() {
        let s22 = GeneralBalloonSpec::new(p("2413"), 2, 2).unwrap();
        assert_eq!(balloon_general(&s22, &p("1")), p("25314"));
        assert_eq!(balloon_general(&s22, &p("21")), p("264315"));
        // the (0,0) case as the formula reads: β ⊕ α
        let s00 = GeneralBalloonSpec::new(p("1"), 0, 0).unwrap();
        assert_eq!(balloon_general(&s00, &p("1")), p("12"));
        let s00 = GeneralBalloonSpec::new(p("2413"), 0, 0).unwrap();
        assert_eq!(balloon_general(&s00, &p("21")), direct_sum(&p("21"), &p("2413")));
        let s44 = GeneralBalloonSpec::new(p("2413"), 4, 4).unwrap();
        assert_eq!(balloon_general(&s44, &p("21")), direct_sum(&p("2413"), &p("21")));
        assert!(matches!(
            GeneralBalloonSpec::new(p("2413"), 5, 0),
            Err(Error::BalloonIndex { .. })
        ));
    }

    #[test]
    fn general_unballoon_round_trip() {
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 2), (2, 2), (4, 3)] {
            let spec = GeneralBalloonSpec::new(p("2413"), i, j).unwrap();
            for n in 1..=5 {
                for beta in permutations_of_length(n) {
                    let pi = balloon_general(&spec, &beta);
                    assert_eq!(unballoon_general(&spec, &pi), Some(beta));
                }
            }
        }
        let spec = GeneralBalloonSpec::new(p("2413"), 1, 0).unwrap();
        assert_eq!(unballoon_general(&spec, &p("2413")), None);
        assert_eq!(unballoon_general(&spec, &p("12345")), None);
    }

    #[test]
    fn mask_text() {
        assert_eq!(RedMask::kept("413").to_string(), "0111");
        assert_eq!("0111".parse::<RedMask>().unwrap(), RedMask::kept("413"));
        assert_eq!(RedMask::kept("413").overline(), "_2 4 1 3");
        assert!("011".parse::<RedMask>().is_err());
        assert_eq!(RedMask::kept("2").rotate(), RedMask::kept("4"));
        assert_eq!(RedMask::kept("4").rotate(), RedMask::kept("3"));
        assert_eq!(RedMask::kept("3").rotate(), RedMask::kept("1"));
        assert_eq!(RedMask::kept("1").rotate(), RedMask::kept("2"));
    }

    #[test]
    fn rotation_commutes_with_ballooning() {
        for n in 1..=5 {
            for beta in permutations_of_length(n) {
                assert_eq!(balloon_2413(&beta).rotate(), balloon_2413(&beta.rotate()));
                for bits in 0..16 {
                    let m = RedMask::new(bits);
                    assert_eq!(reduce(&beta, m).rotate(), reduce(&beta.rotate(), m.rotate()));
                }
            }
        }
    }

    #[test]
    fn reduce_matches_overline_example() {
        // ⟨2̄4̄1̄3, 21⟩ = 213
        assert_eq!(reduce(&p("21"), RedMask::kept("3")), p("213"));
        assert_eq!(reduce(&p("21"), RedMask::ALL), p("264315"));
        assert_eq!(reduce(&p("21"), RedMask::NONE), p("21"));
    }

    #[test]
    fn reduction_counts_by_shape() {
        let cornerless = reductions(&p("2413"));
        assert_eq!(cornerless.len(), 15);
        assert!(cornerless.iter().all(|r| r.proper));

        let balloon = reduction_records(&p("25314"));
        assert_eq!(balloon.iter().filter(|r| r.proper).count(), 14);
        let improper: Vec<_> = balloon.iter().filter(|r| !r.proper).collect();
        assert_eq!(improper.len(), 1);
        assert_eq!(improper[0].sigma, p("25314"));

        let one_corner = direct_sum(&Permutation::one(), &p("231"));
        let recs = reduction_records(&one_corner);
        assert_eq!(recs.iter().filter(|r| r.proper).count(), 11);
        assert_eq!(recs.iter().filter(|r| !r.proper).count(), 4);

        let two = direct_sum(&direct_sum(&Permutation::one(), &p("21")), &Permutation::one());
        assert_eq!(two, p("1324"));
        assert_eq!(proper_reductions(&p("1324")).len(), 8);
        assert_eq!(proper_reductions(&p("2413")).len(), 15);
        assert_eq!(proper_reductions(&p("25314")).len(), 14);
    }

    #[test]
    fn one_corner_improper_list_in_standard_orientation() {
        let beta = p("1342");
        assert_eq!(BetaShape::of(&beta), BetaShape::OneCorner(0));
        let improper: BTreeSet<RedMask> = reduction_records(&beta)
            .into_iter()
            .filter(|r| !r.proper)
            .map(|r| r.red_mask)
            .collect();
        let expect: BTreeSet<RedMask> =
            ["13", "1", "3", ""].iter().map(|l| RedMask::kept(l)).collect();
        assert_eq!(improper, expect);
    }

    #[test]
    fn shapes_of_turned_corners() {
        // 1 ⊖ γ has its corner top left; three quarter turns bring it round
        let beta = skew_sum(&Permutation::one(), &p("132"));
        assert!(matches!(BetaShape::of(&beta), BetaShape::OneCorner(k) if k > 0));
        let beta = skew_sum(&skew_sum(&Permutation::one(), &p("12")), &Permutation::one());
        assert_eq!(BetaShape::of(&beta), BetaShape::TwoCorners(1));
    }

    #[test]
    fn reductions_sit_between_beta_and_balloon() {
        for n in 1..=6 {
            for beta in permutations_of_length(n) {
                let pi = balloon_2413(&beta);
                for r in reduction_records(&beta) {
                    assert!(contains(&beta, &r.sigma));
                    assert!(r.sigma.is_strictly_below(&pi));
                }
            }
        }
    }

    #[test]
    fn monotone_reductions_are_deduplicated() {
        let recs = reductions(&p("123"));
        let set: BTreeSet<_> = recs.iter().map(|r| r.sigma.clone()).collect();
        assert_eq!(set.len(), recs.len());
        assert!(recs.len() < 15);
        assert_eq!(reduction_records(&p("123")).len(), 15);
    }

    #[test]
    fn record_line_format() {
        let rec = ReductionRecord { sigma: p("213"), red_mask: RedMask::kept("3"), proper: false };
        assert_eq!(rec.to_string(), "0001 213 improper");
        assert_eq!("0001 213 improper".parse::<ReductionRecord>().unwrap(), rec);
        assert!("0001 213".parse::<ReductionRecord>().is_err());
    }

    #[test]
    fn table_lookups() {
        let t = reduction_mu_table(&p("25314")).unwrap();
        assert_eq!(t.len(), 14);
        let row = t.iter().find(|(r, _)| r.red_mask == RedMask::kept("413")).unwrap();
        assert_eq!(row.1, -1);

        let one_corner = direct_sum(&Permutation::one(), &p("2413"));
        let t = reduction_mu_table(&one_corner).unwrap();
        let row = t.iter().find(|(r, _)| r.red_mask == RedMask::kept("213")).unwrap();
        assert_eq!(row.1, 0);

        let two = direct_sum(&direct_sum(&Permutation::one(), &p("2413")), &Permutation::one());
        let t = reduction_mu_table(&two).unwrap();
        let row = t.iter().find(|(r, _)| r.red_mask == RedMask::kept("41")).unwrap();
        assert_eq!(row.1, 1);
        assert_eq!(t.iter().map(|(_, c)| c).sum::<i64>(), -1);

        assert!(matches!(reduction_mu_table(&p("123")), Err(Error::MonotoneBeta(_))));
    }

    #[test]
    fn table_sums() {
        let sum = |t: &[(&str, i64)]| t.iter().map(|(_, c)| c).sum::<i64>();
        assert_eq!(sum(BALLOON_TABLE), -2);
        assert_eq!(sum(NO_CORNER_TABLE), -1);
        assert_eq!(sum(ONE_CORNER_TABLE), -1);
        assert_eq!(sum(TWO_CORNER_TABLE), -1);
    }

    #[test]
    fn predicted_values() {
        assert_eq!(predicted_mu_balloon(&p("1"), 1), 4);
        assert_eq!(predicted_mu_balloon(&p("2413"), -3), -6);
        assert_eq!(predicted_mu_balloon(&p("25314"), 4), 8);
        assert_eq!(predicted_mu_balloon(&p("132"), 1), 1);
    }

    #[test]
    fn core_examples() {
        assert_eq!(core(&p("1")), p("1"));
        // (1 ⊕ 1) ⊖ 1 is a second-tier form
        assert_eq!(core(&p("231")), p("1"));
        assert_eq!(core(&p("4213")), p("1"));
        assert_eq!(core(&p("2413")), p("2413"));
        assert_eq!(core(&p("25314")), p("25314"));
        assert_eq!(core(&p("132")), p("1"));
    }

    #[test]
    fn core_balloon_dominates_pivot() {
        for n in 1..=7 {
            for psi in permutations_of_length(n) {
                assert!(contains(&psi, &balloon_2413(&core(&psi))), "{psi:?}");
            }
        }
    }
}
