//! Chains in `[1, π]`: enumeration, sampling, Hall sums, and the R/G/B
//! partition of chains of a 2413-balloon with its two parity-reversing maps.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balloon::{balloon_2413, core, is_2413_balloon, proper_reductions, unballoon_2413};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::{contains, is_monotone, Permutation};

/// Default cap on the number of chains an enumeration may produce.
pub const DEFAULT_CHAIN_LIMIT: u128 = 10_000_000;

/// A chain `1 = c_0 < c_1 < … < c_k = top`, stored bottom to top.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    elements: Vec<Permutation>,
}

impl Chain {
    pub fn new(elements: Vec<Permutation>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidChain("empty".into()))?;
        if !first.is_one() {
            return Err(Error::InvalidChain(format!("bottom is {first}, not 1")));
        }
        for w in elements.windows(2) {
            if !w[0].is_strictly_below(&w[1]) {
                return Err(Error::InvalidChain(format!("{} is not below {}", w[0], w[1])));
            }
        }
        Ok(Chain { elements })
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn top(&self) -> &Permutation {
        self.elements.last().expect("chains are non-empty")
    }

    /// `|c|`: one less than the number of elements.
    pub fn length(&self) -> usize {
        self.elements.len() - 1
    }

    /// `(−1)^|c|`.
    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `κ_c`, the element just below the top.
    pub fn second_highest(&self) -> Option<&Permutation> {
        let n = self.elements.len();
        (n >= 2).then(|| &self.elements[n - 2])
    }

    fn insert_above(&self, pos: usize, p: Permutation) -> Result<Chain> {
        let mut e = self.elements.clone();
        e.insert(pos + 1, p);
        Chain::new(e)
    }

    fn remove_at(&self, pos: usize) -> Result<Chain> {
        if pos + 1 == self.elements.len() {
            return Err(Error::InvalidChain(format!("removing the top {} of {self}", self.top())));
        }
        let mut e = self.elements.clone();
        e.remove(pos);
        Chain::new(e)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain({self})")
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .trim()
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        Chain::new(elements)
    }
}

/// Chain counts of `[1, x]` for the top `x`, by parity of length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainCount {
    pub even: u128,
    pub odd: u128,
}

impl ChainCount {
    /// Saturates at `u128::MAX`.
    pub fn total(&self) -> u128 {
        self.even.saturating_add(self.odd)
    }

    /// `even − odd`, which by Hall's theorem is `μ(1, top)`.
    pub fn hall_sum(&self) -> Option<i128> {
        let e = i128::try_from(self.even).ok()?;
        let o = i128::try_from(self.odd).ok()?;
        Some(e - o)
    }
}

/// Counts the chains of every `[1, x]` in one pass over the strict order.
pub fn count_chains(iv: &Interval) -> Vec<ChainCount> {
    let mut counts = vec![ChainCount { even: 0, odd: 0 }; iv.len()];
    counts[0] = ChainCount { even: 1, odd: 0 };
    for i in 1..iv.len() {
        let mut c = ChainCount { even: 0, odd: 0 };
        for j in iv.strictly_below(i) {
            c.even = c.even.saturating_add(counts[j].odd);
            c.odd = c.odd.saturating_add(counts[j].even);
        }
        counts[i] = c;
    }
    counts
}

/// Streams every chain of `[1, π]` exactly once (depth first from the top).
pub struct ChainIter {
    iv: Arc<Interval>,
    below: Vec<Vec<usize>>,
    // path[k] is the element at depth k below the top; frames[k] holds
    // path[k] and the next candidate below it to try
    path: Vec<usize>,
    frames: Vec<(usize, usize)>,
    single: bool,
}

impl ChainIter {
    pub fn new(iv: Arc<Interval>) -> Self {
        let top = iv.top();
        let single = top == 0;
        let below: Vec<Vec<usize>> = (0..iv.len()).map(|i| iv.strictly_below(i).collect()).collect();
        let frames = if single { vec![] } else { vec![(top, 0)] };
        ChainIter { iv, below, path: vec![top], frames, single }
    }

    pub fn interval(&self) -> &Interval {
        &self.iv
    }

    /// Next chain as interval indices, bottom to top.
    pub fn next_indices(&mut self) -> Option<Vec<usize>> {
        if self.single {
            self.single = false;
            return Some(vec![0]);
        }
        loop {
            let (elem, pos) = self.frames.last_mut()?;
            let cands = &self.below[*elem];
            if *pos == cands.len() {
                self.frames.pop();
                self.path.pop();
                continue;
            }
            let next = cands[*pos];
            *pos += 1;
            if next == 0 {
                let mut out: Vec<usize> = vec![0];
                out.extend(self.path.iter().rev());
                return Some(out);
            }
            self.path.push(next);
            self.frames.push((next, 0));
        }
    }
}

impl Iterator for ChainIter {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        let idx = self.next_indices()?;
        Some(Chain { elements: idx.iter().map(|&i| self.iv.element(i).clone()).collect() })
    }
}

/// All chains of `[1, π]`, provided there are at most `limit` of them.
pub fn enumerate_chains(pi: &Permutation, limit: u128) -> Result<ChainIter> {
    let iv = Arc::new(Interval::new(pi));
    let count = count_chains(&iv)[iv.top()].total();
    if count > limit {
        let count = if count == u128::MAX { "more than 2^128".into() } else { count.to_string() };
        return Err(Error::TooManyChains { pi: pi.clone(), count, limit });
    }
    Ok(ChainIter::new(iv))
}

/// `k` random chains of `[1, π]`: a random maximal chain by repeated point
/// deletion, then a random subset of its interior. Not uniform.
pub fn sample_chains(pi: &Permutation, k: usize, seed: u64) -> Vec<Chain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| sample_chain(pi, &mut rng)).collect()
}

fn sample_chain<R: Rng>(pi: &Permutation, rng: &mut R) -> Chain {
    let mut maximal = vec![pi.clone()];
    while maximal.last().unwrap().len() > 1 {
        let cur = maximal.last().unwrap();
        let pos = rng.gen_range(0..cur.len());
        maximal.push(cur.delete_point(pos));
    }
    maximal.reverse();
    // vary the density so both short and long chains turn up
    let keep = rng.gen_range(0.1..0.9);
    let last = maximal.len() - 1;
    let elements = maximal
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i == 0 || i == last || rng.gen_bool(keep))
        .map(|(_, p)| p)
        .collect();
    Chain { elements }
}

/// `Σ (−1)^|c|`.
pub fn hall_sum<'a>(chains: impl IntoIterator<Item = &'a Chain>) -> i64 {
    chains.into_iter().map(Chain::sign).sum()
}

/// `μ(1, π)` as the Hall sum over an explicit enumeration.
pub fn mu_via_chains(pi: &Permutation, limit: u128) -> Result<i64> {
    let mut it = enumerate_chains(pi, limit)?;
    let mut sum = 0i64;
    while let Some(idx) = it.next_indices() {
        sum += if idx.len() % 2 == 1 { 1 } else { -1 };
    }
    Ok(sum)
}

/// Hall sums of the chains of `[1, π]` grouped by second-highest element.
pub fn hall_sums_by_second_element(pi: &Permutation, limit: u128) -> Result<BTreeMap<Permutation, i64>> {
    let mut it = enumerate_chains(pi, limit)?;
    let mut by_idx: BTreeMap<usize, i64> = BTreeMap::new();
    while let Some(idx) = it.next_indices() {
        if idx.len() >= 2 {
            let sign = if idx.len() % 2 == 1 { 1 } else { -1 };
            *by_idx.entry(idx[idx.len() - 2]).or_default() += sign;
        }
    }
    let iv = it.interval();
    Ok(by_idx.into_iter().map(|(i, s)| (iv.element(i).clone(), s)).collect())
}

/// Hall sum of the chains of `[1, π]` whose second-highest element is `ψ`.
pub fn mu_second_element_sum(pi: &Permutation, psi: &Permutation, limit: u128) -> Result<i64> {
    if psi.is_one() || !psi.is_strictly_below(pi) {
        return Err(Error::Precondition(format!("need 1 < {psi} < {pi}")));
    }
    Ok(hall_sums_by_second_element(pi, limit)?.get(psi).copied().unwrap_or(0))
}

/// The distinguished elements of a chain whose top is a 2413-balloon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainAnatomy {
    /// Least 2413-balloon: bottom of the maximal run of balloons at the top.
    pub phi: Permutation,
    /// Pivot: the element just below `phi`.
    pub psi: Permutation,
    /// `⟨2413, tau⟩ = phi`.
    pub tau: Permutation,
    /// Second-highest element.
    pub kappa: Permutation,
    /// Core of the pivot.
    pub eta: Permutation,
    phi_pos: usize,
}

impl ChainAnatomy {
    /// Position of `phi` in the chain (bottom is 0).
    pub fn phi_position(&self) -> usize {
        self.phi_pos
    }
}

pub fn anatomy(c: &Chain) -> Result<ChainAnatomy> {
    let e = c.elements();
    if !is_2413_balloon(c.top()) {
        return Err(Error::NotABalloon(c.top().clone()));
    }
    let mut phi_pos = e.len() - 1;
    while phi_pos > 0 && is_2413_balloon(&e[phi_pos - 1]) {
        phi_pos -= 1;
    }
    if phi_pos == 0 {
        return Err(Error::InvalidChain(format!("no pivot below the balloons in {c}")));
    }
    let phi = e[phi_pos].clone();
    let psi = e[phi_pos - 1].clone();
    Ok(ChainAnatomy {
        tau: unballoon_2413(&phi).expect("phi is a balloon"),
        kappa: e[e.len() - 2].clone(),
        eta: core(&psi),
        phi,
        psi,
        phi_pos,
    })
}

fn p2413() -> Permutation {
    Permutation::from_vec_unchecked(vec![2, 4, 1, 3])
}

/// `Φ_G`: remove `2413` when it is the pivot, otherwise insert it just above
/// the pivot.
pub fn phi_g(c: &Chain) -> Result<Chain> {
    let a = anatomy(c)?;
    let target = p2413();
    if a.psi == target {
        c.remove_at(a.phi_pos - 1)
    } else if a.psi.is_strictly_below(&target) {
        c.insert_above(a.phi_pos - 1, target)
    } else {
        Err(Error::Precondition(format!("pivot {} is not below 2413 in {c}", a.psi)))
    }
}

/// `Φ_B`: remove `⟨2413, η⟩` when `η = τ` (it is then `φ`), otherwise insert
/// it just above the pivot.
pub fn phi_b(c: &Chain) -> Result<Chain> {
    let a = anatomy(c)?;
    if a.eta == a.tau {
        c.remove_at(a.phi_pos)
    } else if a.eta.is_strictly_below(&a.tau) {
        c.insert_above(a.phi_pos - 1, balloon_2413(&a.eta))
    } else {
        Err(Error::Precondition(format!("core {} is not below tau {} in {c}", a.eta, a.tau)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainClass {
    R,
    G,
    B,
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainClass::R => "R",
            ChainClass::G => "G",
            ChainClass::B => "B",
        })
    }
}

/// Chains of `[1, π]` for a 2413-balloon `π = ⟨2413, β⟩`, with `R_π` fixed.
#[derive(Debug, Clone)]
pub struct BalloonChains {
    pi: Permutation,
    beta: Permutation,
    proper: HashSet<Permutation>,
}

impl BalloonChains {
    pub fn new(pi: &Permutation) -> Result<Self> {
        let beta = unballoon_2413(pi).ok_or_else(|| Error::NotABalloon(pi.clone()))?;
        let proper = proper_reductions(&beta).into_iter().collect();
        Ok(BalloonChains { pi: pi.clone(), beta, proper })
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn proper_reductions(&self) -> &HashSet<Permutation> {
        &self.proper
    }

    /// Whether `Φ_B` is claimed to be an involution on `B` for this `π`:
    /// `|β| > 4` and `β` either a balloon or not monotone.
    pub fn phi_b_in_scope(&self) -> bool {
        self.beta.len() > 4 && (is_2413_balloon(&self.beta) || !is_monotone(&self.beta))
    }

    /// Whether `Φ_G` is claimed to be an involution on `G`: `|β| > 4`.
    pub fn phi_g_in_scope(&self) -> bool {
        self.beta.len() > 4
    }

    pub fn classify(&self, c: &Chain) -> Result<ChainClass> {
        if c.top() != &self.pi {
            return Err(Error::InvalidChain(format!("top of {c} is not {}", self.pi)));
        }
        let kappa = c
            .second_highest()
            .ok_or_else(|| Error::InvalidChain(format!("{c} has no second element")))?;
        if self.proper.contains(kappa) {
            return Ok(ChainClass::R);
        }
        let a = anatomy(c)?;
        if contains(&a.psi, &p2413()) {
            Ok(ChainClass::G)
        } else {
            Ok(ChainClass::B)
        }
    }
}

/// Labels each chain of a balloon's interval with its class.
pub fn partition_rgb(pi: &Permutation, chains: &[Chain]) -> Result<Vec<ChainClass>> {
    let ctx = BalloonChains::new(pi)?;
    chains.iter().map(|c| ctx.classify(c)).collect()
}

/// A chain on which `Φ_G` or `Φ_B` misbehaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionFailure {
    pub map: ChainClass,
    pub chain: Chain,
    pub reason: String,
}

impl fmt::Display for InvolutionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi_{} on {}: {}", self.map, self.chain, self.reason)
    }
}

/// Running tally of classes, Hall sums and involution checks.
#[derive(Debug, Clone, Default)]
pub struct InvolutionAudit {
    pub chains: u64,
    pub counts: BTreeMap<ChainClass, u64>,
    pub hall: BTreeMap<ChainClass, i64>,
    pub failures: Vec<InvolutionFailure>,
    /// Number of stored failures is capped; this counts all of them.
    pub failure_count: u64,
}

const MAX_STORED_FAILURES: usize = 20;

impl InvolutionAudit {
    pub fn hall_of(&self, class: ChainClass) -> i64 {
        self.hall.get(&class).copied().unwrap_or(0)
    }

    pub fn count_of(&self, class: ChainClass) -> u64 {
        self.counts.get(&class).copied().unwrap_or(0)
    }

    fn fail(&mut self, map: ChainClass, chain: &Chain, reason: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(InvolutionFailure { map, chain: chain.clone(), reason });
        }
    }

    /// Classifies `c` and, if it is in `G` or `B`, checks that the matching
    /// map sends it to a chain of the same class, with length differing by
    /// one, and back again. `B` is only checked when `check_b` is set.
    pub fn record(&mut self, ctx: &BalloonChains, c: &Chain, check_b: bool) -> Result<ChainClass> {
        let class = ctx.classify(c)?;
        self.chains += 1;
        *self.counts.entry(class).or_default() += 1;
        *self.hall.entry(class).or_default() += c.sign();
        let map: fn(&Chain) -> Result<Chain> = match class {
            ChainClass::R => return Ok(class),
            ChainClass::G => phi_g,
            ChainClass::B if check_b => phi_b,
            ChainClass::B => return Ok(class),
        };
        let image = match map(c) {
            Ok(img) => img,
            Err(e) => {
                self.fail(class, c, format!("image is not a chain: {e}"));
                return Ok(class);
            }
        };
        match ctx.classify(&image) {
            Ok(k) if k == class => {}
            Ok(k) => {
                self.fail(class, c, format!("image {image} lies in {k}"));
                return Ok(class);
            }
            Err(e) => {
                self.fail(class, c, format!("image {image}: {e}"));
                return Ok(class);
            }
        }
        if image.length().abs_diff(c.length()) != 1 {
            self.fail(class, c, format!("image {image} does not change length by one"));
        }
        match map(&image) {
            Ok(back) if back == *c => {}
            Ok(back) => self.fail(class, c, format!("map applied twice gives {back}")),
            Err(e) => self.fail(class, c, format!("map fails on image {image}: {e}")),
        }
        Ok(class)
    }
}
