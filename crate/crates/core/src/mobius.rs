//! The Möbius function of the pattern poset.
//!
//! `μ(σ, σ) = 1`, `μ(σ, π) = −Σ_{σ ≤ λ < π} μ(σ, λ)` for `σ < π`, and `0`
//! when `σ` is not contained in `π`. Principal values `μ(π) = μ(1, π)` are
//! memoized in a [`MuCache`].

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::{
    canonical, contains, corner_decompositions, has_long_corner, longest_monotone_interval,
    permutations_of_length, Permutation,
};
use crate::store::MuCache;

/// How a principal value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Recursive,
    ShortcutLongCorner,
    ShortcutTriple,
    ShortcutStrip,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Recursive => "recursive",
            Method::ShortcutLongCorner => "shortcut-long-corner",
            Method::ShortcutTriple => "shortcut-triple",
            Method::ShortcutStrip => "shortcut-strip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub pi: Permutation,
    pub mu: i64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MuOptions {
    /// Use the long-corner, monotone-interval and corner-strip shortcuts.
    pub accelerate: bool,
}

impl MuOptions {
    pub const PLAIN: MuOptions = MuOptions { accelerate: false };
    pub const ACCELERATED: MuOptions = MuOptions { accelerate: true };
}

fn checked_sum(mut values: impl Iterator<Item = i64>) -> Result<i64> {
    values.try_fold(0i64, |acc, v| acc.checked_add(v).ok_or(Error::Overflow))
}

fn negate(v: i64) -> Result<i64> {
    v.checked_neg().ok_or(Error::Overflow)
}

/// `μ(1, x)` for every element `x` of the interval, in interval order.
/// Values already in `cache` are reused; new ones are stored.
pub fn principal_on_interval(iv: &Interval, cache: &mut MuCache) -> Result<Vec<i64>> {
    let mut mu = vec![0i64; iv.len()];
    for i in 0..iv.len() {
        let elem = iv.element(i);
        if let Some(v) = cache.get(elem) {
            mu[i] = v;
            continue;
        }
        let v = if i == 0 {
            1
        } else {
            negate(checked_sum(iv.strictly_below(i).map(|j| mu[j]))?)?
        };
        cache.put(elem, v)?;
        mu[i] = v;
    }
    Ok(mu)
}

/// Like [`principal_on_interval`], but reads known values from `base` and
/// leaves it untouched, so many threads can share one table.
pub fn principal_with_base(iv: &Interval, base: &MuCache) -> Result<Vec<i64>> {
    let mut mu = vec![0i64; iv.len()];
    for i in 0..iv.len() {
        mu[i] = match base.get(iv.element(i)) {
            Some(v) => v,
            None if i == 0 => 1,
            None => negate(checked_sum(iv.strictly_below(i).map(|j| mu[j]))?)?,
        };
    }
    Ok(mu)
}

/// `μ(1, π)` by plain recursion over `[1, π]`, reusing `base`.
pub fn mu_with_base(pi: &Permutation, base: &MuCache) -> Result<i64> {
    if let Some(v) = base.get(pi) {
        return Ok(v);
    }
    let iv = Interval::new(pi);
    Ok(principal_with_base(&iv, base)?[iv.top()])
}

/// `μ(1, π)`.
pub fn mu_principal(pi: &Permutation, cache: &mut MuCache, opts: MuOptions) -> Result<MuResult> {
    let (mu, method) = if opts.accelerate {
        accelerated(pi, cache)?
    } else {
        (recursive(pi, cache)?, Method::Recursive)
    };
    Ok(MuResult { pi: pi.clone(), mu, method })
}

fn recursive(pi: &Permutation, cache: &mut MuCache) -> Result<i64> {
    if let Some(v) = cache.get(pi) {
        return Ok(v);
    }
    let iv = Interval::new(pi);
    Ok(principal_on_interval(&iv, cache)?[iv.top()])
}

fn accelerated(pi: &Permutation, cache: &mut MuCache) -> Result<(i64, Method)> {
    if let Some(m) = shortcut_zero(pi) {
        return Ok((0, m));
    }
    if let Some(v) = cache.get(pi) {
        return Ok((v, Method::Recursive));
    }
    if let Some((_, tau)) = corner_decompositions(pi).into_iter().next() {
        let (inner, _) = accelerated(&tau, cache)?;
        let v = negate(inner)?;
        cache.put(pi, v)?;
        return Ok((v, Method::ShortcutStrip));
    }
    Ok((recursive(pi, cache)?, Method::Recursive))
}

/// The zero shortcuts: a long corner, or a monotone interval of length ≥ 3.
pub fn shortcut_zero(pi: &Permutation) -> Option<Method> {
    if has_long_corner(pi) {
        Some(Method::ShortcutLongCorner)
    } else if longest_monotone_interval(pi) >= 3 {
        Some(Method::ShortcutTriple)
    } else {
        None
    }
}

/// `μ(σ, π)`.
pub fn mu(sigma: &Permutation, pi: &Permutation, cache: &mut MuCache) -> Result<i64> {
    if !contains(sigma, pi) {
        return Ok(0);
    }
    if sigma == pi {
        return Ok(1);
    }
    if sigma.is_one() {
        return recursive(pi, cache);
    }
    let iv = Interval::new(pi);
    let s = iv.index_of(sigma).expect("σ ≤ π lies in [1, π]");
    Ok(mu_from(&iv, s)?[iv.top()].expect("π lies above σ"))
}

/// `μ(σ, x)` for every element `x` of the interval, where `σ` is element `s`;
/// `None` where `σ ≰ x`.
pub fn mu_from(iv: &Interval, s: usize) -> Result<Vec<Option<i64>>> {
    let mut out: Vec<Option<i64>> = vec![None; iv.len()];
    out[s] = Some(1);
    for i in s + 1..iv.len() {
        if !iv.is_below(s, i) {
            continue;
        }
        let sum = checked_sum(iv.strictly_below(i).filter_map(|j| out[j]))?;
        out[i] = Some(negate(sum)?);
    }
    Ok(out)
}

/// One row of an exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub max_abs: i64,
    /// Symmetry-class representatives attaining `max_abs`, sorted.
    pub witnesses: Vec<Permutation>,
    /// Number of symmetry classes of length `n`.
    pub classes: usize,
}

impl SweepRow {
    /// `M(n) ≥ 2^(⌊n/4⌋ − 1)`, compared as `2·M(n) ≥ 2^⌊n/4⌋`.
    pub fn meets_growth_bound(&self) -> bool {
        let rhs = 1i128 << (self.n / 4);
        2 * self.max_abs as i128 >= rhs
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Largest `n` a sweep may be asked for.
    pub limit: usize,
    pub opts: MuOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { limit: 8, opts: MuOptions::ACCELERATED }
    }
}

/// Symmetry-class representatives of length `n`.
pub fn class_representatives(n: usize) -> Vec<Permutation> {
    permutations_of_length(n)
        .par_bridge()
        .filter(|p| canonical(p) == *p)
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `μ` of every permutation of length `n` (one per symmetry class when the
/// cache is canonical), assuming all shorter ones are cached; computed in
/// parallel and merged into `cache`.
pub fn sweep_length(n: usize, cache: &mut MuCache, opts: MuOptions) -> Result<Vec<(Permutation, i64)>> {
    let reps = if cache.is_canonical() {
        class_representatives(n)
    } else {
        permutations_of_length(n).collect()
    };
    let shared: &MuCache = cache;
    let computed: Vec<(Permutation, i64)> = reps
        .into_par_iter()
        .map(|rep| {
            if let Some(v) = shared.get(&rep) {
                return Ok((rep, v));
            }
            if opts.accelerate && shortcut_zero(&rep).is_some() {
                return Ok((rep, 0));
            }
            let v = if rep.is_one() {
                1
            } else {
                let lower = rep.patterns().into_iter().filter(|q| q.len() < n).map(|q| {
                    shared.get(&q).ok_or_else(|| {
                        Error::Precondition(format!("sweep of length {n} needs μ({q}) cached"))
                    })
                });
                let lower: Vec<i64> = lower.collect::<Result<_>>()?;
                negate(checked_sum(lower.into_iter())?)?
            };
            Ok((rep, v))
        })
        .collect::<Result<_>>()?;
    for (rep, v) in &computed {
        cache.put(rep, *v)?;
    }
    Ok(computed)
}

/// Table of `μ` for every permutation of length at most `n`, keyed by the
/// permutation itself (no symmetry reduction).
pub fn exhaustive_table(n: usize, opts: MuOptions) -> Result<MuCache> {
    let mut cache = MuCache::non_canonical();
    for len in 1..=n {
        sweep_length(len, &mut cache, opts)?;
    }
    Ok(cache)
}

/// Exhaustive sweep of lengths `1..=n`: maximum `|μ|` per length with its
/// witnesses up to symmetry.
pub fn mu_max_sweep(n: usize, cache: &mut MuCache, config: SweepConfig) -> Result<Vec<SweepRow>> {
    if n > config.limit {
        return Err(Error::SweepLimit { n, limit: config.limit });
    }
    if !cache.is_canonical() {
        return Err(Error::Precondition("sweeps need a canonical cache".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for len in 1..=n {
        let values = sweep_length(len, cache, config.opts)?;
        let max_abs = values.iter().map(|(_, v)| v.abs()).max().unwrap_or(0);
        let witnesses = values
            .iter()
            .filter(|(_, v)| v.abs() == max_abs)
            .map(|(p, _)| p.clone())
            .collect();
        rows.push(SweepRow { n: len, max_abs, witnesses, classes: values.len() });
    }
    Ok(rows)
}
