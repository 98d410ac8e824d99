//! Reproducible checks of the known identities, tables and conjectures.
//!
//! Every check returns a [`VerificationReport`]. Values come from the bare
//! recursion (no shortcut lemmas), so the shortcuts themselves are under test.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::balloon::{
    balloon_2413, balloon_general, core, is_2413_balloon, pi_sequence, predicted_mu_balloon,
    reduction_mu_table, reduction_records, unballoon_general, BetaShape, GeneralBalloonSpec,
};
use crate::chains::{
    count_chains, enumerate_chains, hall_sums_by_second_element, mu_via_chains, sample_chains,
    BalloonChains, ChainClass, InvolutionAudit, DEFAULT_CHAIN_LIMIT,
};
use crate::error::{Error, Result};
use crate::interval::{Downset, Interval};
use crate::mobius::{exhaustive_table, mu_max_sweep, mu_with_base, MuOptions, SweepConfig};
use crate::perm::{
    contains, corner_decompositions, has_long_corner, has_triple_adjacency, is_monotone,
    is_simple, longest_monotone_interval, permutations_of_length, simple_patterns, Permutation,
};
use crate::store::MuCache;

/// `μ(π^(n))` for `n = 1..=8`.
pub const SEQUENCE_TABLE: [i64; 8] = [1, -1, 1, -3, 4, -1, 1, -6];

/// `(β, μ(β), μ(⟨2413, β⟩))` for one `β` per symmetry class with `|β| ≤ 4`.
pub const SMALL_BALLOON_TABLE: [(&str, i64, i64); 11] = [
    ("1", 1, 4),
    ("12", -1, -1),
    ("123", 0, 0),
    ("132", 1, 1),
    ("1234", 0, 0),
    ("1243", 0, 0),
    ("1324", -1, -1),
    ("1342", -1, -1),
    ("1432", 0, 0),
    ("2143", -1, -1),
    ("2413", -3, -6),
];

/// The simple permutations that may occur inside `π^(n)`.
pub const SEQUENCE_SIMPLES: [&str; 5] = ["1", "12", "21", "2413", "25314"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub kind: CheckKind,
    pub scope: String,
    pub status: Status,
    /// Number of individual comparisons made.
    pub cases: u64,
    /// Serialized failing inputs (permutations or `a;b;c` chains).
    pub counterexamples: Vec<String>,
    pub details: Vec<String>,
    pub skipped: Vec<String>,
    pub runtime: Duration,
}

const MAX_COUNTEREXAMPLES: usize = 25;

impl VerificationReport {
    fn new(name: &str, kind: CheckKind, scope: String) -> Self {
        VerificationReport {
            name: name.to_string(),
            kind,
            scope,
            status: Status::Pass,
            cases: 0,
            counterexamples: Vec::new(),
            details: Vec::new(),
            skipped: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.status = Status::Fail;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(counterexample());
            }
        }
    }

    fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn finish(mut self, start: Instant) -> Self {
        if self.cases == 0 && self.status == Status::Pass {
            self.status = Status::Skipped;
        }
        self.runtime = start.elapsed();
        self
    }

    pub fn verdict(&self) -> &'static str {
        match (self.kind, self.status) {
            (CheckKind::Theorem, Status::Pass) => "verified (theorem)",
            (CheckKind::Theorem, Status::Fail) => "FAILED (theorem)",
            (CheckKind::Conjecture, Status::Pass) => "consistent (conjecture)",
            (CheckKind::Conjecture, Status::Fail) => "counterexample found (conjecture)",
            (_, Status::Skipped) => "skipped",
        }
    }

    /// The report without its runtime line; identical across reruns with the
    /// same configuration.
    pub fn body(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            CheckKind::Theorem => "theorem",
            CheckKind::Conjecture => "conjecture",
        };
        out += &format!("check: {} ({kind})\n", self.name);
        out += &format!("scope: {}\n", self.scope);
        out += &format!("cases: {}\n", self.cases);
        for d in &self.details {
            out += &format!("  {d}\n");
        }
        for s in &self.skipped {
            out += &format!("skipped: {s}\n");
        }
        for c in &self.counterexamples {
            out += &format!("counterexample: {c}\n");
        }
        out += &format!("result: {}\n", self.verdict());
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}runtime: {:.3}s", self.body(), self.runtime.as_secs_f64())
    }
}

/// Scope knobs shared by all checks; `None` picks the check's default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub chain_limit: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_len: None, samples: None, seed: 1, chain_limit: DEFAULT_CHAIN_LIMIT }
    }
}

impl VerifyConfig {
    pub fn with_max_len(max_len: usize) -> Self {
        VerifyConfig { max_len: Some(max_len), ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Lemmas,
    HallOracle,
    Involutions,
    Thm41,
    Thm51,
    Thm62,
    ReductionTables,
    Simples,
    Core,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Lemmas,
        Check::HallOracle,
        Check::Involutions,
        Check::Thm41,
        Check::Thm51,
        Check::Thm62,
        Check::ReductionTables,
        Check::Simples,
        Check::Core,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemmas => "lemmas",
            Check::HallOracle => "hall-oracle",
            Check::Involutions => "involutions",
            Check::Thm41 => "thm4.1",
            Check::Thm51 => "thm5.1",
            Check::Thm62 => "thm6.2",
            Check::ReductionTables => "reduction-tables",
            Check::Simples => "simples",
            Check::Core => "core",
        }
    }

    pub fn default_max_len(self) -> usize {
        match self {
            Check::Lemmas => 7,
            Check::HallOracle => 6,
            Check::Involutions => 9,
            Check::Thm41 => 13,
            Check::Thm51 => 8,
            Check::Thm62 => 6,
            Check::ReductionTables => 6,
            Check::Simples => 13,
            Check::Core => 7,
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Check::HallOracle => 100,
            Check::Involutions => 10_000,
            _ => 0,
        }
    }

    pub fn run(self, cfg: &VerifyConfig) -> Result<VerificationReport> {
        let max_len = cfg.max_len.unwrap_or(self.default_max_len());
        let samples = cfg.samples.unwrap_or(self.default_samples());
        match self {
            Check::Lemmas => check_lemmas(max_len),
            Check::HallOracle => check_hall_oracle(max_len, samples, cfg.seed, cfg.chain_limit),
            Check::Involutions => check_involutions(max_len, samples, cfg.seed, cfg.chain_limit),
            Check::Thm41 => check_doubling(max_len),
            Check::Thm51 => check_sequence(max_len),
            Check::Thm62 => check_balloon_formula(max_len),
            Check::ReductionTables => check_reduction_tables(max_len),
            Check::Simples => check_simples(max_len),
            Check::Core => check_core(max_len),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown check {s:?}")))
    }
}

/// `μ` of every permutation of length at most `n` (at most 8), with no
/// symmetry reduction.
fn full_table(n: usize) -> Result<MuCache> {
    exhaustive_table(n.min(8), MuOptions::PLAIN)
}

/// `μ` of one representative per symmetry class up to length `n` (at most 8).
fn class_table(n: usize) -> Result<MuCache> {
    let mut cache = MuCache::new();
    let n = n.min(8);
    mu_max_sweep(n, &mut cache, SweepConfig { limit: n, opts: MuOptions::PLAIN })?;
    Ok(cache)
}

fn all_up_to(min: usize, max: usize) -> Vec<Permutation> {
    (min..=max).flat_map(permutations_of_length).collect()
}

fn bound_holds(n: usize, m: i64) -> bool {
    2 * m.unsigned_abs() as u128 >= 1u128 << (n / 4)
}

/// Lemma identities: long corners and monotone intervals of length ≥ 3
/// force `μ = 0`; a one-point corner strip negates `μ`.
pub fn check_lemmas(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new(
        "lemmas",
        CheckKind::Theorem,
        format!("every permutation of length 1..={max_len}"),
    );
    if max_len > 8 {
        r.skipped.push(format!("lengths 9..={max_len}: exhaustive table limited to 8"));
    }
    let table = full_table(max_len)?;
    let (mut long, mut triple, mut strip) = (0u64, 0u64, 0u64);
    for pi in all_up_to(1, max_len.min(8)) {
        let m = table.get(&pi).expect("table is exhaustive");
        if has_long_corner(&pi) {
            long += 1;
            r.case(m == 0, || format!("{pi} has a long corner but mu={m}"));
        }
        if has_triple_adjacency(&pi) {
            triple += 1;
            r.case(m == 0, || format!("{pi} has a triple adjacency but mu={m}"));
        }
        if longest_monotone_interval(&pi) >= 3 {
            r.case(m == 0, || format!("{pi} has a monotone interval of length >= 3 but mu={m}"));
        }
        if pi.len() >= 2 && !has_long_corner(&pi) {
            for (form, tau) in corner_decompositions(&pi) {
                strip += 1;
                let mt = table.get(&tau).expect("table is exhaustive");
                r.case(m == -mt, || format!("{pi} = {form} with tau={tau}: mu={m}, mu(tau)={mt}"));
            }
        }
    }
    r.detail(format!("long corners: {long}, triple adjacencies: {triple}, corner strips: {strip}"));
    Ok(r.finish(start))
}

/// Hall's theorem against the recursion, and the second-highest-element
/// identity `Σ_{c: κ_c = ψ} (−1)^|c| = −μ(ψ)`.
pub fn check_hall_oracle(max_len: usize, samples: usize, seed: u64, limit: u128) -> Result<VerificationReport> {
    let start = Instant::now();
    let sample_len = max_len + 1;
    let mut r = VerificationReport::new(
        "hall-oracle",
        CheckKind::Theorem,
        format!(
            "every permutation of length 1..={max_len}; {samples} random permutations of length {sample_len} (seed {seed})"
        ),
    );
    let table = full_table(sample_len.min(8))?;
    let exhaustive = all_up_to(1, max_len);

    type Outcome = (Permutation, i64, Vec<(Permutation, i64, i64)>);
    let outcomes: Vec<Result<Outcome>> = exhaustive
        .par_iter()
        .map(|pi| {
            let chains = mu_via_chains(pi, limit)?;
            let by_second = if pi.len() >= 2 { hall_sums_by_second_element(pi, limit)? } else { Default::default() };
            let iv = Interval::new(pi);
            let pairs = iv.elements()[1.min(iv.top())..iv.top()]
                .iter()
                .map(|psi| {
                    let got = by_second.get(psi).copied().unwrap_or(0);
                    (psi.clone(), got, -mu_with_base(psi, &table).expect("table covers patterns"))
                })
                .collect();
            Ok((pi.clone(), chains, pairs))
        })
        .collect();
    let mut pairs_checked = 0u64;
    for o in outcomes {
        let (pi, chains, pairs) = o?;
        let m = mu_with_base(&pi, &table)?;
        r.case(chains == m, || format!("{pi}: hall sum {chains}, recursion {m}"));
        for (psi, got, want) in pairs {
            pairs_checked += 1;
            r.case(got == want, || format!("{pi} with second element {psi}: hall sum {got}, -mu(psi) {want}"));
        }
    }
    r.detail(format!("exhaustive permutations: {}, (pi, psi) pairs: {pairs_checked}", exhaustive.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randoms: Vec<Permutation> = (0..samples).map(|_| Permutation::random(sample_len, &mut rng)).collect();
    let sampled: Vec<Result<Option<(Permutation, i64)>>> = randoms
        .par_iter()
        .map(|pi| {
            let iv = Interval::new(pi);
            if count_chains(&iv)[iv.top()].total() > limit {
                return Ok(None);
            }
            Ok(Some((pi.clone(), mu_via_chains(pi, limit)?)))
        })
        .collect();
    let mut guarded = 0;
    let mut over = Vec::new();
    for (pi, s) in randoms.iter().zip(sampled) {
        match s? {
            Some((pi, chains)) => {
                guarded += 1;
                let m = mu_with_base(&pi, &table)?;
                r.case(chains == m, || format!("{pi}: hall sum {chains}, recursion {m}"));
            }
            None => over.push(pi.to_string()),
        }
    }
    r.detail(format!("random permutations within the chain limit: {guarded}/{samples}"));
    if !over.is_empty() {
        r.skipped.push(format!("{} random permutations above the chain limit: {}", over.len(), over.join(",")));
    }
    Ok(r.finish(start))
}

/// Per-π result of an involution audit.
struct BalloonAudit {
    pi: Permutation,
    audit: InvolutionAudit,
    phi_b_checked: bool,
    /// `(−Σ_{σ∈R_π} μ(σ), μ(π))` when all chains were enumerated.
    sums: Option<(i64, i64)>,
}

fn audit_enumerated(pi: &Permutation, limit: u128, table: &MuCache) -> Result<BalloonAudit> {
    let ctx = BalloonChains::new(pi)?;
    let check_b = ctx.phi_b_in_scope();
    let mut audit = InvolutionAudit::default();
    for c in enumerate_chains(pi, limit)? {
        audit.record(&ctx, &c, check_b)?;
    }
    let mut r_sum = 0i64;
    for sigma in ctx.proper_reductions() {
        r_sum -= mu_with_base(sigma, table)?;
    }
    let mu = mu_with_base(pi, table)?;
    Ok(BalloonAudit { pi: pi.clone(), audit, phi_b_checked: check_b, sums: Some((r_sum, mu)) })
}

fn audit_sampled(pi: &Permutation, k: usize, seed: u64) -> Result<BalloonAudit> {
    let ctx = BalloonChains::new(pi)?;
    let check_b = ctx.phi_b_in_scope();
    let chunks = rayon::current_num_threads().max(1) * 4;
    let per = k.div_ceil(chunks);
    let audits: Vec<Result<InvolutionAudit>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let n = per.min(k.saturating_sub(i * per));
            let mut audit = InvolutionAudit::default();
            for c in sample_chains(pi, n, seed.wrapping_add(i as u64)) {
                audit.record(&ctx, &c, check_b)?;
            }
            Ok(audit)
        })
        .collect();
    let mut total = InvolutionAudit::default();
    for a in audits {
        let a = a?;
        total.chains += a.chains;
        for (k, v) in a.counts {
            *total.counts.entry(k).or_default() += v;
        }
        for (k, v) in a.hall {
            *total.hall.entry(k).or_default() += v;
        }
        total.failure_count += a.failure_count;
        total.failures.extend(a.failures);
    }
    Ok(BalloonAudit { pi: pi.clone(), audit: total, phi_b_checked: check_b, sums: None })
}

fn class_summary(a: &InvolutionAudit) -> String {
    [ChainClass::R, ChainClass::G, ChainClass::B]
        .iter()
        .map(|&k| format!("{k}={} (hall {})", a.count_of(k), a.hall_of(k)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `Φ_G` and `Φ_B` are parity-reversing involutions on `G` and `B`; the Hall
/// sums of `G` and `B` vanish and that of `R` is `−Σ_{σ∈R_π} μ(σ)`.
///
/// Full enumeration for `π = ⟨2413, β⟩` with `5 ≤ |β| ≤ max_len − 4` (within
/// the chain limit), then `samples` random chains each for `π^(9)` and `π^(13)`.
pub fn check_involutions(max_len: usize, samples: usize, seed: u64, limit: u128) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new(
        "involutions",
        CheckKind::Theorem,
        format!(
            "chains of <2413, beta> for every beta of length 5..={}; {samples} sampled chains each for pi^(9), pi^(13) (seed {seed})",
            max_len.saturating_sub(4)
        ),
    );
    let table = class_table(max_len.saturating_sub(1))?;
    let betas = all_up_to(5, max_len.saturating_sub(4));
    let (feasible, over): (Vec<Permutation>, Vec<Permutation>) = betas
        .into_par_iter()
        .map(|b| balloon_2413(&b))
        .partition(|pi| {
            let iv = Interval::new(pi);
            count_chains(&iv)[iv.top()].total() <= limit
        });
    if !over.is_empty() {
        r.skipped.push(format!(
            "{} balloons above the chain limit, not enumerated (first: {})",
            over.len(),
            over[0]
        ));
    }
    let mut audits: Vec<BalloonAudit> =
        feasible.par_iter().map(|pi| audit_enumerated(pi, limit, &table)).collect::<Result<_>>()?;
    for n in [9usize, 13] {
        if samples > 0 {
            audits.push(audit_sampled(&pi_sequence(n)?, samples, seed)?);
        }
    }

    let (mut enumerated, mut chains, mut out_of_scope) = (0u64, 0u64, Vec::new());
    for a in &audits {
        chains += a.audit.chains;
        // every chain is one case: membership, involution and parity
        r.cases += a.audit.chains;
        if a.audit.failure_count > 0
            && (a.phi_b_checked || a.audit.failures.iter().any(|f| f.map == ChainClass::G))
        {
            r.status = Status::Fail;
            for f in a.audit.failures.iter().take(3) {
                if r.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    r.counterexamples.push(f.to_string());
                }
            }
        }
        if let Some((r_pred, mu)) = a.sums {
            enumerated += 1;
            let (g, b, rh) = (a.audit.hall_of(ChainClass::G), a.audit.hall_of(ChainClass::B), a.audit.hall_of(ChainClass::R));
            r.case(g == 0, || format!("{}: hall sum of G is {g}", a.pi));
            r.case(g + b + rh == mu, || format!("{}: hall sum {} but mu={mu}", a.pi, g + b + rh));
            if a.phi_b_checked {
                r.case(b == 0, || format!("{}: hall sum of B is {b}", a.pi));
                r.case(rh == r_pred, || format!("{}: hall sum of R is {rh}, -sum mu(R_pi) is {r_pred}", a.pi));
            } else {
                out_of_scope.push(format!("{} (hall of B {b})", a.pi));
            }
        } else {
            r.detail(format!("{} sampled: {}", a.pi, class_summary(&a.audit)));
        }
    }
    r.detail(format!("balloons enumerated: {enumerated}, chains audited: {chains}"));
    if !out_of_scope.is_empty() {
        r.detail(format!("monotone beta, phi_B not claimed: {}", out_of_scope.join(", ")));
    }
    Ok(r.finish(start))
}

/// `μ(π^(n)) = 2 μ(π^(n−4))` for `9 ≤ n ≤ max_len`, and `μ(⟨2413, β⟩) =
/// 2 μ(β)` for the double balloons `β = ⟨2413, γ⟩` with `|γ| ≤ min(3, max_len − 8)`.
pub fn check_doubling(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let gamma_max = max_len.saturating_sub(8).min(3);
    let mut r = VerificationReport::new(
        "thm4.1",
        CheckKind::Theorem,
        format!("pi^(n) for n = 9..={max_len}; <2413, <2413, gamma>> for |gamma| <= {gamma_max}"),
    );
    let mut cache = MuCache::new();
    let mut seq = vec![0i64];
    for n in 1..=max_len {
        seq.push(crate::mobius::mu_principal(&pi_sequence(n)?, &mut cache, MuOptions::PLAIN)?.mu);
    }
    for n in 9..=max_len {
        let (m, inner) = (seq[n], seq[n - 4]);
        r.detail(format!("n={n} mu={m} mu(pi^({}))={inner}", n - 4));
        r.case(m == 2 * inner, || format!("{}: mu={m}, 2*mu(beta)={}", pi_sequence(n).unwrap(), 2 * inner));
    }
    for gamma in all_up_to(1, gamma_max) {
        let beta = balloon_2413(&gamma);
        let pi = balloon_2413(&beta);
        let mb = crate::mobius::mu_principal(&beta, &mut cache, MuOptions::PLAIN)?.mu;
        let m = crate::mobius::mu_principal(&pi, &mut cache, MuOptions::PLAIN)?.mu;
        r.case(m == 2 * mb, || format!("{pi}: mu={m}, 2*mu(beta)={}", 2 * mb));
    }
    Ok(r.finish(start))
}

/// The printed values `μ(π^(1..8))`, the bound `|μ(π^(n))| ≥ 2^(⌊n/4⌋−1)`
/// for `n ≤ max_len`, and `M(n)` meeting the bound by exhaustive sweep for
/// `n ≤ min(max_len, 8)`.
pub fn check_sequence(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let sweep_len = max_len.min(8);
    let mut r = VerificationReport::new(
        "thm5.1",
        CheckKind::Theorem,
        format!("pi^(n) for n = 1..={max_len}; exhaustive M(n) for n = 1..={sweep_len}"),
    );
    let mut cache = MuCache::new();
    for n in 1..=max_len {
        let pi = pi_sequence(n)?;
        let m = crate::mobius::mu_principal(&pi, &mut cache, MuOptions::PLAIN)?.mu;
        match SEQUENCE_TABLE.get(n - 1) {
            Some(&want) => {
                r.detail(format!("n={n} pi={pi} mu={m} expected={want}"));
                r.case(m == want, || format!("{pi}: mu={m}, expected {want}"));
            }
            None => r.detail(format!("n={n} pi={pi} mu={m}")),
        }
        r.case(bound_holds(n, m), || format!("{pi}: |mu|={} below 2^(floor(n/4)-1)", m.abs()));
    }
    let mut sweep_cache = MuCache::new();
    let rows = mu_max_sweep(sweep_len, &mut sweep_cache, SweepConfig { limit: sweep_len, opts: MuOptions::PLAIN })?;
    for row in rows {
        let w: Vec<String> = row.witnesses.iter().map(ToString::to_string).collect();
        r.detail(format!("M({})={} witness={}", row.n, row.max_abs, w.join(",")));
        r.case(row.meets_growth_bound(), || format!("M({})={} below bound", row.n, row.max_abs));
    }
    Ok(r.finish(start))
}

/// `μ(⟨2413, β⟩)`: the printed table for `|β| ≤ 4`, then the case formula
/// for every `β` with `|β| ≤ max_len`.
pub fn check_balloon_formula(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new(
        "thm6.2",
        CheckKind::Theorem,
        format!("printed table for |beta| <= 4; every beta of length 1..={max_len}"),
    );
    let table = class_table((max_len + 3).min(8))?;
    for (b, mb_want, m_want) in SMALL_BALLOON_TABLE {
        let beta: Permutation = b.parse()?;
        let mb = mu_with_base(&beta, &table)?;
        let m = mu_with_base(&balloon_2413(&beta), &table)?;
        r.detail(format!("{b:<5} {mb:>3} {m:>3}"));
        r.case((mb, m) == (mb_want, m_want), || format!("{b}: got ({mb}, {m}), printed ({mb_want}, {m_want})"));
    }
    let betas = all_up_to(1, max_len);
    let results: Vec<Result<(Permutation, i64, i64)>> = betas
        .par_iter()
        .map(|beta| {
            let mb = mu_with_base(beta, &table)?;
            let m = mu_with_base(&balloon_2413(beta), &table)?;
            Ok((beta.clone(), m, predicted_mu_balloon(beta, mb)))
        })
        .collect();
    for res in results {
        let (beta, m, want) = res?;
        r.case(m == want, || format!("beta={beta}: mu(<2413,beta>)={m}, predicted {want}"));
    }
    r.detail(format!("formula checked for {} beta", betas.len()));
    Ok(r.finish(start))
}

/// `σ` is an improper reduction of `⟨2413, β⟩` straight from the definition:
/// some `η` shorter than `β` has `η ≤ σ < ⟨2413, η⟩`.
pub fn improper_by_definition(beta: &Permutation, sigma: &Permutation) -> bool {
    Downset::of(sigma)
        .iter()
        .filter(|eta| eta.len() < beta.len())
        .any(|eta| contains(sigma, &balloon_2413(eta)) && sigma != &balloon_2413(eta))
}

/// For non-monotone `β` with `5 ≤ |β| ≤ max_len`: the μ tables of the proper
/// reductions, `μ(π) = −Σ_{σ∈R_π} μ(σ)`, the proper-reduction counts by shape
/// of `β`, and the proper/improper labels against the definition.
pub fn check_reduction_tables(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new(
        "reduction-tables",
        CheckKind::Theorem,
        format!("every non-monotone beta of length 5..={max_len}"),
    );
    let table = class_table((max_len + 3).min(8))?;
    let betas: Vec<Permutation> = all_up_to(5, max_len).into_iter().filter(|b| !is_monotone(b)).collect();
    type Row = (Permutation, Vec<(String, bool)>);
    let rows: Vec<Result<Row>> = betas
        .par_iter()
        .map(|beta| {
            let mut out = Vec::new();
            let mb = mu_with_base(beta, &table)?;
            let mut r_sum = 0i64;
            for (rec, coef) in reduction_mu_table(beta)? {
                let ms = mu_with_base(&rec.sigma, &table)?;
                r_sum += ms;
                out.push((
                    format!("beta={beta} sigma={} mask={}: mu={ms}, table {}", rec.sigma, rec.red_mask, coef * mb),
                    ms == coef * mb,
                ));
            }
            let m = mu_with_base(&balloon_2413(beta), &table)?;
            out.push((format!("beta={beta}: mu(pi)={m}, -sum over R_pi {}", -r_sum), m == -r_sum));
            let proper = reduction_records(beta).iter().filter(|x| x.proper).count();
            let want = match BetaShape::of(beta) {
                BetaShape::Balloon => 14,
                BetaShape::NoCorners => 15,
                BetaShape::OneCorner(_) => 11,
                BetaShape::TwoCorners(_) => 8,
            };
            out.push((format!("beta={beta}: {proper} proper reductions, expected {want}"), proper == want));
            for rec in reduction_records(beta) {
                let def = !improper_by_definition(beta, &rec.sigma);
                out.push((
                    format!("beta={beta} sigma={} mask={}: labelled proper={}, definition says {def}", rec.sigma, rec.red_mask, rec.proper),
                    def == rec.proper,
                ));
            }
            Ok((beta.clone(), out))
        })
        .collect();
    for row in rows {
        let (_, cases) = row?;
        for (text, ok) in cases {
            r.case(ok, || text);
        }
    }
    r.detail(format!("beta checked: {}", betas.len()));
    Ok(r.finish(start))
}

/// The simple patterns of `π^(n)`, `n ≤ max_len`, lie in
/// `{1, 12, 21, 2413, 25314}`; cross-checked against the deletion closure.
pub fn check_simples(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new(
        "simples",
        CheckKind::Theorem,
        format!("pi^(n) for n = 1..={max_len}"),
    );
    let allowed: BTreeSet<Permutation> = SEQUENCE_SIMPLES.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    for n in 1..=max_len {
        let pi = pi_sequence(n)?;
        let found = simple_patterns(&pi);
        let oracle: BTreeSet<Permutation> = Downset::by_deletion(&pi).iter().filter(|p| is_simple(p)).cloned().collect();
        r.case(found == oracle, || format!("{pi}: simple pattern sets disagree"));
        let extra: Vec<String> = found.difference(&allowed).map(ToString::to_string).collect();
        let list: Vec<String> = found.iter().map(ToString::to_string).collect();
        r.detail(format!("n={n}: {}", list.join(" ")));
        r.case(extra.is_empty(), || format!("{pi} contains simple {}", extra.join(",")));
    }
    Ok(r.finish(start))
}

/// Which conjectured formula for generalised balloons of 2413.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    /// Indexes `(0,1), (0,2), (1,1), (1,2)`.
    Indexes,
    /// Indexes `(1,0)`.
    OneZero,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Indexes => "7.1",
            Conjecture::OneZero => "7.2",
        }
    }

    pub fn indexes(self) -> &'static [(usize, usize)] {
        match self {
            Conjecture::Indexes => &[(0, 1), (0, 2), (1, 1), (1, 2)],
            Conjecture::OneZero => &[(1, 0)],
        }
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "7.1" => Ok(Conjecture::Indexes),
            "7.2" => Ok(Conjecture::OneZero),
            _ => Err(Error::Malformed(format!("unknown conjecture {s:?}"))),
        }
    }
}

/// Conjectured `μ(⟨i,j⟩(2413, β))` given `μ(β)`.
pub fn conjectured_mu(spec: &GeneralBalloonSpec, beta: &Permutation, mu_beta: i64) -> i64 {
    let ends_plus_one = beta.len() >= 2 && beta.split_plus_one().is_some();
    let ends_minus_one = beta.len() >= 2 && beta.split_minus_one().is_some();
    let starts_one_minus = beta.len() >= 2 && beta.split_one_minus().is_some();
    let starts_one_plus = beta.len() >= 2 && beta.split_one_plus().is_some();
    match (spec.column(), spec.row()) {
        (0, 1) if ends_plus_one => 0,
        (0, 2) if ends_minus_one => 0,
        (1, 1) if starts_one_minus || beta.values() == [1, 2] => 0,
        (1, 2) if starts_one_plus => 0,
        (1, 0) => match beta.values() {
            [1] => 6,
            [2, 1] => -2,
            [3, 1, 2] => 0,
            _ if unballoon_general(spec, beta).is_some() => 2 * mu_beta,
            _ => mu_beta,
        },
        _ => mu_beta,
    }
}

/// Compares the conjectured formula with computed `μ` for every `β` with
/// `|β| ≤ max_len`. Passing means no counterexample at this scale.
pub fn check_conjecture(which: Conjecture, max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let pairs: Vec<String> = which.indexes().iter().map(|(i, j)| format!("({i},{j})")).collect();
    let mut r = VerificationReport::new(
        &format!("conjecture {}", which.name()),
        CheckKind::Conjecture,
        format!("every beta of length 1..={max_len}, indexes {}", pairs.join(" ")),
    );
    let alpha: Permutation = "2413".parse()?;
    let table = class_table((max_len + 3).min(8))?;
    let betas = all_up_to(1, max_len);
    for &(i, j) in which.indexes() {
        let spec = GeneralBalloonSpec::new(alpha.clone(), i, j)?;
        let results: Vec<Result<(Permutation, Permutation, i64, i64)>> = betas
            .par_iter()
            .map(|beta| {
                let pi = balloon_general(&spec, beta);
                let mb = mu_with_base(beta, &table)?;
                Ok((beta.clone(), pi.clone(), mu_with_base(&pi, &table)?, conjectured_mu(&spec, beta, mb)))
            })
            .collect();
        let mut agree = 0;
        for res in results {
            let (beta, pi, m, want) = res?;
            if m == want {
                agree += 1;
            }
            r.case(m == want, || format!("({i},{j}) beta={beta} pi={pi}: mu={m}, conjectured {want}"));
        }
        r.detail(format!("({i},{j}): {agree}/{} agree", betas.len()));
    }
    Ok(r.finish(start))
}

/// `ψ ≤ ⟨2413, core ψ⟩` for every `ψ` of length `1..=max_len`. Whether that
/// balloon is also the shortest one containing `ψ` is reported, split by
/// whether `ψ` can be a pivot of a `B` chain (not a 2413-balloon, not ≤ 2413).
pub fn check_core(max_len: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new("core", CheckKind::Theorem, format!("every psi of length 1..={max_len}"));
    let p2413: Permutation = "2413".parse()?;
    let mut pivots = Vec::new();
    let mut others = Vec::new();
    for psi in all_up_to(1, max_len) {
        let eta = core(&psi);
        let b = balloon_2413(&eta);
        r.case(contains(&psi, &b), || format!("{psi}: core {eta}, not below {b}"));
        let shorter = all_up_to(1, eta.len().saturating_sub(1))
            .into_iter()
            .find(|g| contains(&psi, &balloon_2413(g)));
        if let Some(g) = shorter {
            let line = format!("{psi} (core {eta}, also below <2413,{g}>)");
            if is_2413_balloon(&psi) || contains(&psi, &p2413) {
                others.push(line);
            } else {
                pivots.push(line);
            }
        }
    }
    r.detail(format!("B-pivot candidates with a shorter containing balloon: {}", pivots.len()));
    r.details.extend(pivots.iter().take(10).cloned());
    r.detail(format!("balloons or patterns of 2413 with a shorter containing balloon: {}", others.len()));
    r.details.extend(others.iter().take(10).cloned());
    Ok(r.finish(start))
}
