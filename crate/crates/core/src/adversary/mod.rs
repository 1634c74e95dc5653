//! Crossing-sequence adversary.
//!
//! Given a one-tape machine, run every word of a witness family of length
//! `n`, pick a rarely visited cell `c` in `[n/4, n/2)` for each run, and
//! bucket the words by the crossing sequence at `c` (plus which side of `c`
//! the head ends on). Two words in one bucket with different group elements
//! up to `c` can be spliced at `c`: the machine cannot tell the hybrid from
//! the source word that governs its final side, so it accepts a non-trivial
//! word whenever it accepts that trivial source.
//!
//! In guaranteed mode every run is held to `ε n²` steps and, once `n` is
//! large enough for the counting argument, a collision must exist. A correct
//! machine can therefore only ever exceed the budget. Empirical mode drops
//! the time bound and looks at every boundary in range, which finds real
//! counterexamples for fast wrong machines at small `n`.

mod certificate;
mod checkpoint;
mod splice;
mod threshold;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::free_group::{family_alpha, gen_lemma_family, reduce_range, ReducedWord, Word, WordError};
use crate::simulator::{run_traced, CrossingSequence, MachineSpec};

pub use certificate::{
    build_hybrid, make_certificate, name_crossings, side_hybrid, verify_certificate, CertificateFailure,
    CounterexampleCertificate, NamedCrossing,
};
pub use checkpoint::{
    checkpoint_key, checkpoint_report, find_checkpoint, side_of, visit_threshold, CheckpointKey, CheckpointReport,
};
pub use splice::{check_splice, SpliceCheck, SpliceViolation};
pub use threshold::{
    counting_holds, epsilon_bound, min_guarantee_n, min_guarantee_n_with_horizon, DEFAULT_HORIZON,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdversaryError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("range error: {0}")]
    Range(&'static str),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("no checkpoint under the visit threshold for n = {n} on {word}")]
    NoCheckpoint { n: usize, word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Runs held to `⌊ε n²⌋` steps; canonical checkpoint per word.
    Guaranteed,
    /// Any halting budget; every boundary in `[n/4, n/2)` is a candidate.
    Empirical,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Guaranteed => "guaranteed",
            Mode::Empirical => "empirical",
        }
    }
}

/// Where the head ends relative to the checkpoint `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Final head position `<= c`.
    Left,
    /// Final head position `> c`.
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryConfig {
    /// Time coefficient for guaranteed mode; defaults to half the bound.
    pub epsilon: Option<f64>,
    pub mode: Mode,
    pub n_min: usize,
    pub n_max: usize,
    pub cap: Option<usize>,
    pub seed: u64,
    /// Multiplier `C` in `ε < log α / (C log K)`. 8 covers crossing
    /// sequences of up to twice the visit count; 4 is the tighter literal
    /// form.
    pub crossing_constant: f64,
    /// Empirical-mode step budget per run; defaults to `64 n²`.
    pub budget_override: Option<u64>,
    /// Largest family traced in full.
    pub family_limit: usize,
    /// Most collision pairs materialized per `n`.
    pub collision_limit: usize,
}

impl Default for AdversaryConfig {
    fn default() -> Self {
        AdversaryConfig {
            epsilon: None,
            mode: Mode::Empirical,
            n_min: 8,
            n_max: 32,
            cap: None,
            seed: 0,
            crossing_constant: 8.0,
            budget_override: None,
            family_limit: 1 << 16,
            collision_limit: 4096,
        }
    }
}

impl AdversaryConfig {
    fn validate(&self) -> Result<(), AdversaryError> {
        if self.n_min < 8 || !self.n_min.is_multiple_of(4) || !self.n_max.is_multiple_of(4) || self.n_max < self.n_min {
            return Err(AdversaryError::Range("need 8 <= n_min <= n_max, both multiples of 4"));
        }
        Ok(())
    }

    /// The admissible `ε` for a machine with `k` states in guaranteed mode.
    pub fn resolve_epsilon(&self, k: usize) -> Result<f64, AdversaryError> {
        let bound = epsilon_bound(k, family_alpha(), self.crossing_constant)?;
        let eps = self.epsilon.unwrap_or(bound / 2.0);
        if !(eps > 0.0 && eps < bound) {
            return Err(AdversaryError::Domain("guaranteed mode needs 0 < epsilon < epsilon_bound"));
        }
        Ok(eps)
    }

    fn family_cap(&self) -> usize {
        self.cap.unwrap_or(self.family_limit)
    }

    fn run_budget(&self, n: usize, epsilon: f64) -> u64 {
        match self.mode {
            Mode::Guaranteed => libm::floor(epsilon * (n * n) as f64) as u64,
            Mode::Empirical => self.budget_override.unwrap_or(64 * (n * n) as u64),
        }
    }
}

/// Two family words sharing a bucket whose spliced-away parts are different
/// group elements. `first < second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub checkpoint: usize,
    pub side: Side,
    pub sequence: CrossingSequence,
    pub first: Word,
    pub second: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    /// Guaranteed mode: some run exceeded `⌊ε n²⌋`. Empirical mode: no run
    /// halted.
    BudgetExceeded,
    /// Guaranteed mode: the full family is larger than the family limit.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollisionSearch {
    pub n: usize,
    pub family_size: usize,
    pub budget: u64,
    pub halted: usize,
    pub majority_side: Side,
    /// `|W'_n|`, words whose head ends on the majority side of their
    /// canonical checkpoint.
    pub majority_size: usize,
    pub bucket_count: usize,
    pub largest_bucket: usize,
    /// All colliding pairs, including those beyond `collisions`.
    pub collision_count: u64,
    pub collisions: Vec<Collision>,
    pub status: SearchStatus,
}

impl CollisionSearch {
    fn empty(n: usize, family_size: usize, budget: u64, status: SearchStatus) -> Self {
        CollisionSearch {
            n,
            family_size,
            budget,
            halted: 0,
            majority_side: Side::Right,
            majority_size: 0,
            bucket_count: 0,
            largest_bucket: 0,
            collision_count: 0,
            collisions: Vec::new(),
            status,
        }
    }
}

fn full_family_size(n: usize) -> Option<usize> {
    1usize.checked_shl((n / 4) as u32)
}

/// Spliced-away element: the prefix for the right side, the suffix for the
/// left side.
fn side_element(w: &Word, c: usize, side: Side) -> ReducedWord {
    match side {
        Side::Right => reduce_range(&w.letters()[..c]),
        Side::Left => reduce_range(&w.letters()[c..]),
    }
}

/// Finds colliding pairs for one family length `n`.
pub fn find_collisions(m: &MachineSpec, n: usize, cfg: &AdversaryConfig) -> Result<CollisionSearch, AdversaryError> {
    checkpoint::check_checkpoint_range(n)?;
    cfg.validate()?;
    let epsilon = match cfg.mode {
        Mode::Guaranteed => cfg.resolve_epsilon(m.state_count())?,
        Mode::Empirical => 0.0,
    };
    let budget = cfg.run_budget(n, epsilon);
    let total = full_family_size(n);

    let family = match cfg.mode {
        Mode::Guaranteed => match total {
            Some(t) if t <= cfg.family_cap() => gen_lemma_family(n, None, None)?,
            _ => {
                return Ok(CollisionSearch::empty(n, total.unwrap_or(usize::MAX), budget, SearchStatus::Infeasible));
            }
        },
        Mode::Empirical => {
            let cap = match (cfg.cap, total) {
                (Some(c), Some(t)) => Some(c.min(t)),
                (Some(c), None) => Some(c),
                (None, Some(t)) if t <= cfg.family_limit => None,
                (None, _) => Some(cfg.family_limit),
            };
            gen_lemma_family(n, cap, Some(cfg.seed))?
        }
    };
    let words = &family.words;

    let threshold = match cfg.mode {
        Mode::Guaranteed => visit_threshold(epsilon, n),
        Mode::Empirical => u64::MAX,
    };
    let mut reports: Vec<(usize, CheckpointReport)> = Vec::with_capacity(words.len());
    let mut buckets: BTreeMap<CheckpointKey, Vec<usize>> = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        let t = run_traced(m, w, budget);
        if !t.outcome.verdict.is_halted() {
            if cfg.mode == Mode::Guaranteed {
                let mut s = CollisionSearch::empty(n, words.len(), budget, SearchStatus::BudgetExceeded);
                s.halted = reports.len();
                return Ok(s);
            }
            continue;
        }
        let Some(report) = checkpoint::report_from_trace(&t, w, n, threshold)? else {
            return Err(AdversaryError::NoCheckpoint { n, word: alloc::format!("{w}") });
        };
        if cfg.mode == Mode::Empirical {
            for c in n / 4..n / 2 {
                let key = CheckpointKey {
                    checkpoint: c,
                    sequence: t.crossing_sequence_at(c as i64),
                    side: side_of(&t, c),
                };
                buckets.entry(key).or_default().push(i);
            }
        }
        reports.push((i, report));
    }

    let halted = reports.len();
    if halted == 0 {
        return Ok(CollisionSearch::empty(n, words.len(), budget, SearchStatus::BudgetExceeded));
    }
    let right = reports.iter().filter(|(_, r)| r.side == Side::Right).count();
    let majority_side = if 2 * right >= halted { Side::Right } else { Side::Left };
    let majority_size = if majority_side == Side::Right { right } else { halted - right };

    if cfg.mode == Mode::Guaranteed {
        for (i, r) in &reports {
            if r.side == majority_side {
                buckets.entry(checkpoint_key(r)).or_default().push(*i);
            }
        }
    }

    let mut collision_count = 0u64;
    let mut collisions = Vec::new();
    for (key, members) in &buckets {
        if members.len() < 2 {
            continue;
        }
        let elements: Vec<ReducedWord> = members
            .iter()
            .map(|&i| side_element(&words[i], key.checkpoint, key.side))
            .collect();
        let mut groups: BTreeMap<&ReducedWord, u64> = BTreeMap::new();
        for e in &elements {
            *groups.entry(e).or_default() += 1;
        }
        let k = members.len() as u64;
        collision_count += k * (k - 1) / 2 - groups.values().map(|g| g * (g - 1) / 2).sum::<u64>();

        let mut emitted = 0;
        'pairs: for a in 0..members.len() {
            for b in a + 1..members.len() {
                if emitted == cfg.collision_limit {
                    break 'pairs;
                }
                if elements[a] != elements[b] {
                    collisions.push(Collision {
                        checkpoint: key.checkpoint,
                        side: key.side,
                        sequence: key.sequence.clone(),
                        first: words[members[a]].clone(),
                        second: words[members[b]].clone(),
                    });
                    emitted += 1;
                }
            }
        }
    }
    collisions.sort_by(|x, y| (x.checkpoint, &x.first, &x.second).cmp(&(y.checkpoint, &y.first, &y.second)));
    collisions.truncate(cfg.collision_limit);

    Ok(CollisionSearch {
        n,
        family_size: words.len(),
        budget,
        halted,
        majority_side,
        majority_size,
        bucket_count: buckets.len(),
        largest_bucket: buckets.values().map(|v| v.len()).max().unwrap_or(0),
        collision_count,
        collisions,
        status: SearchStatus::Complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryOutcome {
    Refuted,
    BudgetExceeded,
    NoCollisionFound,
    GuaranteeInfeasible,
}

impl AdversaryOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            AdversaryOutcome::Refuted => "REFUTED",
            AdversaryOutcome::BudgetExceeded => "BUDGET_EXCEEDED",
            AdversaryOutcome::NoCollisionFound => "NO_COLLISION",
            AdversaryOutcome::GuaranteeInfeasible => "GUARANTEE_INFEASIBLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthReport {
    pub search: CollisionSearch,
    /// Certificates built and checked for this length.
    pub attempts: usize,
    pub certificate: Option<CounterexampleCertificate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryReport {
    pub machine_name: String,
    pub machine_digest: String,
    pub mode: Mode,
    pub state_count: usize,
    pub epsilon: Option<f64>,
    pub epsilon_bound: f64,
    /// Length from which the counting argument forces a collision
    /// (guaranteed mode).
    pub guarantee_n: Option<usize>,
    pub per_n: Vec<LengthReport>,
    pub outcome: AdversaryOutcome,
    pub certificate: Option<CounterexampleCertificate>,
}

/// Runs the search for `n = n_min, n_min + 4, ..., n_max` and stops at the
/// first certificate that verifies.
pub fn run_adversary(m: &MachineSpec, machine_name: &str, cfg: &AdversaryConfig) -> Result<AdversaryReport, AdversaryError> {
    cfg.validate()?;
    let k = m.state_count();
    let alpha = family_alpha();
    let epsilon_bound = epsilon_bound(k, alpha, cfg.crossing_constant)?;
    let mut report = AdversaryReport {
        machine_name: machine_name.into(),
        machine_digest: m.digest_hex(),
        mode: cfg.mode,
        state_count: k,
        epsilon: None,
        epsilon_bound,
        guarantee_n: None,
        per_n: Vec::new(),
        outcome: AdversaryOutcome::NoCollisionFound,
        certificate: None,
    };

    if cfg.mode == Mode::Guaranteed {
        let eps = cfg.resolve_epsilon(k)?;
        report.epsilon = Some(eps);
        report.guarantee_n = min_guarantee_n(k, eps, alpha, cfg.crossing_constant)?;
        let feasible = report
            .guarantee_n
            .and_then(full_family_size)
            .is_some_and(|size| size <= cfg.family_cap());
        if !feasible {
            report.outcome = AdversaryOutcome::GuaranteeInfeasible;
            return Ok(report);
        }
    }

    let mut saw_budget = false;
    let mut saw_infeasible = false;
    for n in (cfg.n_min..=cfg.n_max).step_by(4) {
        let search = find_collisions(m, n, cfg)?;
        let verify_budget = search.budget.saturating_mul(2);
        let mut attempts = 0;
        let mut found = None;
        'search: for col in &search.collisions {
            for (w1, w2) in [(&col.first, &col.second), (&col.second, &col.first)] {
                let Some(cert) = make_certificate(m, machine_name, n, col.checkpoint, col.side, w1, w2, verify_budget)?
                else {
                    continue;
                };
                attempts += 1;
                if verify_certificate(m, &cert, verify_budget).is_ok() {
                    found = Some(cert);
                    break 'search;
                }
            }
        }
        match search.status {
            SearchStatus::BudgetExceeded => saw_budget = true,
            SearchStatus::Infeasible => saw_infeasible = true,
            SearchStatus::Complete => {}
        }
        let stop = found.is_some() || search.status == SearchStatus::Infeasible;
        report.per_n.push(LengthReport {
            search,
            attempts,
            certificate: found.clone(),
        });
        if let Some(cert) = found {
            report.certificate = Some(cert);
            report.outcome = AdversaryOutcome::Refuted;
            return Ok(report);
        }
        if stop {
            break;
        }
    }
    report.outcome = if saw_budget {
        AdversaryOutcome::BudgetExceeded
    } else if saw_infeasible {
        AdversaryOutcome::GuaranteeInfeasible
    } else {
        AdversaryOutcome::NoCollisionFound
    };
    Ok(report)
}
