use crate::free_group::Word;
use crate::simulator::{run_traced, CrossingSequence, MachineSpec, RunTrace};

use super::{AdversaryError, Side};

/// Per-word checkpoint data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointReport {
    pub word: Word,
    /// Index in `[n/4, n/2)`.
    pub checkpoint: usize,
    pub visits_at_c: u64,
    pub sequence: CrossingSequence,
    pub side: Side,
    pub steps: u64,
}

/// Bucketing key: words with equal keys are interchangeable on one side of
/// the checkpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckpointKey {
    pub checkpoint: usize,
    pub sequence: CrossingSequence,
    pub side: Side,
}

pub fn checkpoint_key(r: &CheckpointReport) -> CheckpointKey {
    CheckpointKey {
        checkpoint: r.checkpoint,
        sequence: r.sequence.clone(),
        side: r.side,
    }
}

/// `⌈4 ε n⌉`.
pub fn visit_threshold(epsilon: f64, n: usize) -> u64 {
    libm::ceil(4.0 * epsilon * n as f64) as u64
}

pub(crate) fn check_checkpoint_range(n: usize) -> Result<(), AdversaryError> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(AdversaryError::Range("n must be a multiple of 4 and at least 8"));
    }
    Ok(())
}

/// The least-visited cell in `[n/4, n/2)`, smallest index on ties, if its
/// visit count is at most `threshold`.
pub fn find_checkpoint(t: &RunTrace, n: usize, threshold: u64) -> Result<Option<(usize, u64)>, AdversaryError> {
    check_checkpoint_range(n)?;
    let best = (n / 4..n / 2)
        .map(|c| (c, t.visits(c as i64)))
        .min_by_key(|&(c, v)| (v, c))
        .expect("candidate range is nonempty");
    Ok((best.1 <= threshold).then_some(best))
}

pub fn side_of(t: &RunTrace, c: usize) -> Side {
    if t.outcome.final_head > c as i64 {
        Side::Right
    } else {
        Side::Left
    }
}

/// Traces `word` and reports at its canonical checkpoint. `Ok(None)` when the
/// run did not halt or no cell in range is under `threshold`.
pub fn checkpoint_report(
    m: &MachineSpec,
    word: &Word,
    n: usize,
    threshold: u64,
    budget: u64,
) -> Result<Option<CheckpointReport>, AdversaryError> {
    let t = run_traced(m, word, budget);
    if !t.outcome.verdict.is_halted() {
        return Ok(None);
    }
    report_from_trace(&t, word, n, threshold)
}

pub(crate) fn report_from_trace(
    t: &RunTrace,
    word: &Word,
    n: usize,
    threshold: u64,
) -> Result<Option<CheckpointReport>, AdversaryError> {
    Ok(find_checkpoint(t, n, threshold)?.map(|(c, visits)| CheckpointReport {
        word: word.clone(),
        checkpoint: c,
        visits_at_c: visits,
        sequence: t.crossing_sequence_at(c as i64),
        side: side_of(t, c),
        steps: t.outcome.steps,
    }))
}
