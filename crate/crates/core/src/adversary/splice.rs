//! Direct check of the splice property on concrete runs.
//!
//! If the runs on `u` and `v` (same length) halt with equal crossing
//! sequences at boundary `c >= 1`, the run on `u[..c] · v[c..]` behaves like
//! `u` left of the boundary and like `v` right of it. Its verdict and final
//! head come from whichever run ends on the side the shared sequence's parity
//! points to.

use crate::free_group::Word;
use crate::simulator::{run_traced, MachineSpec, RunTrace, Verdict};

use super::{build_hybrid, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceCheck {
    pub c: usize,
    pub shared_len: usize,
    pub side: Side,
    pub predicted_steps: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpliceViolation {
    #[error("hybrid run did not halt within {0} steps")]
    NotHalted(u64),
    #[error("hybrid verdict {found:?}, predicted {expected:?}")]
    Verdict { expected: Verdict, found: Verdict },
    #[error("hybrid took {found} steps, predicted {expected}")]
    Steps { expected: u64, found: u64 },
    #[error("hybrid final head {found}, predicted {expected}")]
    FinalHead { expected: i64, found: i64 },
    #[error("hybrid crossing sequence at the boundary differs from the shared one")]
    Sequence,
}

/// `Ok(None)` when the premise fails: a run did not halt, the lengths
/// differ, `c` is 0, or the crossing sequences at `c` differ.
pub fn check_splice(
    m: &MachineSpec,
    u: &Word,
    tu: &RunTrace,
    v: &Word,
    tv: &RunTrace,
    c: usize,
) -> Result<Option<SpliceCheck>, SpliceViolation> {
    if c == 0 || u.len() != v.len() || c > u.len() {
        return Ok(None);
    }
    if !tu.outcome.verdict.is_halted() || !tv.outcome.verdict.is_halted() {
        return Ok(None);
    }
    let shared = tu.crossings_at(c as i64);
    if shared != tv.crossings_at(c as i64) {
        return Ok(None);
    }
    let side = if shared.len() % 2 == 1 { Side::Right } else { Side::Left };
    let governing = match side {
        Side::Right => tv,
        Side::Left => tu,
    };
    let predicted_steps = tu.left_steps(c as i64) + tv.right_steps(c as i64);
    let hybrid = build_hybrid(u, v, c).expect("lengths checked");
    let budget = tu.outcome.steps + tv.outcome.steps + 1;
    let th = run_traced(m, &hybrid, budget);
    if !th.outcome.verdict.is_halted() {
        return Err(SpliceViolation::NotHalted(budget));
    }
    if th.outcome.verdict != governing.outcome.verdict {
        return Err(SpliceViolation::Verdict {
            expected: governing.outcome.verdict,
            found: th.outcome.verdict,
        });
    }
    if th.outcome.steps != predicted_steps {
        return Err(SpliceViolation::Steps {
            expected: predicted_steps,
            found: th.outcome.steps,
        });
    }
    if th.outcome.final_head != governing.outcome.final_head {
        return Err(SpliceViolation::FinalHead {
            expected: governing.outcome.final_head,
            found: th.outcome.final_head,
        });
    }
    if th.crossings_at(c as i64) != shared {
        return Err(SpliceViolation::Sequence);
    }
    Ok(Some(SpliceCheck {
        c,
        shared_len: shared.len(),
        side,
        predicted_steps,
        verdict: th.outcome.verdict,
    }))
}
