//! Deterministic Turing machines with instrumentation.
//!
//! Conventions: cells are indexed by all integers, the input occupies cells
//! `1..=n`, every other cell is blank, and the head starts on cell 1.
//!
//! A one-tape run can be traced. The trace records how many configurations
//! had the head on each cell, and for every boundary `c` (between cells `c`
//! and `c + 1`) the chronological list of crossings with the state the
//! machine is in right after each crossing.

mod format;
mod run;
mod spec;
mod tape;
mod trace;

pub use format::{parse_machine, Machine};
pub use run::{run, run_traced, run_two_tape, splice_steps, SpliceError};
pub use spec::{Header, MachineSpec, Move, Rule, SpecBuilder, SpecError, StateId, SymbolId, TwoTapeRule, TwoTapeSpec};
pub use trace::{Crossing, CrossingSequence, Direction, RunTrace};

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    /// Reached the reject state, or found no applicable transition.
    Rejected,
    BudgetExceeded,
}

impl Verdict {
    pub fn is_halted(self) -> bool {
        !matches!(self, Verdict::BudgetExceeded)
    }

    /// `ACCEPT`, `REJECT` or `TIMEOUT`.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Accepted => "ACCEPT",
            Verdict::Rejected => "REJECT",
            Verdict::BudgetExceeded => "TIMEOUT",
        }
    }

    pub fn from_label(s: &str) -> Option<Verdict> {
        match s {
            "ACCEPT" => Some(Verdict::Accepted),
            "REJECT" => Some(Verdict::Rejected),
            "TIMEOUT" => Some(Verdict::BudgetExceeded),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Transitions executed.
    pub steps: u64,
    pub final_head: i64,
}
