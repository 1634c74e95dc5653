use alloc::vec;
use alloc::vec::Vec;

use super::spec::{MachineSpec, StateId, TwoTapeSpec};
use super::tape::Tape;
use super::trace::{Crossing, Direction, RunTrace};
use super::{RunOutcome, Verdict};
use crate::free_group::Word;

trait Observer {
    fn config(&mut self, head: i64);
    fn moved(&mut self, from: i64, to: i64, state: StateId);
}

struct Silent;

impl Observer for Silent {
    #[inline(always)]
    fn config(&mut self, _head: i64) {}
    #[inline(always)]
    fn moved(&mut self, _from: i64, _to: i64, _state: StateId) {}
}

/// Dense visit and crossing counters; the head moves one cell at a time so
/// the touched range is contiguous. Both arrays are indexed from `origin`
/// and keep slack on the left so leftward growth stays amortized O(1).
struct Recorder {
    origin: i64,
    lo: i64,
    hi: i64,
    visits: Vec<u64>,
    crossings: Vec<Vec<Crossing>>,
}

impl Recorder {
    fn new(start: i64) -> Self {
        Recorder {
            origin: start,
            lo: start,
            hi: start,
            visits: vec![0; 16],
            crossings: vec![Vec::new(); 16],
        }
    }

    #[inline]
    fn slot(&mut self, cell: i64) -> usize {
        if cell < self.origin {
            let grow = ((self.origin - cell) as usize).max(self.visits.len());
            let mut v = vec![0; grow];
            v.extend_from_slice(&self.visits);
            self.visits = v;
            let mut c = vec![Vec::new(); grow];
            c.append(&mut self.crossings);
            self.crossings = c;
            self.origin -= grow as i64;
        }
        let i = (cell - self.origin) as usize;
        if i >= self.visits.len() {
            let len = (i + 1).max(self.visits.len() * 2);
            self.visits.resize(len, 0);
            self.crossings.resize(len, Vec::new());
        }
        i
    }

    fn into_trace(mut self, outcome: RunOutcome) -> RunTrace {
        let a = (self.lo - self.origin) as usize;
        let b = (self.hi - self.origin) as usize + 1;
        self.visits.truncate(b);
        self.crossings.truncate(b);
        RunTrace {
            outcome,
            visit_origin: self.lo,
            visits: self.visits.split_off(a),
            boundary_origin: self.lo,
            crossings: self.crossings.split_off(a),
        }
    }
}

impl Observer for Recorder {
    #[inline]
    fn config(&mut self, head: i64) {
        self.lo = self.lo.min(head);
        self.hi = self.hi.max(head);
        let i = self.slot(head);
        self.visits[i] += 1;
    }

    #[inline]
    fn moved(&mut self, from: i64, to: i64, state: StateId) {
        let (boundary, direction) = if to > from {
            (from, Direction::LR)
        } else {
            (to, Direction::RL)
        };
        let i = self.slot(boundary);
        self.crossings[i].push(Crossing { direction, state });
    }
}

fn execute<O: Observer>(m: &MachineSpec, input: &Word, budget: u64, obs: &mut O) -> RunOutcome {
    let h = m.header();
    let mut tape = Tape::with_input(h.blank(), input.letters().iter().map(|&l| h.letter_symbol(l)));
    let mut head: i64 = 1;
    let mut state = h.start();
    let mut steps: u64 = 0;
    obs.config(head);
    let verdict = loop {
        if state == h.accept() {
            break Verdict::Accepted;
        }
        if state == h.reject() {
            break Verdict::Rejected;
        }
        if steps == budget {
            break Verdict::BudgetExceeded;
        }
        let Some(rule) = m.rule(state, tape.get(head)) else {
            break Verdict::Rejected;
        };
        tape.set(head, rule.write);
        let from = head;
        head += rule.mv.delta();
        state = rule.next;
        steps += 1;
        obs.moved(from, head, state);
        obs.config(head);
    };
    RunOutcome {
        verdict,
        steps,
        final_head: head,
    }
}

/// Runs `m` on `input` for at most `budget` transitions.
pub fn run(m: &MachineSpec, input: &Word, budget: u64) -> RunOutcome {
    execute(m, input, budget, &mut Silent)
}

/// As [`run`], recording visits and crossing sequences.
pub fn run_traced(m: &MachineSpec, input: &Word, budget: u64) -> RunTrace {
    let mut rec = Recorder::new(1);
    let outcome = execute(m, input, budget, &mut rec);
    rec.into_trace(outcome)
}

/// Two-tape run: input on tape 1 from cell 1, tape 2 blank, both heads on
/// cell 1. `final_head` reports the tape-1 head.
pub fn run_two_tape(m: &TwoTapeSpec, input: &Word, budget: u64) -> RunOutcome {
    let h = m.header();
    let mut t1 = Tape::with_input(h.blank(), input.letters().iter().map(|&l| h.letter_symbol(l)));
    let mut t2 = Tape::blank(h.blank());
    let (mut h1, mut h2) = (1i64, 1i64);
    let mut state = h.start();
    let mut steps = 0u64;
    let verdict = loop {
        if state == h.accept() {
            break Verdict::Accepted;
        }
        if state == h.reject() {
            break Verdict::Rejected;
        }
        if steps == budget {
            break Verdict::BudgetExceeded;
        }
        let Some(rule) = m.rule(state, t1.get(h1), t2.get(h2)) else {
            break Verdict::Rejected;
        };
        t1.set(h1, rule.write[0]);
        t2.set(h2, rule.write[1]);
        h1 += rule.moves[0].delta();
        h2 += rule.moves[1].delta();
        state = rule.next;
        steps += 1;
    };
    RunOutcome {
        verdict,
        steps,
        final_head: h1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpliceError {
    #[error("crossing sequences at boundary {0} differ")]
    SequenceMismatch(i64),
    #[error("both runs must halt")]
    NotHalted,
}

/// Predicted step count of the run on the hybrid input: left part of `tu`
/// plus right part of `tv`, valid when both runs share the crossing sequence
/// at `c`.
pub fn splice_steps(tu: &RunTrace, tv: &RunTrace, c: i64) -> Result<u64, SpliceError> {
    if !tu.outcome.verdict.is_halted() || !tv.outcome.verdict.is_halted() {
        return Err(SpliceError::NotHalted);
    }
    if tu.crossings_at(c) != tv.crossings_at(c) {
        return Err(SpliceError::SequenceMismatch(c));
    }
    Ok(tu.left_steps(c) + tv.right_steps(c))
}
