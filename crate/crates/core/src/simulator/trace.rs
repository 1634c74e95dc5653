use alloc::vec::Vec;
use core::fmt;

use super::spec::{Header, StateId};
use super::RunOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// From cell `c` to cell `c + 1`.
    LR,
    /// From cell `c + 1` to cell `c`.
    RL,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::LR => "LR",
            Direction::RL => "RL",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "LR" => Some(Direction::LR),
            "RL" => Some(Direction::RL),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One crossing of a boundary, with the state right after the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub direction: Direction,
    pub state: StateId,
}

/// The chronological crossings of one boundary.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingSequence {
    pub entries: Vec<Crossing>,
}

impl CrossingSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `LR:state,RL:state,...` with state names from `header`.
    pub fn render(&self, header: &Header) -> alloc::string::String {
        let mut out = alloc::string::String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(e.direction.as_str());
            out.push(':');
            out.push_str(header.state_name(e.state));
        }
        out
    }
}

/// Instrumented record of a one-tape run.
///
/// Visits count configurations (the initial one included) by head cell.
/// Steps are attributed to the cell the head occupies before the transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub outcome: RunOutcome,
    pub(crate) visit_origin: i64,
    pub(crate) visits: Vec<u64>,
    /// Boundary index of `crossings[0]`.
    pub(crate) boundary_origin: i64,
    pub(crate) crossings: Vec<Vec<Crossing>>,
}

impl RunTrace {
    pub fn visits(&self, cell: i64) -> u64 {
        let i = cell - self.visit_origin;
        if i < 0 {
            return 0;
        }
        self.visits.get(i as usize).copied().unwrap_or(0)
    }

    /// Leftmost and rightmost cells the head visited.
    pub fn visited_range(&self) -> (i64, i64) {
        (
            self.visit_origin,
            self.visit_origin + self.visits.len() as i64 - 1,
        )
    }

    pub fn total_visits(&self) -> u64 {
        self.visits.iter().sum()
    }

    /// Crossings of the boundary between `c` and `c + 1`; empty if untouched.
    pub fn crossings_at(&self, c: i64) -> &[Crossing] {
        let i = c - self.boundary_origin;
        if i < 0 {
            return &[];
        }
        self.crossings
            .get(i as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn crossing_sequence_at(&self, c: i64) -> CrossingSequence {
        CrossingSequence {
            entries: self.crossings_at(c).to_vec(),
        }
    }

    /// Boundaries crossed at least once, in increasing order.
    pub fn touched_boundaries(&self) -> impl Iterator<Item = i64> + '_ {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(move |(i, _)| self.boundary_origin + i as i64)
    }

    /// Transitions executed with the head on a cell `<= c`.
    pub fn left_steps(&self, c: i64) -> u64 {
        let (lo, hi) = self.visited_range();
        let configs: u64 = (lo..=c.min(hi)).map(|x| self.visits(x)).sum();
        configs - u64::from(self.outcome.final_head <= c)
    }

    /// Transitions executed with the head on a cell `> c`.
    pub fn right_steps(&self, c: i64) -> u64 {
        let (lo, hi) = self.visited_range();
        let configs: u64 = ((c + 1).max(lo)..=hi).map(|x| self.visits(x)).sum();
        configs - u64::from(self.outcome.final_head > c)
    }
}
