use alloc::vec::Vec;

use super::spec::SymbolId;

/// A bi-infinite tape stored as a window that grows on demand.
#[derive(Debug, Clone)]
pub(crate) struct Tape {
    cells: Vec<SymbolId>,
    /// Cell index of `cells[0]`.
    origin: i64,
    blank: SymbolId,
}

impl Tape {
    /// Writes `input` into cells `1..=input.len()`.
    pub(crate) fn with_input(blank: SymbolId, input: impl IntoIterator<Item = SymbolId>) -> Self {
        let mut cells = Vec::with_capacity(64);
        cells.push(blank);
        cells.extend(input);
        cells.push(blank);
        Tape {
            cells,
            origin: 0,
            blank,
        }
    }

    pub(crate) fn blank(blank: SymbolId) -> Self {
        Tape::with_input(blank, core::iter::empty())
    }

    #[inline]
    pub(crate) fn get(&self, cell: i64) -> SymbolId {
        let i = cell - self.origin;
        if i < 0 || i as usize >= self.cells.len() {
            self.blank
        } else {
            self.cells[i as usize]
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, cell: i64, symbol: SymbolId) {
        let mut i = cell - self.origin;
        if i < 0 {
            let grow = (-i) as usize + self.cells.len();
            let mut fresh = Vec::with_capacity(grow + self.cells.len());
            fresh.resize(grow, self.blank);
            fresh.extend_from_slice(&self.cells);
            self.cells = fresh;
            self.origin -= grow as i64;
            i = cell - self.origin;
        } else if i as usize >= self.cells.len() {
            let len = (i as usize + 1).max(self.cells.len() * 2);
            self.cells.resize(len, self.blank);
        }
        self.cells[i as usize] = symbol;
    }
}
