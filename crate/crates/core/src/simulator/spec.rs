use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::free_group::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl SymbolId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    /// Stay; two-tape machines only.
    S,
}

impl Move {
    #[inline]
    pub fn delta(self) -> i64 {
        match self {
            Move::L => -1,
            Move::R => 1,
            Move::S => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        }
    }

    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "R" => Some(Move::R),
            "S" => Some(Move::S),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("missing directive `{0}`")]
    MissingDirective(&'static str),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown tape symbol `{0}`")]
    UnknownSymbol(String),
    #[error("conflicting transitions for ({state}, {symbols})")]
    Conflict { state: String, symbols: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
}

/// States, tape alphabet and the distinguished states and symbol, shared by
/// one-tape and two-tape machines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    states: Vec<String>,
    symbols: Vec<String>,
    blank: SymbolId,
    start: StateId,
    accept: StateId,
    reject: StateId,
    letters: [SymbolId; 4],
}

impl Header {
    /// K, the number of states.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.index()]
    }

    pub fn symbol_name(&self, s: SymbolId) -> &str {
        &self.symbols[s.index()]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| StateId(i as u32))
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| SymbolId(i as u32))
    }

    pub fn blank(&self) -> SymbolId {
        self.blank
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accept(&self) -> StateId {
        self.accept
    }

    pub fn reject(&self) -> StateId {
        self.reject
    }

    #[inline]
    pub fn letter_symbol(&self, l: Letter) -> SymbolId {
        self.letters[l as usize]
    }

    /// True when the tape alphabet is exactly `{a, b, A, B}` plus blank.
    pub fn is_strict_alphabet(&self) -> bool {
        self.symbols.len() == 5
    }

    fn state(&self, name: &str) -> Result<StateId, SpecError> {
        self.state_id(name)
            .ok_or_else(|| SpecError::UnknownState(name.to_string()))
    }

    fn symbol(&self, name: &str) -> Result<SymbolId, SpecError> {
        self.symbol_id(name)
            .ok_or_else(|| SpecError::UnknownSymbol(name.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub next: StateId,
    pub write: SymbolId,
    pub mv: Move,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoTapeRule {
    pub next: StateId,
    pub write: [SymbolId; 2],
    pub moves: [Move; 2],
}

/// A deterministic one-tape machine. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineSpec {
    header: Header,
    table: Vec<Option<Rule>>,
}

impl MachineSpec {
    pub fn header(&self) -> &Header {
        &self.header
    }

    pub fn state_count(&self) -> usize {
        self.header.state_count()
    }

    #[inline]
    pub fn rule(&self, state: StateId, symbol: SymbolId) -> Option<&Rule> {
        self.table[state.index() * self.header.symbols.len() + symbol.index()].as_ref()
    }

    /// Defined transitions in table order (state-major, then symbol).
    pub fn rules(&self) -> impl Iterator<Item = (StateId, SymbolId, &Rule)> + '_ {
        let ns = self.header.symbols.len();
        self.table.iter().enumerate().filter_map(move |(i, r)| {
            r.as_ref()
                .map(|r| (StateId((i / ns) as u32), SymbolId((i % ns) as u32), r))
        })
    }

    /// SHA-256 of the canonical description text.
    pub fn digest(&self) -> [u8; 32] {
        sha256(self.to_string().as_bytes())
    }

    pub fn digest_hex(&self) -> String {
        hex32(&self.digest())
    }
}

/// A deterministic two-tape machine; heads may also stay put.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTapeSpec {
    header: Header,
    table: Vec<Option<TwoTapeRule>>,
}

impl TwoTapeSpec {
    pub fn header(&self) -> &Header {
        &self.header
    }

    pub fn state_count(&self) -> usize {
        self.header.state_count()
    }

    #[inline]
    pub fn rule(&self, state: StateId, s1: SymbolId, s2: SymbolId) -> Option<&TwoTapeRule> {
        let ns = self.header.symbols.len();
        self.table[(state.index() * ns + s1.index()) * ns + s2.index()].as_ref()
    }

    pub fn rules(&self) -> impl Iterator<Item = (StateId, [SymbolId; 2], &TwoTapeRule)> + '_ {
        let ns = self.header.symbols.len();
        self.table.iter().enumerate().filter_map(move |(i, r)| {
            r.as_ref().map(|r| {
                (
                    StateId((i / (ns * ns)) as u32),
                    [SymbolId(((i / ns) % ns) as u32), SymbolId((i % ns) as u32)],
                    r,
                )
            })
        })
    }

    pub fn digest(&self) -> [u8; 32] {
        sha256(self.to_string().as_bytes())
    }

    pub fn digest_hex(&self) -> String {
        hex32(&self.digest())
    }
}

fn sha256(bytes: &[u8]) -> [u8; 32] {
    let out = Sha256::digest(bytes);
    let mut d = [0u8; 32];
    d.copy_from_slice(&out);
    d
}

pub(crate) fn hex32(d: &[u8; 32]) -> String {
    use core::fmt::Write;
    let mut s = String::with_capacity(64);
    for b in d {
        let _ = write!(s, "{b:02x}");
    }
    s
}

struct PendingRule {
    state: String,
    read: Vec<String>,
    next: String,
    write: Vec<String>,
    moves: Vec<Move>,
}

/// Assembles and validates machines by name.
///
/// ```
/// use f2lab_core::simulator::{Move, SpecBuilder};
///
/// let mut b = SpecBuilder::new(&["q0", "acc", "rej"], &["a", "b", "A", "B", "_"], "_", "q0", "acc", "rej");
/// for s in ["a", "b", "A", "B", "_"] {
///     b.rule("q0", s, "acc", s, Move::R);
/// }
/// let m = b.build().unwrap();
/// assert_eq!(m.state_count(), 3);
/// ```
pub struct SpecBuilder {
    states: Vec<String>,
    symbols: Vec<String>,
    blank: String,
    start: String,
    accept: String,
    reject: String,
    rules: Vec<PendingRule>,
}

impl SpecBuilder {
    pub fn new(
        states: &[&str],
        symbols: &[&str],
        blank: &str,
        start: &str,
        accept: &str,
        reject: &str,
    ) -> Self {
        SpecBuilder {
            states: states.iter().map(|s| s.to_string()).collect(),
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
            blank: blank.to_string(),
            start: start.to_string(),
            accept: accept.to_string(),
            reject: reject.to_string(),
            rules: Vec::new(),
        }
    }

    pub(crate) fn from_owned(
        states: Vec<String>,
        symbols: Vec<String>,
        blank: String,
        start: String,
        accept: String,
        reject: String,
    ) -> Self {
        SpecBuilder {
            states,
            symbols,
            blank,
            start,
            accept,
            reject,
            rules: Vec::new(),
        }
    }

    pub fn rule(&mut self, state: &str, read: &str, next: &str, write: &str, mv: Move) -> &mut Self {
        self.rules.push(PendingRule {
            state: state.to_string(),
            read: vec![read.to_string()],
            next: next.to_string(),
            write: vec![write.to_string()],
            moves: vec![mv],
        });
        self
    }

    pub fn rule2(
        &mut self,
        state: &str,
        read: [&str; 2],
        next: &str,
        write: [&str; 2],
        moves: [Move; 2],
    ) -> &mut Self {
        self.rules.push(PendingRule {
            state: state.to_string(),
            read: read.iter().map(|s| s.to_string()).collect(),
            next: next.to_string(),
            write: write.iter().map(|s| s.to_string()).collect(),
            moves: moves.to_vec(),
        });
        self
    }

    pub(crate) fn push_rule(
        &mut self,
        state: String,
        read: Vec<String>,
        next: String,
        write: Vec<String>,
        moves: Vec<Move>,
    ) {
        self.rules.push(PendingRule {
            state,
            read,
            next,
            write,
            moves,
        });
    }

    fn header(&self) -> Result<Header, SpecError> {
        for name in self.states.iter().chain(self.symbols.iter()) {
            check_token(name)?;
            if name.contains(',') {
                return Err(SpecError::Invalid(format!("name `{name}` contains a comma")));
            }
        }
        if self.states.len() < 2 {
            return Err(SpecError::Invalid(format!(
                "need at least 2 states, found {}",
                self.states.len()
            )));
        }
        if let Some(d) = first_duplicate(&self.states) {
            return Err(SpecError::Invalid(format!("duplicate state `{d}`")));
        }
        if let Some(d) = first_duplicate(&self.symbols) {
            return Err(SpecError::Invalid(format!("duplicate tape symbol `{d}`")));
        }
        let mut h = Header {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            blank: SymbolId(0),
            start: StateId(0),
            accept: StateId(0),
            reject: StateId(0),
            letters: [SymbolId(0); 4],
        };
        h.blank = h.symbol(&self.blank)?;
        h.start = h.state(&self.start)?;
        h.accept = h.state(&self.accept)?;
        h.reject = h.state(&self.reject)?;
        if h.accept == h.reject {
            return Err(SpecError::Invalid("accept and reject must differ".into()));
        }
        for l in Letter::ALL {
            let name = l.to_char().to_string();
            h.letters[l as usize] = h.symbol_id(&name).ok_or_else(|| {
                SpecError::Invalid(format!("tape alphabet lacks input letter `{name}`"))
            })?;
        }
        if h.letters.contains(&h.blank) {
            return Err(SpecError::Invalid("blank must not be an input letter".into()));
        }
        Ok(h)
    }

    fn resolve(
        &self,
        h: &Header,
        r: &PendingRule,
        tapes: usize,
    ) -> Result<(StateId, Vec<SymbolId>, StateId, Vec<SymbolId>), SpecError> {
        if r.read.len() != tapes || r.write.len() != tapes || r.moves.len() != tapes {
            return Err(SpecError::Invalid(format!(
                "transition from `{}` does not address {tapes} tape(s)",
                r.state
            )));
        }
        let state = h.state(&r.state)?;
        let read = r.read.iter().map(|s| h.symbol(s)).collect::<Result<Vec<_>, _>>()?;
        let next = h.state(&r.next)?;
        let write = r.write.iter().map(|s| h.symbol(s)).collect::<Result<Vec<_>, _>>()?;
        if state == h.accept || state == h.reject {
            return Err(SpecError::Invalid(format!(
                "transition defined from halting state `{}`",
                r.state
            )));
        }
        Ok((state, read, next, write))
    }

    fn conflict(h: &Header, state: StateId, read: &[SymbolId]) -> SpecError {
        let symbols: Vec<&str> = read.iter().map(|&s| h.symbol_name(s)).collect();
        SpecError::Conflict {
            state: h.state_name(state).to_string(),
            symbols: symbols.join(" "),
        }
    }

    pub fn build(&self) -> Result<MachineSpec, SpecError> {
        let header = self.header()?;
        let ns = header.symbols.len();
        let mut table = vec![None; header.states.len() * ns];
        for r in &self.rules {
            let (state, read, next, write) = self.resolve(&header, r, 1)?;
            if r.moves[0] == Move::S {
                return Err(SpecError::Invalid(
                    "one-tape machines move L or R on every step".into(),
                ));
            }
            let slot = &mut table[state.index() * ns + read[0].index()];
            if slot.is_some() {
                return Err(Self::conflict(&header, state, &read));
            }
            *slot = Some(Rule {
                next,
                write: write[0],
                mv: r.moves[0],
            });
        }
        Ok(MachineSpec { header, table })
    }

    pub fn build_two_tape(&self) -> Result<TwoTapeSpec, SpecError> {
        let header = self.header()?;
        let ns = header.symbols.len();
        let mut table = vec![None; header.states.len() * ns * ns];
        for r in &self.rules {
            let (state, read, next, write) = self.resolve(&header, r, 2)?;
            let slot = &mut table[(state.index() * ns + read[0].index()) * ns + read[1].index()];
            if slot.is_some() {
                return Err(Self::conflict(&header, state, &read));
            }
            *slot = Some(TwoTapeRule {
                next,
                write: [write[0], write[1]],
                moves: [r.moves[0], r.moves[1]],
            });
        }
        Ok(TwoTapeSpec { header, table })
    }
}

fn check_token(name: &str) -> Result<(), SpecError> {
    let ok = !name.is_empty()
        && name != "->"
        && name.chars().all(|c| c.is_ascii_graphic() && c != '#');
    if ok {
        Ok(())
    } else {
        Err(SpecError::Invalid(format!("`{name}` is not a valid name")))
    }
}

fn first_duplicate(names: &[String]) -> Option<&str> {
    let mut seen = alloc::collections::BTreeSet::new();
    names.iter().find(|n| !seen.insert(n.as_str())).map(|s| s.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SpecBuilder {
        SpecBuilder::new(&["q0", "acc", "rej"], &["a", "b", "A", "B", "_"], "_", "q0", "acc", "rej")
    }

    #[test]
    fn conflict_is_reported() {
        let mut b = base();
        b.rule("q0", "a", "acc", "a", Move::R);
        b.rule("q0", "a", "rej", "a", Move::R);
        assert!(matches!(b.build(), Err(SpecError::Conflict { .. })));
    }

    #[test]
    fn references_are_checked() {
        let mut b = base();
        b.rule("q9", "a", "acc", "a", Move::R);
        assert_eq!(b.build(), Err(SpecError::UnknownState("q9".into())));
        let mut b = base();
        b.rule("q0", "z", "acc", "a", Move::R);
        assert_eq!(b.build(), Err(SpecError::UnknownSymbol("z".into())));
    }

    #[test]
    fn halting_states_have_no_rules() {
        let mut b = base();
        b.rule("acc", "a", "q0", "a", Move::R);
        assert!(matches!(b.build(), Err(SpecError::Invalid(_))));
    }

    #[test]
    fn accept_must_differ_from_reject() {
        let b = SpecBuilder::new(&["q0", "h"], &["a", "b", "A", "B", "_"], "_", "q0", "h", "h");
        assert!(matches!(b.build(), Err(SpecError::Invalid(_))));
    }

    #[test]
    fn one_tape_cannot_stay() {
        let mut b = base();
        b.rule("q0", "a", "acc", "a", Move::S);
        assert!(matches!(b.build(), Err(SpecError::Invalid(_))));
    }

    #[test]
    fn strictness() {
        assert!(base().build().unwrap().header().is_strict_alphabet());
        let b = SpecBuilder::new(&["q0", "acc", "rej"], &["a", "b", "A", "B", "_", "x"], "_", "q0", "acc", "rej");
        assert!(!b.build().unwrap().header().is_strict_alphabet());
    }

    #[test]
    fn alphabet_needs_all_letters() {
        let b = SpecBuilder::new(&["q0", "acc", "rej"], &["a", "b", "A", "_"], "_", "q0", "acc", "rej");
        assert!(matches!(b.build(), Err(SpecError::Invalid(_))));
    }
}
