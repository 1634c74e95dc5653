//! Line-oriented machine description text.
//!
//! ```text
//! states: q0 q1 qacc qrej
//! start: q0
//! accept: qacc
//! reject: qrej
//! blank: _
//! tape_alphabet: a b A B _
//! delta: q0 a -> q1 a R
//! ```
//!
//! `#` starts a comment. Directives may come in any order; the six header
//! directives are required exactly once and `delta` may repeat. Two-tape
//! machines add `tapes: 2` and read/write/move one symbol per tape:
//! `delta: q0 a _ -> q1 a a R S`.
//!
//! [`fmt::Display`] emits the canonical form: header directives in the order
//! above, `tapes` after the alphabet when present, then transitions in
//! state-major table order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::spec::{Header, MachineSpec, Move, SpecBuilder, SpecError, TwoTapeSpec};

/// A parsed description of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    OneTape(MachineSpec),
    TwoTape(TwoTapeSpec),
}

impl Machine {
    pub fn header(&self) -> &Header {
        match self {
            Machine::OneTape(m) => m.header(),
            Machine::TwoTape(m) => m.header(),
        }
    }

    pub fn tapes(&self) -> usize {
        match self {
            Machine::OneTape(_) => 1,
            Machine::TwoTape(_) => 2,
        }
    }

    pub fn digest_hex(&self) -> String {
        match self {
            Machine::OneTape(m) => m.digest_hex(),
            Machine::TwoTape(m) => m.digest_hex(),
        }
    }

    pub fn run(&self, input: &crate::free_group::Word, budget: u64) -> super::RunOutcome {
        match self {
            Machine::OneTape(m) => super::run(m, input, budget),
            Machine::TwoTape(m) => super::run_two_tape(m, input, budget),
        }
    }

    pub fn as_one_tape(&self) -> Option<&MachineSpec> {
        match self {
            Machine::OneTape(m) => Some(m),
            Machine::TwoTape(_) => None,
        }
    }
}

const HEADER_KEYS: [&str; 6] = ["states", "start", "accept", "reject", "blank", "tape_alphabet"];

pub fn parse_machine(text: &str) -> Result<Machine, SpecError> {
    let mut header: [Option<Vec<String>>; 6] = Default::default();
    let mut tapes: Option<usize> = None;
    let mut deltas: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(SpecError::Format {
                line: line_no,
                message: format!("expected `directive: value`, found `{line}`"),
            });
        };
        let key = key.trim();
        let tokens: Vec<String> = rest.split_whitespace().map(|t| t.to_string()).collect();
        if let Some(t) = tokens.iter().find(|t| !t.is_ascii()) {
            return Err(SpecError::Format {
                line: line_no,
                message: format!("non-ASCII token `{t}`"),
            });
        }
        match key {
            "delta" => deltas.push((line_no, tokens)),
            "tapes" => {
                if tapes.is_some() {
                    return Err(dup(line_no, "tapes"));
                }
                tapes = match tokens.as_slice() {
                    [t] if t == "1" => Some(1),
                    [t] if t == "2" => Some(2),
                    _ => {
                        return Err(SpecError::Format {
                            line: line_no,
                            message: "`tapes` must be 1 or 2".into(),
                        })
                    }
                };
            }
            _ => {
                let Some(slot) = HEADER_KEYS.iter().position(|k| *k == key) else {
                    return Err(SpecError::Format {
                        line: line_no,
                        message: format!("unknown directive `{key}`"),
                    });
                };
                if header[slot].is_some() {
                    return Err(dup(line_no, HEADER_KEYS[slot]));
                }
                let single = !matches!(key, "states" | "tape_alphabet");
                if tokens.is_empty() || (single && tokens.len() != 1) {
                    return Err(SpecError::Format {
                        line: line_no,
                        message: format!(
                            "`{key}` takes {}",
                            if single { "exactly one name" } else { "one or more names" }
                        ),
                    });
                }
                header[slot] = Some(tokens);
            }
        }
    }

    let mut taken = header.into_iter().zip(HEADER_KEYS).map(|(v, k)| v.ok_or(SpecError::MissingDirective(k)));
    let states = taken.next().unwrap()?;
    let start = taken.next().unwrap()?.remove(0);
    let accept = taken.next().unwrap()?.remove(0);
    let reject = taken.next().unwrap()?.remove(0);
    let blank = taken.next().unwrap()?.remove(0);
    let symbols = taken.next().unwrap()?;

    if accept == reject {
        return Err(SpecError::Format {
            line: 0,
            message: "`accept` and `reject` name the same state".into(),
        });
    }

    let k = tapes.unwrap_or(1);
    let mut b = SpecBuilder::from_owned(states, symbols, blank, start, accept, reject);
    for (line_no, tokens) in deltas {
        let expected = 3 * k + 3;
        if tokens.len() != expected || tokens[1 + k] != "->" {
            return Err(SpecError::Format {
                line: line_no,
                message: format!(
                    "transition needs `state {} -> state {} {}`",
                    "sym ".repeat(k).trim_end(),
                    "sym ".repeat(k).trim_end(),
                    "move ".repeat(k).trim_end()
                ),
            });
        }
        let moves = tokens[2 * k + 3..]
            .iter()
            .map(|t| {
                Move::parse(t).ok_or_else(|| SpecError::Format {
                    line: line_no,
                    message: format!("unknown move `{t}`"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut it = tokens.into_iter();
        let state = it.next().unwrap();
        let read: Vec<String> = it.by_ref().take(k).collect();
        it.next();
        let next = it.next().unwrap();
        let write: Vec<String> = it.take(k).collect();
        b.push_rule(state, read, next, write, moves);
    }
    if k == 1 {
        b.build().map(Machine::OneTape)
    } else {
        b.build_two_tape().map(Machine::TwoTape)
    }
}

fn dup(line: usize, key: &str) -> SpecError {
    SpecError::Format {
        line,
        message: format!("directive `{key}` given twice"),
    }
}

fn write_header(f: &mut fmt::Formatter<'_>, h: &Header) -> fmt::Result {
    writeln!(f, "states: {}", h.states().join(" "))?;
    writeln!(f, "start: {}", h.state_name(h.start()))?;
    writeln!(f, "accept: {}", h.state_name(h.accept()))?;
    writeln!(f, "reject: {}", h.state_name(h.reject()))?;
    writeln!(f, "blank: {}", h.symbol_name(h.blank()))?;
    writeln!(f, "tape_alphabet: {}", h.symbols().join(" "))
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.header();
        write_header(f, h)?;
        for (s, sym, r) in self.rules() {
            writeln!(
                f,
                "delta: {} {} -> {} {} {}",
                h.state_name(s),
                h.symbol_name(sym),
                h.state_name(r.next),
                h.symbol_name(r.write),
                r.mv.as_str()
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for TwoTapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.header();
        write_header(f, h)?;
        writeln!(f, "tapes: 2")?;
        for (s, [s1, s2], r) in self.rules() {
            writeln!(
                f,
                "delta: {} {} {} -> {} {} {} {} {}",
                h.state_name(s),
                h.symbol_name(s1),
                h.symbol_name(s2),
                h.state_name(r.next),
                h.symbol_name(r.write[0]),
                h.symbol_name(r.write[1]),
                r.moves[0].as_str(),
                r.moves[1].as_str()
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Machine::OneTape(m) => m.fmt(f),
            Machine::TwoTape(m) => m.fmt(f),
        }
    }
}

impl FromStr for MachineSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_machine(s)? {
            Machine::OneTape(m) => Ok(m),
            Machine::TwoTape(_) => Err(SpecError::Invalid("expected a one-tape machine".into())),
        }
    }
}

impl FromStr for TwoTapeSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_machine(s)? {
            Machine::TwoTape(m) => Ok(m),
            Machine::OneTape(_) => Err(SpecError::Invalid("expected a two-tape machine".into())),
        }
    }
}
