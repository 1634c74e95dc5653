//! Bundled reference machines.
//!
//! Two correct deciders for triviality, a one-tape quadratic one and a
//! two-tape linear one, and two fast one-tape machines that are wrong on
//! purpose and serve as targets for the adversary.

use alloc::format;
use alloc::string::String;

use crate::free_group::Letter;
use crate::simulator::{Machine, MachineSpec, Move, SpecBuilder, TwoTapeSpec};

const LETTERS: [&str; 4] = ["a", "b", "A", "B"];
const STRICT_ALPHABET: [&str; 5] = ["a", "b", "A", "B", "_"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    OneTape,
    TwoTape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correctness {
    Correct,
    IncorrectByDesign,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: Kind,
    pub correctness: Correctness,
    /// Intended growth exponent of the step count on `a^(n/2) A^(n/2)`.
    pub expected_exponent: f64,
    pub build: fn() -> Machine,
}

pub const CATALOG: [CatalogEntry; 4] = [
    CatalogEntry {
        name: "quad_cancel",
        kind: Kind::OneTape,
        correctness: Correctness::Correct,
        expected_exponent: 2.0,
        build: || Machine::OneTape(build_quad_cancel()),
    },
    CatalogEntry {
        name: "twotape_linear",
        kind: Kind::TwoTape,
        correctness: Correctness::Correct,
        expected_exponent: 1.0,
        build: || Machine::TwoTape(build_twotape_linear()),
    },
    CatalogEntry {
        name: "always_accept",
        kind: Kind::OneTape,
        correctness: Correctness::IncorrectByDesign,
        expected_exponent: 0.0,
        build: || Machine::OneTape(build_always_accept()),
    },
    CatalogEntry {
        name: "parity_cheat",
        kind: Kind::OneTape,
        correctness: Correctness::IncorrectByDesign,
        expected_exponent: 1.0,
        build: || Machine::OneTape(build_parity_cheat()),
    },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

fn letter_name(l: Letter) -> &'static str {
    LETTERS[l as usize]
}

/// One-tape decider using the tape as a stack.
///
/// `scan_X` sweeps right remembering the last surviving letter `X` (or
/// `none`), skipping erased cells `x`. On the inverse of `X` it erases the
/// current cell, walks left to erase the partner, keeps walking to the
/// previous surviving letter and resumes the sweep from there. The sweep
/// accepts at the right blank iff nothing survived. Worst case
/// `a^k A^k` walks a growing gap for every cancellation, so Θ(n²) steps.
pub fn build_quad_cancel() -> MachineSpec {
    let states = [
        "scan_none", "scan_a", "scan_b", "scan_A", "scan_B", "erase", "seek", "accept", "reject",
    ];
    let mut b = SpecBuilder::new(
        &states,
        &["a", "b", "A", "B", "_", "x"],
        "_",
        "scan_none",
        "accept",
        "reject",
    );
    let scan = |l: Option<Letter>| -> String {
        match l {
            None => "scan_none".into(),
            Some(l) => format!("scan_{}", letter_name(l)),
        }
    };
    let remembered = [None, Some(Letter::A), Some(Letter::B), Some(Letter::AInv), Some(Letter::BInv)];
    for last in remembered {
        let st = scan(last);
        b.rule(&st, "x", &st, "x", Move::R);
        for l in Letter::ALL {
            let sym = letter_name(l);
            if last == Some(l.inverse()) {
                b.rule(&st, sym, "erase", "x", Move::L);
            } else {
                b.rule(&st, sym, &scan(Some(l)), sym, Move::R);
            }
        }
        let end = if last.is_none() { "accept" } else { "reject" };
        b.rule(&st, "_", end, "_", Move::R);
    }
    b.rule("erase", "x", "erase", "x", Move::L);
    for sym in LETTERS {
        b.rule("erase", sym, "seek", "x", Move::L);
    }
    b.rule("seek", "x", "seek", "x", Move::L);
    for l in Letter::ALL {
        let sym = letter_name(l);
        b.rule("seek", sym, &scan(Some(l)), sym, Move::R);
    }
    b.rule("seek", "_", "scan_none", "_", Move::R);
    b.build().expect("quad_cancel is well formed")
}

/// Two-tape decider: tape 2 is a stack whose head rests on the top symbol
/// (on the blank base cell when empty). A letter equal to the inverse of the
/// top pops in one step; any other letter pushes in two steps (advance the
/// stack head, then write). At the end of the input it accepts iff the stack
/// is empty.
pub fn build_twotape_linear() -> TwoTapeSpec {
    let states = ["scan", "push_a", "push_b", "push_A", "push_B", "accept", "reject"];
    let mut b = SpecBuilder::new(&states, &STRICT_ALPHABET, "_", "scan", "accept", "reject");
    for l in Letter::ALL {
        let sym = letter_name(l);
        let push = format!("push_{sym}");
        for top in STRICT_ALPHABET {
            if top == letter_name(l.inverse()) {
                b.rule2("scan", [sym, top], "scan", [sym, "_"], [Move::R, Move::L]);
            } else {
                b.rule2("scan", [sym, top], &push, [sym, top], [Move::S, Move::R]);
            }
        }
        b.rule2(&push, [sym, "_"], "scan", [sym, sym], [Move::R, Move::S]);
    }
    b.rule2("scan", ["_", "_"], "accept", ["_", "_"], [Move::S, Move::S]);
    for top in LETTERS {
        b.rule2("scan", ["_", top], "reject", ["_", top], [Move::S, Move::S]);
    }
    b.build_two_tape().expect("twotape_linear is well formed")
}

/// Accepts every input with a single transition.
pub fn build_always_accept() -> MachineSpec {
    let mut b = SpecBuilder::new(&["start", "accept", "reject"], &STRICT_ALPHABET, "_", "start", "accept", "reject");
    for sym in STRICT_ALPHABET {
        b.rule("start", sym, "accept", sym, Move::R);
    }
    b.build().expect("always_accept is well formed")
}

/// One left-to-right pass tracking the parities of the number of `a`/`A`
/// letters and of `b`/`B` letters. Accepts at the first blank iff both are
/// even. Every trivial word passes, and so does `aa`. Takes `n + 1` steps.
pub fn build_parity_cheat() -> MachineSpec {
    let states = ["p_ee", "p_eo", "p_oe", "p_oo", "accept", "reject"];
    let mut b = SpecBuilder::new(&states, &STRICT_ALPHABET, "_", "p_ee", "accept", "reject");
    for (pa, pb) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let name = |a: u8, b: u8| format!("p_{}{}", ["e", "o"][a as usize], ["e", "o"][b as usize]);
        let st = name(pa, pb);
        for l in Letter::ALL {
            let sym = letter_name(l);
            let next = if l.is_a_type() { name(pa ^ 1, pb) } else { name(pa, pb ^ 1) };
            b.rule(&st, sym, &next, sym, Move::R);
        }
        let end = if pa == 0 && pb == 0 { "accept" } else { "reject" };
        b.rule(&st, "_", end, "_", Move::R);
    }
    b.build().expect("parity_cheat is well formed")
}

/// A random one-tape machine over `{a, b, A, B, _}` with `states` states
/// (the last two are accept and reject). Each working (state, symbol) pair
/// gets a transition with probability 15/16. Used for property tests.
pub fn random_machine<R: rand::Rng + ?Sized>(rng: &mut R, states: usize) -> MachineSpec {
    assert!(states >= 3, "need a working state plus accept and reject");
    let names: alloc::vec::Vec<String> = (0..states - 2)
        .map(|i| format!("q{i}"))
        .chain(["acc".into(), "rej".into()])
        .collect();
    let refs: alloc::vec::Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut b = SpecBuilder::new(&refs, &STRICT_ALPHABET, "_", "q0", "acc", "rej");
    for st in &refs[..states - 2] {
        for sym in STRICT_ALPHABET {
            if rng.random_range(0..16) == 0 {
                continue;
            }
            let next = refs[rng.random_range(0..states)];
            let write = STRICT_ALPHABET[rng.random_range(0..5)];
            let mv = if rng.random_bool(0.5) { Move::L } else { Move::R };
            b.rule(st, sym, next, write, mv);
        }
    }
    b.build().expect("random machine is well formed")
}
