//! One-tape Turing machines against the word problem of the free group F2.
//!
//! The crate is split along the lines of the experiment:
//!
//! - [`free_group`]: words over `{a, b, A, B}`, free reduction, and the
//!   family of trivial witness words whose short prefixes are pairwise
//!   distinct group elements.
//! - [`simulator`]: deterministic one-tape and two-tape machines with
//!   instrumentation (visit counts, crossing sequences).
//! - [`machines`]: bundled reference machines, both correct and
//!   deliberately wrong.
//! - [`adversary`]: the crossing-sequence argument run against a concrete
//!   machine. It searches for two witness words that look identical at a
//!   checkpoint boundary and splices them into a non-trivial word the
//!   machine must treat like a trivial one.
//! - [`bench`]: step-count measurements and log-log exponent fits.
//!
//! Everything here is pure computation. File IO and the command line live in
//! the `f2lab` companion crate. The crate builds without `std` (it needs
//! `alloc`).
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod adversary;
pub mod bench;
pub mod free_group;
pub mod machines;
pub mod simulator;

pub use adversary::{
    AdversaryConfig, AdversaryOutcome, AdversaryReport, CheckpointReport,
    CounterexampleCertificate, Mode, Side,
};
pub use bench::{BenchSample, ExponentFit, FamilyKind};
pub use free_group::{LemmaFamily, Letter, ReducedWord, Word};
pub use simulator::Machine;
pub use simulator::{
    CrossingSequence, Direction, MachineSpec, RunOutcome, RunTrace, TwoTapeSpec, Verdict,
};
