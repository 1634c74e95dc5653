use alloc::string::String;
use alloc::vec::Vec;

use crate::free_group::{free_reduce, is_family_member, prefix_element, suffix_element, ReducedWord, Word};
use crate::simulator::{run_traced, Crossing, Direction, Header, MachineSpec, RunTrace, Verdict};

use super::{AdversaryError, Side};

/// A crossing with the state given by name, as stored in certificates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamedCrossing {
    pub direction: Direction,
    pub state: String,
}

pub fn name_crossings(h: &Header, entries: &[Crossing]) -> Vec<NamedCrossing> {
    entries
        .iter()
        .map(|e| NamedCrossing {
            direction: e.direction,
            state: h.state_name(e.state).into(),
        })
        .collect()
}

/// Evidence that a machine accepts a specific non-trivial word.
///
/// `word2` is the source whose run governs the hybrid's verdict. With
/// [`Side::Right`] the hybrid is `word1[..c] · word2[c..]`; with
/// [`Side::Left`] it is `word2[..c] · word1[c..]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCertificate {
    pub machine_name: String,
    /// Hex SHA-256 of the machine's canonical description.
    pub machine_digest: String,
    /// Whether the machine's tape alphabet is exactly `a, b, A, B` and blank.
    pub strict_alphabet: bool,
    pub n: usize,
    pub checkpoint: usize,
    pub word1: Word,
    pub word2: Word,
    pub crossing: Vec<NamedCrossing>,
    pub side: Side,
    pub hybrid: Word,
    pub hybrid_reduced: ReducedWord,
    pub accept_word2: bool,
    pub accept_hybrid: bool,
    pub steps_word2: u64,
    pub steps_hybrid: u64,
}

impl CounterexampleCertificate {
    pub fn refutes(&self) -> bool {
        self.accept_word2 && self.accept_hybrid
    }
}

/// The first `c` letters of `w1` followed by the rest of `w2`.
pub fn build_hybrid(w1: &Word, w2: &Word, c: usize) -> Result<Word, AdversaryError> {
    if w1.len() != w2.len() || c > w1.len() {
        return Err(AdversaryError::Range("hybrid needs equal lengths and c <= length"));
    }
    let mut letters = Vec::with_capacity(w1.len());
    letters.extend_from_slice(&w1.letters()[..c]);
    letters.extend_from_slice(&w2.letters()[c..]);
    Ok(Word::new(letters))
}

/// The hybrid for a given side with `word2` governing.
pub fn side_hybrid(word1: &Word, word2: &Word, c: usize, side: Side) -> Result<Word, AdversaryError> {
    match side {
        Side::Right => build_hybrid(word1, word2, c),
        Side::Left => build_hybrid(word2, word1, c),
    }
}

/// Why a certificate failed re-verification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateFailure {
    #[error("machine digest {found} does not match certificate digest {expected}")]
    DigestMismatch { expected: String, found: String },
    #[error("recorded alphabet flag does not match the machine")]
    AlphabetMismatch,
    #[error("checkpoint {checkpoint} outside [n/4, n/2) for n = {n}")]
    CheckpointOutOfRange { n: usize, checkpoint: usize },
    #[error("source words are not two distinct members of the length-{0} family")]
    Membership(usize),
    #[error("source run did not halt within the budget")]
    BudgetExceeded,
    #[error("crossing sequences at the checkpoint do not match")]
    SequenceMismatch,
    #[error("recorded side does not match the runs")]
    SideMismatch,
    #[error("hybrid word does not match its reconstruction")]
    HybridMismatch,
    #[error("source words agree on the spliced-away part")]
    ElementsNotDistinct,
    #[error("hybrid word is trivial")]
    HybridTrivial,
    #[error("recorded reduced hybrid does not match")]
    ReducedMismatch,
    #[error("recorded acceptance does not match simulation")]
    AcceptanceMismatch,
    #[error("recorded step counts do not match simulation")]
    StepsMismatch,
    #[error("machine does not accept the hybrid")]
    NotAccepted,
}

fn halted(t: RunTrace) -> Result<RunTrace, CertificateFailure> {
    if t.outcome.verdict.is_halted() {
        Ok(t)
    } else {
        Err(CertificateFailure::BudgetExceeded)
    }
}

/// Recomputes every claim of `cert` against `m` from scratch. `Ok(())` means
/// verified: `m` accepts the non-trivial word `cert.hybrid`.
pub fn verify_certificate(m: &MachineSpec, cert: &CounterexampleCertificate, budget: u64) -> Result<(), CertificateFailure> {
    let digest = m.digest_hex();
    if digest != cert.machine_digest {
        return Err(CertificateFailure::DigestMismatch {
            expected: cert.machine_digest.clone(),
            found: digest,
        });
    }
    if m.header().is_strict_alphabet() != cert.strict_alphabet {
        return Err(CertificateFailure::AlphabetMismatch);
    }
    let (n, c) = (cert.n, cert.checkpoint);
    if n < 8 || n % 4 != 0 || c < n / 4 || c >= n / 2 {
        return Err(CertificateFailure::CheckpointOutOfRange { n, checkpoint: c });
    }
    if !is_family_member(&cert.word1, n) || !is_family_member(&cert.word2, n) || cert.word1 == cert.word2 {
        return Err(CertificateFailure::Membership(n));
    }

    let t1 = halted(run_traced(m, &cert.word1, budget))?;
    let t2 = halted(run_traced(m, &cert.word2, budget))?;
    let shared = t2.crossings_at(c as i64);
    if t1.crossings_at(c as i64) != shared || name_crossings(m.header(), shared) != cert.crossing {
        return Err(CertificateFailure::SequenceMismatch);
    }
    let side = if shared.len() % 2 == 1 { Side::Right } else { Side::Left };
    if side != cert.side || super::side_of(&t1, c) != side || super::side_of(&t2, c) != side {
        return Err(CertificateFailure::SideMismatch);
    }

    let hybrid = side_hybrid(&cert.word1, &cert.word2, c, side).map_err(|_| CertificateFailure::HybridMismatch)?;
    if hybrid != cert.hybrid {
        return Err(CertificateFailure::HybridMismatch);
    }
    // Right side keeps word1's prefix, left side keeps word1's suffix.
    let distinct = match side {
        Side::Right => prefix_element(&cert.word1, c) != prefix_element(&cert.word2, c),
        Side::Left => suffix_element(&cert.word1, c) != suffix_element(&cert.word2, c),
    };
    if !distinct {
        return Err(CertificateFailure::ElementsNotDistinct);
    }
    let reduced = free_reduce(&hybrid);
    if reduced.is_identity() {
        return Err(CertificateFailure::HybridTrivial);
    }
    if reduced != cert.hybrid_reduced {
        return Err(CertificateFailure::ReducedMismatch);
    }

    let th = halted(run_traced(m, &hybrid, budget))?;
    let accept_word2 = t2.outcome.verdict == Verdict::Accepted;
    let accept_hybrid = th.outcome.verdict == Verdict::Accepted;
    if accept_word2 != cert.accept_word2 || accept_hybrid != cert.accept_hybrid {
        return Err(CertificateFailure::AcceptanceMismatch);
    }
    if t2.outcome.steps != cert.steps_word2 || th.outcome.steps != cert.steps_hybrid {
        return Err(CertificateFailure::StepsMismatch);
    }
    if !accept_hybrid {
        return Err(CertificateFailure::NotAccepted);
    }
    Ok(())
}

/// Builds the certificate for a colliding pair by simulation. `None` if
/// either run fails to halt within `budget`.
#[allow(clippy::too_many_arguments)]
pub fn make_certificate(
    m: &MachineSpec,
    machine_name: &str,
    n: usize,
    c: usize,
    side: Side,
    word1: &Word,
    word2: &Word,
    budget: u64,
) -> Result<Option<CounterexampleCertificate>, AdversaryError> {
    let t2 = run_traced(m, word2, budget);
    let hybrid = side_hybrid(word1, word2, c, side)?;
    let th = run_traced(m, &hybrid, budget);
    if !t2.outcome.verdict.is_halted() || !th.outcome.verdict.is_halted() {
        return Ok(None);
    }
    Ok(Some(CounterexampleCertificate {
        machine_name: machine_name.into(),
        machine_digest: m.digest_hex(),
        strict_alphabet: m.header().is_strict_alphabet(),
        n,
        checkpoint: c,
        word1: word1.clone(),
        word2: word2.clone(),
        crossing: name_crossings(m.header(), t2.crossings_at(c as i64)),
        side,
        hybrid_reduced: free_reduce(&hybrid),
        hybrid,
        accept_word2: t2.outcome.verdict == Verdict::Accepted,
        accept_hybrid: th.outcome.verdict == Verdict::Accepted,
        steps_word2: t2.outcome.steps,
        steps_hybrid: th.outcome.steps,
    }))
}
