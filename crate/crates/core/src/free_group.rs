//! Words over the generators of F2, free reduction, and the witness families.
//!
//! Letters are written `a`, `b` for the generators and `A`, `B` for their
//! inverses. Words are arbitrary letter sequences; [`ReducedWord`] is the
//! canonical form with no adjacent inverse pair, so two words represent the
//! same group element exactly when their reductions are equal.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Growth base of the witness families: the construction yields exactly
/// `2^(n/4) = ALPHA^n` words of length `n`.
pub const FAMILY_ALPHA_LOG2: f64 = 0.25;

/// Smallest admissible family length.
pub const FAMILY_N0: usize = 4;

/// Uncapped families are enumerated in full; beyond `2^24` words the caller
/// has to pass a cap.
pub const MAX_UNCAPPED_PREFIX_BITS: usize = 24;

/// Prefix bits are drawn from a `u64`.
pub const MAX_PREFIX_BITS: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("invalid letter {found:?} at position {position}, expected one of a, b, A, B")]
    InvalidLetter { found: char, position: usize },
    #[error("family length {0} must be a positive multiple of 4")]
    InvalidSize(usize),
    #[error("{what} = {value} is out of range (maximum {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },
}

/// One of the four letters `a`, `b`, `A` (= a⁻¹), `B` (= b⁻¹).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    #[inline]
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::B => Letter::BInv,
            Letter::AInv => Letter::A,
            Letter::BInv => Letter::B,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::AInv => 'A',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'A' => Some(Letter::AInv),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }

    /// True for `a` and `A`.
    pub fn is_a_type(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite, not necessarily reduced, sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The first `t` letters.
    pub fn prefix(&self, t: usize) -> Result<Word, WordError> {
        check_len(t, self.len())?;
        Ok(Word(self.0[..t].to_vec()))
    }

    /// Everything after the first `t` letters.
    pub fn suffix_after(&self, t: usize) -> Result<Word, WordError> {
        check_len(t, self.len())?;
        Ok(Word(self.0[t..].to_vec()))
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

fn check_len(t: usize, len: usize) -> Result<(), WordError> {
    if t > len {
        return Err(WordError::OutOfRange {
            what: "prefix length",
            value: t as u64,
            max: len as u64,
        });
    }
    Ok(())
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, found)| {
                Letter::from_char(found).ok_or(WordError::InvalidLetter { found, position })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// A word without adjacent mutually inverse letters; the normal form of an
/// element of F2.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Right-multiplies by one letter, cancelling if possible.
    pub fn push(&mut self, letter: Letter) {
        if self.0.last() == Some(&letter.inverse()) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = WordError;

    /// Parses and reduces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(free_reduce(&s.parse()?))
    }
}

pub fn free_reduce(w: &Word) -> ReducedWord {
    reduce_range(w.letters())
}

pub fn reduce_range(letters: &[Letter]) -> ReducedWord {
    let mut out = ReducedWord(Vec::with_capacity(letters.len()));
    for &l in letters {
        out.push(l);
    }
    out
}

pub fn is_trivial(w: &Word) -> bool {
    free_reduce(w).is_identity()
}

/// The formal inverse: reversed, with every letter inverted.
pub fn invert(w: &Word) -> Word {
    Word(w.letters().iter().rev().map(|l| l.inverse()).collect())
}

/// The group element of the first `t` letters.
pub fn prefix_element(w: &Word, t: usize) -> Result<ReducedWord, WordError> {
    check_len(t, w.len())?;
    Ok(reduce_range(&w.letters()[..t]))
}

/// The group element of the letters after position `t`.
pub fn suffix_element(w: &Word, t: usize) -> Result<ReducedWord, WordError> {
    check_len(t, w.len())?;
    Ok(reduce_range(&w.letters()[t..]))
}

/// Trivial words of length `n` whose prefixes of every length in
/// `[n/4, n/2)` are pairwise distinct group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaFamily {
    pub n: usize,
    pub alpha: GrowthBase,
    pub n0: usize,
    pub words: Vec<Word>,
    /// Set when the family was subsampled.
    pub seed: Option<u64>,
}

impl LemmaFamily {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Lines of text, one word per line, each line feed terminated.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            for l in w.letters() {
                out.push(l.to_char());
            }
            out.push('\n');
        }
        out
    }
}

/// A growth base `alpha > 1`, stored by its base-2 logarithm so that bases
/// like `2^(1/4)` are represented exactly.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GrowthBase {
    log2: f64,
}

impl GrowthBase {
    /// `None` unless `alpha > 1`.
    pub fn new(alpha: f64) -> Option<Self> {
        (alpha > 1.0 && alpha.is_finite()).then(|| GrowthBase {
            log2: libm::log2(alpha),
        })
    }

    /// `None` unless `log2 > 0`.
    pub fn from_log2(log2: f64) -> Option<Self> {
        (log2 > 0.0 && log2.is_finite()).then_some(GrowthBase { log2 })
    }

    pub fn value(self) -> f64 {
        libm::exp2(self.log2)
    }

    pub fn log2(self) -> f64 {
        self.log2
    }

    pub fn ln(self) -> f64 {
        self.log2 * core::f64::consts::LN_2
    }

    /// `alpha^n`.
    pub fn pow(self, n: usize) -> f64 {
        libm::exp2(self.log2 * n as f64)
    }
}

/// `2^(1/4)`.
pub fn family_alpha() -> GrowthBase {
    GrowthBase {
        log2: FAMILY_ALPHA_LOG2,
    }
}

fn check_family_size(n: usize) -> Result<usize, WordError> {
    if n < FAMILY_N0 || !n.is_multiple_of(4) {
        return Err(WordError::InvalidSize(n));
    }
    let bits = n / 4;
    if bits > MAX_PREFIX_BITS {
        return Err(WordError::OutOfRange {
            what: "family length",
            value: n as u64,
            max: (4 * MAX_PREFIX_BITS) as u64,
        });
    }
    Ok(bits)
}

/// The family member with binary prefix `s` (most significant bit first,
/// 0 ↦ a, 1 ↦ b), padded with `a` to length `n/2` and followed by its
/// inverse.
pub fn family_member(n: usize, s: u64) -> Result<Word, WordError> {
    let bits = check_family_size(n)?;
    if bits < 64 && s >> bits != 0 {
        return Err(WordError::OutOfRange {
            what: "prefix index",
            value: s,
            max: (1u64 << bits) - 1,
        });
    }
    let mut letters = Vec::with_capacity(n);
    for i in (0..bits).rev() {
        letters.push(if (s >> i) & 1 == 1 { Letter::B } else { Letter::A });
    }
    letters.resize(n / 2, Letter::A);
    let half = Word(letters);
    Ok(half.concat(&invert(&half)))
}

/// Generates the family of length `n`. Without a cap, all `2^(n/4)` words
/// are listed in lexicographic order of their binary prefixes. With a cap,
/// that many distinct prefixes are drawn with a ChaCha8 stream keyed by
/// `seed` (default 0) and listed in the same order.
pub fn gen_lemma_family(
    n: usize,
    cap: Option<usize>,
    seed: Option<u64>,
) -> Result<LemmaFamily, WordError> {
    let bits = check_family_size(n)?;
    let total = 1u64 << bits;
    let prefixes: Vec<u64> = match cap {
        None => {
            if bits > MAX_UNCAPPED_PREFIX_BITS {
                return Err(WordError::OutOfRange {
                    what: "uncapped family length",
                    value: n as u64,
                    max: (4 * MAX_UNCAPPED_PREFIX_BITS) as u64,
                });
            }
            (0..total).collect()
        }
        Some(cap) => {
            if cap as u64 > total {
                return Err(WordError::OutOfRange {
                    what: "family cap",
                    value: cap as u64,
                    max: total,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
            let mut picked = sample_distinct(&mut rng, total, cap);
            picked.sort_unstable();
            picked
        }
    };
    let words = prefixes
        .into_iter()
        .map(|s| family_member(n, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LemmaFamily {
        n,
        alpha: family_alpha(),
        n0: FAMILY_N0,
        words,
        seed: cap.map(|_| seed.unwrap_or(0)),
    })
}

fn sample_distinct(rng: &mut ChaCha8Rng, total: u64, amount: usize) -> Vec<u64> {
    use rand::Rng;
    if total <= u32::MAX as u64 {
        return rand::seq::index::sample(rng, total as usize, amount)
            .into_iter()
            .map(|i| i as u64)
            .collect();
    }
    // Rejection sampling; amount is tiny relative to total here.
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(amount);
    while out.len() < amount {
        let s = rng.random_range(0..total);
        if seen.insert(s) {
            out.push(s);
        }
    }
    out
}

/// Membership in the uncapped family of length `n`, decided structurally.
pub fn is_family_member(w: &Word, n: usize) -> bool {
    if check_family_size(n).is_err() || w.len() != n {
        return false;
    }
    let letters = w.letters();
    let (head, pad) = letters[..n / 2].split_at(n / 4);
    head.iter().all(|l| matches!(l, Letter::A | Letter::B))
        && pad.iter().all(|&l| l == Letter::A)
        && letters[n / 2..]
            .iter()
            .rev()
            .zip(&letters[..n / 2])
            .all(|(&x, &y)| x == y.inverse())
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyViolation {
    WrongLength { index: usize, length: usize },
    NonTrivial { index: usize },
    PrefixCollision { t: usize, first: usize, second: usize },
    SizeBelowBound { size: usize, bound: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub lengths_ok: bool,
    pub trivial_ok: bool,
    pub prefixes_distinct: bool,
    pub size_bound_ok: bool,
    /// `alpha^n`.
    pub size_bound: f64,
    pub first_violation: Option<FamilyViolation>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.lengths_ok && self.trivial_ok && self.prefixes_distinct && self.size_bound_ok
    }
}

/// Checks the three family properties: every word has length `n` and is
/// trivial, prefixes of each length `t` in `[n/4, n/2)` are pairwise distinct
/// elements, and there are at least `alpha^n` words.
pub fn verify_family(f: &LemmaFamily) -> FamilyReport {
    let n = f.n;
    let mut violations = Vec::new();

    let mut lengths_ok = true;
    for (index, w) in f.words.iter().enumerate() {
        if w.len() != n {
            lengths_ok = false;
            violations.push(FamilyViolation::WrongLength {
                index,
                length: w.len(),
            });
            break;
        }
    }

    let mut trivial_ok = true;
    for (index, w) in f.words.iter().enumerate() {
        if !is_trivial(w) {
            trivial_ok = false;
            violations.push(FamilyViolation::NonTrivial { index });
            break;
        }
    }

    let mut prefixes_distinct = true;
    'outer: for t in n / 4..n / 2 {
        let mut seen = alloc::collections::BTreeMap::new();
        for (index, w) in f.words.iter().enumerate() {
            if w.len() < t {
                continue;
            }
            let elem = reduce_range(&w.letters()[..t]);
            if let Some(&first) = seen.get(&elem) {
                prefixes_distinct = false;
                violations.push(FamilyViolation::PrefixCollision {
                    t,
                    first,
                    second: index,
                });
                break 'outer;
            }
            seen.insert(elem, index);
        }
    }

    let size_bound = f.alpha.pow(n);
    let size_bound_ok = (f.words.len() as f64) >= size_bound;
    if !size_bound_ok {
        violations.push(FamilyViolation::SizeBelowBound {
            size: f.words.len(),
            bound: size_bound,
        });
    }

    FamilyReport {
        lengths_ok,
        trivial_ok,
        prefixes_distinct,
        size_bound_ok,
        size_bound,
        first_violation: violations.into_iter().next(),
    }
}
