//! Step-count measurements and power-law fits.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::free_group::{gen_lemma_family, Letter, Word, WordError};
use crate::simulator::{Machine, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `a^(n/2) A^(n/2)`.
    WorstCase,
    /// A seeded member of the witness family.
    LemmaRandom,
    /// Seeded uniform letters.
    Random,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::WorstCase => "worstcase",
            FamilyKind::LemmaRandom => "lemma-random",
            FamilyKind::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s {
            "worstcase" => Some(FamilyKind::WorstCase),
            "lemma-random" => Some(FamilyKind::LemmaRandom),
            "random" => Some(FamilyKind::Random),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSample {
    pub n: usize,
    pub steps: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("need at least 3 samples with distinct sizes, got {0}")]
    TooFewSamples(usize),
    #[error("sample at n = {0} has no positive step count")]
    NonPositive(usize),
    #[error("sizes must be strictly increasing")]
    UnsortedSizes,
    #[error("worstcase inputs need an even length, got {0}")]
    OddLength(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub fn family_word(kind: FamilyKind, n: usize, seed: u64) -> Result<Word, BenchError> {
    match kind {
        FamilyKind::WorstCase => {
            if !n.is_multiple_of(2) {
                return Err(BenchError::OddLength(n));
            }
            let mut letters = alloc::vec![Letter::A; n / 2];
            letters.resize(n, Letter::AInv);
            Ok(Word::new(letters))
        }
        FamilyKind::LemmaRandom => {
            let mut f = gen_lemma_family(n, Some(1), Some(seed))?;
            Ok(f.words.remove(0))
        }
        FamilyKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Word::new((0..n).map(|_| Letter::ALL[rng.random_range(0..4)]).collect()))
        }
    }
}

/// Default budget `64 n²`, enough for the quadratic reference machine.
pub fn default_budget(n: usize) -> u64 {
    64 * (n as u64) * (n as u64)
}

/// One sample per size, in the order given. `budget` defaults per size to
/// [`default_budget`]; truncated runs show up as `BudgetExceeded`.
pub fn run_family(
    m: &Machine,
    kind: FamilyKind,
    sizes: &[usize],
    seed: u64,
    budget: Option<u64>,
) -> Result<Vec<BenchSample>, BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::TooFewSamples(0));
    }
    if sizes.windows(2).any(|p| p[0] >= p[1]) {
        return Err(BenchError::UnsortedSizes);
    }
    sizes
        .iter()
        .map(|&n| {
            let w = family_word(kind, n, seed)?;
            let out = m.run(&w, budget.unwrap_or_else(|| default_budget(n)));
            Ok(BenchSample {
                n,
                steps: out.steps,
                verdict: out.verdict,
            })
        })
        .collect()
}

/// Least squares on `(ln x, ln y)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ExponentFit, BenchError> {
    let k = points.len();
    if k < 3 {
        return Err(BenchError::TooFewSamples(k));
    }
    for (i, &(x, y)) in points.iter().enumerate() {
        if x.is_nan() || y.is_nan() || x <= 0.0 || y <= 0.0 {
            return Err(BenchError::NonPositive(x as usize));
        }
        if points[..i].iter().any(|&(x0, _)| x0 == x) {
            return Err(BenchError::TooFewSamples(k));
        }
    }
    let xs: Vec<f64> = points.iter().map(|p| libm::log(p.0)).collect();
    let ys: Vec<f64> = points.iter().map(|p| libm::log(p.1)).collect();
    let kf = k as f64;
    let mx = xs.iter().sum::<f64>() / kf;
    let my = ys.iter().sum::<f64>() / kf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    // A constant series is fit exactly by a flat line.
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        samples: k,
    })
}

pub fn fit_exponent(samples: &[BenchSample]) -> Result<ExponentFit, BenchError> {
    if let Some(s) = samples.iter().find(|s| s.steps == 0) {
        return Err(BenchError::NonPositive(s.n));
    }
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.n as f64, s.steps as f64)).collect();
    fit_power_law(&points)
}

/// Powers of two from 64 to 1024.
pub const DEFAULT_SIZES: [usize; 5] = [64, 128, 256, 512, 1024];
