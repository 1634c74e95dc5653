//! Counting thresholds for the guaranteed mode.

use super::AdversaryError;
use crate::free_group::GrowthBase;

/// Default horizon for [`min_guarantee_n`].
pub const DEFAULT_HORIZON: usize = 1 << 16;

/// `log(alpha) / (C · log(K))`, the exclusive upper bound on admissible
/// time coefficients `ε` (runs of at most `ε n²` steps).
pub fn epsilon_bound(k: usize, alpha: GrowthBase, c: f64) -> Result<f64, AdversaryError> {
    if k < 2 {
        return Err(AdversaryError::Domain("state count K must be at least 2"));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(AdversaryError::Domain("crossing constant must be positive"));
    }
    Ok(alpha.log2() / (c * libm::log2(k as f64)))
}

/// Whether `m · K^(C ε m) < alpha^m`, evaluated in the log domain.
pub fn counting_holds(m: usize, k: usize, epsilon: f64, alpha: GrowthBase, c: f64) -> bool {
    let m = m as f64;
    libm::log(m) + c * epsilon * m * libm::log(k as f64) < m * alpha.ln()
}

/// Smallest `n` divisible by 4 from which the pair count
/// `m · K^(C ε m)` stays below `alpha^m` for every `m` up to `horizon`.
/// `None` if the inequality still fails at the horizon.
pub fn min_guarantee_n_with_horizon(
    k: usize,
    epsilon: f64,
    alpha: GrowthBase,
    c: f64,
    horizon: usize,
) -> Result<Option<usize>, AdversaryError> {
    let bound = epsilon_bound(k, alpha, c)?;
    if !(epsilon > 0.0 && epsilon < bound) {
        return Err(AdversaryError::Domain("epsilon must lie in (0, epsilon_bound)"));
    }
    if !counting_holds(horizon, k, epsilon, alpha, c) {
        return Ok(None);
    }
    let last_failure = (1..horizon)
        .rev()
        .find(|&m| !counting_holds(m, k, epsilon, alpha, c))
        .unwrap_or(0);
    let n = (last_failure / 4 + 1) * 4;
    Ok(if n <= horizon { Some(n) } else { None })
}

pub fn min_guarantee_n(k: usize, epsilon: f64, alpha: GrowthBase, c: f64) -> Result<Option<usize>, AdversaryError> {
    min_guarantee_n_with_horizon(k, epsilon, alpha, c, DEFAULT_HORIZON)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::family_alpha;

    #[test]
    fn bound_examples() {
        assert_eq!(epsilon_bound(2, family_alpha(), 4.0).unwrap(), 0.0625);
        assert_eq!(epsilon_bound(2, family_alpha(), 8.0).unwrap(), 1.0 / 32.0);
        assert!(epsilon_bound(1, family_alpha(), 4.0).is_err());
        assert!(epsilon_bound(2, family_alpha(), 0.0).is_err());
        assert!(GrowthBase::new(1.0).is_none());
    }

    #[test]
    fn guarantee_example() {
        assert_eq!(min_guarantee_n(2, 1.0 / 32.0, family_alpha(), 4.0).unwrap(), Some(44));
        assert!(min_guarantee_n(2, 0.0625, family_alpha(), 4.0).is_err());
        assert!(min_guarantee_n(2, 0.07, family_alpha(), 4.0).is_err());
    }

    #[test]
    fn guarantee_decreases_with_epsilon() {
        let mut prev = usize::MAX;
        for i in 1..=15 {
            let eps = 0.0625 * i as f64 / 16.0;
            let n = min_guarantee_n(2, eps, family_alpha(), 4.0).unwrap().unwrap_or(usize::MAX);
            assert!(n >= 4 && n.is_multiple_of(4));
            assert!(n >= prev || prev == usize::MAX, "eps={eps}: {n} < {prev}");
            prev = n;
        }
        let tiny = min_guarantee_n(2, 1e-4, family_alpha(), 4.0).unwrap().unwrap();
        let mid = min_guarantee_n(2, 0.03, family_alpha(), 4.0).unwrap().unwrap();
        assert!(tiny < mid);
    }

    #[test]
    fn horizon_cutoff() {
        let eps = 0.0625 * (1.0 - 1e-9);
        assert_eq!(min_guarantee_n_with_horizon(2, eps, family_alpha(), 4.0, 64).unwrap(), None);
    }
}
