use std::collections::HashSet;

use super::rng::{rng_from_seed, sample_indices};
use crate::error::{Error, Result};
use crate::Variant;

/// Edge probability at the sharp threshold for (weak) Berge Hamiltonicity:
///
/// - ordinary: `(r-1)! (ln n + ln ln n + c) / n^(r-1)`
/// - weak: `(r-1)! (ln n + c) / n^(r-1)`
///
/// clamped to `[0, 1]`.
pub fn threshold_p(n: usize, r: usize, c: f64, variant: Variant) -> Result<f64> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "threshold needs n >= 3 (ln ln n > 0), got n = {n}"
        )));
    }
    if r < 2 {
        return Err(Error::ParameterOutOfRange(format!("r = {r} < 2")));
    }
    if !c.is_finite() {
        return Err(Error::ParameterOutOfRange(format!("c = {c} is not finite")));
    }
    let nf = n as f64;
    let factorial: f64 = (1..r).map(|i| i as f64).product();
    let log_term = match variant {
        Variant::Ordinary => nf.ln() + nf.ln().ln() + c,
        Variant::Weak => nf.ln() + c,
    };
    let p = factorial * log_term / nf.powi(r as i32 - 1);
    Ok(p.clamp(0.0, 1.0))
}

/// Limiting probability `exp(-exp(-c))` of Hamiltonicity at the threshold.
pub fn limit_probability(c: f64) -> f64 {
    (-(-c).exp()).exp()
}

/// Fraction of `trials` in which `n` independent uniform r-subsets of
/// `{1..n}` together cover every vertex.
pub fn coupon_cover_estimate(n: usize, r: usize, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::ParameterOutOfRange("trials must be at least 1".into()));
    }
    if r == 0 || r > n {
        return Err(Error::ParameterOutOfRange(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut covered_runs = 0usize;
    let mut covered: HashSet<u64> = HashSet::with_capacity(n);
    for _ in 0..trials {
        covered.clear();
        for _ in 0..n {
            covered.extend(sample_indices(&mut rng, n as u64, r as u64));
        }
        if covered.len() == n {
            covered_runs += 1;
        }
    }
    Ok(covered_runs as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_values() {
        let ordinary = threshold_p(100, 3, 0.0, Variant::Ordinary).unwrap();
        let expect = 2.0 * (100f64.ln() + 100f64.ln().ln()) / 1e4;
        assert!((ordinary - expect).abs() < 1e-15);
        assert!((ordinary - 1.22647e-3).abs() < 1e-8);
        let weak = threshold_p(100, 3, 0.0, Variant::Weak).unwrap();
        assert!((weak - 9.2103e-4).abs() < 5e-8);
        assert_eq!(threshold_p(100, 3, -50.0, Variant::Weak).unwrap(), 0.0);
        assert_eq!(threshold_p(5, 3, 1e6, Variant::Weak).unwrap(), 1.0);
        assert!(threshold_p(2, 3, 0.0, Variant::Weak).is_err());
    }

    #[test]
    fn limit_curve() {
        assert!((limit_probability(0.0) - 0.367_879).abs() < 1e-6);
        assert!(limit_probability(-2.0) < limit_probability(2.0));
    }

    #[test]
    fn coupon_trivial_and_small_cases() {
        assert_eq!(coupon_cover_estimate(5, 5, 10, 1).unwrap(), 1.0);
        assert!(coupon_cover_estimate(50, 3, 2000, 1).unwrap() < 0.2);
        assert!(coupon_cover_estimate(5, 3, 0, 1).is_err());
    }

    /// Inclusion-exclusion over the set of uncovered vertices.
    fn exact_cover_probability(n: u64, r: u64) -> f64 {
        use crate::hypergraph::combin::binomial;
        let total = binomial(n, r) as f64;
        (0..=n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(n, j) as f64 * (binomial(n - j, r) as f64 / total).powi(n as i32)
            })
            .sum()
    }

    #[test]
    fn coupon_matches_inclusion_exclusion() {
        let exact = exact_cover_probability(4, 3);
        assert!((exact - 0.984_375).abs() < 1e-12);
        let est = coupon_cover_estimate(4, 3, 5000, 9).unwrap();
        assert!((est - exact).abs() < 0.03, "{est} vs {exact}");
        let exact = exact_cover_probability(8, 3);
        let est = coupon_cover_estimate(8, 3, 5000, 9).unwrap();
        assert!((est - exact).abs() < 0.03, "{est} vs {exact}");
    }
}
