use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

/// Wilson score interval for `successes` out of `total` at quantile `z`.
/// An empty sample gives `[0, 1]`.
pub fn wilson(successes: u64, total: u64, z: f64) -> Interval {
    if total == 0 {
        return Interval { low: 0.0, high: 1.0 };
    }
    let n = total as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval {
        low: (centre - half).max(0.0),
        high: (centre + half).min(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // 8 of 10: (0.4902, 0.9433) to four places
        let i = wilson(8, 10, Z95);
        assert!((i.low - 0.4902).abs() < 1e-4, "{i:?}");
        assert!((i.high - 0.9433).abs() < 1e-4, "{i:?}");
        let z = wilson(0, 20, Z95);
        assert_eq!(z.low, 0.0);
        assert!((z.high - 0.1611).abs() < 1e-4);
        assert_eq!(wilson(0, 0, Z95), Interval { low: 0.0, high: 1.0 });
    }

    #[test]
    fn interval_contains_estimate() {
        for total in 1..40u64 {
            for s in 0..=total {
                let i = wilson(s, total, Z95);
                let p = s as f64 / total as f64;
                assert!(i.low <= p + 1e-12 && p <= i.high + 1e-12);
            }
        }
    }
}
