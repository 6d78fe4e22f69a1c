//! Non-stationarity measures computed from a realized schedule.

use super::EnvSchedule;

/// Cutoff above which the exact total-variation distance of product
/// distributions (2^m terms per change) is replaced by its componentwise
/// upper bound.
const EXACT_TV_MAX_ARMS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Measures {
    /// Number of stationary segments.
    pub switching_count: usize,
    /// Sum over rounds of the sup-norm mean change.
    pub variation: f64,
    /// Sum over rounds of the distributional total-variation distance;
    /// exact for product Bernoulli outcomes when `m` is small, otherwise
    /// the componentwise-sum upper bound.
    pub total_variation: f64,
    pub total_variation_is_exact: bool,
}

/// TV distance between two independent-Bernoulli product distributions,
/// by brute force over all 2^m outcomes.
fn product_bernoulli_tv(p: &[f64], q: &[f64]) -> f64 {
    let m = p.len();
    let mut acc = 0.0;
    for mask in 0u64..(1u64 << m) {
        let mut pp = 1.0;
        let mut pq = 1.0;
        for i in 0..m {
            if mask >> i & 1 == 1 {
                pp *= p[i];
                pq *= q[i];
            } else {
                pp *= 1.0 - p[i];
                pq *= 1.0 - q[i];
            }
        }
        acc += (pp - pq).abs();
    }
    acc / 2.0
}

/// Computes the switching count, variation, and total variation of a
/// schedule directly from its mean table.
pub fn realized_measures(schedule: &EnvSchedule) -> Measures {
    let m = schedule.m();
    let exact = m <= EXACT_TV_MAX_ARMS;
    let mut switching_count = 1usize;
    let mut variation = 0.0;
    let mut total_variation = 0.0;
    for t in 2..=schedule.horizon() {
        let prev = schedule.means_at(t - 1).unwrap();
        let cur = schedule.means_at(t).unwrap();
        if prev == cur {
            continue;
        }
        switching_count += 1;
        variation += prev
            .iter()
            .zip(cur)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        total_variation += if exact {
            product_bernoulli_tv(prev, cur)
        } else {
            prev.iter().zip(cur).map(|(a, b)| (a - b).abs()).sum()
        };
    }
    Measures {
        switching_count,
        variation,
        total_variation,
        total_variation_is_exact: exact,
    }
}
