//! Schedule generators and their serializable descriptions.

use super::{EnvError, EnvSchedule};
use crate::seeding::derive_stream;
use rand::Rng;
use rand::RngCore;
use serde::{Deserialize, Serialize};

const SEGMENT_RETRIES: usize = 1000;

fn default_mean_lo() -> f64 {
    0.1
}

fn default_mean_hi() -> f64 {
    0.9
}

/// Serializable description of a schedule. Generated kinds omit the mean
/// table; it is regenerated from `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSpec {
    pub m: usize,
    pub horizon: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub kind: ScheduleKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// Stationary schedule with a fixed mean vector.
    Constant { mean: Vec<f64> },
    /// Piecewise-stationary with near-equal segments and random segment
    /// means separated by at least `min_gap` in sup norm.
    Piecewise {
        segments: usize,
        min_gap: f64,
        #[serde(default = "default_mean_lo")]
        mean_lo: f64,
        #[serde(default = "default_mean_hi")]
        mean_hi: f64,
    },
    /// Single-coordinate triangle drift spending exactly `variation` of
    /// sup-norm movement over the horizon.
    Drift { variation: f64 },
    /// Hand-built per-round mean table (one row per round).
    Explicit { means: Vec<Vec<f64>> },
    /// Hand-built segments: `starts[k]` is the first round of segment `k`
    /// (starts[0] must be 1) and `means[k]` its mean vector.
    PiecewiseExplicit {
        starts: Vec<usize>,
        means: Vec<Vec<f64>>,
    },
}

impl ScheduleSpec {
    /// Materializes the schedule this spec describes.
    pub fn build(&self) -> Result<EnvSchedule, EnvError> {
        let mut rng = derive_stream(self.seed, &["schedule"]);
        match &self.kind {
            ScheduleKind::Constant { mean } => {
                if mean.len() != self.m {
                    return Err(EnvError::MeanLength {
                        got: mean.len(),
                        want: self.m,
                    });
                }
                EnvSchedule::from_means(vec![mean.clone(); self.horizon])
            }
            ScheduleKind::Piecewise {
                segments,
                min_gap,
                mean_lo,
                mean_hi,
            } => {
                let mut sampler = uniform_mean_sampler(self.m, *mean_lo, *mean_hi);
                make_piecewise(
                    self.m,
                    self.horizon,
                    *segments,
                    *min_gap,
                    &mut sampler,
                    &mut rng,
                )
            }
            ScheduleKind::Drift { variation } => {
                make_drift(self.m, self.horizon, *variation, &mut rng)
            }
            ScheduleKind::Explicit { means } => {
                if means.len() != self.horizon {
                    return Err(EnvError::Generation(format!(
                        "explicit table has {} rows, horizon is {}",
                        means.len(),
                        self.horizon
                    )));
                }
                EnvSchedule::from_means(means.clone())
            }
            ScheduleKind::PiecewiseExplicit { starts, means } => {
                build_piecewise_explicit(self.m, self.horizon, starts, means)
            }
        }
    }
}

/// Samples segment means uniformly from `[lo, hi]^m`.
pub fn uniform_mean_sampler(
    m: usize,
    lo: f64,
    hi: f64,
) -> impl FnMut(&mut dyn RngCore) -> Vec<f64> {
    move |rng: &mut dyn RngCore| (0..m).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn sup_norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Piecewise-stationary schedule with exactly `segments` stationary
/// segments of near-equal length; consecutive segment means differ by at
/// least `min_gap` in sup norm.
pub fn make_piecewise(
    m: usize,
    horizon: usize,
    segments: usize,
    min_gap: f64,
    mean_sampler: &mut dyn FnMut(&mut dyn RngCore) -> Vec<f64>,
    rng: &mut dyn RngCore,
) -> Result<EnvSchedule, EnvError> {
    if segments == 0 || segments > horizon {
        return Err(EnvError::Generation(format!(
            "segment count {segments} outside 1..={horizon}"
        )));
    }
    if !(0.0..1.0).contains(&min_gap) {
        return Err(EnvError::Generation(format!(
            "min_gap {min_gap} outside (0,1)"
        )));
    }
    let check = |mean: &Vec<f64>| -> Result<(), EnvError> {
        if mean.len() != m {
            return Err(EnvError::MeanLength {
                got: mean.len(),
                want: m,
            });
        }
        Ok(())
    };
    let mut segment_means: Vec<Vec<f64>> = Vec::with_capacity(segments);
    for s in 0..segments {
        let mut found = None;
        for _ in 0..SEGMENT_RETRIES {
            let candidate = mean_sampler(rng);
            check(&candidate)?;
            if s == 0 || sup_norm_diff(&candidate, &segment_means[s - 1]) >= min_gap {
                found = Some(candidate);
                break;
            }
        }
        match found {
            Some(c) => segment_means.push(c),
            None => {
                return Err(EnvError::Generation(format!(
                    "no segment mean with sup-norm gap >= {min_gap} after {SEGMENT_RETRIES} tries"
                )))
            }
        }
    }
    // Segment s covers rounds floor(s*T/S)+1 ..= floor((s+1)*T/S).
    let mut means = Vec::with_capacity(horizon);
    for s in 0..segments {
        let start = s * horizon / segments;
        let end = (s + 1) * horizon / segments;
        for _ in start..end {
            means.push(segment_means[s].clone());
        }
    }
    EnvSchedule::from_means(means)
}

/// Triangle-wave drift on one coordinate whose per-round sup-norm steps sum
/// to exactly `variation`; other coordinates stay constant.
pub fn make_drift(
    m: usize,
    horizon: usize,
    variation: f64,
    rng: &mut dyn RngCore,
) -> Result<EnvSchedule, EnvError> {
    if variation < 0.0 || !variation.is_finite() {
        return Err(EnvError::Generation(format!(
            "variation budget {variation} must be a nonnegative number"
        )));
    }
    let mut base: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..=0.8)).collect();
    if variation == 0.0 || horizon == 1 {
        if variation > 0.0 {
            return Err(EnvError::Generation(
                "cannot spend a positive budget on a single round".into(),
            ));
        }
        return EnvSchedule::from_means(vec![base; horizon]);
    }
    let step = variation / (horizon - 1) as f64;
    if step > 1.0 {
        return Err(EnvError::Generation(format!(
            "budget {variation} needs per-round steps of {step} > 1"
        )));
    }
    let coord = rng.gen_range(0..m);
    // Zig-zag between `lo` and `lo + half_period*step`; turnarounds land on
    // exact grid points so every consecutive step is exactly `step`.
    let half_period = if step > 0.45 {
        1
    } else {
        ((0.45 / step).floor() as usize).max(1)
    };
    let amplitude = half_period as f64 * step;
    let lo = if amplitude <= 0.5 {
        0.25
    } else {
        (1.0 - amplitude) / 2.0
    };
    let mut means = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let phase = t % (2 * half_period);
        let k = if phase <= half_period {
            phase
        } else {
            2 * half_period - phase
        };
        base[coord] = lo + k as f64 * step;
        means.push(base.clone());
    }
    EnvSchedule::from_means(means)
}

fn build_piecewise_explicit(
    m: usize,
    horizon: usize,
    starts: &[usize],
    segment_means: &[Vec<f64>],
) -> Result<EnvSchedule, EnvError> {
    if starts.is_empty() || starts[0] != 1 {
        return Err(EnvError::Generation(
            "starts must begin with round 1".into(),
        ));
    }
    if starts.len() != segment_means.len() {
        return Err(EnvError::Generation(format!(
            "{} starts but {} segment means",
            starts.len(),
            segment_means.len()
        )));
    }
    if starts.windows(2).any(|w| w[0] >= w[1]) || *starts.last().unwrap() > horizon {
        return Err(EnvError::Generation(
            "starts must be strictly increasing and within the horizon".into(),
        ));
    }
    for mean in segment_means {
        if mean.len() != m {
            return Err(EnvError::MeanLength {
                got: mean.len(),
                want: m,
            });
        }
    }
    let mut means = Vec::with_capacity(horizon);
    for (k, &start) in starts.iter().enumerate() {
        let end = if k + 1 < starts.len() {
            starts[k + 1] - 1
        } else {
            horizon
        };
        for _ in start..=end {
            means.push(segment_means[k].clone());
        }
    }
    EnvSchedule::from_means(means)
}
