//! Non-stationary environments: per-round arm-outcome distributions,
//! triggering behavior, and reward functions.
//!
//! Outcomes are independent Bernoulli per arm, which makes expected rewards,
//! triggering probabilities, and distributional distances all computable in
//! closed form.

mod generate;
mod measures;

pub use generate::{uniform_mean_sampler, ScheduleKind, ScheduleSpec};
pub use measures::{realized_measures, Measures};

use crate::action::Action;
use rand::Rng;
use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("round {round} outside 1..={horizon}")]
    RoundOutOfRange { round: usize, horizon: usize },
    #[error("invalid action: {0}")]
    InvalidAction(#[from] crate::action::ActionError),
    #[error("mean vector has {got} entries, expected {want}")]
    MeanLength { got: usize, want: usize },
    #[error("mean {value} for arm {arm} outside [0,1]")]
    MeanOutOfBounds { arm: usize, value: f64 },
    #[error("schedule generation failed: {0}")]
    Generation(String),
}

/// How an action triggers base arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriggeringModel {
    /// Every arm of the played action is triggered.
    Full,
    /// Arms of the action are examined in listed order; examination stops
    /// after the first outcome 1, so an arm is triggered iff all earlier
    /// arms in the action had outcome 0.
    Cascade,
}

impl TriggeringModel {
    /// Probability that playing `action` triggers each arm, given means `mu`.
    pub fn triggering_probabilities(&self, action: &Action, mu: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; mu.len()];
        match self {
            TriggeringModel::Full => {
                for &a in action.arms() {
                    p[a] = 1.0;
                }
            }
            TriggeringModel::Cascade => {
                let mut reach = 1.0;
                for &a in action.arms() {
                    p[a] = reach;
                    reach *= 1.0 - mu[a];
                }
            }
        }
        p
    }
}

/// Reward shape; the smoothness constant of both kinds is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardModel {
    /// Sum of the action's outcomes. Paired with full triggering.
    Linear,
    /// 1 unless every outcome in the action is 0. Paired with cascade
    /// triggering, where it is exactly the observed stop-at-first-success
    /// indicator.
    Disjunctive,
}

impl RewardModel {
    /// The triggering-probability-modulated smoothness constant.
    pub fn smoothness_b(&self) -> f64 {
        1.0
    }

    fn realized(&self, action: &Action, outcomes: &[u8]) -> f64 {
        match self {
            RewardModel::Linear => action.arms().iter().map(|&a| outcomes[a] as f64).sum(),
            RewardModel::Disjunctive => {
                if action.arms().iter().any(|&a| outcomes[a] == 1) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Largest possible realized reward for an action of `len` arms.
    pub fn reward_range(&self, len: usize) -> (f64, f64) {
        match self {
            RewardModel::Linear => (0.0, len as f64),
            RewardModel::Disjunctive => (0.0, 1.0),
        }
    }
}

/// Closed-form expected reward of `action` under mean vector `mu`.
pub fn expected_reward(action: &Action, mu: &[f64], reward: RewardModel) -> f64 {
    match reward {
        RewardModel::Linear => action.arms().iter().map(|&a| mu[a]).sum(),
        RewardModel::Disjunctive => {
            1.0 - action.arms().iter().map(|&a| 1.0 - mu[a]).product::<f64>()
        }
    }
}

/// What the player sees after one round.
#[derive(Debug, Clone)]
pub struct RoundOutcome {
    /// Arms whose outcomes were revealed, in examination order.
    pub triggered: Vec<usize>,
    /// Outcome of each triggered arm, aligned with `triggered`.
    pub observations: Vec<f64>,
    pub realized_reward: f64,
}

/// An oblivious schedule of per-round mean vectors.
///
/// Immutable after construction; safe to share across concurrent runs. All
/// randomness flows through caller-supplied streams.
#[derive(Debug, Clone)]
pub struct EnvSchedule {
    m: usize,
    horizon: usize,
    means: Vec<Vec<f64>>,
    change_points: Vec<usize>,
}

impl EnvSchedule {
    /// Builds a schedule from an explicit per-round mean table.
    pub fn from_means(means: Vec<Vec<f64>>) -> Result<Self, EnvError> {
        if means.is_empty() {
            return Err(EnvError::Generation("horizon must be at least 1".into()));
        }
        let m = means[0].len();
        if m == 0 {
            return Err(EnvError::Generation("need at least one arm".into()));
        }
        for row in &means {
            if row.len() != m {
                return Err(EnvError::MeanLength {
                    got: row.len(),
                    want: m,
                });
            }
            for (arm, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                    return Err(EnvError::MeanOutOfBounds { arm, value: v });
                }
            }
        }
        let change_points = (2..=means.len())
            .filter(|&t| means[t - 1] != means[t - 2])
            .collect();
        Ok(EnvSchedule {
            m,
            horizon: means.len(),
            means,
            change_points,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Mean vector at round `t` (1-based).
    pub fn means_at(&self, t: usize) -> Result<&[f64], EnvError> {
        if t == 0 || t > self.horizon {
            return Err(EnvError::RoundOutOfRange {
                round: t,
                horizon: self.horizon,
            });
        }
        Ok(&self.means[t - 1])
    }

    /// Rounds `t >= 2` where the distribution differs from round `t - 1`.
    pub fn change_points(&self) -> &[usize] {
        &self.change_points
    }

    /// Start round of each stationary segment.
    pub fn segment_starts(&self) -> Vec<usize> {
        let mut starts = vec![1];
        starts.extend_from_slice(&self.change_points);
        starts
    }
}

/// Plays one round: samples outcomes, resolves triggering, and returns the
/// semi-bandit feedback together with the realized reward.
pub fn sample_round(
    schedule: &EnvSchedule,
    t: usize,
    action: &Action,
    trig: TriggeringModel,
    reward: RewardModel,
    rng: &mut dyn RngCore,
) -> Result<RoundOutcome, EnvError> {
    let mu = schedule.means_at(t)?;
    action.validate_arms(schedule.m)?;
    let outcomes: Vec<u8> = mu
        .iter()
        .map(|&p| u8::from(rng.gen::<f64>() < p))
        .collect();
    let triggered = match trig {
        TriggeringModel::Full => action.arms().to_vec(),
        TriggeringModel::Cascade => {
            let mut out = Vec::new();
            for &a in action.arms() {
                out.push(a);
                if outcomes[a] == 1 {
                    break;
                }
            }
            out
        }
    };
    let observations = triggered.iter().map(|&a| outcomes[a] as f64).collect();
    Ok(RoundOutcome {
        triggered,
        observations,
        realized_reward: reward.realized(action, &outcomes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn act(arms: &[usize]) -> Action {
        Action::new(arms.to_vec()).unwrap()
    }

    #[test]
    fn expected_reward_linear_sum() {
        let mu = [0.2, 0.9, 0.5];
        assert_abs_diff_eq!(
            expected_reward(&act(&[0, 2]), &mu, RewardModel::Linear),
            0.7,
            epsilon = 1e-12
        );
    }

    #[test]
    fn expected_reward_disjunctive_complement_product() {
        assert_abs_diff_eq!(
            expected_reward(&act(&[0, 1]), &[0.5, 0.5], RewardModel::Disjunctive),
            0.75,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            expected_reward(&act(&[0, 1, 2]), &[0.1, 0.2, 0.3], RewardModel::Disjunctive),
            0.496,
            epsilon = 1e-12
        );
    }

    #[test]
    fn cascade_triggering_probabilities() {
        let p = TriggeringModel::Cascade.triggering_probabilities(&act(&[0, 1]), &[0.5, 0.5]);
        assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-12);
    }

    /// Forces a specific outcome vector by choosing means 0/1.
    fn deterministic_schedule(outcomes: &[u8]) -> EnvSchedule {
        let mu: Vec<f64> = outcomes.iter().map(|&x| x as f64).collect();
        EnvSchedule::from_means(vec![mu]).unwrap()
    }

    #[test]
    fn full_triggering_observes_whole_action() {
        let sched = deterministic_schedule(&[1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = sample_round(
            &sched,
            1,
            &act(&[0, 1]),
            TriggeringModel::Full,
            RewardModel::Linear,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out.triggered, vec![0, 1]);
        assert_eq!(out.observations, vec![1.0, 0.0]);
        assert_abs_diff_eq!(out.realized_reward, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cascade_stops_at_first_success() {
        let sched = deterministic_schedule(&[0, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = sample_round(
            &sched,
            1,
            &act(&[0, 1, 2]),
            TriggeringModel::Cascade,
            RewardModel::Disjunctive,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out.triggered, vec![0, 1]);
        assert_eq!(out.observations, vec![0.0, 1.0]);
        assert_abs_diff_eq!(out.realized_reward, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn round_bounds_checked() {
        let sched = deterministic_schedule(&[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = sample_round(
            &sched,
            2,
            &act(&[0]),
            TriggeringModel::Full,
            RewardModel::Linear,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, EnvError::RoundOutOfRange { .. }));
    }

    #[test]
    fn monte_carlo_mean_matches_expected_reward() {
        // Spec oracle: sample mean within 3 sigma of the closed form, for
        // every triggering/reward pairing.
        let mu = vec![0.5, 0.5];
        let sched = EnvSchedule::from_means(vec![mu.clone()]).unwrap();
        let action = act(&[0, 1]);
        for (trig, reward) in [
            (TriggeringModel::Full, RewardModel::Linear),
            (TriggeringModel::Full, RewardModel::Disjunctive),
            (TriggeringModel::Cascade, RewardModel::Linear),
            (TriggeringModel::Cascade, RewardModel::Disjunctive),
        ] {
            let want = expected_reward(&action, &mu, reward);
            let n = 100_000usize;
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..n {
                let r = sample_round(&sched, 1, &action, trig, reward, &mut rng)
                    .unwrap()
                    .realized_reward;
                sum += r;
                sumsq += r * r;
            }
            let mean = sum / n as f64;
            let var = (sumsq / n as f64 - mean * mean).max(1e-12);
            let tol = 3.0 * (var / n as f64).sqrt();
            assert!(
                (mean - want).abs() <= tol,
                "{trig:?}/{reward:?}: mean {mean} vs {want} (tol {tol})"
            );
        }
    }
}
