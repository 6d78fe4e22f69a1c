//! Simulation library for non-stationary combinatorial semi-bandits.
//!
//! The crate provides configurable non-stationary environments with
//! probabilistic triggering, three policies (sliding-window CUCB, CUCB with a
//! bandit-over-bandit master, and an adaptive restart policy for linear
//! rewards with an exact oracle), offline optimization oracles, regret
//! ledgers, and a reproducible experiment runner.

pub mod action;
pub mod config;
pub mod env;
pub mod metrics;
pub mod oracle;
pub mod policy;
pub mod runner;
pub mod seeding;

pub use action::Action;
pub use env::{EnvSchedule, RewardModel, TriggeringModel};
pub use oracle::ActionSpace;
pub use policy::Policy;
