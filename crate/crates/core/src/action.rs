//! Super arms: ordered tuples of distinct base arms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("action must contain at least one arm")]
    Empty,
    #[error("arm {0} listed more than once")]
    Duplicate(usize),
    #[error("arm {arm} out of range for {m} base arms")]
    OutOfRange { arm: usize, m: usize },
}

/// A super arm: an ordered tuple of distinct base-arm indices.
///
/// The order is the examination order under cascade triggering; set-valued
/// spaces store arms sorted ascending. `Ord` is lexicographic on the arm
/// list, which is the tie-break order used by every oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Action(Vec<usize>);

impl Action {
    pub fn new(arms: Vec<usize>) -> Result<Self, ActionError> {
        if arms.is_empty() {
            return Err(ActionError::Empty);
        }
        let mut seen = arms.clone();
        seen.sort_unstable();
        for pair in seen.windows(2) {
            if pair[0] == pair[1] {
                return Err(ActionError::Duplicate(pair[0]));
            }
        }
        Ok(Action(arms))
    }

    /// Builds a set-valued action: arms are sorted ascending.
    pub fn from_set(mut arms: Vec<usize>) -> Result<Self, ActionError> {
        arms.sort_unstable();
        Action::new(arms)
    }

    pub fn arms(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arm: usize) -> bool {
        self.0.contains(&arm)
    }

    pub fn validate_arms(&self, m: usize) -> Result<(), ActionError> {
        match self.0.iter().find(|&&a| a >= m) {
            Some(&arm) => Err(ActionError::OutOfRange { arm, m }),
            None => Ok(()),
        }
    }

    /// 0/1 indicator vector over `m` base arms.
    pub fn indicator(&self, m: usize) -> Vec<f64> {
        let mut v = vec![0.0; m];
        for &a in &self.0 {
            v[a] = 1.0;
        }
        v
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert_eq!(Action::new(vec![]).unwrap_err(), ActionError::Empty);
        assert_eq!(
            Action::new(vec![1, 2, 1]).unwrap_err(),
            ActionError::Duplicate(1)
        );
    }

    #[test]
    fn keeps_tuple_order() {
        let a = Action::new(vec![2, 0]).unwrap();
        assert_eq!(a.arms(), &[2, 0]);
        let s = Action::from_set(vec![2, 0]).unwrap();
        assert_eq!(s.arms(), &[0, 2]);
    }

    #[test]
    fn lexicographic_order() {
        let a = Action::from_set(vec![0, 2]).unwrap();
        let b = Action::from_set(vec![1, 2]).unwrap();
        assert!(a < b);
    }
}
