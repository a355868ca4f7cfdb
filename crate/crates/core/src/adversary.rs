//! Byzantine attack plans: which node indices are compromised and what bit
//! they broadcast.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the adversary picks the compromised index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackStrategy {
    /// No compromised nodes.
    None,
    /// The first `n_star` nodes of the decision sequence — the
    /// topology-aware attacker's choice.
    Leading,
    /// A uniformly drawn `n_star`-subset.
    Random,
    /// The last `n_star` nodes.
    Trailing,
}

impl AttackStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttackStrategy::None => "none",
            AttackStrategy::Leading => "leading",
            AttackStrategy::Random => "random",
            AttackStrategy::Trailing => "trailing",
        }
    }
}

impl fmt::Display for AttackStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttackStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(AttackStrategy::None),
            "leading" => Ok(AttackStrategy::Leading),
            "random" => Ok(AttackStrategy::Random),
            "trailing" => Ok(AttackStrategy::Trailing),
            other => Err(Error::InvalidAttackPlan(format!(
                "unknown attack strategy {other:?} (expected none, leading, random or trailing)"
            ))),
        }
    }
}

/// A fixed set of compromised node indices and the bit they all broadcast.
///
/// Byzantine emissions never consult the node's signal or fusion state; the
/// plan is frozen before the decision sequence starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackPlan {
    /// Compromised indices, 1-based, sorted ascending.
    byzantine: Vec<usize>,
    /// Bit every compromised node broadcasts.
    pub forced_bit: bool,
    pub strategy: AttackStrategy,
    n_nodes: usize,
}

/// Builds an attack plan over a network of `n_nodes` nodes.
///
/// `rng` is consulted only by [`AttackStrategy::Random`]; the result is
/// deterministic given `(strategy, n_nodes, n_star, rng seed)`.
pub fn plan_attack<R: Rng + ?Sized>(
    strategy: AttackStrategy,
    n_nodes: usize,
    n_star: usize,
    forced_bit: bool,
    rng: &mut R,
) -> Result<AttackPlan> {
    if n_star > n_nodes {
        return Err(Error::InvalidAttackPlan(format!(
            "n_star ({n_star}) exceeds n_nodes ({n_nodes})"
        )));
    }
    let byzantine = match strategy {
        AttackStrategy::None => Vec::new(),
        AttackStrategy::Leading => (1..=n_star).collect(),
        AttackStrategy::Trailing => (n_nodes - n_star + 1..=n_nodes).collect(),
        AttackStrategy::Random => {
            // Partial Fisher-Yates, then sort for ordered-set semantics.
            let mut pool: Vec<usize> = (1..=n_nodes).collect();
            for i in 0..n_star {
                let j = rng.random_range(i..n_nodes);
                pool.swap(i, j);
            }
            let mut chosen: Vec<usize> = pool[..n_star].to_vec();
            chosen.sort_unstable();
            chosen
        }
    };
    Ok(AttackPlan {
        byzantine,
        forced_bit,
        strategy,
        n_nodes,
    })
}

impl AttackPlan {
    /// The bit node `node_index` (1-based) is forced to broadcast, or
    /// `None` if the node behaves honestly.
    pub fn forced_emission(&self, node_index: usize) -> Option<bool> {
        debug_assert!(node_index >= 1 && node_index <= self.n_nodes);
        if self.byzantine.binary_search(&node_index).is_ok() {
            Some(self.forced_bit)
        } else {
            None
        }
    }

    /// Compromised indices, sorted ascending.
    pub fn byzantine_set(&self) -> &[usize] {
        &self.byzantine
    }

    /// `N*`, the number of compromised nodes.
    pub fn n_star(&self) -> usize {
        self.byzantine.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Per-node compromise mask, index 0 for node 1.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n_nodes];
        for &i in &self.byzantine {
            mask[i - 1] = true;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn leading_block_indices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let plan = plan_attack(AttackStrategy::Leading, 200, 60, false, &mut rng).unwrap();
        assert_eq!(plan.byzantine_set(), (1..=60).collect::<Vec<_>>());
        assert_eq!(plan.forced_emission(17), Some(false));
        assert_eq!(plan.forced_emission(60), Some(false));
        assert_eq!(plan.forced_emission(61), None);
    }

    #[test]
    fn none_is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let plan = plan_attack(AttackStrategy::None, 200, 0, false, &mut rng).unwrap();
        assert_eq!(plan.n_star(), 0);
        assert_eq!(plan.forced_emission(1), None);
        assert_eq!(plan.forced_emission(200), None);
    }

    #[test]
    fn trailing_block_indices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let plan = plan_attack(AttackStrategy::Trailing, 10, 3, true, &mut rng).unwrap();
        assert_eq!(plan.byzantine_set(), &[8, 9, 10]);
        assert_eq!(plan.forced_emission(8), Some(true));
        assert_eq!(plan.forced_emission(7), None);
    }

    #[test]
    fn random_full_compromise_is_everything() {
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let plan = plan_attack(AttackStrategy::Random, 10, 10, false, &mut rng).unwrap();
            assert_eq!(plan.byzantine_set(), (1..=10).collect::<Vec<_>>());
        }
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            plan_attack(AttackStrategy::Random, 200, 60, false, &mut rng).unwrap()
        };
        assert_eq!(draw(123), draw(123));
        assert_ne!(draw(123), draw(124));
        let plan = draw(123);
        assert_eq!(plan.n_star(), 60);
        assert!(plan.byzantine_set().windows(2).all(|w| w[0] < w[1]));
        assert!(plan.byzantine_set().iter().all(|&i| (1..=200).contains(&i)));
    }

    #[test]
    fn oversized_n_star_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(plan_attack(AttackStrategy::Leading, 10, 11, false, &mut rng).is_err());
    }

    #[test]
    fn mask_agrees_with_forced_emission() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let plan = plan_attack(AttackStrategy::Random, 50, 20, false, &mut rng).unwrap();
        let mask = plan.mask();
        for node in 1..=50 {
            assert_eq!(mask[node - 1], plan.forced_emission(node).is_some());
        }
    }
}
