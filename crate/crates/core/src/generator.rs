//! Seeded random instances with controlled edge and destination density.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{EddInstance, EdgeServerNetwork, Node, Weight};
use crate::rng::{partial_shuffle, uniform_inclusive, uniform_index};
use crate::{EddError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Edge density |E| / |V|.
    pub delta: f64,
    /// Destination density |R| / |V|.
    pub rho: f64,
    pub weight_min: Weight,
    pub weight_max: Weight,
    pub gamma: Weight,
    pub l_limit: Weight,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            n: 10,
            delta: 1.4,
            rho: 0.7,
            weight_min: 1,
            weight_max: 50,
            gamma: 100,
            l_limit: 110,
            seed: 0,
        }
    }
}

/// `x` rounded half up; `x` must be non-negative.
fn round_half_up(x: f64) -> usize {
    (x + 0.5) as usize
}

impl GeneratorConfig {
    pub fn edge_count(&self) -> usize {
        round_half_up(self.delta * self.n as f64)
    }

    pub fn destination_count(&self) -> usize {
        round_half_up(self.rho * self.n as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(EddError::EmptyNetwork);
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(EddError::InvalidConfig("delta must be a non-negative number"));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(EddError::InvalidConfig("rho must lie in (0, 1]"));
        }
        if self.weight_min == 0 {
            return Err(EddError::InvalidConfig("weight_min must be at least 1"));
        }
        if self.weight_min > self.weight_max {
            return Err(EddError::InvalidConfig("weight_min exceeds weight_max"));
        }
        let m = self.edge_count();
        if m < self.n - 1 {
            return Err(EddError::InvalidConfig("delta below the connectivity floor (n-1)/n"));
        }
        if m > self.n * (self.n - 1) / 2 {
            return Err(EddError::InvalidConfig("delta asks for more edges than n(n-1)/2"));
        }
        if self.destination_count() == 0 {
            return Err(EddError::NoDestinations);
        }
        if self.gamma == 0 {
            return Err(EddError::ZeroGamma);
        }
        if self.l_limit < self.gamma {
            return Err(EddError::LimitBelowGamma { gamma: self.gamma, l_limit: self.l_limit });
        }
        Ok(())
    }
}

/// A random connected instance fully determined by `config`.
///
/// A random spanning tree (each node of a random permutation attaches to a
/// uniformly chosen earlier one) is topped up with distinct random
/// non-edges until `|E| = round(delta * n)`. Weights are uniform in
/// `weight_min..=weight_max`; destinations are a uniform sample of
/// `round(rho * n)` servers.
pub fn generate(config: &GeneratorConfig) -> Result<EddInstance> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.n;
    let target = config.edge_count();

    let mut order: Vec<Node> = (1..=n).collect();
    partial_shuffle(&mut rng, &mut order, n);
    let mut present = BTreeSet::new();
    for i in 1..n {
        let j = uniform_index(&mut rng, i);
        present.insert(ordered(order[i], order[j]));
    }

    let missing = target - present.len();
    let free = n * (n - 1) / 2 - present.len();
    if missing * 2 > free {
        let mut pool: Vec<(Node, Node)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        partial_shuffle(&mut rng, &mut pool, missing);
        present.extend(pool.into_iter().take(missing));
    } else {
        while present.len() < target {
            let u = 1 + uniform_index(&mut rng, n);
            let v = 1 + uniform_index(&mut rng, n);
            if u != v {
                present.insert(ordered(u, v));
            }
        }
    }

    let edges: Vec<(Node, Node, Weight)> = present
        .into_iter()
        .map(|(u, v)| (u, v, uniform_inclusive(&mut rng, config.weight_min, config.weight_max)))
        .collect();
    let network = EdgeServerNetwork::new(n, edges)?;

    let mut nodes: Vec<Node> = (1..=n).collect();
    let k = config.destination_count();
    partial_shuffle(&mut rng, &mut nodes, k);
    EddInstance::new(network, nodes[..k].iter().copied(), config.gamma, config.l_limit)
}

fn ordered(a: Node, b: Node) -> (Node, Node) {
    if a < b { (a, b) } else { (b, a) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::all_pairs_shortest;

    fn cfg(n: usize, delta: f64, rho: f64, seed: u64) -> GeneratorConfig {
        GeneratorConfig { n, delta, rho, seed, ..GeneratorConfig::default() }
    }

    #[test]
    fn floor_density_gives_a_tree() {
        let inst = generate(&cfg(10, 0.9, 0.5, 3)).unwrap();
        assert_eq!(inst.network().edges().len(), 9);
        assert!(all_pairs_shortest(inst.network()).is_ok());
    }

    #[test]
    fn full_density_gives_a_complete_graph() {
        let inst = generate(&cfg(10, 4.5, 0.5, 3)).unwrap();
        assert_eq!(inst.network().edges().len(), 45);
    }

    #[test]
    fn ten_server_shape() {
        let inst = generate(&cfg(10, 1.4, 0.7, 11)).unwrap();
        assert_eq!(inst.network().edges().len(), 14);
        assert_eq!(inst.destinations().len(), 7);
    }

    #[test]
    fn seed_determinism() {
        let a = generate(&cfg(30, 2.0, 0.3, 99)).unwrap();
        let b = generate(&cfg(30, 2.0, 0.3, 99)).unwrap();
        let c = generate(&cfg(30, 2.0, 0.3, 100)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn densities_and_weights_hold() {
        for seed in 0..50 {
            let c = GeneratorConfig { weight_min: 3, weight_max: 9, ..cfg(25, 1.0 + seed as f64 / 25.0, 0.4, seed) };
            let inst = generate(&c).unwrap();
            assert_eq!(inst.network().edges().len(), c.edge_count());
            assert_eq!(inst.destinations().len(), 10);
            assert!(inst.network().edges().iter().all(|e| (3..=9).contains(&e.w)));
            assert!(all_pairs_shortest(inst.network()).is_ok());
        }
    }

    #[test]
    fn bad_configs() {
        assert_eq!(generate(&cfg(0, 1.0, 0.5, 0)), Err(EddError::EmptyNetwork));
        assert!(matches!(generate(&cfg(10, 0.8, 0.5, 0)), Err(EddError::InvalidConfig(_))));
        assert!(matches!(generate(&cfg(10, 4.6, 0.5, 0)), Err(EddError::InvalidConfig(_))));
        assert!(matches!(generate(&cfg(10, 1.0, 0.0, 0)), Err(EddError::InvalidConfig(_))));
        assert_eq!(generate(&cfg(10, 1.0, 0.01, 0)), Err(EddError::NoDestinations));
        let c = GeneratorConfig { weight_min: 0, ..cfg(5, 1.0, 0.5, 0) };
        assert!(matches!(generate(&c), Err(EddError::InvalidConfig(_))));
        let c = GeneratorConfig { l_limit: 50, ..cfg(5, 1.0, 0.5, 0) };
        assert!(matches!(generate(&c), Err(EddError::LimitBelowGamma { .. })));
    }
}
