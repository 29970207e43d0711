use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::OffspringDistribution;

/// Offspring law of a Galton–Watson process.
#[derive(Debug, Clone)]
pub enum Offspring {
    Poisson(f64),
    Empirical(OffspringDistribution),
}

impl Offspring {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            Offspring::Poisson(l) => Poisson::new(*l).map(|d| d.sample(rng) as usize).unwrap_or(0),
            Offspring::Empirical(d) => d.sample_from_uniform(rng.random::<f64>()),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Offspring::Poisson(l) => *l,
            Offspring::Empirical(d) => d.mean(),
        }
    }
}

/// Generation sizes `Z_0 = 1, Z_1, …, Z_generations`.
///
/// A generation larger than `cap` stops the simulation and the remaining
/// entries are reported as `cap` (enough for tail-frequency estimates).
pub fn gw_generation_sizes<R: Rng + ?Sized>(
    offspring: &Offspring,
    generations: usize,
    cap: usize,
    rng: &mut R,
) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(generations + 1);
    let mut z = 1usize;
    sizes.push(z);
    for _ in 0..generations {
        if z >= cap {
            sizes.push(cap);
            continue;
        }
        z = (0..z).map(|_| offspring.sample(rng)).sum();
        sizes.push(z.min(cap));
    }
    sizes
}
