use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::{DegreeSequence, MultiGraph};
use crate::error::{Error, Result};
use crate::rng;

/// A uniformly random perfect matching of the half-edges of `dn`.
///
/// The half-edge array is shuffled (Fisher–Yates) and paired consecutively.
pub fn sample_configuration_model(dn: &DegreeSequence, seed: u64) -> Result<MultiGraph> {
    let mut rng = rng::substream(seed, "configuration-model");
    configuration_model_with(dn, &mut rng)
}

pub(crate) fn configuration_model_with<R: Rng + ?Sized>(
    dn: &DegreeSequence,
    rng: &mut R,
) -> Result<MultiGraph> {
    if !dn.has_even_sum() {
        return Err(Error::invalid(format!(
            "degree sum {} is odd; no perfect matching exists",
            dn.total()
        )));
    }
    let mut stubs = Vec::with_capacity(dn.total());
    for (v, &d) in dn.degrees().iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v, d));
    }
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    MultiGraph::new(dn.len(), edges)
}

/// The configuration model conditioned on simplicity, by rejection.
pub fn sample_simple_graph(
    dn: &DegreeSequence,
    seed: u64,
    max_attempts: usize,
) -> Result<MultiGraph> {
    if !dn.is_graphical() {
        return Err(Error::invalid(
            "degree sequence is not graphical (Erdős–Gallai fails)",
        ));
    }
    let mut rng = rng::substream(seed, "simple-graph");
    for _ in 0..max_attempts {
        let g = configuration_model_with(dn, &mut rng)?;
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::RetryExhausted {
        attempts: max_attempts,
        reason: "no simple configuration drawn".into(),
    })
}

/// I.i.d. Poisson(λ) degrees (odd sums repaired by redrawing one uniformly
/// chosen entry at a time), then the configuration model.
pub fn sample_er_poisson_cloning(n: usize, lambda: f64, seed: u64) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    let poisson = Poisson::new(lambda).map_err(|e| Error::invalid(e.to_string()))?;
    let mut rng = rng::substream(seed, "poisson-cloning");
    let mut degrees: Vec<usize> = (0..n).map(|_| poisson.sample(&mut rng) as usize).collect();
    let mut total: usize = degrees.iter().sum();
    while total % 2 == 1 {
        let i = rng.random_range(0..n);
        total -= degrees[i];
        degrees[i] = poisson.sample(&mut rng) as usize;
        total += degrees[i];
    }
    let dn = DegreeSequence::new(degrees)?;
    configuration_model_with(&dn, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn forced_degrees() {
        for seed in 0..20 {
            let g = sample_configuration_model(&ds(&[2, 2, 2]), seed).unwrap();
            assert_eq!(g.edge_count(), 3);
            assert_eq!(g.degrees(), vec![2, 2, 2]);
        }
        let g = sample_configuration_model(&ds(&[1, 1]), 3).unwrap();
        assert_eq!(g.edges().len(), 1);
        let (u, v) = g.edge(0);
        assert_eq!((u.min(v), u.max(v)), (0, 1));
    }

    #[test]
    fn odd_sum_rejected() {
        assert!(matches!(
            sample_configuration_model(&ds(&[1, 2]), 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn two_by_two_matching_law() {
        // Three perfect matchings of four half-edges; two give the parallel pair.
        let trials = 100_000u64;
        let dn = ds(&[2, 2]);
        let parallel = (0..trials)
            .filter(|&s| {
                let g = sample_configuration_model(&dn, s).unwrap();
                g.edges().iter().all(|&(u, v)| u != v)
            })
            .count();
        let freq = parallel as f64 / trials as f64;
        assert!((freq - 2.0 / 3.0).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn simple_graphs() {
        let g = sample_simple_graph(&ds(&[1, 1]), 0, 10).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = sample_simple_graph(&ds(&[2, 2, 2]), 5, 1000).unwrap();
        assert!(g.is_simple());
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(
            sample_simple_graph(&ds(&[2, 2]), 0, 100),
            Err(Error::InvalidInput(_))
        ));
        // Graphical, but a single attempt at a dense sequence will not succeed every time.
        let dense = ds(&[3, 3, 3, 3]);
        let exhausted = (0..50).any(|s| {
            matches!(
                sample_simple_graph(&dense, s, 1),
                Err(Error::RetryExhausted { .. })
            )
        });
        assert!(exhausted);
    }

    #[test]
    fn poisson_cloning() {
        let g = sample_er_poisson_cloning(10_000, 2.0, 11).unwrap();
        let mean = 2.0 * g.edge_count() as f64 / 10_000.0;
        assert!((mean - 2.0).abs() < 0.1, "mean degree {mean}");
        for seed in 0..20 {
            let g = sample_er_poisson_cloning(101, 1.3, seed).unwrap();
            assert_eq!(g.degrees().iter().sum::<usize>() % 2, 0);
        }
        assert_eq!(sample_er_poisson_cloning(100, 1e-9, 1).unwrap().edge_count(), 0);
        assert!(sample_er_poisson_cloning(100, 0.0, 1).is_err());
        assert!(sample_er_poisson_cloning(0, 1.0, 1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn degrees_are_prescribed(degrees in proptest::collection::vec(0usize..6, 1..30), seed: u64) {
            let mut degrees = degrees;
            if degrees.iter().sum::<usize>() % 2 == 1 {
                degrees[0] += 1;
            }
            let dn = DegreeSequence::new(degrees.clone()).unwrap();
            let g = sample_configuration_model(&dn, seed).unwrap();
            proptest::prop_assert_eq!(g.degrees(), degrees);
        }
    }
}
