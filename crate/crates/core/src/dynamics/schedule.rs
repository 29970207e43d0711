use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::rng::{substream, StreamRng};

/// One clock ring: when, which edge, and the uniform deciding its new state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpdateEvent {
    pub time: f64,
    pub edge: usize,
    pub uniform: f64,
}

/// Superposition of rate-1 clocks on `edges` edges, realised as a rate-`edges`
/// Poisson process whose rings pick a uniform edge.
///
/// Ring times and `(edge, uniform)` pairs come from separate streams, so a
/// discrete run of `N` steps consumes exactly the pairs a continuous run with
/// `N` rings would.
#[derive(Debug, Clone)]
pub struct Schedule {
    edges: usize,
    clock: StreamRng,
    updates: StreamRng,
    time: f64,
    rate: Option<Exp<f64>>,
}

impl Schedule {
    pub fn new(edges: usize, seed: u64) -> Self {
        Self {
            edges,
            clock: substream(seed, "fk-clock"),
            updates: substream(seed, "fk-updates"),
            time: 0.0,
            rate: (edges > 0).then(|| Exp::new(edges as f64).expect("positive rate")),
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Next `(edge, uniform)` pair without advancing the clock.
    pub fn next_update(&mut self) -> (usize, f64) {
        let e = self.updates.random_range(0..self.edges);
        (e, self.updates.random::<f64>())
    }

    /// Time of the next ring, advancing the clock. `None` without edges.
    pub fn next_ring(&mut self) -> Option<f64> {
        let gap = self.rate.as_ref()?.sample(&mut self.clock);
        self.time += gap;
        Some(self.time)
    }

    /// The next ring at or before `horizon`, or `None` (the clock is left past
    /// the horizon in that case).
    pub fn next_event_before(&mut self, horizon: f64) -> Option<UpdateEvent> {
        let time = self.next_ring()?;
        if time > horizon {
            return None;
        }
        let (edge, uniform) = self.next_update();
        Some(UpdateEvent {
            time,
            edge,
            uniform,
        })
    }
}

/// Number of rings in `[0, t]` for the schedule built from `seed`, a
/// Poisson(`t · edges`) draw.
pub fn poisson_event_count(t: f64, edges: usize, seed: u64) -> u64 {
    let mut s = Schedule::new(edges, seed);
    let mut count = 0;
    while let Some(time) = s.next_ring() {
        if time > t {
            break;
        }
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_edges_no_events() {
        let mut s = Schedule::new(0, 1);
        assert!(s.next_event_before(10.0).is_none());
        assert_eq!(poisson_event_count(10.0, 0, 1), 0);
    }

    #[test]
    fn counts_are_poisson() {
        let (t, m) = (2.0, 5);
        let draws: Vec<f64> = (0..4000).map(|s| poisson_event_count(t, m, s) as f64).collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / draws.len() as f64;
        // both equal t·m = 10; standard error of the mean ≈ 0.05
        assert!((mean - 10.0).abs() < 0.25, "{mean}");
        assert!((var - 10.0).abs() < 1.5, "{var}");
    }

    #[test]
    fn deterministic() {
        let mut a = Schedule::new(7, 99);
        let mut b = Schedule::new(7, 99);
        for _ in 0..50 {
            assert_eq!(a.next_event_before(1e9), b.next_event_before(1e9));
        }
    }
}
