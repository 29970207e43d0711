use serde::Serialize;

use super::fk::FkChain;
use super::schedule::Schedule;
use crate::connectivity::Backend;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::{BoundaryPartition, RcConfiguration, RcParams};

/// Chains from several initial configurations driven by one shared schedule
/// of `(time, edge, uniform)` rings.
#[derive(Debug, Clone)]
pub struct GrandCoupling {
    chains: Vec<FkChain>,
    schedule: Schedule,
    open_votes: Vec<u32>,
    discrepancy: usize,
    time: f64,
    events: u64,
}

impl GrandCoupling {
    pub fn new(
        g: &MultiGraph,
        bc: &BoundaryPartition,
        params: RcParams,
        inits: &[RcConfiguration],
        seed: u64,
        backend: Backend,
    ) -> Result<Self> {
        if inits.is_empty() {
            return Err(Error::invalid("a coupling needs at least one chain"));
        }
        let chains = inits
            .iter()
            .map(|w| FkChain::with_backend(g, bc, params, w, backend))
            .collect::<Result<Vec<_>>>()?;
        let m = g.edge_count();
        let mut open_votes = vec![0u32; m];
        for w in inits {
            for (e, votes) in open_votes.iter_mut().enumerate() {
                *votes += w.is_open(e) as u32;
            }
        }
        let k = inits.len() as u32;
        let discrepancy = open_votes.iter().filter(|&&c| c != 0 && c != k).count();
        Ok(Self {
            chains,
            schedule: Schedule::new(m, seed),
            open_votes,
            discrepancy,
            time: 0.0,
            events: 0,
        })
    }

    /// The all-open and all-closed chains, in that order.
    pub fn extremes(
        g: &MultiGraph,
        bc: &BoundaryPartition,
        params: RcParams,
        seed: u64,
        backend: Backend,
    ) -> Result<Self> {
        let m = g.edge_count();
        Self::new(
            g,
            bc,
            params,
            &[RcConfiguration::all_open(m), RcConfiguration::closed(m)],
            seed,
            backend,
        )
    }

    pub fn chains(&self) -> &[FkChain] {
        &self.chains
    }

    /// Edges on which the member chains do not all agree.
    pub fn discrepancy(&self) -> usize {
        self.discrepancy
    }

    pub fn is_coupled(&self) -> bool {
        self.discrepancy == 0
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn events(&self) -> u64 {
        self.events
    }

    /// Applies the next ring to every chain if it falls at or before
    /// `horizon`; returns its time.
    pub fn step_before(&mut self, horizon: f64) -> Option<f64> {
        let ev = self.schedule.next_event_before(horizon)?;
        let k = self.chains.len() as u32;
        let e = ev.edge;
        let before = self.open_votes[e];
        let mut votes = 0;
        for c in &mut self.chains {
            votes += c.fk_update(e, ev.uniform) as u32;
        }
        let split = |v: u32| v != 0 && v != k;
        match (split(before), split(votes)) {
            (true, false) => self.discrepancy -= 1,
            (false, true) => self.discrepancy += 1,
            _ => {}
        }
        self.open_votes[e] = votes;
        self.time = ev.time;
        self.events += 1;
        Some(ev.time)
    }

    /// Runs until all chains agree or `t_max` passes.
    pub fn run_until_coupled(&mut self, t_max: f64) -> CouplingTime {
        if self.is_coupled() {
            return CouplingTime::Coupled {
                time: self.time,
                events: self.events,
            };
        }
        while self.step_before(t_max).is_some() {
            if self.is_coupled() {
                return CouplingTime::Coupled {
                    time: self.time,
                    events: self.events,
                };
            }
        }
        CouplingTime::TimedOut {
            t_max,
            events: self.events,
            discrepancy: self.discrepancy,
        }
    }

    /// Whether the chains are ordered edgewise as they were listed
    /// (each below its predecessor), as holds for the extremes coupling.
    pub fn is_ordered(&self) -> bool {
        let m = self.open_votes.len();
        self.chains.windows(2).all(|w| {
            (0..m).all(|e| !w[1].is_open(e) || w[0].is_open(e))
        })
    }
}

/// Outcome of a coupling run; a timeout is a value, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CouplingTime {
    Coupled { time: f64, events: u64 },
    TimedOut { t_max: f64, events: u64, discrepancy: usize },
}

impl CouplingTime {
    pub fn time(&self) -> Option<f64> {
        match *self {
            CouplingTime::Coupled { time, .. } => Some(time),
            CouplingTime::TimedOut { .. } => None,
        }
    }
}

/// First ring after which the chains started all-open and all-closed agree.
pub fn coupling_time(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    params: RcParams,
    seed: u64,
    t_max: f64,
) -> Result<CouplingTime> {
    if !(t_max > 0.0) {
        return Err(Error::invalid(format!("t_max must be positive, got {t_max}")));
    }
    if params.q() < 1.0 {
        return Err(Error::invalid("the monotone coupling needs q >= 1"));
    }
    let mut gc = GrandCoupling::extremes(g, bc, params, seed, Backend::Auto)?;
    Ok(gc.run_until_coupled(t_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Schedule;

    #[test]
    fn empty_graph_couples_at_zero() {
        let g = MultiGraph::empty(3);
        let r = coupling_time(&g, &BoundaryPartition::free(3), RcParams::new(0.5, 2.0).unwrap(), 1, 10.0)
            .unwrap();
        assert_eq!(r.time(), Some(0.0));
    }

    #[test]
    fn single_edge_couples_at_first_ring() {
        let g = MultiGraph::path(2);
        for seed in 0..20 {
            let r = coupling_time(&g, &BoundaryPartition::free(2), RcParams::new(0.5, 2.0).unwrap(), seed, 1e6)
                .unwrap();
            let first = Schedule::new(1, seed).next_ring().unwrap();
            assert_eq!(r.time(), Some(first));
        }
    }

    #[test]
    fn chains_stay_ordered() {
        let g = MultiGraph::complete(6);
        let params = RcParams::new(0.3, 2.5).unwrap();
        let bc = BoundaryPartition::wired(6, &[0, 5]).unwrap();
        for seed in 0..20 {
            let mut gc = GrandCoupling::extremes(&g, &bc, params, seed, Backend::Naive).unwrap();
            while gc.step_before(50.0).is_some() {
                assert!(gc.is_ordered());
            }
            assert!(gc.is_coupled());
        }
    }

    #[test]
    fn timeout_is_reported() {
        let g = MultiGraph::complete(8);
        let r = coupling_time(&g, &BoundaryPartition::free(8), RcParams::new(0.5, 2.0).unwrap(), 3, 1e-3)
            .unwrap();
        assert!(matches!(r, CouplingTime::TimedOut { .. }));
    }
}
