use std::fmt::Write as _;

use super::schedule::Schedule;
use crate::connectivity::{Backend, ConnectivityOracle};
use crate::error::Result;
use crate::graphs::MultiGraph;
use crate::rc::{BoundaryPartition, RcConfiguration, RcParams};

/// FK Glauber dynamics: a configuration, its connectivity oracle and clocks.
#[derive(Debug, Clone)]
pub struct FkChain {
    params: RcParams,
    bc: BoundaryPartition,
    oracle: ConnectivityOracle,
    time: f64,
    steps: u64,
}

/// A state change recorded while tracing a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEvent {
    pub time: f64,
    pub edge: usize,
    pub open: bool,
}

impl FkChain {
    pub fn new(
        g: &MultiGraph,
        bc: &BoundaryPartition,
        params: RcParams,
        omega: &RcConfiguration,
    ) -> Result<Self> {
        Self::with_backend(g, bc, params, omega, Backend::Auto)
    }

    pub fn with_backend(
        g: &MultiGraph,
        bc: &BoundaryPartition,
        params: RcParams,
        omega: &RcConfiguration,
        backend: Backend,
    ) -> Result<Self> {
        Ok(Self {
            params,
            bc: bc.clone(),
            oracle: ConnectivityOracle::with_backend(g, bc, omega, backend)?,
            time: 0.0,
            steps: 0,
        })
    }

    pub fn params(&self) -> &RcParams {
        &self.params
    }

    pub fn boundary(&self) -> &BoundaryPartition {
        &self.bc
    }

    pub fn edge_count(&self) -> usize {
        self.oracle.edge_count()
    }

    pub fn is_open(&self, e: usize) -> bool {
        self.oracle.is_open(e)
    }

    pub fn configuration(&self) -> RcConfiguration {
        self.oracle.configuration()
    }

    pub fn oracle(&self) -> &ConnectivityOracle {
        &self.oracle
    }

    pub fn oracle_mut(&mut self) -> &mut ConnectivityOracle {
        &mut self.oracle
    }

    /// Continuous time elapsed.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Updates applied.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Opens `e` iff `u ≤ p̂` when `e` is a cut-edge and `u ≤ p` otherwise.
    /// Returns the new state.
    pub fn fk_update(&mut self, e: usize, u: f64) -> bool {
        let (p, phat) = (self.params.p(), self.params.phat());
        self.steps += 1;
        self.oracle
            .resample(e, |cut| u <= if cut { phat } else { p })
    }

    /// Runs the chain for continuous time `t` with clocks drawn from `seed`.
    pub fn run_continuous(&mut self, t: f64, seed: u64) {
        let mut s = Schedule::new(self.edge_count(), seed);
        while let Some(ev) = s.next_event_before(t) {
            self.fk_update(ev.edge, ev.uniform);
        }
        self.time += t;
    }

    /// Like [`FkChain::run_continuous`], recording every change of state.
    pub fn run_continuous_traced(&mut self, t: f64, seed: u64) -> Vec<TraceEvent> {
        let mut s = Schedule::new(self.edge_count(), seed);
        let mut trace = Vec::new();
        let start = self.time;
        while let Some(ev) = s.next_event_before(t) {
            let before = self.is_open(ev.edge);
            let after = self.fk_update(ev.edge, ev.uniform);
            if before != after {
                trace.push(TraceEvent {
                    time: start + ev.time,
                    edge: ev.edge,
                    open: after,
                });
            }
        }
        self.time += t;
        trace
    }

    /// Applies `steps` discrete updates drawn from `seed`.
    pub fn run_discrete(&mut self, steps: u64, seed: u64) {
        if self.edge_count() == 0 {
            self.steps += steps;
            return;
        }
        let mut s = Schedule::new(self.edge_count(), seed);
        for _ in 0..steps {
            let (e, u) = s.next_update();
            self.fk_update(e, u);
        }
    }
}

/// CSV with header `event_time,edge,new_state`.
pub fn trace_to_csv(trace: &[TraceEvent]) -> String {
    let mut out = String::from("event_time,edge,new_state\n");
    for ev in trace {
        let _ = writeln!(out, "{},{},{}", ev.time, ev.edge, ev.open as u8);
    }
    out
}
