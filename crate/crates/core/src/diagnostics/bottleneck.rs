use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{FkChain, PottsChain};
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::{
    exact_potts_distribution, BoundaryPartition, PottsConfiguration, RcConfiguration, RcParams,
    UnionFind,
};
use crate::rng::{SeedTree, StreamRng};

/// Largest state space for the exact conductance.
const CONDUCTANCE_STATE_CAP: u64 = 1_000_000;

/// Parameters of an escape-time experiment from `A_ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BottleneckConfig {
    pub beta: f64,
    pub q: u16,
    pub v_star: usize,
    /// The `ε` of `A_ε`, unrelated to the volume-growth `ε`.
    pub bottleneck_eps: f64,
    pub seeds: usize,
    /// Glauber steps after which a sample is censored.
    pub step_cap: u64,
    /// Continuous FK time run from all-closed before colouring.
    pub burn_in: f64,
    /// Colourings tried per seed before giving up on entering `A_ε`.
    pub init_attempts: usize,
    pub master_seed: u64,
}

impl BottleneckConfig {
    pub fn new(beta: f64, q: u16, v_star: usize, bottleneck_eps: f64) -> Self {
        Self {
            beta,
            q,
            v_star,
            bottleneck_eps,
            seeds: 32,
            step_cap: 50_000_000,
            burn_in: 10.0,
            init_attempts: 1000,
            master_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EscapeSample {
    pub seed: u64,
    /// Glauber steps up to and including the one leaving `A_ε`.
    pub steps: u64,
    /// `steps / n`.
    pub sweeps: f64,
    /// The cap was hit first; `steps` is then a lower bound.
    pub censored: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConductanceReport {
    pub mu_a: f64,
    /// `Q(A, A^c) = Σ_{σ∈A, σ'∉A} μ(σ) P(σ, σ')`.
    pub flow: f64,
    /// `Q(A, A^c) / (μ(A) μ(A^c))`.
    pub phi: f64,
    /// `Q(A, A^c) / μ(A)`: exit probability per step from `μ` restricted to `A`.
    pub escape_rate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BottleneckReport {
    pub n: usize,
    pub v_star: usize,
    pub d_star: usize,
    pub bottleneck_eps: f64,
    /// `⌊ε d_⋆⌋`.
    pub threshold: u32,
    pub beta: f64,
    pub q: u16,
    pub samples: Vec<EscapeSample>,
    /// Median escape time in sweeps, present when at least 80% of samples
    /// are uncensored.
    pub median_sweeps: Option<f64>,
    pub exact: Option<ConductanceReport>,
}

impl BottleneckReport {
    pub fn censored(&self) -> usize {
        self.samples.iter().filter(|s| s.censored).count()
    }

    /// Mean of the uncensored escape times, in steps.
    pub fn mean_steps_uncensored(&self) -> Option<f64> {
        let done: Vec<f64> = self
            .samples
            .iter()
            .filter(|s| !s.censored)
            .map(|s| s.steps as f64)
            .collect();
        crate::stats::mean(&done)
    }

    /// CSV `seed,steps,sweeps,censored`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,steps,sweeps,censored\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{}", s.seed, s.steps, s.sweeps, s.censored as u8);
        }
        out
    }
}

/// Whether `σ` lies in `A_ε`: `σ_{v⋆}` is the first spin and it leads every
/// other spin among the neighbours of `v⋆` by at least `threshold`.
pub fn in_bottleneck(g: &MultiGraph, sigma: &PottsConfiguration, v_star: usize, threshold: u32) -> bool {
    let mut counts = vec![0u32; sigma.q() as usize];
    for &(w, _) in g.neighbors(v_star) {
        if w != v_star {
            counts[sigma.spin(w) as usize] += 1;
        }
    }
    sigma.spin(v_star) == 0 && leads_by(&counts, threshold)
}

fn leads_by(counts: &[u32], threshold: u32) -> bool {
    let rest = counts[1..].iter().copied().max().unwrap_or(0);
    counts[0] >= rest + threshold
}

fn chain_in_bottleneck(chain: &PottsChain, v_star: usize, threshold: u32) -> bool {
    if chain.config().spin(v_star) != 0 {
        return false;
    }
    let first = chain.neighbor_count(v_star, 0);
    let rest = (1..chain.q() as u16)
        .map(|s| chain.neighbor_count(v_star, s))
        .max()
        .unwrap_or(0);
    first >= rest + threshold
}

fn validate(g: &MultiGraph, cfg: &BottleneckConfig) -> Result<()> {
    if cfg.q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {}", cfg.q)));
    }
    if !(cfg.bottleneck_eps > 0.0 && cfg.bottleneck_eps < 1.0) {
        return Err(Error::invalid(format!(
            "bottleneck_eps must lie in (0,1), got {}",
            cfg.bottleneck_eps
        )));
    }
    if cfg.v_star >= g.n() {
        return Err(Error::invalid(format!("v_star {} out of range", cfg.v_star)));
    }
    Ok(())
}

fn loopless_degree(g: &MultiGraph, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&(w, _)| w != v).count()
}

/// Draws a start in `A_ε`: an FK configuration after burn-in, the cluster of
/// `v⋆` coloured with the first spin and every other cluster uniformly.
fn initial_state(
    g: &MultiGraph,
    cfg: &BottleneckConfig,
    threshold: u32,
    tree: &SeedTree,
    seed: u64,
    rng: &mut StreamRng,
) -> Result<PottsConfiguration> {
    let params = RcParams::from_beta(cfg.beta, cfg.q as f64)?;
    let mut fk = FkChain::new(
        g,
        &BoundaryPartition::free(g.n()),
        params,
        &RcConfiguration::closed(g.edge_count()),
    )?;
    fk.run_continuous(cfg.burn_in, tree.child_seed("burn-in", seed));
    for attempt in 0..cfg.init_attempts {
        if attempt > 0 && attempt % 10 == 0 {
            fk.run_continuous(1.0, tree.child_seed("burn-in", seed ^ (attempt as u64) << 32));
        }
        let omega = fk.configuration();
        let mut uf = UnionFind::new(g.n());
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if omega.is_open(e) {
                uf.union(a, b);
            }
        }
        let star_root = uf.find(cfg.v_star);
        let mut colour = vec![u16::MAX; g.n()];
        colour[star_root] = 0;
        let spins: Vec<u16> = (0..g.n())
            .map(|v| {
                let r = uf.find(v);
                if colour[r] == u16::MAX {
                    colour[r] = rng.random_range(0..cfg.q);
                }
                colour[r]
            })
            .collect();
        let sigma = PottsConfiguration::new(cfg.q, spins)?;
        if in_bottleneck(g, &sigma, cfg.v_star, threshold) {
            return Ok(sigma);
        }
    }
    Err(Error::RetryExhausted {
        attempts: cfg.init_attempts,
        reason: "no colouring landed in the bottleneck set".into(),
    })
}

/// Discrete-time Glauber escape times from `A_ε`, one independent start and
/// stream per seed.
pub fn bottleneck_escape(g: &MultiGraph, cfg: &BottleneckConfig) -> Result<BottleneckReport> {
    validate(g, cfg)?;
    let d_star = loopless_degree(g, cfg.v_star);
    let threshold = (cfg.bottleneck_eps * d_star as f64).floor() as u32;
    let tree = SeedTree::new(cfg.master_seed);
    let mut near = vec![false; g.n()];
    near[cfg.v_star] = true;
    for &(w, _) in g.neighbors(cfg.v_star) {
        near[w] = true;
    }
    let samples = (0..cfg.seeds as u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = tree.stream("bottleneck", seed);
            let sigma = initial_state(g, cfg, threshold, &tree, seed, &mut rng)?;
            let mut chain = PottsChain::new(g, cfg.beta, sigma)?;
            let n = g.n();
            let mut steps = 0u64;
            let mut censored = true;
            while steps < cfg.step_cap {
                let v = rng.random_range(0..n);
                let u = rng.random::<f64>();
                chain.potts_glauber_step(v, u);
                steps += 1;
                if near[v] && !chain_in_bottleneck(&chain, cfg.v_star, threshold) {
                    censored = false;
                    break;
                }
            }
            Ok(EscapeSample {
                seed,
                steps,
                sweeps: steps as f64 / n as f64,
                censored,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let uncensored = samples.iter().filter(|s| !s.censored).count();
    let median_sweeps = if uncensored * 5 >= samples.len() * 4 {
        let sweeps: Vec<Option<f64>> = samples
            .iter()
            .map(|s| (!s.censored).then_some(s.sweeps))
            .collect();
        super::censored_median(&sweeps)
    } else {
        None
    };
    let small = (cfg.q as f64).powi(g.n() as i32) <= CONDUCTANCE_STATE_CAP as f64;
    let exact = if small {
        Some(exact_conductance(g, cfg.beta, cfg.q, cfg.v_star, threshold)?)
    } else {
        None
    };
    Ok(BottleneckReport {
        n: g.n(),
        v_star: cfg.v_star,
        d_star,
        bottleneck_eps: cfg.bottleneck_eps,
        threshold,
        beta: cfg.beta,
        q: cfg.q,
        samples,
        median_sweeps,
        exact,
    })
}

/// Exact `μ(A_ε)`, `Q(A_ε, A_ε^c)` and `Φ(A_ε)` for single-site Glauber
/// dynamics by enumerating all `q^n` states.
pub fn exact_conductance(
    g: &MultiGraph,
    beta: f64,
    q: u16,
    v_star: usize,
    threshold: u32,
) -> Result<ConductanceReport> {
    let states = (q as f64).powi(g.n() as i32);
    if states > CONDUCTANCE_STATE_CAP as f64 {
        return Err(Error::TooLarge {
            what: "Potts states for exact conductance",
            size: states as u64,
            cap: CONDUCTANCE_STATE_CAP,
        });
    }
    let mu = exact_potts_distribution(g, beta, q)?;
    let n = g.n();
    let mut mu_a = 0.0;
    let mut flow = 0.0;
    let mut weights = vec![0.0; q as usize];
    for (index, &p) in mu.probs().iter().enumerate() {
        let sigma = PottsConfiguration::from_index(q, n, index);
        if !in_bottleneck(g, &sigma, v_star, threshold) {
            continue;
        }
        mu_a += p;
        for v in 0..n {
            let mut counts = vec![0u32; q as usize];
            for &(w, _) in g.neighbors(v) {
                if w != v {
                    counts[sigma.spin(w) as usize] += 1;
                }
            }
            let mut total = 0.0;
            for (wgt, &c) in weights.iter_mut().zip(&counts) {
                *wgt = (beta * c as f64).exp();
                total += *wgt;
            }
            let mut next = sigma.clone();
            for s in 0..q {
                if s == sigma.spin(v) {
                    continue;
                }
                next.set(v, s);
                if !in_bottleneck(g, &next, v_star, threshold) {
                    flow += p * weights[s as usize] / total / n as f64;
                }
            }
        }
    }
    Ok(ConductanceReport {
        mu_a,
        flow,
        phi: flow / (mu_a * (1.0 - mu_a)),
        escape_rate: flow / mu_a,
    })
}
