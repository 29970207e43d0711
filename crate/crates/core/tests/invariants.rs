use proptest::prelude::*;
use rand::Rng;

use fkmixer::connectivity::{new_oracle, Backend};
use fkmixer::diagnostics::{influence_decay_exact, kr_sparse_check, shatter_run};
use fkmixer::dynamics::{FkChain, GrandCoupling, PottsChain};
use fkmixer::graphs::{gw_generation_sizes, sample_er_poisson_cloning, MultiGraph, Offspring};
use fkmixer::rc::{
    exact_potts_distribution, exact_rc_distribution, BoundaryPartition, PottsConfiguration,
    RcConfiguration, RcParams,
};
use fkmixer::rng::{from_seed, SeedTree};
use fkmixer::stats::total_variation;
use fkmixer::thresholds::{g_func, p_u};

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |edges| MultiGraph::new(n, edges).unwrap())
    })
}

fn arb_partition(n: usize) -> impl Strategy<Value = BoundaryPartition> {
    proptest::collection::vec(0..n, n).prop_map(|labels| BoundaryPartition::from_labels(&labels))
}

/// Every up-closed family of configurations on `m ≤ 4` edges, as bitmask
/// membership tables.
fn increasing_events(m: usize) -> Vec<Vec<bool>> {
    let states = 1usize << m;
    let mut out = Vec::new();
    for family in 0u64..1 << states {
        let member = |s: usize| family >> s & 1 == 1;
        let closed = (0..states).all(|s| !member(s) || (0..m).all(|e| member(s | 1 << e)));
        if closed {
            out.push((0..states).map(member).collect());
        }
    }
    out
}

#[test]
fn finer_boundary_is_stochastically_smaller() {
    let mut rng = from_seed(31);
    let events: Vec<Vec<Vec<bool>>> = (0..=4).map(increasing_events).collect();
    assert_eq!(events[4].len(), 168);
    for _ in 0..60 {
        let n = rng.random_range(2..=5);
        let m = rng.random_range(1..=4);
        let edges = (0..m).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
        let g = MultiGraph::new(n, edges).unwrap();
        let coarse_labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let coarse = BoundaryPartition::from_labels(&coarse_labels);
        let fine_labels: Vec<usize> = coarse_labels
            .iter()
            .map(|&l| 2 * l + rng.random_range(0..2))
            .collect();
        let fine = BoundaryPartition::from_labels(&fine_labels);
        assert!(fine.is_refinement_of(&coarse));
        let params = RcParams::new(rng.random_range(0.1..0.9), rng.random_range(1.0..4.0)).unwrap();
        let hi = exact_rc_distribution(&g, &coarse, &params).unwrap();
        let lo = exact_rc_distribution(&g, &fine, &params).unwrap();
        for event in &events[m] {
            let prob = |d: &fkmixer::rc::RcDistribution| d.event_prob(|s| event[s as usize]);
            assert!(prob(&hi) >= prob(&lo) - 1e-12);
        }
    }
}

#[test]
fn below_threshold_phat_is_below_inverse_gamma() {
    for q in [1.0, 1.5, 2.0, 3.0, 5.0] {
        for gamma in [1.2, 1.5, 2.0, 3.0, 4.5] {
            let pu = p_u(q, gamma).unwrap();
            for i in 1..=20 {
                let p = pu * i as f64 / 21.0;
                let phat = RcParams::new(p, q).unwrap().phat();
                assert!(phat < 1.0 / gamma, "q={q} γ={gamma} p={p}");
            }
        }
    }
}

/// Below `p_u`, `g(x) ≤ x^{1/γ − ξ}` on the grid for some `ξ > 0`.
#[test]
fn g_has_room_below_threshold() {
    let xs: Vec<f64> = (1..=400).map(|i| 1.0 + 10f64.powf(-6.0 + 12.0 * i as f64 / 400.0)).collect();
    for q in [1.0, 2.0, 3.0] {
        for gamma in [1.5, 2.0, 3.0] {
            let pu = p_u(q, gamma).unwrap();
            for frac in [0.5, 0.9, 0.99] {
                let params = RcParams::new(frac * pu, q).unwrap();
                let xi = xs
                    .iter()
                    .map(|&x| 1.0 / gamma - g_func(x, &params).unwrap().ln() / x.ln())
                    .fold(f64::INFINITY, f64::min);
                assert!(xi > 0.0, "q={q} γ={gamma} frac={frac}: ξ={xi}");
            }
        }
    }
}

#[test]
fn threshold_monotone_in_q_and_gamma() {
    let qs = [1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0];
    let gammas = [1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0];
    for &q in &qs {
        let row: Vec<f64> = gammas.iter().map(|&g| p_u(q, g).unwrap()).collect();
        assert!(row.windows(2).all(|w| w[1] <= w[0] + 1e-12), "q={q}: {row:?}");
    }
    for &g in &gammas {
        let col: Vec<f64> = qs.iter().map(|&q| p_u(q, g).unwrap()).collect();
        assert!(col.windows(2).all(|w| w[1] >= w[0] - 1e-12), "γ={g}: {col:?}");
    }
}

#[test]
fn galton_watson_volume_tail_decays() {
    let mut rng = from_seed(37);
    let trials = 10_000;
    let mut hits = [0usize; 11];
    for _ in 0..trials {
        let z = gw_generation_sizes(&Offspring::Poisson(1.5), 10, 1 << 12, &mut rng);
        for l in 4..=10 {
            hits[l] += usize::from(z[l] >= 1 << l);
        }
    }
    for l in 4..10 {
        let (a, b) = (hits[l] as f64 / trials as f64, hits[l + 1] as f64 / trials as f64);
        let sigma = ((a * (1.0 - a) + b * (1.0 - b)) / trials as f64).sqrt();
        assert!(b <= a + 2.0 * sigma, "ℓ={l}: {a} then {b}");
    }
    assert!(hits[10] < hits[4]);
}

#[test]
fn grand_coupling_never_crosses() {
    let tree = SeedTree::new(41);
    for s in 0..1000u64 {
        let mut rng = tree.stream("instance", s);
        let n = rng.random_range(2..=50);
        let g = sample_er_poisson_cloning(n, rng.random_range(1.0..4.0), rng.random()).unwrap();
        let bc = if s % 2 == 0 {
            BoundaryPartition::free(n)
        } else {
            BoundaryPartition::wired(n, &[0, n - 1]).unwrap()
        };
        let params = RcParams::new(rng.random_range(0.05..0.95), rng.random_range(1.0..5.0)).unwrap();
        let mut gc = GrandCoupling::extremes(&g, &bc, params, rng.random(), Backend::Auto).unwrap();
        let mut events = 0;
        while gc.step_before(20.0).is_some() && events < 20_000 {
            assert!(gc.is_ordered(), "instance {s} at t={}", gc.time());
            events += 1;
        }
    }
}

#[test]
fn trajectories_ignore_thread_placement() {
    let g = sample_er_poisson_cloning(300, 2.0, 5).unwrap();
    let params = RcParams::new(0.3, 2.0).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            use rayon::prelude::*;
            (0..8u64)
                .into_par_iter()
                .map(|seed| shatter_run(&g, params, 5.0, seed).unwrap().final_config)
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn potts_glauber_matches_exact_law() {
    let graphs = [MultiGraph::cycle(3), MultiGraph::star(3), MultiGraph::path(4)];
    let mut rng = from_seed(43);
    for g in &graphs {
        for (q, beta) in [(2u16, 0.7), (3, 1.1)] {
            let exact = exact_potts_distribution(g, beta, q).unwrap();
            let mut chain = PottsChain::new(g, beta, PottsConfiguration::constant(q, g.n(), 0).unwrap()).unwrap();
            chain.run(1000, &mut rng);
            let samples = 100_000;
            let mut counts = vec![0.0; exact.probs().len()];
            for _ in 0..samples {
                chain.run(4 * g.n() as u64, &mut rng);
                counts[chain.config().index()] += 1.0 / samples as f64;
            }
            let tv = total_variation(&counts, exact.probs());
            assert!(tv <= 0.02, "n={} q={q}: TV {tv}", g.n());
        }
    }
}

#[test]
fn fk_stationary_at_fractional_q() {
    let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
    let bc = BoundaryPartition::wired(4, &[0, 3]).unwrap();
    for p in [0.3, 0.7] {
        let params = RcParams::new(p, 1.5).unwrap();
        let exact = exact_rc_distribution(&g, &bc, &params).unwrap();
        let mut chain = FkChain::new(&g, &bc, params, &RcConfiguration::closed(4)).unwrap();
        chain.run_continuous(1000.0, 1);
        let samples = 50_000;
        let mut counts = vec![0.0; 16];
        for s in 0..samples {
            chain.run_continuous(5.0, 100 + s as u64);
            counts[chain.configuration().to_mask() as usize] += 1.0 / samples as f64;
        }
        assert!(total_variation(&counts, exact.probs()) <= 0.02);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rc_probabilities_sum_to_one(g in arb_graph(6, 10), p in 0.01f64..0.99, q in 0.2f64..6.0) {
        let d = exact_rc_distribution(&g, &BoundaryPartition::free(g.n()), &RcParams::new(p, q).unwrap()).unwrap();
        prop_assert!((d.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn cut_edge_iff_count_changes(g in arb_graph(8, 14), mask: u64, e_pick: usize) {
        prop_assume!(g.edge_count() > 0);
        let m = g.edge_count();
        let e = e_pick % m;
        let omega = RcConfiguration::from_mask(m, mask & ((1u64 << m) - 1));
        let bc = BoundaryPartition::free(g.n());
        let mut oracle = new_oracle(&g, &bc, &omega).unwrap();
        let cut = oracle.is_cut_edge(e).unwrap();
        let mut open = omega.clone();
        open.set(e, true);
        let mut closed = omega;
        closed.set(e, false);
        let c_open = new_oracle(&g, &bc, &open).unwrap().component_count();
        let c_closed = new_oracle(&g, &bc, &closed).unwrap().component_count();
        prop_assert_eq!(cut, c_open != c_closed);
    }

    #[test]
    fn sparse_check_monotone(g in arb_graph(10, 16), mask: u64, drop: u64, r in 0usize..3) {
        let m = g.edge_count();
        let full = (1u64 << m) - 1;
        let omega = RcConfiguration::from_mask(m, mask & full);
        let smaller = RcConfiguration::from_mask(m, mask & !drop & full);
        let big = kr_sparse_check(&g, &omega, 0, r);
        let small = kr_sparse_check(&g, &smaller, 0, r);
        prop_assert!(small.max_sparsity <= big.max_sparsity);
        for k in 0..6 {
            let ok_k = kr_sparse_check(&g, &omega, k, r).ok;
            let ok_next = kr_sparse_check(&g, &omega, k + 1, r).ok;
            prop_assert!(!ok_k || ok_next);
        }
    }

    #[test]
    fn influence_is_a_metric(a in arb_partition(5), b in arb_partition(5), p in 0.05f64..0.95) {
        let ball = MultiGraph::new(5, vec![(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let params = RcParams::new(p, 2.0).unwrap();
        let free = BoundaryPartition::free(5);
        let pairs = [
            (a.clone(), b.clone()),
            (b.clone(), a.clone()),
            (a.clone(), free.clone()),
            (free, b),
        ];
        let r = influence_decay_exact(&ball, 0, &pairs, &params).unwrap();
        prop_assert!((r.tvs[0] - r.tvs[1]).abs() <= 1e-12);
        prop_assert!(r.tvs[0] <= r.tvs[2] + r.tvs[3] + 1e-12);
    }
}
