//! Fast checks of the library against exact enumeration.

use std::fmt::Write as _;

use rand::Rng;

use super::{CliError, Outputs, Suite};
use crate::connectivity::{Backend, ConnectivityOracle};
use crate::diagnostics::exact_conductance;
use crate::graphs::MultiGraph;
use crate::rc::{
    es_pushforward, exact_potts_distribution, exact_rc_distribution, partition_distance,
    BoundaryPartition, RcConfiguration, RcParams,
};
use crate::rng::from_seed;
use crate::thresholds::{p_u, tree_phi, tree_point_to_point, TreeSpec};

type Check = (&'static str, fn() -> Result<String, String>);

const SMALL_ORACLES: &[Check] = &[
    ("threshold-closed-forms", threshold_closed_forms),
    ("threshold-upper-bound", threshold_upper_bound),
    ("tree-recursions", tree_recursions),
    ("rc-normalization", rc_normalization),
    ("fk-kernel-stationary", fk_kernel_stationary),
    ("edwards-sokal-exact", edwards_sokal_exact),
    ("boundary-perturbation", boundary_perturbation),
    ("connectivity-backends", connectivity_backends),
    ("star-conductance", star_conductance),
];

pub fn run(suite: Suite) -> Result<Outputs, CliError> {
    let checks = match suite {
        Suite::SmallOracles => SMALL_ORACLES,
    };
    let mut csv = String::from("check,passed,detail\n");
    let mut summary = String::new();
    let mut failed = Vec::new();
    for (name, check) in checks {
        let (ok, detail) = match check() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed.push(*name);
        }
        let _ = writeln!(csv, "{name},{},\"{}\"", u8::from(ok), detail.replace('"', "'"));
        let _ = writeln!(summary, "{:<4} {name}: {detail}", if ok { "ok" } else { "FAIL" });
    }
    let mut out = Outputs::default();
    out.add("validate.csv", csv);
    out.summary = summary;
    if !failed.is_empty() {
        out.failure = Some(format!("failed checks: {}", failed.join(", ")));
    }
    Ok(out)
}

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn params(p: f64, q: f64) -> RcParams {
    RcParams::new(p, q).expect("valid parameters")
}

fn threshold_closed_forms() -> Result<String, String> {
    let a = p_u(1.0, 2.0).map_err(|e| e.to_string())?;
    let b = p_u(2.0, 2.0).map_err(|e| e.to_string())?;
    let err = (a - 0.5).abs().max((b - 2.0 / 3.0).abs());
    ensure(err <= 1e-8, format!("p_u(1,2)={a:.10} p_u(2,2)={b:.10}"))
}

fn threshold_upper_bound() -> Result<String, String> {
    let mut worst = f64::NEG_INFINITY;
    for q in [1.0, 1.5, 2.0, 3.0, 5.0] {
        for gamma in [1.2, 2.0, 3.0, 6.0] {
            let pu = p_u(q, gamma).map_err(|e| e.to_string())?;
            worst = worst.max(pu - q / (q + gamma - 1.0));
        }
    }
    ensure(worst <= 1e-12, format!("max p_u − q/(q+γ−1) = {worst:.3e}"))
}

fn tree_recursions() -> Result<String, String> {
    let mut rng = from_seed(101);
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let t = TreeSpec::random(rng.random_range(1..=10), &mut rng);
        let r = params(rng.random_range(0.05..0.95), rng.random_range(1.0..4.0));
        let g = t.to_graph();
        let d = exact_rc_distribution(&g, &t.wired_boundary(), &r).map_err(|e| e.to_string())?;
        let phi = d.set_connectivity(&g, t.root(), t.boundary());
        let point = t
            .boundary()
            .iter()
            .map(|&u| d.pair_connectivity(&g, t.root(), u))
            .sum::<f64>()
            / t.boundary().len().max(1) as f64;
        worst = worst
            .max((tree_phi(&t, &r) - phi).abs())
            .max((tree_point_to_point(&t, &r) - point).abs());
    }
    ensure(worst <= 1e-10, format!("40 trees, max error {worst:.2e}"))
}

fn rc_normalization() -> Result<String, String> {
    let g = MultiGraph::complete(4);
    let mut worst: f64 = 0.0;
    for q in [1.0, 2.0, 3.5] {
        let d = exact_rc_distribution(&g, &BoundaryPartition::free(4), &params(0.3, q))
            .map_err(|e| e.to_string())?;
        worst = worst.max((d.probs().iter().sum::<f64>() - 1.0).abs());
        if q == 1.0 {
            for m in d.edge_marginals() {
                worst = worst.max((m - 0.3).abs());
            }
        }
    }
    ensure(worst <= 1e-12, format!("K4: max deviation {worst:.2e}"))
}

/// The single-edge heat-bath kernel (open with `p̂` at cut edges, `p`
/// elsewhere) leaves the enumerated measure invariant.
fn fk_kernel_stationary() -> Result<String, String> {
    let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).expect("valid graph");
    let bc = BoundaryPartition::wired(4, &[0, 3]).expect("valid partition");
    let m = g.edge_count();
    let mut worst: f64 = 0.0;
    for (p, q) in [(0.3, 2.0), (0.7, 3.0), (0.5, 0.5)] {
        let r = params(p, q);
        let pi = exact_rc_distribution(&g, &bc, &r).map_err(|e| e.to_string())?;
        let mut next = vec![0.0; 1 << m];
        for mask in 0..1u64 << m {
            let omega = RcConfiguration::from_mask(m, mask);
            let mut oracle =
                ConnectivityOracle::with_backend(&g, &bc, &omega, Backend::Naive).map_err(|e| e.to_string())?;
            for e in 0..m {
                let open = if oracle.is_cut_edge(e).map_err(|e| e.to_string())? {
                    r.phat()
                } else {
                    r.p()
                };
                let w = pi.probs()[mask as usize] / m as f64;
                next[(mask | 1 << e) as usize] += w * open;
                next[(mask & !(1 << e)) as usize] += w * (1.0 - open);
            }
        }
        for (a, b) in next.iter().zip(pi.probs()) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-12, format!("max |πP − π| {worst:.2e}"))
}

fn edwards_sokal_exact() -> Result<String, String> {
    let graphs = [
        MultiGraph::path(4),
        MultiGraph::cycle(4),
        MultiGraph::star(3),
        MultiGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2)]).expect("valid graph"),
    ];
    let mut worst: f64 = 0.0;
    for g in &graphs {
        for q in [2u16, 3] {
            let beta = 0.9;
            let rc = exact_rc_distribution(g, &BoundaryPartition::free(g.n()), &RcParams::from_beta(beta, q as f64).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let pushed = es_pushforward(g, &rc, q).map_err(|e| e.to_string())?;
            let potts = exact_potts_distribution(g, beta, q).map_err(|e| e.to_string())?;
            worst = worst.max(crate::stats::total_variation(&pushed, potts.probs()));
        }
    }
    ensure(worst <= 1e-10, format!("max TV {worst:.2e}"))
}

fn boundary_perturbation() -> Result<String, String> {
    let mut rng = from_seed(103);
    let mut violations = 0;
    for _ in 0..20 {
        let n = rng.random_range(2..=5);
        let edges = (0..rng.random_range(1..=6))
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let g = MultiGraph::new(n, edges).map_err(|e| e.to_string())?;
        let labels = |rng: &mut crate::rng::StreamRng| -> Vec<usize> {
            (0..n).map(|_| rng.random_range(0..n)).collect()
        };
        let a = BoundaryPartition::from_labels(&labels(&mut rng));
        let b = BoundaryPartition::from_labels(&labels(&mut rng));
        let q = rng.random_range(1.0..4.0);
        let r = params(rng.random_range(0.1..0.9), q);
        let bound = 2.0 * partition_distance(&a, &b).map_err(|e| e.to_string())? as f64 * q.ln();
        let da = exact_rc_distribution(&g, &a, &r).map_err(|e| e.to_string())?;
        let db = exact_rc_distribution(&g, &b, &r).map_err(|e| e.to_string())?;
        for (x, y) in da.probs().iter().zip(db.probs()) {
            if (x.ln() - y.ln()).abs() > bound + 1e-9 {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, format!("{violations} violations over 20 instances"))
}

fn connectivity_backends() -> Result<String, String> {
    let mut rng = from_seed(107);
    let mut mismatches = 0;
    for _ in 0..10 {
        let n = rng.random_range(5..60);
        let edges = (0..rng.random_range(n..3 * n))
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let g = MultiGraph::new(n, edges).map_err(|e| e.to_string())?;
        let bc = BoundaryPartition::wired(n, &[0, n - 1]).map_err(|e| e.to_string())?;
        let start = RcConfiguration::closed(g.edge_count());
        let mut fast = ConnectivityOracle::with_backend(&g, &bc, &start, Backend::Dynamic)
            .map_err(|e| e.to_string())?;
        let mut slow = ConnectivityOracle::with_backend(&g, &bc, &start, Backend::Naive)
            .map_err(|e| e.to_string())?;
        for _ in 0..500 {
            let e = rng.random_range(0..g.edge_count());
            let open = rng.random_bool(0.5);
            fast.set_edge(e, open).map_err(|e| e.to_string())?;
            slow.set_edge(e, open).map_err(|e| e.to_string())?;
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            mismatches += usize::from(fast.connected(u, v) != slow.connected(u, v));
            mismatches += usize::from(fast.component_count() != slow.component_count());
            let f = rng.random_range(0..g.edge_count());
            mismatches += usize::from(
                fast.is_cut_edge(f).map_err(|e| e.to_string())?
                    != slow.is_cut_edge(f).map_err(|e| e.to_string())?,
            );
        }
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches over 5000 updates"))
}

fn star_conductance() -> Result<String, String> {
    let c = exact_conductance(&MultiGraph::star(4), 1.0, 2, 0, 2).map_err(|e| e.to_string())?;
    ensure(
        c.phi > 0.0 && c.phi <= 1.0,
        format!("K(1,4), β=1: μ(A)={:.4} Φ(A)={:.4}", c.mu_a, c.phi),
    )
}
