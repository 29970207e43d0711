use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use super::svg::{self, Axes, Mark, Series};
use super::*;
use crate::connectivity::Backend;
use crate::diagnostics::{
    bottleneck_escape, cluster_sizes, influence_profile, k_sparse_partitions, kr_sparse_check,
    max_influence_over, mixing_scaling, shatter_stats, BottleneckConfig, BottleneckReport,
    GraphFamily,
};
use crate::dynamics::{sw_step, trace_to_csv, FkChain, PottsChain};
use crate::graphs::{
    effective_offspring, sample_configuration_model, sample_er_poisson_cloning, sample_simple_graph,
    DegreeSequence, MultiGraph,
};
use crate::rc::{potts_energy, BoundaryPartition, PottsConfiguration, RcConfiguration, RcParams};
use crate::rng::SeedTree;
use crate::stats::linear_fit;
use crate::thresholds::{
    beta_u, decay_fit, p_u, regular_tree_phi, regular_tree_point_to_point, threshold_point,
};

pub fn exec(command: &Command, seed: u64) -> Result<Outputs, CliError> {
    let tree = SeedTree::new(seed);
    match command {
        Command::Threshold(a) => threshold(a),
        Command::GenGraph(a) => gen_graph(a, &tree),
        Command::SampleRc(a) => sample_rc(a, &tree),
        Command::SamplePotts(a) => sample_potts(a, &tree),
        Command::Couple(a) => couple(a, seed),
        Command::Shatter(a) => shatter(a, &tree),
        Command::TreeDecay(a) => tree_decay(a),
        Command::Influence(a) => influence(a),
        Command::PottsBottleneck(a) => potts_bottleneck(a, &tree),
        Command::Validate(a) => validate::run(a.suite),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Resolves `--p` / `--p-frac` against `p_u(q, gamma)`.
fn resolve_params(rc: &RcArgs, gamma: Option<f64>) -> Result<RcParams, CliError> {
    let p = match (rc.p, rc.p_frac) {
        (Some(p), _) => p,
        (None, frac) => {
            let gamma = gamma.ok_or_else(|| usage("--p-frac needs a family with a defined γ; pass --p"))?;
            frac.unwrap_or(0.5) * p_u(rc.q, gamma)?
        }
    };
    Ok(RcParams::new(p, rc.q)?)
}

fn build_graph(a: &GraphArgs, tree: &SeedTree) -> Result<MultiGraph, CliError> {
    let seed = tree.child_seed("graph", 0);
    let from_sequence = |dn: DegreeSequence| -> Result<MultiGraph, CliError> {
        Ok(if a.simple {
            sample_simple_graph(&dn, seed, a.max_attempts)?
        } else {
            sample_configuration_model(&dn, seed)?
        })
    };
    let input = || {
        a.input
            .as_deref()
            .ok_or_else(|| usage("this --graph kind needs --input FILE"))
    };
    match a.graph {
        GraphKind::Er => Ok(sample_er_poisson_cloning(a.n, a.gamma, seed)?),
        GraphKind::Regular => from_sequence(DegreeSequence::regular(a.n, a.degree)?),
        GraphKind::Degrees => from_sequence(DegreeSequence::read(input()?)?),
        GraphKind::Edges => Ok(MultiGraph::read_edge_list(input()?)?),
    }
}

/// `γ` of the graph's effective offspring law, or the family's nominal value.
fn graph_gamma(a: &GraphArgs, g: &MultiGraph) -> Option<f64> {
    match a.graph {
        GraphKind::Er => Some(a.gamma),
        GraphKind::Regular => Some(a.degree as f64 - 1.0),
        GraphKind::Degrees | GraphKind::Edges => {
            let dn = DegreeSequence::new(g.degrees()).ok()?;
            effective_offspring(&dn).ok().map(|o| o.mean())
        }
    }
}

fn family(a: &FamilyArgs) -> GraphFamily {
    match a.family {
        FamilyKind::Er => GraphFamily::ErdosRenyi { gamma: a.gamma },
        FamilyKind::Regular => GraphFamily::Regular { degree: a.degree },
        FamilyKind::SingleEdge => GraphFamily::SingleEdge,
    }
}

fn size_histogram(sizes: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &s in sizes {
        *h.entry(s).or_insert(0) += 1;
    }
    h
}

fn histogram_csv(header: &str, h: &BTreeMap<usize, usize>) -> String {
    let mut out = format!("{header}\n");
    for (k, v) in h {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

fn bars(h: &BTreeMap<usize, usize>) -> Vec<(f64, f64)> {
    h.iter().map(|(&k, &v)| (k as f64, v as f64)).collect()
}

fn threshold(a: &ThresholdArgs) -> Result<Outputs, CliError> {
    let mut csv = String::from("q,gamma,p_u,beta_u,phat_at_pu\n");
    let mut points = Vec::new();
    for &q in &a.q {
        for &gamma in &a.gamma {
            let t = threshold_point(q, gamma)?;
            let _ = writeln!(
                csv,
                "{q},{gamma},{:.6},{:.6},{:.6}",
                t.p_u, t.beta_u, t.phat_at_pu
            );
            points.push(t);
        }
    }
    let mut out = Outputs::default();
    out.add("threshold.csv", csv.clone());
    out.json("threshold.json", &points)?;
    out.summary = csv;
    Ok(out)
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    max_degree: usize,
    simple: bool,
    self_loops: usize,
    offspring_mean: Option<f64>,
}

fn gen_graph(a: &GenGraphArgs, tree: &SeedTree) -> Result<Outputs, CliError> {
    let g = build_graph(&a.graph, tree)?;
    let summary = GraphSummary {
        n: g.n(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        simple: g.is_simple(),
        self_loops: (0..g.edge_count()).filter(|&e| g.is_self_loop(e)).count(),
        offspring_mean: graph_gamma(&a.graph, &g),
    };
    let hist = size_histogram(&g.degrees());
    let csv = histogram_csv("degree,count", &hist);
    let mut out = Outputs::default();
    out.add("graph.edges", g.to_edge_list());
    out.add("degrees.csv", csv.clone());
    let axes = Axes {
        title: format!("degree histogram, n = {}", g.n()),
        x_label: "degree".into(),
        y_label: "vertices".into(),
        ..Axes::default()
    };
    out.add("degrees.svg", svg::histogram(&axes, &bars(&hist), &csv));
    out.json("summary.json", &summary)?;
    out.summary = format!(
        "n={} edges={} max_degree={} simple={}\n",
        summary.n, summary.edges, summary.max_degree, summary.simple
    );
    Ok(out)
}

fn sample_rc(a: &SampleRcArgs, tree: &SeedTree) -> Result<Outputs, CliError> {
    let g = build_graph(&a.graph, tree)?;
    let params = resolve_params(&a.rc, graph_gamma(&a.graph, &g))?;
    if a.burn_in < 0.0 || a.spacing < 0.0 {
        return Err(usage("--burn-in and --spacing must be non-negative"));
    }
    let bc = if a.wired.is_empty() {
        BoundaryPartition::free(g.n())
    } else {
        BoundaryPartition::wired(g.n(), &a.wired)?
    };
    let start = match a.start {
        Start::Closed => RcConfiguration::closed(g.edge_count()),
        Start::Open => RcConfiguration::all_open(g.edge_count()),
    };
    let backend = match a.backend {
        BackendArg::Auto => Backend::Auto,
        BackendArg::Naive => Backend::Naive,
        BackendArg::Dynamic => Backend::Dynamic,
    };
    let mut chain = FkChain::with_backend(&g, &bc, params, &start, backend)?;
    let mut out = Outputs::default();
    if a.trace {
        let trace = chain.run_continuous_traced(a.burn_in, tree.child_seed("burn-in", 0));
        out.add("trace.csv", trace_to_csv(&trace));
    } else {
        chain.run_continuous(a.burn_in, tree.child_seed("burn-in", 0));
    }
    let mut csv = String::from("sample,time,open_edges,components,max_cluster\n");
    for s in 0..a.samples {
        chain.run_continuous(a.spacing, tree.child_seed("spacing", s as u64));
        let omega = chain.configuration();
        let largest = cluster_sizes(&g, &omega).first().copied().unwrap_or(0);
        let _ = writeln!(
            csv,
            "{s},{},{},{},{largest}",
            chain.time(),
            omega.open_count(),
            chain.oracle().component_count()
        );
    }
    let hist = size_histogram(&cluster_sizes(&g, &chain.configuration()));
    let clusters = histogram_csv("size,count", &hist);
    let axes = Axes {
        title: format!("cluster sizes at t = {:.1}", chain.time()),
        x_label: "cluster size".into(),
        y_label: "clusters".into(),
        log_y: true,
        ..Axes::default()
    };
    out.add("samples.csv", csv);
    out.add("clusters.svg", svg::histogram(&axes, &bars(&hist), &clusters));
    out.add("clusters.csv", clusters);
    out.summary = format!(
        "p={:.6} q={} p̂={:.6}; {} samples on n={} m={}\n",
        params.p(),
        params.q(),
        params.phat(),
        a.samples,
        g.n(),
        g.edge_count()
    );
    Ok(out)
}

fn resolve_beta(
    beta: Option<f64>,
    frac: Option<f64>,
    default_frac: f64,
    q: u16,
    gamma: Option<f64>,
) -> Result<f64, CliError> {
    match (beta, frac) {
        (Some(b), _) => Ok(b),
        (None, f) => {
            let gamma = gamma.ok_or_else(|| usage("--beta-frac needs a graph with a defined γ; pass --beta"))?;
            Ok(f.unwrap_or(default_frac) * beta_u(q as f64, gamma)?)
        }
    }
}

fn sample_potts(a: &SamplePottsArgs, tree: &SeedTree) -> Result<Outputs, CliError> {
    let g = build_graph(&a.graph, tree)?;
    let beta = resolve_beta(a.beta, a.beta_frac, 0.5, a.q, graph_gamma(&a.graph, &g))?;
    if a.q < 2 {
        return Err(usage("--q must be at least 2"));
    }
    let mut rng = tree.stream("potts", 0);
    let spins = (0..g.n()).map(|_| rng.random_range(0..a.q)).collect();
    let start = PottsConfiguration::new(a.q, spins)?;
    let n = g.n() as u64;
    let mut csv = String::from("sample,energy,majority_fraction\n");
    let record = |s: usize, sigma: &PottsConfiguration, csv: &mut String| {
        let mut counts = vec![0usize; a.q as usize];
        for &x in sigma.spins() {
            counts[x as usize] += 1;
        }
        let major = counts.iter().max().copied().unwrap_or(0) as f64 / g.n().max(1) as f64;
        let _ = writeln!(csv, "{s},{},{major}", potts_energy(&g, sigma));
    };
    let last = match a.method {
        PottsMethod::Glauber => {
            let mut chain = PottsChain::new(&g, beta, start)?;
            chain.run(a.burn_in * n, &mut rng);
            for s in 0..a.samples {
                chain.run(a.spacing * n, &mut rng);
                record(s, chain.config(), &mut csv);
            }
            chain.config().clone()
        }
        PottsMethod::Sw => {
            let mut sigma = start;
            for _ in 0..a.burn_in {
                sw_step(&g, &mut sigma, beta, &mut rng);
            }
            for s in 0..a.samples {
                for _ in 0..a.spacing {
                    sw_step(&g, &mut sigma, beta, &mut rng);
                }
                record(s, &sigma, &mut csv);
            }
            sigma
        }
    };
    let mut spins = String::from("vertex,spin\n");
    for (v, x) in last.spins().iter().enumerate() {
        let _ = writeln!(spins, "{v},{x}");
    }
    let mut out = Outputs::default();
    out.add("samples.csv", csv);
    out.add("spins.csv", spins);
    out.summary = format!("β={beta:.6} q={}; {} samples on n={}\n", a.q, a.samples, g.n());
    Ok(out)
}

fn couple(a: &CoupleArgs, seed: u64) -> Result<Outputs, CliError> {
    let fam = family(&a.family);
    let params = resolve_params(&a.rc, fam.gamma())?;
    if a.ns.is_empty() {
        return Err(usage("--ns must list at least one size"));
    }
    let report = mixing_scaling(&a.ns, fam, params, a.seeds, a.t_max, seed)?;
    let csv = report.to_csv();
    let mut runs = String::from("n,seed,coupling_time,timed_out\n");
    for row in &report.rows {
        for (s, t) in row.times.iter().enumerate() {
            match t {
                Some(t) => {
                    let _ = writeln!(runs, "{},{s},{t},0", row.n);
                }
                None => {
                    let _ = writeln!(runs, "{},{s},{},1", row.n, a.t_max);
                }
            }
        }
    }
    let medians: Vec<(f64, f64)> = report
        .rows
        .iter()
        .filter_map(|r| Some((r.n as f64, r.median?)))
        .collect();
    let mut series = vec![Series::new("median", medians, Mark::Points)];
    if let Some(fit) = report.fit {
        let line = report
            .rows
            .iter()
            .map(|r| (r.n as f64, fit.intercept + fit.slope * (r.n as f64).ln()))
            .collect();
        series.push(Series::new(
            format!("fit {:.3}·ln n + {:.3}, R² {:.3}", fit.slope, fit.intercept, fit.r_squared),
            line,
            Mark::Line,
        ));
    }
    let axes = Axes {
        title: format!("coupling time, p = {:.4}, q = {}", params.p(), params.q()),
        x_label: "n (log scale)".into(),
        y_label: "median coupling time".into(),
        log_x: true,
        ..Axes::default()
    };
    let mut out = Outputs::default();
    out.add("coupling.svg", svg::plot(&axes, &series, &csv));
    out.add("coupling.csv", csv.clone());
    out.add("coupling_runs.csv", runs);
    out.json("coupling.json", &report)?;
    out.summary = csv;
    Ok(out)
}

fn shatter(a: &ShatterArgs, tree: &SeedTree) -> Result<Outputs, CliError> {
    let fam = family(&a.family);
    let params = resolve_params(&a.rc, fam.gamma())?;
    let g = fam.sample(a.n, tree.child_seed("graph", 0))?;
    let report = shatter_stats(&g, params, a.t, a.seeds, tree.child_seed("shatter", 0))?;
    let radius = a
        .radius
        .unwrap_or_else(|| (0.3 * (a.n.max(1) as f64).log2()).floor() as usize);
    let mut sparse = String::from("seed,max_sparsity,argmax,ok\n");
    let mut sparse_ok = 0;
    for s in &report.samples {
        let r = kr_sparse_check(&g, &s.final_config, a.k, radius);
        sparse_ok += usize::from(r.ok);
        let _ = writeln!(sparse, "{},{},{},{}", s.seed, r.max_sparsity, r.argmax, u8::from(r.ok));
    }
    let mut total = BTreeMap::new();
    for s in &report.samples {
        for &(size, count) in &s.histogram {
            *total.entry(size).or_insert(0) += count;
        }
    }
    let clusters = histogram_csv("size,count", &total);
    let axes = Axes {
        title: format!("cluster sizes over {} seeds, t = {}", a.seeds, a.t),
        x_label: "cluster size".into(),
        y_label: "clusters".into(),
        log_y: true,
        ..Axes::default()
    };
    let bound = (a.n as f64).sqrt();
    #[derive(Serialize)]
    struct Summary<'a> {
        report: &'a crate::diagnostics::ShatterReport,
        k: usize,
        radius: usize,
        sparse_ok: usize,
        max_cluster_at_most_sqrt_n: usize,
    }
    let mut out = Outputs::default();
    out.add("shatter.csv", report.to_csv());
    out.add("sparse.csv", sparse);
    out.add("clusters.svg", svg::histogram(&axes, &bars(&total), &clusters));
    out.add("clusters.csv", clusters);
    let small = report.count_max_at_most(bound);
    out.json(
        "shatter.json",
        &Summary {
            report: &report,
            k: a.k,
            radius,
            sparse_ok,
            max_cluster_at_most_sqrt_n: small,
        },
    )?;
    out.summary = format!(
        "max cluster ≤ √n in {small}/{}; ({},{radius})-sparse in {sparse_ok}/{}\n",
        a.seeds, a.k, a.seeds
    );
    Ok(out)
}

fn tree_decay(a: &TreeDecayArgs) -> Result<Outputs, CliError> {
    if a.branching < 1 || a.min_height > a.max_height {
        return Err(usage("need --branching ≥ 1 and --min-height ≤ --max-height"));
    }
    let gamma = (a.branching > 1).then_some(a.branching as f64);
    let params = resolve_params(&a.rc, gamma)?;
    let mut csv = String::from("h,phi,point_to_point\n");
    let mut phi = Vec::new();
    let mut point = Vec::new();
    for h in a.min_height..=a.max_height {
        let f = regular_tree_phi(a.branching, h, &params);
        let s = regular_tree_point_to_point(a.branching, h, &params);
        let _ = writeln!(csv, "{h},{f},{s}");
        phi.push((h, f));
        point.push((h, s));
    }
    #[derive(Serialize)]
    struct Fits {
        p: f64,
        q: f64,
        phat: f64,
        phi: Option<crate::thresholds::DecayFit>,
        point_to_point: Option<crate::thresholds::DecayFit>,
    }
    let fits = Fits {
        p: params.p(),
        q: params.q(),
        phat: params.phat(),
        phi: decay_fit(&phi).ok(),
        point_to_point: decay_fit(&point).ok(),
    };
    let to_f = |v: &[(usize, f64)]| v.iter().map(|&(h, y)| (h as f64, y)).collect::<Vec<_>>();
    let axes = Axes {
        title: format!("{}-ary tree, p = {:.4}, q = {}", a.branching, params.p(), params.q()),
        x_label: "height h".into(),
        y_label: "connection probability".into(),
        log_y: true,
        ..Axes::default()
    };
    let series = [
        Series::new("root to boundary", to_f(&phi), Mark::Line),
        Series::new("root to one leaf", to_f(&point), Mark::Line),
    ];
    let mut out = Outputs::default();
    out.add("tree_decay.svg", svg::plot(&axes, &series, &csv));
    out.add("tree_decay.csv", csv);
    out.json("tree_decay.json", &fits)?;
    out.summary = format!(
        "p̂={:.6} θ̂(phi)={} θ̂(point)={}\n",
        fits.phat,
        fits.phi.map_or("n/a".into(), |f| format!("{:.6}", f.theta)),
        fits.point_to_point.map_or("n/a".into(), |f| format!("{:.6}", f.theta)),
    );
    Ok(out)
}

fn influence(a: &InfluenceArgs) -> Result<Outputs, CliError> {
    if a.branching < 1 || a.max_radius < 1 {
        return Err(usage("need --branching ≥ 1 and --max-radius ≥ 1"));
    }
    let gamma = (a.branching > 1).then_some(a.branching as f64);
    let params = resolve_params(&a.rc, gamma)?;
    let mut csv = String::from("radius,edges,partitions,max_tv\n");
    let mut points = Vec::new();
    for radius in 1..=a.max_radius {
        let ball = MultiGraph::regular_tree(a.branching, radius);
        let leaves = a.branching.pow(radius as u32);
        let leaf_ids: Vec<usize> = (ball.n() - leaves..ball.n()).collect();
        let family = k_sparse_partitions(ball.n(), &leaf_ids, a.k);
        let (tv, _) = max_influence_over(&ball, 0, &family, &params)?;
        let _ = writeln!(csv, "{radius},{},{},{tv}", ball.edge_count(), family.len());
        points.push((radius, tv));
    }
    let profile = influence_profile(points.clone());
    let axes = Axes {
        title: format!("influence at the root, K = {}", a.k),
        x_label: "radius R".into(),
        y_label: "max TV on root edges".into(),
        log_y: true,
        ..Axes::default()
    };
    let series = [Series::new(
        "max over K-sparse pairs",
        points.iter().map(|&(r, t)| (r as f64, t)).collect(),
        Mark::Points,
    )];
    let mut out = Outputs::default();
    out.add("influence.svg", svg::plot(&axes, &series, &csv));
    out.add("influence.csv", csv.clone());
    out.json("influence.json", &profile)?;
    out.summary = csv;
    Ok(out)
}

/// Configuration model, simple, with vertex 0 of degree `d_star` and every
/// other vertex of degree `degree`.
fn planted_graph(n: usize, degree: usize, d_star: usize, seed: u64) -> Result<MultiGraph, CliError> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let mut degrees = vec![degree; n];
    degrees[0] = d_star;
    Ok(sample_simple_graph(&DegreeSequence::new(degrees)?, seed, 100_000)?)
}

fn potts_bottleneck(a: &PottsBottleneckArgs, tree: &SeedTree) -> Result<Outputs, CliError> {
    let gamma = a.gamma.unwrap_or(a.degree as f64 - 1.0);
    let beta = resolve_beta(a.beta, a.beta_frac, 0.8, a.q, Some(gamma))?;
    let mut reports: Vec<BottleneckReport> = Vec::new();
    for (i, &d) in a.d_star.iter().enumerate() {
        let g = planted_graph(a.n, a.degree, d, tree.child_seed("graph", i as u64))?;
        let mut cfg = BottleneckConfig::new(beta, a.q, 0, a.eps);
        cfg.seeds = a.seeds;
        cfg.step_cap = a.step_cap;
        cfg.burn_in = a.burn_in;
        cfg.master_seed = tree.child_seed("bottleneck", i as u64);
        reports.push(bottleneck_escape(&g, &cfg)?);
    }
    let mut csv = String::from("d_star,threshold,median_sweeps,censored,mean_steps\n");
    let mut escapes = String::from("d_star,seed,steps,sweeps,censored\n");
    let mut observed = Vec::new();
    let mut censored = Vec::new();
    let mut medians = Vec::new();
    for r in &reports {
        let fmt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.d_star,
            r.threshold,
            fmt(r.median_sweeps),
            r.censored(),
            fmt(r.mean_steps_uncensored())
        );
        for s in &r.samples {
            let _ = writeln!(
                escapes,
                "{},{},{},{},{}",
                r.d_star,
                s.seed,
                s.steps,
                s.sweeps,
                u8::from(s.censored)
            );
            let pt = (r.d_star as f64, s.sweeps);
            if s.censored {
                censored.push(pt);
            } else {
                observed.push(pt);
            }
        }
        if let Some(m) = r.median_sweeps {
            medians.push((r.d_star as f64, m));
        }
    }
    let fit = {
        let (xs, ys): (Vec<f64>, Vec<f64>) = medians.iter().map(|&(d, m)| (d, m.ln())).unzip();
        linear_fit(&xs, &ys)
    };
    let axes = Axes {
        title: format!("escape from the bottleneck set, β = {beta:.4}, ε = {}", a.eps),
        x_label: "degree of v⋆".into(),
        y_label: "sweeps to exit".into(),
        log_y: true,
        ..Axes::default()
    };
    let series = [
        Series::new("escape", observed, Mark::Points),
        Series::new("censored (lower bound)", censored, Mark::Hollow),
        Series::new("median", medians, Mark::Line),
    ];
    #[derive(Serialize)]
    struct Summary<'a> {
        beta: f64,
        gamma: f64,
        reports: &'a [BottleneckReport],
        log_median_fit: Option<crate::stats::LineFit>,
    }
    let mut out = Outputs::default();
    out.add("bottleneck.svg", svg::plot(&axes, &series, &csv));
    out.add("bottleneck.csv", csv.clone());
    out.add("escapes.csv", escapes);
    out.json(
        "bottleneck.json",
        &Summary {
            beta,
            gamma,
            reports: &reports,
            log_median_fit: fit,
        },
    )?;
    out.summary = csv;
    Ok(out)
}
