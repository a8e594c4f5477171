use gibbspath::bench::{run_one, BenchKind, BenchSize};
use gibbspath::oracle::{empirical_pmf, exact_distribution, total_variation, DEFAULT_PATH_LIMIT};
use gibbspath::zoo::lattice_marginals;
use gibbspath::{optimal_path, Error, Path};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::input::{read_grid, Loaded};
use crate::{CliError, Format};

/// Rendered command output plus optional notes for stderr.
pub struct Report {
    pub body: String,
    pub notes: Vec<String>,
}

impl Report {
    fn new(body: String) -> Self {
        Report { body, notes: Vec::new() }
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json value serialises");
    s.push('\n');
    s
}

pub fn validate(g: &Loaded, format: Format) -> Report {
    let paths = g.dag.count_paths();
    let shown = if paths == u128::MAX {
        format!(">={paths}")
    } else {
        paths.to_string()
    };
    match format {
        Format::Csv => Report::new(format!(
            "valid: {} nodes, {} edges, {shown} paths\n",
            g.dag.node_count(),
            g.dag.edge_count()
        )),
        Format::Json => Report::new(json_text(json!({
            "valid": true,
            "nodes": g.dag.node_count(),
            "edges": g.dag.edge_count(),
            "paths": shown,
        }))),
    }
}

pub fn density(g: &Loaded, alpha: f64, counts: &[usize], seed: u64, format: Format) -> Result<Report, CliError> {
    let dist = g.fit(alpha)?;
    let table = exact_distribution(&g.dag, &g.weights, alpha, DEFAULT_PATH_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let runs: Vec<(usize, Vec<f64>, f64)> = counts
        .iter()
        .map(|&n| {
            let ys: Vec<Path> = (0..n).map(|_| dist.sample_path(&mut rng)).collect();
            let emp = empirical_pmf(&table, &ys);
            let tv = total_variation(&emp, &table.pmf);
            (n, emp, tv)
        })
        .collect();
    let report = match format {
        Format::Csv => {
            let (paths, pmf) = (&table.paths, &table.pmf);
            let rows = runs.iter().flat_map(|(n, emp, _)| {
                paths.iter().enumerate().map(move |(k, y)| {
                    vec![
                        (k + 1).to_string(),
                        g.path_label(y),
                        pmf[k].to_string(),
                        emp[k].to_string(),
                        n.to_string(),
                    ]
                })
            });
            let mut r = Report::new(csv_table(&["path_id", "nodes", "exact_p", "empirical_p", "n_samples"], rows));
            r.notes = runs.iter().map(|(n, _, tv)| format!("n_samples={n} tv={tv}")).collect();
            r
        }
        Format::Json => Report::new(json_text(json!({
            "alpha": alpha,
            "seed": seed,
            "paths": table.paths.iter().map(|y| g.path_json(y)).collect::<Vec<_>>(),
            "exact_p": table.pmf,
            "runs": runs.iter().map(|(n, emp, tv)| json!({"n_samples": n, "empirical_p": emp, "tv": tv})).collect::<Vec<_>>(),
        }))),
    };
    Ok(report)
}

pub fn sample(g: &Loaded, alpha: f64, n: usize, seed: u64, format: Format) -> Result<Report, CliError> {
    let dist = g.fit(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ys: Vec<Path> = (0..n).map(|_| dist.sample_path(&mut rng)).collect();
    Ok(match format {
        Format::Csv => Report::new(csv_table(
            &["sample_id", "nodes"],
            ys.iter().enumerate().map(|(k, y)| vec![(k + 1).to_string(), g.path_label(y)]),
        )),
        Format::Json => Report::new(json_text(json!({
            "alpha": alpha,
            "seed": seed,
            "samples": ys.iter().map(|y| g.path_json(y)).collect::<Vec<_>>(),
        }))),
    })
}

pub fn marginals(g: &Loaded, alpha: f64, format: Format) -> Result<Report, CliError> {
    let dist = g.fit(alpha)?;
    let omega = match &g.lattice {
        Some((spec, _)) => lattice_marginals(&dist, spec)?.omega,
        None => dist.edge_marginals().omega,
    };
    let edges = g.dag.edges();
    Ok(match format {
        Format::Csv => Report::new(csv_table(
            &["u", "v", "omega"],
            edges
                .iter()
                .zip(&omega)
                .map(|(&(u, v), o)| vec![g.node_label(u), g.node_label(v), o.to_string()]),
        )),
        Format::Json => Report::new(json_text(json!({
            "alpha": alpha,
            "edges": edges
                .iter()
                .zip(&omega)
                .map(|(&(u, v), o)| json!({"u": g.node_json(u), "v": g.node_json(v), "omega": o}))
                .collect::<Vec<_>>(),
        }))),
    })
}

pub fn kl(p: &Loaded, q: &Loaded, alpha: f64, format: Format) -> Result<Report, CliError> {
    let value = p.fit(alpha)?.kl_divergence(&q.fit(alpha)?)?;
    Ok(match format {
        Format::Csv => Report::new(format!("kl\n{value}\n")),
        Format::Json => Report::new(json_text(json!({ "alpha": alpha, "kl": value }))),
    })
}

/// Second weight grid for a lattice, on the first one's shape and kind.
pub fn load_like(first: &Loaded, other: &std::path::Path) -> Result<Loaded, CliError> {
    match &first.lattice {
        Some((spec, _)) => {
            let grid = read_grid(other, spec.rows(), spec.cols())?;
            let spec = gibbspath::LatticeSpec::new(spec.kind(), spec.rows(), spec.cols(), grid)?;
            crate::input::from_spec(spec)
        }
        None => crate::input::load(other, None, gibbspath::LatticeKind::Dtw),
    }
}

pub fn optimal(g: &Loaded, format: Format) -> Report {
    let (y, score) = optimal_path(&g.dag, &g.weights);
    match format {
        Format::Csv => Report::new(csv_table(&["nodes", "score"], [vec![g.path_label(&y), score.to_string()]])),
        Format::Json => Report::new(json_text(json!({ "nodes": g.path_json(&y), "score": score }))),
    }
}

pub fn default_sizes(kind: BenchKind) -> Vec<BenchSize> {
    match kind {
        BenchKind::Generic => [25_000, 50_000, 100_000, 200_000].map(BenchSize::Nodes).to_vec(),
        BenchKind::Lattice(gibbspath::LatticeKind::Dtw) => {
            [128, 256, 512, 1024].map(|c| BenchSize::Grid(128, c)).to_vec()
        }
        BenchKind::Lattice(gibbspath::LatticeKind::MonotonicAlignment) => {
            [512, 1024, 2048, 4096].map(|c| BenchSize::Grid(32, c)).to_vec()
        }
    }
}

pub fn bench(kind: BenchKind, sizes: &[BenchSize], repeats: usize, seed: u64, format: Format) -> Result<Report, Error> {
    let recs = sizes
        .iter()
        .map(|&s| run_one(kind, s, repeats, seed))
        .collect::<Result<Vec<_>, _>>()?;
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    Ok(match format {
        Format::Csv => Report::new(csv_table(
            &["kind", "size", "edges", "fit_ms", "sample_ms", "marginals_ms"],
            recs.iter().map(|r| {
                vec![
                    r.kind.name().to_string(),
                    r.size.to_string(),
                    r.edges.to_string(),
                    format!("{:.4}", ms(r.fit)),
                    format!("{:.4}", ms(r.sample)),
                    format!("{:.4}", ms(r.marginals)),
                ]
            }),
        )),
        Format::Json => Report::new(json_text(json!(recs
            .iter()
            .map(|r| json!({
                "kind": r.kind.name(),
                "size": r.size.to_string(),
                "edges": r.edges,
                "fit_ms": ms(r.fit),
                "sample_ms": ms(r.sample),
                "marginals_ms": ms(r.marginals),
            }))
            .collect::<Vec<_>>()))),
    })
}
