use std::fs;
use std::path::Path as FsPath;

use gibbspath::zoo::{lattice_fit_fast, lattice_graph, LatticeLayout, Parallelism};
use gibbspath::{Dag, DagDocument, EdgeWeights, LatticeKind, LatticeSpec, Path, PathDistribution};

use crate::CliError;

/// A graph read from disk: either a DAG document or a lattice weight grid.
pub struct Loaded {
    pub dag: Dag,
    pub weights: EdgeWeights,
    pub lattice: Option<(LatticeSpec, LatticeLayout)>,
}

impl Loaded {
    pub fn fit(&self, alpha: f64) -> Result<PathDistribution, CliError> {
        let dist = match &self.lattice {
            Some((spec, _)) => lattice_fit_fast(spec, alpha, Parallelism::Serial)?,
            None => PathDistribution::fit(self.dag.clone(), self.weights.clone(), alpha)?,
        };
        Ok(dist)
    }

    /// 1-based node id, or `row:col` for lattice cells.
    pub fn node_label(&self, v: usize) -> String {
        match &self.lattice {
            Some((_, layout)) => {
                let (i, j) = layout.cell(v);
                format!("{}:{}", i + 1, j + 1)
            }
            None => (v + 1).to_string(),
        }
    }

    pub fn node_json(&self, v: usize) -> serde_json::Value {
        match &self.lattice {
            Some((_, layout)) => {
                let (i, j) = layout.cell(v);
                serde_json::json!([i + 1, j + 1])
            }
            None => serde_json::json!(v + 1),
        }
    }

    pub fn path_label(&self, y: &Path) -> String {
        let parts: Vec<String> = y.nodes().iter().map(|&v| self.node_label(v)).collect();
        parts.join("-")
    }

    pub fn path_json(&self, y: &Path) -> serde_json::Value {
        y.nodes().iter().map(|&v| self.node_json(v)).collect()
    }
}

/// `ROWSxCOLS`.
pub fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
    let r = r.trim().parse().map_err(|_| format!("bad row count in {s:?}"))?;
    let c = c.trim().parse().map_err(|_| format!("bad column count in {s:?}"))?;
    Ok((r, c))
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load(graph: &FsPath, lattice: Option<(usize, usize)>, kind: LatticeKind) -> Result<Loaded, CliError> {
    match lattice {
        None => {
            let doc = DagDocument::from_json(&read(graph)?)
                .map_err(|e| CliError::Parse(format!("{}: {e}", graph.display())))?;
            let (dag, weights) = doc.to_parts()?;
            Ok(Loaded {
                dag,
                weights,
                lattice: None,
            })
        }
        Some((rows, cols)) => {
            let grid = read_grid(graph, rows, cols)?;
            from_spec(LatticeSpec::new(kind, rows, cols, grid)?)
        }
    }
}

pub fn from_spec(spec: LatticeSpec) -> Result<Loaded, CliError> {
    let (dag, weights) = lattice_graph(&spec)?;
    let layout = LatticeLayout::new(&spec);
    Ok(Loaded {
        dag,
        weights,
        lattice: Some((spec, layout)),
    })
}

/// Weight grid from `row,col,value` records (1-based, every cell exactly
/// once). A leading header line is skipped.
pub fn read_grid(path: &FsPath, rows: usize, cols: usize) -> Result<Vec<f64>, CliError> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut grid = vec![None; rows * cols];
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        if line == 0 && record.get(0).is_some_and(|f| f.parse::<usize>().is_err()) {
            continue;
        }
        let bad = |what: &str| CliError::Parse(format!("{}: record {}: {what}", path.display(), line + 1));
        if record.len() != 3 {
            return Err(bad("expected row,col,value"));
        }
        let i: usize = record[0].parse().map_err(|_| bad("bad row"))?;
        let j: usize = record[1].parse().map_err(|_| bad("bad column"))?;
        let w: f64 = record[2].parse().map_err(|_| bad("bad value"))?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(gibbspath::Error::ShapeMismatch(format!("cell ({i}, {j}) outside {rows}x{cols}")).into());
        }
        let slot = &mut grid[(i - 1) * cols + (j - 1)];
        if slot.is_some() {
            return Err(gibbspath::Error::ShapeMismatch(format!("cell ({i}, {j}) given twice")).into());
        }
        *slot = Some(w);
    }
    grid.iter()
        .enumerate()
        .map(|(k, w)| {
            w.ok_or_else(|| {
                gibbspath::Error::ShapeMismatch(format!("cell ({}, {}) missing", k / cols + 1, k % cols + 1)).into()
            })
        })
        .collect()
}
