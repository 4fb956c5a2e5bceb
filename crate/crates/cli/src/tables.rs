use std::path::{Path, PathBuf};

use bandwidth_core::graph::{
    bandwidth_of_labeling, make_hamming, make_torus, make_torus_ham, spectral_bandwidth_bound, Graph,
};
use bandwidth_core::heuristics::{bandwidth_density, sa_labeling};
use bandwidth_core::partition::{scheme_alternating, scheme_literature, PartitionSpec};
use bandwidth_core::{Error, Result};
use serde::Serialize;

use crate::pipeline::{run_spec, RunConfig, SpecReport};

pub const TABLE_IDS: [&str; 6] = ["T7", "T8910", "TH", "summary", "hamming", "literature"];

/// One instance of a partition table: a graph label and its specs.
pub struct Block {
    pub label: String,
    pub build: fn(usize) -> Result<Graph>,
    pub param: usize,
    pub specs: Vec<(Vec<usize>, usize)>,
}

fn torus_blocks(ks: &[usize]) -> Vec<Block> {
    ks.iter()
        .map(|&k| Block {
            label: format!("T{k}"),
            build: make_torus,
            param: k,
            specs: torus_specs(k).into_iter().map(|m| (m, 1)).collect(),
        })
        .collect()
}

fn torus_specs(k: usize) -> Vec<Vec<usize>> {
    match k {
        7 => vec![
            vec![16, 8, 8, 17],
            vec![15, 9, 9, 16],
            vec![11, 9, 9, 9, 11],
            vec![9, 10, 10, 10, 10],
            vec![6, 9, 9, 9, 9, 7],
            vec![4, 10, 10, 10, 10, 5],
        ],
        8 => vec![
            vec![23, 9, 9, 23],
            vec![22, 10, 10, 22],
            vec![17, 10, 10, 10, 17],
            vec![15, 11, 11, 11, 16],
            vec![12, 10, 10, 10, 10, 12],
            vec![10, 11, 11, 11, 11, 10],
        ],
        9 => vec![
            vec![31, 9, 9, 32],
            vec![30, 10, 10, 31],
            vec![25, 10, 10, 10, 26],
            vec![24, 11, 11, 11, 24],
            vec![20, 10, 10, 10, 10, 21],
            vec![18, 11, 11, 11, 11, 19],
        ],
        10 => vec![
            vec![41, 9, 9, 41],
            vec![40, 10, 10, 40],
            vec![32, 12, 12, 12, 32],
            vec![30, 13, 13, 13, 31],
            vec![24, 13, 13, 13, 13, 24],
            vec![22, 14, 14, 14, 14, 22],
        ],
        _ => Vec::new(),
    }
}

fn torus_ham_specs(k: usize) -> Vec<Vec<usize>> {
    match k {
        7 => vec![
            vec![14, 10, 10, 15],
            vec![13, 11, 11, 14],
            vec![8, 11, 11, 11, 8],
            vec![6, 12, 12, 12, 7],
            vec![2, 11, 11, 11, 11, 3],
        ],
        8 => vec![
            vec![21, 11, 11, 21],
            vec![20, 12, 12, 20],
            vec![14, 12, 12, 12, 14],
            vec![12, 13, 13, 13, 13],
            vec![8, 12, 12, 12, 12, 8],
            vec![6, 13, 13, 13, 13, 6],
        ],
        9 => vec![
            vec![28, 12, 12, 29],
            vec![27, 13, 13, 28],
            vec![21, 13, 13, 13, 21],
            vec![19, 14, 14, 14, 20],
            vec![14, 13, 13, 13, 13, 15],
            vec![12, 14, 14, 14, 14, 13],
        ],
        10 => vec![
            vec![37, 13, 13, 37],
            vec![36, 14, 14, 36],
            vec![29, 14, 14, 14, 29],
            vec![27, 15, 15, 15, 28],
            vec![22, 14, 14, 14, 14, 22],
            vec![20, 15, 15, 15, 15, 20],
        ],
        _ => Vec::new(),
    }
}

fn torus_ham_blocks(ks: &[usize]) -> Vec<Block> {
    ks.iter()
        .map(|&k| Block {
            label: format!("TH{k}"),
            build: make_torus_ham,
            param: k,
            specs: torus_ham_specs(k).into_iter().map(|m| (m, 1)).collect(),
        })
        .collect()
}

fn hypercube(d: usize) -> Result<Graph> {
    make_hamming(d, 2)
}

fn hamming_blocks() -> Vec<Block> {
    vec![
        Block {
            label: "H5".into(),
            build: hypercube,
            param: 5,
            specs: vec![(vec![6, 10, 10, 6], 1), (vec![7, 9, 9, 7], 1)],
        },
        Block {
            label: "H6".into(),
            build: hypercube,
            param: 6,
            specs: vec![
                (vec![15, 17, 17, 15], 1),
                (vec![15, 9, 8, 9, 8, 15], 2),
                (vec![14, 9, 9, 9, 9, 14], 2),
            ],
        },
        Block {
            label: "H7".into(),
            build: hypercube,
            param: 7,
            specs: vec![(vec![33, 31, 31, 33], 1), (vec![34, 30, 30, 34], 1), (vec![16, 32, 32, 32, 16], 1)],
        },
    ]
}

/// Partition-table blocks for a table id, filtered by `only` labels.
pub fn partition_blocks(table: &str, only: &[String]) -> Result<Vec<Block>> {
    let blocks = match table {
        "T7" => torus_blocks(&[7]),
        "T8910" => torus_blocks(&[8, 9, 10]),
        "TH" => torus_ham_blocks(&[7, 8, 9, 10]),
        "hamming" => hamming_blocks(),
        other => return Err(Error::InvalidParameter(format!("`{other}` is not a partition table"))),
    };
    Ok(filter(blocks, only))
}

fn filter(blocks: Vec<Block>, only: &[String]) -> Vec<Block> {
    if only.is_empty() {
        return blocks;
    }
    blocks
        .into_iter()
        .filter(|b| only.iter().any(|o| o.eq_ignore_ascii_case(&b.label)))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionRow {
    pub table: String,
    pub label: String,
    #[serde(flatten)]
    pub report: SpecReport,
}

pub fn run_partition_table(table: &str, only: &[String], config: &RunConfig) -> Result<Vec<PartitionRow>> {
    use rayon::prelude::*;
    let mut rows = Vec::new();
    for block in partition_blocks(table, only)? {
        let g = (block.build)(block.param)?;
        let specs: Vec<PartitionSpec> =
            block.specs.iter().map(|(m, r)| PartitionSpec::new(m.clone(), *r)).collect::<Result<_>>()?;
        let reports: Vec<SpecReport> = specs.par_iter().map(|s| run_spec(&g, s, config, None)).collect();
        rows.extend(reports.into_iter().map(|report| PartitionRow {
            table: table.to_string(),
            label: block.label.clone(),
            report,
        }));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub k: usize,
    pub n: usize,
    /// Best certified lower bound on `bdw(T_k)`.
    pub torus_geq: Option<usize>,
    /// Best certified lower bound on `bdw(TH_k)`.
    pub torus_ham_geq: Option<usize>,
    /// Bandwidth of the best labeling of `T_k` found.
    pub leq: usize,
    pub failures: usize,
}

pub fn run_summary(only: &[String], config: &RunConfig) -> Result<Vec<SummaryRow>> {
    let ks: Vec<usize> = (7..=10)
        .filter(|k| only.is_empty() || only.iter().any(|o| o.eq_ignore_ascii_case(&format!("T{k}"))))
        .collect();
    let mut rows = Vec::new();
    for k in ks {
        let mut failures = 0;
        let mut best = |blocks: Vec<Block>| -> Result<Option<usize>> {
            let mut geq = None;
            for row in run_blocks(blocks, config)? {
                failures += row.failed() as usize;
                geq = geq.max(row.bdw_geq());
            }
            Ok(geq)
        };
        let torus_geq = best(torus_blocks(&[k]))?;
        let torus_ham_geq = best(torus_ham_blocks(&[k]))?;
        let g = make_torus(k)?;
        let (phi, leq) = sa_labeling(&g, &config.anneal_for(g.n()))?;
        debug_assert_eq!(bandwidth_of_labeling(&g, &phi), leq);
        rows.push(SummaryRow { k, n: k * k, torus_geq, torus_ham_geq, leq, failures });
    }
    Ok(rows)
}

fn run_blocks(blocks: Vec<Block>, config: &RunConfig) -> Result<Vec<SpecReport>> {
    use rayon::prelude::*;
    let mut out = Vec::new();
    for block in blocks {
        let g = (block.build)(block.param)?;
        let specs: Vec<PartitionSpec> =
            block.specs.iter().map(|(m, r)| PartitionSpec::new(m.clone(), *r)).collect::<Result<_>>()?;
        out.extend(specs.par_iter().map(|s| run_spec(&g, s, config, None)).collect::<Vec<_>>());
    }
    Ok(out)
}

/// Instance names of the application-matrix table, as `(label, radius
/// used for 6-partitions)`.
pub const LITERATURE_NAMES: [(&str, usize); 15] = [
    ("DWT59", 1),
    ("DWT87", 1),
    ("NOS4", 1),
    ("ASH85", 1),
    ("CAN61", 1),
    ("CAN73", 1),
    ("CAN96", 1),
    ("GD97-b", 1),
    ("mesh1e1", 1),
    ("sphere2", 1),
    ("dolphins", 1),
    ("lesmis", 1),
    ("polbooks", 1),
    ("adjnoun", 2),
    ("football", 2),
];

fn normalize(name: &str) -> String {
    name.chars().filter(|c| c.is_ascii_alphanumeric()).flat_map(char::to_lowercase).collect()
}

/// Files matching the known instance names by stem, ignoring case and
/// punctuation (`dwt_59.mtx` matches `DWT59`). Unknown stems are kept under
/// their own name with `r = 1`.
pub fn literature_instances(files: &[PathBuf], dir: Option<&Path>) -> Result<(Vec<(String, usize, PathBuf)>, Vec<String>)> {
    let mut candidates: Vec<PathBuf> = files.to_vec();
    if let Some(dir) = dir {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "mtx" || e == "json"))
            .collect();
        entries.sort();
        candidates.extend(entries);
    }
    let mut found = Vec::new();
    for path in &candidates {
        if !path.exists() {
            return Err(Error::InvalidParameter(format!("missing instance file {}", path.display())));
        }
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let known = LITERATURE_NAMES.iter().find(|(n, _)| normalize(n) == normalize(&stem));
        let (label, r6) = known.map_or((stem.clone(), 1), |&(n, r)| (n.to_string(), r));
        found.push((label, r6, path.clone()));
    }
    let missing = if dir.is_some() {
        LITERATURE_NAMES
            .iter()
            .filter(|(n, _)| !found.iter().any(|(l, _, _)| l == n))
            .map(|(n, _)| n.to_string())
            .collect()
    } else {
        Vec::new()
    };
    Ok((found, missing))
}

#[derive(Debug, Clone, Serialize)]
pub struct LiteratureCell {
    pub k: usize,
    /// Largest certified bandwidth lower bound found for this `k`.
    pub bdw_geq: Option<usize>,
    pub spec: Option<PartitionSpec>,
    pub solves: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiteratureRow {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub leq: usize,
    pub density: Option<f64>,
    pub spectral_geq: usize,
    pub cells: Vec<LiteratureCell>,
    pub failures: usize,
}

/// Spec with Theorem-1 threshold `t` for `k` blocks and radius `r`, or
/// `None` when the blocks do not fit.
fn literature_spec(n: usize, k: usize, r: usize, t: usize) -> Option<PartitionSpec> {
    match r {
        1 => scheme_literature(n, k, t).ok(),
        _ => scheme_alternating(n, k, t.div_ceil(2), t / 2).ok(),
    }
}

/// Raises the threshold from just below the spectral bound while the
/// certified bound stays positive.
pub fn run_literature(
    name: &str,
    g: &Graph,
    r6: usize,
    ks: &[usize],
    config: &RunConfig,
) -> Result<LiteratureRow> {
    let (phi, leq) = sa_labeling(g, &config.anneal_for(g.n()))?;
    debug_assert_eq!(bandwidth_of_labeling(g, &phi), leq);
    let spectral_geq = spectral_bandwidth_bound(g)?;
    let density = bandwidth_density(g, leq).ok();
    let mut cells = Vec::new();
    let mut failures = 0;
    let mut floor = spectral_geq.saturating_sub(1).max(1);
    let mut config = config.clone();
    config.early_stop = true;
    for &k in ks {
        let r = if k == 6 { r6 } else { 1 };
        let mut cell = LiteratureCell { k, bdw_geq: None, spec: None, solves: 0 };
        let mut t = floor;
        while let Some(spec) = literature_spec(g.n(), k, r, t) {
            if spec.theorem1_threshold() + 1 > leq {
                break;
            }
            let report = run_spec(g, &spec, &config, None);
            cell.solves += 1;
            failures += report.failed() as usize;
            match report.bdw_geq() {
                Some(b) => {
                    cell.bdw_geq = Some(b);
                    cell.spec = Some(spec);
                    t += 1;
                }
                None => break,
            }
        }
        if let Some(b) = cell.bdw_geq {
            floor = floor.max(b.saturating_sub(1));
        }
        cells.push(cell);
    }
    Ok(LiteratureRow {
        name: name.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        leq,
        density,
        spectral_geq,
        cells,
        failures,
    })
}
