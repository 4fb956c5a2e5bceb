use bandwidth_core::admm::{certify_lower_bound, solve, AdmmParams};
use bandwidth_core::graph::{bandwidth_of_labeling, spectral_bandwidth_bound, Graph, Labeling};
use bandwidth_core::partition::{minpart_objective, BoundKind, BoundReport, Certificate, PartitionMatrix};
use bandwidth_core::registry::relaxations;
use bandwidth_core::sdp::ModelOptions;
use bandwidth_core::{Error, Result};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub kind: BoundKind,
    pub value: usize,
    pub valid: bool,
    pub detail: String,
}

/// Collects every object shaped like a [`BoundReport`] in `value`.
fn collect(value: &serde_json::Value, out: &mut Vec<BoundReport>) {
    match value {
        serde_json::Value::Array(items) => items.iter().for_each(|v| collect(v, out)),
        serde_json::Value::Object(map) => {
            if map.contains_key("kind") && map.contains_key("certificate") {
                if let Ok(report) = serde_json::from_value(value.clone()) {
                    out.push(report);
                    return;
                }
            }
            map.values().for_each(|v| collect(v, out));
        }
        _ => {}
    }
}

pub fn check_all(g: &Graph, value: &serde_json::Value) -> Result<Vec<Check>> {
    let mut reports = Vec::new();
    collect(value, &mut reports);
    if reports.is_empty() {
        return Err(Error::InvalidParameter("no bound reports found".into()));
    }
    reports.iter().map(|r| check(g, r)).collect()
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| Error::InvalidParameter("certificate entries are 1-based".into())))
        .collect()
}

fn check(g: &Graph, report: &BoundReport) -> Result<Check> {
    let (valid, detail) = match (&report.certificate, report.kind) {
        (Certificate::Labeling { labels }, BoundKind::Upper) => match Labeling::new(zero_based(labels)?) {
            Ok(phi) if phi.len() == g.n() => {
                let width = bandwidth_of_labeling(g, &phi);
                (width <= report.value, format!("labeling has bandwidth {width}"))
            }
            _ => (false, "not a labeling of this graph".into()),
        },
        (Certificate::Partition { spec, blocks }, BoundKind::Upper) => {
            match PartitionMatrix::new(spec.k(), zero_based(blocks)?) {
                Ok(x) if x.n() == g.n() && x.matches(spec) => {
                    let long = minpart_objective(g, &x, spec.r());
                    let implied = spec.theorem2_threshold() - 1;
                    (long == 0 && implied <= report.value, format!("{long} long edges, implies bdw <= {implied}"))
                }
                _ => (false, "partition does not match the block sizes".into()),
            }
        }
        (Certificate::Spectral { .. }, BoundKind::Lower) => {
            let bound = spectral_bandwidth_bound(g)?;
            (report.value <= bound, format!("spectral bound recomputed as {bound}"))
        }
        (Certificate::Sdp { spec, model, safety, .. }, BoundKind::Lower) => {
            spec.check_n(g.n())?;
            let problem = relaxations().get(model)?.build(g, spec, &ModelOptions::default())?;
            let sol = solve(&problem, &AdmmParams::default())?;
            let lb = certify_lower_bound(&problem, &sol)?;
            let implied = spec.theorem1_threshold() + 1;
            (
                lb > *safety && report.value <= implied,
                format!("re-solved certified minPart bound {lb:.6}, implies bdw >= {implied}"),
            )
        }
        _ => (false, "certificate does not support this bound direction".into()),
    };
    Ok(Check { kind: report.kind, value: report.value, valid, detail })
}
