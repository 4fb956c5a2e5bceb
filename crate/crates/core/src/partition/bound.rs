use serde::{Deserialize, Serialize};

use crate::graph::{bandwidth_of_labeling, Graph, Labeling};

use super::{minpart_objective, PartitionMatrix, PartitionSpec};

/// Margin a floating-point lower bound on `minPart` must clear before it is
/// read as `minPart > 0`.
pub const DEFAULT_SAFETY: f64 = 1e-4;

/// Tie-breaking slack used when rounding `bdw > v` to an integer.
pub const STRICT_EPS: f64 = 1e-9;

/// Smallest integer strictly greater than `v`, with `v` nudged down by
/// [`STRICT_EPS`] so that round-off just above an integer does not gain a
/// spurious unit.
pub fn strict_lower_bound(v: f64) -> i64 {
    (v - STRICT_EPS).floor() as i64 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// Evidence attached to a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A lower bound on `minPart(m, r)` from a semidefinite relaxation.
    Sdp {
        spec: PartitionSpec,
        model: String,
        minpart_lower_bound: f64,
        safety: f64,
    },
    /// A partition with no long edges (1-based block numbers per vertex).
    Partition { spec: PartitionSpec, blocks: Vec<usize> },
    /// A labeling (1-based label per vertex) achieving the bandwidth value.
    Labeling { labels: Vec<usize> },
    /// The Laplacian eigenvalue ratio `n * lambda_2 / lambda_n`.
    Spectral { value: f64 },
}

/// Serialized as `{kind, value, safe, certificate}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: usize,
    pub safe: bool,
    pub certificate: Certificate,
}

impl BoundReport {
    /// Upper bound given by an explicit labeling.
    pub fn from_labeling(g: &Graph, phi: &Labeling) -> Self {
        BoundReport {
            kind: BoundKind::Upper,
            value: bandwidth_of_labeling(g, phi),
            safe: true,
            certificate: Certificate::Labeling {
                labels: phi.labels().iter().map(|l| l + 1).collect(),
            },
        }
    }

    pub fn from_spectral(value: f64, bound: usize) -> Self {
        BoundReport {
            kind: BoundKind::Lower,
            value: bound,
            safe: true,
            certificate: Certificate::Spectral { value },
        }
    }
}

/// Reads a lower bound on `minPart(m, r)` as a bandwidth bound: when
/// `minpart_lb > safety`, `bdw >= theorem1_threshold + 1`.
///
/// `certified` marks whether `minpart_lb` is a rigorous bound (a verified
/// dual certificate) rather than a raw solver objective.
pub fn infer_bandwidth_bound(
    spec: &PartitionSpec,
    minpart_lb: f64,
    safety: f64,
    certified: bool,
    model: &str,
) -> Option<BoundReport> {
    (minpart_lb > safety).then(|| BoundReport {
        kind: BoundKind::Lower,
        value: spec.theorem1_threshold() + 1,
        safe: certified,
        certificate: Certificate::Sdp {
            spec: spec.clone(),
            model: model.to_string(),
            minpart_lower_bound: minpart_lb,
            safety,
        },
    })
}

/// An exhibited partition with no long edges proves
/// `bdw <= theorem2_threshold - 1`.
pub fn upper_bound_from_partition(g: &Graph, spec: &PartitionSpec, x: &PartitionMatrix) -> Option<BoundReport> {
    if !x.matches(spec) || minpart_objective(g, x, spec.r()) != 0 {
        return None;
    }
    let value = spec.theorem2_threshold() - 1;
    debug_assert!(bandwidth_of_labeling(g, &x.block_order_labeling()) <= value);
    Some(BoundReport {
        kind: BoundKind::Upper,
        value,
        safe: true,
        certificate: Certificate::Partition {
            spec: spec.clone(),
            blocks: x.blocks().iter().map(|b| b + 1).collect(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::basic_partition;

    #[test]
    fn strictness_convention() {
        assert_eq!(strict_lower_bound(8.0), 8);
        assert_eq!(strict_lower_bound(8.0 + 1e-12), 8);
        assert_eq!(strict_lower_bound(8.3), 9);
        assert_eq!(strict_lower_bound(7.999), 8);
        assert_eq!(strict_lower_bound(0.0), 0);
    }

    #[test]
    fn inference_from_positive_bounds() {
        let t7 = PartitionSpec::new(vec![16, 8, 8, 17], 1).unwrap();
        let report = infer_bandwidth_bound(&t7, 1.23, DEFAULT_SAFETY, true, "slater").unwrap();
        assert_eq!((report.kind, report.value, report.safe), (BoundKind::Lower, 9, true));
        assert!(infer_bandwidth_bound(&t7, 0.0, DEFAULT_SAFETY, true, "slater").is_none());
        assert!(infer_bandwidth_bound(&t7, 5e-5, DEFAULT_SAFETY, true, "slater").is_none());

        let h5 = PartitionSpec::new(vec![7, 9, 9, 7], 1).unwrap();
        assert_eq!(infer_bandwidth_bound(&h5, 0.99, DEFAULT_SAFETY, false, "full").unwrap().value, 10);
    }

    #[test]
    fn zero_partition_gives_upper_bound() {
        let g = Graph::path(6).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2], 1).unwrap();
        let report = upper_bound_from_partition(&g, &spec, &basic_partition(&spec)).unwrap();
        assert_eq!((report.kind, report.value), (BoundKind::Upper, 3));
        let cycle = Graph::cycle(6).unwrap();
        assert!(upper_bound_from_partition(&cycle, &spec, &basic_partition(&spec)).is_none());
    }

    #[test]
    fn report_json_fields() {
        let g = Graph::path(3).unwrap();
        let r = BoundReport::from_labeling(&g, &Labeling::identity(3));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "upper");
        assert_eq!(v["value"], 1);
        assert_eq!(v["safe"], true);
        assert_eq!(v["certificate"]["type"], "labeling");
    }
}
