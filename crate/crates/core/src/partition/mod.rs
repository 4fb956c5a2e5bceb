//! Vertex partitions with prescribed block sizes and the bandwidth bounds
//! they certify.
//!
//! For block sizes `m` and radius `r`, `minPart(m, r)` is the fewest edges
//! that join blocks more than `r` apart. A positive value proves
//! `bdw > theorem1_threshold`; an exhibited partition with value zero proves
//! `bdw < theorem2_threshold`.

mod bound;
mod brute;
mod mask;
mod matrix;
mod spec;

pub use bound::{
    infer_bandwidth_bound, strict_lower_bound, upper_bound_from_partition, BoundKind, BoundReport, Certificate,
    DEFAULT_SAFETY, STRICT_EPS,
};
pub use brute::{brute_force_minpart, multinomial_estimate, DEFAULT_ENUMERATION_BUDGET};
pub use mask::{band_mask, BandMask};
pub use matrix::{basic_partition, minpart_objective, minpart_objective_dense, PartitionMatrix};
pub use spec::{
    scheme_alternating, scheme_equal_blocks, scheme_literature, AlternatingScheme, EqualBlocksScheme,
    LiteratureScheme, PartitionScheme, PartitionSpec,
};
