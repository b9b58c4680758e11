//! Set partitions, the partition coefficients `c` and `c*`, and the Bell and
//! Stirling machinery built on top of them.

mod bell;
mod multipoly;
mod partition;

pub use bell::{
    bell_complete, bell_number, bell_partial, partition_shape_count, partition_shapes,
    stirling_first_unsigned, stirling_second,
};
pub use multipoly::MultiPoly;
pub use partition::{
    coeff_c, coeff_c_star, enum_restricted_partitions, enum_restricted_partitions_limited,
    enum_set_partitions, enum_set_partitions_limited, prop1_decomposition, relabel_partition,
    DecompositionTerm, PartitionShape, SetPartition, SetPartitions, DEFAULT_MAX_GROUND,
};
