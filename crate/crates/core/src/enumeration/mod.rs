//! Exhaustive generation of lecture hall partitions and their relatives.

mod classes;
mod gseq;
mod lecture;

pub use classes::{alt_ratio_gf, anti_at_counts, class_counts, partitions_in, AltRatio, PartitionClass};
pub use gseq::{g_gf, g_stats, is_g_member, walk_g, GPartition};
pub use lecture::{
    count_by_last, count_last_at_most, enumerate_last, enumerate_truncated, enumerate_weight, is_member,
    members, multi_gf, stats, truncated_ambient, walk, weighted_gf, Bound, LHPartition, Stat, StatBundle,
    TruncMode,
};
