//! Multi-indices, their text grammar, duality, and the enumerators the
//! reductions need.

mod enumerate;
mod multi_index;

pub use enumerate::{
    compositions, multiset_permutations, set_partitions, Composition, Compositions,
    MultisetPermutations, SetPartition, SetPartitions, MAX_ENUM_SIZE,
};
pub use multi_index::{dual_index, parse_index, HurwitzIndex, MultiIndex, Sign};
