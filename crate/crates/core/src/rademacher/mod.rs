//! Weight vectors and exact laws of their Rademacher sums.

mod distribution;
mod weights;

pub use distribution::{
    count_abs_within, exact_distribution, prob_abs_within, residual_distribution, second_moment,
    suffix_second_moment, SumDistribution, FULL_ENUMERATION_LIMIT, SPLIT_ENUMERATION_LIMIT,
};
pub use weights::{
    make_weight_vector, rationalize_on_sphere, WeightVector, INGEST_PRECISION, MAX_DENOMINATOR,
};
