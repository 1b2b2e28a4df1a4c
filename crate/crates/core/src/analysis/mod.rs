//! Exact minimum distances, nearest-codeword search and seeded Monte-Carlo
//! experiments over the Haar measure.

mod mc;
mod mindist;
mod nearest;

pub use mc::{
    arbitrate_covering, ball_measure_mc, covering_radius_mc, distortion_mc, kissing_mc,
    quantization_mc, BallCdfRow, Convention, CoveringArbitration, CoveringEstimate,
    DistortionResult, KissingSample, MCConfig, BLOCK_SAMPLES,
};
pub use mindist::{
    min_distance_exact, min_distance_numeric, MinDistance, DEFAULT_PAIR_BUDGET,
    MAX_PAIRWISE_ELEMENTS,
};
pub use nearest::{nearest_codeword, FlatCodebook};
