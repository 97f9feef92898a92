//! The Segre cubic and the Igusa quartic as `S_6`-symmetric hypersurfaces in
//! the hyperplane `x_1 + ... + x_6 = 0` of `P^5`.
//!
//! * Segre cubic: `sum x_i^3 = 0`, ten nodes at the permutations of
//!   `(1,1,1,-1,-1,-1)`, one per split of six labels into two triples.
//! * Igusa quartic: `(sum x_i^2)^2 - 4 sum x_i^4 = 0`, singular along fifteen
//!   lines (one per perfect matching of six labels) meeting in fifteen points
//!   (one per pair), forming a `15_3` configuration.
//!
//! The two are projectively dual; [`duality`] checks this on sampled rational
//! points using the polar map.

mod combinatorics;
pub mod duality;
mod models;
pub mod poly;

pub use combinatorics::{
    geometric_incidence, igusa_lines, igusa_points, incidence_15_3, matching_label, pair_label, pair_point, pairs,
    perfect_matchings, splits_3_3,
    IgusaLine, IncidenceStructure, Matching, Pair, Split,
};
pub use duality::{
    duality_check, extra_singular_points, sample_segre_points, segre_plane_containing, DualityReport,
};
pub use models::{
    igusa_from_pencil, igusa_quartic, node_hessian_rank, polar_map, segre_cubic, segre_nodes,
    singular_lines_check, verify_singular_point, AmbientPoint, SymmetricHypersurfaceModel,
};

/// Number of homogeneous coordinates of the ambient `P^5`.
pub const COORDS: usize = 6;
