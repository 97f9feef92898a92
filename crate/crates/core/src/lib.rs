//! Exact computations around stability of projective point configurations.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`], [`linalg`], [`geometry`] and [`projective`]: exact rational
//!   arithmetic, fraction-free rank, point configurations, spans and
//!   projective equivalence.
//! * [`gitstab`]: the span criterion for GIT (semi)stability of ordered point
//!   sets under the diagonal `PGL(r)` action, with an exhaustive oracle.
//! * [`cohsys`]: alpha-slopes, virtual critical values and the dictionary
//!   between point configurations and coherent subsystems of type `(s, d, s)`.
//! * [`gale`]: Gale transform (association) and self-association of six
//!   points on a conic.
//! * [`modhyp`]: symmetric models of the Segre cubic and the Igusa quartic,
//!   their singular loci, the `15_3` incidence and the polar duality.
//! * [`random`]: seeded generators of test configurations.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod cohsys;
pub mod error;
pub mod gale;
pub mod geometry;
pub mod gitstab;
pub mod linalg;
pub mod modhyp;
pub mod projective;
pub mod random;
pub mod scalar;

pub use cohsys::{CriticalValueSet, EquivalenceReport, SystemType};
pub use error::{Error, Result};
pub use gale::GaleData;
pub use geometry::{LinearSubspace, PointConfiguration, ProjectivePoint};
pub use gitstab::{StabilityClass, StabilityVerdict, Witness};
pub use modhyp::{AmbientPoint, IncidenceStructure, SymmetricHypersurfaceModel};
pub use projective::ProjectiveTransform;
pub use scalar::Scalar;
