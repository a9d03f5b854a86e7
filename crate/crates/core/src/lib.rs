//! Exact numerical toolkit for curves on surfaces with known Neron-Severi data.
//!
//! Everything here works over arbitrary-precision integers and rationals:
//! intersection lattices ([`lattice`]), rational polyhedral cones and their
//! level slices ([`cone`]), the finite set of exceptional ample classes
//! ([`exc`]), Chern-character numerics of the rank-2 kernel sheaf
//! ([`sheaf`]), the search for destabilizing divisor classes ([`destab`]),
//! and certified gonality / arithmetic degree of irrationality intervals
//! ([`invariants`]).

pub mod cone;
pub mod dd;
pub mod destab;
mod error;
pub mod exc;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod num;
pub mod selftest;
pub mod sheaf;

pub use cone::{RationalCone, SliceMin, DEFAULT_MAX_RANK};
pub use destab::{CandidateSet, DestabilizerQuery, Verdict};
pub use error::{Error, Result};
pub use exc::ExcReport;
pub use invariants::{BoundCertificate, Provenance};
pub use lattice::{DivisorClass, Inertia, IntersectionLattice, SignatureReport};
pub use model::{CurveSpec, SurfaceModel};
pub use sheaf::ChernCharacter;
