//! Recognition of solid torus cores and Hopf links in generalized
//! triangulations, built on exact integer linear algebra and normal
//! surface enumeration.
//!
//! The crate exposes three layers:
//!
//! * combinatorial triangulations with face pairings, skeleta and
//!   barycentric-style subdivision ([`triangulation`]),
//! * homology of the induced cell complex, used to read off winding
//!   numbers of knots ([`homology`]),
//! * normal surface theory: matching systems, vertex surface
//!   enumeration and the certified recognition pipeline ([`normal`],
//!   [`cone`], [`recognition`]).

pub mod cone;
pub mod cover;
pub mod exterior;
pub mod fixtures;
pub mod handle;
pub mod homology;
pub mod manifold;
pub mod normal;
pub mod recognition;
pub mod surface;
pub mod triangulation;

pub(crate) mod unionfind;

pub use homology::matrix::{IntMatrix, SnfDecomposition};
pub use recognition::{
    choose_alpha, decide_core, recognize_hopf, verify_certificate, Certificate, Decision,
    HopfDecision, RecognitionBudget, RecognitionError, Verdict,
};
pub use triangulation::loops::KnotLoop;
pub use triangulation::subdivide::{subdivide, SubdivisionMap};
pub use triangulation::{Gluing, Skeleton, Triangulation, ValidationError};
