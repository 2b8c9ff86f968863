//! Numerical differential geometry of the real Jacobi group.
//!
//! The crate realizes the Heisenberg group, SL(2,R) and their semidirect
//! product inside 4x4 symplectic matrices and machine-checks the geometry
//! built on top of them: invariant coframes and frames, the four-parameter
//! family of invariant metrics, Killing fields, geodesic vectors, natural
//! reductivity, the contact/Sasaki structure on SL(2,R) and the partial
//! Cayley / fiber-change transform web. Every closed formula is paired with
//! an independent numerical route (jets, series, integrators) and the
//! verification suites in [`report`] compare the two.

pub mod cx;
pub mod error;
pub mod frame;
pub mod geodesic;
pub mod gmat;
pub mod group;
pub mod contact;
pub mod corpus;
pub mod jet;
pub mod lie;
pub mod metric;
pub mod report;
pub mod sample;
pub mod space;

pub mod transform;

pub use error::{Error, Result};
