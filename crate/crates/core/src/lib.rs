//! Exact computations for the complex euclidean reflection group `G̃4`
//! acting on the quaternions with the complex structure `H_ω`.
//!
//! Every coordinate is an exact rational; nothing in the crate uses
//! floating point except the lens-diagram renderer.

pub mod arrangement;
pub mod complexes;
pub mod error;
pub mod groups;
pub mod hquat;
pub mod isometry;
pub mod lattices;
pub mod linalg;
pub mod presentations;
pub mod verify;

pub use error::{Error, Result};
pub use hquat::{herm, proj_c, ComplexScalar, Quat, Rational, ZetaPower};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/group.md")]
    mod group {}
    #[doc = include_str!("../../../book/src/arrangement.md")]
    mod arrangement {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/lenses.md")]
    mod lenses {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
