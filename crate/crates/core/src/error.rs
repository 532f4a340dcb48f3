use thiserror::Error;

use crate::lattices::LatticeTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("{0} is not an element of the root system")]
    NotInRootSystem(String),
    #[error("{sub:?} is not a sublattice of {sup:?}")]
    InvalidLatticePair { sub: LatticeTag, sup: LatticeTag },
    #[error("basis vectors do not span distinct complex lines")]
    DegenerateBasis,
    #[error("map has a nonzero translation part")]
    NotLinear,
    #[error("not a reflection of the affine group: {0}")]
    NotGroupReflection(String),
    #[error("vertex {0} does not have a complete star inside the window")]
    BoundaryVertex(String),
    #[error("{0} is not a vertex of the complex")]
    UnknownVertex(String),
    #[error("window too small: orbit counts {small:?} at radius_sq {radius_sq} differ from {large:?} one step larger")]
    WindowTooSmall {
        radius_sq: String,
        small: (usize, usize, usize),
        large: (usize, usize, usize),
    },
    #[error("quotient has {0} vertex orbits, expected one")]
    MultipleVertexOrbits(usize),
    #[error("edge {0} is reversed by a group element, so its orbit has no orientation")]
    EdgeInversion(String),
    #[error("integer {0} does not fit in a 64-bit JSON number")]
    IntegerOverflow(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
