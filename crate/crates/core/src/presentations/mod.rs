//! Quotient complexes, presentations read off them, coset enumeration and
//! abelianisation.

pub mod abelian;
pub mod quotient;
pub mod todd_coxeter;
pub mod words;

pub use abelian::{abelianization, AbelianInvariants};
pub use quotient::{extract_presentation, quotient, stability_radius_sq, EdgeOrbit, QuotientComplex, QuotientSpace, TriangleOrbit};
pub use todd_coxeter::{todd_coxeter, CosetTable, TcOutcome};
pub use words::{equivalent_up_to_symmetry, same_relators, Presentation, Word};

/// `⟨a,b,c,d | abd, bcd, cad⟩`, the braid group of `G4`.
pub fn braid_presentation() -> Presentation {
    Presentation::parse_with_generators(&["a", "b", "c", "d"], "abd,bcd,cad").expect("well formed")
}

/// `⟨a,b,c,d | abd, bcd, cad, cba⟩`, the binary tetrahedral group.
pub fn binary_tetrahedral_presentation() -> Presentation {
    Presentation::parse_with_generators(&["a", "b", "c", "d"], "abd,bcd,cad,cba").expect("well formed")
}
