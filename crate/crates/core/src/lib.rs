//! Computation of Nash sequences (multiplicities, Hilbert-Samuel functions,
//! diagrams of initial exponents) of polynomial-defined germs along truncated
//! arcs via iterated quadratic transforms, together with arc-space metric
//! utilities and a symbolic Grothendieck-ring engine with a finite-field
//! census as independent oracle.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals or
//! prime-field residues, never floats.

pub mod algebra;
pub mod arcspace;
pub mod error;
pub mod motivic;
pub mod nash;
pub mod staircase;
pub mod standard_basis;

pub use algebra::{Arc, ExponentVector, FieldDesc, FieldElement, Polynomial};
pub use error::{Error, Result};
pub use staircase::{HilbertData, Staircase};
pub use standard_basis::StandardBasis;
