//! Symbolic Grothendieck-ring engine: rational functions in L over formal
//! class symbols, the closed-form motivic volume of the Brieskorn germs with
//! its level-i partial sums, finite-field specialization, and the
//! brute-force census of principal strata.

pub mod census;
pub mod expr;
pub mod lpoly;

pub use census::{brieskorn_germ, census, CensusResult};
pub use expr::{
    c_class, geometric_tail, l_minus_one, partial_sum, volume_closed_form, w_class, MotivicExpr,
    PointCounter, SymProduct, VolumeClosedForm,
};
pub use lpoly::{lpoly_gcd, LPoly, RatFunc};
