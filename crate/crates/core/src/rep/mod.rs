//! Rational models of GL_n-irreducibles, the generalized Verma module N(k),
//! K-types, and the scalar ladder element.

mod irrep;
mod ladder;
mod verma;

pub use irrep::{weyl_dimension, GlIrrep, Tensor};
pub use ladder::{ladder_grade, scalar_ladder, Ladder};
pub use verma::{ktype_bound_check, VKey, VermaModule, VermaVector};
