//! Exact symbolic computation in the enveloping algebra of sp(2n, C), its
//! highest weight modules, and formal nearly holomorphic Fourier expansions.

pub mod algebra;
pub mod center;
pub mod error;
pub mod linalg;
pub mod nh;
pub mod rep;
pub mod verify;
pub mod weights;

pub use algebra::{
    bracket, commutator, iota_involution, multiply, pbw_normal_form, Gen, GenKind, GenOrder,
    Monomial, Rat, Strategy, UeaElement,
};
pub use error::{Error, Result};
