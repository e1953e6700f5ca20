//! Exact rationals, the generators B(i,j), E+(i,j), E-(i,j) of sp(2n), and
//! the enveloping algebra with PBW normal forms.

mod gen;
mod normal;
mod rat;
mod text;
mod uea;

pub use gen::{Block, Gen, GenKind, GenOrder};
pub use normal::{bracket, pbw_normal_form, LieTable, Strategy};
pub use rat::{fmt_rat, parse_rat, rat, ratq, Rat};
pub use uea::{commutator, iota_involution, multiply, theta, Monomial, UeaElement};
