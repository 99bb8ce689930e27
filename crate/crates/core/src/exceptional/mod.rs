//! The exceptional Lie superalgebra `cvect(0|3)_*` inside `vect(4|3)`.
//!
//! Elements are realized either as vector fields on the standard `(4|3)` chart
//! `(u1, u2, u3, y | ξ1, ξ2, ξ3)` or as glued pairs `(f, g)` of generating functions
//! on the periplectic `(3|3)` chart, meaning `i₁(f) + i₂(g)`.
//!
//! Odd derivatives are left derivatives. Iterated odd derivatives such as
//! `∂²f/∂ξ_j∂ξ_k` and `D³_ξ` compose as written: the rightmost partial acts first.

mod dictionary;
mod embed;
mod membership;
mod pair;
mod table;

pub use dictionary::{euler_field, g0_basis, g_minus1_basis, named_fields, simplicity_witness, BasisDictionary};
pub use embed::{a_field, alpha_field, i1_field, i2_field, lift, realize, to_periplectic};
pub use membership::{membership, Equation, MembershipReport, Variant};
pub use pair::{canonicalize, decompose, decompose_by_solve, phi_auto, regrade, sle_degree_basis, GluedPair};
pub use table::{bracket_pair, mixed_bracket};
