//! Text grammar and canonical printing.
//!
//! Polynomials are written with the chart's variable names (`u1`, `y`, `x1` …,
//! where `x_i` spells the odd `ξ_i`), rational literals, `+ - * / ^` and parentheses.
//! Fields add the derivation symbols `D<var>` (so `Du1` is `∂/∂u1`) and any named
//! fields supplied by the caller; a coefficient always stands to the left of its
//! derivation, e.g. `y*x1*Dx1 + (u1 - 1/2*y)*Dy`.

mod format;
mod parse;

pub use format::{field_record, format_field, format_pair, format_poly, format_poly_unicode, pair_record, poly_record};
pub use parse::{parse_field, parse_pair, parse_poly};
