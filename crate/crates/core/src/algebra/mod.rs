//! Exact arithmetic: finite fields, polynomials, factorization, series.

pub mod factor;
pub mod field;
pub mod poly;
pub mod series;

pub use factor::{
    compress_to_minimal_subfield, embed, join_fields, lift_poly, poly_roots, poly_roots_seeded,
    splitting_field, splitting_field_capped, DEFAULT_EXT_CAP,
};
pub use field::{field_make, is_prime, Ctx, FieldCtx, FieldElement};
pub use poly::{conjugate_y_poly, poly_resultant, poly_resultant_x, BiPoly, UniPoly};
