//! Prime-power finite fields and the affine planes built over them.

mod field;
mod plane;

pub use field::{build_field, factor_prime_power, FieldTables, PrimePower, MAX_FIELD_ORDER};
pub use plane::{build_affine_plane, validate_affine_plane, AffinePlane, PlaneViolation};

/// Convenience: the affine plane of order `q`, for any supported prime power.
pub fn affine_plane_of_order(q: u64) -> crate::Result<AffinePlane> {
    let pp = factor_prime_power(q)?;
    let field = build_field(pp)?;
    Ok(build_affine_plane(&field))
}
