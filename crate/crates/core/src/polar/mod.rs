//! Polar source coding for reconciliation: Alice publishes the
//! high-entropy transform bits of her string and a CRC; Bob recovers the
//! rest by CRC-aided list decoding.

mod code;
mod scl;

pub use code::{
    construct_reliability_order, encode_public_message, estimate_conditional_entropies,
    polar_transform, read_order, write_order, PolarCode,
};
pub use scl::{scl_decode, scl_decode_llr, FinalPath, SclConfig, SclOutput};

/// Exact check-node combination `2 atanh(tanh(a/2) tanh(b/2))`, in a form
/// that stays finite for large inputs.
#[inline]
pub(crate) fn boxplus(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs()) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}
