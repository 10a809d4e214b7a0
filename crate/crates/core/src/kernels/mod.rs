//! Special-function primitives shared by the summation and partition code.

mod bernoulli;
mod erfc;
mod grating;
mod hermite;
mod zeta;

pub use bernoulli::{bernoulli_number, MAX_BERNOULLI_INDEX};
pub use erfc::{erf_real, erfc_real, faddeeva, scaled_erfc_complex};
pub use grating::{grating_kernel, periodic_bernoulli};
pub use hermite::{
    big_g, check_envelope, check_envelope_scaled, envelope, envelope_g, exp_neg_sq, gamma_half,
    hermite, hermite_gaussian, hermite_gaussian_sup, hermite_gaussian_with_max, hermite_zeros,
    EnvelopeCheck, HermiteEnvelope, MAX_HERMITE_DEGREE,
};
pub use zeta::{tail, tail_sum, zeta, zeta_tail, TailCoefficient};
