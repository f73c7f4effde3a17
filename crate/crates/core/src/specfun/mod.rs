//! Special functions: Airy Ai/Ai', Bessel J_a of real order, their zeros,
//! and the gamma family.

pub(crate) mod airy;
pub(crate) mod bessel;
pub(crate) mod dd;
mod gamma;
mod zeros;

pub use airy::{airy_ai, airy_ai_prime};
pub use bessel::{bessel_j, bessel_j_prime};
pub use gamma::{digamma, gamma, log_gamma, trigamma};
pub use zeros::{airy_zero_guess, bessel_zero_guess, zeros, ZeroKind, ZeroTable};

