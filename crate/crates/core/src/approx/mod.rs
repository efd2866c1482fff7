//! Approximation operators: the Riesz operator, the kernel `h` and quasi-interpolation.

pub mod kernel;
pub mod quadrature;
pub mod quasi;
pub mod riesz;

pub use kernel::{
    build_kernel, jackson_constant, jackson_constant_proof, kernel_moment, kernel_symbol,
    kernel_symbol_quadrature, sinc_power_integral_exact, ApproxKernel, QuadratureSettings,
};
pub use quadrature::GaussLegendre;
pub use quasi::{jackson_check, q_apply, q_coefficients, q_symbol, JacksonReport};
pub use riesz::{
    riesz_apply, riesz_identity_check, riesz_symbol, symbol_residual, trigamma, RieszConfig,
    RieszIdentityReport, DEFAULT_TRUNCATION,
};
