//! Special functions with complex parameters: log-gamma, Gauss and
//! generalized hypergeometric functions, Bessel and MacDonald functions of
//! imaginary order, Legendre functions of complex degree and order on and
//! off the cut, Wilson polynomials, confluent hypergeometric.

mod bessel;
mod gamma;
mod hyp1f1;
mod hyp2f1;
mod legendre;
mod pfq;
mod wilson;

pub use bessel::{
    bessel_j_imag_order, bessel_j_imag_order_scaled, bessel_j_int, bessel_j_sum_imag_order_scaled,
    macdonald_imag_order, macdonald_imag_order_scaled,
};
pub use gamma::{gamma, log_gamma, log_gamma_c, log_sin_pi};
pub use hyp1f1::hyp1f1;
pub use hyp2f1::{hyp2f1, hyp2f1_c, routes, Hyp2F1Params};
pub use legendre::{
    legendre_p_offcut, legendre_p_offcut_int_order, legendre_p_oncut, legendre_q_offcut,
    legendre_q_offcut_scaled,
    legendre_q_oncut, LegendreParams,
};
pub use pfq::{hyp_pfq_terminating, hyp_pfq_z1};
pub use wilson::{wilson_polynomial, WilsonParams};
