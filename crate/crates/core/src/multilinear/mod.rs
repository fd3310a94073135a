//! Exact and floating-point multilinear algebra.

mod binomial;
mod matrix;
mod scalar;

pub use binomial::{
    band_det_bruteforce, band_det_formula, compare_band, compare_rhombus, ext_binomial,
    rhombus_det_bruteforce, rhombus_det_formula, ClosedFormCheck,
};
pub use matrix::{det_rows, rank_rational, row_norm_product, wedge_coeff, Matrix};
pub use scalar::{format_f64, Field, Scalar, ScalarMode, FLOAT_ZERO_RTOL};
