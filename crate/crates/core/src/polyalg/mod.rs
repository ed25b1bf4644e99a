//! Exact arithmetic kernel: Laurent polynomials, reduced rational functions,
//! matrix polynomials and truncated matrix power series.

mod dense;
mod laurent;
mod matpoly;
mod ratfun;
mod series;

pub use laurent::{Coeff, IntLaurentPoly, Laurent, RatLaurentPoly};
pub use matpoly::{int_matmul, int_transpose, MatPoly};
pub use ratfun::RatFun;
pub use series::{invert_as_series, multiply_truncated, rational_kernel, MatSeries};

/// Reduce `numer / denom` to lowest terms.
pub fn reduce(numer: &IntLaurentPoly, denom: &IntLaurentPoly) -> crate::Result<RatFun> {
    RatFun::from_int(numer, denom)
}

pub(crate) use dense::{rat_divrem as rat_divrem_pub, rat_gcd as rat_gcd_pub};
