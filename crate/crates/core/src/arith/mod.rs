//! Exact arithmetic: rationals, dense univariate polynomials, reduced
//! rational functions, and bivariate polynomials in `(x, y)`.

mod bivar;
pub(crate) mod dense;
pub mod field;
pub(crate) mod linalg;
mod ratfunc;
mod roots;
mod unipoly;

pub use bivar::{poly_resultant, poly_resultant_univariate, squarefree_part, BivarPoly};
pub(crate) use bivar::{from_ratfunc_coeffs, to_ratfunc_coeffs, write_combination};
pub(crate) use field::int_gcd;
pub use field::{int, rat, rational_nth_root, Field};
pub use ratfunc::RatFunc;
pub use roots::poly_integer_roots;
pub use unipoly::{poly_divrem, poly_gcd, UniPoly, Var};
pub(crate) use unipoly::write_terms;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomials in different variables ({0} and {1})")]
    VariableMismatch(Var, Var),
    #[error("division is not exact")]
    Inexact,
}
