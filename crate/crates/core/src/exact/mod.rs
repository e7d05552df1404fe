//! Exact value rings: rationals, sparse Laurent polynomials in `t`, and
//! rational functions in `t`.

pub mod laurent;
pub mod ratfunc;
pub mod rational;

pub use laurent::LaurentPolynomial;
pub use ratfunc::RationalFunction;
pub use rational::{parse_rational, rat, ratio, to_exact_string, Rational};
