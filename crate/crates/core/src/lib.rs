//! Exact combinatorics behind Whittaker functions and Hecke eigen-identities
//! for `GL_n` over a function field.
//!
//! The crate computes Kostka–Foulkes polynomials through the charge
//! statistic, symmetric-group characters and Green polynomials, Hall
//! polynomials of finite modules over a discrete valuation ring, local
//! Whittaker trace functions built from Frobenius eigenvalues, and the
//! elementary divisors of a structured matrix over a DVR. Everything is
//! exact: values live in [`exact::Rational`], [`exact::LaurentPolynomial`]
//! or [`exact::RationalFunction`].

pub mod characters;
pub mod dvr;
pub mod error;
pub mod exact;
pub mod hall;
pub mod hecke;
pub mod io;
pub mod kostka;
pub mod numbers;
pub mod partitions;
pub mod suite;
pub mod whittaker;

pub use error::{Error, Result};
pub use partitions::Partition;
