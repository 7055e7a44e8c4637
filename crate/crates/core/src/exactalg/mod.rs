//! Exact arithmetic: rationals, integer polynomials, matrices over both, and
//! prime-field rank.

pub mod det;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod rational;
pub mod unimodular;

pub use det::{det_polynomial, det_polynomial_with, DetStrategy, PolyMatrix};
pub use matrix::{Matrix, RationalMatrix};
pub use modp::{rank_mod_p, DEFAULT_PRIME};
pub use poly::{Monomial, Polynomial};
pub use rational::{format_rational, parse_rational, Rational};
pub use unimodular::random_unimodular;
