//! Exact scalars, points of the projective line, polynomial containers and
//! the integer helpers (square roots, factoring) the rest of the crate uses.

mod enumerate;
pub(crate) mod integer;
pub(crate) mod intpoly;
mod poly;
mod projective;
mod rational;

pub use enumerate::{count_rationals, enumerate_fractions, enumerate_rationals, Rationals};
pub use integer::{divisors, factor};
pub use poly::{HomogeneousBivariatePolynomial, UnivariatePolynomial};
pub use projective::ProjectivePoint;
pub use rational::{height, normalize_rational, rational_square_root, Rational};
