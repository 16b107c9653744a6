//! Exact linear algebra: rational subspaces and integer normal forms.

pub mod gf2;
pub mod homology;
pub mod intmatrix;
pub mod matrix;
pub mod rational;
pub mod snf;
pub mod subspace;

pub use gf2::Gf2Matrix;
pub use homology::{kunneth, poly_mul, ChainComplex, HomologyGroup};
pub use intmatrix::IntMatrix;
pub use matrix::RatMatrix;
pub use rational::{format_rational, int, parse_rational, Rational};
pub use snf::{in_integer_span, smith_normal_form, SnfResult};
pub use subspace::{QuotientMap, Subspace};
