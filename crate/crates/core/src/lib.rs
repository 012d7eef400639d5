//! Exact certification of Salem numbers, the arithmetic data of their trace
//! fields, and a discrete laboratory for Cheeger-type inequalities on graph
//! double covers.

pub mod arith;
pub mod constants;
pub mod experiment;
pub mod interval;
pub mod intpoly;
pub mod rng;
pub mod salem;
pub mod spectral;

pub use interval::RationalInterval;
pub use intpoly::IntPolynomial;
