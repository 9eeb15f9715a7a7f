//! Computational toolkit for Schrödinger models of minimal representations.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bargmann;
pub mod catalog;
pub mod cones;
pub mod fourth_order;
pub mod inversion;
pub mod quadrature;
pub mod radial_symbolic;
pub mod rational;
pub mod spectral;
pub mod specfun;
pub mod verify;
