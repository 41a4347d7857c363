// Tolerance tests are written `!(x <= tol)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bjorling;
pub mod catalog;
pub mod cli;
pub mod config;
pub mod diff;
pub mod frames;
pub mod lorentz;
pub mod mesh;
pub mod motion;
pub mod quadrature;
pub mod surface;
pub mod verify;
pub mod weierstrass;
