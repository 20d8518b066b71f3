//! Shared numerical machinery: adaptive Runge–Kutta integration, adaptive
//! Gauss–Kronrod quadrature, and golden-section minimization.
//!
//! These are deliberately small, self-contained implementations tuned for
//! the smooth one-dimensional problems in this crate (radial ODEs, radial
//! integrals, kernel minimization); none of them attempt to be a general
//! scientific-computing toolkit.

pub mod golden;
pub mod ode;
pub mod quadrature;
