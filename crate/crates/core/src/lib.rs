//! Grassmann-algebra arithmetic and numerical solvers for the Riccati
//! equation with a superfield unknown.

pub mod coeffs;
pub mod grassmann;
pub mod integrator;
pub mod riccati;
pub mod superfield;
