//! Photonic band structures of 2D dispersive crystals on the unit square lattice.
//!
//! The TE-polarization Bloch eigenproblem is discretized with linear Lagrange
//! elements on a periodic triangulation of the unit cell. Frequency-dependent
//! permittivities make the problem nonlinear in ω; eigenvalues are located by
//! a contour-integral spectral indicator with adaptive quadtree subdivision of
//! a square search region in the complex plane.
//!
//! Pipeline: [`mesh`] builds the triangulation and the periodic DOF map,
//! [`assembly`] produces the frequency-independent sparse matrices,
//! [`dielectric`] supplies ε(ω), [`sim`] searches a region for eigenvalues of
//! the resulting holomorphic matrix function, and [`bands`] drives k-path
//! sweeps and mesh-convergence studies.

pub mod assembly;
pub mod bands;
pub mod dielectric;
mod error;
pub mod mesh;
pub mod nep;
pub mod sim;
mod sparse;

pub use error::{Error, Result};
pub use sparse::CscPattern;
