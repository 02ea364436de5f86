//! Orbit rigidity matrices of symmetric bar-joint frameworks.
//!
//! A framework whose joints and bars are permuted by a finite point group has
//! a reduced rigidity matrix with one row per bar orbit and one column block
//! per joint orbit. Its kernel gives the infinitesimal motions that respect
//! the symmetry and its left kernel the symmetric self-stresses, which is
//! enough to detect symmetry-preserving mechanisms that plain counting misses.

pub mod linalg;
pub mod symmetry;
pub mod framework;
pub mod rigidity;
pub mod orbit;
pub mod constructions;
pub mod predict;
pub mod svg;
pub mod cli;
