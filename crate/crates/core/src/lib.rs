//! Affine Hecke algebras of small rank: exact arithmetic in the Iwahori and
//! Bernstein presentations, c-functions and residual points, induced
//! representations and the numerical harmonic analysis built on them.

pub mod cfun;
pub mod cli;
pub mod harmonic;
pub mod heckealg;
pub mod lattice;
pub mod linalg;
pub mod laurent;
pub mod repmod;
pub mod rootdata;
pub mod torus;
pub mod weyl;
