//! Exact-arithmetic toolkit for unital alternative algebras that contain a
//! full set of 2x2 matrix units.
//!
//! The crate provides finite-dimensional algebras presented by structure
//! tables over the rationals or a prime field, a multilinear identity
//! checker, the Kronecker-style product on pairs (2x2 matrix over a
//! coefficient ring, plane of module vectors), constructions (octonions,
//! Cayley-Dickson doubles and their nonassociative-coefficient variants,
//! split null extensions), a coordinatization pipeline that recovers the
//! coefficient ring, module, and skew bilinear form from a raw structure
//! table, and a Plucker-relation checker for the forms that arise this way.
//!
//! All arithmetic is exact: arbitrary-precision rationals or residues mod a
//! prime. Nothing in the crate uses floating point.

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod coordinatizer;
pub mod identity;
pub mod kron;
pub mod error;
pub mod linalg;
pub mod plucker;
pub mod poly;
pub mod rng;
pub mod scalar;

pub use error::Error;
