//! Cyclotomic KZ and KZB Lie algebras, their mod-D² polylogarithm quotients,
//! Galois heads of the generators σ_{m,ζ}, extension-class decompositions,
//! Hecke operators on Eisenstein series, and a high-precision numeric layer
//! (polylogarithms, regularized iterated integrals, transport) used to check
//! the exact side.
//!
//! Exact computations use arbitrary-precision rationals. Numerics use
//! [`numeric::BigC`], a complex number with an explicit binary precision.

pub mod cli;
pub mod error;
pub mod extdecomp;
pub mod freelie;
pub mod hain;
pub mod hecke;
pub mod linalg;
pub mod ncseries;
pub mod numeric;
pub mod polyquot;
pub mod rational;
pub mod ring;
pub mod roots;
pub mod symbolic;

pub use error::{Error, Result};
pub use rational::Q;
pub use roots::Root;
