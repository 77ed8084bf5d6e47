//! High-precision numerics: complex arithmetic on MPFR, polylogarithms,
//! iterated integrals and transport, and the numeric relation checks.

mod bigc;
pub mod iterint;
pub mod linearized;
pub mod polylog;
pub mod star;
pub mod taylor;

pub use bigc::{reconstruct, BigC, CRing, DEFAULT_PREC};
pub use iterint::{dch_transport_depth1, iterint, regularized_iterint, transport, Form, PathSpec, Tangent};
pub use polylog::{bernoulli_pairing, li, li_log_series, multiple_li, zeta_value};
