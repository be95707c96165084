//! Exact symbolic computation for shuffle algebras and quadratic quantum loop
//! groups attached to an arbitrary quiver / zeta datum: shuffle products,
//! constant-term pairings, word bases and straightening, windowed kernel
//! computation, membership tests with certificates, wheel detection, and
//! specialization to K-theoretic Hall building blocks.
//!
//! All arithmetic is exact: the ground field is either the rationals or the
//! field of rational functions in one parameter `q`.

pub mod error;
pub mod linalg;
pub mod memo;
pub mod pairing;
pub mod poly;
pub mod quantum;
pub mod scalar;
pub mod shuffle;
pub mod uni;
pub mod words;
pub mod zeta;

pub use error::CoreError;
pub use scalar::Scalar;
