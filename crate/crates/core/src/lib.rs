//! Regularized multiple zeta values and multiple zeta-star values as
//! polynomials in `T`, together with a verifier for the symmetric-sum
//! identities that relate them to sums over set partitions.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`] enumerates set partitions and evaluates Bell polynomials.
//! * [`index_algebra`] implements indices, binary words, the harmonic (stuffle)
//!   and shuffle products, and the regularization recursions that produce
//!   `ζ_harm(K;T)`, `ζ*_harm(K;T)` and `ζ_sh(K;T)` with formal MZV coefficients.
//! * [`series_reg`] holds polynomials in `T`, truncated power series, and the
//!   linear maps `ρ`, `ρ̄*` and `ρ̄*⁻¹` built from `A(t)`.
//! * [`zeta_numerics`] evaluates MZVs to multiprecision with certified error
//!   bounds.
//! * [`identities`] builds both sides of each identity through independent
//!   pipelines and compares them.
//!
//! Indices follow the increasing-variable convention: `ζ(k_1, ..., k_r)` sums
//! over `0 < m_1 < ... < m_r` and is convergent exactly when `k_r >= 2`.

pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod index_algebra;
pub mod ring;
pub mod series_reg;
pub mod zeta_numerics;

pub use error::{Error, Result};
