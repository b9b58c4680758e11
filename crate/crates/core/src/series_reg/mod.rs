//! Polynomials in `T`, truncated power series in `t`, and the regularization
//! maps `ρ`, `ρ̄*`, `ρ̄*⁻¹` defined through the series `A(t)`.

mod maps;
mod series;
mod tpoly;

pub use maps::{a_series, RegMaps};
pub use series::TruncSeries;
pub use tpoly::TPoly;
