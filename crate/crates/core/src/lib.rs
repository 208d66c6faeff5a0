//! Exact computations with ℤ₂-graded Grassmann algebras.
//!
//! The crate builds truncated Grassmann algebras `E(n)` under the three
//! ℤ₂-gradings `E_{k*}`, `E_∞` and `E_k`, the free graded algebra on even
//! variables `y_i` and odd variables `z_i`, canonical spanning sets of the
//! relatively-free graded algebras, and an evaluation-rank oracle that
//! certifies their component dimensions.
//!
//! Everything is exact: coefficients live in ℚ or in a prime field 𝔽ₚ with
//! `p > 2`.

pub mod error;
pub mod freealg;
pub mod grassmann;
pub mod oracle;
pub mod scalar;
pub mod spanning;

pub use error::{Error, Result};
pub use freealg::{FreePoly, GradedVariable, MultiDegree, VarKind, Word};
pub use grassmann::{GradingSpec, GrassmannElement, Monomial, Parity};
pub use scalar::{FieldSpec, Scalar};
pub use spanning::{CanonicalMonomial, EkBound, GrowthTable, RelativelyFree};
