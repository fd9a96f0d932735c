//! Exact-arithmetic equivalence testing for finite-dimensional algebras.
//!
//! An `m`-dimensional algebra over a field `F` (char ≠ 2) is presented by its
//! matrix of structure constants: an `m × m²` matrix `A` such that
//! `e_j · e_k = Σ_i e_i · A^i_{jk}` in a fixed basis. A basis change by
//! `g ∈ GL(m, F)` acts on structure constants as `A ↦ g·A·(g⁻¹ ⊗ g⁻¹)`, and
//! two such matrices present isomorphic algebras exactly when they lie in one
//! orbit of that action.
//!
//! This crate decides orbit membership for generic algebras by exact
//! computation of a separating system of rational invariants, returning a
//! verified basis-change witness when two algebras are equivalent, and a
//! rough classification through trace quadratic forms when they are not.
//! All arithmetic is exact: arbitrary-precision rationals or residues mod an
//! odd prime. There is no floating point anywhere.
//!
//! Pipeline: [`normalize`] diagonalizes the level-1 trace form, [`frame`]
//! assembles a covariant frame from trace rows, and [`separate`] produces the
//! invariants and the equivalence verdict. [`oracle`] supplies deterministic
//! random inputs and a brute-force isomorphism search over small prime fields
//! for cross-validation.

pub mod error;
pub mod field;
pub mod frame;
pub mod linalg;
pub mod msc;
pub mod normalize;
mod numtheory;
pub mod oracle;
pub mod separate;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use frame::{Frame, RowId};
pub use linalg::Mat;
pub use msc::{act, Msc, TraceForm, TraceSide};
pub use normalize::{is_generic, normalize, NormalizedAlgebra};
pub use separate::{compare, invariants, rough_compare, rough_invariants};
pub use separate::{InvariantPair, RoughInvariants, RoughVerdict, Verdict};
