//! Qubit maps with diagonal unitary and orthogonal symmetries.
//!
//! This crate implements the family of linear qubit maps that commute with
//! conjugation by diagonal orthogonal matrices,
//!
//! ```text
//! Φ(X) = Σ_{ij} a_ij |i⟩⟨j| X |j⟩⟨i|  +  λ P₁ X P₂ + λ̄ P₂ X P₁  +  μ P₁ Xᵀ P₂ + μ̄ P₂ Xᵀ P₁ ,
//! ```
//!
//! parameterized by a real 2×2 matrix `a` and two complex numbers `λ`, `μ`.
//! The family contains the amplitude damping channel, all Pauli channels, the
//! transposition and reduction maps, and Choi's example of a Schwarz map that
//! is not completely positive.
//!
//! Three nested properties are decided in closed form and cross-checked
//! numerically:
//!
//! - **positivity** — `|λ| + |μ| ≤ √(a₁₁a₂₂) + √(a₁₂a₂₁)` (with `a_ij ≥ 0`),
//! - **operator Schwarz inequality** `Φ(X†X) ≥ Φ(X†)Φ(X)` — two ellipse
//!   conditions in `(|λ|, |μ|)`, extended to non-unital maps through the
//!   generalized Schwarz inequality `Φ(X†X) ≥ Φ(X)† Φ(𝟙)⁺ Φ(X)`,
//! - **complete positivity** — positive semidefiniteness of the Choi matrix,
//!   equivalently `|λ| ≤ √(a₁₁a₂₂)` and `|μ| ≤ √(a₁₂a₂₁)`.
//!
//! Module layout:
//!
//! - [`linalg`] — fixed-size complex linear algebra (2×2 / 4×4 Hermitian
//!   eigenproblems, partial transpose, Kronecker products).
//! - [`map`] — the map family itself: application, Choi matrix, dual,
//!   symmetry detection, named channels, canonical JSON forms.
//! - [`mod@classify`] — every closed-form criterion: positivity, complete
//!   positivity, Schwarz, generalized Schwarz, and the duality relations.
//! - [`pauli`] — Pauli maps: eigenvalue picture, Fujiwara–Algoet conditions,
//!   the Schwarz boundary surface, and Monte Carlo region volumes.
//! - [`oracle`] — independent brute-force verification: Schwarz-defect
//!   minimization, block-positivity search, and the Woronowicz decomposition.
//! - [`rng`] — the splittable counter-based generator used for reproducible
//!   sampling.

// Index loops mirror the matrix algebra throughout the crate.
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod linalg;
pub mod map;
pub mod oracle;
pub mod pauli;
pub mod rng;

pub use classify::{classify, Classification, Margins};
pub use linalg::{CMat2, CMat4, C64};
pub use map::{ChoiMatrix, MapParams, SymmetryType};
pub use pauli::{PauliEigenvalues, PauliParams, VolumeReport};
