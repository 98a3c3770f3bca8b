//! Closed-form classification of maps from the family.
//!
//! All regions are closed; every inequality is tested with an absolute slack
//! tolerance [`EPS`]. Margins report the raw inequality slack (positive means
//! strictly inside), which the numerical oracles use to stay away from
//! boundaries.
//!
//! With the shorthand `a = a₁₁, a' = a₁₂, b' = a₂₁, b = a₂₂` (so a unital map
//! has `a' = 1-a`, `b' = 1-b`):
//!
//! - completely positive ⟺ `a_ij ≥ 0`, `|λ| ≤ √(ab)`, `|μ| ≤ √(a'b')`;
//! - positive ⟺ `a_ij ≥ 0`, `|λ| + |μ| ≤ √(ab) + √(a'b')`;
//! - Schwarz (unital) ⟺ `|λ|²/a + |μ|²/(1-a) ≤ 1` and
//!   `|λ|²/b + |μ|²/(1-b) ≤ 1`;
//! - generalized Schwarz ⟺ `|λ|²/a + |μ|²/a' ≤ b + b'` and
//!   `|λ|²/b + |μ|²/b' ≤ a + a'`.
//!
//! A term `c²/0` counts as `0` when `c` vanishes and as `+∞` otherwise — the
//! limit of the ellipse condition as a semi-axis shrinks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::C64;
use crate::map::MapParams;

/// Absolute tolerance on inequality slack; all regions are closed.
pub const EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("map is not unital (row sums {row0}, {row1})")]
    NotUnital { row0: f64, row1: f64 },
    #[error("map has neither λ = 0 nor μ = 0 (|λ| = {lambda_abs}, |μ| = {mu_abs})")]
    WrongSymmetry { lambda_abs: f64, mu_abs: f64 },
    #[error("invalid parameters: a_ij entries must be non-negative (min = {min_entry})")]
    InvalidParams { min_entry: f64 },
    #[error("degenerate denominator {value}")]
    DegenerateDenominator { value: f64 },
}

/// Signed distances to the three region boundaries; positive = strictly inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    pub positive: f64,
    pub schwarz: f64,
    pub completely_positive: f64,
}

/// Verdict record for one map. `schwarz` means the generalized Schwarz
/// property when the map is not unital. The verdicts nest:
/// completely positive ⟹ schwarz ⟹ positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub positive: bool,
    pub schwarz: bool,
    pub completely_positive: bool,
    pub margins: Margins,
}

/// `num_sq / den` with the shrunken-axis convention: a vanishing denominator
/// yields 0 when the numerator vanishes too, +∞ otherwise (also for negative
/// denominators, where the condition is unsatisfiable).
pub(crate) fn ratio_term(num_sq: f64, den: f64) -> f64 {
    if den > EPS {
        num_sq / den
    } else if num_sq <= EPS * EPS {
        0.0
    } else {
        f64::INFINITY
    }
}

fn sqrt_clamped(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

fn not_unital(p: &MapParams) -> Option<ClassifyError> {
    if p.is_unital() {
        None
    } else {
        Some(ClassifyError::NotUnital {
            row0: p.a[0][0] + p.a[0][1],
            row1: p.a[1][0] + p.a[1][1],
        })
    }
}

/// Complete positivity: `a_ij ≥ 0`, `|λ| ≤ √(a₁₁a₂₂)`, `|μ| ≤ √(a₁₂a₂₁)`.
/// The margin is the smallest of the two square-root slacks and the smallest
/// `a_ij`.
pub fn is_completely_positive(p: &MapParams) -> (bool, f64) {
    let s_lambda = sqrt_clamped(p.a[0][0].max(0.0) * p.a[1][1].max(0.0)) - p.lambda.norm();
    let s_mu = sqrt_clamped(p.a[0][1].max(0.0) * p.a[1][0].max(0.0)) - p.mu.norm();
    let margin = s_lambda.min(s_mu).min(p.min_entry());
    (margin >= -EPS, margin)
}

/// Positivity: `a_ij ≥ 0` and `|λ| + |μ| ≤ √(a₁₁a₂₂) + √(a₁₂a₂₁)`.
pub fn is_positive(p: &MapParams) -> (bool, f64) {
    let bound = sqrt_clamped(p.a[0][0].max(0.0) * p.a[1][1].max(0.0))
        + sqrt_clamped(p.a[0][1].max(0.0) * p.a[1][0].max(0.0));
    let slack = bound - p.lambda.norm() - p.mu.norm();
    let min_entry = p.min_entry();
    if min_entry >= -EPS {
        (slack >= -EPS, slack)
    } else {
        (false, slack.min(min_entry))
    }
}

/// Shared ellipse core: slack of the generalized Schwarz conditions
/// `|λ|²/a + |μ|²/a' ≤ b+b'` and `|λ|²/b + |μ|²/b' ≤ a+a'`, together with the
/// smallest `a_ij` entry.
fn ellipse_slack(p: &MapParams) -> (f64, f64) {
    let a = p.a[0][0];
    let ap = p.a[0][1];
    let bp = p.a[1][0];
    let b = p.a[1][1];
    let l2 = p.lambda.norm_sqr();
    let m2 = p.mu.norm_sqr();
    let lhs1 = ratio_term(l2, a) + ratio_term(m2, ap);
    let lhs2 = ratio_term(l2, b) + ratio_term(m2, bp);
    let slack = ((b + bp) - lhs1).min((a + ap) - lhs2);
    (slack, p.min_entry())
}

/// Schwarz property of a unital map: both ellipse conditions
/// `|λ|²/a + |μ|²/(1-a) ≤ 1`, `|λ|²/b + |μ|²/(1-b) ≤ 1`.
/// The margin is `1 − max(lhs₁, lhs₂)`.
pub fn is_schwarz_unital(p: &MapParams) -> Result<(bool, f64), ClassifyError> {
    if let Some(e) = not_unital(p) {
        return Err(e);
    }
    let (slack, min_entry) = ellipse_slack(p);
    if min_entry >= -EPS {
        Ok((slack >= -EPS, slack))
    } else {
        Ok((false, slack.min(min_entry)))
    }
}

/// Schwarz property of a unital phase-covariant (μ = 0) or conjugate
/// phase-covariant (λ = 0) map, through the modulus bounds
/// `|λ| ≤ min{√a, √b}` respectively `|μ| ≤ min{√(1-a), √(1-b)}`.
pub fn is_schwarz_phase_covariant(p: &MapParams) -> Result<bool, ClassifyError> {
    if let Some(e) = not_unital(p) {
        return Err(e);
    }
    let (a, b) = (p.a[0][0], p.a[1][1]);
    let lambda_abs = p.lambda.norm();
    let mu_abs = p.mu.norm();
    if mu_abs <= EPS {
        if a < -EPS || b < -EPS {
            return Ok(false);
        }
        Ok(lambda_abs <= sqrt_clamped(a).min(sqrt_clamped(b)) + EPS)
    } else if lambda_abs <= EPS {
        if a > 1.0 + EPS || b > 1.0 + EPS {
            return Ok(false);
        }
        Ok(mu_abs <= sqrt_clamped(1.0 - a).min(sqrt_clamped(1.0 - b)) + EPS)
    } else {
        Err(ClassifyError::WrongSymmetry { lambda_abs, mu_abs })
    }
}

/// Necessary Schwarz bounds for unital maps:
/// `|λ| ≤ min{√a, √b}` and `|μ| ≤ min{√(1-a), √(1-b)}`. Not sufficient.
pub fn schwarz_necessary_bounds(p: &MapParams) -> Result<bool, ClassifyError> {
    if let Some(e) = not_unital(p) {
        return Err(e);
    }
    let (a, b) = (p.a[0][0], p.a[1][1]);
    if !(-EPS..=1.0 + EPS).contains(&a) || !(-EPS..=1.0 + EPS).contains(&b) {
        return Ok(false);
    }
    let lambda_ok = p.lambda.norm() <= sqrt_clamped(a).min(sqrt_clamped(b)) + EPS;
    let mu_ok = p.mu.norm() <= sqrt_clamped(1.0 - a).min(sqrt_clamped(1.0 - b)) + EPS;
    Ok(lambda_ok && mu_ok)
}

/// Generalized Schwarz property `Φ(X†X) ≥ Φ(X)† Φ(𝟙)⁺ Φ(X)` of a map with
/// non-negative `a_ij`. Reduces exactly to [`is_schwarz_unital`] on unital
/// input.
pub fn is_generalized_schwarz(p: &MapParams) -> Result<(bool, f64), ClassifyError> {
    let min_entry = p.min_entry();
    if min_entry < -EPS {
        return Err(ClassifyError::InvalidParams { min_entry });
    }
    let (slack, _) = ellipse_slack(p);
    Ok((slack >= -EPS, slack))
}

/// Generalized Schwarz property of the dual map Φ‡, evaluated directly:
/// `|λ|²/a + |μ|²/b' ≤ b+a'` and `|λ|²/b + |μ|²/a' ≤ a+b'`.
pub fn is_dual_generalized_schwarz(p: &MapParams) -> Result<(bool, f64), ClassifyError> {
    is_generalized_schwarz(&p.dual())
}

/// Which duality relation applies, decided by the sign of (a−b)(a'−b').
///
/// In the (|λ|², |μ|²) plane both generalized Schwarz conditions are linear,
/// and the boundary lines of Φ and of Φ‡ all pass through the common corner
/// (ab, a'b'). Containment of one region in the other therefore reduces to
/// the axis vertices, which yields: the regions coincide when a = b or
/// a' = b', the Φ-region is contained in the Φ‡-region when
/// (a−b)(a'−b') < 0, and contains it when (a−b)(a'−b') > 0. For unital maps
/// (a−b)(a'−b') = −(a−b)² ≤ 0, so a Schwarz map always has a generalized
/// Schwarz dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualityCase {
    /// a = b or a' = b': generalized Schwarz for Φ and Φ‡ are equivalent.
    Equivalent,
    /// (a−b)(a'−b') < 0: generalized Schwarz for Φ implies it for Φ‡.
    ForwardImplication,
    /// (a−b)(a'−b') > 0: generalized Schwarz for Φ‡ implies it for Φ.
    BackwardImplication,
}

/// Outcome of checking the duality relations between Φ and Φ‡ on one map.
/// `holds` must always be true; a false value carries the offending verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub case: DualityCase,
    pub map_is_gs: bool,
    pub dual_is_gs: bool,
    pub holds: bool,
}

/// Check the duality relation (see [`DualityCase`]) for a single map.
pub fn check_duality_relations(p: &MapParams) -> Result<DualityReport, ClassifyError> {
    let (map_is_gs, _) = is_generalized_schwarz(p)?;
    let (dual_is_gs, _) = is_dual_generalized_schwarz(p)?;
    let diag = p.a[0][0] - p.a[1][1];
    let off = p.a[0][1] - p.a[1][0];
    let (case, holds) = if diag.abs() <= EPS || off.abs() <= EPS {
        (DualityCase::Equivalent, map_is_gs == dual_is_gs)
    } else if diag * off < 0.0 {
        (DualityCase::ForwardImplication, !map_is_gs || dual_is_gs)
    } else {
        (DualityCase::BackwardImplication, !dual_is_gs || map_is_gs)
    };
    Ok(DualityReport {
        case,
        map_is_gs,
        dual_is_gs,
        holds,
    })
}

/// Full classification: positivity, (generalized) Schwarz, complete
/// positivity, with margins. Non-unital maps are classified against the
/// generalized Schwarz property; invalid parameters (negative `a_ij`) fail it.
pub fn classify(p: &MapParams) -> Classification {
    let (positive, m_pos) = is_positive(p);
    let (completely_positive, m_cp) = is_completely_positive(p);
    let (schwarz, m_s) = if p.is_unital() {
        is_schwarz_unital(p).expect("unitality just checked")
    } else {
        match is_generalized_schwarz(p) {
            Ok(v) => v,
            Err(_) => {
                let (slack, min_entry) = ellipse_slack(p);
                (false, slack.min(min_entry))
            }
        }
    };
    Classification {
        positive,
        schwarz,
        completely_positive,
        margins: Margins {
            positive: m_pos,
            schwarz: m_s,
            completely_positive: m_cp,
        },
    }
}

/// The map Φ₋(X) = (𝟙 Tr(AX) − X)/(Tr A − 1) for A = diag(α₁, α₂): a unital
/// phase-covariant member of the family with
/// `a = [[α₁−1, α₂], [α₁, α₂−1]]/(α₁+α₂−1)`, `λ = −1/(α₁+α₂−1)`, `μ = 0`.
pub fn phi_minus(alpha1: f64, alpha2: f64) -> Result<MapParams, ClassifyError> {
    let den = alpha1 + alpha2 - 1.0;
    if den.abs() <= EPS {
        return Err(ClassifyError::DegenerateDenominator { value: den });
    }
    Ok(MapParams::new(
        [
            [(alpha1 - 1.0) / den, alpha2 / den],
            [alpha1 / den, (alpha2 - 1.0) / den],
        ],
        C64::new(-1.0 / den, 0.0),
        C64::ZERO,
    ))
}

/// The map Ψ₊(X) = (𝟙 Tr(AX) + Xᵀ)/(Tr A + 1) for A = diag(α₁, α₂): a unital
/// conjugate phase-covariant member with
/// `a = [[α₁+1, α₂], [α₁, α₂+1]]/(α₁+α₂+1)`, `λ = 0`, `μ = 1/(α₁+α₂+1)`.
pub fn psi_plus(alpha1: f64, alpha2: f64) -> Result<MapParams, ClassifyError> {
    let den = alpha1 + alpha2 + 1.0;
    if den <= EPS {
        return Err(ClassifyError::DegenerateDenominator { value: den });
    }
    Ok(MapParams::new(
        [
            [(alpha1 + 1.0) / den, alpha2 / den],
            [alpha1 / den, (alpha2 + 1.0) / den],
        ],
        C64::ZERO,
        C64::new(1.0 / den, 0.0),
    ))
}

/// Schwarz criterion for Φ₋ phrased on A = diag(α₁, α₂): A must be invertible
/// with `‖A⁻¹‖_∞ ≤ (Tr A − 1)/Tr A`. Equivalent to the modulus bound of
/// [`is_schwarz_phase_covariant`] applied to [`phi_minus`].
pub fn phi_minus_schwarz_by_inverse_norm(alpha1: f64, alpha2: f64) -> bool {
    if alpha1.abs() <= EPS || alpha2.abs() <= EPS {
        return false;
    }
    let tr = alpha1 + alpha2;
    if tr.abs() <= EPS {
        return false;
    }
    let inv_norm = (1.0 / alpha1.abs()).max(1.0 / alpha2.abs());
    inv_norm <= (tr - 1.0) / tr + EPS
}

/// Schwarz criterion for Ψ₊ phrased on A = diag(α₁, α₂):
/// `A ≥ 𝟙/(Tr A + 1)`, i.e. `min(α₁, α₂) ≥ 1/(α₁+α₂+1)`. Requires Tr A > −1.
pub fn psi_plus_schwarz_by_spectral_bound(alpha1: f64, alpha2: f64) -> bool {
    let den = alpha1 + alpha2 + 1.0;
    if den <= EPS {
        return false;
    }
    alpha1.min(alpha2) >= 1.0 / den - EPS
}
