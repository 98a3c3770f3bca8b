//! Pauli maps Φ(X) = Σ p_α σ_α X σ_α.
//!
//! A trace-preserving Pauli map is diagonal in the Pauli basis,
//! Φ(σ_k) = λ_k σ_k, with eigenvalues obtained from the probabilities through
//! the 4×4 Hadamard matrix (λ₀ = 1 encodes trace preservation). In eigenvalue
//! coordinates the three regions are
//!
//! - positive ⟺ all |λ_k| ≤ 1 (the cube, volume 8),
//! - completely positive ⟺ |λ₁ ± λ₂| ≤ 1 ± λ₃ (the Fujiwara–Algoet
//!   tetrahedron, volume 8/3),
//! - Schwarz ⟺ (λ₁+λ₂)²/(2(1+λ₃)) + (λ₁−λ₂)²/(2(1−λ₃)) ≤ 1 (volume π²/2),
//!   whose boundary is λ₃ = λ₁λ₂ ± √((1−λ₁²)(1−λ₂²)).
//!
//! Negative p_α are allowed (maps, not channels); only Σ p_α = 1 is required
//! where eigenvalues are involved.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{ratio_term, Classification, Margins, EPS};
use crate::linalg::C64;
use crate::map::MapParams;
use crate::rng::SplitMix64;

/// Coefficients (p₀, p₁, p₂, p₃) of Φ(X) = Σ p_α σ_α X σ_α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliParams(pub [f64; 4]);

/// Eigenvalues (λ₁, λ₂, λ₃) on σ₁, σ₂, σ₃; λ₀ is implicitly 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliEigenvalues(pub [f64; 3]);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("coefficients are not trace-preserving (Σ p = {sum})")]
    NotTracePreserving { sum: f64 },
    #[error("degenerate denominator at alpha = {alpha}")]
    DegenerateDenominator { alpha: f64 },
    #[error("parameter {name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },
}

/// The Hadamard matrix linking probabilities and eigenvalues: λ = H p and
/// p = H λ / 4 (H² = 4·𝟙).
pub const HADAMARD: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
];

/// Eigenvalues of a trace-preserving Pauli map: λ_k = Σ_β H_{kβ} p_β.
pub fn to_eigenvalues(p: &PauliParams) -> Result<PauliEigenvalues, PauliError> {
    let sum: f64 = p.0.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(PauliError::NotTracePreserving { sum });
    }
    let mut lam = [0.0; 3];
    for k in 0..3 {
        lam[k] = (0..4).map(|b| HADAMARD[k + 1][b] * p.0[b]).sum();
    }
    Ok(PauliEigenvalues(lam))
}

/// Coefficients from eigenvalues, using H⁻¹ = H/4 with λ₀ = 1.
pub fn from_eigenvalues(lam: &PauliEigenvalues) -> PauliParams {
    let full = [1.0, lam.0[0], lam.0[1], lam.0[2]];
    let mut p = [0.0; 4];
    for a in 0..4 {
        p[a] = (0..4).map(|b| HADAMARD[a][b] * full[b]).sum::<f64>() / 4.0;
    }
    PauliParams(p)
}

/// The family parameters of a Pauli map:
/// a₁₁ = a₂₂ = p₀+p₃, a₁₂ = a₂₁ = p₁+p₂, λ = p₀−p₃, μ = p₁−p₂.
pub fn to_map_params(p: &PauliParams) -> MapParams {
    let diag = p.0[0] + p.0[3];
    let off = p.0[1] + p.0[2];
    MapParams::new(
        [[diag, off], [off, diag]],
        C64::new(p.0[0] - p.0[3], 0.0),
        C64::new(p.0[1] - p.0[2], 0.0),
    )
}

/// Positivity of a Pauli map: the eigenvalue cube |λ_k| ≤ 1.
pub fn positive_holds(lam: &PauliEigenvalues) -> bool {
    positivity_margin(lam) >= -EPS
}

fn positivity_margin(lam: &PauliEigenvalues) -> f64 {
    1.0 - lam.0.iter().fold(0.0f64, |m, l| m.max(l.abs()))
}

/// Fujiwara–Algoet conditions |λ₁ ± λ₂| ≤ 1 ± λ₃ (complete positivity).
pub fn fa_holds(lam: &PauliEigenvalues) -> bool {
    fa_margin(lam) >= -EPS
}

fn fa_margin(lam: &PauliEigenvalues) -> f64 {
    let [l1, l2, l3] = lam.0;
    (1.0 + l3 - (l1 + l2).abs()).min(1.0 - l3 - (l1 - l2).abs())
}

/// The Schwarz condition for Pauli maps, the ellipse criterion in eigenvalue
/// form: (λ₁+λ₂)²/(2(1+λ₃)) + (λ₁−λ₂)²/(2(1−λ₃)) ≤ 1. On the open cube this
/// is equivalent to the polynomial form
/// (1−λ₃)(λ₁+λ₂)² + (1+λ₃)(λ₁−λ₂)² ≤ 2(1−λ₃²).
pub fn fas_holds(lam: &PauliEigenvalues) -> bool {
    let (slack, entries_ok) = fas_slack(lam);
    entries_ok && slack >= -EPS
}

fn fas_slack(lam: &PauliEigenvalues) -> (f64, bool) {
    let [l1, l2, l3] = lam.0;
    let sum_sq = (l1 + l2) * (l1 + l2) / 4.0;
    let diff_sq = (l1 - l2) * (l1 - l2) / 4.0;
    let a = (1.0 + l3) / 2.0;
    let lhs = ratio_term(sum_sq, a) + ratio_term(diff_sq, 1.0 - a);
    (1.0 - lhs, l3.abs() <= 1.0 + 2.0 * EPS)
}

/// Classify a Pauli map from its eigenvalues. Margins are the raw slacks of
/// the cube, ellipse and tetrahedron inequalities in eigenvalue units.
pub fn classify_pauli(lam: &PauliEigenvalues) -> Classification {
    let m_pos = positivity_margin(lam);
    let m_cp = fa_margin(lam);
    let (slack, entries_ok) = fas_slack(lam);
    let (schwarz, m_s) = if entries_ok {
        (slack >= -EPS, slack)
    } else {
        (false, slack.min(1.0 - lam.0[2].abs()))
    };
    Classification {
        positive: m_pos >= -EPS,
        schwarz,
        completely_positive: m_cp >= -EPS,
        margins: Margins {
            positive: m_pos,
            schwarz: m_s,
            completely_positive: m_cp,
        },
    }
}

/// The one-parameter family Φ_α(X) = (σ₁Xσ₁ + σ₂Xσ₂ + σ₃Xσ₃ − αX)/(3−α):
/// positive iff α ≤ 1, Schwarz iff α ≤ 1/3, completely positive iff α ≤ 0.
pub fn phi_alpha(alpha: f64) -> Result<PauliParams, PauliError> {
    let den = 3.0 - alpha;
    if den.abs() <= 1e-12 {
        return Err(PauliError::DegenerateDenominator { alpha });
    }
    Ok(PauliParams([-alpha / den, 1.0 / den, 1.0 / den, 1.0 / den]))
}

/// Both branches λ₃ = λ₁λ₂ ± √((1−λ₁²)(1−λ₂²)) of the Schwarz boundary
/// surface, returned as (plus, minus).
pub fn schwarz_boundary_lambda3(l1: f64, l2: f64) -> Result<(f64, f64), PauliError> {
    if l1.abs() > 1.0 + EPS {
        return Err(PauliError::OutOfRange {
            name: "lambda1",
            value: l1,
        });
    }
    if l2.abs() > 1.0 + EPS {
        return Err(PauliError::OutOfRange {
            name: "lambda2",
            value: l2,
        });
    }
    let s = ((1.0 - l1 * l1) * (1.0 - l2 * l2)).max(0.0).sqrt();
    Ok((l1 * l2 + s, l1 * l2 - s))
}

/// Left-hand side of the (p₀, p₁)-plane ellipse
/// (p₀ − a/2)²/(a/4) + (p₁ − (1−a)/2)²/((1−a)/4) for a map sliced at fixed
/// a = p₀+p₃ (so p₃ = a−p₀ and p₂ = 1−a−p₁). Values ≤ 1 are Schwarz.
pub fn ellipse_p0p1(p: &PauliParams, a: f64) -> Result<f64, PauliError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(PauliError::OutOfRange {
            name: "a",
            value: a,
        });
    }
    let [p0, p1, p2, p3] = p.0;
    if (p3 - (a - p0)).abs() > 1e-9 {
        return Err(PauliError::OutOfRange {
            name: "p3",
            value: p3,
        });
    }
    if (p2 - (1.0 - a - p1)).abs() > 1e-9 {
        return Err(PauliError::OutOfRange {
            name: "p2",
            value: p2,
        });
    }
    let d0 = p0 - a / 2.0;
    let d1 = p1 - (1.0 - a) / 2.0;
    Ok(d0 * d0 / (a / 4.0) + d1 * d1 / ((1.0 - a) / 4.0))
}

/// Monte Carlo estimate of the positive / Schwarz / completely positive
/// region volumes in the eigenvalue cube [−1,1]³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub n: u64,
    pub seed: u64,
    pub v_pos: f64,
    pub v_schwarz: f64,
    pub v_cp: f64,
    pub stderr: VolumeStdErr,
}

/// Binomial standard errors of the three volume estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeStdErr {
    pub v_pos: f64,
    pub v_schwarz: f64,
    pub v_cp: f64,
}

/// The cube point for sample `index` of a given seed; pure in (seed, index),
/// so any partition of the index range yields the same stream.
pub fn volume_sample(seed: u64, index: u64) -> [f64; 3] {
    let mut rng = SplitMix64::at(seed, 3 * index);
    [
        rng.next_symmetric(),
        rng.next_symmetric(),
        rng.next_symmetric(),
    ]
}

/// Sample `n` eigenvalue triples uniformly from [−1,1]³ and report the region
/// volumes 8·(hit fraction) with their binomial standard errors. Deterministic
/// for a fixed seed and independent of work partitioning.
pub fn estimate_volumes(n: u64, seed: u64) -> VolumeReport {
    let (hits_pos, hits_schwarz, hits_cp) = (0..n)
        .into_par_iter()
        .fold(
            || (0u64, 0u64, 0u64),
            |(pos, schwarz, cp), i| {
                let lam = PauliEigenvalues(volume_sample(seed, i));
                (
                    pos + u64::from(positive_holds(&lam)),
                    schwarz + u64::from(fas_holds(&lam)),
                    cp + u64::from(fa_holds(&lam)),
                )
            },
        )
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    let volume = |hits: u64| 8.0 * hits as f64 / n as f64;
    let stderr = |hits: u64| {
        let frac = hits as f64 / n as f64;
        8.0 * (frac * (1.0 - frac) / n as f64).sqrt()
    };
    VolumeReport {
        n,
        seed,
        v_pos: volume(hits_pos),
        v_schwarz: volume(hits_schwarz),
        v_cp: volume(hits_cp),
        stderr: VolumeStdErr {
            v_pos: stderr(hits_pos),
            v_schwarz: stderr(hits_schwarz),
            v_cp: stderr(hits_cp),
        },
    }
}
