//! Brute-force verification of the analytic criteria.
//!
//! Nothing here consults the closed-form region formulas. Schwarz membership
//! is attacked by minimizing the smallest eigenvalue of the defect matrix
//! `M = Φ(X†X) − Φ(X†)Φ(X)` over operators `X` (with the rescaled map
//! `√(Φ(𝟙)⁺) Φ(·) √(Φ(𝟙)⁺)` substituted when Φ is not unital); positivity by
//! minimizing `⟨x⊗y|C|x⊗y⟩` over product vectors; complete positivity by the
//! spectrum of the Choi matrix. The Woronowicz decomposition `C = A + Bᴳ`
//! with `A, B ⪰ 0` is constructed explicitly for positive maps.
//!
//! Searches are deterministic: a coarse scan of the traceless `f = 0` family
//! (which is where Schwarz violations first appear) followed by Nelder–Mead
//! refinement with seeded restarts. A found violation is a certificate; a
//! clean sweep is trusted only away from the analytic boundaries, which is
//! why the agreement sweeps exclude a margin band around them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, classify};
use crate::linalg::{is_psd4, kron_vec, pinv_diag2, CMat2, CMat4, C64, PINV_TOL};
use crate::map::{ChoiMatrix, MapParams};
use crate::pauli::{self, PauliEigenvalues};
use crate::rng::SplitMix64;

/// A defect eigenvalue below this threshold certifies a Schwarz violation.
pub const TOL_VIOLATION: f64 = 1e-8;

/// Tolerance on the product-vector minimum for declaring block positivity.
pub const TOL_BLOCK: f64 = 1e-8;

/// Maps closer than this to any analytic boundary are excluded from
/// agreement sweeps; finite search budgets cannot certify exact boundary
/// points.
pub const MARGIN_BAND: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("search budget exhausted (best defect eigenvalue {best:.3e})")]
    BudgetExhausted { best: f64 },
    #[error("map is not positive (margin {margin:.3e}); no decomposition exists")]
    NotPositive { margin: f64 },
    #[error("degenerate parameters: {0}")]
    Degenerate(&'static str),
}

/// Traceless operator X = [[f, z₁], [z₂, −f]] with real f. The global phase
/// is free, and rescaling X scales the defect by |t|², so searches run on the
/// unit sphere f² + |z₁|² + |z₂|² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracelessX {
    pub f: f64,
    #[serde(with = "complex_pair")]
    pub z1: C64,
    #[serde(with = "complex_pair")]
    pub z2: C64,
}

mod complex_pair {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

impl TracelessX {
    pub fn new(f: f64, z1: C64, z2: C64) -> Self {
        TracelessX { f, z1, z2 }
    }

    pub fn to_matrix(&self) -> CMat2 {
        CMat2([
            [C64::new(self.f, 0.0), self.z1],
            [self.z2, C64::new(-self.f, 0.0)],
        ])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.f * self.f + self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        TracelessX {
            f: self.f / n,
            z1: self.z1 / n,
            z2: self.z2 / n,
        }
    }
}

/// The defect matrix of one operator, with its minimum eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzDefect {
    pub x: TracelessX,
    pub m: CMat2,
    pub min_eig: f64,
}

/// Evaluates defect matrices for one map, caching the rescaling factor
/// `√(Φ(𝟙)⁺)` for non-unital maps.
struct DefectEngine {
    p: MapParams,
    scale: Option<CMat2>,
}

impl DefectEngine {
    fn new(p: &MapParams) -> Self {
        let scale = if p.is_unital() {
            None
        } else {
            let pinv = pinv_diag2(&p.apply_to_identity(), PINV_TOL)
                .expect("Φ(𝟙) is diagonal for this family");
            Some(CMat2::diag(
                C64::new(pinv.0[0][0].re.sqrt(), 0.0),
                C64::new(pinv.0[1][1].re.sqrt(), 0.0),
            ))
        };
        DefectEngine { p: *p, scale }
    }

    fn apply(&self, x: &CMat2) -> CMat2 {
        match &self.scale {
            None => self.p.apply(x),
            Some(d) => *d * self.p.apply(x) * *d,
        }
    }

    fn defect(&self, x: &CMat2) -> CMat2 {
        let xdx = x.adjoint() * *x;
        self.apply(&xdx) - self.apply(&x.adjoint()) * self.apply(x)
    }

    fn min_eig(&self, x: &CMat2) -> f64 {
        min_eig2(&self.defect(x))
    }
}

/// Smallest eigenvalue of the Hermitian part of a 2×2 matrix; defects are
/// Hermitian up to rounding.
fn min_eig2(m: &CMat2) -> f64 {
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = (m.0[0][1] + m.0[1][0].conj()).scale(0.5);
    let half_sum = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    half_sum - (half_diff * half_diff + b.norm_sqr()).sqrt()
}

/// Defect `M = Φ(X†X) − Φ(X†)Φ(X)` (rescaled map for non-unital Φ) and its
/// minimum eigenvalue. In debug builds, unital maps additionally assert that
/// shifting X by a multiple of the identity leaves M unchanged.
pub fn schwarz_defect(p: &MapParams, x: &TracelessX) -> SchwarzDefect {
    let engine = DefectEngine::new(p);
    let xm = x.to_matrix();
    let m = engine.defect(&xm);
    #[cfg(debug_assertions)]
    if p.is_unital() {
        let shift = CMat2::identity().scaled_c(C64::new(0.31, -0.17));
        let shifted = engine.defect(&(xm + shift));
        debug_assert!(
            m.max_abs_diff(&shifted) <= 1e-9 * (1.0 + m.max_abs()),
            "defect must be invariant under X ↦ X + c·𝟙 for unital maps"
        );
    }
    SchwarzDefect {
        x: *x,
        m,
        min_eig: min_eig2(&m),
    }
}

fn tx_from_coords(v: &[f64; 5]) -> Option<TracelessX> {
    let x = TracelessX::new(v[0], C64::new(v[1], v[2]), C64::new(v[3], v[4]));
    if x.norm_sqr() < 1e-24 {
        None
    } else {
        Some(x.normalized())
    }
}

/// Search for an operator violating the (generalized) Schwarz inequality.
///
/// Strategy: a dense scan of the traceless f = 0 two-parameter family over
/// the mixing angle and the relative phase of (z₁, z₂), Nelder–Mead
/// refinement of the best scan cells, then seeded multi-start Nelder–Mead
/// over all five real coordinates on the unit sphere. Returns a witness when
/// the best defect eigenvalue drops below −[`TOL_VIOLATION`], `None` for a
/// clean sweep within budget.
pub fn find_schwarz_violation(
    p: &MapParams,
    budget: usize,
    seed: u64,
) -> Result<Option<(TracelessX, f64)>, OracleError> {
    let engine = DefectEngine::new(p);
    let mut evals = 0usize;
    let mut best_val = f64::INFINITY;
    let mut best_x = TracelessX::new(0.0, C64::ONE, C64::ZERO);

    let consider = |x: TracelessX, val: f64, best_val: &mut f64, best_x: &mut TracelessX| {
        if val < *best_val {
            *best_val = val;
            *best_x = x;
        }
    };

    // f = 0 family: X = [[0, cos ψ], [sin ψ e^{iθ}, 0]], unit norm by
    // construction. The endpoints ψ = 0, π/2 are the rank-one probes
    // |1⟩⟨2| and |2⟩⟨1|.
    let f0 = |psi: f64, theta: f64| {
        TracelessX::new(
            0.0,
            C64::new(psi.cos(), 0.0),
            C64::from_polar(psi.sin(), theta),
        )
    };
    let n_psi = 48;
    let n_theta = 48;
    let mut coarse: Vec<(f64, f64, f64)> = Vec::with_capacity(n_psi * n_theta);
    'scan: for i in 0..n_psi {
        let psi = std::f64::consts::FRAC_PI_2 * i as f64 / (n_psi - 1) as f64;
        for j in 0..n_theta {
            if evals >= budget {
                break 'scan;
            }
            let theta = std::f64::consts::TAU * j as f64 / n_theta as f64;
            let x = f0(psi, theta);
            let val = engine.min_eig(&x.to_matrix());
            evals += 1;
            consider(x, val, &mut best_val, &mut best_x);
            coarse.push((val, psi, theta));
        }
    }
    let scan_complete = coarse.len() == n_psi * n_theta;

    // Refine the best f = 0 cells.
    coarse.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for &(_, psi, theta) in coarse.iter().take(3) {
        if evals >= budget {
            break;
        }
        let room = budget - evals;
        let (pt, val) = nelder_mead(
            &mut |v: &[f64; 2]| {
                let x = f0(v[0], v[1]);
                engine.min_eig(&x.to_matrix())
            },
            [psi, theta],
            0.05,
            room.min(240),
            &mut evals,
        );
        consider(f0(pt[0], pt[1]), val, &mut best_val, &mut best_x);
    }

    // Full five-parameter search from seeded random starts, plus starts at
    // the best f = 0 witness nudged off the f = 0 slice.
    let mut rng = SplitMix64::new(seed);
    let mut starts: Vec<[f64; 5]> = Vec::new();
    for _ in 0..16 {
        starts.push([
            rng.next_symmetric(),
            rng.next_symmetric(),
            rng.next_symmetric(),
            rng.next_symmetric(),
            rng.next_symmetric(),
        ]);
    }
    for nudge in [0.05, -0.2] {
        starts.push([
            nudge,
            best_x.z1.re,
            best_x.z1.im,
            best_x.z2.re,
            best_x.z2.im,
        ]);
    }
    for start in starts {
        if evals >= budget {
            break;
        }
        let room = budget - evals;
        let (pt, val) = nelder_mead(
            &mut |v: &[f64; 5]| match tx_from_coords(v) {
                Some(x) => engine.min_eig(&x.to_matrix()),
                None => f64::INFINITY,
            },
            start,
            0.3,
            room.min(320),
            &mut evals,
        );
        if let Some(x) = tx_from_coords(&pt) {
            consider(x, val, &mut best_val, &mut best_x);
        }
    }

    if best_val < -TOL_VIOLATION {
        return Ok(Some((best_x, best_val)));
    }
    if !scan_complete {
        // Too little budget to finish even the coarse scan: a clean result
        // certifies nothing.
        return Err(OracleError::BudgetExhausted { best: best_val });
    }
    Ok(None)
}

/// Product vectors x ⊗ y realizing the block-positivity minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductWitness {
    pub x: [C64; 2],
    pub y: [C64; 2],
}

impl ProductWitness {
    fn from_angles(v: &[f64; 4]) -> Self {
        ProductWitness {
            x: [C64::new(v[0].cos(), 0.0), C64::from_polar(v[0].sin(), v[1])],
            y: [C64::new(v[2].cos(), 0.0), C64::from_polar(v[2].sin(), v[3])],
        }
    }
}

/// Minimize ⟨x⊗y|C|x⊗y⟩ over unit product vectors (four real angles after
/// gauge fixing). Returns whether the minimum stays above −[`TOL_BLOCK`],
/// the minimum itself, and a witness attaining it.
///
/// For fixed moduli the optimal phases are known in closed form (each cross
/// term aligns independently), so the coarse scan runs over the two mixing
/// angles only; Nelder–Mead then refines over all four angles against the
/// full quadratic form as an independent evaluation path.
pub fn block_positivity(c: &ChoiMatrix, budget: usize, seed: u64) -> (bool, f64, ProductWitness) {
    let m = &c.m;
    let d = [m.0[0][0].re, m.0[1][1].re, m.0[2][2].re, m.0[3][3].re];
    let corner = m.0[0][3];
    let central = m.0[1][2];
    let coupling = corner.norm() + central.norm();

    // Exact minimum over the two phase angles at fixed mixing angles.
    let phase_min = |alpha: f64, beta: f64| {
        let (ca, sa) = (alpha.cos(), alpha.sin());
        let (cb, sb) = (beta.cos(), beta.sin());
        d[0] * ca * ca * cb * cb
            + d[1] * ca * ca * sb * sb
            + d[2] * sa * sa * cb * cb
            + d[3] * sa * sa * sb * sb
            - 2.0 * (ca * sa) * (cb * sb) * coupling
    };
    // Phases attaining it: θx+θy and θx−θy rotate the two cross terms to −1.
    let aligned_phases = |alpha: f64, beta: f64| {
        let u = std::f64::consts::PI - corner.arg();
        let w = std::f64::consts::PI - central.arg();
        [alpha, (u + w) / 2.0, beta, (u - w) / 2.0]
    };

    let full = |v: &[f64; 4]| {
        let w = ProductWitness::from_angles(v);
        m.quadratic_form(&kron_vec(&w.x, &w.y))
    };

    let mut evals = 0usize;
    let mut best_val = f64::INFINITY;
    let mut best_angles = [0.0f64; 4];

    let n = 32;
    for i in 0..n {
        let alpha = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let beta = std::f64::consts::FRAC_PI_2 * j as f64 / (n - 1) as f64;
            let val = phase_min(alpha, beta);
            evals += 1;
            if val < best_val {
                best_val = val;
                best_angles = aligned_phases(alpha, beta);
            }
        }
        if evals >= budget {
            break;
        }
    }

    // Refine the phase-reduced objective on (α, β).
    let (ab, val) = nelder_mead(
        &mut |v: &[f64; 2]| phase_min(v[0], v[1]),
        [best_angles[0], best_angles[2]],
        0.04,
        240.min(budget.saturating_sub(evals).max(16)),
        &mut evals,
    );
    if val < best_val {
        best_val = val;
        best_angles = aligned_phases(ab[0], ab[1]);
    }

    // Independent 4-angle refinement against the full quadratic form.
    let mut rng = SplitMix64::new(seed);
    let mut starts = vec![best_angles];
    for _ in 0..5 {
        starts.push([
            rng.next_in(0.0, std::f64::consts::FRAC_PI_2),
            rng.next_in(0.0, std::f64::consts::TAU),
            rng.next_in(0.0, std::f64::consts::FRAC_PI_2),
            rng.next_in(0.0, std::f64::consts::TAU),
        ]);
    }
    for start in starts {
        if evals >= budget {
            break;
        }
        let room = budget - evals;
        let (pt, val) = nelder_mead(
            &mut |v: &[f64; 4]| full(v),
            start,
            0.15,
            room.min(280),
            &mut evals,
        );
        if val < best_val {
            best_val = val;
            best_angles = pt;
        }
    }

    let witness = ProductWitness::from_angles(&best_angles);
    let value = m.quadratic_form(&kron_vec(&witness.x, &witness.y));
    let best = best_val.min(value);
    (best >= -TOL_BLOCK, best, witness)
}

/// Woronowicz decomposition C = A + Bᴳ with A, B ⪰ 0 of the Choi matrix of a
/// positive map. Completely positive maps return (C, 0). For a positive map
/// with `|λ| > √(a₁₁a₂₂)` the construction places the saturated corner block
/// in A and the excess κ = |λ| − √(a₁₁a₂₂) in B, splitting the central block
/// through x = |μ|√(a₁₂/a₂₁); the branch with the roles of λ and μ exchanged
/// is handled by the mirrored substitution.
pub fn woronowicz_decompose(p: &MapParams) -> Result<(CMat4, CMat4), OracleError> {
    let (positive, margin) = classify::is_positive(p);
    if !positive {
        return Err(OracleError::NotPositive { margin });
    }
    let q = p.abs_reduction();
    let lam = q.lambda.re;
    let mu = q.mu.re;
    let a = q.a[0][0].max(0.0);
    let ap = q.a[0][1].max(0.0);
    let bp = q.a[1][0].max(0.0);
    let b = q.a[1][1].max(0.0);
    let zero_tol = 1e-12;

    let (a_mat, b_mat) = if classify::is_completely_positive(&q).0 {
        (q.choi().m, CMat4::zero())
    } else if lam - (a * b).sqrt() >= mu - (ap * bp).sqrt() {
        // Corner excess: κ = |λ| − √(ab) > 0 and |μ| ≤ √(a'b').
        let kappa = lam - (a * b).sqrt();
        if mu > zero_tol && bp <= zero_tol {
            return Err(OracleError::Degenerate("a₂₁ = 0 with μ ≠ 0"));
        }
        let (x, y) = if mu <= zero_tol {
            (0.0, 0.0)
        } else {
            (mu * (ap / bp).sqrt(), mu * (bp / ap).sqrt())
        };
        let mut a_mat = CMat4::zero();
        a_mat.0[0][0] = C64::new(a, 0.0);
        a_mat.0[3][3] = C64::new(b, 0.0);
        a_mat.0[0][3] = C64::new((a * b).sqrt(), 0.0);
        a_mat.0[3][0] = C64::new((a * b).sqrt(), 0.0);
        a_mat.0[1][1] = C64::new(y, 0.0);
        a_mat.0[2][2] = C64::new(x, 0.0);
        a_mat.0[1][2] = C64::new(mu, 0.0);
        a_mat.0[2][1] = C64::new(mu, 0.0);
        let mut b_mat = CMat4::zero();
        b_mat.0[1][1] = C64::new(bp - y, 0.0);
        b_mat.0[2][2] = C64::new(ap - x, 0.0);
        b_mat.0[1][2] = C64::new(kappa, 0.0);
        b_mat.0[2][1] = C64::new(kappa, 0.0);
        (a_mat, b_mat)
    } else {
        // Central excess: κ = |μ| − √(a'b') > 0 and |λ| ≤ √(ab).
        let kappa = mu - (ap * bp).sqrt();
        if lam > zero_tol && b <= zero_tol {
            return Err(OracleError::Degenerate("a₂₂ = 0 with λ ≠ 0"));
        }
        let (x, y) = if lam <= zero_tol {
            (0.0, 0.0)
        } else {
            (lam * (a / b).sqrt(), lam * (b / a).sqrt())
        };
        let mut a_mat = CMat4::zero();
        a_mat.0[0][0] = C64::new(x, 0.0);
        a_mat.0[3][3] = C64::new(y, 0.0);
        a_mat.0[0][3] = C64::new(lam, 0.0);
        a_mat.0[3][0] = C64::new(lam, 0.0);
        a_mat.0[1][1] = C64::new(bp, 0.0);
        a_mat.0[2][2] = C64::new(ap, 0.0);
        a_mat.0[1][2] = C64::new((ap * bp).sqrt(), 0.0);
        a_mat.0[2][1] = C64::new((ap * bp).sqrt(), 0.0);
        let mut b_mat = CMat4::zero();
        b_mat.0[0][0] = C64::new(a - x, 0.0);
        b_mat.0[3][3] = C64::new(b - y, 0.0);
        b_mat.0[0][3] = C64::new(kappa, 0.0);
        b_mat.0[3][0] = C64::new(kappa, 0.0);
        (a_mat, b_mat)
    };

    // Restore the phases of λ and μ: C(p) = D C(q) D† for the diagonal
    // unitary D below, so A transforms by conjugation and B by the
    // partial-transpose sandwich, neither of which moves eigenvalues.
    if p.lambda.im == 0.0 && p.mu.im == 0.0 && p.lambda.re >= 0.0 && p.mu.re >= 0.0 {
        return Ok((a_mat, b_mat));
    }
    let d = [
        C64::from_polar(1.0, p.lambda.arg()),
        C64::from_polar(1.0, -p.mu.arg()),
        C64::ONE,
        C64::ONE,
    ];
    let conjugate = |m: &CMat4| {
        let mut out = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = d[i] * m.0[i][j] * d[j].conj();
            }
        }
        out
    };
    let a_full = conjugate(&a_mat);
    let b_full = conjugate(&b_mat.partial_transpose()).partial_transpose();
    Ok((a_full, b_full))
}

/// Which family an agreement sweep samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Unital,
    NonUnital,
    Pauli,
}

/// One analytic-vs-oracle mismatch. The sweeps must produce none.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: u64,
    pub property: String,
    pub analytic: bool,
    pub oracle: bool,
    pub value: f64,
    pub params: MapParams,
}

/// Result of an agreement sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgreementReport {
    pub kind: SweepKind,
    pub n: u64,
    pub checked: u64,
    pub excluded_near_boundary: u64,
    pub disagreements: Vec<Disagreement>,
}

fn sample_map(kind: SweepKind, seed: u64, index: u64) -> MapParams {
    let mut rng = SplitMix64::at(seed, 16 * index);
    match kind {
        SweepKind::Unital => MapParams::unital(
            rng.next_in(0.01, 0.99),
            rng.next_in(0.01, 0.99),
            rng.next_phase().scale(rng.next_f64()),
            rng.next_phase().scale(rng.next_f64()),
        ),
        SweepKind::NonUnital => {
            let a = [
                [rng.next_in(0.02, 1.0), rng.next_in(0.02, 1.0)],
                [rng.next_in(0.02, 1.0), rng.next_in(0.02, 1.0)],
            ];
            let (aa, apr, bpr, bb) = (a[0][0], a[0][1], a[1][0], a[1][1]);
            let big_a = aa + apr;
            let big_b = bb + bpr;
            let r_lambda = (aa * big_b).min(bb * big_a).sqrt();
            let r_mu = (apr * big_b).min(bpr * big_a).sqrt();
            MapParams::new(
                a,
                rng.next_phase().scale(rng.next_f64() * 1.3 * r_lambda),
                rng.next_phase().scale(rng.next_f64() * 1.3 * r_mu),
            )
        }
        SweepKind::Pauli => {
            let lam = PauliEigenvalues([
                rng.next_symmetric() * 1.1,
                rng.next_symmetric() * 1.1,
                rng.next_symmetric() * 1.1,
            ]);
            pauli::to_map_params(&pauli::from_eigenvalues(&lam))
        }
    }
}

/// Sample `n` maps of the requested kind and check every analytic verdict
/// against its oracle: (generalized) Schwarz against the defect search,
/// positivity against the block-positivity search, complete positivity
/// against the Choi spectrum. Maps within [`MARGIN_BAND`] of any boundary
/// are excluded. Deterministic in (kind, n, seed, budget).
pub fn agreement_sweep(kind: SweepKind, n: u64, seed: u64, budget: usize) -> AgreementReport {
    let results: Vec<(bool, Vec<Disagreement>)> = (0..n)
        .into_par_iter()
        .map(|index| {
            let p = sample_map(kind, seed, index);
            let c = classify(&p);
            let margins = [
                c.margins.positive,
                c.margins.schwarz,
                c.margins.completely_positive,
            ];
            if margins.iter().any(|m| m.abs() < MARGIN_BAND) {
                return (false, Vec::new());
            }
            let mut bad = Vec::new();
            let record =
                |property: &str, analytic: bool, oracle: bool, value: f64, bad: &mut Vec<_>| {
                    if analytic != oracle {
                        bad.push(Disagreement {
                            index,
                            property: property.to_string(),
                            analytic,
                            oracle,
                            value,
                            params: p,
                        });
                    }
                };

            match find_schwarz_violation(&p, budget, seed ^ index) {
                Ok(found) => {
                    let (oracle_clean, value) = match &found {
                        Some((_, v)) => (false, *v),
                        None => (true, 0.0),
                    };
                    record("schwarz", c.schwarz, oracle_clean, value, &mut bad);
                }
                Err(OracleError::BudgetExhausted { best }) => {
                    record("schwarz", c.schwarz, false, best, &mut bad);
                }
                Err(_) => unreachable!("defect search only fails on budget"),
            }

            let choi = p.choi();
            let (block_pos, value, _) = block_positivity(&choi, budget, seed ^ (index << 1));
            record("positive", c.positive, block_pos, value, &mut bad);

            let psd = is_psd4(&choi.m, 1e-10).expect("Choi matrices are Hermitian");
            record(
                "completely_positive",
                c.completely_positive,
                psd,
                0.0,
                &mut bad,
            );
            (true, bad)
        })
        .collect();

    let checked = results.iter().filter(|(kept, _)| *kept).count() as u64;
    let disagreements: Vec<Disagreement> = results.into_iter().flat_map(|(_, bad)| bad).collect();
    AgreementReport {
        kind,
        n,
        checked,
        excluded_near_boundary: n - checked,
        disagreements,
    }
}

/// Nelder–Mead simplex minimization in N dimensions. `evals` counts objective
/// calls across the run; iteration stops on `max_evals`, simplex collapse, or
/// value spread below 1e-14.
fn nelder_mead<const N: usize>(
    f: &mut impl FnMut(&[f64; N]) -> f64,
    start: [f64; N],
    step: f64,
    max_evals: usize,
    evals: &mut usize,
) -> ([f64; N], f64) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let mut used = 0usize;
    let mut eval = |x: &[f64; N], used: &mut usize| -> f64 {
        *used += 1;
        f(x)
    };

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    let v0 = eval(&start, &mut used);
    simplex.push((start, v0));
    for i in 0..N {
        let mut pt = start;
        pt[i] += step;
        let v = eval(&pt, &mut used);
        simplex.push((pt, v));
    }

    while used + 4 < max_evals {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = simplex[N].1 - simplex[0].1;
        if spread.abs() < 1e-14 {
            break;
        }

        let mut centroid = [0.0; N];
        for (pt, _) in simplex.iter().take(N) {
            for k in 0..N {
                centroid[k] += pt[k] / N as f64;
            }
        }
        let worst = simplex[N];

        let mut reflected = [0.0; N];
        for k in 0..N {
            reflected[k] = centroid[k] + ALPHA * (centroid[k] - worst.0[k]);
        }
        let fr = eval(&reflected, &mut used);

        if fr < simplex[0].1 {
            let mut expanded = [0.0; N];
            for k in 0..N {
                expanded[k] = centroid[k] + GAMMA * (reflected[k] - centroid[k]);
            }
            let fe = eval(&expanded, &mut used);
            simplex[N] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
        } else {
            let (base, fb) = if fr < worst.1 {
                (reflected, fr)
            } else {
                (worst.0, worst.1)
            };
            let mut contracted = [0.0; N];
            for k in 0..N {
                contracted[k] = centroid[k] + RHO * (base[k] - centroid[k]);
            }
            let fc = eval(&contracted, &mut used);
            if fc < fb {
                simplex[N] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    for k in 0..N {
                        entry.0[k] = best[k] + SIGMA * (entry.0[k] - best[k]);
                    }
                    entry.1 = eval(&entry.0, &mut used);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    *evals += used;
    simplex[0]
}
