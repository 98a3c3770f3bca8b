//! The qubit map family with diagonal orthogonal symmetry.
//!
//! A map is stored as the real 2×2 matrix `a` together with the complex
//! couplings `λ` (phase-covariant part) and `μ` (conjugate part). Acting on
//! `X = Σ X_ij |i⟩⟨j|` the map returns
//!
//! ```text
//!         ⎛ a₁₁X₁₁ + a₁₂X₂₂      λX₁₂ + μX₂₁     ⎞
//! Φ(X) =  ⎜                                      ⎟ ,
//!         ⎝ λ̄X₂₁ + μ̄X₁₂       a₂₁X₁₁ + a₂₂X₂₂  ⎠
//! ```
//!
//! so that the Choi matrix `C = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)` carries `a₁₁, a₂₂`
//! with `λ, λ̄` on the outer anti-diagonal and `a₂₁, a₁₂` with `μ̄, μ` in the
//! central block. Hermiticity preservation is built in through the real `a`.
//!
//! Negative `a_ij` are allowed at construction: non-completely-positive Pauli
//! maps need them. Classifiers check their own premises.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CMat2, CMat4, C64};

/// Tolerance for recognizing unitality / trace preservation and for the Choi
/// zero-pattern check.
pub const STRUCT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("parameter {name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("matrix violates the Choi zero pattern at entry ({row}, {col})")]
    PatternViolation { row: usize, col: usize },
    #[error("unknown channel `{name}`")]
    UnknownChannel { name: String },
    #[error("channel `{name}` expects {expected} parameter(s), got {got}")]
    BadArity {
        name: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Symmetry class of a map from the family, decided by which couplings vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryType {
    /// μ = 0, λ ≠ 0: commutes with conjugation by e^{iφσ_z}.
    PhaseCovariant,
    /// λ = 0, μ ≠ 0: intertwines with the inverse phase rotation.
    ConjugatePhaseCovariant,
    /// λ = μ = 0: both covariances hold.
    Both,
    /// λ ≠ 0 and μ ≠ 0: only the diagonal orthogonal symmetry remains.
    OrthogonalOnly,
}

/// Parameters of a map from the family: real `a`, complex `λ`, `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "MapParamsWire", from = "MapParamsWire")]
pub struct MapParams {
    /// The real coefficients a_ij of the diagonal part.
    pub a: [[f64; 2]; 2],
    pub lambda: C64,
    pub mu: C64,
}

/// Canonical JSON shape: {"a":[[a11,a12],[a21,a22]],"lambda":[re,im],"mu":[re,im]}.
#[derive(Serialize, Deserialize)]
struct MapParamsWire {
    a: [[f64; 2]; 2],
    lambda: [f64; 2],
    mu: [f64; 2],
}

impl From<MapParams> for MapParamsWire {
    fn from(p: MapParams) -> Self {
        MapParamsWire {
            a: p.a,
            lambda: [p.lambda.re, p.lambda.im],
            mu: [p.mu.re, p.mu.im],
        }
    }
}

impl From<MapParamsWire> for MapParams {
    fn from(w: MapParamsWire) -> Self {
        MapParams {
            a: w.a,
            lambda: C64::new(w.lambda[0], w.lambda[1]),
            mu: C64::new(w.mu[0], w.mu[1]),
        }
    }
}

impl MapParams {
    pub fn new(a: [[f64; 2]; 2], lambda: C64, mu: C64) -> Self {
        MapParams { a, lambda, mu }
    }

    /// Unital convention `a = [[a, 1-a], [1-b, b]]`.
    pub fn unital(a: f64, b: f64, lambda: C64, mu: C64) -> Self {
        MapParams::new([[a, 1.0 - a], [1.0 - b, b]], lambda, mu)
    }

    pub fn identity() -> Self {
        MapParams::new([[1.0, 0.0], [0.0, 1.0]], C64::ONE, C64::ZERO)
    }

    /// Apply the map to a 2×2 matrix.
    pub fn apply(&self, x: &CMat2) -> CMat2 {
        let [[x11, x12], [x21, x22]] = x.0;
        let a = &self.a;
        CMat2([
            [
                x11.scale(a[0][0]) + x22.scale(a[0][1]),
                self.lambda * x12 + self.mu * x21,
            ],
            [
                self.lambda.conj() * x21 + self.mu.conj() * x12,
                x11.scale(a[1][0]) + x22.scale(a[1][1]),
            ],
        ])
    }

    /// Φ(𝟙), always diagonal for this family: diag(a₁₁+a₁₂, a₂₁+a₂₂).
    pub fn apply_to_identity(&self) -> CMat2 {
        CMat2::diag(
            C64::new(self.a[0][0] + self.a[0][1], 0.0),
            C64::new(self.a[1][0] + self.a[1][1], 0.0),
        )
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, block row = first factor.
    pub fn choi(&self) -> ChoiMatrix {
        let mut m = CMat4::zero();
        m.0[0][0] = C64::new(self.a[0][0], 0.0);
        m.0[1][1] = C64::new(self.a[1][0], 0.0);
        m.0[2][2] = C64::new(self.a[0][1], 0.0);
        m.0[3][3] = C64::new(self.a[1][1], 0.0);
        m.0[0][3] = self.lambda;
        m.0[3][0] = self.lambda.conj();
        m.0[1][2] = self.mu.conj();
        m.0[2][1] = self.mu;
        ChoiMatrix { m }
    }

    /// Adjoint with respect to the trace pairing Tr(Φ‡(X)†Y) = Tr(X†Φ(Y)):
    /// transposes `a`, conjugates `λ`, leaves `μ` unchanged.
    pub fn dual(&self) -> Self {
        MapParams::new(
            [[self.a[0][0], self.a[1][0]], [self.a[0][1], self.a[1][1]]],
            self.lambda.conj(),
            self.mu,
        )
    }

    /// Replace λ, μ by their moduli. Every classification verdict is invariant
    /// under this reduction.
    pub fn abs_reduction(&self) -> Self {
        MapParams::new(
            self.a,
            C64::new(self.lambda.norm(), 0.0),
            C64::new(self.mu.norm(), 0.0),
        )
    }

    pub fn symmetry_type(&self) -> SymmetryType {
        let lambda_zero = self.lambda.norm() <= STRUCT_TOL;
        let mu_zero = self.mu.norm() <= STRUCT_TOL;
        match (lambda_zero, mu_zero) {
            (true, true) => SymmetryType::Both,
            (false, true) => SymmetryType::PhaseCovariant,
            (true, false) => SymmetryType::ConjugatePhaseCovariant,
            (false, false) => SymmetryType::OrthogonalOnly,
        }
    }

    /// Unital: row sums of `a` equal 1.
    pub fn is_unital(&self) -> bool {
        (self.a[0][0] + self.a[0][1] - 1.0).abs() <= STRUCT_TOL
            && (self.a[1][0] + self.a[1][1] - 1.0).abs() <= STRUCT_TOL
    }

    /// Trace-preserving: column sums of `a` equal 1.
    pub fn is_trace_preserving(&self) -> bool {
        (self.a[0][0] + self.a[1][0] - 1.0).abs() <= STRUCT_TOL
            && (self.a[0][1] + self.a[1][1] - 1.0).abs() <= STRUCT_TOL
    }

    pub fn min_entry(&self) -> f64 {
        self.a[0][0]
            .min(self.a[0][1])
            .min(self.a[1][0])
            .min(self.a[1][1])
    }

    /// Unital shorthand (a, b) = (a₁₁, a₂₂), available when the map is unital.
    pub fn unital_ab(&self) -> Option<(f64, f64)> {
        if self.is_unital() {
            Some((self.a[0][0], self.a[1][1]))
        } else {
            None
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("map parameters serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Choi matrix of a map from the family. Exactly eight entries may be nonzero:
/// the diagonal, the outer anti-diagonal corners, and the central off-diagonal
/// pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "ChoiWire", try_from = "ChoiWire")]
pub struct ChoiMatrix {
    pub m: CMat4,
}

type ChoiWire = [[[f64; 2]; 4]; 4];

impl From<ChoiMatrix> for ChoiWire {
    fn from(c: ChoiMatrix) -> Self {
        let mut w = [[[0.0; 2]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                w[i][j] = [c.m.0[i][j].re, c.m.0[i][j].im];
            }
        }
        w
    }
}

impl TryFrom<ChoiWire> for ChoiMatrix {
    type Error = MapError;
    fn try_from(w: ChoiWire) -> Result<Self, MapError> {
        let mut m = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = C64::new(w[i][j][0], w[i][j][1]);
            }
        }
        from_choi(&m)?;
        Ok(ChoiMatrix { m })
    }
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &CMat4 {
        &self.m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("choi matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// The (row, col) pairs that must vanish in a Choi matrix of the family.
const CHOI_ZERO_SLOTS: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 3),
    (2, 0),
    (2, 3),
    (3, 1),
    (3, 2),
];

/// Recover map parameters from a Choi matrix. The matrix must match the
/// family's zero pattern and be Hermitian on the stored slots; off-pattern
/// matrices are rejected rather than projected.
pub fn from_choi(c: &CMat4) -> Result<MapParams, MapError> {
    for &(row, col) in CHOI_ZERO_SLOTS.iter() {
        if c.0[row][col].norm() > STRUCT_TOL {
            return Err(MapError::PatternViolation { row, col });
        }
    }
    for i in 0..4 {
        if c.0[i][i].im.abs() > STRUCT_TOL {
            return Err(MapError::PatternViolation { row: i, col: i });
        }
    }
    if (c.0[3][0] - c.0[0][3].conj()).norm() > STRUCT_TOL {
        return Err(MapError::PatternViolation { row: 3, col: 0 });
    }
    if (c.0[1][2] - c.0[2][1].conj()).norm() > STRUCT_TOL {
        return Err(MapError::PatternViolation { row: 1, col: 2 });
    }
    Ok(MapParams::new(
        [[c.0[0][0].re, c.0[2][2].re], [c.0[1][1].re, c.0[3][3].re]],
        c.0[0][3],
        c.0[2][1],
    ))
}

/// Pauli matrices σ₀ = 𝟙, σ₁, σ₂, σ₃.
pub fn pauli_matrix(k: usize) -> CMat2 {
    let o = C64::ZERO;
    let one = C64::ONE;
    let i = C64::I;
    match k {
        0 => CMat2([[one, o], [o, one]]),
        1 => CMat2([[o, one], [one, o]]),
        2 => CMat2([[o, -i], [i, o]]),
        3 => CMat2([[one, o], [o, -one]]),
        _ => panic!("Pauli index {k} out of range"),
    }
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<(), MapError> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(MapError::OutOfRange { name, value });
    }
    Ok(())
}

impl MapParams {
    /// Amplitude damping channel with Kraus operators
    /// K₁ = diag(1, √η), K₂ = √(1-η) |1⟩⟨2|.
    pub fn amplitude_damping(eta: f64) -> Result<Self, MapError> {
        check_unit_interval("eta", eta)?;
        Ok(MapParams::new(
            [[1.0, 1.0 - eta], [0.0, eta]],
            C64::new(eta.sqrt(), 0.0),
            C64::ZERO,
        ))
    }

    /// Generalized amplitude damping: decay toward |1⟩ with weight `p` and
    /// toward |2⟩ with weight `1-p`, damping strength `η` each way. The
    /// parameters are what the four standard Kraus operators
    /// √p·diag(1,√η), √p·√(1-η)|1⟩⟨2|, √(1-p)·diag(√η,1), √(1-p)·√(1-η)|2⟩⟨1|
    /// produce; a unit test re-derives them from the Kraus sum.
    pub fn generalized_amplitude_damping(p: f64, eta: f64) -> Result<Self, MapError> {
        check_unit_interval("p", p)?;
        check_unit_interval("eta", eta)?;
        let a11 = p + (1.0 - p) * eta;
        let a12 = p * (1.0 - eta);
        Ok(MapParams::new(
            [[a11, a12], [1.0 - a11, 1.0 - a12]],
            C64::new(eta.sqrt(), 0.0),
            C64::ZERO,
        ))
    }

    /// Pauli channel Σ p_α σ_α · σ_α with probabilities p_α.
    pub fn pauli_channel(p: [f64; 4]) -> Result<Self, MapError> {
        for (k, &v) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                let name = ["p0", "p1", "p2", "p3"][k];
                return Err(MapError::OutOfRange { name, value: v });
            }
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(MapError::OutOfRange {
                name: "sum(p)",
                value: total,
            });
        }
        let a = p[0] + p[3];
        let off = p[1] + p[2];
        Ok(MapParams::new(
            [[a, off], [off, a]],
            C64::new(p[0] - p[3], 0.0),
            C64::new(p[1] - p[2], 0.0),
        ))
    }

    pub fn bit_flip(p: f64) -> Result<Self, MapError> {
        check_unit_interval("p", p)?;
        MapParams::pauli_channel([p, 1.0 - p, 0.0, 0.0])
    }

    pub fn phase_flip(p: f64) -> Result<Self, MapError> {
        check_unit_interval("p", p)?;
        MapParams::pauli_channel([p, 0.0, 0.0, 1.0 - p])
    }

    pub fn bit_phase_flip(p: f64) -> Result<Self, MapError> {
        check_unit_interval("p", p)?;
        MapParams::pauli_channel([p, 0.0, 1.0 - p, 0.0])
    }

    /// Choi's map (𝟙 Tr X)/4 + Xᵀ/2, the classic Schwarz map that is not
    /// completely positive: a = b = 3/4, λ = 0, μ = 1/2.
    pub fn choi_map() -> Self {
        MapParams::unital(0.75, 0.75, C64::ZERO, C64::new(0.5, 0.0))
    }

    /// Transposition X ↦ Xᵀ.
    pub fn transposition() -> Self {
        MapParams::new([[1.0, 0.0], [0.0, 1.0]], C64::ZERO, C64::ONE)
    }

    /// Reduction map X ↦ 𝟙 Tr X − X.
    pub fn reduction() -> Self {
        MapParams::new([[0.0, 1.0], [1.0, 0.0]], C64::new(-1.0, 0.0), C64::ZERO)
    }
}

/// Dispatch a named channel from string form, for the CLI and serialization
/// layers.
pub fn named_channel(name: &str, params: &[f64]) -> Result<MapParams, MapError> {
    let need = |expected: usize, name: &'static str| -> Result<(), MapError> {
        if params.len() != expected {
            Err(MapError::BadArity {
                name,
                expected,
                got: params.len(),
            })
        } else {
            Ok(())
        }
    };
    match name {
        "amplitude_damping" => {
            need(1, "amplitude_damping")?;
            MapParams::amplitude_damping(params[0])
        }
        "generalized_amplitude_damping" => {
            need(2, "generalized_amplitude_damping")?;
            MapParams::generalized_amplitude_damping(params[0], params[1])
        }
        "pauli" => {
            need(4, "pauli")?;
            MapParams::pauli_channel([params[0], params[1], params[2], params[3]])
        }
        "bit_flip" => {
            need(1, "bit_flip")?;
            MapParams::bit_flip(params[0])
        }
        "phase_flip" => {
            need(1, "phase_flip")?;
            MapParams::phase_flip(params[0])
        }
        "bit_phase_flip" => {
            need(1, "bit_phase_flip")?;
            MapParams::bit_phase_flip(params[0])
        }
        "choi_map" => {
            need(0, "choi_map")?;
            Ok(MapParams::choi_map())
        }
        "transposition" => {
            need(0, "transposition")?;
            Ok(MapParams::transposition())
        }
        "reduction" => {
            need(0, "reduction")?;
            Ok(MapParams::reduction())
        }
        other => Err(MapError::UnknownChannel {
            name: other.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn basis_matrix(i: usize, j: usize) -> CMat2 {
        let mut m = CMat2::zero();
        m.0[i][j] = C64::ONE;
        m
    }

    #[test]
    fn identity_map_is_identity() {
        let p = MapParams::identity();
        let x = CMat2([
            [re(0.3), C64::new(0.1, -0.7)],
            [C64::new(2.0, 1.0), re(-4.0)],
        ]);
        assert!(p.apply(&x).max_abs_diff(&x) < 1e-15);
    }

    #[test]
    fn choi_map_action_on_sigma_x() {
        // Φ(X) = 𝟙 Tr X / 4 + Xᵀ / 2, so σ₁ ↦ σ₁/2.
        let p = MapParams::choi_map();
        let sx = pauli_matrix(1);
        assert!(p.apply(&sx).max_abs_diff(&sx.scaled(0.5)) < 1e-15);
    }

    #[test]
    fn apply_to_identity_gives_row_sums() {
        let p = MapParams::new([[0.2, 0.5], [0.1, 0.9]], re(0.3), re(0.1));
        let out = p.apply(&CMat2::identity());
        assert!(out.max_abs_diff(&CMat2::diag(re(0.7), re(1.0))) < 1e-15);
        assert!(out.max_abs_diff(&p.apply_to_identity()) < 1e-15);
    }

    #[test]
    fn choi_matches_tensor_sum_definition() {
        let p = MapParams::new(
            [[0.4, 0.7], [0.2, 0.9]],
            C64::new(0.3, -0.2),
            C64::new(0.1, 0.45),
        );
        let mut c = CMat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                c = c + kron(&basis_matrix(i, j), &p.apply(&basis_matrix(i, j)));
            }
        }
        assert!(c.max_abs_diff(&p.choi().m) < 1e-15);
    }

    #[test]
    fn choi_of_transposition() {
        let c = MapParams::transposition().choi();
        let mut expected = CMat4::zero();
        expected.0[0][0] = re(1.0);
        expected.0[3][3] = re(1.0);
        expected.0[1][2] = re(1.0);
        expected.0[2][1] = re(1.0);
        assert!(c.m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn choi_of_choi_map() {
        let c = MapParams::choi_map().choi();
        let mut expected = CMat4::zero();
        expected.0[0][0] = re(0.75);
        expected.0[1][1] = re(0.25);
        expected.0[2][2] = re(0.25);
        expected.0[3][3] = re(0.75);
        expected.0[1][2] = re(0.5);
        expected.0[2][1] = re(0.5);
        assert!(c.m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn from_choi_recovers_named_maps() {
        let t = from_choi(&MapParams::transposition().choi().m).unwrap();
        assert_eq!(t.a, [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(t.lambda, C64::ZERO);
        assert_eq!(t.mu, C64::ONE);

        let r = from_choi(&MapParams::reduction().choi().m).unwrap();
        assert_eq!(r.a, [[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(r.lambda, re(-1.0));
        assert_eq!(r.mu, C64::ZERO);
    }

    #[test]
    fn from_choi_rejects_off_pattern() {
        let mut m = MapParams::choi_map().choi().m;
        m.0[0][1] = re(1e-3);
        assert_eq!(
            from_choi(&m),
            Err(MapError::PatternViolation { row: 0, col: 1 })
        );
    }

    #[test]
    fn dual_is_trace_adjoint() {
        let mut rng = crate::rng::SplitMix64::new(7);
        for _ in 0..1000 {
            let p = MapParams::new(
                [
                    [rng.next_f64(), rng.next_f64()],
                    [rng.next_f64(), rng.next_f64()],
                ],
                rng.next_complex_in_disk(1.0),
                rng.next_complex_in_disk(1.0),
            );
            let d = p.dual();
            let x = random_matrix(&mut rng);
            let y = random_matrix(&mut rng);
            let lhs = (d.apply(&x).adjoint() * y).trace();
            let rhs = (x.adjoint() * p.apply(&y)).trace();
            assert!((lhs - rhs).norm() < 1e-12);
            assert_eq!(d.dual(), p);
        }
    }

    fn random_matrix(rng: &mut crate::rng::SplitMix64) -> CMat2 {
        CMat2([
            [rng.next_complex_in_disk(2.0), rng.next_complex_in_disk(2.0)],
            [rng.next_complex_in_disk(2.0), rng.next_complex_in_disk(2.0)],
        ])
    }

    #[test]
    fn dual_of_amplitude_damping() {
        let d = MapParams::amplitude_damping(0.36).unwrap().dual();
        assert_eq!(d.a, [[1.0, 0.0], [0.64, 0.36]]);
        assert!((d.lambda - re(0.6)).norm() < 1e-15);
        assert_eq!(d.mu, C64::ZERO);
    }

    /// Bistochastic maps have a symmetric a-matrix, so the dual only
    /// conjugates λ.
    #[test]
    fn dual_of_bistochastic_map() {
        let p = MapParams::unital(0.3, 0.3, C64::new(0.2, 0.4), C64::new(0.1, -0.2));
        let d = p.dual();
        assert_eq!(d.a, p.a);
        assert_eq!(d.lambda, p.lambda.conj());
        assert_eq!(d.mu, p.mu);
    }

    #[test]
    fn symmetry_detection() {
        assert_eq!(
            MapParams::amplitude_damping(0.3).unwrap().symmetry_type(),
            SymmetryType::PhaseCovariant
        );
        assert_eq!(
            MapParams::choi_map().symmetry_type(),
            SymmetryType::ConjugatePhaseCovariant
        );
        let p = MapParams::pauli_channel([0.4, 0.3, 0.2, 0.1]).unwrap();
        assert_eq!(p.symmetry_type(), SymmetryType::OrthogonalOnly);
        let both = MapParams::unital(0.5, 0.5, C64::ZERO, C64::ZERO);
        assert_eq!(both.symmetry_type(), SymmetryType::Both);
    }

    /// Phase covariance Φ(UXU†) = UΦ(X)U† for U = diag(e^{iφ}, e^{-iφ}),
    /// conjugate covariance with U and U† swapped on the right-hand side, and
    /// the σ_z commutation shared by the whole family.
    #[test]
    fn covariance_relations() {
        let mut rng = crate::rng::SplitMix64::new(99);
        let phase_u = |phi: f64| CMat2::diag(C64::from_polar(1.0, phi), C64::from_polar(1.0, -phi));
        let sz = pauli_matrix(3);
        for _ in 0..20 {
            let phi = rng.next_f64() * std::f64::consts::TAU;
            let u = phase_u(phi);
            let ud = u.adjoint();
            let x = random_matrix(&mut rng);

            let pc = MapParams::amplitude_damping(rng.next_f64()).unwrap();
            let lhs = pc.apply(&(u * x * ud));
            let rhs = u * pc.apply(&x) * ud;
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);

            let cpc = MapParams::choi_map();
            let lhs = cpc.apply(&(u * x * ud));
            let rhs = ud * cpc.apply(&x) * u;
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);

            let any = MapParams::new(
                [
                    [rng.next_f64(), rng.next_f64()],
                    [rng.next_f64(), rng.next_f64()],
                ],
                rng.next_complex_in_disk(1.0),
                rng.next_complex_in_disk(1.0),
            );
            let lhs = any.apply(&(sz * x * sz));
            let rhs = sz * any.apply(&x) * sz;
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    /// The detected symmetry type matches the covariance relations that a map
    /// does and does not satisfy.
    #[test]
    fn symmetry_type_matches_covariance_behaviour() {
        let mut rng = crate::rng::SplitMix64::new(111);
        let phase_u = |phi: f64| CMat2::diag(C64::from_polar(1.0, phi), C64::from_polar(1.0, -phi));
        for _ in 0..200 {
            let p = MapParams::new(
                [
                    [rng.next_f64(), rng.next_f64()],
                    [rng.next_f64(), rng.next_f64()],
                ],
                if rng.next_f64() < 0.5 {
                    rng.next_complex_in_disk(1.0)
                } else {
                    C64::ZERO
                },
                if rng.next_f64() < 0.5 {
                    rng.next_complex_in_disk(1.0)
                } else {
                    C64::ZERO
                },
            );
            let mut phase_covariant = true;
            let mut conjugate_covariant = true;
            for _ in 0..20 {
                let u = phase_u(rng.next_f64() * std::f64::consts::TAU);
                let ud = u.adjoint();
                let x = random_matrix(&mut rng);
                let transported = p.apply(&(u * x * ud));
                if transported.max_abs_diff(&(u * p.apply(&x) * ud)) > 1e-12 {
                    phase_covariant = false;
                }
                if transported.max_abs_diff(&(ud * p.apply(&x) * u)) > 1e-12 {
                    conjugate_covariant = false;
                }
            }
            let expected = match (phase_covariant, conjugate_covariant) {
                (true, true) => SymmetryType::Both,
                (true, false) => SymmetryType::PhaseCovariant,
                (false, true) => SymmetryType::ConjugatePhaseCovariant,
                (false, false) => SymmetryType::OrthogonalOnly,
            };
            assert_eq!(p.symmetry_type(), expected, "{p:?}");
        }
    }

    #[test]
    fn linearity_and_hermiticity_preservation() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..200 {
            let p = MapParams::new(
                [
                    [rng.next_symmetric(), rng.next_symmetric()],
                    [rng.next_symmetric(), rng.next_symmetric()],
                ],
                rng.next_complex_in_disk(1.5),
                rng.next_complex_in_disk(1.5),
            );
            let x = random_matrix(&mut rng);
            let y = random_matrix(&mut rng);
            let alpha = rng.next_complex_in_disk(2.0);
            let beta = rng.next_complex_in_disk(2.0);
            let lhs = p.apply(&(x.scaled_c(alpha) + y.scaled_c(beta)));
            let rhs = p.apply(&x).scaled_c(alpha) + p.apply(&y).scaled_c(beta);
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            assert!(p.apply(&x.adjoint()).max_abs_diff(&p.apply(&x).adjoint()) < 1e-12);
        }
    }

    #[test]
    fn named_channel_edge_cases() {
        let ad1 = MapParams::amplitude_damping(1.0).unwrap();
        assert_eq!(ad1, MapParams::identity());

        let gad = MapParams::generalized_amplitude_damping(1.0, 0.37).unwrap();
        assert_eq!(gad, MapParams::amplitude_damping(0.37).unwrap());

        let id = MapParams::pauli_channel([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(id, MapParams::identity());

        assert!(matches!(
            MapParams::amplitude_damping(1.5),
            Err(MapError::OutOfRange { .. })
        ));
        assert!(matches!(
            named_channel("bit_flip", &[-0.1]),
            Err(MapError::OutOfRange { .. })
        ));
        assert!(matches!(
            named_channel("nonsense", &[]),
            Err(MapError::UnknownChannel { .. })
        ));
        assert!(matches!(
            named_channel("choi_map", &[0.5]),
            Err(MapError::BadArity { .. })
        ));
    }

    /// The generalized amplitude damping parameters must reproduce the channel
    /// assembled directly from its Kraus operators, and the Kraus set must
    /// resolve the identity.
    #[test]
    fn generalized_amplitude_damping_matches_kraus_sum() {
        let mut rng = crate::rng::SplitMix64::new(21);
        for _ in 0..50 {
            let p = rng.next_f64();
            let eta = rng.next_f64();
            let sp = p.sqrt();
            let sq = (1.0 - p).sqrt();
            let se = eta.sqrt();
            let sd = (1.0 - eta).sqrt();
            let kraus = [
                CMat2::diag(re(sp), re(sp * se)),
                CMat2([[C64::ZERO, re(sp * sd)], [C64::ZERO, C64::ZERO]]),
                CMat2::diag(re(sq * se), re(sq)),
                CMat2([[C64::ZERO, C64::ZERO], [re(sq * sd), C64::ZERO]]),
            ];

            let mut resolution = CMat2::zero();
            for k in &kraus {
                resolution = resolution + k.adjoint() * *k;
            }
            assert!(resolution.max_abs_diff(&CMat2::identity()) < 1e-14);

            let gad = MapParams::generalized_amplitude_damping(p, eta).unwrap();
            let mut rng2 = crate::rng::SplitMix64::new(5);
            let x = random_matrix(&mut rng2);
            let mut via_kraus = CMat2::zero();
            for k in &kraus {
                via_kraus = via_kraus + *k * x * k.adjoint();
            }
            assert!(gad.apply(&x).max_abs_diff(&via_kraus) < 1e-13);
        }
    }

    #[test]
    fn unital_and_trace_preserving_flags() {
        let p = MapParams::pauli_channel([0.4, 0.3, 0.2, 0.1]).unwrap();
        assert!(p.is_unital() && p.is_trace_preserving());

        let ad = MapParams::amplitude_damping(0.4).unwrap();
        assert!(ad.is_trace_preserving());
        assert!(!ad.is_unital());

        let id = MapParams::identity();
        assert!(id.is_unital() && id.is_trace_preserving());
    }

    #[test]
    fn json_round_trip() {
        let p = MapParams::new(
            [[0.4, 0.7], [0.2, 0.9]],
            C64::new(0.3, -0.2),
            C64::new(0.1, 0.45),
        );
        let s = p.to_json();
        assert!(s.starts_with(r#"{"a":[[0.4,0.7],[0.2,0.9]],"lambda":[0.3,-0.2]"#));
        assert_eq!(MapParams::from_json(&s).unwrap(), p);

        let c = p.choi();
        let back = ChoiMatrix::from_json(&c.to_json()).unwrap();
        assert!(back.m.max_abs_diff(&c.m) < 1e-15);
    }
}
