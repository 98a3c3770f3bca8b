//! Self-contained complex linear algebra for fixed sizes 2×2 and 4×4.
//!
//! Everything the rest of the crate needs: Hermitian eigenvalues (closed form
//! at 2×2, cyclic Jacobi at 4×4), positive-semidefiniteness tests, Kronecker
//! products, partial transposition of the second tensor factor, and the
//! pseudoinverse of diagonal matrices. No general-purpose solver is pulled in;
//! at these sizes the direct routines are unconditionally stable.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Absolute entrywise tolerance for accepting a matrix as Hermitian.
/// Inputs are constructed, not measured, so deviations signal caller bugs.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Default absolute tolerance below which a diagonal entry is treated as zero
/// by [`pinv_diag2`].
pub const PINV_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_REL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (max |m - m†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge (off-diagonal norm {off_norm:.3e} after {JACOBI_MAX_SWEEPS} sweeps)")]
    NoConvergence { off_norm: f64 },
    #[error("matrix is not diagonal (max off-diagonal |entry| = {deviation:.3e})")]
    NotDiagonal { deviation: f64 },
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// 2×2 complex matrix. Plain value type; Hermiticity is a checkable predicate,
/// not a structural invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [[C64; 2]; 2]);

/// 4×4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub [[C64; 4]; 4]);

impl CMat2 {
    pub fn zero() -> Self {
        CMat2([[C64::ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        CMat2::diag(C64::ONE, C64::ONE)
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        CMat2([[d0, C64::ZERO], [C64::ZERO, d1]])
    }

    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        CMat2(rows)
    }

    pub fn transpose(&self) -> Self {
        CMat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn adjoint(&self) -> Self {
        CMat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scaled(&self, s: f64) -> Self {
        self.scaled_c(c(s, 0.0))
    }

    pub fn scaled_c(&self, s: C64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entrywise deviation from Hermiticity, max |m_ij - conj(m_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Hermitian part (m + m†)/2; used to strip rounding asymmetry before
    /// eigenvalue computations.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scaled(0.5)
    }
}

impl CMat4 {
    pub fn zero() -> Self {
        CMat4([[C64::ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::ONE;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: [C64; 4]) -> [C64; 4] {
        let mut out = [C64::ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    /// ⟨v|M|v⟩ for a (usually Hermitian) matrix; the real part is returned.
    pub fn quadratic_form(&self, v: &[C64; 4]) -> f64 {
        let mv = self.mul_vec(*v);
        let mut acc = C64::ZERO;
        for i in 0..4 {
            acc += v[i].conj() * mv[i];
        }
        acc.re
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn fro_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Transposition of the second tensor factor: entry ((i,k),(j,l)) moves to
    /// ((i,l),(j,k)). Involutive, trace- and Hermiticity-preserving.
    pub fn partial_transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = self.0[2 * i + l][2 * j + k];
                    }
                }
            }
        }
        out
    }
}

macro_rules! impl_matrix_ops {
    ($t:ty, $n:expr) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..$n {
                    for j in 0..$n {
                        out.0[i][j] += rhs.0[i][j];
                    }
                }
                out
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..$n {
                    for j in 0..$n {
                        out.0[i][j] -= rhs.0[i][j];
                    }
                }
                out
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scaled(-1.0)
            }
        }

        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                let mut out = <$t>::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        let mut acc = C64::ZERO;
                        for k in 0..$n {
                            acc += self.0[i][k] * rhs.0[k][j];
                        }
                        out.0[i][j] = acc;
                    }
                }
                out
            }
        }
    };
}

impl_matrix_ops!(CMat2, 2);
impl_matrix_ops!(CMat4, 4);

/// Kronecker product, first factor indexing the 2×2 blocks of the result.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut out = CMat4::zero();
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors in ℂ², first factor major.
pub fn kron_vec(x: &[C64; 2], y: &[C64; 2]) -> [C64; 4] {
    [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

fn check_hermitian2(m: &CMat2) -> Result<(), LinalgError> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    Ok(())
}

fn check_hermitian4(m: &CMat4) -> Result<(), LinalgError> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    Ok(())
}

/// Eigenvalues of a 2×2 Hermitian matrix, ascending. Closed form.
pub fn eig_hermitian2(m: &CMat2) -> Result<(f64, f64), LinalgError> {
    check_hermitian2(m)?;
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = (m.0[0][1] + m.0[1][0].conj()).scale(0.5);
    let half_sum = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let r = (half_diff * half_diff + b.norm_sqr()).sqrt();
    Ok((half_sum - r, half_sum + r))
}

/// Eigenvalues of a 4×4 Hermitian matrix, ascending. Cyclic complex Jacobi.
pub fn eig_hermitian4(m: &CMat4) -> Result<[f64; 4], LinalgError> {
    Ok(eig_hermitian4_full(m)?.0)
}

/// Eigenvalues (ascending) together with the unitary of eigenvectors,
/// column k belonging to eigenvalue k.
pub fn eig_hermitian4_full(m: &CMat4) -> Result<([f64; 4], CMat4), LinalgError> {
    check_hermitian4(m)?;

    // Work on the exact Hermitian part so the rotations see a symmetric
    // problem even when the input carries rounding noise below the tolerance.
    let mut a = [[C64::ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = (m.0[i][j] + m.0[j][i].conj()).scale(0.5);
        }
        a[i][i] = c(a[i][i].re, 0.0);
    }
    let mut v = CMat4::identity().0;

    let scale = m.fro_norm();
    let target = if scale > 0.0 {
        JACOBI_OFF_REL * scale
    } else {
        0.0
    };

    let off_norm = |a: &[[C64; 4]; 4]| -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    s += a[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= target;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let abs_apq = apq.norm();
                if abs_apq <= target / 16.0 || abs_apq == 0.0 {
                    continue;
                }
                // Unitary rotation on the (p, q) plane annihilating a[p][q].
                // The rotated entry is e^{iφ}(cs(a_qq − a_pp) + |a_pq|(c²−s²)),
                // so t = s/c is the small root of |a_pq|t² − (a_qq − a_pp)t − |a_pq| = 0.
                let phase = apq / abs_apq;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;

                // Columns: col_p' = c·col_p + s·conj(phase)·col_q,
                //          col_q' = -s·phase·col_p + c·col_q, applied as A ← J†AJ.
                let sp = phase.scale(sin);
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp.scale(cos) + akq * sp.conj();
                    a[k][q] = akq.scale(cos) - akp * sp;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk.scale(cos) + aqk * sp;
                    a[q][k] = aqk.scale(cos) - apk * sp.conj();
                }
                a[p][q] = C64::ZERO;
                a[q][p] = C64::ZERO;
                a[p][p] = c(a[p][p].re, 0.0);
                a[q][q] = c(a[q][q].re, 0.0);

                for k in 0..4 {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp.scale(cos) + vkq * sp.conj();
                    v[k][q] = vkq.scale(cos) - vkp * sp;
                }
            }
        }
        converged = off_norm(&a) <= target;
    }

    if !converged {
        let off = off_norm(&a);
        if off > target {
            return Err(LinalgError::NoConvergence { off_norm: off });
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].re.partial_cmp(&a[j][j].re).unwrap());
    let vals = [
        a[order[0]][order[0]].re,
        a[order[1]][order[1]].re,
        a[order[2]][order[2]].re,
        a[order[3]][order[3]].re,
    ];
    let mut vectors = CMat4::zero();
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..4 {
            vectors.0[row][new_col] = v[row][old_col];
        }
    }
    Ok((vals, vectors))
}

/// Whether the Hermitian matrix has no eigenvalue below `-tol`.
pub fn is_psd2(m: &CMat2, tol: f64) -> Result<bool, LinalgError> {
    let (lo, _) = eig_hermitian2(m)?;
    Ok(lo >= -tol)
}

/// Whether the Hermitian matrix has no eigenvalue below `-tol`.
pub fn is_psd4(m: &CMat4, tol: f64) -> Result<bool, LinalgError> {
    let vals = eig_hermitian4(m)?;
    Ok(vals[0] >= -tol)
}

/// Moore–Penrose pseudoinverse of a diagonal 2×2 matrix with non-negative real
/// entries: d ↦ 1/d for d > tol, d ↦ 0 otherwise.
pub fn pinv_diag2(m: &CMat2, tol: f64) -> Result<CMat2, LinalgError> {
    let off = m.0[0][1].norm().max(m.0[1][0].norm());
    if off > PINV_TOL {
        return Err(LinalgError::NotDiagonal { deviation: off });
    }
    let inv = |d: C64| {
        if d.re > tol {
            c(1.0 / d.re, 0.0)
        } else {
            C64::ZERO
        }
    };
    Ok(CMat2::diag(inv(m.0[0][0]), inv(m.0[1][1])))
}
