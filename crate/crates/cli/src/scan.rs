//! Region scans and surface meshes as CSV, consumable by any plotting tool.
//!
//! Class codes are nested by the hierarchy: `CP` ⊂ `S` ⊂ `P`, with `N` for
//! maps outside the positivity region; each cell carries its most specific
//! code. Grids include both endpoints, so a grid of N covers the axis with
//! cell width range/(N-1).

use std::io::{self, Write};

use qmap_core::classify::{classify, Classification};
use qmap_core::map::MapParams;
use qmap_core::pauli::{classify_pauli, schwarz_boundary_lambda3, to_eigenvalues, PauliParams};
use qmap_core::C64;

/// Most specific region code for a classification.
pub fn region_code(c: &Classification) -> &'static str {
    if c.completely_positive {
        "CP"
    } else if c.schwarz {
        "S"
    } else if c.positive {
        "P"
    } else {
        "N"
    }
}

/// Classify the unital map with couplings (|λ|, |μ|) = (lambda, mu).
pub fn coupling_cell(a: f64, b: f64, lambda: f64, mu: f64) -> &'static str {
    let p = MapParams::unital(a, b, C64::new(lambda, 0.0), C64::new(mu, 0.0));
    region_code(&classify(&p))
}

/// CSV rows `lambda,mu,class` over [0, lambda_max] × [0, mu_max].
pub fn write_coupling_plane<W: Write>(
    out: &mut W,
    a: f64,
    b: f64,
    grid: usize,
    lambda_max: f64,
    mu_max: f64,
) -> io::Result<()> {
    writeln!(out, "lambda,mu,class")?;
    let steps = (grid - 1) as f64;
    for j in 0..grid {
        let mu = mu_max * j as f64 / steps;
        for i in 0..grid {
            let lambda = lambda_max * i as f64 / steps;
            writeln!(out, "{lambda},{mu},{}", coupling_cell(a, b, lambda, mu))?;
        }
    }
    Ok(())
}

/// The (p0, p1) window that contains the whole positive region of the fixed-a
/// Pauli slice: |λ₁| ≤ 1 gives p0+p1 ∈ [0, 1] and |λ₂| ≤ 1 gives
/// p0-p1 ∈ [a-1, a].
pub fn pauli_plane_window(a: f64) -> ((f64, f64), (f64, f64)) {
    (
        ((a - 1.0) / 2.0, (a + 1.0) / 2.0),
        (-a / 2.0, 1.0 - a / 2.0),
    )
}

/// Classify the Pauli map with coefficients (p0, p1, 1-a-p1, a-p0).
pub fn pauli_cell(a: f64, p0: f64, p1: f64) -> &'static str {
    let p = PauliParams([p0, p1, 1.0 - a - p1, a - p0]);
    let lam = to_eigenvalues(&p).expect("slice coefficients sum to one");
    region_code(&classify_pauli(&lam))
}

/// CSV rows `p0,p1,class` over the positive-region window of the fixed-a
/// slice.
pub fn write_pauli_plane<W: Write>(out: &mut W, a: f64, grid: usize) -> io::Result<()> {
    writeln!(out, "p0,p1,class")?;
    let ((p0_lo, p0_hi), (p1_lo, p1_hi)) = pauli_plane_window(a);
    let steps = (grid - 1) as f64;
    for j in 0..grid {
        let p1 = p1_lo + (p1_hi - p1_lo) * j as f64 / steps;
        for i in 0..grid {
            let p0 = p0_lo + (p0_hi - p0_lo) * i as f64 / steps;
            writeln!(out, "{p0},{p1},{}", pauli_cell(a, p0, p1))?;
        }
    }
    Ok(())
}

/// CSV rows `lambda1,lambda2,lambda3_plus,lambda3_minus` sampling both
/// branches of the Schwarz boundary surface on a uniform grid of [-1, 1]².
pub fn write_surface_mesh<W: Write>(out: &mut W, grid: usize) -> io::Result<()> {
    writeln!(out, "lambda1,lambda2,lambda3_plus,lambda3_minus")?;
    let steps = (grid - 1) as f64;
    for j in 0..grid {
        let l2 = -1.0 + 2.0 * j as f64 / steps;
        for i in 0..grid {
            let l1 = -1.0 + 2.0 * i as f64 / steps;
            let (plus, minus) =
                schwarz_boundary_lambda3(l1, l2).expect("grid stays inside [-1, 1]");
            writeln!(out, "{l1},{l2},{plus},{minus}")?;
        }
    }
    Ok(())
}

/// The four vertices of the Fujiwara-Algoet tetrahedron, which lie on the
/// Schwarz boundary surface.
pub const TETRAHEDRON_VERTICES: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
];

/// CSV rows `lambda1,lambda2,lambda3`, one per tetrahedron vertex.
pub fn write_tetrahedron_vertices<W: Write>(out: &mut W) -> io::Result<()> {
    writeln!(out, "lambda1,lambda2,lambda3")?;
    for v in TETRAHEDRON_VERTICES {
        writeln!(out, "{},{},{}", v[0], v[1], v[2])?;
    }
    Ok(())
}
