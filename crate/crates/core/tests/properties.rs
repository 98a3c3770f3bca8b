//! Property tests over randomly generated maps and operators.

use proptest::prelude::*;

use qmap_core::classify::classify;
use qmap_core::linalg::CMat4;
use qmap_core::map::{from_choi, MapParams};
use qmap_core::pauli::{from_eigenvalues, to_eigenvalues, PauliEigenvalues};
use qmap_core::{CMat2, C64};

fn complex(radius: f64) -> impl Strategy<Value = C64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| C64::new(re, im))
}

fn map_params() -> impl Strategy<Value = MapParams> {
    (
        [-0.5..1.5f64, -0.5..1.5, -0.5..1.5, -0.5..1.5],
        complex(1.5),
        complex(1.5),
    )
        .prop_map(|(a, lambda, mu)| MapParams::new([[a[0], a[1]], [a[2], a[3]]], lambda, mu))
}

fn valid_map_params() -> impl Strategy<Value = MapParams> {
    (
        [0.0..1.0f64, 0.0..1.0, 0.0..1.0, 0.0..1.0],
        complex(1.2),
        complex(1.2),
    )
        .prop_map(|(a, lambda, mu)| MapParams::new([[a[0], a[1]], [a[2], a[3]]], lambda, mu))
}

fn cmat4() -> impl Strategy<Value = CMat4> {
    proptest::collection::vec(complex(2.0), 16).prop_map(|v| {
        let mut m = CMat4::zero();
        for (k, z) in v.into_iter().enumerate() {
            m.0[k / 4][k % 4] = z;
        }
        m
    })
}

fn cmat2(radius: f64) -> impl Strategy<Value = CMat2> {
    proptest::collection::vec(complex(radius), 4)
        .prop_map(move |v| CMat2([[v[0], v[1]], [v[2], v[3]]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// Reading the Choi matrix back recovers the exact parameters.
    #[test]
    fn choi_round_trips(p in map_params()) {
        let back = from_choi(&p.choi().m).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    /// Partial transposition of the second factor is an involution and
    /// preserves the trace exactly.
    #[test]
    fn partial_transpose_involution(m in cmat4()) {
        let g = m.partial_transpose();
        prop_assert_eq!(g.partial_transpose(), m);
        prop_assert_eq!(g.trace(), m.trace());
    }

    /// The map acts linearly and preserves Hermitian adjoints.
    #[test]
    fn apply_is_linear_and_hermiticity_preserving(
        p in map_params(),
        x in cmat2(2.0),
        y in cmat2(2.0),
        alpha in complex(2.0),
        beta in complex(2.0),
    ) {
        let combined = p.apply(&(x.scaled_c(alpha) + y.scaled_c(beta)));
        let separate = p.apply(&x).scaled_c(alpha) + p.apply(&y).scaled_c(beta);
        prop_assert!(combined.max_abs_diff(&separate) <= 1e-12);
        prop_assert!(p.apply(&x.adjoint()).max_abs_diff(&p.apply(&x).adjoint()) <= 1e-12);
    }

    /// Taking the dual twice returns the original parameters.
    #[test]
    fn dual_is_involutive(p in map_params()) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    /// Every verdict depends on λ and μ only through their moduli.
    #[test]
    fn verdicts_are_phase_invariant(p in valid_map_params()) {
        let reduced = classify(&p.abs_reduction());
        let full = classify(&p);
        prop_assert_eq!(full.positive, reduced.positive);
        prop_assert_eq!(full.schwarz, reduced.schwarz);
        prop_assert_eq!(full.completely_positive, reduced.completely_positive);
    }

    /// Canonical JSON round-trips bit-exactly.
    #[test]
    fn json_round_trips(p in map_params()) {
        let back = MapParams::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Eigenvalue and coefficient pictures are inverse to 1e-14.
    #[test]
    fn pauli_pictures_round_trip(l1 in -1.3..1.3f64, l2 in -1.3..1.3f64, l3 in -1.3..1.3f64) {
        let lam = PauliEigenvalues([l1, l2, l3]);
        let back = to_eigenvalues(&from_eigenvalues(&lam)).unwrap();
        for k in 0..3 {
            prop_assert!((back.0[k] - lam.0[k]).abs() <= 1e-14);
        }
    }
}
