use heckekernel::linalg::{self, eye, CMat};
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(p: usize, diag: &[(f64, f64)], upper: &[(f64, f64)], conj: &[(f64, f64)]) -> CMat {
    let mut t = CMat::zeros(p, p);
    let mut k = 0;
    for i in 0..p {
        t[(i, i)] = Complex64::from_polar(diag[i].0, diag[i].1);
        for j in i + 1..p {
            t[(i, j)] = Complex64::new(upper[k].0, upper[k].1);
            k += 1;
        }
    }
    let s = eye(p) + CMat::from_fn(p, p, |i, j| Complex64::new(conj[i * p + j].0, conj[i * p + j].1));
    let si = s.clone().try_inverse().unwrap();
    s * t * si
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_identities(
        p in 1usize..=6,
        radii in proptest::collection::vec(prop_oneof![Just(1.0), 0.0f64..0.7], 6),
        phases in proptest::collection::vec(0.0f64..6.28, 6),
        upper in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 15),
        conj in proptest::collection::vec((-0.3f64..0.3, -0.3f64..0.3), 36),
    ) {
        let diag: Vec<(f64, f64)> = radii.iter().zip(&phases).map(|(r, f)| (*r, *f)).collect();
        let a = matrix(p, &diag, &upper, &conj);
        let s = linalg::spectral_split(&a, 0.3).unwrap();
        prop_assert!(linalg::max_abs(&(&s.p1 + &s.p_lt1 - eye(p))) < 1e-12);
        prop_assert!(linalg::max_abs(&(&s.p_lt1 * &s.p_lt1 - &s.p_lt1)) < 1e-8);
        prop_assert!(linalg::max_abs(&(&s.p_lt1 * &a - &a * &s.p_lt1)) < 1e-8);
        let inside = radii[..p].iter().filter(|r| **r < 1.0).count();
        prop_assert!((s.p_lt1.trace().re - inside as f64).abs() < 1e-8);
    }
}

#[test]
fn gap_violation() {
    let a = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![Complex64::new(0.9, 0.0), Complex64::new(1.0, 0.0)]));
    assert!(linalg::spectral_split(&a, 0.2).is_err());
}
