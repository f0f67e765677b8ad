use heckekernel::harmonic::*;
use heckekernel::heckealg::{equal_labels, HeckeAlgebra};
use heckekernel::linalg::c;
use heckekernel::repmod;
use heckekernel::rootdata::Parabolic;
use heckekernel::torus::TorusPoint;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a2() -> HeckeAlgebra {
    HeckeAlgebra::preset("A2", &equal_labels(1)).unwrap()
}

fn steinberg_induced(alg: &HeckeAlgebra, angle: f64) -> repmod::Induced {
    let lower = alg.lower_algebra(&Parabolic::new(vec![0])).unwrap();
    let st = repmod::steinberg(&lower.alg, 2.0, &repmod::omega_characters(&lower.alg)[0]).unwrap();
    let tp = repmod::lift_twist(&lower, &TorusPoint::from_angles(&[angle]));
    repmod::induce(alg, &lower, &st, &tp).unwrap()
}

#[test]
fn factorization_through_levi() {
    let alg = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for qi in [0usize, 1] {
        let t = generic_unitary(&alg, 2.0, &mut rng);
        let r = factorization_check(&alg, &Parabolic::new(vec![qi]), &t, 2.0, 5, &mut rng).unwrap();
        assert!(r.max_discrepancy < 1e-9, "{}", r.max_discrepancy);
        assert!(r.max_control > 1e-2);
    }
}

#[test]
fn factorization_rejects_singular_points() {
    let alg = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = TorusPoint::trivial(2);
    assert!(factorization_check(&alg, &Parabolic::new(vec![0]), &t, 2.0, 1, &mut rng).is_err());
}

#[test]
fn class_sum_matches_spectral_constant_term() {
    let alg = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ind = steinberg_induced(&alg, 0.9);
    let wd = repmod::weights(&ind.rep, Some(&ind.predicted_weights(&alg))).unwrap();
    for q in Parabolic::all_subsets(2) {
        let a = repmod::random_vector(3, &mut rng);
        let x = repmod::constant_term_vector(alg.datum(), &wd, &a, &q).unwrap();
        let y = repmod::class_sum_vector(&alg, &ind, &wd, &a, &q);
        assert!((x - y).camax() < 1e-9);
    }
}

#[test]
fn constant_term_properties() {
    let alg = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ind = steinberg_induced(&alg, -0.4);
    let wd = repmod::weights(&ind.rep, Some(&ind.predicted_weights(&alg))).unwrap();
    let a = repmod::random_vector(3, &mut rng);
    let full = Parabolic::full(2);
    let aq = repmod::constant_term_vector(alg.datum(), &wd, &a, &full).unwrap();
    assert!((&aq - &a).camax() < 1e-10);
    let q = Parabolic::new(vec![1]);
    let once = repmod::constant_term_vector(alg.datum(), &wd, &a, &q).unwrap();
    let twice = repmod::constant_term_vector(alg.datum(), &wd, &once, &q).unwrap();
    assert!((&once - &twice).camax() < 1e-10);

    // Steinberg coefficients have no constant term along proper Q
    let st = repmod::steinberg(&alg, 2.0, &repmod::omega_characters(&alg)[0]).unwrap();
    let swd = repmod::weights(&st, None).unwrap();
    let one = heckekernel::linalg::CVec::from_element(1, c(1.0));
    for q in Parabolic::all_subsets(2).into_iter().filter(|q| q.len() < 2) {
        assert!(repmod::constant_term_vector(alg.datum(), &swd, &one, &q).unwrap().camax() < 1e-12);
    }
}

#[test]
fn non_tempered_constant_term_rejected() {
    let alg = a2();
    let ps = PrincipalSeries::new(&alg, 2.0).unwrap();
    let pi = ps.at(&TorusPoint(vec![c(3.0), c(1.0)])).unwrap();
    let wd = repmod::weights(&pi.rep, None).unwrap();
    let a = heckekernel::linalg::CVec::from_element(6, c(1.0));
    assert!(repmod::constant_term_vector(alg.datum(), &wd, &a, &Parabolic::empty()).is_err());
}

#[test]
fn decay_along_rays() {
    let alg = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ind = steinberg_induced(&alg, 0.7);
    let wd = repmod::weights(&ind.rep, Some(&ind.predicted_weights(&alg))).unwrap();
    let a = repmod::random_vector(3, &mut rng);
    let b = repmod::random_vector(3, &mut rng);
    let rays = decay_rays(&alg, 0, 3);
    assert_eq!(rays.len(), 3);
    for x0 in rays {
        match cterm_decay_probe(&alg, &ind.rep, &wd, 0, &a, &b, &x0, 0.1, 12).unwrap() {
            Decay::Rate { b_hat, .. } => assert!(b_hat > 0.0),
            other => panic!("{other:?}"),
        }
    }
    let inside = cterm_decay_probe(&alg, &ind.rep, &wd, 0, &a, &b, &[0, 1], 0.1, 12).unwrap();
    assert!(matches!(inside, Decay::NotApplicable(_)));
}

#[test]
fn growth_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A1-sc", "A2"] {
        let alg = HeckeAlgebra::preset(name, &equal_labels(1)).unwrap();
        let ps = PrincipalSeries::new(&alg, 2.0).unwrap();
        let n = alg.weyl().finite().order();
        let a = repmod::random_vector(n, &mut rng);
        let b = repmod::random_vector(n, &mut rng);
        let t = generic_unitary(&alg, 2.0, &mut rng);
        let g = growth_probe(&alg, &ps.at(&t).unwrap().rep, &a, &b, 14);
        assert!(matches!(g.verdict, Growth::Polynomial(_)), "{name} {}", g.verdict);
        // |α(t)| = 1.5 q^{1/2}
        let big = TorusPoint(vec![c(1.5 * 2f64.sqrt()); alg.rank()]);
        let g = growth_probe(&alg, &ps.at(&big).unwrap().rep, &a, &b, 14);
        assert!(matches!(g.verdict, Growth::Exponential(_)), "{name} {}", g.verdict);
        let zero = heckekernel::linalg::CVec::zeros(n);
        assert_eq!(growth_probe(&alg, &ps.at(&t).unwrap().rep, &zero, &b, 6).verdict, Growth::Flat);
    }
}

#[test]
fn plancherel_inversion_a1() {
    for name in ["A1-sc", "A1-adj"] {
        let alg = HeckeAlgebra::preset(name, &equal_labels(1)).unwrap();
        let r = plancherel_invert_rank1(&alg, 2.0, 512, 10).unwrap();
        assert!(r.mass > 0.0);
        assert!(r.rows.len() >= 21);
        assert!(r.max_residual < 1e-10, "{name} {}", r.max_residual);
    }
    let a2 = a2();
    assert!(plancherel_invert_rank1(&a2, 2.0, 64, 2).is_err());
}

#[test]
fn density_properties() {
    let alg = HeckeAlgebra::preset("A1-sc", &equal_labels(1)).unwrap();
    let cf = heckekernel::cfun::CFunction::new(&alg);
    let e = Parabolic::empty();
    assert_eq!(plancherel_density(&alg, &cf, &TorusPoint::trivial(1), 2.0, &e, 2, 1.0).unwrap(), 0.0);
    let g = QuadratureGrid::new(1, 1024);
    for k in 0..g.len() {
        let t = g.point(k);
        let d = plancherel_density(&alg, &cf, &t, 2.0, &e, 2, 1.0).unwrap();
        let di = plancherel_density(&alg, &cf, &t.inverse(), 2.0, &e, 2, 1.0).unwrap();
        assert!(d > 0.0 && (d - di).abs() < 1e-12 * (1.0 + d));
    }
}

#[test]
fn wave_packet_identity_section() {
    let alg = HeckeAlgebra::preset("A1-sc", &equal_labels(1)).unwrap();
    let ps = PrincipalSeries::new(&alg, 2.0).unwrap();
    let cf = heckekernel::cfun::CFunction::new(&alg);
    let h = alg.one();
    let grid = QuadratureGrid::new(1, 64);
    let id = |_: &TorusPoint| heckekernel::linalg::eye(2);
    let w = wave_packet(&ps, &cf, &id, &h, &grid).unwrap();
    let roots = alg.datum().positive_roots();
    let direct = grid.integrate(|t| c(2.0) / cf.eval(t, 2.0, &roots).unwrap());
    assert!((w - direct).norm() < 1e-12);
    let zero = |_: &TorusPoint| heckekernel::linalg::CMat::zeros(2, 2);
    assert_eq!(wave_packet(&ps, &cf, &zero, &h, &grid).unwrap(), Complex64::new(0.0, 0.0));
    let (_, delta) = wave_packet_refined(&ps, &cf, &id, &h, 1, 128).unwrap();
    assert!(delta < 1e-10);
}
