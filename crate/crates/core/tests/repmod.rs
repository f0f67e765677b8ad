use heckekernel::heckealg::{equal_labels, HeckeAlgebra};
use heckekernel::linalg::{self, eye};
use heckekernel::repmod::*;
use heckekernel::rootdata::Parabolic;
use heckekernel::torus::TorusPoint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ps(alg: &HeckeAlgebra, t: &TorusPoint, q: f64) -> Induced {
    let triv = alg.lower_algebra(&Parabolic::empty()).unwrap();
    let one = trivial_rep(&triv.alg, q).unwrap();
    principal_series(alg, &triv, &one, t).unwrap()
}

#[test]
fn principal_series_unitary_at_unitary_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["A1-sc", "A1-adj", "A2", "B2", "GL2"] {
        let alg = HeckeAlgebra::preset(name, &equal_labels(1)).unwrap();
        let t = TorusPoint::random_unitary(alg.rank(), &mut rng);
        let p = ps(&alg, &t, 2.0);
        println!("{name} defect {:e}", p.rep.unitarity_defect(&alg));
        let wd = weights(&p.rep, Some(&p.predicted_weights(&alg))).unwrap();
        assert!(wd.deviation < 1e-8, "{name} {}", wd.deviation);
        let found = weights(&p.rep, None).unwrap();
        assert_eq!(found.weights.len(), wd.weights.len());
    }
}

#[test]
fn right_intertwiners_are_unitary_and_intertwine() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["A1-sc", "A1-adj", "A2", "B2"] {
        let alg = HeckeAlgebra::preset(name, &equal_labels(1)).unwrap();
        let fin = alg.weyl().finite();
        let q = 2.0;
        let t = TorusPoint::random_unitary(alg.rank(), &mut rng);
        let p = ps(&alg, &t, q);
        for i in 0..alg.datum().num_simple() {
            let st = t.act(fin, fin.simple(i));
            let pst = ps(&alg, &st, q);
            let j = right_intertwiner(&alg, &t, i, q).unwrap();
            let back = right_intertwiner(&alg, &st, i, q).unwrap();
            let n = j.nrows();
            for k in 0..alg.datum().num_simple() {
                assert!(linalg::rel_diff(&(&j * &p.rep.ns[k]), &(&pst.rep.ns[k] * &j)) < 1e-12);
            }
            for k in 0..alg.rank() {
                assert!(linalg::rel_diff(&(&j * &p.rep.theta[k]), &(&pst.rep.theta[k] * &j)) < 1e-12);
            }
            assert!(linalg::max_abs(&(j.adjoint() * &j - eye(n))) < 1e-12);
            assert!(linalg::max_abs(&(&back * &j - eye(n))) < 1e-12);
            let m = left_intertwiner(&alg, &p, i).unwrap();
            assert!(linalg::max_abs(&(&m * &m - eye(n))) < 1e-12);
        }
    }
}

#[test]
fn right_intertwiners_satisfy_braid_relation() {
    let alg = HeckeAlgebra::preset("A2", &equal_labels(1)).unwrap();
    let t = TorusPoint::from_angles(&[0.4, -1.1]);
    let a = right_intertwiner_word(&alg, &t, &[0, 1, 0], 3.0).unwrap();
    let b = right_intertwiner_word(&alg, &t, &[1, 0, 1], 3.0).unwrap();
    assert!(linalg::rel_diff(&a, &b) < 1e-12);
}

#[test]
fn singular_normalization_is_reported() {
    let alg = HeckeAlgebra::preset("A1-sc", &equal_labels(1)).unwrap();
    // n_α(t) = q − t(−α) vanishes when α(t) = 1/q
    let t = TorusPoint(vec![heckekernel::linalg::c(0.5f64.sqrt())]);
    assert!(matches!(right_intertwiner(&alg, &t, 0, 2.0), Err(RepError::SingularNormalization)));
}

#[test]
fn steinberg_is_discrete_series() {
    for name in ["A1-sc", "A1-adj", "A2", "B2"] {
        let alg = HeckeAlgebra::preset(name, &equal_labels(1)).unwrap();
        for chi in omega_characters(&alg) {
            let st = steinberg(&alg, 3.0, &chi).unwrap();
            let v = casselman_check(alg.datum(), &weights(&st, None).unwrap());
            assert!(v.tempered && v.discrete_series, "{name}");
            assert!(st.unitarity_defect(&alg) < 1e-12);
        }
    }
}

#[test]
fn trivial_character_is_not_tempered() {
    let alg = HeckeAlgebra::preset("A2", &equal_labels(1)).unwrap();
    let q: f64 = 2.0;
    let d = alg.datum();
    let ns = (0..2).map(|_| heckekernel::linalg::CMat::from_element(1, 1, heckekernel::linalg::c(q.sqrt()))).collect();
    // weight q^ρ∨ paired with the weight lattice basis
    let theta = (0..2).map(|_| heckekernel::linalg::CMat::from_element(1, 1, heckekernel::linalg::c(q))).collect();
    let triv = FinRep::new(&alg, q, ns, theta).unwrap();
    let v = casselman_check(d, &weights(&triv, None).unwrap());
    assert!(!v.tempered);
    let (_, x, abs) = &v.witnesses[0];
    assert!(d.is_dominant(x) && *abs > 1.0);
}

#[test]
fn relation_violation_is_detected() {
    let alg = HeckeAlgebra::preset("A1-sc", &equal_labels(1)).unwrap();
    let one = || heckekernel::linalg::CMat::from_element(1, 1, heckekernel::linalg::c(1.0));
    assert!(matches!(FinRep::new(&alg, 2.0, vec![one()], vec![one()]), Err(RepError::RelationFailed(..))));
}

#[test]
fn steinberg_induced_weights_and_verdict() {
    let alg = HeckeAlgebra::preset("A2", &equal_labels(1)).unwrap();
    let p = Parabolic::new(vec![0]);
    let lower = alg.lower_algebra(&p).unwrap();
    let st = steinberg(&lower.alg, 2.0, &omega_characters(&lower.alg)[0]).unwrap();
    let tp = lift_twist(&lower, &TorusPoint::from_angles(&[0.3]));
    let ind = induce(&alg, &lower, &st, &tp).unwrap();
    assert_eq!(ind.rep.dim, 3);
    let wd = weights(&ind.rep, Some(&ind.predicted_weights(&alg))).unwrap();
    assert!(wd.deviation < 1e-9);
    let found = weights(&ind.rep, None).unwrap();
    for w in &found.weights {
        assert!(wd.weights.iter().any(|u| u.t.dist(&w.t) < 1e-6));
    }
    let v = casselman_check(alg.datum(), &wd);
    assert!(v.tempered && !v.discrete_series);
    assert!(ind.rep.unitarity_defect(&alg) < 1e-10);

    let bad = TorusPoint::from_angles(&[0.3, 0.2]);
    assert!(matches!(induce(&alg, &lower, &st, &bad), Err(RepError::BadTwist)));
}

#[test]
fn exponents_reproduce_coefficients() {
    let alg = HeckeAlgebra::preset("B2", &equal_labels(1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = TorusPoint(vec![heckekernel::linalg::c(2.0), heckekernel::linalg::c(0.5)]);
    let p = ps(&alg, &t, 2.0);
    let wd = weights(&p.rep, None).unwrap();
    let a = random_vector(p.rep.dim, &mut rng);
    let b = random_vector(p.rep.dim, &mut rng);
    let terms = exponent_expansion(&p.rep, &wd, &a, &b);
    for x in [vec![0, 0], vec![1, 0], vec![2, -1], vec![-3, 2]] {
        let direct = coefficient(&a, &p.rep.theta_x(&x), &b);
        let sum: num_complex::Complex64 = terms.iter().map(|e| e.eval(&x) * e.t.eval(&x)).sum();
        assert!((direct - sum).norm() < 1e-9 * (1.0 + direct.norm()));
    }
}
