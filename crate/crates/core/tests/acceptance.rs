//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//! Runs without the libtest harness so the lines always reach stdout and the
//! timed criteria run alone.

use std::time::Instant;

use heckekernel::cfun::{sign_vectors, CFunction, ExactPoint};
use heckekernel::harmonic::{self, Decay, Growth, PrincipalSeries, QuadratureGrid};
use heckekernel::heckealg::{equal_labels, AElt, BForm, HeckeAlgebra, LabelSpec, NForm};
use heckekernel::lattice;
use heckekernel::laurent::Laurent;
use heckekernel::linalg::{self, c, eye, CMat, CVec};
use heckekernel::repmod::{self, Induced};
use heckekernel::rootdata::Parabolic;
use heckekernel::torus::TorusPoint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: f64 = 2.0;
const PRESETS: [&str; 4] = ["A1-sc", "A1-adj", "A2", "B2"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn labels(pairs: &[(&str, i64)]) -> LabelSpec {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn alg(name: &str) -> HeckeAlgebra {
    HeckeAlgebra::preset(name, &equal_labels(1)).unwrap()
}

/// Equal-label presets plus `B2` with `f_long = 2`.
fn closure_algebras() -> Vec<(String, HeckeAlgebra)> {
    let mut v: Vec<(String, HeckeAlgebra)> = PRESETS.iter().map(|p| (p.to_string(), alg(p))).collect();
    v.push(("B2(f_long=2)".into(), HeckeAlgebra::preset("B2", &labels(&[("long", 2), ("short", 1)])).unwrap()));
    v
}

fn random_element(a: &HeckeAlgebra, ball: &[(heckekernel::weyl::WeylElt, Rational64)], rng: &mut ChaCha8Rng) -> NForm {
    let mut h = NForm::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = ball[rng.gen_range(0..ball.len())].0.clone();
        let coef = Laurent::v_pow(rng.gen_range(-2..=2)).scale(&num_rational::BigRational::from_integer(rng.gen_range(-3i64..=3).into()));
        h = h.add(&NForm::term(w, coef));
    }
    let _ = a;
    h
}

// 1
fn algebra_closure() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let algs = closure_algebras();
    let per = 200 / algs.len();
    let (mut products, mut bad_assoc, mut bad_round) = (0, 0, 0);
    for (_, a) in &algs {
        let ball = a.weyl().ball(2);
        for _ in 0..per {
            let x = random_element(a, &ball, &mut rng);
            let y = random_element(a, &ball, &mut rng);
            let z = random_element(a, &ball, &mut rng);
            let xy = a.nmul(&x, &y);
            if a.nmul(&xy, &z) != a.nmul(&x, &a.nmul(&y, &z)) {
                bad_assoc += 1;
            }
            let bx = a.nform_to_bform(&x);
            let by = a.nform_to_bform(&y);
            if a.bform_to_nform(&bx) != x || a.nform_to_bform(&xy) != a.bmul(&bx, &by) || a.to_left(&a.to_right(&bx)) != bx {
                bad_round += 1;
            }
            products += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad_assoc == 0 && bad_round == 0 && products >= 200 && secs < 60.0,
        format!("{products} triples over {} algebras, associativity failures {bad_assoc}, round-trip failures {bad_round}, {secs:.2} s (< 60 s)", algs.len()),
    )
}

fn simple_n(a: &HeckeAlgebra, k: usize) -> NForm {
    NForm::basis(a.weyl().simple_elt(k))
}

/// `(θ_x − θ_{x−mγ}) / (1 − θ_{−γ})` expanded as a geometric series.
fn divided(x: &[i64], gamma: &[i64], m: i64) -> Vec<(lattice::IVec, i64)> {
    if m >= 0 {
        (0..m).map(|j| (lattice::sub(x, &lattice::scale(j, gamma)), 1)).collect()
    } else {
        (1..=-m).map(|j| (lattice::add(x, &lattice::scale(j, gamma)), -1)).collect()
    }
}

// 2
fn relation_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut algs = closure_algebras();
    algs.push(("A1-adj(f0=2,f1=1)".into(), HeckeAlgebra::preset("A1-adj", &labels(&[("s0", 2), ("s1", 1)])).unwrap()));
    algs.push(("GL2".into(), alg("GL2")));
    let mut fails: Vec<String> = Vec::new();
    let (mut checks, mut doubled, mut plain) = (0usize, 0usize, 0usize);
    for (name, a) in &algs {
        let w = a.weyl();
        let d = a.datum();
        let fin = w.finite();
        let na = w.num_affine_simple();
        for k in 0..na {
            let s = simple_n(a, k);
            let f = a.labels().f(k);
            checks += 1;
            if a.nmul(&s, &s) != a.one().add(&s.scale(&Laurent::quad(f))) {
                fails.push(format!("{name}: quadratic s{k}"));
            }
        }
        for k in 0..na {
            for l in k + 1..na {
                let (sk, sl) = (w.simple_elt(k), w.simple_elt(l));
                let mut prod = w.identity();
                let m = (1..=6).find(|_| {
                    prod = w.mul(&w.mul(&prod, &sk), &sl);
                    w.is_identity(&prod)
                });
                let Some(m) = m else { continue };
                let braid = |first: usize, second: usize| {
                    (0..m).fold(a.one(), |h, j| a.nmul(&h, &simple_n(a, if j % 2 == 0 { first } else { second })))
                };
                checks += 1;
                if braid(k, l) != braid(l, k) {
                    fails.push(format!("{name}: braid s{k} s{l}"));
                }
            }
        }
        for i in 0..d.num_simple() {
            let j = d.simple_root_index(i);
            let alpha = d.root(j);
            let s = fin.simple(i);
            let ns = simple_n(a, i);
            let (f1, f0) = (a.labels().f1(j), a.labels().f0(j));
            for _ in 0..6 {
                let x: Vec<i64> = (0..a.rank()).map(|_| rng.gen_range(-3..=3)).collect();
                let sx = fin.act(s, &x);
                let lhs = a.nmul(&a.theta(&x), &ns).sub(&a.nmul(&ns, &a.theta(&sx)));
                let k = d.pairing(&x, j);
                let mut rhs = NForm::zero();
                if d.doubles(j) {
                    doubled += 1;
                    let g = lattice::scale(2, alpha);
                    for (y, sign) in divided(&x, &g, k / 2) {
                        let cst = Laurent::int(sign);
                        rhs = rhs.add(&a.theta(&y).scale(&(&cst * &Laurent::quad(f1))));
                        rhs = rhs.add(&a.theta(&lattice::sub(&y, alpha)).scale(&(&cst * &Laurent::quad(f0))));
                    }
                } else {
                    plain += 1;
                    for (y, sign) in divided(&x, alpha, k) {
                        rhs = rhs.add(&a.theta(&y).scale(&(&Laurent::int(sign) * &Laurent::quad(f1))));
                    }
                }
                checks += 1;
                if lhs != rhs {
                    fails.push(format!("{name}: cross relation at {x:?}"));
                }
                let iota = a.intertwiner(i);
                checks += 1;
                if a.bmul(&iota, &BForm::theta(x.clone())) != a.bmul(&BForm::theta(sx.clone()), &iota) {
                    fails.push(format!("{name}: ι_s θ_x ≠ θ_sx ι_s"));
                }
            }
            let iota = a.intertwiner(i);
            let n = a.n_alpha(i);
            checks += 1;
            if a.bmul(&iota, &iota) != BForm::single(0, n.mul(&n.act(fin, s))) {
                fails.push(format!("{name}: ι_s² ≠ n_α s(n_α)"));
            }
        }
        let ball = w.ball(2);
        for _ in 0..10 {
            let x = random_element(a, &ball, &mut rng);
            let y = random_element(a, &ball, &mut rng);
            checks += 1;
            if a.trace(&a.nmul(&x, &y)) != a.trace(&a.nmul(&y, &x)) {
                fails.push(format!("{name}: τ(xy) ≠ τ(yx)"));
            }
        }
        let small = w.ball(1);
        for (u, _) in &small {
            for (v, _) in &small {
                let want = if u == v { Laurent::one() } else { Laurent::zero() };
                checks += 1;
                if a.inner(&NForm::basis(u.clone()), &NForm::basis(v.clone())) != want {
                    fails.push(format!("{name}: (N_u, N_v)"));
                }
            }
        }
    }
    let _ = AElt::zero();
    outcome(
        fails.is_empty() && doubled > 0 && plain > 0,
        format!(
            "{checks} exact identities on {} algebras (cross relation: {plain} reduced, {doubled} doubled cases), nonzero discrepancies {}{}",
            algs.len(),
            fails.len(),
            fails.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

// 3
fn center() -> Outcome {
    let mut checked = 0;
    let mut fails = Vec::new();
    for (name, a) in closure_algebras() {
        let d = a.datum();
        let w = a.weyl();
        let mut xs: Vec<lattice::IVec> = repmod::dominant_points(d, 10).into_iter().filter(|x| w.translation_norm(x) <= Rational64::from(4)).collect();
        xs.push(vec![0; a.rank()]);
        for x in xs {
            checked += 1;
            if let Err(e) = a.is_central(&a.orbit_sum(&x)) {
                fails.push(format!("{name} {x:?}: {e:?}"));
            }
        }
    }
    outcome(fails.is_empty() && checked > 0, format!("{checked} orbit sums with norm ≤ 4 central, failures {}", fails.len()))
}

fn principal(a: &HeckeAlgebra, t: &TorusPoint) -> Induced {
    PrincipalSeries::new(a, Q).unwrap().at(t).unwrap()
}

// 4
fn intertwiners() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let (mut sq, mut unit, mut inter, mut left_sq) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for name in PRESETS {
        let a = alg(name);
        let fin = a.weyl().finite();
        for _ in 0..20 {
            let t = harmonic::generic_unitary(&a, Q, &mut rng);
            let p = principal(&a, &t);
            for i in 0..a.datum().num_simple() {
                let st = t.act(fin, fin.simple(i));
                let j = repmod::right_intertwiner(&a, &t, i, Q).unwrap();
                let back = repmod::right_intertwiner(&a, &st, i, Q).unwrap();
                let n = j.nrows();
                sq = sq.max(linalg::max_abs(&(&back * &j - eye(n))));
                unit = unit.max(linalg::max_abs(&(j.adjoint() * &j - eye(n))));
                let pst = principal(&a, &st);
                for k in 0..a.datum().num_simple() {
                    inter = inter.max(linalg::rel_diff(&(&j * &p.rep.ns[k]), &(&pst.rep.ns[k] * &j)));
                }
                let m = repmod::left_intertwiner(&a, &p, i).unwrap();
                left_sq = left_sq.max(linalg::max_abs(&(&m * &m - eye(n))));
            }
        }
    }
    let a2 = alg("A2");
    let mut braid = 0.0f64;
    for _ in 0..20 {
        let t = harmonic::generic_unitary(&a2, Q, &mut rng);
        let x = repmod::right_intertwiner_word(&a2, &t, &[0, 1, 0], Q).unwrap();
        let y = repmod::right_intertwiner_word(&a2, &t, &[1, 0, 1], Q).unwrap();
        braid = braid.max(linalg::max_abs(&(x - y)));
    }
    outcome(
        sq < 1e-8 && unit < 1e-8 && braid < 1e-8 && left_sq < 1e-8,
        format!(
            "20 t per preset: |J(s,st)J(s,t) - I| {sq:.2e}, |J*J - I| {unit:.2e}, intertwining {inter:.2e}, left-action square {left_sq:.2e}, A2 braid {braid:.2e} (tol 1e-8)"
        ),
    )
}

// 5
fn c_function() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let (mut sym, mut sym_rel) = (0.0f64, 0.0f64);
    let mut report = Vec::new();
    let mut ok = true;
    for name in PRESETS {
        let a = alg(name);
        let cf = CFunction::new(&a);
        let fin = a.weyl().finite();
        let pos = a.datum().positive_roots();
        for _ in 0..50 {
            let t = TorusPoint::random_unitary(a.rank(), &mut rng);
            let Ok(x) = cf.abs_inv_sq(&t, Q, &pos) else { continue };
            let mut images: Vec<TorusPoint> = (0..fin.order()).map(|u| t.act(fin, u)).collect();
            images.push(t.inverse());
            for s in images {
                let y = cf.abs_inv_sq(&s, Q, &pos).unwrap();
                sym = sym.max((x - y).abs());
                sym_rel = sym_rel.max((x - y).abs() / x.abs().max(1.0));
            }
        }
        let side = if a.rank() == 1 { 10_000 } else { 100 };
        let grid = QuadratureGrid::new(a.rank(), side);
        let mut max_inv = 0.0f64;
        for k in 0..grid.len() {
            match cf.eval_inv(&grid.point(k), Q, &pos) {
                Ok(z) => max_inv = max_inv.max(z.norm()),
                Err(_) => max_inv = f64::INFINITY,
            }
        }
        // boundedness: the sup over a 4x finer random sample does not exceed the grid sup by much
        let mut sample_max = 0.0f64;
        for _ in 0..4 * grid.len() {
            let t = TorusPoint::random_unitary(a.rank(), &mut rng);
            if let Ok(z) = cf.eval_inv(&t, Q, &pos) {
                sample_max = sample_max.max(z.norm());
            }
        }
        ok &= max_inv.is_finite() && sample_max <= 1.01 * max_inv;
        report.push(format!("{name} sup|1/c| {max_inv:.4} (random {sample_max:.4})"));
    }
    outcome(
        ok && sym < 1e-10,
        format!("|c|^-2 under W0 and inversion: max abs diff {sym:.2e}, rel {sym_rel:.2e} (tol 1e-10); {}", report.join(", ")),
    )
}

fn scan_grid(n: usize) -> Vec<ExactPoint> {
    let halves: Vec<Rational64> = (-8..=8).map(|k| Rational64::new(k, 2)).collect();
    let mut exps: Vec<Vec<Rational64>> = vec![vec![]];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|e| halves.iter().map(move |h| [e.clone(), vec![*h]].concat())).collect();
    }
    exps.into_iter().flat_map(|e| sign_vectors(n).into_iter().map(move |s| ExactPoint::new(s, e.clone()))).collect()
}

// 6
fn residual_points() -> Outcome {
    let a = alg("A1-sc");
    let cf = CFunction::new(&a);
    let found = cf.residual_search().unwrap();
    let alpha = a.datum().simple_root(0).clone();
    let mut alpha_vals: Vec<f64> = Vec::new();
    let mut on_locus = true;
    for p in &found {
        for u in p.orbit(a.weyl().finite()) {
            let z = u.to_torus(Q).eval(&alpha);
            on_locus &= (z - c(Q)).norm() < 1e-12 || (z - c(1.0 / Q)).norm() < 1e-12;
            alpha_vals.push(z.re);
        }
    }
    alpha_vals.sort_by(f64::total_cmp);
    alpha_vals.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let locus_exact = on_locus && alpha_vals.len() == 2;
    // Steinberg central characters, one per Ω-twist
    let mut st_match = true;
    let chars = repmod::omega_characters(&a);
    for chi in &chars {
        let st = repmod::steinberg(&a, Q, chi).unwrap();
        let wd = repmod::weights(&st, None).unwrap();
        let t = &wd.weights[0].t;
        let hit = found.iter().any(|p| p.orbit(a.weyl().finite()).iter().any(|u| u.to_torus(Q).dist(t) < 1e-10));
        st_match &= hit;
    }
    let mut scan_ok = true;
    let mut detail = Vec::new();
    for name in ["A2", "B2"] {
        let a = alg(name);
        let cf = CFunction::new(&a);
        let n = a.rank() as i64;
        let res = cf.residual_search().unwrap();
        let cster = res.iter().all(|p| cf.cster_check(p));
        let grid = scan_grid(a.rank());
        let max_i = grid.iter().map(|p| cf.pole_order(p)).max().unwrap();
        let grid_res: std::collections::BTreeSet<ExactPoint> =
            grid.iter().filter(|p| cf.pole_order(p) == n).map(|p| p.canonical(a.weyl().finite())).collect();
        let same = grid_res == res.iter().cloned().collect();
        scan_ok &= cster && max_i <= n && same && !res.is_empty();
        detail.push(format!("{name}: {} orbits, cster {cster}, max i_t {max_i} on {} grid points, search = scan {same}", res.len(), grid.len()));
    }
    outcome(
        locus_exact && st_match && scan_ok,
        format!(
            "A1-sc: {} orbits (Ω-twists), all on α(t) = q^±1 {locus_exact}, Steinberg characters matched {st_match}; {}",
            found.len(),
            detail.join("; ")
        ),
    )
}

// 7
fn casselman() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut ok = true;
    let mut detail = Vec::new();
    for name in PRESETS {
        let a = alg(name);
        let d = a.datum();
        let t = harmonic::generic_unitary(&a, Q, &mut rng);
        let p = principal(&a, &t);
        let v = repmod::casselman_check(d, &repmod::weights(&p.rep, Some(&p.predicted_weights(&a))).unwrap());
        let ps_ok = v.tempered && !v.discrete_series;
        let st = repmod::steinberg(&a, Q, &repmod::omega_characters(&a)[0]).unwrap();
        let vs = repmod::casselman_check(d, &repmod::weights(&st, None).unwrap());
        let st_ok = vs.tempered && vs.discrete_series;
        let big = TorusPoint(vec![c(3.0); a.rank()]);
        let pb = principal(&a, &big);
        let vb = repmod::casselman_check(d, &repmod::weights(&pb.rep, Some(&pb.predicted_weights(&a))).unwrap());
        let wit = vb.witnesses.first().map(|(_, x, abs)| (x.clone(), *abs));
        let nt_ok = !vb.tempered && wit.as_ref().is_some_and(|(x, abs)| d.is_dominant(x) && *abs > 1.0);
        ok &= ps_ok && st_ok && nt_ok;
        let w = wit.map(|(x, abs)| format!("x={x:?} |x(t)|={abs:.3}")).unwrap_or_else(|| "none".into());
        detail.push(format!("{name}: ps {ps_ok}, St {st_ok}, non-unitary witness {w}"));
    }
    outcome(ok, detail.join("; "))
}

fn steinberg_induced(a: &HeckeAlgebra, angle: f64) -> Induced {
    let lower = a.lower_algebra(&Parabolic::new(vec![0])).unwrap();
    let st = repmod::steinberg(&lower.alg, Q, &repmod::omega_characters(&lower.alg)[0]).unwrap();
    let tp = repmod::lift_twist(&lower, &TorusPoint::from_angles(&[angle]));
    repmod::induce(a, &lower, &st, &tp).unwrap()
}

// 8
fn constant_terms() -> Outcome {
    let a = alg("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let ball = a.weyl().ball(8);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for k in 0..10 {
        let t = harmonic::generic_unitary(&a, Q, &mut rng);
        let angle = rng.gen_range(-3.0..3.0);
        for ind in [principal(&a, &t), steinberg_induced(&a, angle)] {
            let wd = repmod::weights(&ind.rep, Some(&ind.predicted_weights(&a))).unwrap();
            let mats: Vec<CMat> = ball.iter().map(|(w, _)| ind.rep.basis(&a, w)).collect();
            for q in Parabolic::all_subsets(2) {
                let x = repmod::random_vector(ind.rep.dim, &mut rng);
                let y = repmod::random_vector(ind.rep.dim, &mut rng);
                let spectral = repmod::constant_term_vector(a.datum(), &wd, &x, &q).unwrap();
                let class = repmod::class_sum_vector(&a, &ind, &wd, &x, &q);
                for m in &mats {
                    let d = (repmod::coefficient(&spectral, m, &y) - repmod::coefficient(&class, m, &y)).norm();
                    worst = worst.max(d);
                }
                cases += 1;
            }
        }
        let _ = k;
    }
    outcome(
        worst < 1e-8,
        format!("{cases} (ξ, Q) cases × {} elements with norm ≤ 8: max |f^Q - class sum| {worst:.2e} (tol 1e-8)", ball.len()),
    )
}

// 9
fn estimates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["A1-sc", "A2"] {
        let a = alg(name);
        let ps = PrincipalSeries::new(&a, Q).unwrap();
        let n = a.weyl().finite().order();
        let x = repmod::random_vector(n, &mut rng);
        let y = repmod::random_vector(n, &mut rng);
        let t = harmonic::generic_unitary(&a, Q, &mut rng);
        let g = harmonic::growth_probe(&a, &ps.at(&t).unwrap().rep, &x, &y, 14);
        let big = TorusPoint(vec![c(1.5 * Q.sqrt()); a.rank()]);
        let h = harmonic::growth_probe(&a, &ps.at(&big).unwrap().rep, &x, &y, 14);
        ok &= matches!(g.verdict, Growth::Polynomial(_)) && matches!(h.verdict, Growth::Exponential(_));
        detail.push(format!("{name}: tempered {}, control {}", g.verdict, h.verdict));
    }
    let a = alg("A2");
    let ind = steinberg_induced(&a, 0.7);
    let wd = repmod::weights(&ind.rep, Some(&ind.predicted_weights(&a))).unwrap();
    let x = repmod::random_vector(ind.rep.dim, &mut rng);
    let y = repmod::random_vector(ind.rep.dim, &mut rng);
    let rays = harmonic::decay_rays(&a, 0, 3);
    let mut rates = Vec::new();
    for x0 in &rays {
        match harmonic::cterm_decay_probe(&a, &ind.rep, &wd, 0, &x, &y, x0, 0.1, 12).unwrap() {
            Decay::Rate { b_hat, .. } => {
                ok &= b_hat > 0.0;
                rates.push(format!("{x0:?}: {b_hat:.4}"));
            }
            Decay::NotApplicable(why) => {
                ok = false;
                rates.push(format!("{x0:?}: {why}"));
            }
        }
    }
    ok &= rays.len() == 3;
    outcome(ok, format!("{}; A2 decay b_hat {}", detail.join(", "), rates.join(", ")))
}

fn random_omega_matrix(p: usize, eps: f64, rng: &mut ChaCha8Rng) -> CMat {
    let unit = rng.gen_range(0..=p);
    let mut t = CMat::zeros(p, p);
    for i in 0..p {
        let phase = num_complex::Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let r = if i < unit { 1.0 } else { rng.gen_range(0.0..=1.0 - eps) };
        t[(i, i)] = phase * r;
        for j in i + 1..p {
            t[(i, j)] = num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    // a repeated unit eigenvalue with a Jordan coupling now and then
    if unit >= 2 && rng.gen_bool(0.5) {
        t[(1, 1)] = t[(0, 0)];
    }
    let s = eye(p) + CMat::from_fn(p, p, |_, _| num_complex::Complex64::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4)));
    let si = s.clone().try_inverse().unwrap();
    s * t * si
}

// 10
fn spectral_projections() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let (mut ident, mut ban_ratio, mut rate_excess) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    let mut errors = 0;
    for k in 0..100 {
        let eps = if k % 2 == 0 { 0.1 } else { 0.3 };
        let p = rng.gen_range(1..=6);
        let a = random_omega_matrix(p, eps, &mut rng);
        let Ok(s) = linalg::spectral_split(&a, eps) else {
            errors += 1;
            continue;
        };
        let scale = 1.0 + linalg::max_abs(&a);
        ident = ident
            .max(linalg::max_abs(&(&s.p1 + &s.p_lt1 - eye(p))))
            .max(linalg::max_abs(&(&s.p_lt1 * &s.p_lt1 - &s.p_lt1)))
            .max(linalg::max_abs(&(&s.p1 * &s.p1 - &s.p1)))
            .max(linalg::max_abs(&(&s.p_lt1 * &a - &a * &s.p_lt1)) / scale);
        let norm_a = linalg::op_norm(&a);
        let bound = |n: usize| (1.0 + norm_a).powi(p as i32 - 1) * (1.0 + n as f64).powi(p as i32);
        let mut pow = eye(p);
        let mut pow_lt = eye(p);
        let mut fitted = 0.0f64;
        for n in 1..=200usize {
            pow = &pow * &a;
            pow_lt = &pow_lt * &s.a_lt1;
            if n <= 30 {
                let lhs = &s.p_lt1 * &pow;
                ident = ident.max(linalg::max_abs(&(&lhs - &pow_lt)) / (1.0 + linalg::max_abs(&lhs)));
            }
            let r = linalg::op_norm(&pow) / bound(n);
            if n <= 10 {
                fitted = fitted.max(r);
            } else {
                ban_ratio = ban_ratio.max(r / fitted);
            }
        }
        let rate = linalg::growth_rate(&s.a_lt1, 100, 200);
        rate_excess = rate_excess.max(rate - (1.0 - eps));
    }
    outcome(
        errors == 0 && ident < 1e-8 && ban_ratio <= 1.0 && rate_excess <= 1e-6,
        format!(
            "100 matrices (p ≤ 6, ε ∈ {{0.1, 0.3}}): split errors {errors}, identities {ident:.2e} (tol 1e-8), max ‖A^n‖/(C bound) on 10<n≤200 {ban_ratio:.3} (≤ 1), max rate − (1−ε) {rate_excess:.2e} (≤ 1e-6)"
        ),
    )
}

/// Residuals below this are indistinguishable from rounding in the
/// reconstruction sums.
const ROUNDOFF_FLOOR: f64 = 1e-14;

// 11
fn plancherel() -> Outcome {
    let a = alg("A1-sc");
    let start = Instant::now();
    let fine = harmonic::plancherel_invert_rank1(&a, Q, 4096, 10).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let coarse = harmonic::plancherel_invert_rank1(&a, Q, 2048, 10).unwrap();
    let equations = fine.rows.len();
    let halves = fine.max_residual <= coarse.max_residual / 2.0;
    let floor = fine.max_residual < ROUNDOFF_FLOOR && coarse.max_residual < ROUNDOFF_FLOOR;
    outcome(
        fine.max_residual < 1e-6 && equations >= 21 && (halves || floor) && secs < 60.0,
        format!(
            "mass {:.12}, {equations} elements with norm ≤ 10, residual 4096: {:.2e}, 2048: {:.2e} ({}), {secs:.2} s",
            fine.mass,
            fine.max_residual,
            coarse.max_residual,
            if halves { "halved".to_string() } else if floor { format!("both below roundoff floor {ROUNDOFF_FLOOR:.0e}") } else { "did not halve".to_string() }
        ),
    )
}

// 12
fn factorization() -> Outcome {
    let a = alg("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let t = harmonic::generic_unitary(&a, Q, &mut rng);
    let r = harmonic::factorization_check(&a, &Parabolic::new(vec![0]), &t, Q, 10, &mut rng).unwrap();
    outcome(
        r.samples.len() == 10 && r.max_discrepancy < 1e-6 && r.max_control > 1e-2,
        format!("10 trials: max discrepancy {:.2e} (tol 1e-6), perturbed c^Q {:.2e} (> 1e-2)", r.max_discrepancy, r.max_control),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        // `cargo test -- --list` compatibility
        println!("acceptance: test");
        return;
    }
    let _ = CVec::zeros(0);
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("algebra closure", algebra_closure),
        ("relation suite", relation_suite),
        ("center", center),
        ("intertwiner matrices", intertwiners),
        ("c-function", c_function),
        ("residual points", residual_points),
        ("Casselman verdicts", casselman),
        ("constant term oracle", constant_terms),
        ("growth and decay estimates", estimates),
        ("spectral projections", spectral_projections),
        ("Plancherel inversion", plancherel),
        ("factorization", factorization),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        println!(
            "{} [{:>2}] {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
