//! Finite-dimensional representations of `ℋ` at a numeric `𝐪`.
//!
//! A representation is stored through the Bernstein generators: the finite
//! `N_{s_i}` and the `θ_{e_j}` of the standard basis of `X`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::heckealg::{AElt, BForm, HeckeAlgebra, NForm, RBForm, SubAlgebra};
use crate::lattice::{self, IVec};
use crate::linalg::{self, c, eye, CMat, CVec};
use crate::rootdata::{Parabolic, RootDatum};
use crate::torus::TorusPoint;
use crate::weyl::WeylElt;

/// Relative tolerance for defining relations.
pub const REL_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error("relation '{0}' fails (discrepancy {1:e})")]
    RelationFailed(String, f64),
    #[error("normalization n_α(t) is not invertible at this point")]
    SingularNormalization,
    #[error("functional is not tempered")]
    NotTempered,
    #[error("weight projectors do not reconstruct the identity (residual {0:e})")]
    Projector(f64),
    #[error("t^P is not trivial on X ∩ QR_P")]
    BadTwist,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug)]
pub struct FinRep {
    pub dim: usize,
    pub q: f64,
    pub ns: Vec<CMat>,
    pub theta: Vec<CMat>,
    theta_inv: Vec<CMat>,
    fin: Vec<CMat>,
    aff: Vec<CMat>,
}

fn coeff_at(l: &crate::laurent::Laurent, q: f64) -> Complex64 {
    l.eval_c(q.sqrt())
}

impl FinRep {
    /// Build and validate a representation from generator matrices.
    pub fn new(alg: &HeckeAlgebra, q: f64, ns: Vec<CMat>, theta: Vec<CMat>) -> Result<Self, RepError> {
        let d = alg.datum();
        if ns.len() != d.num_simple() || theta.len() != d.rank() {
            return Err(RepError::Shape("generator count".into()));
        }
        let dim = ns.first().or(theta.first()).map_or(1, |m| m.nrows());
        if ns.iter().chain(&theta).any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(RepError::Shape("generator size".into()));
        }
        let theta_inv = theta
            .iter()
            .map(|m| m.clone().try_inverse().ok_or_else(|| RepError::RelationFailed("θ invertible".into(), f64::INFINITY)))
            .collect::<Result<Vec<_>, _>>()?;
        let fin_w = alg.weyl().finite();
        let fin = (0..fin_w.order())
            .map(|u| fin_w.word(u).iter().fold(eye(dim), |m, &i| m * &ns[i]))
            .collect();
        let mut rep = FinRep { dim, q, ns, theta, theta_inv, fin, aff: Vec::new() };
        rep.check_relations(alg)?;
        rep.aff = (0..alg.weyl().num_affine_simple())
            .map(|k| rep.bform(&alg.generator_bform(&alg.weyl().simple_elt(k))))
            .collect();
        Ok(rep)
    }

    fn check_relations(&self, alg: &HeckeAlgebra) -> Result<(), RepError> {
        let v = self.q.sqrt();
        let d = alg.datum();
        let fin = alg.weyl().finite();
        let n = self.dim;
        let fail = |name: String, e: f64| if e > REL_TOL { Err(RepError::RelationFailed(name, e)) } else { Ok(()) };
        for (i, m) in self.ns.iter().enumerate() {
            let f = alg.labels().f(i);
            let lhs = (m - eye(n) * c(v.powi(f))) * (m + eye(n) * c(v.powi(-f)));
            fail(format!("quadratic s{}", i + 1), linalg::max_abs(&lhs) / (1.0 + linalg::max_abs(m).powi(2)))?;
        }
        for i in 0..self.ns.len() {
            for j in i + 1..self.ns.len() {
                let sij = fin.mul(fin.simple(i), fin.simple(j));
                let mut m = 1;
                let mut w = sij;
                while w != fin.identity() {
                    w = fin.mul(w, sij);
                    m += 1;
                }
                let word = |a: usize, b: usize| (0..m).fold(eye(n), |acc, k| acc * &self.ns[if k % 2 == 0 { a } else { b }]);
                fail(format!("braid s{} s{}", i + 1, j + 1), linalg::rel_diff(&word(i, j), &word(j, i)))?;
            }
        }
        for a in 0..self.theta.len() {
            for b in a + 1..self.theta.len() {
                let ab = &self.theta[a] * &self.theta[b];
                fail("θ commute".into(), linalg::rel_diff(&ab, &(&self.theta[b] * &self.theta[a])))?;
            }
        }
        for i in 0..d.num_simple() {
            let s = fin.simple(i);
            for j in 0..d.rank() {
                let e: IVec = (0..d.rank()).map(|k| i64::from(j == k)).collect();
                let lhs = &self.theta[j] * &self.ns[i] - &self.ns[i] * self.theta_x(&fin.act(s, &e));
                let rhs = self.aelt(&alg.cross_theta(i, &e));
                fail(format!("cross s{} θ{:?}", i + 1, e), linalg::rel_diff(&lhs, &rhs))?;
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn theta_x(&self, x: &[i64]) -> CMat {
        let mut m = eye(self.dim);
        for (j, &k) in x.iter().enumerate() {
            let g = if k >= 0 { &self.theta[j] } else { &self.theta_inv[j] };
            for _ in 0..k.unsigned_abs() {
                m = &m * g;
            }
        }
        m
    }

    pub fn aelt(&self, a: &AElt) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (x, cf) in &a.0 {
            m += self.theta_x(x) * coeff_at(cf, self.q);
        }
        m
    }

    pub fn finite(&self, u: usize) -> &CMat {
        &self.fin[u]
    }

    pub fn bform(&self, h: &BForm) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (u, a) in &h.0 {
            m += self.aelt(a) * &self.fin[*u];
        }
        m
    }

    pub fn rbform(&self, h: &RBForm) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (u, b) in &h.0 {
            m += &self.fin[*u] * self.aelt(b);
        }
        m
    }

    /// `π(N_w)` through a reduced word.
    pub fn basis(&self, alg: &HeckeAlgebra, w: &WeylElt) -> CMat {
        let rw = alg.weyl().reduced_word(w);
        let mut m = if alg.weyl().is_identity(&rw.omega) {
            eye(self.dim)
        } else {
            self.bform(&alg.generator_bform(&rw.omega))
        };
        for &k in &rw.letters {
            m = &m * &self.aff[k];
        }
        m
    }

    pub fn nform(&self, alg: &HeckeAlgebra, h: &NForm) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (w, cf) in &h.0 {
            m += self.basis(alg, w) * coeff_at(cf, self.q);
        }
        m
    }

    /// Largest defect of `π(h^*) = π(h)^†` over the generators `N_s`
    /// (affine simple) and `N_ω`.
    pub fn unitarity_defect(&self, alg: &HeckeAlgebra) -> f64 {
        let mut worst: f64 = 0.0;
        for m in &self.aff {
            worst = worst.max(linalg::rel_diff(&m.adjoint(), m));
        }
        for g in alg.weyl().omega_gens() {
            let m = self.basis(alg, &g.elt);
            worst = worst.max(linalg::rel_diff(&(m.adjoint() * &m), &eye(self.dim)));
        }
        worst
    }
}

/// `f_{a,b}(h) = ⟨a, π(h) b⟩`, conjugate-linear in `a`.
pub fn coefficient(a: &CVec, m: &CMat, b: &CVec) -> Complex64 {
    a.dotc(&(m * b))
}

/// The Steinberg character `N_w ↦ (−1)^{l(w)} q(w)^{-1/2} χ(ω)` of a
/// semisimple datum, twisted by a character `χ` of `Ω` (one value per
/// generator of `Ω`).
pub fn steinberg(alg: &HeckeAlgebra, q: f64, omega_char: &[Complex64]) -> Result<FinRep, RepError> {
    let v = q.sqrt();
    let w = alg.weyl();
    if omega_char.len() != w.omega_gens().len() {
        return Err(RepError::Shape("Ω character".into()));
    }
    let chi = |h: &NForm| -> Complex64 {
        h.0.iter()
            .map(|(x, cf)| {
                let sign = if w.length(x) % 2 == 0 { 1.0 } else { -1.0 };
                let tw: Complex64 = w
                    .omega_coords(x)
                    .iter()
                    .zip(omega_char)
                    .map(|(k, z)| z.powi(*k as i32))
                    .product();
                coeff_at(cf, q) * sign * v.powi(-alg.q_half_exp(x)) * tw
            })
            .sum()
    };
    let d = alg.datum();
    let ns = (0..d.num_simple())
        .map(|i| CMat::from_element(1, 1, c(-v.powi(-alg.labels().f(i)))))
        .collect();
    let theta = (0..d.rank())
        .map(|j| {
            let e: IVec = (0..d.rank()).map(|k| i64::from(j == k)).collect();
            CMat::from_element(1, 1, chi(&alg.theta(&e)))
        })
        .collect();
    FinRep::new(alg, q, ns, theta)
}

/// All characters of a finite `Ω`, as values on its generators.
pub fn omega_characters(alg: &HeckeAlgebra) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = vec![Vec::new()];
    for g in alg.weyl().omega_gens() {
        let m = g.order.max(1);
        out = out
            .into_iter()
            .flat_map(|chi| {
                (0..m).map(move |k| {
                    let mut c2 = chi.clone();
                    c2.push(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64));
                    c2
                })
            })
            .collect();
    }
    out
}

/// Lift a point of `T^P` (coordinates on `X^P`) to `T`.
pub fn lift_twist(sub: &SubAlgebra, coords: &TorusPoint) -> TorusPoint {
    let n = sub.qd.to_xupper.first().map_or(0, |r| r.len());
    let n = if n == 0 { sub.alg.rank().max(coords.rank()) } else { n };
    TorusPoint(
        (0..n)
            .map(|i| {
                let col: IVec = sub.qd.to_xupper.iter().map(|r| r[i]).collect();
                coords.eval(&col)
            })
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct Induced {
    pub rep: FinRep,
    pub p: Parabolic,
    /// `W^P` in basis order.
    pub reps: Vec<usize>,
    pub ddim: usize,
    pub tp: TorusPoint,
    /// Weights of `δ_{t^P}` as points of `T`, with multiplicities.
    pub delta_weights: Vec<(TorusPoint, usize)>,
}

impl Induced {
    /// Predicted weights `w(t′)` for `w ∈ W^P`, `t′` a weight of `δ_{t^P}`.
    pub fn predicted_weights(&self, alg: &HeckeAlgebra) -> Vec<(TorusPoint, usize)> {
        let fin = alg.weyl().finite();
        let mut out = Vec::new();
        for &w in &self.reps {
            for (t, m) in &self.delta_weights {
                out.push((t.act(fin, w), *m));
            }
        }
        out
    }

    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        k * self.ddim..(k + 1) * self.ddim
    }

    pub fn basis_labels(&self, alg: &HeckeAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        for &w in &self.reps {
            for j in 0..self.ddim {
                out.push(format!("{}⊗v{}", alg.weyl().format(&alg.weyl().finite_elt(w)), j));
            }
        }
        out
    }
}

/// `Ind_{ℋ^P}^{ℋ}(δ ∘ φ_{t^P})` on `ℋ(W^P) ⊗ V_δ`, where `tp` is a point of
/// `T` trivial on `X ∩ QR_P`.
pub fn induce(alg: &HeckeAlgebra, lower: &SubAlgebra, delta: &FinRep, tp: &TorusPoint) -> Result<Induced, RepError> {
    let q = delta.q;
    let qd = &lower.qd;
    let d = alg.datum();
    let n = d.rank();
    let kernel = lattice::integer_kernel(&qd.to_xupper, n);
    for x in &kernel {
        if (tp.eval(x) - c(1.0)).norm() > 1e-9 {
            return Err(RepError::BadTwist);
        }
    }
    let fin = alg.weyl().finite();
    let reps = alg.weyl().coset_reps(&qd.p);
    let ddim = delta.dim;
    let dim = reps.len() * ddim;
    let pos_of: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let wp: Vec<usize> = fin.parabolic_subgroup(&qd.p);
    let split = |u: usize| -> (usize, usize) {
        for &r in &reps {
            let up = fin.mul(fin.inv(r), u);
            if wp.contains(&up) {
                return (pos_of[&r], lower.from_parent(up).expect("u_P lies in W_P"));
            }
        }
        unreachable!("W^P meets every coset")
    };
    let v = q.sqrt();
    let delta_phi = |b: &AElt| -> CMat {
        let mut m = CMat::zeros(ddim, ddim);
        for (x, cf) in &b.0 {
            m += delta.theta_x(&qd.project(x)) * (cf.eval_c(v) * tp.eval(x));
        }
        m
    };
    let matrix_of = |image: &dyn Fn(usize) -> RBForm| -> CMat {
        let mut m = CMat::zeros(dim, dim);
        for (k, &w) in reps.iter().enumerate() {
            for (u, b) in &image(w).0 {
                let (r, up) = split(*u);
                let blk = delta.finite(up) * delta_phi(b);
                let mut view = m.view_mut((r * ddim, k * ddim), (ddim, ddim));
                view += blk;
            }
        }
        m
    };
    let ns: Vec<CMat> = (0..d.num_simple())
        .map(|i| {
            let s = fin.simple(i);
            matrix_of(&|w| {
                let mut out = RBForm::zero();
                for (u, cf) in alg.fin_mul(s, w) {
                    out.add_part(*u, &AElt::constant(n, cf.clone()));
                }
                out
            })
        })
        .collect();
    let theta: Vec<CMat> = (0..n)
        .map(|j| {
            let e: IVec = (0..n).map(|k| i64::from(j == k)).collect();
            matrix_of(&|w| alg.to_right(&BForm::single(w, AElt::theta(e.clone()))))
        })
        .collect();
    let rep = FinRep::new(alg, q, ns, theta)?;
    let dw = weights(delta, None)?;
    let delta_weights = dw
        .weights
        .iter()
        .map(|wt| {
            let t = TorusPoint(
                (0..n)
                    .map(|i| {
                        let e: IVec = (0..n).map(|k| i64::from(i == k)).collect();
                        wt.t.eval(&qd.project(&e)) * tp.0[i]
                    })
                    .collect(),
            );
            (t, wt.mult)
        })
        .collect();
    Ok(Induced { rep, p: qd.p.clone(), reps, ddim, tp: tp.clone(), delta_weights })
}

/// The principal series `π_t = Ind_𝒜^ℋ(t)` with basis `N_w`, `w ∈ W0`.
pub fn principal_series(alg: &HeckeAlgebra, trivial: &SubAlgebra, one: &FinRep, t: &TorusPoint) -> Result<Induced, RepError> {
    induce(alg, trivial, one, t)
}

/// The one-dimensional representation of a rank-0 algebra.
pub fn trivial_rep(alg: &HeckeAlgebra, q: f64) -> Result<FinRep, RepError> {
    FinRep::new(alg, q, Vec::new(), Vec::new())
}

// ---- weights ----

#[derive(Clone, Debug)]
pub struct Weight {
    pub t: TorusPoint,
    pub mult: usize,
    pub proj: CMat,
}

#[derive(Clone, Debug)]
pub struct WeightDatum {
    pub weights: Vec<Weight>,
    /// `‖Σ P − I‖`
    pub residual: f64,
    /// Largest distance between a predicted weight and the trace average of
    /// `θ` on its projector.
    pub deviation: f64,
}

fn probe_coeffs(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::new(1.0 + 0.618 * j as f64, 0.37 + 0.291 * (j * j) as f64)).collect()
}

fn merge_weights(pred: &[(TorusPoint, usize)]) -> Vec<(TorusPoint, usize)> {
    let mut out: Vec<(TorusPoint, usize)> = Vec::new();
    for (t, m) in pred {
        if let Some(slot) = out.iter_mut().find(|(s, _)| s.dist(t) < 1e-9) {
            slot.1 += m;
        } else {
            out.push((t.clone(), *m));
        }
    }
    out
}

/// Generalized `𝒜`-weight decomposition. With `predicted` weights the
/// projectors are built on them and verified; otherwise the weights are
/// discovered from the spectrum of a generic combination of the `θ_{e_j}`.
pub fn weights(rep: &FinRep, predicted: Option<&[(TorusPoint, usize)]>) -> Result<WeightDatum, RepError> {
    let n = rep.dim;
    let r = rep.rank();
    let cs = probe_coeffs(r);
    let mut z = CMat::zeros(n, n);
    for (j, cj) in cs.iter().enumerate() {
        z += &rep.theta[j] * *cj;
    }
    let zval = |t: &TorusPoint| -> Complex64 { cs.iter().zip(&t.0).map(|(a, b)| a * b).sum() };
    let groups: Vec<(Option<TorusPoint>, Complex64, usize)> = match predicted {
        Some(p) => merge_weights(p).into_iter().map(|(t, m)| {
            let zv = zval(&t);
            (Some(t), zv, m)
        }).collect(),
        None => {
            let mut ev = linalg::eigenvalues(&z);
            ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            let mut cl: Vec<(Complex64, usize)> = Vec::new();
            for e in ev {
                if let Some(slot) = cl.iter_mut().find(|(m, _)| (*m - e).norm() <= 1e-5 * (1.0 + e.norm())) {
                    slot.0 = (slot.0 * slot.1 as f64 + e) / (slot.1 as f64 + 1.0);
                    slot.1 += 1;
                } else {
                    cl.push((e, 1));
                }
            }
            cl.into_iter().map(|(e, m)| (None, e, m)).collect()
        }
    };
    if groups.iter().map(|g| g.2).sum::<usize>() != n {
        return Err(RepError::Projector(f64::INFINITY));
    }
    let mut out = Vec::new();
    let mut sum = CMat::zeros(n, n);
    let mut deviation: f64 = 0.0;
    for (k, (t, zv, m)) in groups.iter().enumerate() {
        let inside = vec![*zv; *m];
        let outside: Vec<Complex64> = groups
            .iter()
            .enumerate()
            .filter(|(k2, _)| *k2 != k)
            .flat_map(|(_, g)| vec![g.1; g.2])
            .collect();
        let proj = linalg::spectral_projector(&z, &inside, &outside).ok_or(RepError::Projector(f64::INFINITY))?;
        let avg = TorusPoint((0..r).map(|j| (&proj * &rep.theta[j]).trace() / c(*m as f64)).collect());
        let t = match t {
            Some(t) => {
                deviation = deviation.max(t.dist(&avg));
                t.clone()
            }
            None => avg,
        };
        sum += &proj;
        out.push(Weight { t, mult: *m, proj });
    }
    let residual = linalg::max_abs(&(sum - eye(n)));
    if residual > 1e-6 {
        return Err(RepError::Projector(residual));
    }
    out.sort_by(|a, b| weight_key(&a.t).partial_cmp(&weight_key(&b.t)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(WeightDatum { weights: out, residual, deviation })
}

fn weight_key(t: &TorusPoint) -> Vec<f64> {
    let mut k: Vec<f64> = t.0.iter().map(|z| z.norm()).collect();
    k.extend(t.0.iter().map(|z| z.re));
    k.extend(t.0.iter().map(|z| z.im));
    k
}

// ---- Casselman criteria ----

/// `log|t|` as an element of `Y ⊗ R`: `|x(t)| = exp⟨x, ℓ⟩`.
pub fn log_abs(t: &TorusPoint) -> Vec<f64> {
    t.0.iter().map(|z| z.norm().ln()).collect()
}

/// Coefficients `c_α` with `ℓ = Σ_{α∈P} c_α α∨`, and the residual of the
/// least squares fit.
fn coroot_coords(d: &RootDatum, p: &Parabolic, l: &[f64]) -> (Vec<f64>, f64) {
    let n = l.len();
    if p.is_empty() {
        return (Vec::new(), l.iter().map(|x| x.abs()).fold(0.0, f64::max));
    }
    let a = DMatrix::<f64>::from_fn(n, p.len(), |i, k| d.simple_coroot(p.indices()[k])[i] as f64);
    let y = nalgebra::DVector::<f64>::from_column_slice(l);
    let sol = a.clone().svd(true, true).solve(&y, 1e-14).expect("least squares");
    let res = (&a * &sol - &y).amax();
    (sol.iter().copied().collect(), res)
}

/// `|t| ≤_P 1`
pub fn le_p(d: &RootDatum, p: &Parabolic, t: &TorusPoint, tol: f64) -> bool {
    let (cs, res) = coroot_coords(d, p, &log_abs(t));
    res <= tol && cs.iter().all(|c| *c <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasselmanVerdict {
    pub tempered: bool,
    pub discrete_series: bool,
    /// `(weight index, x ∈ X^+, |x(t)|)` for each failing weight.
    pub witnesses: Vec<(usize, IVec, f64)>,
}

/// Small dominant lattice points, ordered by size, used as witnesses.
pub fn dominant_points(d: &RootDatum, radius: i64) -> Vec<IVec> {
    let n = d.rank();
    let mut pts: Vec<IVec> = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| (-radius..=radius).map(move |k| [p.clone(), vec![k]].concat()))
            .collect();
    }
    let mut out: Vec<IVec> = pts.into_iter().filter(|x| !lattice::is_zero(x) && d.is_dominant(x)).collect();
    out.sort_by_key(|x| (x.iter().map(|v| v.abs()).sum::<i64>(), x.clone()));
    out
}

pub fn casselman_check(d: &RootDatum, wd: &WeightDatum) -> CasselmanVerdict {
    const TOL: f64 = 1e-8;
    let full = Parabolic::full(d.num_simple());
    let cands = dominant_points(d, 3);
    let mut tempered = true;
    let mut ds = d.is_semisimple();
    let mut witnesses = Vec::new();
    let mut boundary = Vec::new();
    for (k, w) in wd.weights.iter().enumerate() {
        let l = log_abs(&w.t);
        let (cs, res) = coroot_coords(d, &full, &l);
        let temp = res <= TOL && cs.iter().all(|c| *c <= TOL);
        let strict = res <= TOL && cs.iter().all(|c| *c < -TOL);
        let pairing = |x: &IVec| x.iter().zip(&l).map(|(a, b)| *a as f64 * b).sum::<f64>();
        if !temp {
            tempered = false;
            ds = false;
            if let Some(x) = cands.iter().find(|x| pairing(x) > TOL) {
                witnesses.push((k, x.clone(), pairing(x).exp()));
            }
        } else if !strict {
            ds = false;
            if let Some(x) = cands.iter().find(|x| pairing(x) >= -TOL) {
                boundary.push((k, x.clone(), pairing(x).exp()));
            }
        }
    }
    // witnesses against temperedness take precedence
    if tempered {
        witnesses = boundary;
    }
    CasselmanVerdict { tempered, discrete_series: ds && tempered, witnesses }
}

// ---- exponents and constant terms ----

/// `E_t(h, x) = Σ_k coef_k Π_j binom(x_j, k_j)` for one weight.
#[derive(Clone, Debug)]
pub struct ExponentTerm {
    pub t: TorusPoint,
    pub coefs: Vec<(Vec<usize>, Complex64)>,
}

impl ExponentTerm {
    pub fn degree(&self) -> usize {
        self.coefs
            .iter()
            .filter(|(_, c)| c.norm() > 1e-9)
            .map(|(k, _)| k.iter().sum())
            .max()
            .unwrap_or(0)
    }
    pub fn eval(&self, x: &[i64]) -> Complex64 {
        self.coefs
            .iter()
            .map(|(k, c)| c * k.iter().zip(x).map(|(kj, xj)| binom(*xj, *kj)).product::<f64>())
            .sum()
    }
}

fn binom(x: i64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as i64) as f64 / (i + 1) as f64)
}

fn multi_indices(r: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| (0..=max).map(move |k| [p.clone(), vec![k]].concat()))
            .collect();
    }
    out.into_iter().filter(|k| k.iter().sum::<usize>() <= max).collect()
}

/// Expansion `f(θ_x h) = Σ_t E_t(h, x) t(x)` of `f = f_{a,b}` at the fixed
/// vector `π(h) b`.
pub fn exponent_expansion(rep: &FinRep, wd: &WeightDatum, a: &CVec, hb: &CVec) -> Vec<ExponentTerm> {
    wd.weights
        .iter()
        .map(|w| {
            let r = rep.rank();
            let nil: Vec<CMat> = (0..r)
                .map(|j| (&rep.theta[j] - eye(rep.dim) * w.t.0[j]) * &w.proj / w.t.0[j])
                .collect();
            let coefs = multi_indices(r, w.mult.saturating_sub(1))
                .into_iter()
                .map(|k| {
                    let mut m = w.proj.clone();
                    for (j, kj) in k.iter().enumerate() {
                        for _ in 0..*kj {
                            m = &nil[j] * m;
                        }
                    }
                    let val = a.dotc(&(m * hb));
                    (k, val)
                })
                .collect();
            ExponentTerm { t: w.t.clone(), coefs }
        })
        .collect()
}

/// `E_Q^† a`, so that `f^Q(h) = ⟨E_Q^† a, π(h) b⟩`, with `E_Q` the sum of
/// the projectors of the `Q`-tempered weights.
pub fn constant_term_vector(d: &RootDatum, wd: &WeightDatum, a: &CVec, q: &Parabolic) -> Result<CVec, RepError> {
    let full = Parabolic::full(d.num_simple());
    let n = a.len();
    let mut e = CMat::zeros(n, n);
    for w in &wd.weights {
        if !le_p(d, &full, &w.t, 1e-8) {
            return Err(RepError::NotTempered);
        }
        if le_p(d, q, &w.t, 1e-8) {
            e += &w.proj;
        }
    }
    Ok(e.adjoint() * a)
}

/// `E^†a` for `E = Σ e_{wϖ}` over `w ∈ W^P` with `w(P) ⊂ R_{Q,+}`, where
/// `e_{wϖ}` projects onto the weights `w(t′)`, `t′` a weight of `δ_{t^P}`.
pub fn class_sum_vector(alg: &HeckeAlgebra, ind: &Induced, wd: &WeightDatum, a: &CVec, q: &Parabolic) -> CVec {
    let d = alg.datum();
    let fin = alg.weyl().finite();
    let in_q = |j: usize| d.is_positive(j) && d.simple_coords(j).iter().enumerate().all(|(i, &k)| k == 0 || q.contains(i));
    let n = a.len();
    let mut hit = vec![false; wd.weights.len()];
    for &w in &ind.reps {
        if !ind.p.iter().all(|i| in_q(fin.act_root(w, d.simple_root_index(i)))) {
            continue;
        }
        for (t, _) in &ind.delta_weights {
            let wt = t.act(fin, w);
            for (k, wgt) in wd.weights.iter().enumerate() {
                hit[k] |= wgt.t.dist(&wt) < 1e-8;
            }
        }
    }
    let mut e = CMat::zeros(n, n);
    for (k, wgt) in wd.weights.iter().enumerate() {
        if hit[k] {
            e += &wgt.proj;
        }
    }
    e.adjoint() * a
}

// ---- intertwiners (principal series) ----

/// `π_t(n_α)^{-1} π_t(ι_s)`, an operator on `π_t`.
pub fn left_intertwiner(alg: &HeckeAlgebra, ps: &Induced, i: usize) -> Result<CMat, RepError> {
    let n = ps.rep.aelt(&alg.n_alpha(i));
    if linalg::eigenvalues(&n).iter().any(|z| z.norm() < 1e-6) {
        return Err(RepError::SingularNormalization);
    }
    let inv = n.try_inverse().ok_or(RepError::SingularNormalization)?;
    Ok(inv * ps.rep.bform(&alg.intertwiner(i)))
}

/// `J(s, t): π_t → π_{st}`, `N_w ⊗ 1 ↦ N_w ι_s^0 ⊗ 1`.
pub fn right_intertwiner(alg: &HeckeAlgebra, t: &TorusPoint, i: usize, q: f64) -> Result<CMat, RepError> {
    let fin = alg.weyl().finite();
    let v = q.sqrt();
    let s = fin.simple(i);
    let st = t.act(fin, s);
    let nt = alg.n_alpha(i).eval(t, v);
    if nt.norm() < 1e-6 {
        return Err(RepError::SingularNormalization);
    }
    let iota = alg.to_right(&alg.intertwiner(i));
    let reps = alg.weyl().coset_reps(&Parabolic::empty());
    let pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let g = reps.len();
    let mut m = CMat::zeros(g, g);
    for (k, &w) in reps.iter().enumerate() {
        for (u, b) in &iota.0 {
            let bu = b.eval(&st, v);
            for (x, cf) in alg.fin_mul(w, *u) {
                m[(pos[x], k)] += bu * cf.eval_c(v) / nt;
            }
        }
    }
    Ok(m)
}

/// `π(g, t) = J(s_1, …) ⋯ J(s_k, t)` for `g = s_1 ⋯ s_k`, mapping `π_t` to `π_{gt}`.
pub fn right_intertwiner_word(alg: &HeckeAlgebra, t: &TorusPoint, word: &[usize], q: f64) -> Result<CMat, RepError> {
    let fin = alg.weyl().finite();
    let g = fin.order();
    let mut m = eye(g);
    let mut cur = t.clone();
    for &i in word.iter().rev() {
        m = right_intertwiner(alg, &cur, i, q)? * m;
        cur = cur.act(fin, fin.simple(i));
    }
    Ok(m)
}

/// Random vector with entries in the unit square, from a seeded RNG.
pub fn random_vector<R: rand::Rng>(n: usize, rng: &mut R) -> CVec {
    CVec::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Pseudo-random exact element `Σ a_u N_u` with small `θ`-support.
pub fn random_bform<R: rand::Rng>(alg: &HeckeAlgebra, rng: &mut R, radius: i64) -> BForm {
    use crate::laurent::Laurent;
    let n = alg.rank();
    let g = alg.weyl().finite().order();
    let mut h = BForm::zero();
    for u in 0..g {
        let mut a = AElt::zero();
        for _ in 0..2 {
            let x: IVec = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
            a.add_term(&x, &Laurent::int(rng.gen_range(-3..=3)));
        }
        h.add_part(u, &a);
    }
    h
}
