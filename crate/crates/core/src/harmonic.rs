//! Numerical harmonic analysis on the unitary principal series and its
//! parabolic relatives: torus quadrature, wave packets, Plancherel
//! inversion in rank one, growth and decay probes, and the factorization
//! of constant terms through `ℋ^Q`.

use num_complex::Complex64;
use rand::Rng;

use crate::cfun::{CError, CFunction};
use crate::heckealg::{BForm, HeckeAlgebra, NForm, SubAlgebra};
use crate::lattice::IVec;
use crate::linalg::{self, c, CMat, CVec};
use crate::repmod::{self, FinRep, Induced, RepError, WeightDatum};
use crate::rootdata::Parabolic;
use crate::torus::TorusPoint;
use crate::weyl::WeylElt;

#[derive(Debug, thiserror::Error)]
pub enum HarmonicError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    CFun(#[from] CError),
    #[error("{0}")]
    Precondition(String),
    #[error("ill-conditioned mass solve (Steinberg trace {0:e})")]
    IllConditioned(f64),
}

/// Neumaier compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CSum {
    s: Complex64,
    comp: Complex64,
}

impl CSum {
    pub fn add(&mut self, x: Complex64) {
        let re = two_sum(self.s.re, x.re);
        let im = two_sum(self.s.im, x.im);
        self.s = Complex64::new(re.0, im.0);
        self.comp += Complex64::new(re.1, im.1);
    }
    pub fn value(&self) -> Complex64 {
        self.s + self.comp
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}

/// Worker count: `HECKE_THREADS` if set, else the available parallelism.
pub fn threads() -> usize {
    std::env::var("HECKE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Evaluate `f` on 64 fixed chunks of `0..n` across worker threads and
/// return the chunk results in order, so the result does not depend on the
/// thread count.
fn chunked<T: Send>(
    n: usize,
    f: &(dyn Fn(std::ops::Range<usize>) -> Result<T, HarmonicError> + Sync),
) -> Result<Vec<T>, HarmonicError> {
    const CHUNKS: usize = 64;
    let bounds: Vec<std::ops::Range<usize>> = (0..CHUNKS).map(|c| c * n / CHUNKS..(c + 1) * n / CHUNKS).collect();
    let workers = threads().min(CHUNKS);
    let mut slots: Vec<Option<Result<T, HarmonicError>>> = (0..CHUNKS).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let bounds = &bounds;
                s.spawn(move || {
                    (w..CHUNKS).step_by(workers).map(|c| (c, f(bounds[c].clone()))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (c, r) in h.join().expect("worker panicked") {
                slots[c] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every chunk evaluated")).collect()
}

/// Equal-weight trapezoid grid on the compact torus `(S¹)^dims`, offset by
/// half a cell so that no node lies on `x(t) = ±1`.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub n: usize,
    pub dims: usize,
}

impl QuadratureGrid {
    pub fn new(dims: usize, n: usize) -> Self {
        QuadratureGrid { n, dims }
    }
    pub fn len(&self) -> usize {
        self.n.pow(self.dims as u32)
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }
    pub fn angles(&self, k: usize) -> Vec<f64> {
        let mut k = k;
        (0..self.dims)
            .map(|_| {
                let j = k % self.n;
                k /= self.n;
                std::f64::consts::TAU * (j as f64 + 0.5) / self.n as f64
            })
            .collect()
    }
    pub fn point(&self, k: usize) -> TorusPoint {
        TorusPoint::from_angles(&self.angles(k))
    }
    pub fn integrate(&self, f: impl Fn(&TorusPoint) -> Complex64) -> Complex64 {
        let mut acc = CSum::default();
        for k in 0..self.len() {
            acc.add(f(&self.point(k)));
        }
        acc.value() * self.weight()
    }
}

/// Principal series context shared by the probes: trivial lower algebra
/// and its one-dimensional representation.
pub struct PrincipalSeries<'a> {
    pub alg: &'a HeckeAlgebra,
    pub q: f64,
    triv: SubAlgebra,
    one: FinRep,
}

impl<'a> PrincipalSeries<'a> {
    pub fn new(alg: &'a HeckeAlgebra, q: f64) -> Result<Self, HarmonicError> {
        let triv = alg
            .lower_algebra(&Parabolic::empty())
            .map_err(|e| HarmonicError::Precondition(e.to_string()))?;
        let one = repmod::trivial_rep(&triv.alg, q)?;
        Ok(PrincipalSeries { alg, q, triv, one })
    }
    pub fn at(&self, t: &TorusPoint) -> Result<Induced, HarmonicError> {
        Ok(repmod::principal_series(self.alg, &self.triv, &self.one, t)?)
    }
}

fn positive_roots(alg: &HeckeAlgebra) -> Vec<usize> {
    alg.datum().positive_roots()
}

/// `q(w^P)^{-1} · mass · |c(ξ)|^{-2} / group_order`, with `c` the product
/// over `R_+ ∖ R_{P,+}`.
pub fn plancherel_density(
    alg: &HeckeAlgebra,
    cf: &CFunction,
    t: &TorusPoint,
    q: f64,
    p: &Parabolic,
    group_order: usize,
    mass: f64,
) -> Result<f64, HarmonicError> {
    let d = alg.datum();
    let roots: Vec<usize> = positive_roots(alg).into_iter().filter(|&j| !in_parabolic(d, p, j)).collect();
    let wup = alg.longest_min_rep(p);
    let qw = q.sqrt().powi(2 * alg.q_half_exp_finite(wup));
    let dens = cf.abs_inv_sq(t, q, &roots)?;
    Ok(mass * dens / (qw * group_order as f64))
}

fn in_parabolic(d: &crate::rootdata::RootDatum, p: &Parabolic, j: usize) -> bool {
    let coords = d.simple_coords(j);
    coords.iter().enumerate().all(|(i, &k)| k == 0 || p.contains(i))
}

/// `∫ tr(σ(t) π_t(h)) c^{-1}(t) dt` over the unitary principal series.
pub fn wave_packet(
    ps: &PrincipalSeries,
    cf: &CFunction,
    sigma: &dyn Fn(&TorusPoint) -> CMat,
    h: &NForm,
    grid: &QuadratureGrid,
) -> Result<Complex64, HarmonicError> {
    let roots = positive_roots(ps.alg);
    let mut acc = CSum::default();
    for k in 0..grid.len() {
        let t = grid.point(k);
        let cinv = cf.eval(&t, ps.q, &roots).map(|z| 1.0 / z)?;
        let rep = ps.at(&t)?;
        let m = sigma(&t) * rep.rep.nform(ps.alg, h);
        acc.add(m.trace() * cinv);
    }
    Ok(acc.value() * grid.weight())
}

/// Value on grid `n` and `|Δ|` against grid `2n`.
pub fn wave_packet_refined(
    ps: &PrincipalSeries,
    cf: &CFunction,
    sigma: &dyn Fn(&TorusPoint) -> CMat,
    h: &NForm,
    dims: usize,
    n: usize,
) -> Result<(Complex64, f64), HarmonicError> {
    let a = wave_packet(ps, cf, sigma, h, &QuadratureGrid::new(dims, n))?;
    let b = wave_packet(ps, cf, sigma, h, &QuadratureGrid::new(dims, 2 * n))?;
    Ok((b, (a - b).norm()))
}

#[derive(Clone, Debug)]
pub struct InversionRow {
    pub w: WeylElt,
    pub label: String,
    pub norm: f64,
    pub tau: f64,
    pub reconstruction: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct PlancherelReport {
    pub grid: usize,
    pub mass: f64,
    pub rows: Vec<InversionRow>,
    pub max_residual: f64,
}

/// Plancherel inversion for a semisimple rank-one datum. The discrete
/// series are the `Ω`-twists of the Steinberg character; they share one
/// mass, solved from `τ(N_e) = 1`.
pub fn plancherel_invert_rank1(alg: &HeckeAlgebra, q: f64, grid_n: usize, max_norm: usize) -> Result<PlancherelReport, HarmonicError> {
    let d = alg.datum();
    if d.rank() != 1 || !d.is_semisimple() {
        return Err(HarmonicError::Precondition("rank-one semisimple datum required".into()));
    }
    let weyl = alg.weyl();
    let elts: Vec<(WeylElt, f64)> = weyl
        .ball(max_norm)
        .into_iter()
        .map(|(w, n)| (w, *n.numer() as f64 / *n.denom() as f64))
        .collect();
    let ps = PrincipalSeries::new(alg, q)?;
    let cf = CFunction::new(alg);
    let roots = positive_roots(alg);
    let grid = QuadratureGrid::new(1, grid_n);
    let chunk = |range: std::ops::Range<usize>| -> Result<Vec<CSum>, HarmonicError> {
        let mut acc = vec![CSum::default(); elts.len()];
        for k in range {
            let t = grid.point(k);
            let dens = cf.abs_inv_sq(&t, q, &roots)?;
            let rep = ps.at(&t)?;
            for (slot, (w, _)) in acc.iter_mut().zip(&elts) {
                slot.add(rep.rep.basis(alg, w).trace() * dens);
            }
        }
        Ok(acc)
    };
    let parts = chunked(grid.len(), &chunk)?;
    let mut acc = vec![CSum::default(); elts.len()];
    for part in parts {
        for (slot, p) in acc.iter_mut().zip(part) {
            slot.add(p.value());
        }
    }
    let fin = weyl.finite();
    let qw0 = q.sqrt().powi(2 * alg.q_half_exp_finite(fin.longest()));
    let scale = grid.weight() / (qw0 * fin.order() as f64);
    let cont: Vec<Complex64> = acc.iter().map(|s| s.value() * scale).collect();
    let sts = repmod::omega_characters(alg)
        .iter()
        .map(|chi| repmod::steinberg(alg, q, chi))
        .collect::<Result<Vec<_>, _>>()?;
    let chi: Vec<Complex64> = elts
        .iter()
        .map(|(w, _)| sts.iter().map(|s| s.basis(alg, w)[(0, 0)]).sum())
        .collect();
    let e = elts.iter().position(|(w, _)| weyl.is_identity(w)).expect("identity in ball");
    if chi[e].norm() < 1e-12 {
        return Err(HarmonicError::IllConditioned(chi[e].norm()));
    }
    let mass = ((c(1.0) - cont[e]) / chi[e]).re;
    let rows: Vec<InversionRow> = elts
        .iter()
        .enumerate()
        .map(|(k, (w, n))| {
            let tau = if k == e { 1.0 } else { 0.0 };
            let rec = chi[k] * mass + cont[k];
            InversionRow {
                w: w.clone(),
                label: weyl.format(w),
                norm: *n,
                tau,
                reconstruction: rec,
                residual: (rec - tau).norm(),
            }
        })
        .collect();
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(PlancherelReport { grid: grid_n, mass, rows, max_residual })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Growth {
    Flat,
    Polynomial(f64),
    Exponential(f64),
}

impl std::fmt::Display for Growth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Growth::Flat => write!(f, "flat"),
            Growth::Polynomial(d) => write!(f, "polynomial({d:.3})"),
            Growth::Exponential(r) => write!(f, "exponential({r:.3})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub table: Vec<(usize, f64)>,
    pub verdict: Growth,
}

/// `n ↦ max_{𝒩(w) = n} |f_{a,b}(N_w)|` with a polynomial/exponential fit.
pub fn growth_probe(alg: &HeckeAlgebra, rep: &FinRep, a: &CVec, b: &CVec, max_n: usize) -> GrowthReport {
    let mut table: Vec<(usize, f64)> = (0..=max_n).map(|n| (n, 0.0)).collect();
    for (w, n) in alg.weyl().ball(max_n) {
        if *n.denom() != 1 {
            continue;
        }
        let k = *n.numer() as usize;
        let v = repmod::coefficient(a, &rep.basis(alg, &w), b).norm();
        table[k].1 = table[k].1.max(v);
    }
    GrowthReport { verdict: classify_growth(&table), table }
}

pub fn classify_growth(table: &[(usize, f64)]) -> Growth {
    let pts: Vec<(f64, f64)> = table
        .iter()
        .filter(|(n, v)| *n >= 1 && *v > 1e-300)
        .map(|(n, v)| (*n as f64, v.ln()))
        .collect();
    if pts.len() < 3 {
        return Growth::Flat;
    }
    let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let xn: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let xl: Vec<f64> = pts.iter().map(|p| (1.0 + p.0).ln()).collect();
    let (_, slope_e, rss_e) = linalg::linear_fit(&xn, &y);
    let (_, slope_p, rss_p) = linalg::linear_fit(&xl, &y);
    if slope_e >= 0.1 && rss_e <= rss_p {
        Growth::Exponential(slope_e.exp())
    } else {
        Growth::Polynomial(slope_p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decay {
    NotApplicable(String),
    Rate { b_hat: f64, table: Vec<(usize, f64)> },
}

/// Decay of `(f − f^Q)(θ_{k x₀})` along a ray with `⟨x₀, α∨⟩ > a‖x₀‖`,
/// where `Q = F0 ∖ {α}`.
pub fn cterm_decay_probe(
    alg: &HeckeAlgebra,
    rep: &FinRep,
    wd: &WeightDatum,
    alpha: usize,
    av: &CVec,
    bv: &CVec,
    x0: &[i64],
    a: f64,
    kmax: usize,
) -> Result<Decay, HarmonicError> {
    let d = alg.datum();
    let norm = x0.iter().map(|v| (*v as f64).powi(2)).sum::<f64>().sqrt();
    let pair = d.pairing(x0, d.simple_root_index(alpha)) as f64;
    if !d.is_dominant(x0) || pair <= a * norm {
        return Ok(Decay::NotApplicable(format!("x0 outside X^+_a (⟨x0,α∨⟩ = {pair}, a‖x0‖ = {:.3})", a * norm)));
    }
    let q = Parabolic::new((0..d.num_simple()).filter(|&i| i != alpha).collect());
    let aq = repmod::constant_term_vector(d, wd, av, &q)?;
    let diff = av - aq;
    let step = rep.theta_x(x0);
    let mut cur = bv.clone();
    let mut table = Vec::new();
    for k in 0..=kmax {
        table.push((k, diff.dotc(&cur).norm()));
        cur = &step * cur;
    }
    let pts: Vec<(f64, f64)> = table.iter().filter(|(_, v)| *v > 1e-12 * av.norm() * bv.norm()).map(|(k, v)| (*k as f64, v.ln())).collect();
    if pts.len() < 2 {
        return Ok(Decay::NotApplicable("f - f^Q vanishes on this ray".into()));
    }
    let (_, slope, _) = linalg::linear_fit(&pts.iter().map(|p| p.0).collect::<Vec<_>>(), &pts.iter().map(|p| p.1).collect::<Vec<_>>());
    Ok(Decay::Rate { b_hat: -slope / norm, table })
}

#[derive(Clone, Debug)]
pub struct FactorSample {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub control: Complex64,
}

#[derive(Clone, Debug)]
pub struct FactorReport {
    pub samples: Vec<FactorSample>,
    pub max_discrepancy: f64,
    pub max_control: f64,
}

/// Factorization of the `w^{Q'}` part of the constant term of a principal
/// series coefficient through the principal series of `ℋ^Q`, at a generic
/// unitary `t`. The control multiplies `c^Q` by `q^{1/2}`.
pub fn factorization_check<R: Rng>(
    alg: &HeckeAlgebra,
    qset: &Parabolic,
    t: &TorusPoint,
    q: f64,
    trials: usize,
    rng: &mut R,
) -> Result<FactorReport, HarmonicError> {
    let d = alg.datum();
    let fin = alg.weyl().finite();
    let v = q.sqrt();
    check_generic(alg, t, q)?;
    let wq = alg.longest_min_rep(qset);
    let qp = alg.opposite(qset);
    let t2 = t.act(fin, wq);
    let ps = PrincipalSeries::new(alg, q)?;
    let pi_t2 = ps.at(&t2)?;
    let wd2 = repmod::weights(&pi_t2.rep, Some(&pi_t2.predicted_weights(alg)))?;
    let wq_grp = fin.parabolic_subgroup(qset);
    let orbit: Vec<TorusPoint> = wq_grp.iter().map(|&u| t.act(fin, u)).collect();
    let n = pi_t2.rep.dim;
    let mut e = CMat::zeros(n, n);
    for w in &wd2.weights {
        if orbit.iter().any(|o| o.dist(&w.t) < 1e-8) {
            e += &w.proj;
        }
    }
    let word: Vec<usize> = fin.word(wq).to_vec();
    let inter = repmod::right_intertwiner_word(alg, t, &word, q)?;
    let inter_inv = inter.clone().try_inverse().ok_or(RepError::SingularNormalization)?;
    let pos = |u: usize| pi_t2.reps.iter().position(|&r| r == u).expect("W0 basis");
    let wqp_grp = fin.parabolic_subgroup(&qp);

    let upper = alg.upper_algebra(qset).map_err(|e| HarmonicError::Precondition(e.to_string()))?;
    let ups = PrincipalSeries::new(&upper.alg, q)?;
    let pi_q = ups.at(t)?;
    let sub_pos = |u: usize| {
        let su = upper.from_parent(u).expect("element of W_Q");
        pi_q.reps.iter().position(|&r| r == su).expect("W_Q basis")
    };
    let others: Vec<usize> = positive_roots(alg).into_iter().filter(|&j| !in_parabolic(d, qset, j)).collect();
    let cq = CFunction::new(alg).eval(t, q, &others)?;
    let scale = c(v.powi(alg.q_half_exp_finite(wq))) * cq;

    let mut samples = Vec::new();
    for _ in 0..trials {
        let a2 = repmod::random_vector(n, rng);
        let mut b2 = CVec::zeros(n);
        for &u in &wqp_grp {
            b2[pos(u)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let h = repmod::random_bform(alg, rng, 2);
        let lhs = repmod::coefficient(&a2, &(&e * pi_t2.rep.bform(&h)), &b2);

        let pulled = &inter_inv * &a2;
        let m = pi_q.rep.dim;
        let mut aq = CVec::zeros(m);
        let mut bq = CVec::zeros(m);
        for &u in &wq_grp {
            aq[sub_pos(u)] = pulled[pos(u)];
            let u2 = fin.mul(fin.mul(wq, u), fin.inv(wq));
            bq[sub_pos(u)] = b2[pos(u2)];
        }
        let ph = alg.p_q(&h, qset);
        let ph_sub = BForm(ph.0.iter().map(|(u, x)| (upper.from_parent(*u).expect("p_Q lands in ℋ^Q"), x.clone())).collect());
        let base = repmod::coefficient(&aq, &pi_q.rep.bform(&ph_sub), &bq);
        samples.push(FactorSample { lhs, rhs: scale * base, control: scale * v * base });
    }
    let max_discrepancy = samples.iter().map(|s| (s.lhs - s.rhs).norm()).fold(0.0, f64::max);
    let max_control = samples.iter().map(|s| (s.lhs - s.control).norm()).fold(0.0, f64::max);
    Ok(FactorReport { samples, max_discrepancy, max_control })
}

/// Reject `t` whose `W0`-orbit has coincidences or where some `n_α`
/// vanishes, with margin `1e−6`.
pub fn check_generic(alg: &HeckeAlgebra, t: &TorusPoint, q: f64) -> Result<(), HarmonicError> {
    let fin = alg.weyl().finite();
    let orbit: Vec<TorusPoint> = (0..fin.order()).map(|u| t.act(fin, u)).collect();
    for i in 0..orbit.len() {
        for j in i + 1..orbit.len() {
            if orbit[i].dist(&orbit[j]) < 1e-6 {
                return Err(HarmonicError::Precondition("t is not regular".into()));
            }
        }
    }
    for p in &orbit {
        for i in 0..alg.datum().num_simple() {
            if alg.n_alpha(i).eval(p, q.sqrt()).norm() < 1e-6 {
                return Err(HarmonicError::Precondition("n_α vanishes on the orbit of t".into()));
            }
        }
    }
    Ok(())
}

/// Generic unitary point drawn from `rng`, resampled until generic.
pub fn generic_unitary<R: Rng>(alg: &HeckeAlgebra, q: f64, rng: &mut R) -> TorusPoint {
    loop {
        let t = TorusPoint::random_unitary(alg.rank(), rng);
        if check_generic(alg, &t, q).is_ok() {
            return t;
        }
    }
}

/// Dominant `x` with `⟨x, α∨⟩` large relative to `‖x‖`.
pub fn decay_rays(alg: &HeckeAlgebra, alpha: usize, count: usize) -> Vec<IVec> {
    let d = alg.datum();
    let ai = d.simple_root_index(alpha);
    let mut pts = repmod::dominant_points(d, 3);
    pts.retain(|x| d.pairing(x, ai) > 0);
    pts.sort_by(|x, y| {
        let r = |z: &IVec| -(d.pairing(z, ai) as f64) / z.iter().map(|v| (*v as f64).powi(2)).sum::<f64>().sqrt();
        r(x).total_cmp(&r(y)).then(x.cmp(y))
    });
    let mut out: Vec<IVec> = Vec::new();
    for x in pts {
        let primitive = !out.iter().any(|y| crate::lattice::rank(&[x.clone(), y.clone()]) == 1);
        if primitive {
            out.push(x);
        }
        if out.len() == count {
            break;
        }
    }
    out
}
