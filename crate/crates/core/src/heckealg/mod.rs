//! The affine Hecke algebra `ℋ(ℛ, q)` over `Q[v, v^{-1}]`, `v² = 𝐪`.

mod elements;
mod labels;

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_rational::Rational64;

pub use elements::{AElt, BForm, NForm, NumBForm, RBForm};
pub use labels::{equal_labels, LabelError, LabelSpec, Labels};

use crate::lattice::{self, dot, IMat, IVec};
use crate::laurent::Laurent;
use crate::rootdata::{DatumError, Parabolic, QuotientData, RootDatum};
use crate::torus::TorusPoint;
use crate::weyl::{Weyl, WeylElt};

type FinElt = BTreeMap<usize, Laurent>;

fn fin_add(m: &mut FinElt, u: usize, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let slot = m.entry(u).or_default();
    *slot += c;
    if slot.is_zero() {
        m.remove(&u);
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Labels(#[from] LabelError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error("generator {0} has an inconsistent Bernstein form")]
    Generator(String),
}

/// Failing commutator in a centrality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralWitness {
    Simple(usize),
    Theta(IVec),
}

#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    weyl: Weyl,
    labels: Labels,
    fin_table: Vec<Vec<FinElt>>,
    fin_inv: Vec<FinElt>,
    gen_bforms: Vec<BForm>,
    // Smith data of the simple-coroot matrix, for dominant splittings
    snf: (IMat, IMat, IMat),
}

impl HeckeAlgebra {
    pub fn new(datum: RootDatum, spec: &LabelSpec) -> Result<Self, AlgebraError> {
        let weyl = Weyl::new(datum);
        let labels = Labels::from_spec(&weyl, spec)?;
        Self::with_labels(weyl, labels)
    }

    pub fn preset(name: &str, spec: &LabelSpec) -> Result<Self, AlgebraError> {
        Self::new(RootDatum::preset(name)?, spec)
    }

    pub fn with_labels(weyl: Weyl, labels: Labels) -> Result<Self, AlgebraError> {
        let d = weyl.datum();
        let m: IMat = (0..d.num_simple()).map(|i| d.simple_coroot(i).clone()).collect();
        let snf = lattice::smith(&m, d.num_simple(), d.rank());
        let mut alg = HeckeAlgebra {
            weyl,
            labels,
            fin_table: Vec::new(),
            fin_inv: Vec::new(),
            gen_bforms: Vec::new(),
            snf,
        };
        let g = alg.weyl.finite().order();
        alg.fin_table = (0..g)
            .map(|u| (0..g).map(|v| alg.fin_product(u, v)).collect())
            .collect();
        alg.fin_inv = (0..g).map(|u| alg.fin_inverse(u)).collect();
        alg.gen_bforms = (0..alg.weyl.num_affine_simple())
            .map(|k| alg.generator_bform(&alg.weyl.simple_elt(k)))
            .collect();
        for k in 0..alg.weyl.num_affine_simple() {
            let w = alg.weyl.simple_elt(k);
            if alg.bform_to_nform(&alg.gen_bforms[k]) != NForm::basis(w) {
                return Err(AlgebraError::Generator(alg.weyl.letter_name(k).to_string()));
            }
        }
        Ok(alg)
    }

    pub fn weyl(&self) -> &Weyl {
        &self.weyl
    }
    pub fn datum(&self) -> &RootDatum {
        self.weyl.datum()
    }
    pub fn labels(&self) -> &Labels {
        &self.labels
    }
    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    /// `q(s_k)^{1/2} - q(s_k)^{-1/2}`
    fn quad(&self, k: usize) -> Laurent {
        Laurent::quad(self.labels.f(k))
    }

    /// Exponent `e` with `q(w)^{1/2} = v^e`.
    pub fn q_half_exp(&self, w: &WeylElt) -> i32 {
        self.weyl
            .reduced_word(w)
            .letters
            .iter()
            .map(|&k| self.labels.f(k))
            .sum()
    }

    pub fn q_half_exp_finite(&self, u: usize) -> i32 {
        self.weyl.finite().word(u).iter().map(|&i| self.labels.f(i)).sum()
    }

    // ---- finite Hecke algebra ----

    fn fin_mul_simple(&self, h: &FinElt, i: usize) -> FinElt {
        let fin = self.weyl.finite();
        let s = fin.simple(i);
        let mut out = FinElt::new();
        for (&w, c) in h {
            let ws = fin.mul(w, s);
            fin_add(&mut out, ws, c);
            if fin.len(ws) < fin.len(w) {
                fin_add(&mut out, w, &(c * &self.quad(i)));
            }
        }
        out
    }

    fn fin_product(&self, u: usize, v: usize) -> FinElt {
        let mut acc = FinElt::from([(u, Laurent::one())]);
        for &i in self.weyl.finite().word(v) {
            acc = self.fin_mul_simple(&acc, i);
        }
        acc
    }

    fn fin_inverse(&self, u: usize) -> FinElt {
        let mut acc = FinElt::from([(0, Laurent::one())]);
        for &i in self.weyl.finite().word(u).iter().rev() {
            let mut next = self.fin_mul_simple(&acc, i);
            for (w, c) in &acc {
                fin_add(&mut next, *w, &-(c * &self.quad(i)));
            }
            acc = next;
        }
        acc
    }

    /// `N_u N_v` in `ℋ(W0)`.
    pub fn fin_mul(&self, u: usize, v: usize) -> &BTreeMap<usize, Laurent> {
        &self.fin_table[u][v]
    }
    /// `N_u^{-1}` in `ℋ(W0)`.
    pub fn fin_inv(&self, u: usize) -> &BTreeMap<usize, Laurent> {
        &self.fin_inv[u]
    }

    // ---- N-basis ----

    fn nmul_simple(&self, h: &NForm, k: usize) -> NForm {
        let s = self.weyl.simple_elt(k);
        let q = self.quad(k);
        let mut out = NForm::zero();
        for (w, c) in &h.0 {
            let ws = self.weyl.mul(w, &s);
            out.add_term(&ws, c);
            if self.weyl.is_right_descent(w, k) {
                out.add_term(w, &(c * &q));
            }
        }
        out
    }

    fn nmul_elt(&self, h: &NForm, omega: &WeylElt) -> NForm {
        NForm(h.0.iter().map(|(w, c)| (self.weyl.mul(w, omega), c.clone())).collect())
    }

    /// Product in the `N`-basis, folding one simple reflection at a time.
    pub fn nmul(&self, a: &NForm, b: &NForm) -> NForm {
        let mut out = NForm::zero();
        for (w2, c2) in &b.0 {
            let rw = self.weyl.reduced_word(w2);
            let mut acc = self.nmul_elt(a, &rw.omega);
            for &k in &rw.letters {
                acc = self.nmul_simple(&acc, k);
            }
            out = out.add(&acc.scale(c2));
        }
        out
    }

    pub fn one(&self) -> NForm {
        NForm::basis(self.weyl.identity())
    }

    /// `N_w^{-1}`
    pub fn invert_basis(&self, w: &WeylElt) -> NForm {
        let rw = self.weyl.reduced_word(w);
        let mut acc = self.one();
        for &k in rw.letters.iter().rev() {
            let q = self.quad(k);
            acc = self.nmul_simple(&acc, k).sub(&acc.scale(&q));
        }
        self.nmul_elt(&acc, &self.weyl.inv(&rw.omega))
    }

    /// A dominant `y` with `x + y` dominant and `<y, 2ρ∨>` minimal.
    pub fn dominant_complement(&self, x: &[i64]) -> IVec {
        let d = self.datum();
        let r = d.num_simple();
        let n = d.rank();
        let need: Vec<i64> = (0..r).map(|i| (-dot(x, d.simple_coroot(i))).max(0)).collect();
        if need.iter().all(|c| *c == 0) {
            return vec![0; n];
        }
        let (u, dm, vm) = &self.snf;
        let box_side = (0..r).map(|i| dm[i][i]).max().unwrap_or(1);
        let lift = |p: &[i64]| -> Option<IVec> {
            let up = lattice::mat_vec(u, p);
            let mut z = vec![0; n];
            for i in 0..r {
                if up[i] % dm[i][i] != 0 {
                    return None;
                }
                z[i] = up[i] / dm[i][i];
            }
            Some(lattice::mat_vec(vm, &z))
        };
        let mut best: Option<(i64, IVec, IVec)> = None;
        let mut p = need.clone();
        loop {
            if let Some(y) = lift(&p) {
                let cost = dot(&y, d.two_rho_check());
                if best.as_ref().is_none_or(|(c, bp, _)| (cost, &p) < (*c, bp)) {
                    best = Some((cost, p.clone(), y));
                }
            }
            // odometer over the box need_i ..= need_i + box_side
            let mut i = 0;
            loop {
                if i == r {
                    return best.expect("the pairing lattice has full rank").2;
                }
                if p[i] < need[i] + box_side {
                    p[i] += 1;
                    break;
                }
                p[i] = need[i];
                i += 1;
            }
        }
    }

    /// `θ_x = N_{t_{x+}} N_{t_{x−}}^{-1}` for a given dominant splitting.
    pub fn theta_split(&self, xp: &[i64], xm: &[i64]) -> NForm {
        let d = self.datum();
        assert!(d.is_dominant(xp) && d.is_dominant(xm), "splitting must be dominant");
        let a = NForm::basis(self.weyl.translation(xp));
        self.nmul(&a, &self.invert_basis(&self.weyl.translation(xm)))
    }

    pub fn theta(&self, x: &[i64]) -> NForm {
        let y = self.dominant_complement(x);
        self.theta_split(&lattice::add(x, &y), &y)
    }

    // ---- trace, star, inner product ----

    pub fn trace(&self, h: &NForm) -> Laurent {
        h.coeff(&self.weyl.identity())
    }

    pub fn star(&self, h: &NForm) -> NForm {
        NForm(h.0.iter().map(|(w, c)| (self.weyl.inv(w), c.clone())).collect())
    }

    pub fn inner(&self, a: &NForm, b: &NForm) -> Laurent {
        self.trace(&self.nmul(&self.star(a), b))
    }

    /// `p_n(h) = max_w |(N_w, h)| (1 + 𝒩(w))^n` at numeric `v`.
    pub fn seminorm(&self, h: &NForm, n: i32, v: f64) -> f64 {
        h.0.iter()
            .map(|(w, c)| c.eval(v).abs() * (1.0 + self.weyl.norm_f64(w)).powi(n))
            .fold(0.0, f64::max)
    }

    // ---- Bernstein presentation ----

    /// `(θ_x − θ_{s(x)}) / (1 − θ_{−γ})` with `s(x) = x − mγ`, as a finite sum.
    fn divided_difference(x: &[i64], gamma: &[i64], m: i64) -> AElt {
        let mut out = AElt::zero();
        if m > 0 {
            for j in 0..m {
                out.add_term(&lattice::sub(x, &lattice::scale(j, gamma)), &Laurent::one());
            }
        } else {
            for j in 1..=-m {
                out.add_term(&lattice::add(x, &lattice::scale(j, gamma)), &Laurent::int(-1));
            }
        }
        out
    }

    /// `C_i(x) = θ_x N_s − N_s θ_{s(x)}` for the finite simple reflection `i`.
    pub fn cross_theta(&self, i: usize, x: &[i64]) -> AElt {
        let d = self.datum();
        let j = d.simple_root_index(i);
        let alpha = d.root(j);
        let k = d.pairing(x, j);
        if k == 0 {
            return AElt::zero();
        }
        if d.doubles(j) {
            let gamma = lattice::scale(2, alpha);
            let dd = Self::divided_difference(x, &gamma, k / 2);
            let mut num = AElt::constant(self.rank(), Laurent::quad(self.labels.f1(j)));
            num.add_term(&lattice::neg(alpha), &Laurent::quad(self.labels.f0(j)));
            num.mul(&dd)
        } else {
            Self::divided_difference(x, alpha, k).scale(&Laurent::quad(self.labels.f1(j)))
        }
    }

    fn cross(&self, i: usize, a: &AElt) -> AElt {
        let mut out = AElt::zero();
        for (x, c) in &a.0 {
            out.add_assign(&self.cross_theta(i, x).scale(c));
        }
        out
    }

    /// `N_{s_i} · h`
    pub fn left_mul_simple(&self, i: usize, h: &BForm) -> BForm {
        let fin = self.weyl.finite();
        let s = fin.simple(i);
        let mut out = BForm::zero();
        for (&u, a) in &h.0 {
            let sa = a.act(fin, s);
            for (w, c) in &self.fin_table[s][u] {
                out.add_part(*w, &sa.scale(c));
            }
            out.add_part(u, &self.cross(i, &sa).neg());
        }
        out
    }

    /// `h · N_{s_i}` for a right Bernstein form.
    pub fn right_mul_simple(&self, i: usize, h: &RBForm) -> RBForm {
        let fin = self.weyl.finite();
        let s = fin.simple(i);
        let mut out = RBForm::zero();
        for (&u, b) in &h.0 {
            let sb = b.act(fin, s);
            for (w, c) in &self.fin_table[u][s] {
                out.add_part(*w, &sb.scale(c));
            }
            out.add_part(u, &self.cross(i, b));
        }
        out
    }

    /// `N_u · h`
    pub fn left_mul_finite(&self, u: usize, h: &BForm) -> BForm {
        let mut acc = h.clone();
        for &i in self.weyl.finite().word(u).iter().rev() {
            acc = self.left_mul_simple(i, &acc);
        }
        acc
    }

    /// `h · N_v` for `v ∈ W0`.
    pub fn right_mul_finite(&self, h: &BForm, v: usize) -> BForm {
        let mut out = BForm::zero();
        for (&u, a) in &h.0 {
            for (w, c) in &self.fin_table[u][v] {
                out.add_part(*w, &a.scale(c));
            }
        }
        out
    }

    /// `h · Σ c_v N_v` for a finite element given by its coefficients.
    pub fn right_mul_fin_elt(&self, h: &BForm, e: &BTreeMap<usize, Laurent>) -> BForm {
        let mut out = BForm::zero();
        for (v, c) in e {
            out = out.add(&self.right_mul_finite(h, *v).scale(c));
        }
        out
    }

    pub fn bmul(&self, a: &BForm, b: &BForm) -> BForm {
        let mut out = BForm::zero();
        for (&u, au) in &a.0 {
            out = out.add(&self.left_mul_finite(u, b).left_scale(au));
        }
        out
    }

    pub fn finite_bform(&self, e: &BTreeMap<usize, Laurent>) -> BForm {
        let mut out = BForm::zero();
        for (u, c) in e {
            out.add_part(*u, &AElt::constant(self.rank(), c.clone()));
        }
        out
    }

    /// `N_g` for a generator `g = t_x u`: `N_u` when `x = 0`, otherwise
    /// `θ_x N_{u^{-1}}^{-1}` (length zero, or a non-finite affine simple
    /// reflection).
    pub fn generator_bform(&self, g: &WeylElt) -> BForm {
        if lattice::is_zero(&g.x) {
            return BForm::single(g.u, AElt::constant(self.rank(), Laurent::one()));
        }
        let fin = self.weyl.finite();
        let mut out = BForm::zero();
        for (v, c) in &self.fin_inv[fin.inv(g.u)] {
            out.add_part(*v, &AElt::term(g.x.clone(), c.clone()));
        }
        out
    }

    /// Bernstein form of `N_w`.
    pub fn basis_bform(&self, w: &WeylElt) -> BForm {
        let rw = self.weyl.reduced_word(w);
        let mut acc = self.generator_bform(&rw.omega);
        let r = self.datum().num_simple();
        for &k in &rw.letters {
            acc = if k < r {
                self.right_mul_finite(&acc, self.weyl.finite().simple(k))
            } else {
                self.bmul(&acc, &self.gen_bforms[k])
            };
        }
        acc
    }

    pub fn nform_to_bform(&self, h: &NForm) -> BForm {
        let mut out = BForm::zero();
        for (w, c) in &h.0 {
            out = out.add(&self.basis_bform(w).scale(c));
        }
        out
    }

    pub fn bform_to_nform(&self, h: &BForm) -> NForm {
        let mut by_x: BTreeMap<IVec, NForm> = BTreeMap::new();
        for (&u, a) in &h.0 {
            for (x, c) in &a.0 {
                by_x.entry(x.clone())
                    .or_default()
                    .add_term(&self.weyl.finite_elt(u), c);
            }
        }
        let mut out = NForm::zero();
        for (x, fin) in by_x {
            out = out.add(&self.nmul(&self.theta(&x), &fin));
        }
        out
    }

    pub fn to_right(&self, h: &BForm) -> RBForm {
        let mut out = RBForm::zero();
        for (&u, a) in &h.0 {
            let mut acc = RBForm::single(0, a.clone());
            for &i in self.weyl.finite().word(u) {
                acc = self.right_mul_simple(i, &acc);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn to_left(&self, h: &RBForm) -> BForm {
        let mut out = BForm::zero();
        for (&u, b) in &h.0 {
            out = out.add(&self.left_mul_finite(u, &BForm::single(0, b.clone())));
        }
        out
    }

    /// `Z(ℋ) = 𝒜^{W0}` membership, tested against the generators.
    pub fn is_central(&self, h: &BForm) -> Result<(), CentralWitness> {
        let d = self.datum();
        for i in 0..d.num_simple() {
            let s = self.weyl.finite().simple(i);
            let lhs = self.right_mul_finite(h, s);
            let rhs = self.left_mul_simple(i, h);
            if lhs != rhs {
                return Err(CentralWitness::Simple(i));
            }
        }
        for j in 0..self.rank() {
            let e: IVec = (0..self.rank()).map(|r| i64::from(r == j)).collect();
            let th = BForm::theta(e.clone());
            if self.bmul(&th, h) != self.bmul(h, &th) {
                return Err(CentralWitness::Theta(e));
            }
        }
        Ok(())
    }

    /// Sum of `θ_{ux}` over the `W0`-orbit of `x`.
    pub fn orbit_sum(&self, x: &[i64]) -> BForm {
        let fin = self.weyl.finite();
        let orbit: BTreeSet<IVec> = (0..fin.order()).map(|u| fin.act(u, x)).collect();
        let mut a = AElt::zero();
        for y in orbit {
            a.add_term(&y, &Laurent::one());
        }
        BForm::single(0, a)
    }

    // ---- intertwiners ----

    /// `ι_s` for the finite simple reflection `i`.
    pub fn intertwiner(&self, i: usize) -> BForm {
        let d = self.datum();
        let n = self.rank();
        let j = d.simple_root_index(i);
        let alpha = d.root(j);
        let s = self.weyl.finite().simple(i);
        let (f1, f0) = (self.labels.f1(j), self.labels.f0(j));
        let one = Laurent::one();
        let q1 = Laurent::v_pow(2 * f1);
        let h1 = Laurent::v_pow(f1);
        let step = if d.doubles(j) { lattice::scale(2, alpha) } else { alpha.clone() };
        let mut ns = AElt::constant(n, h1.clone());
        ns.add_term(&lattice::neg(&step), &-&h1);
        let mut c = AElt::constant(n, &one - &q1);
        if d.doubles(j) {
            let coef = &Laurent::v_pow(f1 - f0) * &(&one - &Laurent::v_pow(2 * f0));
            c.add_term(&lattice::neg(alpha), &coef);
        }
        let mut out = BForm::single(s, ns);
        out.add_part(0, &c);
        out
    }

    /// `n_α` with `ι_s² = n_α · s(n_α)`.
    pub fn n_alpha(&self, i: usize) -> AElt {
        let d = self.datum();
        let n = self.rank();
        let j = d.simple_root_index(i);
        let alpha = d.root(j);
        let (f1, f0) = (self.labels.f1(j), self.labels.f0(j));
        let ma = lattice::neg(alpha);
        if d.doubles(j) {
            let mut a = AElt::constant(n, Laurent::v_pow(f1 - f0));
            a.add_term(&ma, &Laurent::one());
            let mut b = AElt::constant(n, Laurent::v_pow(f1 + f0));
            b.add_term(&ma, &Laurent::int(-1));
            a.mul(&b)
        } else {
            let mut a = AElt::constant(n, Laurent::v_pow(2 * f1));
            a.add_term(&ma, &Laurent::int(-1));
            a
        }
    }

    // ---- parabolic subalgebras ----

    /// Labels on a sub-datum whose roots come from `R_P` via `parent_root`.
    fn restricted_labels(
        &self,
        p: &Parabolic,
        sub: &Weyl,
        parent_root: impl Fn(&IVec) -> usize,
    ) -> Result<Labels, AlgebraError> {
        let r = p.len();
        let f = sub
            .affine_simples()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if k < r {
                    self.labels.f(p.indices()[k])
                } else {
                    self.labels.f0(parent_root(sub.datum().root(a.root.root)))
                }
            })
            .collect();
        Ok(Labels::from_affine(sub, f)?)
    }

    /// `ℋ^P = ℋ(ℛ^P)` together with the embedding of its finite group.
    pub fn upper_algebra(&self, p: &Parabolic) -> Result<SubAlgebra, AlgebraError> {
        let qd = self.datum().quotient_data(p)?;
        let sub = Weyl::new(qd.upper.clone());
        let d = self.datum();
        let labels = self.restricted_labels(p, &sub, |v| d.root_index(v).expect("root of R_P"))?;
        let alg = HeckeAlgebra::with_labels(sub, labels)?;
        Ok(SubAlgebra::new(self, alg, qd))
    }

    /// The semisimple quotient `ℋ_P = ℋ(ℛ_P)`.
    pub fn lower_algebra(&self, p: &Parabolic) -> Result<SubAlgebra, AlgebraError> {
        let qd = self.datum().quotient_data(p)?;
        let lower = match &qd.lower {
            Some(l) => l.clone(),
            None => RootDatum::from_simple("rank0", 0, &[])?,
        };
        let sub = Weyl::new(lower);
        let d = self.datum();
        let labels = self.restricted_labels(p, &sub, |v| {
            *qd.sub
                .roots
                .iter()
                .find(|&&j| &qd.project(d.root(j)) == v)
                .expect("projection is injective on R_P")
        })?;
        let alg = HeckeAlgebra::with_labels(sub, labels)?;
        Ok(SubAlgebra::new(self, alg, qd))
    }

    // ---- double cosets and p_Q ----

    /// `Q' = −w0(Q)`
    pub fn opposite(&self, q: &Parabolic) -> Parabolic {
        let d = self.datum();
        let fin = self.weyl.finite();
        let w0 = fin.longest();
        Parabolic::new(
            q.iter()
                .map(|i| {
                    let img = d.neg(fin.act_root(w0, d.simple_root_index(i)));
                    (0..d.num_simple()).find(|&k| d.simple_root_index(k) == img).unwrap()
                })
                .collect(),
        )
    }

    /// Split `h` along the double cosets `W_Q d W_P` of its finite support.
    pub fn double_coset_split(&self, h: &BForm, q: &Parabolic, p: &Parabolic) -> Vec<(usize, BForm)> {
        let fin = self.weyl.finite();
        let wq = fin.parabolic_subgroup(q);
        let wp = fin.parabolic_subgroup(p);
        self.weyl
            .double_cosets(q, p)
            .into_iter()
            .map(|(d, _)| {
                let cell: BTreeSet<usize> = wq
                    .iter()
                    .flat_map(|&a| wp.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| fin.mul(fin.mul(a, d), b))
                    .collect();
                let mut part = BForm::zero();
                for (u, a) in &h.0 {
                    if cell.contains(u) {
                        part.add_part(*u, a);
                    }
                }
                (d, part)
            })
            .collect()
    }

    /// `w^{Q'}`, the longest element of `W^{Q'}`.
    pub fn longest_min_rep(&self, q: &Parabolic) -> usize {
        let fin = self.weyl.finite();
        fin.mul(fin.longest(), self.weyl.longest_in(q))
    }

    /// `p_Q(h) = π^{w^{Q'}}(h) N_{w^{Q'}}^{-1}`, an element of `ℋ^Q`.
    pub fn p_q(&self, h: &BForm, q: &Parabolic) -> BForm {
        let qp = self.opposite(q);
        let wqp = self.longest_min_rep(&qp);
        let part = self
            .double_coset_split(h, q, &qp)
            .into_iter()
            .find(|(d, _)| *d == wqp)
            .map(|(_, b)| b)
            .unwrap_or_default();
        self.right_mul_fin_elt(&part, &self.fin_inv[wqp])
    }

    // ---- output ----

    pub fn format_nform(&self, h: &NForm) -> Vec<(String, String)> {
        let mut rows: Vec<((Rational64, String), String)> = h
            .0
            .iter()
            .map(|(w, c)| (self.weyl.sort_key(w), c.to_string()))
            .collect();
        rows.sort();
        rows.into_iter().map(|((_, w), c)| (w, c)).collect()
    }

    pub fn format_bform(&self, h: &BForm) -> Vec<(String, String, String)> {
        let fin = self.weyl.finite();
        let mut keys: Vec<usize> = h.0.keys().copied().collect();
        keys.sort_by_key(|&u| fin.key(u));
        let mut out = Vec::new();
        for u in keys {
            let w = self.weyl.format(&self.weyl.finite_elt(u));
            for (x, c) in &h.0[&u].0 {
                out.push((w.clone(), format!("{x:?}"), c.to_string()));
            }
        }
        out
    }

    /// Numeric value of `v = 𝐪^{1/2}`.
    pub fn v_of(q: f64) -> f64 {
        q.sqrt()
    }

    pub fn eval_aelt(&self, a: &AElt, t: &TorusPoint, q: f64) -> Complex64 {
        a.eval(t, Self::v_of(q))
    }
}

/// A parabolic subalgebra or quotient, with the dictionary between its
/// finite Weyl group and the standard parabolic subgroup `W_P ⊂ W0`.
#[derive(Clone, Debug)]
pub struct SubAlgebra {
    pub alg: HeckeAlgebra,
    pub qd: QuotientData,
    /// sub finite index -> parent finite index
    pub to_parent: Vec<usize>,
}

impl SubAlgebra {
    fn new(parent: &HeckeAlgebra, alg: HeckeAlgebra, qd: QuotientData) -> Self {
        let pf = parent.weyl().finite();
        let sf = alg.weyl().finite();
        let to_parent = (0..sf.order())
            .map(|u| {
                let word: Vec<usize> = sf.word(u).iter().map(|&i| qd.p.indices()[i]).collect();
                pf.from_word(&word)
            })
            .collect();
        SubAlgebra { alg, qd, to_parent }
    }

    pub fn from_parent(&self, u: usize) -> Option<usize> {
        self.to_parent.iter().position(|&v| v == u)
    }

    /// Embed an element of `ℋ^P` (same lattice) into `ℋ`.
    pub fn embed(&self, h: &BForm) -> BForm {
        BForm(h.0.iter().map(|(u, a)| (self.to_parent[*u], a.clone())).collect())
    }

    /// `φ_{t^P}`: an element of `ℋ^P`, written in the parent's Bernstein
    /// form, sent to `ℋ_P` with numeric coefficients `x(t^P)`.
    pub fn phi(&self, h: &BForm, t: &TorusPoint, q: f64) -> Option<NumBForm> {
        let v = HeckeAlgebra::v_of(q);
        let mut out = NumBForm::default();
        for (u, a) in &h.0 {
            let su = self.from_parent(*u)?;
            for (x, c) in &a.0 {
                out.add_term(su, self.qd.project(x), c.eval_c(v) * t.eval(x));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: &str) -> HeckeAlgebra {
        HeckeAlgebra::preset(p, &equal_labels(1)).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let a = alg("A2");
        let s = NForm::basis(a.weyl().simple_elt(0));
        let lhs = a.nmul(&s, &s);
        let rhs = a.one().add(&s.scale(&Laurent::quad(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_in_a1() {
        let a = alg("A1-sc");
        let th = a.theta(&[-1]);
        assert_eq!(th, a.invert_basis(&a.weyl().translation(&[1])));
        assert_eq!(a.nmul(&a.theta(&[1]), &th), a.one());
    }

    #[test]
    fn generators_have_consistent_bforms() {
        for p in ["A1-sc", "A1-adj", "A2", "B2", "GL2"] {
            let a = alg(p);
            if let Some(om) = a.weyl().omega_elements() {
                for w in om {
                    assert_eq!(a.bform_to_nform(&a.generator_bform(&w)), NForm::basis(w), "{p}");
                }
            }
        }
    }

    #[test]
    fn b2_long_label() {
        let mut spec = equal_labels(1);
        spec.insert("long".into(), 2);
        let a = HeckeAlgebra::preset("B2", &spec).unwrap();
        let f: Vec<i32> = a.labels().all().to_vec();
        assert_eq!(f, vec![1, 2, 1]);
    }
}
