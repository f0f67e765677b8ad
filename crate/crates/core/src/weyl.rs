//! The extended affine Weyl group `W = W0 ⋉ X`.
//!
//! An element `(x, u)` stands for `t_x ∘ u`, so
//! `(x1, u1)(x2, u2) = (x1 + u1 x2, u1 u2)`. Finite parts are indices into
//! a precomputed table of `W0` acting on `X` by integer matrices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::lattice::{self, dot, IMat, IVec};
use crate::rootdata::{Parabolic, RootDatum};

#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    mats: Vec<IMat>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    len: Vec<usize>,
    words: Vec<Vec<usize>>,
    root_perm: Vec<Vec<usize>>,
    simple: Vec<usize>,
    longest: usize,
}

impl FiniteWeyl {
    pub fn new(d: &RootDatum) -> Self {
        let n = d.rank();
        let refl: Vec<IMat> = (0..d.num_simple())
            .map(|i| {
                let (a, c) = (d.simple_root(i), d.simple_coroot(i));
                (0..n)
                    .map(|r| (0..n).map(|j| i64::from(r == j) - a[r] * c[j]).collect())
                    .collect()
            })
            .collect();
        let mut mats = vec![lattice::identity(n)];
        let mut index: HashMap<IMat, usize> = HashMap::new();
        index.insert(mats[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for r in &refl {
                let m = lattice::mat_mul(&mats[w], r);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), mats.len());
                    queue.push_back(mats.len());
                    mats.push(m);
                }
            }
        }
        let g = mats.len();
        let mult: Vec<Vec<usize>> = (0..g)
            .map(|a| (0..g).map(|b| index[&lattice::mat_mul(&mats[a], &mats[b])]).collect())
            .collect();
        let inv: Vec<usize> = (0..g).map(|a| (0..g).find(|&b| mult[a][b] == 0).unwrap()).collect();
        let root_perm: Vec<Vec<usize>> = mats
            .iter()
            .map(|m| {
                (0..d.num_roots())
                    .map(|j| d.root_index(&lattice::mat_vec(m, d.root(j))).expect("W0 permutes roots"))
                    .collect()
            })
            .collect();
        let len: Vec<usize> = root_perm
            .iter()
            .map(|p| {
                (0..d.num_roots())
                    .filter(|&j| d.is_positive(j) && !d.is_positive(p[j]))
                    .count()
            })
            .collect();
        let simple: Vec<usize> = refl.iter().map(|r| index[r]).collect();
        let words = (0..g)
            .map(|w| {
                let mut w = w;
                let mut word = Vec::new();
                while len[w] > 0 {
                    let i = (0..simple.len())
                        .find(|&i| len[mult[w][simple[i]]] < len[w])
                        .unwrap();
                    word.push(i);
                    w = mult[w][simple[i]];
                }
                word.reverse();
                word
            })
            .collect();
        let longest = (0..g).max_by_key(|&w| len[w]).unwrap();
        FiniteWeyl {
            mats,
            mult,
            inv,
            len,
            words,
            root_perm,
            simple,
            longest,
        }
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn len(&self, a: usize) -> usize {
        self.len[a]
    }
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }
    pub fn longest(&self) -> usize {
        self.longest
    }
    pub fn matrix(&self, a: usize) -> &IMat {
        &self.mats[a]
    }
    /// Root index of `u(α_j)`.
    pub fn act_root(&self, u: usize, j: usize) -> usize {
        self.root_perm[u][j]
    }
    pub fn act(&self, u: usize, x: &[i64]) -> IVec {
        lattice::mat_vec(&self.mats[u], x)
    }
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &i| self.mult[w][self.simple[i]])
    }
    /// Elements generated by the simple reflections in `p`.
    pub fn parabolic_subgroup(&self, p: &Parabolic) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for i in p.iter() {
                let n = self.mult[w][self.simple[i]];
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().collect()
    }
    /// Sort key: length, then reduced word.
    pub fn key(&self, a: usize) -> (usize, Vec<usize>) {
        (self.len[a], self.words[a].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    pub x: IVec,
    pub u: usize,
}

/// An affine root `(α∨, n)` stored as a root index (for `α∨`) and a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

#[derive(Clone, Debug)]
pub struct AffSimple {
    pub name: String,
    pub elt: WeylElt,
    pub root: AffineRoot,
}

#[derive(Clone, Debug)]
pub struct OmegaGen {
    pub name: String,
    pub elt: WeylElt,
    /// 0 means infinite order.
    pub order: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub omega: WeylElt,
    pub letters: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum WordError {
    #[error("unknown token '{0}' in word")]
    Token(String),
}

#[derive(Clone, Debug)]
pub struct Weyl {
    datum: RootDatum,
    fin: FiniteWeyl,
    aff: Vec<AffSimple>,
    aff_index: HashMap<WeylElt, usize>,
    omega_gens: Vec<OmegaGen>,
    // X/Q coordinates: rows of the Smith transform, with moduli
    omega_rows: Vec<(IVec, i64)>,
}

impl Weyl {
    pub fn new(datum: RootDatum) -> Self {
        let fin = FiniteWeyl::new(&datum);
        let n = datum.rank();
        let mut aff: Vec<AffSimple> = (0..datum.num_simple())
            .map(|i| AffSimple {
                name: format!("s{}", i + 1),
                elt: WeylElt {
                    x: vec![0; n],
                    u: fin.simple(i),
                },
                root: AffineRoot {
                    root: datum.simple_root_index(i),
                    level: 0,
                },
            })
            .collect();
        let comps = datum.components();
        for (c, comp) in comps.iter().enumerate() {
            let theta = datum.highest_coroot_root(comp);
            let u = fin
                .mats
                .iter()
                .position(|m| {
                    (0..n).all(|j| {
                        let e: IVec = (0..n).map(|r| i64::from(r == j)).collect();
                        lattice::mat_vec(m, &e) == datum.reflect(theta, &e)
                    })
                })
                .expect("reflection in θ lies in W0");
            let name = if comps.len() == 1 {
                "s0".to_string()
            } else {
                format!("s0_{}", c + 1)
            };
            aff.push(AffSimple {
                name,
                elt: WeylElt {
                    x: datum.root(theta).clone(),
                    u,
                },
                root: AffineRoot {
                    root: datum.neg(theta),
                    level: 1,
                },
            });
        }
        let aff_index = aff.iter().enumerate().map(|(k, s)| (s.elt.clone(), k)).collect();
        let r = datum.num_simple();
        let cols: Vec<IVec> = (0..r).map(|i| datum.simple_root(i).clone()).collect();
        let (u, d, _) = if r == 0 {
            (lattice::identity(n), vec![vec![0; 0]; n], lattice::identity(0))
        } else {
            lattice::smith(&lattice::from_columns(&cols, n), n, r)
        };
        let uinv = lattice::unimodular_inverse(&u);
        let mut omega_rows = Vec::new();
        let mut gen_vecs = Vec::new();
        for i in 0..n {
            let m = if i < r { d[i][i] } else { 0 };
            if m == 1 {
                continue;
            }
            omega_rows.push((u[i].clone(), m));
            gen_vecs.push(((0..n).map(|j| uinv[j][i]).collect::<IVec>(), m));
        }
        let mut w = Weyl {
            datum,
            fin,
            aff,
            aff_index,
            omega_gens: Vec::new(),
            omega_rows,
        };
        let single = gen_vecs.len() == 1;
        w.omega_gens = gen_vecs
            .into_iter()
            .enumerate()
            .map(|(i, (g, m))| {
                let t = w.translation(&g);
                OmegaGen {
                    name: if single { "pi".into() } else { format!("pi{}", i + 1) },
                    elt: w.reduced_word(&t).omega,
                    order: m,
                }
            })
            .collect();
        w
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }
    pub fn finite(&self) -> &FiniteWeyl {
        &self.fin
    }
    pub fn rank(&self) -> usize {
        self.datum.rank()
    }
    pub fn num_affine_simple(&self) -> usize {
        self.aff.len()
    }
    pub fn affine_simple(&self, k: usize) -> &AffSimple {
        &self.aff[k]
    }
    pub fn affine_simples(&self) -> &[AffSimple] {
        &self.aff
    }
    /// Index of `w` among the affine simple reflections.
    pub fn affine_simple_index(&self, w: &WeylElt) -> Option<usize> {
        self.aff_index.get(w).copied()
    }
    pub fn omega_gens(&self) -> &[OmegaGen] {
        &self.omega_gens
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt {
            x: vec![0; self.rank()],
            u: 0,
        }
    }
    pub fn translation(&self, x: &[i64]) -> WeylElt {
        WeylElt { x: x.to_vec(), u: 0 }
    }
    pub fn finite_elt(&self, u: usize) -> WeylElt {
        WeylElt {
            x: vec![0; self.rank()],
            u,
        }
    }
    pub fn simple_elt(&self, k: usize) -> WeylElt {
        self.aff[k].elt.clone()
    }
    pub fn is_identity(&self, w: &WeylElt) -> bool {
        w.u == 0 && lattice::is_zero(&w.x)
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        WeylElt {
            x: lattice::add(&a.x, &self.fin.act(a.u, &b.x)),
            u: self.fin.mul(a.u, b.u),
        }
    }
    pub fn inv(&self, a: &WeylElt) -> WeylElt {
        let ui = self.fin.inv(a.u);
        WeylElt {
            x: lattice::neg(&self.fin.act(ui, &a.x)),
            u: ui,
        }
    }
    pub fn pow(&self, a: &WeylElt, k: i64) -> WeylElt {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        (0..k.abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }
    /// `w(y) = x + u(y)` for `y` in `X`.
    pub fn act(&self, w: &WeylElt, y: &[i64]) -> IVec {
        lattice::add(&w.x, &self.fin.act(w.u, y))
    }
    /// `w(α∨, n) = (uα∨, n − <x, uα∨>)`.
    pub fn act_affine_root(&self, w: &WeylElt, a: AffineRoot) -> AffineRoot {
        let j = self.fin.act_root(w.u, a.root);
        AffineRoot {
            root: j,
            level: a.level - self.datum.pairing(&w.x, j),
        }
    }
    pub fn is_positive_affine(&self, a: AffineRoot) -> bool {
        a.level > 0 || (a.level == 0 && self.datum.is_positive(a.root))
    }

    /// Number of positive affine roots made negative, counted per coroot
    /// in closed form.
    pub fn length(&self, w: &WeylElt) -> usize {
        let d = &self.datum;
        let mut l = 0i64;
        for j in 0..d.num_roots() {
            if !d.is_positive(j) {
                continue;
            }
            let b = self.fin.act_root(w.u, j);
            let k = d.pairing(&w.x, b);
            l += if d.is_positive(b) { k.abs() } else { (k + 1).abs() };
        }
        l as usize
    }

    /// Coefficients of the projection of `x` onto `Q⊗Z_X` along `Q⊗Q`,
    /// in the fixed basis of `Z_X`.
    pub fn central_part(&self, x: &[i64]) -> Vec<Rational64> {
        let d = &self.datum;
        if d.z_basis().is_empty() {
            return Vec::new();
        }
        let mut cols: Vec<IVec> = (0..d.num_simple()).map(|i| d.simple_root(i).clone()).collect();
        cols.extend(d.z_basis().iter().cloned());
        let sol = lattice::solve_rational(&cols, x).expect("simple roots and Z_X span Q⊗X");
        sol[d.num_simple()..].to_vec()
    }

    pub fn norm(&self, w: &WeylElt) -> Rational64 {
        let c: Rational64 = self.central_part(&w.x).iter().map(|a| a.abs()).sum();
        Rational64::from(self.length(w) as i64) + c
    }

    pub fn norm_f64(&self, w: &WeylElt) -> f64 {
        let r = self.norm(w);
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Peel right descents, lowest affine-simple index first.
    pub fn reduced_word(&self, w: &WeylElt) -> ReducedWord {
        let mut cur = w.clone();
        let mut l = self.length(&cur);
        let mut letters = Vec::with_capacity(l);
        while l > 0 {
            let (k, next) = (0..self.aff.len())
                .map(|k| (k, self.mul(&cur, &self.aff[k].elt)))
                .find(|(_, n)| self.length(n) < l)
                .expect("an element of positive length has a descent");
            letters.push(k);
            cur = next;
            l -= 1;
        }
        letters.reverse();
        ReducedWord { omega: cur, letters }
    }

    pub fn from_word(&self, omega: &WeylElt, letters: &[usize]) -> WeylElt {
        letters
            .iter()
            .fold(omega.clone(), |acc, &k| self.mul(&acc, &self.aff[k].elt))
    }

    /// Coordinates of the class of `x` in `X/Q`, reduced modulo the finite orders.
    pub fn omega_coords(&self, w: &WeylElt) -> Vec<i64> {
        self.omega_rows
            .iter()
            .map(|(row, m)| {
                let c = dot(row, &w.x);
                if *m == 0 {
                    c
                } else {
                    c.rem_euclid(*m)
                }
            })
            .collect()
    }

    pub fn omega_from_coords(&self, k: &[i64]) -> WeylElt {
        self.omega_gens
            .iter()
            .zip(k)
            .fold(self.identity(), |acc, (g, &e)| self.mul(&acc, &self.pow(&g.elt, e)))
    }

    /// All of `Ω` when it is finite.
    pub fn omega_elements(&self) -> Option<Vec<WeylElt>> {
        if self.omega_gens.iter().any(|g| g.order == 0) {
            return None;
        }
        let mut out = vec![vec![]];
        for g in &self.omega_gens {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..g.order).map(move |e| {
                        let mut v = v.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        Some(out.iter().map(|k| self.omega_from_coords(k)).collect())
    }

    /// Permutation of affine simple reflections by conjugation with `ω`.
    pub fn omega_perm(&self, omega: &WeylElt) -> Vec<usize> {
        let oi = self.inv(omega);
        (0..self.aff.len())
            .map(|k| {
                let c = self.mul(&self.mul(omega, &self.aff[k].elt), &oi);
                self.affine_simple_index(&c).expect("Ω normalises S^aff")
            })
            .collect()
    }

    pub fn letter_name(&self, k: usize) -> &str {
        &self.aff[k].name
    }

    pub fn format(&self, w: &WeylElt) -> String {
        let rw = self.reduced_word(w);
        let mut parts = Vec::new();
        for (g, k) in self.omega_gens.iter().zip(self.omega_coords(&rw.omega)) {
            if k != 0 {
                parts.push(format!("{}^{}", g.name, k));
            }
        }
        let letters: Vec<&str> = rw.letters.iter().map(|&k| self.letter_name(k)).collect();
        match (parts.is_empty(), letters.is_empty()) {
            (true, true) => "e".into(),
            (true, false) => letters.join(" "),
            (false, true) => parts.join(" "),
            (false, false) => format!("{} . {}", parts.join(" "), letters.join(" ")),
        }
    }

    pub fn parse(&self, s: &str) -> Result<WeylElt, WordError> {
        let body = s.trim();
        let body = body.strip_prefix("w").map(|r| r.trim_start()).and_then(|r| r.strip_prefix('=')).unwrap_or(body);
        let mut acc = self.identity();
        for tok in body.split(|c: char| c.is_whitespace() || c == '.' || c == '*').filter(|t| !t.is_empty()) {
            if tok == "e" {
                continue;
            }
            if let Some(k) = self.aff.iter().position(|a| a.name == tok) {
                acc = self.mul(&acc, &self.aff[k].elt);
                continue;
            }
            let (name, exp) = tok.split_once('^').unwrap_or((tok, "1"));
            let g = self
                .omega_gens
                .iter()
                .find(|g| g.name == name)
                .ok_or_else(|| WordError::Token(tok.into()))?;
            let e: i64 = exp.parse().map_err(|_| WordError::Token(tok.into()))?;
            acc = self.mul(&acc, &self.pow(&g.elt, e));
        }
        Ok(acc)
    }

    /// Sort key used for deterministic output: norm, then word text.
    pub fn sort_key(&self, w: &WeylElt) -> (Rational64, String) {
        (self.norm(w), self.format(w))
    }

    /// Elements of `W^aff` of length exactly `0..=max`, grouped by length.
    pub fn affine_spheres(&self, max: usize) -> Vec<Vec<WeylElt>> {
        let mut out = vec![vec![self.identity()]];
        for l in 0..max {
            let mut next = BTreeSet::new();
            for v in &out[l] {
                for a in &self.aff {
                    let w = self.mul(v, &a.elt);
                    if self.length(&w) == l + 1 {
                        next.insert(w);
                    }
                }
            }
            out.push(next.into_iter().collect());
        }
        out
    }

    /// `{w ∈ W : 𝒩(w) ≤ max}` with norms.
    pub fn ball(&self, max: usize) -> Vec<(WeylElt, Rational64)> {
        let spheres = self.affine_spheres(max);
        let omegas: Vec<WeylElt> = match self.omega_elements() {
            Some(v) => v,
            None => {
                let bound = 4 * max as i64 + 4;
                let mut ks = vec![vec![]];
                for g in &self.omega_gens {
                    let range: Vec<i64> = if g.order == 0 { (-bound..=bound).collect() } else { (0..g.order).collect() };
                    ks = ks
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            range.iter().map(move |&e| {
                                let mut v = v.clone();
                                v.push(e);
                                v
                            })
                        })
                        .collect();
                }
                ks.iter().map(|k| self.omega_from_coords(k)).collect()
            }
        };
        let maxr = Rational64::from(max as i64);
        let mut out = Vec::new();
        for om in &omegas {
            let c: Rational64 = self.central_part(&om.x).iter().map(|a| a.abs()).sum();
            if c > maxr {
                continue;
            }
            for (l, sphere) in spheres.iter().enumerate() {
                let n = c + Rational64::from(l as i64);
                if n > maxr {
                    break;
                }
                for v in sphere {
                    out.push((self.mul(om, v), n));
                }
            }
        }
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out
    }

    /// Minimal coset representatives `W^P`, sorted by length then word.
    pub fn coset_reps(&self, p: &Parabolic) -> Vec<usize> {
        let d = &self.datum;
        let mut reps: Vec<usize> = (0..self.fin.order())
            .filter(|&w| {
                p.iter()
                    .all(|i| d.is_positive(self.fin.act_root(w, d.simple_root_index(i))))
            })
            .collect();
        reps.sort_by_key(|&w| self.fin.key(w));
        reps
    }

    /// Longest element of `W_P`.
    pub fn longest_in(&self, p: &Parabolic) -> usize {
        self.fin
            .parabolic_subgroup(p)
            .into_iter()
            .max_by_key(|&w| self.fin.len(w))
            .unwrap()
    }

    /// `Q ∩ d(P)` as simple indices of `Q`.
    pub fn kilmoyer(&self, q: &Parabolic, p: &Parabolic, d: usize) -> Parabolic {
        let dat = &self.datum;
        let images: BTreeSet<usize> = p
            .iter()
            .map(|i| self.fin.act_root(d, dat.simple_root_index(i)))
            .collect();
        Parabolic::new(q.iter().filter(|&i| images.contains(&dat.simple_root_index(i))).collect())
    }

    /// `D^{Q,P}` with the Kilmoyer subsets `Q ∩ d(P)`.
    pub fn double_cosets(&self, q: &Parabolic, p: &Parabolic) -> Vec<(usize, Parabolic)> {
        let wq = self.coset_reps(q);
        self.coset_reps(p)
            .into_iter()
            .filter(|&d| wq.contains(&self.fin.inv(d)))
            .map(|d| (d, self.kilmoyer(q, p, d)))
            .collect()
    }

    /// `w = u d v` with `d ∈ D^{Q,P}`, `u ∈ W_Q ∩ W^L`, `v ∈ W_P`.
    pub fn howlett_decompose(&self, w: usize, q: &Parabolic, p: &Parabolic) -> (usize, usize, usize) {
        let f = &self.fin;
        let wq = f.parabolic_subgroup(q);
        let wp = f.parabolic_subgroup(p);
        for (d, l) in self.double_cosets(q, p) {
            let ul = self.coset_reps(&l);
            for &v in &wp {
                let u = f.mul(f.mul(w, f.inv(v)), f.inv(d));
                if wq.contains(&u) && ul.contains(&u) {
                    return (u, d, v);
                }
            }
        }
        unreachable!("double cosets partition W0")
    }

    /// Index sets whose sizes are bounded by `Z_X = 0` style finiteness.
    pub fn omega_is_finite(&self) -> bool {
        self.omega_gens.iter().all(|g| g.order != 0)
    }

    /// Image of the affine simple root of `s_k` under `w` is negative.
    pub fn is_right_descent(&self, w: &WeylElt, k: usize) -> bool {
        !self.is_positive_affine(self.act_affine_root(w, self.aff[k].root))
    }

    /// Sum of `l` over a word, for checking `l(ww') = l(w) + l(w')`.
    pub fn lengths_add(&self, a: &WeylElt, b: &WeylElt) -> bool {
        self.length(&self.mul(a, b)) == self.length(a) + self.length(b)
    }

    /// Exact rational 𝒩 of a translation.
    pub fn translation_norm(&self, x: &[i64]) -> Rational64 {
        self.norm(&self.translation(x))
    }

    pub fn is_zero_norm(&self, w: &WeylElt) -> bool {
        self.norm(w).is_zero()
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t{:?}, u{})", self.x, self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl(p: &str) -> Weyl {
        Weyl::new(RootDatum::preset(p).unwrap())
    }

    #[test]
    fn group_orders() {
        assert_eq!(weyl("A1-sc").finite().order(), 2);
        assert_eq!(weyl("A2").finite().order(), 6);
        assert_eq!(weyl("B2").finite().order(), 8);
    }

    #[test]
    fn simple_reflections_have_length_one() {
        for p in RootDatum::PRESETS {
            let w = weyl(p);
            for k in 0..w.num_affine_simple() {
                let s = w.simple_elt(k);
                assert_eq!(w.length(&s), 1, "{p} {}", w.letter_name(k));
                assert!(w.is_identity(&w.mul(&s, &s)));
            }
        }
    }

    #[test]
    fn translation_by_omega_in_a1() {
        let w = weyl("A1-sc");
        let t = w.translation(&[1]);
        assert_eq!(w.length(&t), 1);
        let rw = w.reduced_word(&t);
        assert_eq!(rw.letters.len(), 1);
        assert!(!w.is_identity(&rw.omega));
        assert_eq!(w.format(&t), "pi^1 . s1");
        assert_eq!(w.parse("pi^1 . s1").unwrap(), t);
    }

    #[test]
    fn dominant_translation_length() {
        for p in ["A2", "B2", "A1-adj"] {
            let w = weyl(p);
            let d = w.datum();
            for x in [vec![1, 1], vec![2, 1], vec![1, 0], vec![3, 0]] {
                let x: IVec = x.into_iter().take(d.rank()).collect();
                if d.is_dominant(&x) {
                    assert_eq!(w.length(&w.translation(&x)) as i64, dot(&x, d.two_rho_check()));
                }
            }
        }
    }

    #[test]
    fn a2_cosets() {
        let w = weyl("A2");
        let reps = w.coset_reps(&Parabolic::new(vec![0]));
        let lens: Vec<usize> = reps.iter().map(|&r| w.finite().len(r)).collect();
        assert_eq!(lens, vec![0, 1, 2]);
        let dc = w.double_cosets(&Parabolic::new(vec![0]), &Parabolic::new(vec![0]));
        assert_eq!(dc.len(), 2);
    }
}
