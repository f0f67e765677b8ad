//! Label exponents: `q(s)^{1/2} = v^{f_s}` on the affine simple reflections,
//! and the derived root labels.

use std::collections::BTreeMap;

use crate::lattice::dot;
use crate::weyl::{AffineRoot, Weyl};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("labels must be positive (got {0} for '{1}')")]
    NonPositive(i64, String),
    #[error("no label given for {0}")]
    Missing(String),
    #[error("unknown label key '{0}'")]
    UnknownKey(String),
    #[error("labels of conjugate reflections {0} and {1} differ")]
    Inconsistent(String, String),
}

/// User-facing label map: keys `s` (all), `long`, `short`, or the name of an
/// affine simple reflection (`s0`, `s1`, ...). Later keys in that list win.
pub type LabelSpec = BTreeMap<String, i64>;

pub fn equal_labels(f: i64) -> LabelSpec {
    BTreeMap::from([("s".to_string(), f)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    f: Vec<i32>,
    root_f0: Vec<i32>,
    root_f1: Vec<i32>,
}

/// `(x, x)` for the W0-invariant form `Σ_β <x, β∨>²`.
fn root_norm(w: &Weyl, j: usize) -> i64 {
    let d = w.datum();
    let x = d.root(j);
    d.coroots().iter().map(|c| dot(x, c).pow(2)).sum()
}

/// Whether `a` and `b` lie in one `W`-orbit: same `W0`-orbit of coroots and
/// levels congruent modulo `gcd <X, α∨>`.
fn same_orbit(w: &Weyl, a: AffineRoot, b: AffineRoot) -> bool {
    let fin = w.finite();
    let g = w.datum().coroot(a.root).iter().fold(0i64, |g, c| gcd(g, *c));
    (0..fin.order()).any(|u| fin.act_root(u, a.root) == b.root) && (a.level - b.level).rem_euclid(g.max(1)) == 0
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Labels {
    pub fn from_spec(w: &Weyl, spec: &LabelSpec) -> Result<Self, LabelError> {
        for (k, v) in spec {
            if *v <= 0 {
                return Err(LabelError::NonPositive(*v, k.clone()));
            }
            let known = k == "s" || k == "long" || k == "short" || w.affine_simples().iter().any(|a| &a.name == k);
            if !known {
                return Err(LabelError::UnknownKey(k.clone()));
            }
        }
        let d = w.datum();
        let maxnorm: BTreeMap<usize, i64> = {
            let comps = d.components();
            let mut m = BTreeMap::new();
            for (c, comp) in comps.iter().enumerate() {
                let best = (0..d.num_roots())
                    .filter(|&j| d.simple_coords(j).iter().enumerate().all(|(i, x)| *x == 0 || comp.contains(&i)))
                    .map(|j| root_norm(w, j))
                    .max()
                    .unwrap_or(0);
                m.insert(c, best);
            }
            m
        };
        let comp_of = |j: usize| -> usize {
            let comps = d.components();
            let i = d.simple_coords(j).iter().position(|x| *x != 0).unwrap();
            comps.iter().position(|c| c.contains(&i)).unwrap()
        };
        let f: Vec<i32> = w
            .affine_simples()
            .iter()
            .map(|a| {
                let j = a.root.root;
                let long = root_norm(w, j) == maxnorm[&comp_of(j)];
                let pick = spec
                    .get(&a.name)
                    .or_else(|| spec.get(if long { "long" } else { "short" }))
                    .or_else(|| spec.get("s"));
                pick.map(|v| *v as i32).ok_or_else(|| LabelError::Missing(a.name.clone()))
            })
            .collect::<Result<_, _>>()?;
        Self::from_affine(w, f)
    }

    /// Labels given directly per affine simple reflection.
    pub fn from_affine(w: &Weyl, f: Vec<i32>) -> Result<Self, LabelError> {
        let aff = w.affine_simples();
        for (k, a) in aff.iter().enumerate() {
            if f[k] <= 0 {
                return Err(LabelError::NonPositive(f[k] as i64, a.name.clone()));
            }
            for (k2, b) in aff.iter().enumerate().skip(k + 1) {
                if same_orbit(w, a.root, b.root) && f[k] != f[k2] {
                    return Err(LabelError::Inconsistent(a.name.clone(), b.name.clone()));
                }
            }
        }
        // q_{a+1} = q(s_a): the label of (α∨, n) is that of the reflection
        // in (α∨, n-1), i.e. of the simple affine root in its orbit.
        let label_of = |a: AffineRoot| -> i32 {
            let k = aff
                .iter()
                .position(|b| same_orbit(w, a, b.root))
                .expect("every affine root is conjugate to a simple one");
            f[k]
        };
        let d = w.datum();
        let root_f0 = (0..d.num_roots())
            .map(|j| label_of(AffineRoot { root: j, level: -1 }))
            .collect();
        let root_f1 = (0..d.num_roots())
            .map(|j| label_of(AffineRoot { root: j, level: 0 }))
            .collect();
        Ok(Labels { f, root_f0, root_f1 })
    }

    /// Exponent `f_s` of the affine simple reflection `k`.
    pub fn f(&self, k: usize) -> i32 {
        self.f[k]
    }
    pub fn all(&self) -> &[i32] {
        &self.f
    }
    /// `q_{α_j∨} = 𝐪^{f0}`
    pub fn f0(&self, j: usize) -> i32 {
        self.root_f0[j]
    }
    /// `q_{α_j∨ + 1} = 𝐪^{f1}`
    pub fn f1(&self, j: usize) -> i32 {
        self.root_f1[j]
    }
}
