//! Element containers: `𝒜` (Laurent polynomials on `T`), the `N`-basis form,
//! and Bernstein forms with `θ`'s on the left or on the right.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::lattice::{self, IVec};
use crate::laurent::Laurent;
use crate::torus::TorusPoint;
use crate::weyl::{FiniteWeyl, WeylElt};

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, Laurent>, k: &K, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        map.remove(k);
    }
}

/// `Σ c_x θ_x`
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct AElt(pub BTreeMap<IVec, Laurent>);

impl AElt {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn theta(x: IVec) -> Self {
        Self::term(x, Laurent::one())
    }
    pub fn term(x: IVec, c: Laurent) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(x, c);
        }
        AElt(m)
    }
    pub fn constant(rank: usize, c: Laurent) -> Self {
        Self::term(vec![0; rank], c)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn add_term(&mut self, x: &IVec, c: &Laurent) {
        add_into(&mut self.0, x, c);
    }
    pub fn add(&self, o: &AElt) -> AElt {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
    pub fn add_assign(&mut self, o: &AElt) {
        for (x, c) in &o.0 {
            add_into(&mut self.0, x, c);
        }
    }
    pub fn sub(&self, o: &AElt) -> AElt {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> AElt {
        AElt(self.0.iter().map(|(x, c)| (x.clone(), -c)).collect())
    }
    pub fn scale(&self, c: &Laurent) -> AElt {
        let mut out = AElt::zero();
        for (x, a) in &self.0 {
            out.add_term(x, &(a * c));
        }
        out
    }
    pub fn mul(&self, o: &AElt) -> AElt {
        let mut out = AElt::zero();
        for (x, a) in &self.0 {
            for (y, b) in &o.0 {
                out.add_term(&lattice::add(x, y), &(a * b));
            }
        }
        out
    }
    /// `θ_y · a`
    pub fn shift(&self, y: &[i64]) -> AElt {
        AElt(self.0.iter().map(|(x, c)| (lattice::add(x, y), c.clone())).collect())
    }
    /// `u(a)`: `θ_x ↦ θ_{u x}`.
    pub fn act(&self, w: &FiniteWeyl, u: usize) -> AElt {
        AElt(self.0.iter().map(|(x, c)| (w.act(u, x), c.clone())).collect())
    }
    pub fn eval(&self, t: &TorusPoint, v: f64) -> Complex64 {
        self.0.iter().map(|(x, c)| t.eval(x) * c.eval(v)).sum()
    }
}

/// `Σ c_w N_w`
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NForm(pub BTreeMap<WeylElt, Laurent>);

impl NForm {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn basis(w: WeylElt) -> Self {
        Self::term(w, Laurent::one())
    }
    pub fn term(w: WeylElt, c: Laurent) -> Self {
        let mut out = Self::zero();
        out.add_term(&w, &c);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn add_term(&mut self, w: &WeylElt, c: &Laurent) {
        add_into(&mut self.0, w, c);
    }
    pub fn add(&self, o: &NForm) -> NForm {
        let mut out = self.clone();
        for (w, c) in &o.0 {
            out.add_term(w, c);
        }
        out
    }
    pub fn sub(&self, o: &NForm) -> NForm {
        self.add(&o.scale(&Laurent::int(-1)))
    }
    pub fn scale(&self, c: &Laurent) -> NForm {
        let mut out = NForm::zero();
        for (w, a) in &self.0 {
            out.add_term(w, &(a * c));
        }
        out
    }
    pub fn coeff(&self, w: &WeylElt) -> Laurent {
        self.0.get(w).cloned().unwrap_or_default()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// `Σ_u a_u N_u` with `a_u ∈ 𝒜` on the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BForm(pub BTreeMap<usize, AElt>);

/// `Σ_u N_u b_u` with `b_u ∈ 𝒜` on the right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RBForm(pub BTreeMap<usize, AElt>);

macro_rules! bform_common {
    ($t:ident) => {
        impl $t {
            pub fn zero() -> Self {
                Self::default()
            }
            pub fn single(u: usize, a: AElt) -> Self {
                let mut out = Self::zero();
                out.add_part(u, &a);
                out
            }
            pub fn is_zero(&self) -> bool {
                self.0.is_empty()
            }
            pub fn add_part(&mut self, u: usize, a: &AElt) {
                if a.is_zero() {
                    return;
                }
                let slot = self.0.entry(u).or_default();
                slot.add_assign(a);
                if slot.is_zero() {
                    self.0.remove(&u);
                }
            }
            pub fn add(&self, o: &Self) -> Self {
                let mut out = self.clone();
                for (u, a) in &o.0 {
                    out.add_part(*u, a);
                }
                out
            }
            pub fn sub(&self, o: &Self) -> Self {
                self.add(&o.scale(&Laurent::int(-1)))
            }
            pub fn scale(&self, c: &Laurent) -> Self {
                let mut out = Self::zero();
                for (u, a) in &self.0 {
                    out.add_part(*u, &a.scale(c));
                }
                out
            }
            pub fn part(&self, u: usize) -> AElt {
                self.0.get(&u).cloned().unwrap_or_default()
            }
        }
    };
}

bform_common!(BForm);
bform_common!(RBForm);

impl BForm {
    pub fn theta(x: IVec) -> Self {
        Self::single(0, AElt::theta(x))
    }
    /// `a · h`
    pub fn left_scale(&self, a: &AElt) -> BForm {
        let mut out = BForm::zero();
        for (u, b) in &self.0 {
            out.add_part(*u, &a.mul(b));
        }
        out
    }
    /// The `𝒜` part if `h ∈ 𝒜`.
    pub fn as_aelt(&self) -> Option<AElt> {
        match self.0.len() {
            0 => Some(AElt::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }
}

/// A Bernstein form with numeric coefficients, used after evaluating `𝐪`
/// and twisting by a torus point.
#[derive(Clone, Debug, Default)]
pub struct NumBForm(pub BTreeMap<usize, BTreeMap<IVec, Complex64>>);

impl NumBForm {
    pub fn add_term(&mut self, u: usize, x: IVec, c: Complex64) {
        *self.0.entry(u).or_default().entry(x).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
}
