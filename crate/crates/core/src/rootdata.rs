//! Root data `(X, Y, R0, R0v, F0)` on `Z^n` with the dot pairing.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::lattice::{self, dot, IMat, IVec};

/// Unvalidated input: roots and coroots are index-aligned, `simple`
/// indexes into `roots`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    pub rank: usize,
    pub roots: Vec<IVec>,
    pub coroots: Vec<IVec>,
    pub simple: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Shape,
    Pairing,
    Closure,
    Reduced,
    SimpleSystem,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Shape => "shape",
            ViolationKind::Pairing => "pairing",
            ViolationKind::Closure => "closure",
            ViolationKind::Reduced => "reduced",
            ViolationKind::SimpleSystem => "simple-system",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DatumError {
    #[error("invalid root datum: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("parabolic index {0} out of range")]
    BadParabolic(usize),
    #[error("lattice quotient is rank deficient")]
    RankDeficient,
}

fn v(kind: ViolationKind, message: impl Into<String>) -> Violation {
    Violation {
        kind,
        message: message.into(),
    }
}

fn reflect(x: &[i64], root: &[i64], coroot: &[i64]) -> IVec {
    let k = dot(x, coroot);
    x.iter().zip(root).map(|(a, b)| a - k * b).collect()
}

/// Coordinates of `x` in the simple roots, if integral.
fn integer_coords(simple: &[IVec], x: &[i64]) -> Option<IVec> {
    let sol = lattice::solve_rational(simple, x)?;
    sol.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

/// All invariant violations of `raw`; empty iff valid.
pub fn validate(raw: &RawDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = raw.rank;
    if raw.roots.len() != raw.coroots.len() {
        out.push(v(
            ViolationKind::Shape,
            format!("{} roots but {} coroots", raw.roots.len(), raw.coroots.len()),
        ));
        return out;
    }
    for (i, (a, c)) in raw.roots.iter().zip(&raw.coroots).enumerate() {
        if a.len() != n || c.len() != n {
            out.push(v(ViolationKind::Shape, format!("entry {i} has wrong length")));
        }
    }
    if let Some(&bad) = raw.simple.iter().find(|&&i| i >= raw.roots.len()) {
        out.push(v(ViolationKind::Shape, format!("simple index {bad} out of range")));
    }
    if !out.is_empty() {
        return out;
    }
    for (i, (a, c)) in raw.roots.iter().zip(&raw.coroots).enumerate() {
        let p = dot(a, c);
        if p != 2 {
            out.push(v(ViolationKind::Pairing, format!("<root {i}, coroot {i}> = {p}, expected 2")));
        }
    }
    let index: HashMap<&IVec, usize> = raw.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    if index.len() != raw.roots.len() {
        out.push(v(ViolationKind::Shape, "repeated root"));
    }
    for (i, (a, ac)) in raw.roots.iter().zip(&raw.coroots).enumerate() {
        if lattice::is_zero(a) {
            out.push(v(ViolationKind::Shape, format!("root {i} is zero")));
            continue;
        }
        let double = lattice::scale(2, a);
        if index.contains_key(&double) {
            out.push(v(ViolationKind::Reduced, format!("2*root {i} is a root")));
        }
        for (j, (b, bc)) in raw.roots.iter().zip(&raw.coroots).enumerate() {
            let image = reflect(b, a, ac);
            match index.get(&image) {
                None => out.push(v(
                    ViolationKind::Closure,
                    format!("reflection in root {i} sends root {j} outside R0"),
                )),
                Some(&k) => {
                    let co_image = reflect(bc, ac, a);
                    if raw.coroots[k] != co_image {
                        out.push(v(
                            ViolationKind::Closure,
                            format!("reflection in root {i} breaks root/coroot alignment at {j}"),
                        ));
                    }
                }
            }
        }
    }
    let simple: Vec<IVec> = raw.simple.iter().map(|&i| raw.roots[i].clone()).collect();
    if !simple.is_empty() && lattice::rank(&simple) != simple.len() {
        out.push(v(ViolationKind::SimpleSystem, "simple roots are linearly dependent"));
        return out;
    }
    for (i, r) in raw.roots.iter().enumerate() {
        match integer_coords(&simple, r) {
            Some(c) if c.iter().all(|x| *x >= 0) || c.iter().all(|x| *x <= 0) => {}
            _ => out.push(v(
                ViolationKind::SimpleSystem,
                format!("root {i} is not a same-sign integer combination of simple roots"),
            )),
        }
    }
    out
}

/// A validated root datum with derived data.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<IVec>,
    coroots: Vec<IVec>,
    simple: Vec<usize>,
    simple_coords: Vec<IVec>,
    coroot_coords: Vec<IVec>,
    positive: Vec<bool>,
    neg_index: Vec<usize>,
    index: HashMap<IVec, usize>,
    z_basis: Vec<IVec>,
    two_rho_check: IVec,
}

impl RootDatum {
    pub fn new(raw: RawDatum) -> Result<Self, DatumError> {
        Self::named("custom", raw)
    }

    pub fn named(name: &str, raw: RawDatum) -> Result<Self, DatumError> {
        let violations = validate(&raw);
        if !violations.is_empty() {
            return Err(DatumError::Invalid(violations));
        }
        let n = raw.rank;
        let simple_roots: Vec<IVec> = raw.simple.iter().map(|&i| raw.roots[i].clone()).collect();
        let simple_coroots: Vec<IVec> = raw.simple.iter().map(|&i| raw.coroots[i].clone()).collect();
        let simple_coords: Vec<IVec> = raw
            .roots
            .iter()
            .map(|r| integer_coords(&simple_roots, r).expect("validated"))
            .collect();
        let coroot_coords: Vec<IVec> = raw
            .coroots
            .iter()
            .map(|c| integer_coords(&simple_coroots, c).ok_or(DatumError::RankDeficient))
            .collect::<Result<_, _>>()?;
        let positive: Vec<bool> = simple_coords.iter().map(|c| c.iter().any(|x| *x > 0)).collect();
        let index: HashMap<IVec, usize> = raw.roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let neg_index = raw.roots.iter().map(|r| index[&lattice::neg(r)]).collect();
        let z_basis = lattice::integer_kernel(&raw.coroots, n);
        let mut two_rho_check = vec![0; n];
        for (c, &p) in raw.coroots.iter().zip(&positive) {
            if p {
                two_rho_check = lattice::add(&two_rho_check, c);
            }
        }
        Ok(RootDatum {
            name: name.to_string(),
            rank: n,
            roots: raw.roots,
            coroots: raw.coroots,
            simple: raw.simple,
            simple_coords,
            coroot_coords,
            positive,
            neg_index,
            index,
            z_basis,
            two_rho_check,
        })
    }

    /// Build a datum from simple roots/coroots, closing under reflections.
    pub fn from_simple(name: &str, rank: usize, simple: &[(IVec, IVec)]) -> Result<Self, DatumError> {
        let mut roots: Vec<IVec> = simple.iter().map(|p| p.0.clone()).collect();
        let mut coroots: Vec<IVec> = simple.iter().map(|p| p.1.clone()).collect();
        let mut i = 0;
        while i < roots.len() {
            for (a, ac) in simple {
                let r = reflect(&roots[i], a, ac);
                if !roots.contains(&r) {
                    coroots.push(reflect(&coroots[i], ac, a));
                    roots.push(r);
                }
                if roots.len() > 1000 {
                    return Err(DatumError::Invalid(vec![v(ViolationKind::Closure, "root system is infinite")]));
                }
            }
            i += 1;
        }
        let simple_idx = (0..simple.len()).collect();
        Self::named(name, RawDatum { rank, roots, coroots, simple: simple_idx })
    }

    pub fn preset(name: &str) -> Result<Self, DatumError> {
        match name {
            "A1-sc" => Self::from_simple(name, 1, &[(vec![2], vec![1])]),
            "A1-adj" => Self::from_simple(name, 1, &[(vec![1], vec![2])]),
            "A2" => Self::from_simple(name, 2, &[(vec![2, -1], vec![1, 0]), (vec![-1, 2], vec![0, 1])]),
            "B2" => Self::from_simple(name, 2, &[(vec![1, -1], vec![1, -1]), (vec![0, 2], vec![0, 1])]),
            "GL2" => Self::from_simple(name, 2, &[(vec![1, -1], vec![1, -1])]),
            other => Err(DatumError::UnknownPreset(other.to_string())),
        }
    }

    pub const PRESETS: [&'static str; 5] = ["A1-sc", "A1-adj", "A2", "B2", "GL2"];

    pub fn raw(&self) -> RawDatum {
        RawDatum {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            simple: self.simple.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }
    pub fn root(&self, j: usize) -> &IVec {
        &self.roots[j]
    }
    pub fn coroot(&self, j: usize) -> &IVec {
        &self.coroots[j]
    }
    pub fn roots(&self) -> &[IVec] {
        &self.roots
    }
    pub fn coroots(&self) -> &[IVec] {
        &self.coroots
    }
    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }
    /// Root index of the `i`-th simple root.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.simple[i]
    }
    pub fn simple_root(&self, i: usize) -> &IVec {
        &self.roots[self.simple[i]]
    }
    pub fn simple_coroot(&self, i: usize) -> &IVec {
        &self.coroots[self.simple[i]]
    }
    pub fn is_positive(&self, j: usize) -> bool {
        self.positive[j]
    }
    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&j| self.positive[j]).collect()
    }
    pub fn neg(&self, j: usize) -> usize {
        self.neg_index[j]
    }
    pub fn root_index(&self, x: &[i64]) -> Option<usize> {
        self.index.get(x).copied()
    }
    /// Coordinates of root `j` in the simple roots.
    pub fn simple_coords(&self, j: usize) -> &IVec {
        &self.simple_coords[j]
    }
    pub fn coroot_height(&self, j: usize) -> i64 {
        self.coroot_coords[j].iter().sum()
    }
    pub fn z_basis(&self) -> &[IVec] {
        &self.z_basis
    }
    pub fn is_semisimple(&self) -> bool {
        self.z_basis.is_empty()
    }
    /// `2ρ∨`, the sum of positive coroots.
    pub fn two_rho_check(&self) -> &IVec {
        &self.two_rho_check
    }
    /// `ρ∨` as exact rationals.
    pub fn rho_check(&self) -> Vec<Rational64> {
        self.two_rho_check.iter().map(|x| Rational64::new(*x, 2)).collect()
    }
    pub fn pairing(&self, x: &[i64], j: usize) -> i64 {
        dot(x, &self.coroots[j])
    }
    /// `s_j(x) = x - <x, α_j∨> α_j`
    pub fn reflect(&self, j: usize, x: &[i64]) -> IVec {
        reflect(x, &self.roots[j], &self.coroots[j])
    }
    pub fn reflect_coroot(&self, j: usize, y: &[i64]) -> IVec {
        reflect(y, &self.coroots[j], &self.roots[j])
    }
    pub fn is_dominant(&self, x: &[i64]) -> bool {
        (0..self.num_simple()).all(|i| dot(x, self.simple_coroot(i)) >= 0)
    }

    /// Connected components of the Dynkin diagram, as sorted simple indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.num_simple();
        let mut comp: Vec<usize> = (0..k).collect();
        fn find(c: &mut Vec<usize>, i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && dot(self.simple_root(i), self.simple_coroot(j)) != 0 {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..k {
            let r = find(&mut comp, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Root index `θ` of the component whose coroot is the highest coroot.
    pub fn highest_coroot_root(&self, component: &[usize]) -> usize {
        (0..self.roots.len())
            .filter(|&j| {
                self.positive[j]
                    && self.simple_coords[j]
                        .iter()
                        .enumerate()
                        .all(|(i, c)| *c == 0 || component.contains(&i))
            })
            .max_by_key(|&j| (self.coroot_height(j), std::cmp::Reverse(j)))
            .expect("component has a positive root")
    }

    pub fn nonreduced(&self) -> NonReducedData {
        let mut r_nr: Vec<IVec> = self.roots.clone();
        for (r, c) in self.roots.iter().zip(&self.coroots) {
            if c.iter().all(|x| x % 2 == 0) {
                r_nr.push(lattice::scale(2, r));
            }
        }
        let set: BTreeSet<IVec> = r_nr.iter().cloned().collect();
        let r1 = r_nr
            .iter()
            .filter(|r| !set.contains(&lattice::scale(2, r)))
            .cloned()
            .collect();
        NonReducedData { r_nr, r1 }
    }

    /// Whether `2α_j` lies in `R_nr`.
    pub fn doubles(&self, j: usize) -> bool {
        self.coroots[j].iter().all(|x| x % 2 == 0)
    }

    pub fn standard_parabolic(&self, p: &Parabolic) -> Result<ParabolicSubsystem, DatumError> {
        p.check(self.num_simple())?;
        let roots: Vec<usize> = (0..self.roots.len())
            .filter(|&j| {
                self.simple_coords[j]
                    .iter()
                    .enumerate()
                    .all(|(i, c)| *c == 0 || p.contains(i))
            })
            .collect();
        let positive = roots.iter().copied().filter(|&j| self.positive[j]).collect();
        Ok(ParabolicSubsystem {
            p: p.clone(),
            roots,
            positive,
        })
    }

    /// `ℛ^P` on the same lattices and the semisimple quotient `ℛ_P`.
    pub fn quotient_data(&self, p: &Parabolic) -> Result<QuotientData, DatumError> {
        let sub = self.standard_parabolic(p)?;
        let n = self.rank;
        let k = p.len();
        let sub_raw = RawDatum {
            rank: n,
            roots: sub.roots.iter().map(|&j| self.roots[j].clone()).collect(),
            coroots: sub.roots.iter().map(|&j| self.coroots[j].clone()).collect(),
            simple: p
                .iter()
                .map(|i| sub.roots.iter().position(|&j| j == self.simple[i]).unwrap())
                .collect(),
        };
        let upper = RootDatum::named(&format!("{}^P", self.name), sub_raw)?;
        // X_P coordinates: the pairings with the simple coroots of P, in an
        // adapted basis of their image lattice.
        let m: IMat = p.iter().map(|i| self.simple_coroot(i).clone()).collect();
        let (to_xp, lifts, kernel) = if k == 0 {
            (Vec::new(), Vec::new(), lattice::identity(n))
        } else {
            let (_, d, vm) = lattice::smith(&m, k, n);
            if (0..k).any(|i| d[i][i] == 0) {
                return Err(DatumError::RankDeficient);
            }
            let vinv = lattice::unimodular_inverse(&vm);
            let col = |j: usize| -> IVec { (0..n).map(|i| vm[i][j]).collect() };
            (vinv[..k].to_vec(), (0..k).map(col).collect::<Vec<_>>(), (k..n).map(col).collect())
        };
        // X^P = X / (X ∩ QR_P)
        let to_xupper: IMat = if k == 0 {
            lattice::identity(n)
        } else {
            let cols: Vec<IVec> = p.iter().map(|i| self.simple_root(i).clone()).collect();
            let nm = lattice::from_columns(&cols, n);
            let (u, _, _) = lattice::smith(&nm, n, k);
            u[k..].to_vec()
        };
        let lower = if k == 0 {
            None
        } else {
            let simple: Vec<(IVec, IVec)> = p
                .iter()
                .map(|i| {
                    let co: IVec = lifts.iter().map(|l| dot(l, self.simple_coroot(i))).collect();
                    (lattice::mat_vec(&to_xp, self.simple_root(i)), co)
                })
                .collect();
            Some(RootDatum::from_simple(&format!("{}_P", self.name), k, &simple)?)
        };
        Ok(QuotientData {
            p: p.clone(),
            sub,
            upper,
            lower,
            to_xp,
            to_xupper,
            xp_lifts: lifts,
            perp_basis: kernel,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonReducedData {
    pub r_nr: Vec<IVec>,
    pub r1: Vec<IVec>,
}

/// A subset `P` of the simple indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Parabolic(Vec<usize>);

impl Parabolic {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Parabolic(idx)
    }
    pub fn empty() -> Self {
        Parabolic(Vec::new())
    }
    pub fn full(k: usize) -> Self {
        Parabolic((0..k).collect())
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn indices(&self) -> &[usize] {
        &self.0
    }
    /// Position of simple index `i` inside `P`.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }
    fn check(&self, k: usize) -> Result<(), DatumError> {
        match self.0.iter().find(|&&i| i >= k) {
            Some(&i) => Err(DatumError::BadParabolic(i)),
            None => Ok(()),
        }
    }
    pub fn all_subsets(k: usize) -> Vec<Parabolic> {
        (0..1u32 << k)
            .map(|m| Parabolic((0..k).filter(|i| m >> i & 1 == 1).collect()))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicSubsystem {
    pub p: Parabolic,
    /// Root indices of `R_P`.
    pub roots: Vec<usize>,
    pub positive: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct QuotientData {
    pub p: Parabolic,
    pub sub: ParabolicSubsystem,
    /// `ℛ^P = (X, Y, R_P, R_P∨, P)`; its simple roots are listed in the order of `P`.
    pub upper: RootDatum,
    /// The semisimple quotient `ℛ_P`; `None` when `P` is empty (rank 0).
    pub lower: Option<RootDatum>,
    /// `x ↦ x̄` into `X_P = Z^|P|`.
    pub to_xp: IMat,
    /// Lattice vectors mapping to the standard basis of `X_P`.
    pub xp_lifts: Vec<IVec>,
    /// `X → X^P = X / (X ∩ QR_P)`.
    pub to_xupper: IMat,
    /// Basis of `X ∩ (R_P∨)^⊥`.
    pub perp_basis: Vec<IVec>,
}

impl QuotientData {
    pub fn project(&self, x: &[i64]) -> IVec {
        lattice::mat_vec(&self.to_xp, x)
    }
    pub fn project_upper(&self, x: &[i64]) -> IVec {
        lattice::mat_vec(&self.to_xupper, x)
    }
}
