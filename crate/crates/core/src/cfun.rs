//! Macdonald c-functions as explicit factor lists, pole orders at exact
//! points, residual points, and the Plancherel density `|c|^{-2}`.
//!
//! Every factor has the shape `1 − σ 𝐪^e θ_x` with `σ = ±1` and `e ∈ Q`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::heckealg::HeckeAlgebra;
use crate::lattice::{self, IVec};
use crate::rootdata::RootDatum;
use crate::torus::TorusPoint;
use crate::weyl::FiniteWeyl;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CError {
    #[error("c-function has a pole at this point (root {root:?})")]
    PoleAtPoint { root: IVec },
    #[error("residual search is limited to rank <= 2 (got {0})")]
    Unsupported(usize),
}

/// `1 − sign·𝐪^exp·θ_x`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub x: IVec,
    pub sign: i8,
    pub exp: Rational64,
}

impl Factor {
    fn new(x: IVec, sign: i8, exp: Rational64) -> Self {
        Factor { x, sign, exp }
    }

    pub fn eval(&self, t: &TorusPoint, q: f64) -> Complex64 {
        let e = *self.exp.numer() as f64 / *self.exp.denom() as f64;
        Complex64::new(1.0, 0.0) - f64::from(self.sign) * q.powf(e) * t.eval(&self.x)
    }

    /// Value at an exact point, as `1 − c 𝐪^k`.
    pub fn at(&self, p: &ExactPoint) -> QTerm {
        let (s, e, m) = p.character(&self.x);
        QTerm { coef: Rational64::from(i64::from(self.sign * s)) * m, exp: e + self.exp }
    }

    pub fn vanishes_at(&self, p: &ExactPoint) -> bool {
        self.at(p).is_zero()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.sign > 0 { "-" } else { "+" };
        write!(f, "(1 {op} q^{} θ{:?})", self.exp, self.x)
    }
}

/// `1 − coef·𝐪^exp` for transcendental `𝐪`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QTerm {
    pub coef: Rational64,
    pub exp: Rational64,
}

impl QTerm {
    pub fn is_zero(&self) -> bool {
        self.coef.is_one() && self.exp.is_zero()
    }
    pub fn eval(&self, q: f64) -> f64 {
        let e = *self.exp.numer() as f64 / *self.exp.denom() as f64;
        let c = *self.coef.numer() as f64 / *self.coef.denom() as f64;
        1.0 - c * q.powf(e)
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.coef.is_negative() { "+" } else { "-" };
        let c = self.coef.abs();
        let cs = if c.is_one() { String::new() } else { c.to_string() };
        let es = if self.exp.is_integer() { self.exp.to_string() } else { format!("({})", self.exp) };
        if self.exp.is_zero() {
            write!(f, "1 {op} {}", c)
        } else {
            write!(f, "1 {op} {cs}q^{es}")
        }
    }
}

/// An exact value `Π num / Π den` of factors `1 − c𝐪^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct QValue {
    pub num: Vec<QTerm>,
    pub den: Vec<QTerm>,
}

impl QValue {
    pub fn is_zero(&self) -> bool {
        self.num.iter().any(QTerm::is_zero)
    }
    pub fn eval(&self, q: f64) -> f64 {
        self.num.iter().map(|t| t.eval(q)).product::<f64>() / self.den.iter().map(|t| t.eval(q)).product::<f64>()
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[QTerm]| -> String {
            if v.is_empty() {
                "1".into()
            } else {
                v.iter().map(|t| format!("({t})")).collect::<Vec<_>>().join("")
            }
        };
        if self.den.is_empty() {
            write!(f, "{}", side(&self.num))
        } else {
            write!(f, "{}/{}", side(&self.num), side(&self.den))
        }
    }
}

/// A torus point `t(e_i) = sign_i · mult_i · 𝐪^{exp_i}` on the standard basis of `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactPoint {
    pub sign: Vec<i8>,
    pub exp: Vec<Rational64>,
    pub mult: Vec<Rational64>,
}

fn rpow(r: Rational64, k: i64) -> Rational64 {
    let p = r.pow(k.unsigned_abs() as i32);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

impl ExactPoint {
    pub fn new(sign: Vec<i8>, exp: Vec<Rational64>) -> Self {
        let n = sign.len();
        ExactPoint { sign, exp, mult: vec![Rational64::one(); n] }
    }

    pub fn rank(&self) -> usize {
        self.sign.len()
    }

    /// `x(t)` as `(sign, 𝐪-exponent, multiplier)`.
    pub fn character(&self, x: &[i64]) -> (i8, Rational64, Rational64) {
        let mut s = 1i8;
        let mut e = Rational64::zero();
        let mut m = Rational64::one();
        for i in 0..self.rank() {
            if x[i].rem_euclid(2) == 1 {
                s *= self.sign[i];
            }
            e += self.exp[i] * x[i];
            m *= rpow(self.mult[i], x[i]);
        }
        (s, e, m)
    }

    pub fn to_torus(&self, q: f64) -> TorusPoint {
        TorusPoint(
            (0..self.rank())
                .map(|i| {
                    let e = *self.exp[i].numer() as f64 / *self.exp[i].denom() as f64;
                    let m = *self.mult[i].numer() as f64 / *self.mult[i].denom() as f64;
                    Complex64::new(f64::from(self.sign[i]) * m * q.powf(e), 0.0)
                })
                .collect(),
        )
    }

    /// `u(t)`, with `(ut)(x) = t(u^{-1}x)`.
    pub fn act(&self, fin: &FiniteWeyl, u: usize) -> ExactPoint {
        let n = self.rank();
        let ui = fin.inv(u);
        let mut out = ExactPoint::new(vec![1; n], vec![Rational64::zero(); n]);
        for i in 0..n {
            let e: IVec = (0..n).map(|j| i64::from(i == j)).collect();
            let (s, ex, m) = self.character(&fin.act(ui, &e));
            out.sign[i] = s;
            out.exp[i] = ex;
            out.mult[i] = m;
        }
        out
    }

    /// `s c^{-1}` for the polar decomposition `t = sc`.
    pub fn invert_real_part(&self) -> ExactPoint {
        ExactPoint {
            sign: self.sign.clone(),
            exp: self.exp.iter().map(|e| -e).collect(),
            mult: self.mult.iter().map(|m| m.recip()).collect(),
        }
    }

    pub fn orbit(&self, fin: &FiniteWeyl) -> BTreeSet<ExactPoint> {
        (0..fin.order()).map(|u| self.act(fin, u)).collect()
    }

    /// Inverse of the `Display` form `(+,1/2,1);(-,0,1)`.
    pub fn parse(s: &str) -> Result<ExactPoint, String> {
        let mut p = ExactPoint::new(Vec::new(), Vec::new());
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let body = part
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| format!("expected '(sign,exp,mult)', got '{part}'"))?;
            let f: Vec<&str> = body.split(',').map(str::trim).collect();
            if f.len() != 3 {
                return Err(format!("expected three fields in '{part}'"));
            }
            let sign = match f[0] {
                "+" => 1,
                "-" | "\u{2212}" => -1,
                other => return Err(format!("bad sign '{other}'")),
            };
            let rat = |x: &str| -> Result<Rational64, String> { x.parse::<Rational64>().map_err(|_| format!("bad rational '{x}'")) };
            let mult = rat(f[2])?;
            if mult <= Rational64::zero() {
                return Err("multiplier must be positive".into());
            }
            p.sign.push(sign);
            p.exp.push(rat(f[1])?);
            p.mult.push(mult);
        }
        Ok(p)
    }

    pub fn canonical(&self, fin: &FiniteWeyl) -> ExactPoint {
        self.orbit(fin).into_iter().next().expect("orbit is nonempty")
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.rank())
            .map(|i| {
                let s = if self.sign[i] > 0 { "+" } else { "-" };
                format!("({s},{},{})", self.exp[i], self.mult[i])
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// The factors of `c_α` for one root `α ∈ R_0` (its `R_1` direction).
#[derive(Clone, Debug)]
pub struct CFactor {
    pub root: usize,
    pub alpha: IVec,
    pub num: Vec<Factor>,
    pub den: Vec<Factor>,
}

#[derive(Clone, Debug)]
pub struct CFunction {
    datum: RootDatum,
    fin: FiniteWeyl,
    factors: Vec<CFactor>,
}

impl CFunction {
    pub fn new(alg: &HeckeAlgebra) -> Self {
        let d = alg.datum();
        let l = alg.labels();
        let factors = (0..d.num_roots())
            .map(|j| {
                let ma = lattice::neg(d.root(j));
                let (f0, f1) = (Rational64::from(i64::from(l.f0(j))), Rational64::from(i64::from(l.f1(j))));
                let two = Rational64::from(2);
                if d.doubles(j) {
                    CFactor {
                        root: j,
                        alpha: lattice::scale(2, d.root(j)),
                        num: vec![
                            Factor::new(ma.clone(), -1, (f0 - f1) / two),
                            Factor::new(ma.clone(), 1, -(f0 + f1) / two),
                        ],
                        den: vec![Factor::new(ma.clone(), 1, Rational64::zero()), Factor::new(ma, -1, Rational64::zero())],
                    }
                } else {
                    CFactor {
                        root: j,
                        alpha: d.root(j).clone(),
                        num: vec![Factor::new(ma.clone(), 1, -f1)],
                        den: vec![Factor::new(ma, 1, Rational64::zero())],
                    }
                }
            })
            .collect();
        CFunction { datum: d.clone(), fin: alg.weyl().finite().clone(), factors }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn factor(&self, j: usize) -> &CFactor {
        &self.factors[j]
    }

    /// Numerator and denominator factors over `roots`, with identical
    /// factors cancelled.
    pub fn reduced_factors(&self, roots: &[usize]) -> (Vec<Factor>, Vec<Factor>) {
        let mut num: Vec<Factor> = roots.iter().flat_map(|&j| self.factors[j].num.clone()).collect();
        let mut den: Vec<Factor> = Vec::new();
        for f in roots.iter().flat_map(|&j| self.factors[j].den.clone()) {
            if let Some(k) = num.iter().position(|g| *g == f) {
                num.remove(k);
            } else {
                den.push(f);
            }
        }
        (num, den)
    }

    /// `Π_{α∈S} c_α(t)` at a numeric point.
    pub fn eval(&self, t: &TorusPoint, q: f64, roots: &[usize]) -> Result<Complex64, CError> {
        let (num, den) = self.reduced_factors(roots);
        let mut v = Complex64::new(1.0, 0.0);
        for f in &den {
            let d = f.eval(t, q);
            if d.norm() < 1e-12 {
                return Err(CError::PoleAtPoint { root: lattice::neg(&f.x) });
            }
            v /= d;
        }
        for f in &num {
            v *= f.eval(t, q);
        }
        Ok(v)
    }

    /// `1 / Π_{α∈S} c_α(t)`; fails only where a numerator factor vanishes.
    pub fn eval_inv(&self, t: &TorusPoint, q: f64, roots: &[usize]) -> Result<Complex64, CError> {
        let (num, den) = self.reduced_factors(roots);
        let mut v = Complex64::new(1.0, 0.0);
        for f in &num {
            let n = f.eval(t, q);
            if n.norm() < 1e-12 {
                return Err(CError::PoleAtPoint { root: lattice::neg(&f.x) });
            }
            v /= n;
        }
        for f in &den {
            v *= f.eval(t, q);
        }
        Ok(v)
    }

    /// `|Π_{α∈S} c_α(t)|^{-2}`, which is regular wherever the
    /// numerator factors do not vanish.
    pub fn abs_inv_sq(&self, t: &TorusPoint, q: f64, roots: &[usize]) -> Result<f64, CError> {
        let (num, den) = self.reduced_factors(roots);
        let mut v = 1.0;
        for f in &den {
            v *= f.eval(t, q).norm_sqr();
        }
        for f in &num {
            let n = f.eval(t, q).norm_sqr();
            if n < 1e-24 {
                if v == 0.0 {
                    return Ok(0.0);
                }
                return Err(CError::PoleAtPoint { root: lattice::neg(&f.x) });
            }
            v /= n;
        }
        Ok(v)
    }

    /// `Π_{α∈S} c_α(t)` at an exact point, with generic `𝐪`.
    pub fn eval_exact(&self, p: &ExactPoint, roots: &[usize]) -> Result<QValue, CError> {
        let (num, den) = self.reduced_factors(roots);
        let den: Vec<QTerm> = den
            .iter()
            .map(|f| {
                let t = f.at(p);
                if t.is_zero() {
                    Err(CError::PoleAtPoint { root: lattice::neg(&f.x) })
                } else {
                    Ok(t)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(QValue { num: num.iter().map(|f| f.at(p)).collect(), den })
    }

    /// The pole order `i_t` of `(c(t) c(w_0 t))^{-1}`.
    pub fn pole_order(&self, p: &ExactPoint) -> i64 {
        self.factors
            .iter()
            .map(|c| {
                let z = c.num.iter().filter(|f| f.vanishes_at(p)).count() as i64;
                let pl = c.den.iter().filter(|f| f.vanishes_at(p)).count() as i64;
                z - pl
            })
            .sum()
    }

    /// Representatives (lexicographically least in their `W0`-orbit) of the
    /// residual points whose unitary part is a sign vector.
    pub fn residual_search(&self) -> Result<Vec<ExactPoint>, CError> {
        let d = &self.datum;
        let n = d.rank();
        if n > 2 {
            return Err(CError::Unsupported(n));
        }
        if !d.is_semisimple() {
            return Ok(Vec::new());
        }
        let numf: Vec<Factor> = self
            .factors
            .iter()
            .flat_map(|c| c.num.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut found = BTreeSet::new();
        for choice in combinations(numf.len(), n) {
            let rows: Vec<IVec> = choice.iter().map(|&k| numf[k].x.clone()).collect();
            if lattice::rank(&rows) < n {
                continue;
            }
            // Σ_i x_i e_i = −exp, solved over Q per equation row
            let mut a: Vec<Vec<Rational64>> = rows.iter().map(|r| r.iter().map(|v| Rational64::from(*v)).collect()).collect();
            let mut b: Vec<Rational64> = choice.iter().map(|&k| -numf[k].exp).collect();
            let Some(e) = solve_square(&mut a, &mut b) else { continue };
            for signs in sign_vectors(n) {
                let p = ExactPoint::new(signs, e.clone());
                if choice.iter().all(|&k| numf[k].vanishes_at(&p)) && self.pole_order(&p) == n as i64 {
                    found.insert(p.canonical(&self.fin));
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Whether `s c^{-1} ∈ W(R_{s,1}) r` for `r = sc`.
    pub fn cster_check(&self, p: &ExactPoint) -> bool {
        let d = &self.datum;
        let signs_only = ExactPoint::new(p.sign.clone(), vec![Rational64::zero(); p.rank()]);
        let gens: Vec<usize> = self
            .factors
            .iter()
            .filter(|c| d.is_positive(c.root) && signs_only.character(&c.alpha).0 == 1)
            .map(|c| self.reflection(c.root))
            .collect();
        let mut group = BTreeSet::from([self.fin.identity()]);
        let mut frontier = vec![self.fin.identity()];
        while let Some(u) = frontier.pop() {
            for &g in &gens {
                let v = self.fin.mul(u, g);
                if group.insert(v) {
                    frontier.push(v);
                }
            }
        }
        let target = p.invert_real_part();
        group.iter().any(|&u| p.act(&self.fin, u) == target)
    }

    fn reflection(&self, j: usize) -> usize {
        let d = &self.datum;
        (0..self.fin.order())
            .find(|&u| {
                self.fin.len(u) > 0
                    && self.fin.act_root(u, j) == d.neg(j)
                    && (0..d.rank()).all(|i| {
                        let e: IVec = (0..d.rank()).map(|k| i64::from(i == k)).collect();
                        self.fin.act(u, &e) == d.reflect(j, &e)
                    })
            })
            .expect("every root has a reflection in W0")
    }
}

fn solve_square(a: &mut [Vec<Rational64>], b: &mut [Rational64]) -> Option<Vec<Rational64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c] / a[c][c];
                for k in 0..n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
                let v = b[c];
                b[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

pub fn sign_vectors(n: usize) -> Vec<Vec<i8>> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckealg::equal_labels;

    fn cf(p: &str) -> CFunction {
        CFunction::new(&HeckeAlgebra::preset(p, &equal_labels(1)).unwrap())
    }

    #[test]
    fn a1_values() {
        let c = cf("A1-sc");
        let pos = c.datum().positive_roots();
        // ω(t) = q so that α(t) = q²
        let p = ExactPoint::new(vec![1], vec![Rational64::from(1)]);
        let v = c.eval_exact(&p, &pos).unwrap();
        assert_eq!(v.to_string(), "(1 - q^-3)/(1 - q^-2)");
        let one = ExactPoint::new(vec![1], vec![Rational64::zero()]);
        assert!(c.eval_exact(&one, &pos).is_err());
        assert_eq!(c.pole_order(&one), -2);
        let half = ExactPoint::new(vec![1], vec![Rational64::new(1, 2)]);
        assert_eq!(c.pole_order(&half), 1);
    }

    #[test]
    fn a1_residuals() {
        let c = cf("A1-sc");
        let r = c.residual_search().unwrap();
        assert_eq!(r.len(), 2);
        for p in &r {
            assert_eq!(p.exp[0].abs(), Rational64::new(1, 2));
            assert!(c.cster_check(p));
        }
        assert!(cf("GL2").residual_search().unwrap().is_empty());
    }
}
