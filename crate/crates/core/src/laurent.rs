//! Laurent polynomials in `v` with rational coefficients.
//!
//! The parameter `v` stands for `q^{1/2}`; every label `q(s)^{1/2}` is a
//! monomial `v^f`, so all structure constants of the algebra live here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(exp: i32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    /// `v^e`
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(e, BigRational::one())
    }

    /// `v^f - v^{-f}`, the quadratic-relation coefficient for label exponent `f`.
    pub fn quad(f: i32) -> Self {
        &Self::v_pow(f) - &Self::v_pow(-f)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant `c` if this is `c·v^0`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Substitute `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, a)| (-e, a.clone())).collect(),
        }
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * v.powi(*e))
            .sum()
    }

    pub fn eval_c(&self, v: f64) -> Complex64 {
        Complex64::new(self.eval(v), 0.0)
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty coefficient".into());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, &c) in chars.iter().enumerate() {
            let splits = (c == '+' || c == '-') && i > 0 && chars[i - 1] != '^' && chars[i - 1] != '(';
            if splits {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        pieces.push(cur);
        let mut out = Laurent::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (c, e) = parse_term(body)?;
            out.add_term(e, if neg { -c } else { c });
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator '{n}'"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator '{d}'"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad integer '{s}'"))?;
        Ok(BigRational::from_integer(n))
    }
}

fn parse_term(t: &str) -> Result<(BigRational, i32), String> {
    if t.is_empty() {
        return Err("dangling sign".into());
    }
    match t.find('v') {
        None => Ok((parse_rational(t)?, 0)),
        Some(pos) => {
            let coef = t[..pos].trim_end_matches('*');
            let c = if coef.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef)?
            };
            let rest = &t[pos + 1..];
            let e = if rest.is_empty() {
                1
            } else {
                let r = rest
                    .strip_prefix('^')
                    .ok_or_else(|| format!("bad exponent in '{t}'"))?;
                let r = r.trim_start_matches('(').trim_end_matches(')');
                r.parse::<i32>().map_err(|_| format!("bad exponent in '{t}'"))?
            };
            Ok((c, e))
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{a}v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
