//! Points of the complex torus `T = Hom(X, C^×)`, given by their values on
//! the standard basis of `X = Z^n`.

use num_complex::Complex64;
use rand::Rng;

use crate::weyl::FiniteWeyl;

#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint(pub Vec<Complex64>);

impl TorusPoint {
    pub fn trivial(n: usize) -> Self {
        TorusPoint(vec![Complex64::new(1.0, 0.0); n])
    }

    /// Unitary point with the given angles.
    pub fn from_angles(phi: &[f64]) -> Self {
        TorusPoint(phi.iter().map(|p| Complex64::from_polar(1.0, *p)).collect())
    }

    pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Self {
        let phi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        Self::from_angles(&phi)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `x(t)`
    pub fn eval(&self, x: &[i64]) -> Complex64 {
        self.0
            .iter()
            .zip(x)
            .fold(Complex64::new(1.0, 0.0), |acc, (t, &k)| acc * t.powi(k as i32))
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint(self.0.iter().map(|a| a.inv()).collect())
    }

    /// `(ut)(x) = t(u^{-1}x)`
    pub fn act(&self, w: &FiniteWeyl, u: usize) -> TorusPoint {
        let m = w.matrix(w.inv(u));
        let n = self.0.len();
        TorusPoint(
            (0..n)
                .map(|i| {
                    let col: Vec<i64> = (0..n).map(|j| m[j][i]).collect();
                    self.eval(&col)
                })
                .collect(),
        )
    }

    /// Absolute value `|t|`, a positive real point.
    pub fn abs(&self) -> TorusPoint {
        TorusPoint(self.0.iter().map(|a| Complex64::new(a.norm(), 0.0)).collect())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.0.iter().all(|a| (a.norm() - 1.0).abs() <= tol)
    }

    pub fn dist(&self, other: &TorusPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
