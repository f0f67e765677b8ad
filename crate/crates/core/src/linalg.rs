//! Dense complex matrices: generalized eigenspace projectors and the
//! splitting of a matrix into its unit-circle and contracting parts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Operator 2-norm.
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().svd(false, false).singular_values.max()
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖a − b‖_max / (1 + ‖b‖_max)`
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b)) / (1.0 + max_abs(b))
}

pub fn eigenvalues(a: &CMat) -> Vec<Complex64> {
    if a.is_empty() {
        return Vec::new();
    }
    let schur = a.clone().schur();
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Swap the adjacent diagonal entries `k`, `k+1` of the upper triangular
/// `t`, keeping `a = q t q*`.
fn swap_schur(t: &mut CMat, q: &mut CMat, k: usize) {
    let (a, b, c) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k + 1)]);
    // eigenvector of the 2x2 block for the eigenvalue `c`
    let (x1, x2) = (b, c - a);
    let nrm = (x1.norm_sqr() + x2.norm_sqr()).sqrt();
    if nrm == 0.0 {
        return;
    }
    let (g11, g21) = (x1 / nrm, x2 / nrm);
    let (g12, g22) = (-g21.conj(), g11.conj());
    let n = t.nrows();
    for j in 0..n {
        let (u, v) = (t[(k, j)], t[(k + 1, j)]);
        t[(k, j)] = g11.conj() * u + g21.conj() * v;
        t[(k + 1, j)] = g12.conj() * u + g22.conj() * v;
    }
    for m in [&mut *t, &mut *q] {
        for i in 0..n {
            let (u, v) = (m[(i, k)], m[(i, k + 1)]);
            m[(i, k)] = u * g11 + v * g21;
            m[(i, k + 1)] = u * g12 + v * g22;
        }
    }
    t[(k + 1, k)] = Complex64::new(0.0, 0.0);
    t[(k, k)] = c;
    t[(k + 1, k + 1)] = a;
}

/// The projector onto the generalized eigenspace for eigenvalues `inside`
/// along the one for `outside`. Each Schur eigenvalue is assigned to the
/// nearer list; the Schur form is reordered so the `inside` block comes
/// first and the coupling is removed by a triangular Sylvester solve.
pub fn spectral_projector(a: &CMat, inside: &[Complex64], outside: &[Complex64]) -> Option<CMat> {
    let n = a.nrows();
    if inside.is_empty() {
        return Some(CMat::zeros(n, n));
    }
    if outside.is_empty() {
        return Some(eye(n));
    }
    let (mut q, mut t) = a.clone().schur().unpack();
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    let dist = |z: Complex64, set: &[Complex64]| set.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min);
    let is_in = |z: Complex64| dist(z, inside) < dist(z, outside);
    // bubble the inside eigenvalues to the top
    let mut m = 0;
    for i in 0..n {
        if is_in(t[(i, i)]) {
            for k in (m..i).rev() {
                swap_schur(&mut t, &mut q, k);
            }
            m += 1;
        }
    }
    if m == 0 || m == n {
        return Some(if m == 0 { CMat::zeros(n, n) } else { eye(n) });
    }
    // t11 y − y t22 = t12, column by column
    let r = n - m;
    let mut y = CMat::zeros(m, r);
    for j in 0..r {
        let lam = t[(m + j, m + j)];
        let mut rhs: Vec<Complex64> = (0..m).map(|i| t[(i, m + j)]).collect();
        for l in 0..j {
            for i in 0..m {
                rhs[i] += y[(i, l)] * t[(m + l, m + j)];
            }
        }
        for i in (0..m).rev() {
            let mut acc = rhs[i];
            for k in i + 1..m {
                acc -= t[(i, k)] * y[(k, j)];
            }
            let d = t[(i, i)] - lam;
            if d.norm() < 1e-300 {
                return None;
            }
            y[(i, j)] = acc / d;
        }
    }
    let mut blk = CMat::zeros(n, n);
    for i in 0..m {
        blk[(i, i)] = Complex64::new(1.0, 0.0);
        for j in 0..r {
            blk[(i, m + j)] = y[(i, j)];
        }
    }
    Some(&q * blk * q.adjoint())
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SplitError {
    #[error("eigenvalue of modulus {0} lies in the forbidden annulus")]
    SpectrumGapViolation(f64),
    #[error("projector basis is singular")]
    Singular,
}

#[derive(Clone, Debug)]
pub struct SpectralSplit {
    pub p1: CMat,
    pub p_lt1: CMat,
    pub a_lt1: CMat,
}

/// Split `a ∈ Ω_ε`: eigenvalues of modulus one or at most `1 − ε`.
pub fn spectral_split(a: &CMat, eps: f64) -> Result<SpectralSplit, SplitError> {
    const TOL: f64 = 1e-6;
    let ev = eigenvalues(a);
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for z in ev {
        let r = z.norm();
        if (r - 1.0).abs() <= TOL {
            outside.push(z);
        } else if r <= 1.0 - eps + TOL {
            inside.push(z);
        } else {
            return Err(SplitError::SpectrumGapViolation(r));
        }
    }
    let p_lt1 = spectral_projector(a, &inside, &outside).ok_or(SplitError::Singular)?;
    let n = a.nrows();
    Ok(SpectralSplit { p1: eye(n) - &p_lt1, a_lt1: &p_lt1 * a, p_lt1 })
}

/// Estimate `limsup ‖B^n‖^{1/n}` by regressing `log ‖B^n‖` on
/// `(1, n, log n)` over `n ∈ [lo, hi]`; returns `exp(slope)`.
pub fn growth_rate(b: &CMat, lo: usize, hi: usize) -> f64 {
    let mut pow = eye(b.nrows());
    let mut rows = Vec::new();
    for n in 1..=hi {
        pow = &pow * b;
        if n >= lo {
            let nm = op_norm(&pow);
            if nm <= 1e-280 {
                return 0.0;
            }
            rows.push((n as f64, nm.ln()));
        }
    }
    let a = DMatrix::<f64>::from_fn(rows.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => rows[i].0,
        _ => rows[i].0.ln(),
    });
    let y = DVector::<f64>::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let sol = a.svd(true, true).solve(&y, 1e-12).expect("least squares");
    sol[1].exp()
}

/// Least squares fit `y ≈ a + b x`; returns `(a, b, residual sum of squares)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let a = my - b * mx;
    let rss = x.iter().zip(y).map(|(xi, yi)| (yi - a - b * xi).powi(2)).sum();
    (a, b, rss)
}
