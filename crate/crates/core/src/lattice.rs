//! Small dense integer linear algebra on `Z^n`.
//!
//! Everything here is exact; matrices are row-major `Vec<Vec<i64>>` and are
//! tiny (rank at most a handful), so clarity wins over speed.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub type IVec = Vec<i64>;
pub type IMat = Vec<IVec>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: i64, a: &[i64]) -> IVec {
    a.iter().map(|x| k * x).collect()
}

pub fn neg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|x| *x == 0)
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IMat, v: &[i64]) -> IVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &IMat, rows: usize, cols: usize) -> IMat {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

/// Matrix whose columns are the given vectors (each of length `n`).
pub fn from_columns(cols: &[IVec], n: usize) -> IMat {
    (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Smith normal form: returns `(u, d, v)` with `u · a · v = d`, `u`, `v`
/// unimodular and `d` diagonal with `d_ii | d_(i+1)(i+1)`, `d_ii >= 0`.
pub fn smith(a: &[IVec], rows: usize, cols: usize) -> (IMat, IMat, IMat) {
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t].div_euclid(d[t][t]);
            if q != 0 {
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            if d[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = d[t][j].div_euclid(d[t][t]);
            if q != 0 {
                for i in 0..rows {
                    d[i][j] -= q * d[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= q * v[i][t];
                }
            }
            if d[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any offending entry into row t and retry
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if d[i][j] % d[t][t] != 0 {
                    for k in 0..cols {
                        d[t][k] += d[i][k];
                    }
                    for k in 0..rows {
                        u[t][k] += u[i][k];
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[t][t] < 0 {
            for k in 0..cols {
                d[t][k] = -d[t][k];
            }
            for k in 0..rows {
                u[t][k] = -u[t][k];
            }
        }
        t += 1;
    }
    (u, d, v)
}

/// Inverse of a unimodular matrix, computed exactly.
pub fn unimodular_inverse(m: &IMat) -> IMat {
    let inv = rational_inverse(m).expect("matrix is not invertible");
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn rational_inverse(m: &IMat) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational64> = r.iter().map(|x| Rational64::from(*x)).collect();
            row.extend((0..n).map(|j| Rational64::from(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over Q.
pub fn rank(vectors: &[IVec]) -> usize {
    let n = vectors.first().map_or(0, |v| v.len());
    if n == 0 {
        return 0;
    }
    let m = from_columns(vectors, n);
    let (_, d, _) = smith(&m, n, vectors.len());
    (0..n.min(vectors.len())).filter(|&i| d[i][i] != 0).count()
}

/// Solve `sum_j c_j cols[j] = target` over Q; `None` if no solution.
/// The columns are assumed linearly independent.
pub fn solve_rational(cols: &[IVec], target: &[i64]) -> Option<Vec<Rational64>> {
    let n = target.len();
    let k = cols.len();
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> = cols.iter().map(|c| Rational64::from(c[i])).collect();
            row.push(Rational64::from(target[i]));
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c];
        for x in a[r].iter_mut() {
            *x /= piv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational64::zero(); k];
    for (i, &c) in piv_cols.iter().enumerate() {
        sol[c] = a[i][k];
    }
    Some(sol)
}

/// Z-basis of `{x in Z^n : <x, c> = 0 for all c in constraints}`.
pub fn integer_kernel(constraints: &[IVec], n: usize) -> Vec<IVec> {
    if constraints.is_empty() {
        return identity(n);
    }
    let (_, d, v) = smith(constraints, constraints.len(), n);
    let r = (0..constraints.len().min(n)).filter(|&i| d[i][i] != 0).count();
    (r..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect()
}

pub fn l1(a: &[Rational64]) -> Rational64 {
    a.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn smith_is_a_factorisation(a in proptest::collection::vec(proptest::collection::vec(-6i64..6, 3), 2)) {
            let (u, d, v) = smith(&a, 2, 3);
            prop_assert_eq!(mat_mul(&mat_mul(&u, &a), &v), d.clone());
            for i in 0..2 {
                for j in 0..3 {
                    if i != j { prop_assert_eq!(d[i][j], 0); }
                }
            }
            if d[0][0] != 0 { prop_assert_eq!(d[1][1] % d[0][0], 0); }
            // unimodular transforms
            let ui = unimodular_inverse(&u);
            prop_assert_eq!(mat_mul(&u, &ui), identity(2));
            let vi = unimodular_inverse(&v);
            prop_assert_eq!(mat_mul(&v, &vi), identity(3));
        }
    }

    #[test]
    fn kernel_of_coroots() {
        let k = integer_kernel(&[vec![1, -1]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&k[0], &[1, -1]), 0);
        assert_eq!(k[0].iter().map(|x| x.abs()).sum::<i64>(), 2);
    }
}
