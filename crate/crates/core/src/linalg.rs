//! Small exact linear algebra: integer determinants, unimodular solves and
//! rational Gaussian elimination.
//!
//! Integer routines work in checked `i128` and fall back to big integers when
//! an intermediate would overflow.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Integer row reduction by Euclid steps on each column. Row operations are
/// unimodular, so the product of the resulting diagonal (with the swap sign)
/// is the determinant. `aug` columns past `n` are carried along.
fn euclid_triangularise(rows: &mut [Vec<i128>], n: usize) -> Option<i128> {
    let mut sign: i128 = 1;
    for k in 0..n {
        loop {
            let mut piv: Option<usize> = None;
            for r in k..n {
                if rows[r][k] != 0 && piv.is_none_or(|p| rows[r][k].abs() < rows[p][k].abs()) {
                    piv = Some(r);
                }
            }
            let Some(p) = piv else {
                return Some(0);
            };
            if p != k {
                rows.swap(p, k);
                sign = -sign;
            }
            let mut done = true;
            for r in k + 1..n {
                if rows[r][k] != 0 {
                    let q = rows[r][k] / rows[k][k];
                    for c in k..rows[r].len() {
                        let v = rows[r][c].checked_sub(q.checked_mul(rows[k][c])?)?;
                        rows[r][c] = v;
                    }
                    if rows[r][k] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
    }
    let mut det = sign;
    for (k, row) in rows.iter().enumerate().take(n) {
        det = det.checked_mul(row[k])?;
    }
    Some(det)
}

/// Determinant of a square integer matrix.
pub fn int_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut rows: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match euclid_triangularise(&mut rows, n) {
        Some(d) => BigInt::from(d),
        None => bareiss_det(m),
    }
}

/// Fraction-free elimination in big integers.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(r, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `m x = rhs` when `m` is an integer matrix of determinant `+-1`.
/// Returns `None` if `m` is not unimodular or an intermediate overflows.
pub fn solve_unimodular(m: &[Vec<i64>], rhs: &[i128]) -> Option<Vec<i128>> {
    let n = m.len();
    let mut rows: Vec<Vec<i128>> = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            row.push(b);
            row
        })
        .collect();
    let det = euclid_triangularise(&mut rows, n)?;
    if det.abs() != 1 {
        return None;
    }
    let mut x = vec![0i128; n];
    for k in (0..n).rev() {
        let mut acc = rows[k][n];
        for c in k + 1..n {
            acc = acc.checked_sub(rows[k][c].checked_mul(x[c])?)?;
        }
        // Diagonal entries are +-1 here.
        x[k] = acc.checked_mul(rows[k][k])?;
    }
    Some(x)
}

/// Gaussian elimination over the rationals. `None` if singular.
pub fn solve_rational(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for c in k..=n {
            a[k][c] = &a[k][c] / &pivot;
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for c in k..=n {
                    let v = &a[k][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(
        a.into_iter()
            .map(|mut row| row.pop().expect("augmented"))
            .collect(),
    )
}

/// Inverse over the rationals. `None` if singular.
pub fn inverse_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve_rational(m, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn is_nonnegative(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
