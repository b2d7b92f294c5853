//! Exact Pfaffians of skew-symmetric rational matrices.

use crate::error::{DimerError, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    n: usize,
    a: Vec<Vec<Rational>>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            a: vec![vec![Rational::zero(); n]; n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(DimerError::NotSkew);
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(DimerError::NotSkew);
                }
            }
        }
        Ok(SkewMatrix { n, a: rows })
    }

    /// Matrix from its strict upper triangle, listed row by row.
    pub fn from_upper(n: usize, upper: &[Rational]) -> Self {
        let mut m = SkewMatrix::zeros(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, upper[k].clone());
                k += 1;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i][j]
    }

    /// Sets entry (i, j) and its mirror (j, i).
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i != j, "diagonal of a skew matrix is zero");
        self.a[j][i] = -v.clone();
        self.a[i][j] = v;
    }

    /// Adds `v` to entry (i, j) and `-v` to (j, i).
    pub fn add(&mut self, i: usize, j: usize, v: &Rational) {
        let x = &self.a[i][j] + v;
        self.set(i, j, x);
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.a
    }

    /// Principal submatrix on `keep`, in the given order.
    pub fn submatrix(&self, keep: &[usize]) -> SkewMatrix {
        SkewMatrix {
            n: keep.len(),
            a: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.a[i][j].clone()).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Pfaffian by Gaussian elimination on pairs of rows, with pivoting.
pub fn pf(m: &SkewMatrix) -> Rational {
    let n = m.n;
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut a = m.a.clone();
    let mut result = Rational::one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Rational::zero();
        };
        if j != k + 1 {
            a.swap(k + 1, j);
            for row in a.iter_mut() {
                row.swap(k + 1, j);
            }
            result = -result;
        }
        let p = a[k][k + 1].clone();
        for i in k + 2..n {
            let ci = &a[i][k] / &p;
            let di = &a[i][k + 1] / &p;
            if ci.is_zero() && di.is_zero() {
                continue;
            }
            for l in k + 2..n {
                // B[i][l] = A[i][l] + (A[i][k] A[k+1][l] - A[i][k+1] A[k][l]) / p
                let delta = &ci * &a[k + 1][l] - &di * &a[k][l];
                if !delta.is_zero() {
                    a[i][l] += delta;
                }
            }
        }
        result *= p;
        k += 2;
    }
    result
}

/// Pfaffian by expansion along the first row; exponential time.
pub fn pf_by_expansion(m: &SkewMatrix) -> Rational {
    fn go(a: &[Vec<Rational>], idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return Rational::one();
        }
        if idx.len() % 2 == 1 {
            return Rational::zero();
        }
        let i = idx[0];
        let mut total = Rational::zero();
        for (p, &j) in idx.iter().enumerate().skip(1) {
            if a[i][j].is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
            let term = &a[i][j] * go(a, &rest);
            if p % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let idx: Vec<usize> = (0..m.n).collect();
    go(&m.a, &idx)
}

/// Determinant of a square rational matrix by elimination.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let x = &f * &a[c][k];
                a[r][k] -= x;
            }
        }
        d *= piv;
    }
    d
}

/// Sign of the permutation listing `seq` (a rearrangement of 0..n).
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Pfaffian of `A` with the rows and columns in `I` removed, together with
/// the sign of the permutation `I` followed by the complement in increasing
/// order. Their product is the mixed partial derivative of `pf(A)` in the
/// entries `a_{i1 j1}, ..., a_{ik jk}` where `I = (i1, j1, ..., ik, jk)`.
pub fn pf_minor(m: &SkewMatrix, idx: &[usize]) -> Result<(i32, Rational)> {
    if idx.len() % 2 == 1 {
        return Err(DimerError::OddIndexSet);
    }
    let mut seen = vec![false; m.n];
    for &i in idx {
        if i >= m.n || seen[i] {
            return Err(DimerError::RepeatedIndex(i));
        }
        seen[i] = true;
    }
    let rest: Vec<usize> = (0..m.n).filter(|&i| !seen[i]).collect();
    let mut order = idx.to_vec();
    order.extend_from_slice(&rest);
    Ok((permutation_sign(&order), pf(&m.submatrix(&rest))))
}

/// Mixed partial derivative of the Pfaffian in the listed upper entries,
/// computed by inclusion-exclusion (the Pfaffian is affine in each entry).
pub fn pf_derivative(m: &SkewMatrix, entries: &[(usize, usize)]) -> Rational {
    let k = entries.len();
    let mut total = Rational::zero();
    for mask in 0u32..1 << k {
        let mut a = m.clone();
        for (t, &(i, j)) in entries.iter().enumerate() {
            let v = if mask >> t & 1 == 1 { Rational::one() } else { Rational::zero() };
            a.set(i, j, v);
        }
        let term = pf(&a);
        if (k - mask.count_ones() as usize).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn k4() -> SkewMatrix {
        SkewMatrix::from_upper(4, &(1..=6).map(int).collect::<Vec<_>>())
    }

    #[test]
    fn small_values() {
        assert_eq!(pf(&SkewMatrix::zeros(0)), int(1));
        assert_eq!(pf(&SkewMatrix::from_upper(2, &[int(5)])), int(5));
        // af - be + cd with (a..f) = (1..6)
        assert_eq!(pf(&k4()), int(8));
        assert_eq!(pf_by_expansion(&k4()), int(8));
        assert_eq!(det(k4().rows()), int(64));
    }

    #[test]
    fn minors_match_derivatives() {
        let a = k4();
        let (s, p) = pf_minor(&a, &[0, 1]).unwrap();
        assert_eq!((s, p), (1, int(6)));
        let (s, p) = pf_minor(&a, &[0, 2]).unwrap();
        assert_eq!(int(s as i64) * p, int(-5));
        assert_eq!(pf_derivative(&a, &[(0, 2)]), int(-5));
        assert_eq!(pf_minor(&a, &[0, 0]), Err(DimerError::RepeatedIndex(0)));
        let (s, p) = pf_minor(&a, &[3, 2, 1, 0]).unwrap();
        assert_eq!((s, p), (1, int(1)));
    }
}
