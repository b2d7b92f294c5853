//! Integer diagonalization by unimodular row and column operations.

/// Result of diagonalizing an `m x n` integer matrix `R`: `P R Q = D` with
/// `D` diagonal. Only the column transform is retained.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diagonal: Vec<i128>,
    /// `Q`, `n x n`, row-major.
    pub col_transform: Vec<Vec<i128>>,
    /// `Q^{-1}`.
    pub col_transform_inv: Vec<Vec<i128>>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn has_torsion(&self) -> bool {
        self.diagonal.iter().any(|d| d.abs() > 1)
    }
}

pub fn diagonalize(matrix: &[Vec<i128>], ncols: usize) -> Diagonalization {
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let m = a.len();
    let n = ncols;
    let mut q = identity(n);
    let mut qinv = identity(n);
    let mut diagonal = Vec::new();

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
            qinv.swap(t, pj);
        }
        let mut clean = true;
        let p = a[t][t];
        for i in t + 1..m {
            let k = a[i][t] / p;
            if k != 0 {
                for j in t..n {
                    a[i][j] -= k * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..n {
            let k = a[t][j] / p;
            if k != 0 {
                // col_j -= k col_t
                for row in a.iter_mut() {
                    row[j] -= k * row[t];
                }
                for row in q.iter_mut() {
                    row[j] -= k * row[t];
                }
                // row_t of Q^{-1} += k row_j
                let rj = qinv[j].clone();
                for (x, y) in qinv[t].iter_mut().zip(rj) {
                    *x += k * y;
                }
            }
            clean &= a[t][j] == 0;
        }
        if clean {
            diagonal.push(p);
            t += 1;
        }
    }
    Diagonalization {
        diagonal,
        col_transform: q,
        col_transform_inv: qinv,
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn transform_is_unimodular_and_diagonalizes_columns() {
        let r = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = diagonalize(&r, 3);
        assert_eq!(mul(&d.col_transform, &d.col_transform_inv), identity(3));
        assert_eq!(d.rank(), 3);
        assert!(d.has_torsion());
    }

    #[test]
    fn rank_deficient_without_torsion() {
        let r = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        let d = diagonalize(&r, 3);
        assert_eq!(d.rank(), 2);
        assert!(!d.has_torsion());
        let rq = mul(&r, &d.col_transform);
        // the last transformed coordinate is free: no relation touches it
        assert!(rq.iter().all(|row| row[2] == 0));
    }
}
