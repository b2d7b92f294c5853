//! Dense linear algebra over Z/2.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Copy with a different length (truncating or zero-padding).
    pub fn resized(&self, len: usize) -> BitVec {
        BitVec::from_indices(len, self.ones().filter(|&i| i < len))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Echelon basis of a subspace `B` extended by representatives of `Z / B`
/// chosen from a list of candidate vectors. Each stored row carries the
/// quotient coordinates of the vector it represents.
#[derive(Clone, Debug, Default)]
pub struct QuotientSpace {
    dim: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
    reps: Vec<BitVec>,
}

impl QuotientSpace {
    pub fn new(dim: usize, sub: &[BitVec], candidates: &[BitVec]) -> Self {
        let cap = candidates.len();
        let mut q = QuotientSpace {
            dim,
            rows: Vec::new(),
            reps: Vec::new(),
        };
        for s in sub {
            let (rem, tag) = q.reduce(s, cap);
            if let Some(p) = rem.first_one() {
                q.rows.push((p, rem, tag));
            }
        }
        for c in candidates {
            let (rem, mut tag) = q.reduce(c, cap);
            if let Some(p) = rem.first_one() {
                tag.flip(q.reps.len());
                q.reps.push(c.clone());
                q.rows.push((p, rem, tag));
            }
        }
        let r = q.reps.len();
        for row in &mut q.rows {
            row.2 = row.2.resized(r);
        }
        q
    }

    fn reduce(&self, v: &BitVec, cap: usize) -> (BitVec, BitVec) {
        let mut rem = v.clone();
        let mut tag = BitVec::zeros(cap.max(self.reps.len()));
        for (p, row, t) in &self.rows {
            if rem.get(*p) {
                rem.xor_assign(row);
                for i in t.ones() {
                    tag.flip(i);
                }
            }
        }
        (rem, tag)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the quotient.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.reps
    }

    /// Quotient coordinates of `v`, or `None` when `v` is outside `Z`.
    pub fn coords(&self, v: &BitVec) -> Option<BitVec> {
        let (rem, tag) = self.reduce(v, self.reps.len());
        rem.is_zero().then(|| tag.resized(self.reps.len()))
    }

    /// Vector in `Z` with the given quotient coordinates.
    pub fn lift(&self, coords: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.dim);
        for i in coords.ones() {
            v.xor_assign(&self.reps[i]);
        }
        v
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[BitVec]) -> usize {
    let dim = vectors.first().map_or(0, |v| v.len());
    QuotientSpace::new(dim, &[], vectors).rank()
}

/// Solution set of the affine system `rows[k] · x = rhs[k]` in `nvars`
/// unknowns: a particular solution and a kernel basis, or `None` when the
/// system is inconsistent.
pub fn solve_affine(rows: &[(BitVec, bool)], nvars: usize) -> Option<(BitVec, Vec<BitVec>)> {
    let mut eqs: Vec<(BitVec, bool)> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(k) = (r..eqs.len()).find(|&k| eqs[k].0.get(col)) else {
            continue;
        };
        eqs.swap(r, k);
        let (prow, prhs) = eqs[r].clone();
        for (k, eq) in eqs.iter_mut().enumerate() {
            if k != r && eq.0.get(col) {
                eq.0.xor_assign(&prow);
                eq.1 ^= prhs;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if eqs[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut particular = BitVec::zeros(nvars);
    for &(row, col) in &pivots {
        particular.set(col, eqs[row].1);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let mut kernel = Vec::new();
    for free in (0..nvars).filter(|c| !pivot_cols.contains(c)) {
        let mut v = BitVec::unit(nvars, free);
        for &(row, col) in &pivots {
            if eqs[row].0.get(free) {
                v.flip(col);
            }
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_plane_by_line() {
        let sub = [BitVec::from_indices(3, [0, 1])];
        let cands = [
            BitVec::from_indices(3, [0]),
            BitVec::from_indices(3, [1]),
        ];
        let q = QuotientSpace::new(3, &sub, &cands);
        assert_eq!(q.rank(), 1);
        assert_eq!(q.coords(&BitVec::from_indices(3, [1])).unwrap(), BitVec::unit(1, 0));
        assert_eq!(q.coords(&BitVec::from_indices(3, [0, 1])).unwrap(), BitVec::zeros(1));
        assert!(q.coords(&BitVec::from_indices(3, [2])).is_none());
    }

    #[test]
    fn affine_solver_finds_kernel() {
        // x0 + x1 = 1, x1 + x2 = 0
        let rows = vec![
            (BitVec::from_indices(3, [0, 1]), true),
            (BitVec::from_indices(3, [1, 2]), false),
        ];
        let (p, k) = solve_affine(&rows, 3).unwrap();
        for (r, b) in &rows {
            assert_eq!(r.dot(&p), *b);
            assert!(!r.dot(&k[0]));
        }
        assert_eq!(k.len(), 1);
        let bad = vec![
            (BitVec::from_indices(2, [0]), true),
            (BitVec::from_indices(2, [0]), false),
        ];
        assert!(solve_affine(&bad, 2).is_none());
    }
}
