//! Dense linear algebra over the two-element field.
//!
//! Rows are packed into `u64` words and combined with word-level XOR.

use std::fmt;

use crate::error::{Error, Result};

/// Dense matrices above this many bits are refused instead of allocated.
pub const MAX_DENSE_BITS: u128 = 1 << 33;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({s})")
    }
}

/// A dense binary matrix with row-major bitset storage.
///
/// `row_labels` and `col_labels` carry clique indices when the matrix is a
/// boundary matrix; otherwise they are `0..rows` and `0..cols`.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let stride = words_for(cols);
        if (rows as u128) * (stride as u128) * (WORD as u128) > MAX_DENSE_BITS {
            return Err(Error::MatrixTooLarge { rows, cols });
        }
        Ok(Gf2Matrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
            row_labels: (0..rows).collect(),
            col_labels: (0..cols).collect(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len())?;
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension {
                    expected: rows,
                    actual: c.len(),
                });
            }
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn with_labels(mut self, row_labels: Vec<usize>, col_labels: Vec<usize>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    /// Number of ones in every column.
    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                w[j] += 1;
            }
        }
        w
    }

    pub fn transpose(&self) -> Result<Self> {
        let mut t = Self::zeros(self.cols, self.rows)?;
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        Ok(t.with_labels(self.col_labels.clone(), self.row_labels.clone()))
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in self.row(i).ones() {
                let src = rhs.row_words(k);
                for (d, s) in out.bits[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// The sub-matrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Gf2Matrix> {
        let mut out = Self::zeros(self.rows, cols.len())?;
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                if self.get(i, j) {
                    out.set(i, jj, true);
                }
            }
        }
        let labels = cols.iter().map(|&j| self.col_labels[j]).collect();
        Ok(out.with_labels(self.row_labels.clone(), labels))
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vector(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination with deterministic pivoting: columns are
    /// scanned left to right and each pivot is the lowest-index unused row
    /// holding a one in that column.
    pub fn rank(&self) -> RankResult {
        let mut m = self.clone();
        let mut used = vec![false; m.rows];
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        for c in 0..m.cols {
            let (w, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (0..m.rows).find(|&r| !used[r] && m.bits[r * m.stride + w] & mask != 0)
            else {
                continue;
            };
            used[p] = true;
            pivot_cols.push(c);
            pivot_rows.push(p);
            let pivot: Vec<u64> = m.bits[p * m.stride + w..(p + 1) * m.stride].to_vec();
            for r in 0..m.rows {
                if r != p && m.bits[r * m.stride + w] & mask != 0 {
                    let row = &mut m.bits[r * m.stride + w..(r + 1) * m.stride];
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
        }
        RankResult {
            rank: pivot_cols.len(),
            pivot_cols,
            pivot_rows,
            reduced: m,
        }
    }

    /// Span of the columns, for incremental membership and rank queries.
    pub fn column_space(&self) -> ColumnSpace {
        let mut space = ColumnSpace::new(self.rows);
        let t = self.transpose().expect("transpose has the same size");
        for j in 0..self.cols {
            space.insert(&t.row(j));
        }
        space
    }

    /// Rank of `self` with `extra` adjoined as additional columns.
    pub fn rank_with_augmentation(&self, extra: &[BitVector]) -> Result<usize> {
        let mut space = self.column_space();
        for v in extra {
            if v.len() != self.rows {
                return Err(Error::Dimension {
                    expected: self.rows,
                    actual: v.len(),
                });
            }
            space.insert(v);
        }
        Ok(space.rank())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RankResult {
    pub rank: usize,
    /// Columns holding a pivot, in scan order. They form the leftmost
    /// column basis.
    pub pivot_cols: Vec<usize>,
    /// Row chosen for each pivot column.
    pub pivot_rows: Vec<usize>,
    pub reduced: Gf2Matrix,
}

/// A subspace of GF(2)^dim kept in reduced echelon form: each basis vector
/// owns one pivot coordinate that no other basis vector touches.
#[derive(Clone, Debug)]
pub struct ColumnSpace {
    dim: usize,
    basis: Vec<BitVector>,
    owner: Vec<Option<usize>>,
}

impl ColumnSpace {
    pub fn new(dim: usize) -> Self {
        ColumnSpace {
            dim,
            basis: Vec::new(),
            owner: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `v` minus its projection on the span; zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.dim);
        let mut r = v.clone();
        for i in v.ones() {
            if let Some(b) = self.owner[i] {
                r.xor_assign(&self.basis[b]);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns the new pivot coordinate, or `None`
    /// when `v` was already in the span.
    pub fn insert(&mut self, v: &BitVector) -> Option<usize> {
        let r = self.reduce(v);
        let p = r.first_one()?;
        for b in self.basis.iter_mut() {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        self.owner[p] = Some(self.basis.len());
        self.basis.push(r);
        Some(p)
    }

    /// The basis vector owning coordinate `pivot`, if any.
    pub fn basis_vector(&self, pivot: usize) -> Option<&BitVector> {
        self.owner
            .get(pivot)
            .copied()
            .flatten()
            .map(|b| &self.basis[b])
    }

    /// Pivot coordinates, one per basis vector, in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = vec![0; self.basis.len()];
        for (coord, owner) in self.owner.iter().enumerate() {
            if let Some(b) = owner {
                p[*b] = coord;
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let r = Gf2Matrix::identity(5).unwrap().rank();
        assert_eq!(r.rank, 5);
        assert_eq!(r.pivot_cols, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn dependent_column_is_skipped() {
        // third column is the sum of the first two
        let m =
            Gf2Matrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let r = m.rank();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 3]);
    }

    #[test]
    fn lowest_unused_row_is_pivot() {
        let m = Gf2Matrix::from_rows(&[vec![0, 1], vec![1, 1], vec![1, 0]]).unwrap();
        let r = m.rank();
        assert_eq!(r.pivot_rows, vec![1, 0]);
    }

    #[test]
    fn wide_matrix_crosses_word_boundaries() {
        let cols = 200;
        let mut m = Gf2Matrix::zeros(3, cols).unwrap();
        m.set(0, 70, true);
        m.set(1, 70, true);
        m.set(1, 150, true);
        m.set(2, 150, true);
        m.set(2, 199, true);
        assert_eq!(m.rank().rank, 3);
        assert_eq!(m.rank().pivot_cols, vec![70, 150, 199]);
    }

    #[test]
    fn multiply_and_transpose() {
        let a = Gf2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let at = a.transpose().unwrap();
        let p = a.mul(&at).unwrap();
        assert_eq!(p, Gf2Matrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn augmentation() {
        let m = Gf2Matrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let inside = BitVector::from_indices(3, [0, 2]);
        let outside = BitVector::from_indices(3, [0]);
        assert_eq!(m.rank_with_augmentation(&[inside]).unwrap(), 2);
        assert_eq!(
            m.rank_with_augmentation(std::slice::from_ref(&outside))
                .unwrap(),
            3
        );
        assert!(m.rank_with_augmentation(&[BitVector::zeros(4)]).is_err());
    }

    #[test]
    fn column_space_stays_reduced() {
        let mut s = ColumnSpace::new(4);
        assert_eq!(s.insert(&BitVector::from_indices(4, [1, 2])), Some(1));
        assert_eq!(s.insert(&BitVector::from_indices(4, [1, 3])), Some(2));
        assert_eq!(s.insert(&BitVector::from_indices(4, [2, 3])), None);
        assert!(s.contains(&BitVector::from_indices(4, [2, 3])));
        assert_eq!(s.pivots(), vec![1, 2]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn bitvector_ones_and_first() {
        let v = BitVector::from_indices(130, [3, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.count_ones(), 3);
        assert!(BitVector::zeros(10).first_one().is_none());
    }

    #[test]
    fn oversize_matrix_is_refused() {
        assert!(matches!(
            Gf2Matrix::zeros(1 << 20, 1 << 20),
            Err(Error::MatrixTooLarge { .. })
        ));
    }
}
