//! Dense exact matrices, row reduction and subspace operations.

use std::fmt;

use super::rational::Rational;
use super::MathError;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn from_cols(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&-Rational::ONE))
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.nullspace_keyed().into_iter().map(|(_, v)| v).collect()
    }

    /// Kernel basis paired with free columns: the vector for free column `f`
    /// is 1 at `f` and 0 at every other free column.
    pub fn nullspace_keyed(&self) -> Vec<(usize, Vec<Rational>)> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::ZERO; self.cols];
                v[free] = Rational::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, free)];
                }
                (free, v)
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<RatMatrix, MathError> {
        if self.rows != self.cols {
            return Err(MathError::NotSquare);
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::ONE;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MathError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn rows_matrix(vectors: &[Vec<Rational>], len: usize) -> RatMatrix {
    if vectors.is_empty() {
        return RatMatrix::zeros(0, len);
    }
    RatMatrix::from_rows(vectors.to_vec())
}

/// Echelon basis of span(a) + span(b).
pub fn subspace_sum(a: &[Vec<Rational>], b: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    let all: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    let (r, pivots) = rows_matrix(&all, len).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Basis of span(a) ∩ span(b), via the kernel of [A | -B].
pub fn subspace_intersect(
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
    len: usize,
) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Rational>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let ker = RatMatrix::from_cols(&cols, len).nullspace();
    let images: Vec<Vec<Rational>> = ker
        .iter()
        .map(|coef| {
            let mut v = vec![Rational::ZERO; len];
            for (c, basis) in coef.iter().zip(a) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(basis) {
                    *x += &(c * y);
                }
            }
            v
        })
        .collect();
    subspace_sum(&images, &[], len)
}

/// Membership test by rank comparison.
pub fn contains(v: &[Rational], basis: &[Vec<Rational>]) -> bool {
    let len = v.len();
    let r0 = rows_matrix(basis, len).rank();
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rows_matrix(&ext, len).rank() == r0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    /// Determinant by cofactor expansion; independent of elimination.
    fn det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::ONE;
        }
        let mut acc = Rational::ZERO;
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Largest k with a nonzero k×k minor.
    fn minor_rank(m: &RatMatrix) -> usize {
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<Rational>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                        .collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn random_rank_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            // low-rank products make the check meaningful
            let inner = 1 + trial % 5;
            let a = RatMatrix::from_rows(
                (0..5)
                    .map(|_| (0..inner).map(|_| q(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let b = RatMatrix::from_rows(
                (0..inner)
                    .map(|_| (0..7).map(|_| q(rng.gen_range(-3..=3))).collect())
                    .collect(),
            );
            let m = a.mul(&b).unwrap();
            assert_eq!(m.rank(), minor_rank(&m));
        }
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(3).nullspace().is_empty());
        assert_eq!(RatMatrix::zeros(3, 3).nullspace().len(), 3);
        let ns = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn rank_nullity_and_idempotence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = RatMatrix::from_rows(
                (0..4)
                    .map(|_| (0..6).map(|_| q(rng.gen_range(-2..=2))).collect())
                    .collect(),
            );
            let (r, _) = m.rref();
            assert_eq!(m.rank() + m.nullspace().len(), m.cols());
            assert_eq!(r.rref().0, r);
            for v in m.nullspace() {
                assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn subspace_examples() {
        let e = |i: usize| {
            (0..3)
                .map(|j| if i == j { q(1) } else { q(0) })
                .collect::<Vec<_>>()
        };
        assert_eq!(subspace_sum(&[e(0)], &[e(1)], 3).len(), 2);
        let inter = subspace_intersect(&[e(0), e(1)], &[e(1), e(2)], 3);
        assert_eq!(inter, vec![e(1)]);
        let v: Vec<Rational> = vec![q(1), q(1), q(0)];
        assert!(contains(&v, &[e(0), e(1)]));
        assert!(!contains(&e(2), &[e(0), e(1)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}
