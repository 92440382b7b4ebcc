//! Sparse exact vectors, incremental echelon bases and block-split kernels.

use std::collections::{BTreeMap, HashMap};

use super::matrix::RatMatrix;
use super::rational::Rational;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c*b` for sorted sparse vectors.
pub fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Semi-reduced row echelon basis of a growing subspace.
///
/// Each stored row has leading coefficient 1 at its pivot. When tracking is
/// enabled, every row also records its expression as a combination of the
/// inserted vectors, so coordinates with respect to the inserted family can
/// be recovered.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
    transforms: Option<Vec<SparseVec>>,
    inserted: usize,
}

pub struct Reduction {
    pub remainder: SparseVec,
    /// Coefficients `c_r` with `v = sum_r c_r row_r + remainder`.
    pub used: Vec<(usize, Rational)>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_tracking() -> Self {
        Self {
            transforms: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        while let Some((&col, val)) = work.range(cursor..).next() {
            cursor = col + 1;
            let Some(&r) = self.pivot_row.get(&col) else {
                continue;
            };
            let c = val.clone();
            for (j, x) in &self.rows[r] {
                let e = work.entry(*j).or_insert(Rational::ZERO);
                *e -= &(&c * x);
                if e.is_zero() {
                    work.remove(j);
                }
            }
            used.push((r, c));
        }
        Reduction {
            remainder: work.into_iter().collect(),
            used,
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            return false;
        }
        let lead = red.remainder[0].1.recip();
        let row = scale(&red.remainder, &lead);
        if let Some(ts) = &mut self.transforms {
            // row = lead * (e_idx - sum c_r T_r)
            let mut t: SparseVec = vec![(idx, Rational::ONE)];
            for (r, c) in &red.used {
                t = axpy(&t, &-c, &ts[*r]);
            }
            ts.push(scale(&t, &lead));
        }
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Coordinates of `v` in terms of the inserted family, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let ts = self
            .transforms
            .as_ref()
            .expect("coordinate tracking disabled");
        let red = self.reduce(v);
        if !red.remainder.is_empty() {
            return None;
        }
        let mut out = SparseVec::new();
        for (r, c) in &red.used {
            out = axpy(&out, c, &ts[*r]);
        }
        Some(out)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups column indices into blocks that share no row index.
pub fn column_blocks(columns: &[SparseVec]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(columns.len());
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, _) in col {
            match owner.get(i) {
                Some(&o) => uf.union(o, j),
                None => {
                    owner.insert(*i, j);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..columns.len() {
        let r = uf.find(j);
        groups.entry(r).or_default().push(j);
    }
    groups.into_values().collect()
}

/// Kernel of the matrix whose columns are given sparsely.
///
/// The matrix is split into independent diagonal blocks first; each block is
/// reduced densely. The result is the union of the block kernels, each vector
/// indexed by column.
pub fn sparse_nullspace(columns: &[SparseVec]) -> Vec<SparseVec> {
    sparse_nullspace_keyed(columns)
        .into_iter()
        .map(|(_, v)| v)
        .collect()
}

/// As [`sparse_nullspace`], pairing each kernel vector with its free column
/// (where it is 1 while every other kernel vector is 0).
pub fn sparse_nullspace_keyed(columns: &[SparseVec]) -> Vec<(usize, SparseVec)> {
    let mut out = Vec::new();
    for block in column_blocks(columns) {
        let mut row_ids: Vec<usize> = block
            .iter()
            .flat_map(|&j| columns[j].iter().map(|(i, _)| *i))
            .collect();
        row_ids.sort_unstable();
        row_ids.dedup();
        if row_ids.is_empty() {
            for &j in &block {
                out.push((j, vec![(j, Rational::ONE)]));
            }
            continue;
        }
        let local: HashMap<usize, usize> =
            row_ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = RatMatrix::zeros(row_ids.len(), block.len());
        for (c, &j) in block.iter().enumerate() {
            for (i, x) in &columns[j] {
                m[(local[i], c)] = x.clone();
            }
        }
        for (free, v) in m.nullspace_keyed() {
            out.push((
                block[free],
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (block[c], x))
                    .collect(),
            ));
        }
    }
    out.sort_by_key(|(free, _)| *free);
    out
}

/// Rank of a sparse column family, via the same block split.
pub fn sparse_rank(columns: &[SparseVec]) -> usize {
    columns.len() - sparse_nullspace(columns).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = SparseEchelon::with_tracking();
        let b0 = vec![(0, q(1)), (1, q(1))];
        let b1 = vec![(1, q(1)), (2, q(2))];
        assert!(e.insert(&b0));
        assert!(e.insert(&b1));
        let v = axpy(&scale(&b0, &q(3)), &q(-2), &b1);
        let c = e.coordinates(&v).unwrap();
        assert_eq!(c, vec![(0, q(3)), (1, q(-2))]);
        assert!(e.coordinates(&vec![(2, q(1))]).is_none());
        assert!(!e.insert(&v));
    }

    #[test]
    fn nullspace_block_split_matches_dense() {
        // block-diagonal matrix [[1,2,0],[0,0,1]] plus a zero column
        let cols = vec![vec![(0, q(1))], vec![(0, q(2))], vec![(1, q(1))], vec![]];
        let ns = sparse_nullspace(&cols);
        assert_eq!(ns.len(), 2);
        let dense = RatMatrix::from_i64(&[&[1, 2, 0, 0], &[0, 0, 1, 0]]);
        for v in &ns {
            let d = sparse_to_dense(v, 4);
            assert!(dense.mul_vec(&d).iter().all(Rational::is_zero));
        }
        assert_eq!(sparse_rank(&cols), 2);
    }
}
