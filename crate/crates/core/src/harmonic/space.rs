use std::collections::HashMap;
use std::sync::Arc;

use crate::exactmath::{Rational, SparseEchelon, SparseVec};
use crate::superalgebra::{BlockId, SuperMonomial, SuperPolynomial, VarSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("basis vector {0} is linearly dependent on the previous ones")]
    Dependent(usize),
}

#[derive(Debug, Clone)]
enum Solver {
    /// `basis[i]` has coefficient 1 at `keys[i]` and 0 at every other key.
    Keyed(HashMap<SuperMonomial, usize>),
    Echelon {
        index: HashMap<SuperMonomial, usize>,
        echelon: SparseEchelon,
    },
}

/// An explicit, linearly independent family of superpolynomials with exact
/// coordinates.
#[derive(Debug, Clone)]
pub struct GradedSpace {
    spec: Arc<VarSpec>,
    degree: Option<usize>,
    basis: Vec<SuperPolynomial>,
    solver: Solver,
}

impl GradedSpace {
    /// The span of `basis`, which must be linearly independent.
    pub fn from_basis(
        spec: &Arc<VarSpec>,
        degree: Option<usize>,
        basis: Vec<SuperPolynomial>,
    ) -> Result<Self, SpaceError> {
        let mut index = HashMap::new();
        let mut echelon = SparseEchelon::with_tracking();
        for (i, b) in basis.iter().enumerate() {
            let v = to_sparse(b, &mut index);
            if !echelon.insert(&v) {
                return Err(SpaceError::Dependent(i));
            }
        }
        Ok(Self {
            spec: spec.clone(),
            degree,
            basis,
            solver: Solver::Echelon { index, echelon },
        })
    }

    /// The span of `family`, keeping a maximal independent subfamily.
    pub fn spanned_by(
        spec: &Arc<VarSpec>,
        degree: Option<usize>,
        family: Vec<SuperPolynomial>,
    ) -> Self {
        let mut index = HashMap::new();
        let mut echelon = SparseEchelon::new();
        let basis: Vec<SuperPolynomial> = family
            .into_iter()
            .filter(|b| {
                let v = to_sparse(b, &mut index);
                echelon.insert(&v)
            })
            .collect();
        Self::from_basis(spec, degree, basis).expect("independent by construction")
    }

    /// Trusted constructor: `basis[i]` is 1 at `keys[i]` and 0 at every other key.
    pub(crate) fn keyed(
        spec: &Arc<VarSpec>,
        degree: Option<usize>,
        basis: Vec<SuperPolynomial>,
        keys: Vec<SuperMonomial>,
    ) -> Self {
        debug_assert_eq!(basis.len(), keys.len());
        let map = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        Self {
            spec: spec.clone(),
            degree,
            basis,
            solver: Solver::Keyed(map),
        }
    }

    /// The span of distinct monomials.
    pub fn from_monomials(
        spec: &Arc<VarSpec>,
        degree: Option<usize>,
        monos: Vec<SuperMonomial>,
    ) -> Self {
        let basis = monos
            .iter()
            .map(|m| SuperPolynomial::from_term(spec, m.clone(), Rational::ONE))
            .collect();
        Self::keyed(spec, degree, basis, monos)
    }

    pub fn spec(&self) -> &Arc<VarSpec> {
        &self.spec
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SuperPolynomial] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<SuperPolynomial> {
        self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SuperPolynomial) -> Option<SparseVec> {
        match &self.solver {
            Solver::Keyed(keys) => {
                let mut coords: SparseVec = v
                    .terms()
                    .filter_map(|(m, c)| keys.get(m).map(|&i| (i, c.clone())))
                    .collect();
                coords.sort_by_key(|(i, _)| *i);
                let mut rest = v.clone();
                for (i, c) in &coords {
                    rest.add_scaled(&-c, &self.basis[*i]);
                }
                rest.is_zero().then_some(coords)
            }
            Solver::Echelon { index, echelon } => {
                let mut sv = Vec::with_capacity(v.len());
                for (m, c) in v.terms() {
                    sv.push((*index.get(m)?, c.clone()));
                }
                sv.sort_by_key(|(i, _)| *i);
                echelon.coordinates(&sv)
            }
        }
    }

    pub fn contains(&self, v: &SuperPolynomial) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn combine(&self, coords: &SparseVec) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.spec);
        for (i, c) in coords {
            out.add_scaled(c, &self.basis[*i]);
        }
        out
    }

    pub fn combine_dense(&self, coords: &[Rational]) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.spec);
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(c, b);
        }
        out
    }

    /// Expresses a family of vectors over a shared monomial index, for rank
    /// and intersection computations.
    pub fn monomial_vectors(family: &[SuperPolynomial]) -> (Vec<SparseVec>, usize) {
        let mut index = HashMap::new();
        let vecs: Vec<SparseVec> = family.iter().map(|p| to_sparse(p, &mut index)).collect();
        (vecs, index.len())
    }
}

/// Sparse coefficient vector over a growing monomial index.
fn to_sparse(p: &SuperPolynomial, index: &mut HashMap<SuperMonomial, usize>) -> SparseVec {
    let mut v = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let next = index.len();
        let i = *index.entry(m.clone()).or_insert(next);
        v.push((i, c.clone()));
    }
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Monomials of degree `k` in the variables of `block`, ordered by
/// fermionic degree, then fermionic mask, then bosonic exponents descending.
pub fn monomials_of_degree(spec: &VarSpec, block: BlockId, k: usize) -> Vec<SuperMonomial> {
    let b = spec.block(block);
    let bos: Vec<usize> = b.bos_range().collect();
    let ferm: Vec<usize> = b.ferm_range().collect();
    let mut out = Vec::new();
    for fdeg in 0..=k.min(ferm.len()) {
        let mut masks = Vec::new();
        subsets(&ferm, fdeg, 0, 0, &mut masks);
        masks.sort_unstable();
        let mut exps = Vec::new();
        compositions(bos.len(), k - fdeg, &mut vec![0u8; bos.len()], 0, &mut exps);
        if bos.is_empty() && k - fdeg > 0 {
            continue;
        }
        for &mask in &masks {
            for e in &exps {
                let mut full = vec![0u8; spec.nbos()];
                for (slot, &i) in bos.iter().enumerate() {
                    full[i] = e[slot];
                }
                out.push(SuperMonomial::from_parts(&full, mask));
            }
        }
    }
    out
}

fn subsets(items: &[usize], size: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
    if size == 0 {
        out.push(mask);
        return;
    }
    for i in start..items.len() {
        if items.len() - i < size {
            break;
        }
        subsets(items, size - 1, i + 1, mask | 1u64 << items[i], out);
    }
}

/// All exponent vectors of length `len` summing to `total`, first entry largest first.
fn compositions(len: usize, total: usize, cur: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == len - 1 {
        cur[pos] = total as u8;
        out.push(cur.clone());
        return;
    }
    for e in (0..=total).rev() {
        cur[pos] = e as u8;
        compositions(len, total - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::parse;

    #[test]
    fn monomial_counts() {
        let s = VarSpec::superspace(3, 1);
        assert_eq!(monomials_of_degree(&s, BlockId(0), 2).len(), 13);
        let s = VarSpec::superspace(0, 1);
        assert_eq!(monomials_of_degree(&s, BlockId(0), 2).len(), 1);
        assert_eq!(monomials_of_degree(&s, BlockId(0), 3).len(), 0);
        let s = VarSpec::superspace(1, 0);
        assert_eq!(monomials_of_degree(&s, BlockId(0), 3).len(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Arc::new(VarSpec::superspace(2, 1));
        let b = vec![
            parse(&s, "x1 + x2").unwrap(),
            parse(&s, "x2 - e1*e2").unwrap(),
        ];
        let sp = GradedSpace::from_basis(&s, None, b).unwrap();
        let v = parse(&s, "2*x1 - x2 + 3*e1*e2").unwrap();
        let c = sp.coordinates(&v).unwrap();
        assert_eq!(sp.combine(&c), v);
        assert!(sp.coordinates(&parse(&s, "x1").unwrap()).is_none());
        let dep = vec![parse(&s, "x1").unwrap(), parse(&s, "2*x1").unwrap()];
        assert_eq!(
            GradedSpace::from_basis(&s, None, dep).unwrap_err(),
            SpaceError::Dependent(1)
        );
    }
}
