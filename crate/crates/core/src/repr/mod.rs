//! Representation theory of `osp(m|2n)` on polynomial spaces: invariant
//! closures, irreducibility verdicts, the reducible window, dimensions of the
//! simple modules `L_(k,0,...,0)`, branching and the `osp(4n+1|2m)` closure.

mod bigalgebra;
mod branching;
mod irreducible;
mod window;

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactmath::modp::{self, ModpEchelon, PRIME};
use crate::exactmath::{Rational, SparseEchelon, SparseVec};
use crate::harmonic::{hk, GradedSpace};
use crate::operators::{sparse_matrix_of, LinearOp, OpError, Superspace};
use crate::superalgebra::Parity;

pub use bigalgebra::{
    big_algebra_closure, big_algebra_generators, centralizer_check, BigAlgebraReport, Realization,
};
pub use branching::{branch_levels, dim_lk, dim_lk_quotient, BranchVerdict, Branching};
pub use irreducible::{
    check_irreducible, component_graph, irreducibility_predicate, ComponentGraph,
    IrreducibilityReport, Verdict, Witness, LITERAL_LIMIT,
};
pub use window::{
    gram_skew_check, in_window, maximality_and_indecomposability, quotient_module,
    window_submodule, MaximalityReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReprError {
    #[error("m = 0 is not supported here")]
    ZeroM,
    #[error("need m >= {min}, got m = {m}")]
    SmallM { m: usize, min: usize },
    #[error("(m, n, k) = ({m}, {n}, {k}) is outside the reducible window")]
    OutsideWindow { m: usize, n: usize, k: usize },
    #[error("generator {generator} does not preserve the space (basis vector {index})")]
    NotInvariant { generator: String, index: usize },
    #[error("check failed: {0}")]
    Failed(String),
}

impl From<OpError> for ReprError {
    fn from(e: OpError) -> Self {
        match e {
            OpError::NotInTarget { index } => ReprError::NotInvariant {
                generator: "?".into(),
                index,
            },
            other => ReprError::Failed(other.to_string()),
        }
    }
}

/// One generator acting on a realization, stored by columns.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    pub name: String,
    pub parity: Parity,
    pub columns: Vec<SparseVec>,
}

/// A finite-dimensional module given by exact generator matrices on the
/// coordinates of a graded space.
#[derive(Debug, Clone)]
pub struct ModuleRealization {
    space: GradedSpace,
    generators: Vec<GeneratorMatrix>,
}

impl ModuleRealization {
    /// Matrices of `ops` on `space`; fails if some operator leaves the space.
    pub fn from_ops(space: GradedSpace, ops: &[LinearOp]) -> Result<Self, ReprError> {
        let generators = ops
            .iter()
            .map(|op| {
                let columns = sparse_matrix_of(op, &space, &space).map_err(|e| match e {
                    OpError::NotInTarget { index } => ReprError::NotInvariant {
                        generator: op.name().to_string(),
                        index,
                    },
                    other => ReprError::Failed(other.to_string()),
                })?;
                Ok(GeneratorMatrix {
                    name: op.name().to_string(),
                    parity: op.parity(),
                    columns,
                })
            })
            .collect::<Result<_, ReprError>>()?;
        Ok(Self { space, generators })
    }

    pub(crate) fn from_matrices(space: GradedSpace, generators: Vec<GeneratorMatrix>) -> Self {
        Self { space, generators }
    }

    /// `H_k` with the nonzero `osp(m|2n)` generators `L_ij`, `i <= j`.
    pub fn on_hk(ss: &Superspace, k: usize) -> Result<Self, ReprError> {
        let ops: Vec<LinearOp> = ss.osp_generators().into_iter().map(|(_, g)| g).collect();
        Self::from_ops(hk(ss, k), &ops)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn generators(&self) -> &[GeneratorMatrix] {
        &self.generators
    }

    /// Image of the coordinate vector `v` under generator `g`.
    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        let cols = &self.generators[g].columns;
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &cols[*j] {
                let e = acc.entry(*i).or_insert(Rational::ZERO);
                *e += &(x * a);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Residues of the generator matrices modulo [`PRIME`], or `None` if a
    /// denominator is divisible by it.
    pub fn to_modp(&self) -> Option<ModpRealization> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut cols = Vec::with_capacity(g.columns.len());
            for col in &g.columns {
                let mut c = Vec::with_capacity(col.len());
                for (i, x) in col {
                    c.push((*i, x.to_mod(PRIME)?));
                }
                cols.push(c);
            }
            gens.push(cols);
        }
        Some(ModpRealization {
            dim: self.dim(),
            gens,
        })
    }
}

/// Generator matrices reduced modulo [`PRIME`].
#[derive(Debug, Clone)]
pub struct ModpRealization {
    dim: usize,
    gens: Vec<Vec<Vec<(usize, u64)>>>,
}

impl ModpRealization {
    fn apply(&self, g: usize, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, a) in &self.gens[g][j] {
                out[i] = modp::add(out[i], modp::mul(x, a, PRIME), PRIME);
            }
        }
        out
    }

    /// Rank of the closure of `seed` modulo the prime. This never exceeds the
    /// exact rank, so a full result proves the exact closure is the whole space.
    pub fn closure_rank(&self, seed: &SparseVec) -> Option<usize> {
        let mut v = vec![0u64; self.dim];
        for (i, x) in seed {
            v[*i] = x.to_mod(PRIME)?;
        }
        let mut ech = ModpEchelon::new(self.dim);
        let mut queue = VecDeque::new();
        if ech.insert(v.clone()) {
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            if ech.is_full() {
                break;
            }
            for g in 0..self.gens.len() {
                let w = self.apply(g, &v);
                if ech.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        Some(ech.rank())
    }
}

/// The smallest generator-invariant subspace containing some seeds.
#[derive(Debug, Clone, Serialize)]
pub struct SubmoduleReport {
    #[serde(skip)]
    pub seeds: Vec<SparseVec>,
    #[serde(skip)]
    pub basis: Vec<SparseVec>,
    pub dim: usize,
    pub ambient_dim: usize,
    pub is_proper: bool,
    pub is_whole: bool,
}

impl SubmoduleReport {
    /// Whether every coordinate vector in `vs` lies in the closure.
    pub fn contains_all(&self, vs: &[SparseVec]) -> bool {
        let mut ech = SparseEchelon::new();
        for b in &self.basis {
            ech.insert(b);
        }
        vs.iter().all(|v| ech.contains(v))
    }
}

/// Exact invariant closure by breadth-first application of every generator
/// to every new basis vector.
pub fn invariant_closure(real: &ModuleRealization, seeds: &[SparseVec]) -> SubmoduleReport {
    let total = real.dim();
    let mut ech = SparseEchelon::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push_back(ech.rows().last().expect("just inserted").clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if ech.rank() == total {
            break;
        }
        for g in 0..real.generators.len() {
            let w = real.apply(g, &v);
            if !w.is_empty() && ech.insert(&w) {
                queue.push_back(ech.rows().last().expect("just inserted").clone());
            }
        }
    }
    let dim = ech.rank();
    SubmoduleReport {
        seeds: seeds.to_vec(),
        basis: ech.rows().to_vec(),
        dim,
        ambient_dim: total,
        is_proper: dim < total,
        is_whole: dim == total,
    }
}

/// Unit coordinate vectors followed by `count` pseudo-random rational vectors
/// with small entries, reproducible from `seed`.
pub fn sample_vectors(dim: usize, count: usize, seed: u64) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = (0..dim).map(|i| vec![(i, Rational::ONE)]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let mut v = SparseVec::new();
        for i in 0..dim {
            let num: i64 = rng.gen_range(-5..=5);
            let den: i64 = rng.gen_range(1..=3);
            if num != 0 {
                v.push((i, Rational::new(num, den)));
            }
        }
        if v.is_empty() && dim > 0 {
            v.push((0, Rational::ONE));
        }
        out.push(v);
    }
    out
}

/// Number of pseudo-random vectors added to the basis vectors when sampling.
pub const RANDOM_SAMPLES: usize = 20;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::SuperPolynomial;

    #[test]
    fn zero_seed_closes_to_zero() {
        let ss = Superspace::new(2, 1);
        let real = ModuleRealization::on_hk(&ss, 2).unwrap();
        let rep = invariant_closure(&real, &[SparseVec::new()]);
        assert_eq!(rep.dim, 0);
        assert!(rep.is_proper);
    }

    #[test]
    fn closure_of_r_squared_is_one_dimensional() {
        let ss = Superspace::new(2, 1);
        let real = ModuleRealization::on_hk(&ss, 2).unwrap();
        let r2: SuperPolynomial = ss.r_squared_poly();
        let c = real
            .space()
            .coordinates(&r2)
            .expect("R^2 is harmonic when M = 0");
        let rep = invariant_closure(&real, &[c]);
        assert_eq!(rep.dim, 1);
    }

    #[test]
    fn any_seed_generates_when_irreducible() {
        let ss = Superspace::new(3, 1);
        let real = ModuleRealization::on_hk(&ss, 2).unwrap();
        let mp = real.to_modp().unwrap();
        for s in sample_vectors(real.dim(), 3, 7) {
            assert!(invariant_closure(&real, std::slice::from_ref(&s)).is_whole);
            assert_eq!(mp.closure_rank(&s), Some(real.dim()));
        }
    }
}
