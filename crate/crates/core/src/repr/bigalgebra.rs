use std::collections::HashMap;

use serde::Serialize;

use crate::exactmath::{Rational, SparseEchelon, SparseVec};
use crate::harmonic::{monomials_of_degree, pk};
use crate::operators::{first_disagreement, LinearOp, Superspace};
use crate::superalgebra::{Parity, SuperMonomial, SuperPolynomial};

/// How the bosonic linear operators act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    /// Plain multiplication and differentiation.
    Literal,
    /// Bosonic `X_i` and `d_i` composed with the Klein operator
    /// `K = (-1)^{fermionic degree}`.
    Klein,
}

#[derive(Debug, Clone, Serialize)]
pub struct BigAlgebraReport {
    pub realization: Realization,
    pub m: usize,
    pub n: usize,
    pub max_degree: usize,
    pub generators: usize,
    pub rank: usize,
    /// `dim osp(4n+1|2m)`.
    pub expected_dim: usize,
    pub brackets_checked: usize,
    pub brackets_outside: usize,
    pub first_failure: Option<String>,
    pub centralizer_ok: bool,
}

impl BigAlgebraReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_dim && self.brackets_outside == 0 && self.centralizer_ok
    }
}

/// The quadratic and linear operators `X_i`, `d_i`, `X_i X_j`, `d_i d_j` and
/// `X_i d_j + (-1)^[i] δ_ij / 2`, with the parity of `X_i` and `d_i` flipped
/// relative to the variable. Products are compositions of the linear ones.
pub fn big_algebra_generators(ss: &Superspace, realization: Realization) -> Vec<LinearOp> {
    let d = ss.dim();
    let vars = ss.vars().to_vec();
    let par = |i: usize| Parity::from_odd(!ss.is_odd(i));
    let twist = |op: LinearOp, i: usize| {
        if realization == Realization::Klein && !ss.is_odd(i) {
            let (name, shift, p) = (op.name().to_string(), op.degree_shift(), op.parity());
            LinearOp::new(name, shift, p, move |f| klein(&op.apply(f)))
        } else {
            op
        }
    };
    let x: Vec<LinearOp> = (0..d)
        .map(|i| {
            let v = vars[i];
            let op = LinearOp::new(format!("X{}", i + 1), 1, par(i), move |f| f.mul_var(v));
            twist(op, i)
        })
        .collect();
    let dv: Vec<LinearOp> = (0..d)
        .map(|i| {
            let v = vars[i];
            let op = LinearOp::new(format!("D{}", i + 1), -1, par(i), move |f| f.deriv(v));
            twist(op, i)
        })
        .collect();
    let regrade = |op: LinearOp, name: String, p: Parity| {
        LinearOp::new(name, op.degree_shift(), p, move |f| op.apply(f))
    };
    let mut out = Vec::new();
    out.extend(x.iter().cloned());
    out.extend(dv.iter().cloned());
    for i in 0..d {
        for j in i..d {
            if i == j && ss.is_odd(i) {
                continue;
            }
            let p = par(i) + par(j);
            out.push(regrade(
                x[i].compose(&x[j]),
                format!("X{}X{}", i + 1, j + 1),
                p,
            ));
            out.push(regrade(
                dv[i].compose(&dv[j]),
                format!("D{}D{}", i + 1, j + 1),
                p,
            ));
        }
    }
    for (i, xi) in x.iter().enumerate() {
        for (j, dj) in dv.iter().enumerate() {
            let mut op = xi.compose(dj);
            if i == j {
                let half = if ss.is_odd(i) {
                    Rational::new(-1, 2)
                } else {
                    Rational::new(1, 2)
                };
                op = op.shifted(half);
            }
            out.push(regrade(
                op,
                format!("X{}D{}", i + 1, j + 1),
                par(i) + par(j),
            ));
        }
    }
    out
}

/// `(-1)^{fermionic degree}` applied termwise.
fn klein(f: &SuperPolynomial) -> SuperPolynomial {
    SuperPolynomial::from_terms(
        f.spec(),
        f.terms().map(|(m, c)| {
            (
                m.clone(),
                if m.ferm_degree() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                },
            )
        }),
    )
}

/// Images of an operator on every monomial of degree at most `d`, flattened
/// into one sparse vector.
struct Flattener {
    domain: Vec<SuperPolynomial>,
    index: HashMap<(usize, SuperMonomial), usize>,
}

impl Flattener {
    fn flatten(&mut self, op: &LinearOp) -> SparseVec {
        let mut v = SparseVec::new();
        for (j, b) in self.domain.iter().enumerate() {
            for (mono, c) in op.apply(b).into_terms() {
                let next = self.index.len();
                let i = *self.index.entry((j, mono)).or_insert(next);
                v.push((i, c));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

/// Checks that the span of [`big_algebra_generators`] on `P_{<=d}` is closed
/// under supercommutators and has dimension `dim osp(4n+1|2m)`.
pub fn big_algebra_closure(
    m: usize,
    n: usize,
    d: usize,
    realization: Realization,
) -> BigAlgebraReport {
    let ss = Superspace::new(m, n);
    let domain = (0..=d)
        .flat_map(|k| monomials_of_degree(ss.spec(), ss.block(), k))
        .map(|mono| SuperPolynomial::from_term(ss.spec(), mono, Rational::ONE))
        .collect();
    let mut flat = Flattener {
        domain,
        index: HashMap::new(),
    };
    let gens = big_algebra_generators(&ss, realization);
    let mut ech = SparseEchelon::new();
    for g in &gens {
        ech.insert(&flat.flatten(g));
    }
    let mut checked = 0;
    let mut outside = 0;
    let mut first_failure = None;
    for a in 0..gens.len() {
        for b in a..gens.len() {
            let br = gens[a].supercommutator(&gens[b]);
            checked += 1;
            if !ech.contains(&flat.flatten(&br)) {
                outside += 1;
                first_failure
                    .get_or_insert_with(|| format!("[{}, {}]", gens[a].name(), gens[b].name()));
            }
        }
    }
    let (big, small) = (4 * n + 1, m);
    BigAlgebraReport {
        realization,
        m,
        n,
        max_degree: d,
        generators: gens.len(),
        rank: ech.rank(),
        expected_dim: big * (big - 1) / 2 + small * (2 * small + 1) + big * 2 * small,
        brackets_checked: checked,
        brackets_outside: outside,
        first_failure,
        centralizer_ok: centralizer_check(&ss, d),
    }
}

/// `[L_ij, ∇²] = [L_ij, R²] = [L_ij, E + M/2] = 0` on `P_k`, `k <= d`.
pub fn centralizer_check(ss: &Superspace, d: usize) -> bool {
    let h = ss.euler().shifted(Rational::new(ss.superdim(), 2));
    let others = [ss.laplacian(), ss.r_squared(), h];
    (0..=d).all(|k| {
        let space = pk(ss, k);
        ss.osp_generators().iter().all(|(_, g)| {
            others.iter().all(|o| {
                let c = g.supercommutator(o);
                first_disagreement(&c, &LinearOp::zero(c.degree_shift(), c.parity()), &space)
                    .is_none()
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_realization_closes() {
        for (m, n, dim) in [(1, 1, 23), (2, 1, 40)] {
            let r = big_algebra_closure(m, n, 3, Realization::Klein);
            assert_eq!(r.expected_dim, dim);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn literal_realization_leaks() {
        let r = big_algebra_closure(1, 1, 3, Realization::Literal);
        assert_eq!(r.rank, 23);
        assert!(r.brackets_outside > 0);
    }
}
