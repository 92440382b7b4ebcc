use serde::Serialize;

use super::{invariant_closure, sample_vectors, ModuleRealization, ReprError, RANDOM_SAMPLES};
use crate::harmonic::{
    bosonic_hk, component_labels, fermionic_hk, fkpq, in_minus_2n, projector, ComponentSplitter,
};
use crate::operators::Superspace;
use crate::superalgebra::SuperPolynomial;

/// Largest `dim H_k` for which literal seed closures are run alongside the
/// component graph.
pub const LITERAL_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Reducible,
    ZeroModule,
}

/// A seed whose closure is a proper nonzero submodule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub seed: String,
    pub closure_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub superdim: i64,
    pub dim: usize,
    pub predicate_irreducible: bool,
    /// Verdict of the component graph.
    pub verdict: Verdict,
    pub components: usize,
    /// Verdict of literal closures (basis vectors, pseudo-random vectors and
    /// component representatives), when `dim <= LITERAL_LIMIT`.
    pub closure_verdict: Option<Verdict>,
    pub seeds_checked: usize,
    pub witness: Option<Witness>,
}

impl IrreducibilityReport {
    /// Whether the verdicts agree with each other and with the predicate.
    /// The zero module carries no information and is accepted.
    pub fn matches_predicate(&self) -> bool {
        if self.closure_verdict.is_some_and(|v| v != self.verdict) {
            return false;
        }
        match self.verdict {
            Verdict::Irreducible => self.predicate_irreducible,
            Verdict::Reducible => !self.predicate_irreducible,
            Verdict::ZeroModule => true,
        }
    }
}

/// `H_k` is irreducible iff `M` is not in `-2N`, or `k > 2 - M`, or `k < 2 - M/2`.
pub fn irreducibility_predicate(m: usize, n: usize, k: usize) -> bool {
    let big_m = m as i64 - 2 * n as i64;
    let k = k as i64;
    !in_minus_2n(big_m) || k > 2 - big_m || 2 * k < 4 - big_m
}

pub fn check_irreducible(
    ss: &Superspace,
    k: usize,
    seed: u64,
) -> Result<IrreducibilityReport, ReprError> {
    if ss.m() == 0 {
        return Err(ReprError::ZeroM);
    }
    let predicate_irreducible = irreducibility_predicate(ss.m(), ss.n(), k);
    let dim = crate::harmonic::dim_hk_formula(ss.m(), ss.n(), k).expect("m > 0") as usize;
    let mut report = IrreducibilityReport {
        m: ss.m(),
        n: ss.n(),
        k,
        superdim: ss.superdim(),
        dim,
        predicate_irreducible,
        verdict: Verdict::ZeroModule,
        components: 0,
        closure_verdict: None,
        seeds_checked: 0,
        witness: None,
    };
    if dim == 0 {
        return Ok(report);
    }
    let graph = component_graph(ss, k)?;
    report.components = graph.labels.len();
    report.verdict = match unreachable_component(&graph.edges) {
        None => Verdict::Irreducible,
        Some(_) => Verdict::Reducible,
    };
    if dim > LITERAL_LIMIT {
        return Ok(report);
    }

    let real = ModuleRealization::on_hk(ss, k)?;
    let modp = real.to_modp();
    let mut seeds = sample_vectors(dim, RANDOM_SAMPLES, seed);
    let n_samples = seeds.len();
    for rep in &graph.representatives {
        seeds.push(
            real.space()
                .coordinates(rep)
                .expect("representatives are harmonic"),
        );
    }
    let mut closure_verdict = Verdict::Irreducible;
    for (i, s) in seeds.iter().enumerate() {
        report.seeds_checked += 1;
        if modp.as_ref().and_then(|mp| mp.closure_rank(s)) == Some(dim) {
            continue;
        }
        let closure = invariant_closure(&real, std::slice::from_ref(s));
        if !closure.is_proper || closure.dim == 0 {
            continue;
        }
        closure_verdict = Verdict::Reducible;
        if report
            .witness
            .as_ref()
            .is_some_and(|w| w.closure_dim <= closure.dim)
        {
            continue;
        }
        let seed = if i < dim {
            format!("basis vector {}", real.space().basis()[i])
        } else if i < n_samples {
            format!("pseudo-random vector {}", i - dim)
        } else {
            let (l, p, q) = graph.labels[i - n_samples];
            format!(
                "component ({l},{p},{q}) representative {}",
                graph.representatives[i - n_samples]
            )
        };
        report.witness = Some(Witness {
            seed,
            closure_dim: closure.dim,
        });
    }
    report.closure_verdict = Some(closure_verdict);
    Ok(report)
}

/// Nonzero pattern of the components of a vector of `H_k`.
type Splitter = Box<dyn Fn(&SuperPolynomial) -> Vec<bool>>;

/// Components of `H_k` and the odd generators linking them.
#[derive(Debug, Clone)]
pub struct ComponentGraph {
    pub labels: Vec<(usize, usize, usize)>,
    /// `f_{l,p,q} h_p h_q` with `h_p`, `h_q` the first basis vectors of the
    /// bosonic and fermionic harmonics.
    pub representatives: Vec<SuperPolynomial>,
    /// `edges[a][b]`: some odd generator maps component `a` to a vector with
    /// nonzero component `b`.
    pub edges: Vec<Vec<bool>>,
}

/// The component graph of `H_k`.
///
/// The components `f_{l,p,q} H_p^b ⊗ H_q^f` are irreducible over `Q` for the
/// even subalgebra `o(m) + sp(2n)` and pairwise non-isomorphic, so every
/// `osp(m|2n)` submodule is a sum of components. A sum is invariant iff it is
/// closed under the edges, and an edge `a -> b` exists iff `Q_b g c_a != 0`
/// for some odd generator `g`, because the odd generators span an
/// `o(m) + sp(2n)` module. Hence `H_k` is irreducible iff the graph is
/// strongly connected.
pub fn component_graph(ss: &Superspace, k: usize) -> Result<ComponentGraph, ReprError> {
    if ss.m() == 0 {
        return Err(ReprError::ZeroM);
    }
    let mut labels = Vec::new();
    let mut representatives = Vec::new();
    for (l, p, q) in component_labels(ss.n(), k) {
        let hb = bosonic_hk(ss, p);
        if hb.dim() == 0 {
            continue;
        }
        let f = fkpq(ss, l, p, q).expect("labels in range");
        let hf = fermionic_hk(ss, q).basis()[0].clone();
        labels.push((l, p, q));
        representatives.push(&(&f * &hb.basis()[0]) * &hf);
    }
    let split: Splitter = if ss.m() >= 2 {
        let projectors = labels
            .iter()
            .map(|&(l, _, q)| projector(ss, k, l, q).map_err(|e| ReprError::Failed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Box::new(move |w| projectors.iter().map(|q| !q.apply(w).is_zero()).collect())
    } else {
        // m = 1: the projector formula has eigenvalue collisions
        let splitter = ComponentSplitter::new(ss, k);
        let keep: Vec<usize> = splitter
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, lab)| labels.contains(lab))
            .map(|(i, _)| i)
            .collect();
        Box::new(move |w| {
            let parts = splitter.split(w).expect("image lies in H_k");
            keep.iter().map(|&i| !parts[i].is_zero()).collect()
        })
    };
    let odd: Vec<_> = ss
        .osp_generators()
        .into_iter()
        .filter(|(_, g)| g.parity().is_odd())
        .map(|(_, g)| g)
        .collect();
    let c = labels.len();
    let mut edges = vec![vec![false; c]; c];
    for (a, rep) in representatives.iter().enumerate() {
        for g in &odd {
            if (0..c).all(|b| b == a || edges[a][b]) {
                break;
            }
            let w = g.apply(rep);
            if w.is_zero() {
                continue;
            }
            for (b, hit) in split(&w).into_iter().enumerate() {
                if b != a && hit {
                    edges[a][b] = true;
                }
            }
        }
    }
    Ok(ComponentGraph {
        labels,
        representatives,
        edges,
    })
}

/// A component that cannot reach, or cannot be reached from, component 0.
fn unreachable_component(edges: &[Vec<bool>]) -> Option<usize> {
    let c = edges.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; c];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..c {
                let e = if forward { edges[a][b] } else { edges[b][a] };
                if e && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    };
    let fwd = reach(true);
    let bwd = reach(false);
    (0..c).find(|&i| !fwd[i] || !bwd[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicate_window() {
        assert!(!irreducibility_predicate(2, 1, 2));
        assert!(irreducibility_predicate(2, 1, 3));
        assert!(!irreducibility_predicate(2, 2, 3));
        assert!(!irreducibility_predicate(2, 2, 4));
        assert!(irreducibility_predicate(2, 2, 2));
        assert!(irreducibility_predicate(3, 1, 4));
    }

    #[test]
    fn small_verdicts() {
        let r = check_irreducible(&Superspace::new(2, 1), 2, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Reducible);
        assert_eq!(r.witness.unwrap().closure_dim, 1);
        for k in 0..=4 {
            let r = check_irreducible(&Superspace::new(3, 1), k, 1).unwrap();
            assert_eq!(r.verdict, Verdict::Irreducible);
        }
    }

    #[test]
    fn graph_agrees_with_closures() {
        for (m, n) in [(1, 1), (2, 1), (4, 1), (2, 2)] {
            for k in 0..=4 {
                let r = check_irreducible(&Superspace::new(m, n), k, 5).unwrap();
                assert!(r.matches_predicate(), "{r:?}");
            }
        }
    }
}
