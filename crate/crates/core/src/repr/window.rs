use std::collections::HashMap;

use serde::Serialize;

use super::{
    invariant_closure, sample_vectors, GeneratorMatrix, ModuleRealization, ReprError,
    RANDOM_SAMPLES,
};
use crate::exactmath::sparse::{sparse_from_dense, sparse_to_dense};
use crate::exactmath::{subspace_intersect, RatMatrix, Rational, SparseEchelon, SparseVec};
use crate::harmonic::{hk, in_minus_2n, monomials_of_degree, GradedSpace};
use crate::operators::{matrix_of, Superspace};
use crate::sphereint::sphere_bilinear;
use crate::superalgebra::{Parity, SuperMonomial, SuperPolynomial};

/// `M` in `-2N` and `2 - M/2 <= k <= 2 - M`.
pub fn in_window(m: usize, n: usize, k: usize) -> bool {
    let big_m = m as i64 - 2 * n as i64;
    let k = k as i64;
    in_minus_2n(big_m) && 4 - big_m <= 2 * k && k <= 2 - big_m
}

/// `R^{2k+M-2} H_{2-M-k}`, checked to be harmonic, invariant under every
/// generator and equal to `R^2 P_{k-2} ∩ H_k`.
pub fn window_submodule(ss: &Superspace, k: usize) -> Result<GradedSpace, ReprError> {
    let (m, n) = (ss.m(), ss.n());
    if !in_window(m, n, k) {
        return Err(ReprError::OutsideWindow { m, n, k });
    }
    let big_m = ss.superdim();
    let low = (2 - big_m - k as i64) as usize;
    let power = (k as i64 + big_m / 2 - 1) as u32;
    let r_pow = ss.r_squared_poly().pow(power);
    let basis: Vec<SuperPolynomial> = hk(ss, low).basis().iter().map(|h| &r_pow * h).collect();
    let w = GradedSpace::from_basis(ss.spec(), Some(k), basis)
        .map_err(|e| ReprError::Failed(format!("window basis: {e}")))?;

    let lap = ss.laplacian();
    if let Some(i) = w.basis().iter().position(|b| !lap.apply(b).is_zero()) {
        return Err(ReprError::Failed(format!(
            "window basis vector {i} is not harmonic"
        )));
    }
    for (_, g) in ss.osp_generators() {
        for (i, b) in w.basis().iter().enumerate() {
            if !w.contains(&g.apply(b)) {
                return Err(ReprError::NotInvariant {
                    generator: g.name().to_string(),
                    index: i,
                });
            }
        }
    }

    let h = hk(ss, k);
    let r2 = ss.r_squared_poly();
    let rp: Vec<SuperPolynomial> = monomials_of_degree(ss.spec(), ss.block(), k - 2)
        .into_iter()
        .map(|mono| &r2 * &SuperPolynomial::from_term(ss.spec(), mono, Rational::ONE))
        .collect();
    let mut family: Vec<SuperPolynomial> = h.basis().to_vec();
    family.extend(rp.iter().cloned());
    family.extend(w.basis().iter().cloned());
    let (vecs, len) = GradedSpace::monomial_vectors(&family);
    let dense: Vec<Vec<Rational>> = vecs.iter().map(|v| sparse_to_dense(v, len)).collect();
    let (hd, rest) = dense.split_at(h.dim());
    let (rd, wd) = rest.split_at(rp.len());
    let inter = subspace_intersect(hd, rd, len);
    let mut ech = SparseEchelon::new();
    for v in &inter {
        ech.insert(&sparse_from_dense(v));
    }
    let w_inside = wd.iter().all(|v| ech.contains(&sparse_from_dense(v)));
    if !w_inside || inter.len() != w.dim() {
        return Err(ReprError::Failed(format!(
            "R^2 P_(k-2) ∩ H_k has dimension {}, window submodule has {}",
            inter.len(),
            w.dim()
        )));
    }
    Ok(w)
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximalityReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub window_dim: usize,
    /// Basis vectors of `H_k` outside the window submodule.
    pub outside_checked: usize,
    /// Every one of them generates all of `H_k`.
    pub maximal: bool,
    pub sampled: usize,
    /// Every sampled nonzero closure contains the window submodule.
    pub indecomposable: bool,
    pub failing_seed: Option<usize>,
}

pub fn maximality_and_indecomposability(
    ss: &Superspace,
    k: usize,
    seed: u64,
) -> Result<MaximalityReport, ReprError> {
    let w = window_submodule(ss, k)?;
    let real = ModuleRealization::on_hk(ss, k)?;
    let w_coords: Vec<SparseVec> = w
        .basis()
        .iter()
        .map(|b| {
            real.space()
                .coordinates(b)
                .expect("window submodule lies in H_k")
        })
        .collect();
    let mut w_ech = SparseEchelon::new();
    for c in &w_coords {
        w_ech.insert(c);
    }
    let dim = real.dim();
    let samples = sample_vectors(dim, RANDOM_SAMPLES, seed);
    let mut report = MaximalityReport {
        m: ss.m(),
        n: ss.n(),
        k,
        dim,
        window_dim: w.dim(),
        outside_checked: 0,
        maximal: true,
        sampled: 0,
        indecomposable: true,
        failing_seed: None,
    };
    for (i, s) in samples.iter().enumerate() {
        let closure = invariant_closure(&real, std::slice::from_ref(s));
        report.sampled += 1;
        if !closure.contains_all(&w_coords) {
            report.indecomposable = false;
            report.failing_seed.get_or_insert(i);
        }
        if i < dim && !w_ech.contains(s) {
            report.outside_checked += 1;
            if !closure.is_whole {
                report.maximal = false;
                report.failing_seed.get_or_insert(i);
            }
        }
    }
    Ok(report)
}

/// `P_k / R^2 P_{k-2}` realized on the monomials that are not pivots of
/// `R^2 P_{k-2}`; the generators act by reducing images modulo `R^2 P_{k-2}`.
pub fn quotient_module(ss: &Superspace, k: usize) -> Result<ModuleRealization, ReprError> {
    if ss.m() == 0 {
        return Err(ReprError::ZeroM);
    }
    let monos = monomials_of_degree(ss.spec(), ss.block(), k);
    let index: HashMap<SuperMonomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let to_vec = |p: &SuperPolynomial| -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let r2 = ss.r_squared_poly();
    let sub: Vec<SuperPolynomial> = if k >= 2 {
        monomials_of_degree(ss.spec(), ss.block(), k - 2)
            .into_iter()
            .map(|mono| &r2 * &SuperPolynomial::from_term(ss.spec(), mono, Rational::ONE))
            .collect()
    } else {
        Vec::new()
    };
    let mut ech = SparseEchelon::new();
    for p in &sub {
        ech.insert(&to_vec(p));
    }
    let complement: Vec<usize> = (0..monos.len()).filter(|&i| !ech.is_pivot(i)).collect();
    let slot: HashMap<usize, usize> = complement
        .iter()
        .enumerate()
        .map(|(s, &i)| (i, s))
        .collect();
    let reduce = |p: &SuperPolynomial| -> SparseVec {
        ech.reduce(&to_vec(p))
            .remainder
            .into_iter()
            .map(|(i, c)| (slot[&i], c))
            .collect()
    };

    let mut generators = Vec::new();
    for (_, g) in ss.osp_generators() {
        for (i, p) in sub.iter().enumerate() {
            if !reduce(&g.apply(p)).is_empty() {
                return Err(ReprError::NotInvariant {
                    generator: g.name().to_string(),
                    index: i,
                });
            }
        }
        let columns = complement
            .iter()
            .map(|&i| {
                reduce(&g.apply(&SuperPolynomial::from_term(
                    ss.spec(),
                    monos[i].clone(),
                    Rational::ONE,
                )))
            })
            .collect();
        generators.push(GeneratorMatrix {
            name: g.name().to_string(),
            parity: g.parity(),
            columns,
        });
    }
    let reps = complement.iter().map(|&i| monos[i].clone()).collect();
    let space = GradedSpace::from_monomials(ss.spec(), Some(k), reps);
    Ok(ModuleRealization::from_matrices(space, generators))
}

/// Checks `A^T G + P G A = 0` for every generator `A` on `H_k`, with `G` the
/// Gram matrix of the sphere pairing and `P` the diagonal sign
/// `(-1)^{|A||h_a|}` for row `a`.
pub fn gram_skew_check(ss: &Superspace, k: usize) -> Result<bool, ReprError> {
    let h = hk(ss, k);
    let d = h.dim();
    let parities: Vec<Parity> = h
        .basis()
        .iter()
        .map(|b| {
            b.parity()
                .ok_or_else(|| ReprError::Failed("harmonic basis vector of mixed parity".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut gram = RatMatrix::zeros(d, d);
    let mut exponent = None;
    for a in 0..d {
        for b in 0..d {
            let v = sphere_bilinear(&h.basis()[a], &h.basis()[b], ss)
                .map_err(|e| ReprError::Failed(e.to_string()))?;
            if v.is_zero() {
                continue;
            }
            if *exponent.get_or_insert(v.pi_exponent) != v.pi_exponent {
                return Err(ReprError::Failed(
                    "Gram entries with different powers of pi".into(),
                ));
            }
            gram[(a, b)] = v.coeff;
        }
    }
    for (_, g) in ss.osp_generators() {
        let a = matrix_of(&g, &h, &h)?;
        let left = a.transpose().mul(&gram).expect("square");
        let mut right = gram.mul(&a).expect("square");
        for (row, p) in parities.iter().enumerate() {
            if g.parity().is_odd() && p.is_odd() {
                continue;
            }
            for col in 0..d {
                right[(row, col)] = -right[(row, col)].clone();
            }
        }
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::invariant_closure;

    #[test]
    fn window_examples() {
        assert!(in_window(2, 1, 2));
        assert!(!in_window(2, 1, 3));
        assert!(in_window(2, 2, 3) && in_window(2, 2, 4));
        assert!(!in_window(3, 1, 2));
        let w = window_submodule(&Superspace::new(2, 1), 2).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(window_submodule(&Superspace::new(3, 1), 2).is_err());
    }

    #[test]
    fn maximality_small() {
        for (m, n, k) in [(2, 1, 2), (2, 2, 3)] {
            let r = maximality_and_indecomposability(&Superspace::new(m, n), k, 3).unwrap();
            assert!(r.maximal && r.indecomposable, "{r:?}");
        }
    }

    #[test]
    fn quotient_dimensions() {
        let ss = Superspace::new(3, 1);
        let q = quotient_module(&ss, 2).unwrap();
        assert_eq!(q.dim(), 12);
        let ss = Superspace::new(2, 1);
        let q = quotient_module(&ss, 2).unwrap();
        assert_eq!(q.dim(), 7);
        // M = 0, k = 2 lies in the window: the quotient is reducible
        let proper =
            (0..q.dim()).any(|i| invariant_closure(&q, &[vec![(i, Rational::ONE)]]).is_proper);
        assert!(proper);
    }

    #[test]
    fn gram_pairing_is_skew() {
        for (m, n, k) in [(2, 1, 1), (3, 1, 2), (1, 1, 2)] {
            assert!(
                gram_skew_check(&Superspace::new(m, n), k).unwrap(),
                "({m},{n},{k})"
            );
        }
    }
}
