//! Graded pieces `P_k`, spherical harmonics `H_k`, the Fischer decomposition,
//! the polynomials `f_{k,p,q}` and the splitting of `H_k` into
//! `o(m) + sp(2n)` components.

mod space;

use std::collections::HashMap;

use num_traits::ToPrimitive;

pub use space::{monomials_of_degree, GradedSpace, SpaceError};

use crate::exactmath::{
    binomial, factorial, gamma_ratio, sparse_nullspace_keyed, HalfInt, Rational, SparseVec,
};
use crate::operators::{LinearOp, Superspace};
use crate::superalgebra::{Parity, SuperMonomial, SuperPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarmonicError {
    #[error("the dimension formula needs m > 0")]
    ZeroM,
    #[error("Fischer decomposition fails: M = {0} is a nonpositive even integer")]
    FischerObstruction(i64),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("projector denominator vanishes at i = {i}: bosonic eigenvalues collide for m = {m}")]
    EigenvalueCollision { m: usize, i: usize },
}

/// `P_k` in the variables of `ss`, with its monomial basis.
pub fn pk(ss: &Superspace, k: usize) -> GradedSpace {
    GradedSpace::from_monomials(
        ss.spec(),
        Some(k),
        monomials_of_degree(ss.spec(), ss.block(), k),
    )
}

pub fn monomial_basis_pk(m: usize, n: usize, k: usize) -> GradedSpace {
    pk(&Superspace::new(m, n), k)
}

/// Kernel of `op` on the span of `monos`, with a basis keyed by free monomials.
fn kernel_on(
    ss: &Superspace,
    degree: usize,
    monos: Vec<SuperMonomial>,
    op: &LinearOp,
) -> GradedSpace {
    let mut index: HashMap<SuperMonomial, usize> = HashMap::new();
    let columns: Vec<SparseVec> = monos
        .iter()
        .map(|m| {
            let img = op.apply(&SuperPolynomial::from_term(
                ss.spec(),
                m.clone(),
                Rational::ONE,
            ));
            let mut v: SparseVec = img
                .into_terms()
                .map(|(mono, c)| {
                    let next = index.len();
                    (*index.entry(mono).or_insert(next), c)
                })
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect();
    let mut basis = Vec::new();
    let mut keys = Vec::new();
    for (free, v) in sparse_nullspace_keyed(&columns) {
        basis.push(SuperPolynomial::from_terms(
            ss.spec(),
            v.into_iter().map(|(c, x)| (monos[c].clone(), x)),
        ));
        keys.push(monos[free].clone());
    }
    GradedSpace::keyed(ss.spec(), Some(degree), basis, keys)
}

/// `H_k = P_k ∩ ker ∇²`, computed as an exact kernel.
pub fn hk(ss: &Superspace, k: usize) -> GradedSpace {
    kernel_on(
        ss,
        k,
        monomials_of_degree(ss.spec(), ss.block(), k),
        &ss.laplacian(),
    )
}

pub fn harmonics(m: usize, n: usize, k: usize) -> GradedSpace {
    hk(&Superspace::new(m, n), k)
}

/// Bosonic harmonics of degree `p` in the bosonic variables of `ss`.
pub fn bosonic_hk(ss: &Superspace, p: usize) -> GradedSpace {
    let monos = monomials_of_degree(ss.spec(), ss.block(), p)
        .into_iter()
        .filter(|m| ss.block_degrees(m).1 == 0)
        .collect();
    kernel_on(ss, p, monos, &ss.laplacian_b())
}

/// Fermionic harmonics of degree `q` in the fermionic variables of `ss`.
pub fn fermionic_hk(ss: &Superspace, q: usize) -> GradedSpace {
    let monos = monomials_of_degree(ss.spec(), ss.block(), q)
        .into_iter()
        .filter(|m| ss.block_degrees(m).0 == 0)
        .collect();
    kernel_on(ss, q, monos, &ss.laplacian_f())
}

pub fn bosonic_harmonics(m: usize, p: usize) -> GradedSpace {
    bosonic_hk(&Superspace::new(m, 0), p)
}

pub fn fermionic_harmonics(n: usize, q: usize) -> GradedSpace {
    fermionic_hk(&Superspace::new(0, n), q)
}

fn binom_u64(n: i64, r: i64) -> i64 {
    binomial(n, r).to_i64().expect("binomial fits in i64")
}

/// `dim P_k = sum_i C(2n, i) C(k - i + m - 1, m - 1)`.
pub fn dim_pk(m: usize, n: usize, k: usize) -> u64 {
    let (m, n, k) = (m as i64, n as i64, k as i64);
    if m == 0 {
        return binom_u64(2 * n, k) as u64;
    }
    (0..=k.min(2 * n))
        .map(|i| binom_u64(2 * n, i) * binom_u64(k - i + m - 1, m - 1))
        .sum::<i64>() as u64
}

/// The closed form for `dim H_k`, valid for `m > 0`.
pub fn dim_hk_formula(m: usize, n: usize, k: usize) -> Result<u64, HarmonicError> {
    if m == 0 {
        return Err(HarmonicError::ZeroM);
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    let first: i64 = (0..=k.min(2 * n))
        .map(|i| binom_u64(2 * n, i) * binom_u64(k - i + m - 1, m - 1))
        .sum();
    let second: i64 = (0..=(k - 2).min(2 * n))
        .map(|i| binom_u64(2 * n, i) * binom_u64(k - i + m - 3, m - 1))
        .sum();
    Ok((first - second) as u64)
}

/// Whether `M` lies in `-2N = {0, -2, -4, ...}`.
pub fn in_minus_2n(big_m: i64) -> bool {
    big_m <= 0 && big_m % 2 == 0
}

/// One summand `R^{2j} H_{k-2j}` of the Fischer decomposition of `P_k`.
#[derive(Debug, Clone)]
pub struct FischerPiece {
    pub j: usize,
    pub space: GradedSpace,
}

/// The Fischer pieces of `P_k`. For `m = 0` only `j <= n - (k - 2j)` occurs.
pub fn fischer(ss: &Superspace, k: usize) -> Result<Vec<FischerPiece>, HarmonicError> {
    let big_m = ss.superdim();
    if ss.m() > 0 && in_minus_2n(big_m) {
        return Err(HarmonicError::FischerObstruction(big_m));
    }
    let r2 = ss.r_squared_poly();
    let mut out = Vec::new();
    for j in 0..=k / 2 {
        let kk = k - 2 * j;
        if ss.m() == 0 && j + kk > ss.n() {
            continue;
        }
        let rj = r2.pow(j as u32);
        let basis: Vec<SuperPolynomial> = hk(ss, kk).basis().iter().map(|h| &rj * h).collect();
        let space = GradedSpace::from_basis(ss.spec(), Some(k), basis)
            .map_err(|_| HarmonicError::FischerObstruction(big_m))?;
        out.push(FischerPiece { j, space });
    }
    Ok(out)
}

/// Splits homogeneous polynomials into their Fischer components
/// `f = sum_j R^{2j} H_{k-2j}` by solving `∇²(R² g) = ∇² f` recursively.
pub struct FischerSplitter {
    ss: Superspace,
    r2: SuperPolynomial,
    /// Indexed by `d - 2` for degree `d`: the span of `∇²(R² mono)` over
    /// monomials of degree `d - 2`, with those monomials.
    solvers: Vec<(GradedSpace, Vec<SuperMonomial>)>,
}

impl FischerSplitter {
    /// Prepares splitting for degrees up to `max_degree`.
    pub fn new(ss: &Superspace, max_degree: usize) -> Result<Self, HarmonicError> {
        let big_m = ss.superdim();
        if ss.m() == 0 || in_minus_2n(big_m) {
            return Err(HarmonicError::FischerObstruction(big_m));
        }
        let op = ss.laplacian().compose(&ss.r_squared());
        let solvers = (2..=max_degree.max(1))
            .map(|d| {
                let monos = monomials_of_degree(ss.spec(), ss.block(), d - 2);
                let images = monos
                    .iter()
                    .map(|m| {
                        op.apply(&SuperPolynomial::from_term(
                            ss.spec(),
                            m.clone(),
                            Rational::ONE,
                        ))
                    })
                    .collect();
                let space = GradedSpace::from_basis(ss.spec(), Some(d - 2), images)
                    .map_err(|_| HarmonicError::FischerObstruction(big_m))?;
                Ok((space, monos))
            })
            .collect::<Result<_, HarmonicError>>()?;
        Ok(Self {
            ss: ss.clone(),
            r2: ss.r_squared_poly(),
            solvers,
        })
    }

    /// Components `[H_k, H_{k-2}, ...]` of a homogeneous `f` of degree `k`.
    pub fn split(&self, f: &SuperPolynomial, k: usize) -> Vec<SuperPolynomial> {
        let lap = self.ss.laplacian();
        let mut out = Vec::new();
        let mut cur = f.clone();
        let mut d = k;
        while d >= 2 {
            let (space, monos) = &self.solvers[d - 2];
            let coords = space
                .coordinates(&lap.apply(&cur))
                .expect("degree within prepared range");
            let g = SuperPolynomial::from_terms(
                self.ss.spec(),
                coords.into_iter().map(|(i, c)| (monos[i].clone(), c)),
            );
            out.push(&cur - &(&self.r2 * &g));
            cur = g;
            d -= 2;
        }
        out.push(cur);
        out
    }
}

/// `f_{k,p,q} = sum_s a_s r^{2k-2s} theta^{2s}` with
/// `a_s = C(k,s) (n-q-s)!/(n-q-k)! * Γ(m/2+p+k)/Γ(m/2+p+k-s)`.
pub fn fkpq(
    ss: &Superspace,
    k: usize,
    p: usize,
    q: usize,
) -> Result<SuperPolynomial, HarmonicError> {
    let n = ss.n();
    if q > n || k + q > n {
        return Err(HarmonicError::OutOfRange(format!(
            "need q <= n and k <= n - q (k={k}, q={q}, n={n})"
        )));
    }
    let r2 = ss.r2_bos_poly();
    let t2 = ss.theta2_poly();
    let top = HalfInt::from_twice(ss.m() as i64 + 2 * (p + k) as i64);
    let mut out = SuperPolynomial::zero(ss.spec());
    for s in 0..=k {
        let ratio = gamma_ratio(top, top.add_int(-(s as i64)))
            .map_err(|e| HarmonicError::OutOfRange(e.to_string()))?;
        let fact = &factorial((n - q - s) as u64) / &factorial((n - q - k) as u64);
        let a = &(&Rational::from(binomial(k as i64, s as i64)) * &fact) * &ratio;
        let term = &r2.pow((k - s) as u32) * &t2.pow(s as u32);
        out.add_scaled(&a, &term);
    }
    Ok(out)
}

/// One summand `f_{l,p,q} H_p^b ⊗ H_q^f` of `H_k`.
#[derive(Debug, Clone)]
pub struct HkComponent {
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub space: GradedSpace,
}

/// Component labels `(l, p, q)` of `H_k`, with `2l + p + q = k` and `l + q <= n`.
pub fn component_labels(n: usize, k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for q in 0..=n.min(k) {
        for l in 0..=(n - q).min((k - q) / 2) {
            out.push((l, k - 2 * l - q, q));
        }
    }
    out
}

pub fn decompose_hk(ss: &Superspace, k: usize) -> Vec<HkComponent> {
    let mut bos_cache: HashMap<usize, GradedSpace> = HashMap::new();
    let mut ferm_cache: HashMap<usize, GradedSpace> = HashMap::new();
    component_labels(ss.n(), k)
        .into_iter()
        .map(|(l, p, q)| {
            let f = fkpq(ss, l, p, q).expect("labels in range");
            let hb = bos_cache
                .entry(p)
                .or_insert_with(|| bosonic_hk(ss, p))
                .clone();
            let hf = ferm_cache
                .entry(q)
                .or_insert_with(|| fermionic_hk(ss, q))
                .clone();
            let mut basis = Vec::with_capacity(hb.dim() * hf.dim());
            for b in hb.basis() {
                let fb = &f * b;
                for e in hf.basis() {
                    basis.push(&fb * e);
                }
            }
            let space = GradedSpace::from_basis(ss.spec(), Some(k), basis)
                .expect("component basis is independent");
            HkComponent { l, p, q, space }
        })
        .collect()
}

/// `Q^k_{r,s}`: the product of shifted bosonic and fermionic Laplace–Beltrami
/// operators that keeps the component `(r, k - 2r - s, s)` of `H_k`.
pub fn projector(ss: &Superspace, k: usize, r: usize, s: usize) -> Result<LinearOp, HarmonicError> {
    if s > ss.n().min(k) || 2 * r + s > k || r + s > ss.n() {
        return Err(HarmonicError::OutOfRange(format!(
            "no component ({r}, {s}) in H_{k}"
        )));
    }
    let m = ss.m() as i64;
    let n = ss.n() as i64;
    let p = (k - 2 * r - s) as i64;
    let lb_b = ss.laplace_beltrami_b();
    let lb_f = ss.laplace_beltrami_f();
    let mut op = LinearOp::identity();
    for i in 0..=k as i64 {
        if i == p {
            continue;
        }
        let den = (i - p) * (i + p + m - 2);
        if den == 0 {
            return Err(HarmonicError::EigenvalueCollision {
                m: ss.m(),
                i: i as usize,
            });
        }
        let factor = lb_b
            .shifted(Rational::from_integer(i * (m - 2 + i)))
            .scale(Rational::new(1, den));
        op = factor.compose(&op);
    }
    let s = s as i64;
    for j in 0..=(ss.n().min(k)) as i64 {
        if j == s {
            continue;
        }
        let den = (j - s) * (j + s - 2 * n - 2);
        let factor = lb_f
            .shifted(Rational::from_integer(j * (j - 2 * n - 2)))
            .scale(Rational::new(1, den));
        op = factor.compose(&op);
    }
    Ok(LinearOp::new(
        format!("Q[{k};{r},{s}]"),
        0,
        Parity::Even,
        move |f| op.apply(f),
    ))
}

/// Component splitting by change of basis to the decomposition basis; used
/// where the projector formula is unavailable (eigenvalue collisions).
pub struct ComponentSplitter {
    labels: Vec<(usize, usize, usize)>,
    offsets: Vec<usize>,
    all: GradedSpace,
}

impl ComponentSplitter {
    pub fn new(ss: &Superspace, k: usize) -> Self {
        let comps = decompose_hk(ss, k);
        let mut offsets = vec![0];
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for c in comps {
            labels.push((c.l, c.p, c.q));
            basis.extend(c.space.into_basis());
            offsets.push(basis.len());
        }
        let all = GradedSpace::from_basis(ss.spec(), Some(k), basis)
            .expect("components form a direct sum");
        Self {
            labels,
            offsets,
            all,
        }
    }

    pub fn labels(&self) -> &[(usize, usize, usize)] {
        &self.labels
    }

    /// The part of `f` in each component, in label order, or `None` if `f`
    /// is not in the span of the components.
    pub fn split(&self, f: &SuperPolynomial) -> Option<Vec<SuperPolynomial>> {
        let coords = self.all.coordinates(f)?;
        Some(
            (0..self.labels.len())
                .map(|c| {
                    let range = self.offsets[c]..self.offsets[c + 1];
                    let part: SparseVec = coords
                        .iter()
                        .filter(|(i, _)| range.contains(i))
                        .cloned()
                        .collect();
                    self.all.combine(&part)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::parse;

    #[test]
    fn small_dimensions() {
        assert_eq!(harmonics(3, 0, 2).dim(), 5);
        assert_eq!(harmonics(2, 1, 2).dim(), 7);
        assert_eq!(harmonics(2, 1, 0).dim(), 1);
        assert_eq!(dim_hk_formula(3, 1, 2), Ok(12));
        assert_eq!(dim_hk_formula(2, 1, 1), Ok(4));
        assert_eq!(dim_hk_formula(0, 1, 1), Err(HarmonicError::ZeroM));
        assert_eq!(dim_pk(3, 1, 2), 13);
        assert_eq!(bosonic_harmonics(2, 2).dim(), 2);
        assert_eq!(fermionic_harmonics(1, 1).dim(), 2);
        assert_eq!(fermionic_harmonics(1, 2).dim(), 0);
    }

    #[test]
    fn f100_closed_form() {
        let ss = Superspace::new(3, 2);
        let f = fkpq(&ss, 1, 0, 0).unwrap();
        let expect = &ss.r2_bos_poly().scale(&Rational::from_integer(2))
            + &ss.theta2_poly().scale(&Rational::new(3, 2));
        assert_eq!(f, expect);
        assert!(ss.laplacian().apply(&f).is_zero());
        assert_eq!(fkpq(&ss, 0, 3, 1).unwrap(), SuperPolynomial::one(ss.spec()));
    }

    #[test]
    fn decomposition_of_h2_for_2_1() {
        let ss = Superspace::new(2, 1);
        let comps = decompose_hk(&ss, 2);
        let dims: Vec<_> = comps
            .iter()
            .map(|c| ((c.l, c.p, c.q), c.space.dim()))
            .collect();
        assert_eq!(dims, vec![((0, 2, 0), 2), ((1, 0, 0), 1), ((0, 1, 1), 4)]);
    }

    #[test]
    fn fischer_split_reassembles() {
        let ss = Superspace::new(3, 1);
        let split = FischerSplitter::new(&ss, 4).unwrap();
        let f = parse(ss.spec(), "x1^2*e1*e2 + 3*x2^4 - x1*x3*e1*e2").unwrap();
        let parts = split.split(&f, 4);
        let r2 = ss.r_squared_poly();
        let mut total = SuperPolynomial::zero(ss.spec());
        for (j, h) in parts.iter().enumerate() {
            assert!(ss.laplacian().apply(h).is_zero());
            total = &total + &(&r2.pow(j as u32) * h);
        }
        assert_eq!(total, f);
    }
}
