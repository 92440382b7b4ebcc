//! The super Laplacian, `R^2`, Euler operators, `osp(m|2n)` and `gl(m|2n)`
//! generators and the Laplace–Beltrami operator, as composable linear maps.
//!
//! Indices into the supervector `X = (x_1, ..., x_m, e_1, ..., e_2n)` are
//! 0-based. The raised derivative is `d_{X^j} = sum_i (g^-1)_{ji} d_{X_i}`,
//! where fermionic derivatives act from the left.

mod metric;
mod op;

use std::sync::Arc;

pub use metric::Metric;
pub use op::LinearOp;

use crate::exactmath::{RatMatrix, Rational};
use crate::harmonic::GradedSpace;
use crate::superalgebra::{BlockId, Parity, SuperMonomial, SuperPolynomial, Var, VarSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("generator index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("image of basis vector {index} is not in the target space")]
    NotInTarget { index: usize },
    #[error("blocks `{0}` and `{1}` have different shapes")]
    BlockMismatch(String, String),
}

/// One copy of `R^{m|2n}` inside a variable spec, with its metric.
///
/// All operators built from a `Superspace` act only on the variables of its
/// block and treat every other variable as a constant.
#[derive(Debug, Clone)]
pub struct Superspace {
    m: usize,
    n: usize,
    spec: Arc<VarSpec>,
    block: BlockId,
    vars: Vec<Var>,
    metric: Metric,
}

/// A first-order operator `sum c X_a d_{X_b}` on the supervector.
#[derive(Debug, Clone)]
struct VectorField(Vec<(Var, Var, Rational)>);

impl VectorField {
    fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(f.spec());
        for (a, b, c) in &self.0 {
            out.add_scaled(c, &f.deriv(*b).mul_var(*a));
        }
        out
    }
}

impl Superspace {
    pub fn new(m: usize, n: usize) -> Self {
        let spec = Arc::new(VarSpec::superspace(m, n));
        Self::on_block(&spec, BlockId(0))
    }

    pub fn on_block(spec: &Arc<VarSpec>, block: BlockId) -> Self {
        let b = spec.block(block);
        Self {
            m: b.m(),
            n: b.n(),
            vars: b.supervector(),
            metric: Metric::new(b.m(), b.n()),
            spec: spec.clone(),
            block,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The superdimension `M = m - 2n`.
    pub fn superdim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    pub fn spec(&self) -> &Arc<VarSpec> {
        &self.spec
    }

    pub fn block(&self) -> BlockId {
        self.block
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn var(&self, i: usize) -> Var {
        self.vars[i]
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.metric.is_odd(i)
    }

    fn bos(&self) -> Vec<Var> {
        self.vars[..self.m].to_vec()
    }

    fn ferm_pairs(&self) -> Vec<(Var, Var)> {
        (0..self.n)
            .map(|a| (self.vars[self.m + 2 * a], self.vars[self.m + 2 * a + 1]))
            .collect()
    }

    /// Bosonic and fermionic degree of a monomial in this block's variables.
    pub fn block_degrees(&self, mono: &SuperMonomial) -> (usize, usize) {
        let b = self.spec.block(self.block);
        let db = b.bos_range().map(|i| mono.bos_exp(i) as usize).sum();
        let df = b.ferm_range().filter(|&j| mono.has_ferm(j)).count();
        (db, df)
    }

    pub fn laplacian_b(&self) -> LinearOp {
        let bos = self.bos();
        LinearOp::new("∇²_b", -2, Parity::Even, move |f| {
            let mut out = SuperPolynomial::zero(f.spec());
            for v in &bos {
                out.add_scaled(&Rational::ONE, &f.deriv(*v).deriv(*v));
            }
            out
        })
    }

    /// `-4 sum_j d_{e_{2j-1}} d_{e_{2j}}`.
    pub fn laplacian_f(&self) -> LinearOp {
        let pairs = self.ferm_pairs();
        LinearOp::new("∇²_f", -2, Parity::Even, move |f| {
            let mut out = SuperPolynomial::zero(f.spec());
            for (a, b) in &pairs {
                out.add_scaled(&Rational::from_integer(-4), &f.deriv(*b).deriv(*a));
            }
            out
        })
    }

    pub fn laplacian(&self) -> LinearOp {
        self.laplacian_b().add(&self.laplacian_f()).renamed("∇²")
    }

    /// `r^2 = sum x_i^2`.
    pub fn r2_bos_poly(&self) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.spec);
        for v in self.bos() {
            let x = SuperPolynomial::var(&self.spec, v);
            out.add_scaled(&Rational::ONE, &(&x * &x));
        }
        out
    }

    /// `theta^2 = -sum e_{2j-1} e_{2j}`.
    pub fn theta2_poly(&self) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.spec);
        for (a, b) in self.ferm_pairs() {
            let ea = SuperPolynomial::var(&self.spec, a);
            let eb = SuperPolynomial::var(&self.spec, b);
            out.add_scaled(&-Rational::ONE, &(&ea * &eb));
        }
        out
    }

    /// `R^2 = sum_ij X_i g_ij X_j = r^2 + theta^2`.
    pub fn r_squared_poly(&self) -> SuperPolynomial {
        &self.r2_bos_poly() + &self.theta2_poly()
    }

    fn mult_op(name: &str, p: SuperPolynomial) -> LinearOp {
        let shift = p.degree().unwrap_or(0) as i32;
        LinearOp::new(name, shift, Parity::Even, move |f| &p * f)
    }

    pub fn r_squared(&self) -> LinearOp {
        Self::mult_op("R²", self.r_squared_poly())
    }

    fn degree_weighted(
        &self,
        name: &str,
        weight: impl Fn(usize, usize) -> Rational + Send + Sync + 'static,
    ) -> LinearOp {
        let this = self.clone();
        LinearOp::new(name, 0, Parity::Even, move |f| {
            let mut out = SuperPolynomial::zero(f.spec());
            for (mono, c) in f.terms() {
                let (db, df) = this.block_degrees(mono);
                out.add_term(mono.clone(), c * &weight(db, df));
            }
            out
        })
    }

    pub fn euler(&self) -> LinearOp {
        self.degree_weighted("𝔼", |b, f| Rational::from(b + f))
    }

    pub fn euler_b(&self) -> LinearOp {
        self.degree_weighted("𝔼_b", |b, _| Rational::from(b))
    }

    pub fn euler_f(&self) -> LinearOp {
        self.degree_weighted("𝔼_f", |_, f| Rational::from(f))
    }

    /// `R^2 ∇^2 - 𝔼(M - 2 + 𝔼)`.
    pub fn laplace_beltrami(&self) -> LinearOp {
        let big_m = self.superdim();
        let lap = self.r_squared().compose(&self.laplacian());
        let e = self.degree_weighted("𝔼(M-2+𝔼)", move |b, f| {
            let d = (b + f) as i64;
            Rational::from_integer(d * (big_m - 2 + d))
        });
        lap.sub(&e).renamed("Δ_LB")
    }

    /// `r^2 ∇^2_b - 𝔼_b(m - 2 + 𝔼_b)`.
    pub fn laplace_beltrami_b(&self) -> LinearOp {
        let m = self.m as i64;
        let lap = Self::mult_op("r²", self.r2_bos_poly()).compose(&self.laplacian_b());
        let e = self.degree_weighted("𝔼_b(m-2+𝔼_b)", move |b, _| {
            let d = b as i64;
            Rational::from_integer(d * (m - 2 + d))
        });
        lap.sub(&e).renamed("Δ_LB,b")
    }

    /// `theta^2 ∇^2_f - 𝔼_f(-2n - 2 + 𝔼_f)`.
    pub fn laplace_beltrami_f(&self) -> LinearOp {
        let n = self.n as i64;
        let lap = Self::mult_op("θ²", self.theta2_poly()).compose(&self.laplacian_f());
        let e = self.degree_weighted("𝔼_f(-2n-2+𝔼_f)", move |_, f| {
            let d = f as i64;
            Rational::from_integer(d * (-2 * n - 2 + d))
        });
        lap.sub(&e).renamed("Δ_LB,f")
    }

    /// `d_{X^j}` as a combination of plain derivatives.
    fn raised(&self, j: usize) -> Vec<(Var, Rational)> {
        (0..self.dim())
            .filter_map(|i| {
                let c = &self.metric.g_inv()[(j, i)];
                (!c.is_zero()).then(|| (self.vars[i], c.clone()))
            })
            .collect()
    }

    fn check_index(&self, i: usize, j: usize) -> Result<(), OpError> {
        if i >= self.dim() || j >= self.dim() {
            return Err(OpError::IndexOutOfRange {
                i,
                j,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    fn pair_parity(&self, i: usize, j: usize) -> Parity {
        Parity::from_odd(self.is_odd(i) != self.is_odd(j))
    }

    /// `L_ij = X_i d_{X^j} - (-1)^{[i][j]} X_j d_{X^i}`, for any ordered pair.
    pub fn osp_generator(&self, i: usize, j: usize) -> Result<LinearOp, OpError> {
        self.check_index(i, j)?;
        let sign = if self.is_odd(i) && self.is_odd(j) {
            Rational::ONE
        } else {
            -Rational::ONE
        };
        let mut terms = Vec::new();
        for (v, c) in self.raised(j) {
            terms.push((self.vars[i], v, c));
        }
        for (v, c) in self.raised(i) {
            terms.push((self.vars[j], v, &sign * &c));
        }
        let field = VectorField(terms);
        Ok(LinearOp::new(
            format!("L[{},{}]", i + 1, j + 1),
            0,
            self.pair_parity(i, j),
            move |f| field.apply(f),
        ))
    }

    /// Index pairs `i <= j` of the nonzero generators: bosonic diagonal ones
    /// vanish identically and are skipped; fermionic diagonal ones are kept.
    pub fn osp_indices(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                if i == j && !self.is_odd(i) {
                    continue;
                }
                out.push((i, j));
            }
        }
        out
    }

    pub fn osp_generators(&self) -> Vec<((usize, usize), LinearOp)> {
        self.osp_indices()
            .into_iter()
            .map(|(i, j)| ((i, j), self.osp_generator(i, j).expect("index in range")))
            .collect()
    }

    /// `-1/2 sum_{ijkl} L_ij g^{il} g^{jk} L_kl`, with `g^{ij}` the metric entries.
    pub fn casimir_form(&self) -> LinearOp {
        let d = self.dim();
        let g = self.metric.g().clone();
        let mut gens = vec![vec![None; d]; d];
        for (i, row) in gens.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j || self.is_odd(i) {
                    *slot = Some(self.osp_generator(i, j).expect("index in range"));
                }
            }
        }
        let mut terms: Vec<(LinearOp, LinearOp, Rational)> = Vec::new();
        let half = Rational::new(-1, 2);
        for i in 0..d {
            for l in 0..d {
                if g[(i, l)].is_zero() {
                    continue;
                }
                for j in 0..d {
                    for k in 0..d {
                        if g[(j, k)].is_zero() {
                            continue;
                        }
                        let (Some(a), Some(b)) = (&gens[i][j], &gens[k][l]) else {
                            continue;
                        };
                        let c = &(&half * &g[(i, l)]) * &g[(j, k)];
                        terms.push((a.clone(), b.clone(), c));
                    }
                }
            }
        }
        LinearOp::new("Casimir", 0, Parity::Even, move |f| {
            let mut out = SuperPolynomial::zero(f.spec());
            for (a, b, c) in &terms {
                out.add_scaled(c, &a.apply(&b.apply(f)));
            }
            out
        })
    }

    /// `E_ij = X_i d_{X_j}` (plain, unraised derivative).
    pub fn gl_generator(&self, i: usize, j: usize) -> Result<LinearOp, OpError> {
        self.check_index(i, j)?;
        let (a, b) = (self.vars[i], self.vars[j]);
        Ok(LinearOp::new(
            format!("E[{},{}]", i + 1, j + 1),
            0,
            self.pair_parity(i, j),
            move |f| f.deriv(b).mul_var(a),
        ))
    }
}

/// `<X, Y> = sum_ij X_i g_ij Y_j` for two blocks of the same shape.
pub fn inner_product(
    spec: &Arc<VarSpec>,
    x: BlockId,
    y: BlockId,
) -> Result<SuperPolynomial, OpError> {
    let (bx, by) = (spec.block(x), spec.block(y));
    if bx.m() != by.m() || bx.nferm() != by.nferm() {
        return Err(OpError::BlockMismatch(bx.name.clone(), by.name.clone()));
    }
    let metric = Metric::new(bx.m(), bx.n());
    let (xs, ys) = (bx.supervector(), by.supervector());
    let mut out = SuperPolynomial::zero(spec);
    for (i, &xi) in xs.iter().enumerate() {
        for (j, &yj) in ys.iter().enumerate() {
            let c = &metric.g()[(i, j)];
            if c.is_zero() {
                continue;
            }
            let term = &SuperPolynomial::var(spec, xi) * &SuperPolynomial::var(spec, yj);
            out.add_scaled(c, &term);
        }
    }
    Ok(out)
}

/// Matrix of `op` from `domain` to `target` in their coordinates.
pub fn matrix_of(
    op: &LinearOp,
    domain: &GradedSpace,
    target: &GradedSpace,
) -> Result<RatMatrix, OpError> {
    let cols = sparse_matrix_of(op, domain, target)?;
    let mut out = RatMatrix::zeros(target.dim(), domain.dim());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            out[(*i, j)] = x.clone();
        }
    }
    Ok(out)
}

/// Columns of [`matrix_of`] as sparse vectors.
pub fn sparse_matrix_of(
    op: &LinearOp,
    domain: &GradedSpace,
    target: &GradedSpace,
) -> Result<Vec<crate::exactmath::SparseVec>, OpError> {
    domain
        .basis()
        .iter()
        .enumerate()
        .map(|(index, b)| {
            target
                .coordinates(&op.apply(b))
                .ok_or(OpError::NotInTarget { index })
        })
        .collect()
}

/// Checks `a == b` on every basis vector of `space`; returns the first
/// basis index where they differ.
pub fn first_disagreement(a: &LinearOp, b: &LinearOp, space: &GradedSpace) -> Option<usize> {
    space.basis().iter().position(|v| a.apply(v) != b.apply(v))
}

pub fn laplacian(m: usize, n: usize) -> LinearOp {
    Superspace::new(m, n).laplacian()
}

pub fn r_squared(m: usize, n: usize) -> LinearOp {
    Superspace::new(m, n).r_squared()
}

pub fn euler(m: usize, n: usize) -> LinearOp {
    Superspace::new(m, n).euler()
}

pub fn laplace_beltrami(m: usize, n: usize) -> LinearOp {
    Superspace::new(m, n).laplace_beltrami()
}
