use crate::exactmath::{RatMatrix, Rational};

/// The orthosymplectic metric on `R^{m|2n}`: identity on the bosonic block and
/// `n` copies of `J = 1/2 [[0, -1], [1, 0]]` on the fermionic block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    m: usize,
    n: usize,
    g: RatMatrix,
    g_inv: RatMatrix,
}

impl Metric {
    pub fn new(m: usize, n: usize) -> Self {
        let d = m + 2 * n;
        let mut g = RatMatrix::identity(d);
        let mut g_inv = RatMatrix::identity(d);
        for a in 0..n {
            let (i, j) = (m + 2 * a, m + 2 * a + 1);
            g[(i, i)] = Rational::ZERO;
            g[(j, j)] = Rational::ZERO;
            g[(i, j)] = Rational::new(-1, 2);
            g[(j, i)] = Rational::new(1, 2);
            g_inv[(i, i)] = Rational::ZERO;
            g_inv[(j, j)] = Rational::ZERO;
            g_inv[(i, j)] = Rational::from_integer(2);
            g_inv[(j, i)] = Rational::from_integer(-2);
        }
        Self { m, n, g, g_inv }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &RatMatrix {
        &self.g_inv
    }

    /// Parity `[i]` of the 0-based supervector index `i`.
    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.m
    }

    /// Whether `S^T g S = g`.
    pub fn preserved_by(&self, s: &RatMatrix) -> bool {
        let lhs = s.transpose().mul(&self.g).and_then(|t| t.mul(s));
        matches!(lhs, Ok(x) if x == self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_antisymmetry() {
        let g = Metric::new(2, 2);
        assert_eq!(g.g().mul(g.g_inv()).unwrap(), RatMatrix::identity(6));
        for i in 2..6 {
            for j in 2..6 {
                assert_eq!(g.g()[(i, j)], -&g.g()[(j, i)]);
            }
        }
    }
}
