//! Invariant suites shared by the command-line tool and the test harness.
//!
//! Every check is exact. A failing check carries a witness (a polynomial, a
//! basis index or a seed) in its `detail`.

mod algebra;
mod integration;
mod representation;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactmath::{RatMatrix, Rational};
use crate::harmonic::GradedSpace;
use crate::operators::Superspace;
use crate::superalgebra::SuperPolynomial;

pub use algebra::{
    casimir_checks, decomposition_checks, dims_checks, fischer_checks, invariance_checks,
    projector_checks, sl2_checks,
};
pub use integration::{darboux_checks, integration_property_checks, integration_route_checks};
pub use representation::{
    bigalgebra_checks, branching_checks, irreducibility_checks, lk_checks, maximality_checks,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("bad grid {0:?}: expected \"default\" or a list like \"2:1,3:1\"")]
    BadGrid(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

/// Parameter points `(m, n)` with an optional override of the largest `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub points: Vec<(usize, usize)>,
    pub kmax: Option<usize>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            points: vec![
                (1, 1),
                (2, 1),
                (3, 1),
                (4, 1),
                (2, 2),
                (3, 2),
                (4, 2),
                (6, 2),
            ],
            kmax: None,
        }
    }
}

impl Grid {
    pub fn single(m: usize, n: usize) -> Self {
        Self {
            points: vec![(m, n)],
            kmax: None,
        }
    }

    pub fn with_kmax(mut self, kmax: Option<usize>) -> Self {
        self.kmax = kmax;
        self
    }

    /// The override if set, otherwise the suite default.
    pub fn kmax_or(&self, default: usize) -> usize {
        self.kmax.unwrap_or(default)
    }

    /// `"default"` or an inline list `"m:n,m:n,..."`.
    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let text = text.trim();
        if text == "default" {
            return Ok(Self::default());
        }
        let bad = || VerifyError::BadGrid(text.to_string());
        let points = text
            .split(',')
            .map(|item| {
                let (m, n) = item.trim().split_once(':').ok_or_else(bad)?;
                Ok((
                    m.trim().parse().map_err(|_| bad())?,
                    n.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if points.is_empty() {
            return Err(bad());
        }
        Ok(Self { points, kmax: None })
    }
}

/// The outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub k: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(
        name: &str,
        (m, n): (usize, usize),
        k: Option<usize>,
        result: Result<String, String>,
    ) -> Self {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.to_string(),
            m,
            n,
            k,
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAILED" };
        write!(f, "{status} {} (m={}, n={}", self.name, self.m, self.n)?;
        if let Some(k) = self.k {
            write!(f, ", k={k}")?;
        }
        write!(f, ")")?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Self {
            suite,
            passed,
            failed: checks.len() - passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Sl2,
    Invariance,
    Casimir,
    Dims,
    Fischer,
    Decomp,
    Projectors,
    Integration,
    Darboux,
    Irreducibility,
    Branching,
    Bigalgebra,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Sl2,
        Suite::Invariance,
        Suite::Casimir,
        Suite::Dims,
        Suite::Fischer,
        Suite::Decomp,
        Suite::Projectors,
        Suite::Integration,
        Suite::Darboux,
        Suite::Irreducibility,
        Suite::Branching,
        Suite::Bigalgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sl2 => "sl2",
            Suite::Invariance => "invariance",
            Suite::Casimir => "casimir",
            Suite::Dims => "dims",
            Suite::Fischer => "fischer",
            Suite::Decomp => "decomp",
            Suite::Projectors => "projectors",
            Suite::Integration => "integration",
            Suite::Darboux => "darboux",
            Suite::Irreducibility => "irreducibility",
            Suite::Branching => "branching",
            Suite::Bigalgebra => "bigalgebra",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Points used for the `dim L` comparison when no grid is given.
pub const LK_POINTS: [(usize, usize, usize); 4] = [(2, 1, 2), (2, 2, 3), (2, 2, 4), (4, 2, 2)];

/// Largest `m + 2n` for the `osp(4n+1|2m)` closure in grid runs.
pub const BIGALGEBRA_LIMIT: usize = 4;

/// Runs one suite, or every suite for [`Suite::All`], in a fixed order.
pub fn run_suite(suite: Suite, grid: &Grid, seed: u64) -> Vec<SuiteReport> {
    if suite == Suite::All {
        return Suite::EACH
            .into_iter()
            .flat_map(|s| run_suite(s, grid, seed))
            .collect();
    }
    let checks = match suite {
        Suite::Sl2 => sl2_checks(grid),
        Suite::Invariance => invariance_checks(grid, seed),
        Suite::Casimir => casimir_checks(grid),
        Suite::Dims => dims_checks(grid),
        Suite::Fischer => fischer_checks(grid, seed),
        Suite::Decomp => decomposition_checks(grid),
        Suite::Projectors => projector_checks(grid, seed),
        Suite::Integration => {
            let mut c = integration_route_checks(grid);
            c.extend(integration_property_checks(grid, seed));
            c
        }
        Suite::Darboux => darboux_checks(grid),
        Suite::Irreducibility => {
            let mut c = irreducibility_checks(grid, seed);
            c.extend(maximality_checks(grid, seed));
            c.extend(lk_checks(&grid_window_points(grid)));
            c
        }
        Suite::Branching => branching_checks(grid),
        Suite::Bigalgebra => {
            let small: Vec<_> = grid
                .points
                .iter()
                .copied()
                .filter(|&(m, n)| m > 0 && m + 2 * n <= BIGALGEBRA_LIMIT)
                .collect();
            bigalgebra_checks(&small)
        }
        Suite::All => unreachable!(),
    };
    vec![SuiteReport::new(suite, checks)]
}

/// Window points `(m, n, k)` of the grid with `k <= kmax` (default 6).
pub fn grid_window_points(grid: &Grid) -> Vec<(usize, usize, usize)> {
    let kmax = grid.kmax_or(6);
    grid.points
        .iter()
        .flat_map(|&(m, n)| (0..=kmax).map(move |k| (m, n, k)))
        .filter(|&(m, n, k)| crate::repr::in_window(m, n, k))
        .collect()
}

/// A pseudo-random rational `S` with `S^T g S = g`: a Cayley transform
/// `(I - A)(I + A)^{-1}` of a skew matrix on the bosonic block and a product of
/// symplectic transvections `I + c v v^T J` on the fermionic block.
pub fn sample_group_element<R: Rng>(ss: &Superspace, rng: &mut R) -> RatMatrix {
    let (m, d) = (ss.m(), ss.dim());
    let mut a = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let x = Rational::from_integer(rng.gen_range(-2..=2));
            a[(j, i)] = -&x;
            a[(i, j)] = x;
        }
    }
    let id = RatMatrix::identity(m);
    let cayley = id
        .sub(&a)
        .mul(
            &id.add(&a)
                .inverse()
                .expect("I + A is invertible for skew A"),
        )
        .expect("square");
    let g = ss.metric().g();
    let nf = d - m;
    let mut j = RatMatrix::zeros(nf, nf);
    for r in 0..nf {
        for c in 0..nf {
            j[(r, c)] = g[(m + r, m + c)].clone();
        }
    }
    let mut sym = RatMatrix::identity(nf);
    for _ in 0..3 {
        let v: Vec<Rational> = (0..nf)
            .map(|_| Rational::from_integer(rng.gen_range(-2..=2)))
            .collect();
        let c = Rational::new(rng.gen_range(1..=3), rng.gen_range(1..=2));
        let mut vvt = RatMatrix::zeros(nf, nf);
        for r in 0..nf {
            for s in 0..nf {
                vvt[(r, s)] = &(&c * &v[r]) * &v[s];
            }
        }
        let t = RatMatrix::identity(nf).add(&vvt.mul(&j).expect("square"));
        sym = sym.mul(&t).expect("square");
    }
    let mut s = RatMatrix::zeros(d, d);
    for r in 0..m {
        for c in 0..m {
            s[(r, c)] = cayley[(r, c)].clone();
        }
    }
    for r in 0..nf {
        for c in 0..nf {
            s[(m + r, m + c)] = sym[(r, c)].clone();
        }
    }
    s
}

/// A pseudo-random nonzero homogeneous polynomial of degree `k` (`m > 0`).
pub fn sample_homogeneous<R: Rng>(
    ss: &Superspace,
    rng: &mut R,
    k: usize,
    terms: usize,
) -> SuperPolynomial {
    loop {
        let mut p = SuperPolynomial::zero(ss.spec());
        for _ in 0..terms {
            p.add_scaled(
                &Rational::ONE,
                &SuperPolynomial::random_monomial(ss.spec(), rng, k),
            );
        }
        let p = p.homogeneous_part(k);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A pseudo-random combination of the basis of `space` with small
/// coefficients, or zero for the zero space.
pub fn sample_element<R: Rng>(space: &GradedSpace, rng: &mut R) -> SuperPolynomial {
    let coords: Vec<Rational> = (0..space.dim())
        .map(|_| Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
        .collect();
    space.combine_dense(&coords)
}

pub(crate) fn rng_for(seed: u64, (m, n): (usize, usize), salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (m as u64) << 8 ^ (n as u64) << 16 ^ salt << 24)
}

/// `Ok` with an empty detail when `ok`, otherwise `Err(witness())`.
pub(crate) fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<String, String> {
    if ok {
        Ok(String::new())
    } else {
        Err(witness())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(Grid::parse("default").unwrap(), Grid::default());
        assert_eq!(
            Grid::parse("2:1, 3:0").unwrap().points,
            vec![(2, 1), (3, 0)]
        );
        assert!(Grid::parse("2-1").is_err());
        assert!(Grid::parse("").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn sampled_group_elements_preserve_the_metric() {
        for (m, n) in [(1, 1), (3, 1), (2, 2)] {
            let ss = Superspace::new(m, n);
            let mut rng = rng_for(7, (m, n), 0);
            for _ in 0..3 {
                assert!(ss
                    .metric()
                    .preserved_by(&sample_group_element(&ss, &mut rng)));
            }
        }
    }

    #[test]
    fn window_points_of_default_grid() {
        let pts = grid_window_points(&Grid::default());
        assert_eq!(pts, vec![(2, 1, 2), (2, 2, 3), (2, 2, 4), (4, 2, 2)]);
    }
}
