use super::{ensure, Check, Grid};
use crate::harmonic::hk;
use crate::operators::Superspace;
use crate::repr::{
    big_algebra_closure, branch_levels, check_irreducible, dim_lk, dim_lk_quotient, in_window,
    maximality_and_indecomposability, window_submodule, BranchVerdict, Realization, Verdict,
};

/// The closure verdict on `H_k` matches the predicate for `k <= 6`; in the
/// window, `R^{2k+M-2} H_{2-M-k}` is a proper submodule of dimension
/// `dim H_{2-M-k}`.
pub fn irreducibility_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m > 0) {
        let ss = Superspace::new(m, n);
        for k in 0..=grid.kmax_or(6) {
            let result = check_irreducible(&ss, k, seed)
                .map_err(|e| e.to_string())
                .and_then(|r| {
                    let verdict = match r.verdict {
                        Verdict::Irreducible => "irreducible".to_string(),
                        Verdict::Reducible => match &r.witness {
                            Some(w) => format!(
                                "reducible, witness {} closes to dimension {} of {}",
                                w.seed, w.closure_dim, r.dim
                            ),
                            None => "reducible".to_string(),
                        },
                        Verdict::ZeroModule => "zero module".to_string(),
                    };
                    ensure(r.matches_predicate(), || {
                        format!(
                            "{verdict}, closures {:?}, predicate irreducible: {}",
                            r.closure_verdict, r.predicate_irreducible
                        )
                    })
                    .map(|_| verdict)
                });
            out.push(Check::new(
                "irreducibility verdict",
                (m, n),
                Some(k),
                result,
            ));

            if in_window(m, n, k) {
                let low = (2 - ss.superdim() - k as i64) as usize;
                let result = window_submodule(&ss, k)
                    .map_err(|e| e.to_string())
                    .and_then(|w| {
                        let (wd, lowd, hd) = (w.dim(), hk(&ss, low).dim(), hk(&ss, k).dim());
                        ensure(wd == lowd && wd < hd, || {
                            format!("dimension {wd}, dim H_{low} = {lowd}, dim H_k = {hd}")
                        })
                        .map(|_| format!("dimension {wd} of {hd}"))
                    });
                out.push(Check::new("window submodule", (m, n), Some(k), result));
            }
        }
    }
    out
}

/// In the window: every basis vector outside the submodule generates `H_k`
/// and every sampled closure contains the submodule.
pub fn maximality_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in &grid.points {
        let ss = Superspace::new(m, n);
        for k in (0..=grid.kmax_or(6)).filter(|&k| in_window(m, n, k)) {
            let result = maximality_and_indecomposability(&ss, k, seed)
                .map_err(|e| e.to_string())
                .and_then(|r| {
                    ensure(r.maximal && r.indecomposable, || {
                        format!(
                            "maximal {}, indecomposable {}, seed vector {:?}",
                            r.maximal, r.indecomposable, r.failing_seed
                        )
                    })
                    .map(|_| {
                        format!(
                            "{} outside vectors, {} sampled closures",
                            r.outside_checked, r.sampled
                        )
                    })
                });
            out.push(Check::new(
                "maximal and indecomposable",
                (m, n),
                Some(k),
                result,
            ));
        }
    }
    out
}

/// The window formula for `dim L_(k,0,...,0)` against
/// `dim H_k - dim H_{2-M-k}` from kernels and the quotient realization.
pub fn lk_checks(points: &[(usize, usize, usize)]) -> Vec<Check> {
    points
        .iter()
        .map(|&(m, n, k)| {
            let ss = Superspace::new(m, n);
            let result = (|| {
                if !in_window(m, n, k) {
                    return Err(format!("({m},{n},{k}) is outside the window"));
                }
                let formula = dim_lk(m, n, k).map_err(|e| e.to_string())?;
                let low = (2 - ss.superdim() - k as i64) as usize;
                let kernels = (hk(&ss, k).dim() - hk(&ss, low).dim()) as u64;
                let quotient = dim_lk_quotient(&ss, k).map_err(|e| e.to_string())?;
                ensure(formula == kernels && kernels == quotient, || {
                    format!("formula {formula}, kernels {kernels}, quotient {quotient}")
                })
                .map(|_| format!("{formula}"))
            })();
            Check::new("dim L_k", (m, n), Some(k), result)
        })
        .collect()
}

/// Branching dimension identities in the completely reducible regimes; the
/// remaining regime is flagged and never summed.
pub fn branching_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m >= 2) {
        for k in 0..=grid.kmax_or(6) {
            let result = branch_levels(m, n, k)
                .map_err(|e| e.to_string())
                .and_then(|b| match (b.verdict, b.identity_holds) {
                    (BranchVerdict::NotCompletelyReducible, None) => {
                        Ok("not completely reducible".to_string())
                    }
                    (v, Some(true)) => Ok(format!(
                        "{v:?}: levels {:?}, {:?} sum to {}",
                        b.levels, b.level_dims, b.dim
                    )),
                    (v, other) => Err(format!(
                        "{v:?}: levels {:?}, {:?} against {} ({other:?})",
                        b.levels, b.level_dims, b.dim
                    )),
                });
            out.push(Check::new("branching", (m, n), Some(k), result));
        }
    }
    out
}

/// Supercommutator closure of the quadratic operators on `P_{<=3}` and the
/// centralizer property, with the Klein-twisted bosonic operators. The number
/// of brackets that escape the span with plain operators is recorded.
pub fn bigalgebra_checks(points: &[(usize, usize)]) -> Vec<Check> {
    points
        .iter()
        .map(|&(m, n)| {
            let klein = big_algebra_closure(m, n, 3, Realization::Klein);
            let literal = big_algebra_closure(m, n, 3, Realization::Literal);
            let summary = format!(
                "rank {} of expected {}, {} brackets; plain operators leave {} brackets outside the span",
                klein.rank, klein.expected_dim, klein.brackets_checked, literal.brackets_outside
            );
            let result = if klein.passed() {
                Ok(summary)
            } else {
                Err(format!(
                    "{summary}; {} outside, first {:?}, centralizer {}",
                    klein.brackets_outside, klein.first_failure, klein.centralizer_ok
                ))
            };
            Check::new("osp(4n+1|2m) closure", (m, n), None, result)
        })
        .collect()
}
