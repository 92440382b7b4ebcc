use super::{
    ensure, rng_for, sample_element, sample_group_element, sample_homogeneous, Check, Grid,
};
use crate::exactmath::Rational;
use crate::harmonic::{
    component_labels, decompose_hk, dim_hk_formula, dim_pk, fischer, fkpq, hk, in_minus_2n, pk,
    projector, FischerSplitter, GradedSpace, HarmonicError,
};
use crate::operators::{first_disagreement, LinearOp, Superspace};
use crate::repr::gram_skew_check;
use crate::superalgebra::SuperPolynomial;

/// Largest `dim H_k` for which the Gram pairing is checked.
const GRAM_LIMIT: usize = 60;

fn agree(a: &LinearOp, b: &LinearOp, space: &GradedSpace) -> Result<String, String> {
    match first_disagreement(a, b, space) {
        None => Ok(String::new()),
        Some(i) => Err(format!("differs on {}", space.basis()[i])),
    }
}

fn vanishes(a: &LinearOp, space: &GradedSpace) -> Result<String, String> {
    agree(a, &LinearOp::zero(a.degree_shift(), a.parity()), space)
}

/// `[∇²/2, R²/2] = E + M/2`, `[∇²/2, E + M/2] = ∇²`, `[R²/2, E + M/2] = -R²`
/// on `P_k`, `k <= 6`.
pub fn sl2_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in &grid.points {
        let ss = Superspace::new(m, n);
        let half = Rational::new(1, 2);
        let lap = ss.laplacian().scale(half.clone());
        let r2 = ss.r_squared().scale(half);
        let h = ss.euler().shifted(Rational::new(ss.superdim(), 2));
        let relations = [
            ("sl2 [E,F] = H", lap.supercommutator(&r2), h.clone()),
            (
                "sl2 [E,H] = 2E",
                lap.supercommutator(&h),
                lap.scale(Rational::from_integer(2)),
            ),
            (
                "sl2 [F,H] = -2F",
                r2.supercommutator(&h),
                r2.scale(Rational::from_integer(-2)),
            ),
        ];
        for k in 0..=grid.kmax_or(6) {
            let space = pk(&ss, k);
            for (name, a, b) in &relations {
                out.push(Check::new(name, (m, n), Some(k), agree(a, b, &space)));
            }
        }
    }
    out
}

/// Generators commute with `∇²`, `E` and `R²`, preserve `H_k`, are skew for
/// the sphere pairing, and sampled group elements fix `R²`.
pub fn invariance_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in &grid.points {
        let ss = Superspace::new(m, n);
        let gens = ss.osp_generators();
        let lap = ss.laplacian();
        let euler = ss.euler();
        let r2 = ss.r_squared_poly();
        let killed = gens.iter().find(|(_, g)| !g.apply(&r2).is_zero());
        out.push(Check::new(
            "generators annihilate R^2",
            (m, n),
            None,
            ensure(killed.is_none(), || {
                format!("{} R^2 != 0", killed.expect("some generator").1.name())
            }),
        ));
        let mut rng = rng_for(seed, (m, n), 1);
        let mut bad = None;
        for i in 0..5 {
            let s = sample_group_element(&ss, &mut rng);
            let moved = r2
                .substitute_linear(&s, ss.block())
                .map_err(|e| e.to_string());
            if !ss.metric().preserved_by(&s) || moved.as_ref() != Ok(&r2) {
                bad = Some(i);
                break;
            }
        }
        out.push(Check::new(
            "sampled group elements fix R^2",
            (m, n),
            None,
            ensure(bad.is_none(), || {
                format!("sample {} (seed {seed})", bad.unwrap_or(0))
            }),
        ));
        for k in 0..=grid.kmax_or(4) {
            let space = pk(&ss, k);
            let h = hk(&ss, k);
            let mut lap_ok = Ok(String::new());
            let mut euler_ok = Ok(String::new());
            let mut hk_ok = Ok(String::new());
            for (_, g) in &gens {
                if lap_ok.is_ok() {
                    lap_ok = vanishes(&g.supercommutator(&lap), &space)
                        .map_err(|e| format!("{}: {e}", g.name()));
                }
                if euler_ok.is_ok() {
                    euler_ok = vanishes(&g.supercommutator(&euler), &space)
                        .map_err(|e| format!("{}: {e}", g.name()));
                }
                if hk_ok.is_ok() {
                    if let Some(b) = h.basis().iter().find(|b| !h.contains(&g.apply(b))) {
                        hk_ok = Err(format!("{} moves {b} out of H_k", g.name()));
                    }
                }
            }
            out.push(Check::new("[L, laplacian] = 0", (m, n), Some(k), lap_ok));
            out.push(Check::new("[L, E] = 0", (m, n), Some(k), euler_ok));
            out.push(Check::new("L preserves H_k", (m, n), Some(k), hk_ok));
            if h.dim() <= GRAM_LIMIT {
                let skew = gram_skew_check(&ss, k).map_err(|e| e.to_string());
                out.push(Check::new(
                    "generators skew for the sphere pairing",
                    (m, n),
                    Some(k),
                    match skew {
                        Ok(true) => Ok(String::new()),
                        Ok(false) => Err("A^T G != -P G A".into()),
                        Err(e) => Err(e),
                    },
                ));
            }
        }
    }
    out
}

/// The Casimir built from the generators equals the Laplace–Beltrami operator
/// on `P_k`, `k <= 4`, for `m + 2n <= 8`.
pub fn casimir_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, n)| m + 2 * n <= 8) {
        let ss = Superspace::new(m, n);
        let cas = ss.casimir_form();
        let lb = ss.laplace_beltrami();
        for k in 0..=grid.kmax_or(4) {
            out.push(Check::new(
                "casimir = Laplace-Beltrami",
                (m, n),
                Some(k),
                agree(&cas, &lb, &pk(&ss, k)),
            ));
        }
    }
    out
}

/// Kernel dimension of the Laplacian against the closed formula, `k <= 8`,
/// plus the spot values `dim H_2 = 5` for `(3, 0)` and `7` for `(2, 1)`.
pub fn dims_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in &grid.points {
        let ss = Superspace::new(m, n);
        for k in 0..=grid.kmax_or(8) {
            let p = pk(&ss, k).dim() as u64;
            let expected = dim_pk(m, n, k);
            out.push(Check::new(
                "dim P_k",
                (m, n),
                Some(k),
                ensure(p == expected, || format!("counted {p}, formula {expected}")),
            ));
            let kernel = hk(&ss, k).dim() as u64;
            let result = match dim_hk_formula(m, n, k) {
                Ok(f) => ensure(kernel == f, || format!("kernel {kernel}, formula {f}"))
                    .map(|_| format!("{kernel}")),
                Err(_) => Ok(format!("{kernel} (no formula for m = 0)")),
            };
            out.push(Check::new("dim H_k", (m, n), Some(k), result));
        }
    }
    for (m, n, k, v) in [(3, 0, 2, 5), (2, 1, 2, 7)] {
        let kernel = hk(&Superspace::new(m, n), k).dim();
        out.push(Check::new(
            "dim H_k spot value",
            (m, n),
            Some(k),
            ensure(kernel == v, || format!("kernel {kernel}, expected {v}")),
        ));
    }
    out
}

/// `P_k = sum_j R^{2j} H_{k-2j}` as a direct sum and the splitter reassembles
/// sampled polynomials; for `M` in `-2N` the obstruction must be reported.
pub fn fischer_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in &grid.points {
        let ss = Superspace::new(m, n);
        let kmax = grid.kmax_or(6);
        if m > 0 && in_minus_2n(ss.superdim()) {
            let refused = matches!(fischer(&ss, 2), Err(HarmonicError::FischerObstruction(_)))
                && FischerSplitter::new(&ss, 2).is_err();
            out.push(Check::new(
                "Fischer obstruction reported",
                (m, n),
                None,
                ensure(refused, || "decomposition was not refused".into())
                    .map(|_| format!("M = {}", ss.superdim())),
            ));
            continue;
        }
        let splitter = FischerSplitter::new(&ss, kmax).ok();
        let r2 = ss.r_squared_poly();
        let lap = ss.laplacian();
        let mut rng = rng_for(seed, (m, n), 2);
        for k in 0..=kmax {
            let result = fischer(&ss, k)
                .map_err(|e| e.to_string())
                .and_then(|pieces| {
                    let total: usize = pieces.iter().map(|p| p.space.dim()).sum();
                    let all = pieces
                        .iter()
                        .flat_map(|p| p.space.basis().iter().cloned())
                        .collect();
                    let direct = GradedSpace::from_basis(ss.spec(), Some(k), all).is_ok();
                    ensure(direct && total as u64 == dim_pk(m, n, k), || {
                        format!("pieces of total dimension {total}, direct sum: {direct}")
                    })
                });
            out.push(Check::new("Fischer direct sum", (m, n), Some(k), result));

            let Some(splitter) = &splitter else { continue };
            let mut result = Ok(String::new());
            for _ in 0..3 {
                let f = sample_homogeneous(&ss, &mut rng, k, 6);
                let parts = splitter.split(&f, k);
                let mut sum = SuperPolynomial::zero(ss.spec());
                let mut rj = SuperPolynomial::one(ss.spec());
                for h in &parts {
                    sum = &sum + &(&rj * h);
                    rj = &rj * &r2;
                }
                let harmonic = parts.iter().all(|h| lap.apply(h).is_zero());
                if sum != f || !harmonic {
                    result = Err(format!("splitting {f}"));
                    break;
                }
            }
            out.push(Check::new(
                "Fischer splitter reassembles",
                (m, n),
                Some(k),
                result,
            ));
        }
    }
    out
}

/// Components `f_{l,p,q} H_p ⊗ H_q` of `H_k`: harmonic, independent, of total
/// dimension `dim H_k`, and linked by the odd generators as
/// `L_{i, m+2j-1} f_{l,p,q} = 2l (M/2 + p + q + l - 1) f_{l-1,p+1,q+1} x_i e_{2j-1}`.
pub fn decomposition_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m > 0) {
        let ss = Superspace::new(m, n);
        let lap = ss.laplacian();
        for k in 0..=grid.kmax_or(6) {
            let comps = decompose_hk(&ss, k);
            let dims: Vec<usize> = comps.iter().map(|c| c.space.dim()).collect();
            let h = hk(&ss, k).dim();
            let total: usize = dims.iter().sum();
            let not_harmonic = comps.iter().find_map(|c| {
                c.space
                    .basis()
                    .iter()
                    .find(|b| !lap.apply(b).is_zero())
                    .map(|b| format!("component ({},{},{}) vector {b}", c.l, c.p, c.q))
            });
            let all = comps
                .iter()
                .flat_map(|c| c.space.basis().iter().cloned())
                .collect();
            let direct = GradedSpace::from_basis(ss.spec(), Some(k), all).is_ok();
            let result = match not_harmonic {
                Some(w) => Err(format!("not harmonic: {w}")),
                None => ensure(direct && total == h, || {
                    format!("dims {dims:?} sum to {total}, dim H_k = {h}, direct sum: {direct}")
                })
                .map(|_| format!("dims {dims:?}")),
            };
            out.push(Check::new("H_k components", (m, n), Some(k), result));
        }
        out.push(Check::new(
            "odd generators lower the level",
            (m, n),
            None,
            level_lowering(&ss, grid.kmax_or(6)),
        ));
    }
    out
}

fn level_lowering(ss: &Superspace, kmax: usize) -> Result<String, String> {
    let (m, n) = (ss.m(), ss.n());
    let big_m = ss.superdim();
    let mut count = 0;
    for k in 0..=kmax {
        for (l, p, q) in component_labels(n, k) {
            if l == 0 || q + 1 > n {
                continue;
            }
            let f = fkpq(ss, l, p, q).map_err(|e| e.to_string())?;
            let g = fkpq(ss, l - 1, p + 1, q + 1).map_err(|e| e.to_string())?;
            let c = Rational::new(2 * l as i64 * (big_m + 2 * (p + q + l) as i64 - 2), 2);
            for i in 0..m {
                for j in 0..n {
                    let e = m + 2 * j;
                    let gen = ss.osp_generator(i, e).map_err(|e| e.to_string())?;
                    let xi = SuperPolynomial::var(ss.spec(), ss.var(i));
                    let ej = SuperPolynomial::var(ss.spec(), ss.var(e));
                    let rhs = (&(&g * &xi) * &ej).scale(&c);
                    if gen.apply(&f) != rhs {
                        return Err(format!("{} on f_({l},{p},{q})", gen.name()));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} identities"))
}

/// For `m >= 3`: each projector acts as 1 on its component and 0 on the
/// others, and on sampled harmonics the projectors are idempotent, pairwise
/// orthogonal and sum to the identity.
pub fn projector_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m >= 3) {
        let ss = Superspace::new(m, n);
        let mut rng = rng_for(seed, (m, n), 3);
        for k in 0..=grid.kmax_or(6) {
            out.push(Check::new(
                "projectors",
                (m, n),
                Some(k),
                projectors_at(&ss, k, &mut rng),
            ));
        }
    }
    out
}

fn projectors_at(ss: &Superspace, k: usize, rng: &mut impl rand::Rng) -> Result<String, String> {
    let comps = decompose_hk(ss, k);
    let qs = comps
        .iter()
        .map(|c| projector(ss, k, c.l, c.q).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    for (a, qa) in qs.iter().enumerate() {
        for (b, c) in comps.iter().enumerate() {
            for v in c.space.basis() {
                let expected = if a == b {
                    v.clone()
                } else {
                    SuperPolynomial::zero(ss.spec())
                };
                if qa.apply(v) != expected {
                    return Err(format!("{} on {v}", qa.name()));
                }
            }
        }
    }
    let h = hk(ss, k);
    for _ in 0..3 {
        let f = sample_element(&h, rng);
        let images: Vec<SuperPolynomial> = qs.iter().map(|q| q.apply(&f)).collect();
        let mut sum = SuperPolynomial::zero(ss.spec());
        for (a, qa) in qs.iter().enumerate() {
            sum = &sum + &images[a];
            for (b, img) in images.iter().enumerate() {
                let twice = qa.apply(img);
                let ok = if a == b {
                    twice == *img
                } else {
                    twice.is_zero()
                };
                if !ok {
                    return Err(format!("{} after projector {b} on {f}", qa.name()));
                }
            }
        }
        if sum != f {
            return Err(format!("projectors do not sum to the identity on {f}"));
        }
    }
    Ok(format!("{} projectors", qs.len()))
}
