use super::{ensure, rng_for, sample_element, sample_group_element, Check, Grid};
use crate::exactmath::Rational;
use crate::harmonic::{hk, in_minus_2n, monomials_of_degree};
use crate::operators::Superspace;
use crate::sphereint::{
    berezin_sphere_oracle, darboux_residual, mean_series, pizzetti, sphere_mean, FischerIntegrator,
};
use crate::superalgebra::SuperPolynomial;

/// Largest `dim H_k * dim H_l` for which orthogonality is checked on full bases.
const PAIR_LIMIT: usize = 400;

fn monomials_up_to(ss: &Superspace, d: usize) -> Vec<SuperPolynomial> {
    (0..=d)
        .flat_map(|k| monomials_of_degree(ss.spec(), ss.block(), k))
        .map(|mono| SuperPolynomial::from_term(ss.spec(), mono, Rational::ONE))
        .collect()
}

/// Pizzetti series against the Berezin-form oracle on every monomial of
/// degree `<= 6`, and against the Fischer route when `M` is not in `-2N`.
pub fn integration_route_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m > 0) {
        let ss = Superspace::new(m, n);
        let dmax = grid.kmax_or(6);
        let monos = monomials_up_to(&ss, dmax);
        let fischer = (!in_minus_2n(ss.superdim()))
            .then(|| FischerIntegrator::new(&ss, dmax))
            .transpose();
        let mut oracle = Ok(format!("{} monomials", monos.len()));
        let mut route = match &fischer {
            Ok(Some(_)) => Ok(format!("{} monomials", monos.len())),
            Ok(None) => Ok(format!("skipped, M = {} in -2N", ss.superdim())),
            Err(e) => Err(e.to_string()),
        };
        for f in &monos {
            let Ok(p) = pizzetti(f, &ss) else {
                oracle = Err(format!("pizzetti failed on {f}"));
                break;
            };
            if oracle.is_ok() && berezin_sphere_oracle(f, &ss).ok().as_ref() != Some(&p) {
                oracle = Err(format!("differs on {f}: pizzetti {p}"));
            }
            if let (Ok(Some(fi)), true) = (&fischer, route.is_ok()) {
                let q = fi.integrate(f);
                if q != p {
                    route = Err(format!("differs on {f}: pizzetti {p}, Fischer route {q}"));
                }
            }
        }
        out.push(Check::new(
            "pizzetti = Berezin oracle",
            (m, n),
            None,
            oracle,
        ));
        out.push(Check::new("pizzetti = Fischer route", (m, n), None, route));
    }
    out
}

/// `T(R² f) = T(f)` and `T(L f) = 0` on monomials of degree `<= 4`,
/// `T(H_k H_l) = 0` for `k != l <= 4`, and `T(f ∘ S^{-1}) = T(f)` for five
/// sampled `S` preserving the metric.
pub fn integration_property_checks(grid: &Grid, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m > 0) {
        let ss = Superspace::new(m, n);
        let dmax = grid.kmax_or(4);
        let monos = monomials_up_to(&ss, dmax);
        let t = |f: &SuperPolynomial| pizzetti(f, &ss).expect("m > 0");
        let r2 = ss.r_squared_poly();
        let bad = monos.iter().find(|f| t(&(&r2 * *f)) != t(f));
        out.push(Check::new(
            "T(R^2 f) = T(f)",
            (m, n),
            None,
            ensure(bad.is_none(), || format!("f = {}", bad.expect("witness"))),
        ));

        let gens = ss.osp_generators();
        let mut killed = Ok(format!("{} generators", gens.len()));
        'outer: for (_, g) in &gens {
            for f in &monos {
                if !t(&g.apply(f)).is_zero() {
                    killed = Err(format!("{} on {f}", g.name()));
                    break 'outer;
                }
            }
        }
        out.push(Check::new("T(L f) = 0", (m, n), None, killed));

        let mut rng = rng_for(seed, (m, n), 4);
        let spaces: Vec<_> = (0..=dmax).map(|k| hk(&ss, k)).collect();
        let mut orth = Ok(String::new());
        'pairs: for k in 0..=dmax {
            for l in k + 1..=dmax {
                let (a, b) = (&spaces[k], &spaces[l]);
                let (xs, ys): (Vec<_>, Vec<_>) = if a.dim() * b.dim() <= PAIR_LIMIT {
                    (a.basis().to_vec(), b.basis().to_vec())
                } else {
                    (
                        (0..5).map(|_| sample_element(a, &mut rng)).collect(),
                        (0..5).map(|_| sample_element(b, &mut rng)).collect(),
                    )
                };
                for x in &xs {
                    for y in &ys {
                        if !t(&(x * y)).is_zero() {
                            orth = Err(format!("H_{k} vector {x} against H_{l} vector {y}"));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        out.push(Check::new("T(H_k H_l) = 0", (m, n), None, orth));

        let mut inv = Ok(String::new());
        'samples: for i in 0..5 {
            let s = sample_group_element(&ss, &mut rng);
            for _ in 0..3 {
                let f = SuperPolynomial::random(ss.spec(), &mut rng, 6, 6);
                let moved = f
                    .substitute_linear(&s, ss.block())
                    .map_err(|e| e.to_string());
                match moved {
                    Ok(g) if t(&g) == t(&f) => {}
                    Ok(_) => {
                        inv = Err(format!("sample {i} (seed {seed}) on {f}"));
                        break 'samples;
                    }
                    Err(e) => {
                        inv = Err(e);
                        break 'samples;
                    }
                }
            }
        }
        out.push(Check::new("T(f S^-1) = T(f)", (m, n), None, inv));
    }
    out
}

/// The Darboux residual of the spherical mean vanishes on every monomial of
/// degree `<= 5`, and the mean agrees with its series form.
pub fn darboux_checks(grid: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for &(m, n) in grid.points.iter().filter(|(m, _)| *m > 0) {
        let ss = Superspace::new(m, n);
        let monos = monomials_up_to(&ss, grid.kmax_or(5));
        let mut residual = Ok(format!("{} monomials", monos.len()));
        let mut series = Ok(String::new());
        for f in &monos {
            match darboux_residual(f, &ss) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => {
                    residual = Err(format!("f = {f}, residual {r}"));
                    break;
                }
                Err(e) => {
                    residual = Err(e.to_string());
                    break;
                }
            }
            if series.is_ok() {
                let same = match (sphere_mean(f, &ss), mean_series(f, &ss)) {
                    (Ok(a), Ok(b)) => a.poly == b.poly && a.pi_exponent == b.pi_exponent,
                    _ => false,
                };
                if !same {
                    series = Err(format!("f = {f}"));
                }
            }
        }
        out.push(Check::new("Darboux residual = 0", (m, n), None, residual));
        out.push(Check::new("mean = series form", (m, n), None, series));
    }
    out
}
