use std::fmt::Write as _;

use clap::Args;
use serde_json::{json, Value};
use superharm::harmonic::{decompose_hk, dim_hk_formula, dim_pk, fischer as fischer_pieces, hk};
use superharm::repr::{branch_levels, dim_lk, in_window, BranchVerdict};
use superharm::sphereint::{
    berezin_sphere_oracle, darboux_operator, fischer_route_integral, pizzetti as pizzetti_integral,
    sphere_mean,
};
use superharm::superalgebra::ParseError;
use superharm::verify::{run_suite, Grid, Suite};
use superharm::{parse, SuperPolynomial, Superspace};

use crate::output::{rational, scalar_json, scalar_text, Output};
use crate::{Graded, Point, WithPoly};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse polynomial: {error}\n  {text}\n  {caret}^")]
    Parse {
        error: ParseError,
        text: String,
        caret: String,
    },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_poly(ss: &Superspace, text: &str) -> Result<SuperPolynomial, CliError> {
    parse(ss.spec(), text).map_err(|error| CliError::Parse {
        caret: " ".repeat(error.position()),
        error,
        text: text.to_string(),
    })
}

fn params(p: Point, k: Option<usize>) -> Value {
    match k {
        Some(k) => json!({ "m": p.m, "n": p.n, "k": k }),
        None => json!({ "m": p.m, "n": p.n }),
    }
}

fn require_m(p: Point) -> Result<(), CliError> {
    if p.m == 0 {
        Err(CliError::Domain("this command needs m > 0".into()))
    } else {
        Ok(())
    }
}

pub fn dim(a: Graded) -> Result<Output, CliError> {
    let Graded { point: p, k } = a;
    let ss = Superspace::new(p.m, p.n);
    let kernel = hk(&ss, k).dim() as u64;
    let formula = dim_hk_formula(p.m, p.n, k).ok();
    let lk = dim_lk(p.m, p.n, k).ok();
    let window = in_window(p.m, p.n, k);
    let show = |v: Option<u64>| v.map_or("n/a".to_string(), |x| x.to_string());
    let failure = formula
        .filter(|&f| f != kernel)
        .map(|f| format!("dim H_k: kernel {kernel}, formula {f}"));
    let dim_p = dim_pk(p.m, p.n, k);
    Ok(Output {
        command: "dim",
        params: params(p, Some(k)),
        result: json!({
            "dim_Pk": dim_p,
            "dim_Hk": kernel,
            "dim_Hk_formula": formula.map_or(json!("n/a"), Value::from),
            "dim_Lk": lk.map_or(json!("n/a"), Value::from),
            "window": window,
        }),
        table: (
            vec!["m", "n", "k", "dim_Pk", "dim_Hk", "dim_Hk_formula", "dim_Lk", "window"],
            vec![vec![
                p.m.to_string(),
                p.n.to_string(),
                k.to_string(),
                dim_p.to_string(),
                kernel.to_string(),
                show(formula),
                show(lk),
                window.to_string(),
            ]],
        ),
        text: format!(
            "dim P_k = {dim_p}\ndim H_k = {kernel} (formula: {})\ndim L_k = {}\nreducible window: {window}\n",
            show(formula),
            show(lk)
        ),
        failure,
    })
}

pub fn pizzetti(a: &WithPoly) -> Result<Output, CliError> {
    let p = a.point;
    require_m(p)?;
    let ss = Superspace::new(p.m, p.n);
    let f = parse_poly(&ss, &a.poly)?;
    let value = pizzetti_integral(&f, &ss).map_err(domain)?;
    let oracle = berezin_sphere_oracle(&f, &ss).map_err(domain)?;
    let route = fischer_route_integral(&f, &ss);
    let mut failure = (oracle != value).then(|| format!("Berezin oracle gives {oracle}"));
    if let Ok(r) = &route {
        if *r != value && failure.is_none() {
            failure = Some(format!("Fischer route gives {r}"));
        }
    }
    let (route_json, route_text) = match &route {
        Ok(r) => (scalar_json(r), r.to_string()),
        Err(e) => (json!(e.to_string()), e.to_string()),
    };
    Ok(Output {
        command: "pizzetti",
        params: json!({ "m": p.m, "n": p.n, "poly": a.poly }),
        result: json!({
            "integral": scalar_json(&value),
            "berezin_oracle": scalar_json(&oracle),
            "fischer_route": route_json,
        }),
        table: (
            vec!["route", "coeff", "pi_exponent"],
            [("pizzetti", &value), ("berezin_oracle", &oracle)]
                .into_iter()
                .chain(route.as_ref().ok().map(|r| ("fischer_route", r)))
                .map(|(name, s)| {
                    vec![
                        name.to_string(),
                        rational(&s.coeff),
                        s.pi_exponent.to_string(),
                    ]
                })
                .collect(),
        ),
        text: format!(
            "integral = {}\nBerezin oracle = {oracle}\nFischer route = {route_text}\n",
            scalar_text(&value)
        ),
        failure,
    })
}

pub fn decompose(a: Graded) -> Result<Output, CliError> {
    let Graded { point: p, k } = a;
    require_m(p)?;
    let ss = Superspace::new(p.m, p.n);
    let comps = decompose_hk(&ss, k);
    let total: usize = comps.iter().map(|c| c.space.dim()).sum();
    let kernel = hk(&ss, k).dim();
    let rows: Vec<Vec<String>> = comps
        .iter()
        .map(|c| {
            vec![
                c.l.to_string(),
                c.p.to_string(),
                c.q.to_string(),
                c.space.dim().to_string(),
            ]
        })
        .collect();
    let mut text = String::new();
    for c in &comps {
        let _ = writeln!(
            text,
            "(l,p,q) = ({},{},{}): dim {}",
            c.l,
            c.p,
            c.q,
            c.space.dim()
        );
    }
    let _ = writeln!(text, "total {total}, dim H_k {kernel}");
    Ok(Output {
        command: "decompose",
        params: params(p, Some(k)),
        result: json!({
            "components": comps.iter().map(|c| json!({
                "l": c.l, "p": c.p, "q": c.q, "dim": c.space.dim(),
            })).collect::<Vec<_>>(),
            "total": total,
            "dim_Hk": kernel,
        }),
        table: (vec!["l", "p", "q", "dim"], rows),
        text,
        failure: (total != kernel)
            .then(|| format!("components sum to {total}, dim H_k = {kernel}")),
    })
}

pub fn fischer(a: Graded) -> Result<Output, CliError> {
    let Graded { point: p, k } = a;
    let ss = Superspace::new(p.m, p.n);
    let pieces = fischer_pieces(&ss, k).map_err(domain)?;
    let total: usize = pieces.iter().map(|x| x.space.dim()).sum();
    let dim_p = dim_pk(p.m, p.n, k);
    let mut text = String::new();
    for x in &pieces {
        let _ = writeln!(
            text,
            "R^{} H_{}: dim {}",
            2 * x.j,
            k - 2 * x.j,
            x.space.dim()
        );
    }
    let _ = writeln!(text, "total {total}, dim P_k {dim_p}");
    Ok(Output {
        command: "fischer",
        params: params(p, Some(k)),
        result: json!({
            "pieces": pieces.iter().map(|x| json!({
                "j": x.j, "harmonic_degree": k - 2 * x.j, "dim": x.space.dim(),
            })).collect::<Vec<_>>(),
            "total": total,
            "dim_Pk": dim_p,
        }),
        table: (
            vec!["j", "harmonic_degree", "dim"],
            pieces
                .iter()
                .map(|x| {
                    vec![
                        x.j.to_string(),
                        (k - 2 * x.j).to_string(),
                        x.space.dim().to_string(),
                    ]
                })
                .collect(),
        ),
        text,
        failure: (total as u64 != dim_p)
            .then(|| format!("pieces sum to {total}, dim P_k = {dim_p}")),
    })
}

pub fn mean(a: &WithPoly) -> Result<Output, CliError> {
    let p = a.point;
    require_m(p)?;
    let ss = Superspace::new(p.m, p.n);
    let f = parse_poly(&ss, &a.poly)?;
    let mean = sphere_mean(&f, &ss).map_err(domain)?;
    let residual = darboux_operator(&mean);
    let rows = mean
        .poly
        .sorted_terms()
        .into_iter()
        .map(|(mono, c)| {
            let term =
                SuperPolynomial::from_term(mean.spec(), mono.clone(), superharm::Rational::ONE);
            vec![term.to_string(), rational(c), mean.pi_exponent.to_string()]
        })
        .collect();
    Ok(Output {
        command: "mean",
        params: json!({ "m": p.m, "n": p.n, "poly": a.poly }),
        result: json!({
            "mean": mean.poly.to_string(),
            "pi_exponent": mean.pi_exponent,
            "darboux_residual": residual.to_string(),
        }),
        table: (vec!["monomial", "coeff", "pi_exponent"], rows),
        text: format!(
            "mean = ({}) * pi^{}\nDarboux residual = {residual}\n",
            mean.poly, mean.pi_exponent
        ),
        failure: (!residual.is_zero()).then(|| format!("Darboux residual {residual}")),
    })
}

pub fn branch(a: Graded) -> Result<Output, CliError> {
    let Graded { point: p, k } = a;
    let b = branch_levels(p.m, p.n, k).map_err(domain)?;
    let verdict = match b.verdict {
        BranchVerdict::FullRange => "full_range",
        BranchVerdict::Truncated => "truncated",
        BranchVerdict::NotCompletelyReducible => "not_completely_reducible",
    };
    let mut text = format!("{verdict}, dim L_k = {}\n", b.dim);
    for (l, d) in b.levels.iter().zip(&b.level_dims) {
        let _ = writeln!(text, "  l = {l}: dim {d}");
    }
    Ok(Output {
        command: "branch",
        params: params(p, Some(k)),
        result: json!({
            "verdict": verdict,
            "dim_Lk": b.dim,
            "levels": b.levels.iter().zip(&b.level_dims)
                .map(|(l, d)| json!({ "l": l, "dim": d })).collect::<Vec<_>>(),
            "identity_holds": b.identity_holds,
        }),
        table: (
            vec!["l", "dim"],
            b.levels
                .iter()
                .zip(&b.level_dims)
                .map(|(l, d)| vec![l.to_string(), d.to_string()])
                .collect(),
        ),
        text,
        failure: (b.identity_holds == Some(false)).then(|| {
            format!(
                "level dimensions {:?} do not sum to {}",
                b.level_dims, b.dim
            )
        }),
    })
}

#[derive(Args)]
pub struct VerifyArgs {
    /// sl2, invariance, casimir, dims, fischer, decomp, projectors,
    /// integration, darboux, irreducibility, branching, bigalgebra or all.
    pub suite: String,
    /// "default" or inline points "m:n,m:n".
    #[arg(long, conflicts_with_all = ["m", "n"])]
    pub grid: Option<String>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    /// Largest degree, overriding the suite default.
    #[arg(long)]
    pub kmax: Option<usize>,
}

pub fn verify(a: &VerifyArgs, seed: u64) -> Result<Output, CliError> {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    let grid = match (&a.grid, a.m, a.n) {
        (Some(g), _, _) => Grid::parse(g).map_err(|e| CliError::Usage(e.to_string()))?,
        (None, Some(m), Some(n)) => Grid::single(m, n),
        _ => Grid::default(),
    }
    .with_kmax(a.kmax);
    let reports = run_suite(suite, &grid, seed);
    let mut rows = Vec::new();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "suite {}: {} passed, {} failed",
            r.suite, r.passed, r.failed
        );
        for c in &r.checks {
            let _ = writeln!(text, "  {c}");
            rows.push(vec![
                r.suite.to_string(),
                c.name.clone(),
                c.m.to_string(),
                c.n.to_string(),
                c.k.map_or(String::new(), |k| k.to_string()),
                c.passed.to_string(),
                c.detail.clone(),
            ]);
        }
    }
    let failure = reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| format!("[{}] {c}", r.suite)));
    Ok(Output {
        command: "verify",
        params: json!({ "suite": suite, "grid": grid, "seed": seed }),
        result: json!({ "suites": reports }),
        table: (
            vec!["suite", "check", "m", "n", "k", "passed", "detail"],
            rows,
        ),
        text,
        failure,
    })
}
