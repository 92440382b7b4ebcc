use superharm::harmonic::pk;
use superharm::operators::{first_disagreement, inner_product, matrix_of};
use superharm::superalgebra::BlockId;
use superharm::{parse, LinearOp, RatMatrix, Rational, SuperPolynomial, Superspace, VarSpec};

use std::sync::Arc;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn poly(ss: &Superspace, text: &str) -> SuperPolynomial {
    parse(ss.spec(), text).unwrap()
}

#[test]
fn laplacian_examples() {
    let ss = Superspace::new(1, 1);
    assert_eq!(
        ss.laplacian().apply(&poly(&ss, "x1^2")),
        SuperPolynomial::constant(ss.spec(), q(2))
    );
    for n in 1..=3 {
        let ss = Superspace::new(2, n);
        let lap = ss.laplacian();
        assert_eq!(
            lap.apply(&ss.theta2_poly()),
            SuperPolynomial::constant(ss.spec(), q(-4 * n as i64))
        );
        assert_eq!(
            lap.apply(&ss.r_squared_poly()),
            SuperPolynomial::constant(ss.spec(), q(2 * ss.superdim()))
        );
    }
    assert_eq!(
        Superspace::new(1, 1).r_squared_poly(),
        poly(&Superspace::new(1, 1), "x1^2 - e1*e2")
    );
}

#[test]
fn euler_examples() {
    let ss = Superspace::new(2, 1);
    let e = ss.euler();
    assert_eq!(e.apply(&poly(&ss, "x1^2*e1")), poly(&ss, "3*x1^2*e1"));
    assert!(e.apply(&poly(&ss, "1")).is_zero());
    assert_eq!(
        e.apply(&ss.r_squared_poly()),
        ss.r_squared_poly().scale(&q(2))
    );
}

#[test]
fn sl2_relations_small() {
    for (m, n) in [(1, 1), (2, 1), (3, 2), (0, 2)] {
        let ss = Superspace::new(m, n);
        let half = Rational::new(1, 2);
        let lap = ss.laplacian().scale(half.clone());
        let r2 = ss.r_squared().scale(half.clone());
        let h = ss.euler().shifted(Rational::new(ss.superdim(), 2));
        for k in 0..=4 {
            let space = pk(&ss, k);
            assert_eq!(
                first_disagreement(&lap.supercommutator(&r2), &h, &space),
                None
            );
            assert_eq!(
                first_disagreement(&lap.supercommutator(&h), &lap.scale(q(2)), &space),
                None
            );
            assert_eq!(
                first_disagreement(&r2.supercommutator(&h), &r2.scale(q(-2)), &space),
                None
            );
        }
    }
}

#[test]
fn generator_examples() {
    let ss = Superspace::new(2, 1);
    let l12 = ss.osp_generator(0, 1).unwrap();
    assert_eq!(l12.apply(&poly(&ss, "x1")), poly(&ss, "-x2"));
    assert_eq!(ss.osp_generators().len(), 1 + 4 + 3);
    for (_, g) in ss.osp_generators() {
        assert!(g.apply(&ss.r_squared_poly()).is_zero(), "{}", g.name());
    }
}

#[test]
fn generators_commute_with_laplacian() {
    for (m, n) in [(2, 1), (1, 2), (3, 1)] {
        let ss = Superspace::new(m, n);
        let lap = ss.laplacian();
        for k in 0..=4 {
            let space = pk(&ss, k);
            for (_, g) in ss.osp_generators() {
                let c = g.supercommutator(&lap);
                assert_eq!(
                    first_disagreement(&c, &LinearOp::zero(-2, c.parity()), &space),
                    None,
                    "{}",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn casimir_matches_laplace_beltrami() {
    for (m, n) in [(2, 0), (3, 0), (2, 1), (1, 1), (3, 1), (0, 1)] {
        let ss = Superspace::new(m, n);
        let cas = ss.casimir_form();
        let lb = ss.laplace_beltrami();
        for k in 0..=4 {
            assert_eq!(
                first_disagreement(&cas, &lb, &pk(&ss, k)),
                None,
                "(m,n,k) = ({m},{n},{k})"
            );
        }
    }
}

#[test]
fn gl_generators() {
    let ss = Superspace::new(2, 1);
    let e11 = ss.gl_generator(0, 0).unwrap();
    assert_eq!(e11.apply(&poly(&ss, "x1")), poly(&ss, "x1"));
    let mut sum = LinearOp::zero(0, superharm::Parity::Even);
    for i in 0..ss.dim() {
        sum = sum.add(&ss.gl_generator(i, i).unwrap());
    }
    let p2 = pk(&ss, 2);
    assert_eq!(first_disagreement(&sum, &ss.euler(), &p2), None);
    // [E_ij, E_kl] = δ_jk E_il - (-1)^{([i]+[j])([k]+[l])} δ_il E_kj
    let d = ss.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let a = ss.gl_generator(i, j).unwrap();
                    let b = ss.gl_generator(k, l).unwrap();
                    let lhs = matrix_of(&a.supercommutator(&b), &p2, &p2).unwrap();
                    let mut rhs = RatMatrix::zeros(p2.dim(), p2.dim());
                    if j == k {
                        rhs =
                            rhs.add(&matrix_of(&ss.gl_generator(i, l).unwrap(), &p2, &p2).unwrap());
                    }
                    if i == l {
                        let odd = a.parity().is_odd() && b.parity().is_odd();
                        let s = if odd { q(1) } else { q(-1) };
                        rhs = rhs.add(
                            &matrix_of(&ss.gl_generator(k, j).unwrap(), &p2, &p2)
                                .unwrap()
                                .scale(&s),
                        );
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn matrix_of_euler_is_scalar() {
    let ss = Superspace::new(2, 1);
    for k in 0..=3 {
        let p = pk(&ss, k);
        assert_eq!(
            matrix_of(&ss.euler(), &p, &p).unwrap(),
            RatMatrix::identity(p.dim()).scale(&q(k as i64))
        );
        assert_eq!(
            matrix_of(&LinearOp::identity(), &p, &p).unwrap(),
            RatMatrix::identity(p.dim())
        );
    }
}

#[test]
fn inner_product_examples() {
    let spec = Arc::new(VarSpec::mean_space(0, 1));
    let (x, y) = (BlockId(0), BlockId(1));
    let ip = inner_product(&spec, x, y).unwrap();
    assert_eq!(ip, parse(&spec, "-1/2*e1*f2 + 1/2*e2*f1").unwrap());
    let spec = Arc::new(VarSpec::mean_space(2, 1));
    assert_eq!(
        inner_product(&spec, x, y).unwrap(),
        inner_product(&spec, y, x).unwrap()
    );
    let b = Arc::new(VarSpec::mean_space(2, 0));
    assert_eq!(
        inner_product(&b, x, y).unwrap(),
        parse(&b, "x1*y1 + x2*y2").unwrap()
    );
}
