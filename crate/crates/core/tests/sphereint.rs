use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharm::sphereint::{
    berezin_sphere_oracle, darboux_residual, fischer_route_integral, mean_series, pizzetti,
    sphere_mean,
};
use superharm::{parse, Rational, ScaledScalar, SuperPolynomial, Superspace};

fn integral(m: usize, n: usize, text: &str) -> ScaledScalar {
    let ss = Superspace::new(m, n);
    pizzetti(&parse(ss.spec(), text).unwrap(), &ss).unwrap()
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

#[test]
fn classical_sphere_moments() {
    assert_eq!(integral(2, 0, "1"), ScaledScalar::new(q(2, 1), 1));
    assert_eq!(integral(2, 0, "x1^2"), ScaledScalar::new(q(1, 1), 1));
    assert_eq!(integral(3, 0, "1"), ScaledScalar::new(q(4, 1), 1));
    assert_eq!(integral(3, 0, "x1^2"), ScaledScalar::new(q(4, 3), 1));
    assert_eq!(integral(3, 0, "x1^2*x2^2"), ScaledScalar::new(q(4, 15), 1));
    assert_eq!(integral(3, 0, "x1^4"), ScaledScalar::new(q(4, 5), 1));
    assert!(integral(3, 0, "x1*x2").is_zero());
}

#[test]
fn area_follows_the_superdimension() {
    // 2 pi^{M/2} / Gamma(M/2)
    assert_eq!(integral(3, 1, "1"), ScaledScalar::new(q(2, 1), 0));
    assert_eq!(integral(4, 1, "1"), ScaledScalar::new(q(2, 1), 1));
    assert_eq!(integral(1, 1, "1"), ScaledScalar::new(q(-1, 1), -1));
    assert!(integral(2, 1, "1").is_zero());
}

#[test]
fn fischer_route_refused_when_obstructed() {
    let ss = Superspace::new(2, 1);
    assert!(fischer_route_integral(&SuperPolynomial::one(ss.spec()), &ss).is_err());
}

#[test]
fn mean_of_x1_squared() {
    let ss = Superspace::new(3, 0);
    let f = parse(ss.spec(), "x1^2").unwrap();
    let mean = sphere_mean(&f, &ss).unwrap();
    assert_eq!(mean.pi_exponent, 1);
    assert_eq!(mean.poly, parse(mean.spec(), "4*x1^2 + 4/3*L^2").unwrap());
    assert!(darboux_residual(&f, &ss).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_routes_agree(seed in any::<u64>(), which in 0usize..4) {
        let (m, n) = [(3, 1), (1, 1), (5, 1), (4, 2)][which];
        let ss = Superspace::new(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperPolynomial::random(ss.spec(), &mut rng, 6, 6);
        let p = pizzetti(&f, &ss).unwrap();
        prop_assert_eq!(&berezin_sphere_oracle(&f, &ss).unwrap(), &p);
        if m != 4 {
            prop_assert_eq!(&fischer_route_integral(&f, &ss).unwrap(), &p);
        }
    }

    #[test]
    fn radial_factor_is_invisible(seed in any::<u64>()) {
        let ss = Superspace::new(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperPolynomial::random(ss.spec(), &mut rng, 4, 5);
        let g = &ss.r_squared_poly() * &f;
        prop_assert_eq!(pizzetti(&g, &ss).unwrap(), pizzetti(&f, &ss).unwrap());
    }

    #[test]
    fn mean_matches_series(seed in any::<u64>()) {
        let ss = Superspace::new(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SuperPolynomial::random(ss.spec(), &mut rng, 4, 4);
        let a = sphere_mean(&f, &ss).unwrap();
        let b = mean_series(&f, &ss).unwrap();
        prop_assert_eq!(a.poly, b.poly);
        prop_assert!(darboux_residual(&f, &ss).unwrap().is_zero());
    }
}
