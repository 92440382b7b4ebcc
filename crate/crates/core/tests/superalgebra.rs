use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharm::{parse, Parity, Rational, SuperPolynomial, VarSpec};

fn spec() -> Arc<VarSpec> {
    Arc::new(VarSpec::superspace(2, 2))
}

fn poly(seed: u64, max_deg: usize) -> SuperPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SuperPolynomial::random(&spec(), &mut rng, max_deg, 5)
}

/// The part of `f` with the given parity.
fn part(f: &SuperPolynomial, p: Parity) -> SuperPolynomial {
    f.filter(|m| m.is_odd() == p.is_odd())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (poly(a, 3), poly(b, 3), poly(c, 3));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn distributive(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (poly(a, 3), poly(b, 3), poly(c, 3));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn supercommutative(a in any::<u64>(), b in any::<u64>()) {
        for pa in [Parity::Even, Parity::Odd] {
            for pb in [Parity::Even, Parity::Odd] {
                let f = part(&poly(a, 4), pa);
                let g = part(&poly(b, 4), pb);
                let sign = if pa.is_odd() && pb.is_odd() { -Rational::ONE } else { Rational::ONE };
                prop_assert_eq!(&f * &g, (&g * &f).scale(&sign));
            }
        }
    }

    #[test]
    fn derivatives_are_super_derivations(a in any::<u64>(), b in any::<u64>()) {
        let s = spec();
        for v in s.all_vars() {
            for pa in [Parity::Even, Parity::Odd] {
                let f = part(&poly(a, 3), pa);
                let g = poly(b, 3);
                let sign = if v.is_fermionic() && pa.is_odd() { -Rational::ONE } else { Rational::ONE };
                let lhs = (&f * &g).deriv(v);
                let rhs = &(&f.deriv(v) * &g) + &(&f * &g.deriv(v)).scale(&sign);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn printing_then_parsing_is_identity(a in any::<u64>()) {
        let f = poly(a, 4);
        prop_assert_eq!(parse(&spec(), &f.to_string()).unwrap(), f);
    }

    #[test]
    fn fermions_square_to_zero(j in 0usize..4) {
        let s = spec();
        let e = SuperPolynomial::var(&s, s.lookup(&format!("e{}", j + 1)).unwrap());
        prop_assert!((&e * &e).is_zero());
    }
}

#[test]
fn parse_errors_report_positions() {
    let err = parse(&spec(), "x1 + y7").unwrap_err();
    assert_eq!(err.position(), 5);
    let err = parse(&spec(), "x1 * (e1").unwrap_err();
    assert!(err.position() >= 5);
}

#[test]
fn grassmann_signs() {
    let s = spec();
    let f = parse(&s, "e1*e2").unwrap();
    assert_eq!(f, parse(&s, "-e2*e1").unwrap());
    assert_eq!(f.deriv(s.lookup("e2").unwrap()), parse(&s, "-e1").unwrap());
    assert_eq!(f.deriv(s.lookup("e1").unwrap()), parse(&s, "e2").unwrap());
}
