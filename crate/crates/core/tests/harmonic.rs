use superharm::harmonic::{
    decompose_hk, dim_hk_formula, fischer, hk, in_minus_2n, pk, projector, FischerSplitter,
    HarmonicError,
};
use superharm::{Rational, Superspace};

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree `k` in `m` commuting and `2n` anticommuting variables.
fn count_pk(m: u64, n: u64, k: u64) -> u64 {
    (0..=k.min(2 * n))
        .map(|f| {
            let b = k - f;
            let bos = if m == 0 {
                u64::from(b == 0)
            } else {
                binom(b + m - 1, m - 1)
            };
            binom(2 * n, f) * bos
        })
        .sum()
}

#[test]
fn kernel_dimension_is_surjectivity_count() {
    // For m > 0 the Laplacian maps P_k onto P_{k-2}.
    for (m, n) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (5, 1)] {
        let ss = Superspace::new(m, n);
        for k in 0..=6u64 {
            let lower = if k >= 2 {
                count_pk(m as u64, n as u64, k - 2)
            } else {
                0
            };
            let expected = count_pk(m as u64, n as u64, k) - lower;
            assert_eq!(
                pk(&ss, k as usize).dim() as u64,
                count_pk(m as u64, n as u64, k)
            );
            assert_eq!(hk(&ss, k as usize).dim() as u64, expected, "({m},{n},{k})");
            assert_eq!(dim_hk_formula(m, n, k as usize).unwrap(), expected);
        }
    }
}

#[test]
fn classical_and_super_spot_values() {
    assert_eq!(hk(&Superspace::new(3, 0), 2).dim(), 5);
    assert_eq!(hk(&Superspace::new(2, 1), 2).dim(), 7);
    assert!(dim_hk_formula(0, 2, 1).is_err());
}

#[test]
fn components_of_h2_for_2_1() {
    let dims: Vec<usize> = decompose_hk(&Superspace::new(2, 1), 2)
        .iter()
        .map(|c| c.space.dim())
        .collect();
    assert_eq!(dims, vec![2, 1, 4]);
}

#[test]
fn fischer_refused_for_nonpositive_even_superdimension() {
    for (m, n) in [(2, 1), (2, 2), (4, 2)] {
        let ss = Superspace::new(m, n);
        assert!(in_minus_2n(ss.superdim()));
        assert!(matches!(
            fischer(&ss, 2),
            Err(HarmonicError::FischerObstruction(_))
        ));
        assert!(FischerSplitter::new(&ss, 2).is_err());
    }
}

#[test]
fn fischer_pieces_fill_pk() {
    for (m, n) in [(3, 1), (1, 1), (5, 2)] {
        let ss = Superspace::new(m, n);
        for k in 0..=5 {
            let total: usize = fischer(&ss, k).unwrap().iter().map(|p| p.space.dim()).sum();
            assert_eq!(total, pk(&ss, k).dim());
        }
    }
}

#[test]
fn projectors_fix_their_component() {
    let ss = Superspace::new(3, 1);
    for c in decompose_hk(&ss, 3) {
        let q = projector(&ss, 3, c.l, c.q).unwrap();
        for v in c.space.basis() {
            assert_eq!(&q.apply(v), v);
        }
    }
}

#[test]
fn projector_rejects_missing_component() {
    let ss = Superspace::new(3, 1);
    assert!(projector(&ss, 2, 0, 2).is_err());
}

#[test]
fn harmonics_are_killed_by_the_laplacian() {
    let ss = Superspace::new(2, 2);
    let lap = ss.laplacian();
    for k in 0..=4 {
        for h in hk(&ss, k).basis() {
            assert!(lap.apply(h).is_zero());
        }
    }
    let r2 = ss.r_squared_poly();
    // M = -2: R^2 is harmonic only for M = 0, and R^4 H_0 lies in H_4 for M = -2
    assert!(!lap.apply(&r2).is_zero());
    assert!(lap.apply(&r2.pow(2)).is_zero());
    assert_eq!(
        lap.apply(&r2).constant_term(),
        Rational::from_integer(2 * ss.superdim())
    );
}
