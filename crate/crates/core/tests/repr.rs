use superharm::harmonic::hk;
use superharm::repr::{
    big_algebra_closure, branch_levels, check_irreducible, dim_lk, in_window,
    irreducibility_predicate, quotient_module, window_submodule, BranchVerdict, Realization,
    Verdict,
};
use superharm::Superspace;

/// `dim H_k` by counting: `dim P_k - dim P_{k-2}` for `m > 0`.
fn dim_h(m: i64, n: i64, k: i64) -> i64 {
    fn binom(a: i64, b: i64) -> i64 {
        if b < 0 || a < b {
            return 0;
        }
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }
    let p = |k: i64| -> i64 {
        if k < 0 {
            return 0;
        }
        (0..=k.min(2 * n))
            .map(|f| binom(2 * n, f) * binom(k - f + m - 1, m - 1))
            .sum()
    };
    p(k) - p(k - 2)
}

#[test]
fn window_dimension_of_simple_module() {
    for (m, n, k, expected) in [(2, 1, 2, 6), (2, 2, 3, 20), (2, 2, 4, 30), (4, 2, 2, 30)] {
        let big_m = m as i64 - 2 * n as i64;
        let oracle =
            dim_h(m as i64, n as i64, k as i64) - dim_h(m as i64, n as i64, 2 - big_m - k as i64);
        assert_eq!(oracle, expected);
        assert_eq!(dim_lk(m, n, k).unwrap() as i64, oracle, "({m},{n},{k})");
    }
}

#[test]
fn window_submodule_is_proper_and_sized() {
    let ss = Superspace::new(2, 2);
    for k in [3, 4] {
        let w = window_submodule(&ss, k).unwrap();
        let low = (2 + 2 - k as i64) as usize;
        assert_eq!(w.dim(), hk(&ss, low).dim());
        assert!(w.dim() < hk(&ss, k).dim());
    }
    assert!(window_submodule(&ss, 2).is_err());
}

#[test]
fn verdicts_follow_the_window() {
    for (m, n) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let ss = Superspace::new(m, n);
        for k in 0..=5 {
            let r = check_irreducible(&ss, k, 11).unwrap();
            assert!(r.matches_predicate(), "({m},{n},{k})");
            let expect = if in_window(m, n, k) {
                Verdict::Reducible
            } else {
                Verdict::Irreducible
            };
            assert_eq!(r.verdict, expect, "({m},{n},{k})");
            assert_eq!(irreducibility_predicate(m, n, k), !in_window(m, n, k));
        }
    }
}

#[test]
fn reducible_witness_for_2_1_2() {
    let r = check_irreducible(&Superspace::new(2, 1), 2, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Reducible);
    assert_eq!(r.closure_verdict, Some(Verdict::Reducible));
    assert_eq!(r.witness.unwrap().closure_dim, 1);
}

#[test]
fn zero_module_for_one_one() {
    // dim H_k = 0 for (1,1) and k >= 4
    let r = check_irreducible(&Superspace::new(1, 1), 4, 1).unwrap();
    assert_eq!(r.verdict, Verdict::ZeroModule);
    assert_eq!(dim_h(1, 1, 4), 0);
}

#[test]
fn branching_sums() {
    for k in 0..=5 {
        let b = branch_levels(4, 1, k).unwrap();
        assert_eq!(b.verdict, BranchVerdict::FullRange);
        let sum: u64 = (0..=k).map(|l| dim_lk(3, 1, l).unwrap()).sum();
        assert_eq!(sum, dim_lk(4, 1, k).unwrap());
    }
    let b = branch_levels(2, 2, 3).unwrap();
    assert_eq!(b.verdict, BranchVerdict::Truncated);
    assert_eq!(b.levels, vec![2, 3]);
    let sum: u64 = [2, 3].iter().map(|&l| dim_lk(1, 2, l).unwrap()).sum();
    assert_eq!(sum, dim_lk(2, 2, 3).unwrap());
    let b = branch_levels(3, 2, 4).unwrap();
    assert_eq!(b.verdict, BranchVerdict::NotCompletelyReducible);
    assert!(b.levels.is_empty());
    assert!(branch_levels(1, 1, 2).is_err());
}

#[test]
fn quotient_dimension() {
    let q = quotient_module(&Superspace::new(3, 1), 2).unwrap();
    assert_eq!(q.dim() as i64, dim_h(3, 1, 2));
}

#[test]
fn big_algebra_dimensions() {
    // dim osp(a|2b) = a(a-1)/2 + b(2b+1) + 2ab with a = 4n+1, b = m
    for (m, n) in [(1, 1), (2, 1)] {
        let (a, b) = (4 * n + 1, m);
        let r = big_algebra_closure(m, n, 3, Realization::Klein);
        assert_eq!(
            r.expected_dim,
            a * (a - 1) / 2 + b * (2 * b + 1) + 2 * a * b
        );
        assert_eq!(r.rank, r.expected_dim);
        assert!(r.passed());
    }
}
