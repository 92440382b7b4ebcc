use serde::Serialize;

use super::{in_window, window_submodule, ReprError};
use num_traits::ToPrimitive;

use crate::exactmath::binomial;
use crate::harmonic::{dim_hk_formula, hk, in_minus_2n};
use crate::operators::Superspace;

fn binom(n: i64, r: i64) -> i64 {
    binomial(n, r).to_i64().expect("binomial fits in i64")
}

/// `dim L_(k,0,...,0)` for `osp(m|2n)`. In the reducible window the two
/// correction sums are added to `dim H_k`; for `m = 1` this is `dim H_k`.
pub fn dim_lk(m: usize, n: usize, k: usize) -> Result<u64, ReprError> {
    if m == 0 {
        return Err(ReprError::ZeroM);
    }
    let base = dim_hk_formula(m, n, k).expect("m > 0") as i64;
    if m == 1 || !in_window(m, n, k) {
        return Ok(base as u64);
    }
    let (mi, ni, ki) = (m as i64, n as i64, k as i64);
    let big_m = mi - 2 * ni;
    let third: i64 = (0..=(-big_m - ki).min(2 * ni))
        .map(|i| binom(2 * ni, i) * binom(2 * ni - ki - i - 1, mi - 1))
        .sum();
    let fourth: i64 = (0..=(2 - big_m - ki).min(2 * ni))
        .map(|i| binom(2 * ni, i) * binom(2 * ni - ki + 1 - i, mi - 1))
        .sum();
    Ok((base + third - fourth) as u64)
}

/// `dim H_k - dim (H_k ∩ R^2 P_{k-2})` from exact kernels: the window
/// submodule in the window, zero elsewhere.
pub fn dim_lk_quotient(ss: &Superspace, k: usize) -> Result<u64, ReprError> {
    let h = hk(ss, k).dim();
    if in_window(ss.m(), ss.n(), k) {
        Ok((h - window_submodule(ss, k)?.dim()) as u64)
    } else {
        Ok(h as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchVerdict {
    FullRange,
    Truncated,
    NotCompletelyReducible,
}

/// Restriction of `L_(k,0,...,0)` from `osp(m|2n)` to `osp(m-1|2n)`.
#[derive(Debug, Clone, Serialize)]
pub struct Branching {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub verdict: BranchVerdict,
    /// Levels `l` of the summands `L_(l,0,...,0)` of `osp(m-1|2n)`; empty when
    /// the restriction is not completely reducible.
    pub levels: Vec<usize>,
    pub level_dims: Vec<u64>,
    pub dim: u64,
    /// `Some(sum of level_dims == dim)` for the completely reducible cases.
    pub identity_holds: Option<bool>,
}

pub fn branch_levels(m: usize, n: usize, k: usize) -> Result<Branching, ReprError> {
    if m < 2 {
        return Err(ReprError::SmallM { m, min: 2 });
    }
    let big_m = m as i64 - 2 * n as i64;
    let ki = k as i64;
    let verdict = if big_m > 1 {
        BranchVerdict::FullRange
    } else if big_m % 2 != 0 {
        if ki < 2 + (1 - big_m) / 2 {
            BranchVerdict::FullRange
        } else {
            BranchVerdict::NotCompletelyReducible
        }
    } else {
        debug_assert!(in_minus_2n(big_m));
        if in_window(m, n, k) {
            BranchVerdict::Truncated
        } else {
            BranchVerdict::FullRange
        }
    };
    let dim = dim_lk(m, n, k)?;
    let levels: Vec<usize> = match verdict {
        BranchVerdict::FullRange => (0..=k).collect(),
        BranchVerdict::Truncated => ((3 - big_m - ki) as usize..=k).collect(),
        BranchVerdict::NotCompletelyReducible => Vec::new(),
    };
    let level_dims = levels
        .iter()
        .map(|&l| dim_lk(m - 1, n, l))
        .collect::<Result<Vec<_>, _>>()?;
    let identity_holds = (verdict != BranchVerdict::NotCompletelyReducible)
        .then(|| level_dims.iter().sum::<u64>() == dim);
    Ok(Branching {
        m,
        n,
        k,
        verdict,
        levels,
        level_dims,
        dim,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lk_examples() {
        assert_eq!(dim_lk(2, 1, 2).unwrap(), 6);
        assert_eq!(dim_lk(3, 1, 2).unwrap(), 12);
        assert_eq!(dim_lk_quotient(&Superspace::new(2, 1), 2).unwrap(), 6);
        assert_eq!(dim_lk(0, 1, 2), Err(ReprError::ZeroM));
    }

    #[test]
    fn branching_examples() {
        let b = branch_levels(2, 2, 3).unwrap();
        assert_eq!(b.verdict, BranchVerdict::Truncated);
        assert_eq!(b.levels, vec![2, 3]);
        assert_eq!(b.identity_holds, Some(true));
        let b = branch_levels(3, 2, 4).unwrap();
        assert_eq!(b.verdict, BranchVerdict::NotCompletelyReducible);
        assert_eq!(b.identity_holds, None);
        for k in 0..=6 {
            assert_eq!(branch_levels(4, 1, k).unwrap().identity_holds, Some(true));
        }
    }
}
