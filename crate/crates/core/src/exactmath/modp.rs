//! Arithmetic modulo the Mersenne prime 2^61 - 1.
//!
//! Used only to certify lower bounds on rank: the rank of an integer matrix
//! modulo a prime never exceeds its rank over the rationals, so a full-rank
//! residue proves full rank exactly.

pub const PRIME: u64 = (1u64 << 61) - 1;

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero residue");
    pow(a, p - 2, p)
}

/// Dense row-echelon accumulator over F_p with early exit on full rank.
#[derive(Debug, Clone)]
pub struct ModpEchelon {
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
}

impl ModpEchelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![None; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the stored rows; inserts it if independent.
    /// Returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let p = PRIME;
        for col in 0..self.dim {
            if v[col] == 0 {
                continue;
            }
            if let Some(r) = self.pivot_of_col[col] {
                let c = v[col];
                let row = &self.rows[r];
                for j in col..self.dim {
                    if row[j] != 0 {
                        v[j] = sub(v[j], mul(c, row[j], p), p);
                    }
                }
            } else {
                let s = inv(v[col], p);
                for x in v.iter_mut().skip(col) {
                    *x = mul(*x, s, p);
                }
                self.pivot_of_col[col] = Some(self.rows.len());
                self.pivots.push(col);
                self.rows.push(v);
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for a in [1u64, 2, 3, 12345, PRIME - 1] {
            assert_eq!(mul(a, inv(a, PRIME), PRIME), 1);
        }
    }

    #[test]
    fn echelon_rank() {
        let mut e = ModpEchelon::new(3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 0]));
        assert_eq!(e.rank(), 2);
    }
}
