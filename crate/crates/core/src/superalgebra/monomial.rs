use smallvec::SmallVec;

/// `x^alpha * e_{i1} ... e_{ik}` with `i1 < ... < ik`; the sign of any
/// reordering lives in the owning coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    bos: SmallVec<[u8; 16]>,
    ferm: u64,
}

/// Number of set bits of `mask` strictly below bit `j`.
#[inline]
fn bits_below(mask: u64, j: usize) -> u32 {
    (mask & ((1u64 << j) - 1)).count_ones()
}

impl SuperMonomial {
    pub fn one(nbos: usize) -> Self {
        Self {
            bos: SmallVec::from_elem(0, nbos),
            ferm: 0,
        }
    }

    pub fn from_parts(bos: &[u8], ferm: u64) -> Self {
        Self {
            bos: SmallVec::from_slice(bos),
            ferm,
        }
    }

    pub fn bos_exponents(&self) -> &[u8] {
        &self.bos
    }

    pub fn bos_exp(&self, i: usize) -> u8 {
        self.bos[i]
    }

    pub fn ferm_mask(&self) -> u64 {
        self.ferm
    }

    pub fn has_ferm(&self, j: usize) -> bool {
        self.ferm >> j & 1 == 1
    }

    pub fn ferm_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |j| self.has_ferm(*j))
    }

    pub fn bos_degree(&self) -> usize {
        self.bos.iter().map(|&e| e as usize).sum()
    }

    pub fn ferm_degree(&self) -> usize {
        self.ferm.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.bos_degree() + self.ferm_degree()
    }

    pub fn is_odd(&self) -> bool {
        self.ferm.count_ones() % 2 == 1
    }

    pub fn is_one(&self) -> bool {
        self.ferm == 0 && self.bos.iter().all(|&e| e == 0)
    }

    /// Product with its sign, or `None` when a fermionic variable repeats.
    pub fn mul(&self, other: &Self) -> Option<(Self, bool)> {
        if self.ferm & other.ferm != 0 {
            return None;
        }
        // Moving each fermion of `other` left past the larger fermions of `self`.
        let mut swaps = 0u32;
        let mut rest = other.ferm;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            swaps += (self.ferm >> j).count_ones();
            rest &= rest - 1;
        }
        let bos = self
            .bos
            .iter()
            .zip(&other.bos)
            .map(|(a, b)| a + b)
            .collect();
        Some((
            Self {
                bos,
                ferm: self.ferm | other.ferm,
            },
            swaps % 2 == 1,
        ))
    }

    /// `d/dx_i`: the reduced monomial and the exponent that comes down.
    pub fn deriv_bos(&self, i: usize) -> Option<(Self, u8)> {
        let e = self.bos[i];
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        out.bos[i] -= 1;
        Some((out, e))
    }

    /// Left derivative `d/de_j`: the reduced monomial and whether the sign flips.
    pub fn deriv_ferm(&self, j: usize) -> Option<(Self, bool)> {
        if !self.has_ferm(j) {
            return None;
        }
        let sign = bits_below(self.ferm, j) % 2 == 1;
        let mut out = self.clone();
        out.ferm &= !(1u64 << j);
        Some((out, sign))
    }

    pub fn with_bos_exp(&self, i: usize, e: u8) -> Self {
        let mut out = self.clone();
        out.bos[i] = e;
        out
    }

    /// Sort key giving graded order: total degree, then bosonic exponents
    /// descending, then fermionic index lists ascending.
    pub fn display_key(&self) -> (usize, Vec<std::cmp::Reverse<u8>>, Vec<usize>) {
        (
            self.degree(),
            self.bos.iter().map(|&e| std::cmp::Reverse(e)).collect(),
            self.ferm_indices().collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermion_product_signs() {
        let e1 = SuperMonomial::from_parts(&[], 0b01);
        let e2 = SuperMonomial::from_parts(&[], 0b10);
        assert_eq!(
            e1.mul(&e2),
            Some((SuperMonomial::from_parts(&[], 0b11), false))
        );
        assert_eq!(
            e2.mul(&e1),
            Some((SuperMonomial::from_parts(&[], 0b11), true))
        );
        assert_eq!(e1.mul(&e1), None);
    }

    #[test]
    fn left_derivative_sign() {
        let e12 = SuperMonomial::from_parts(&[], 0b11);
        assert_eq!(
            e12.deriv_ferm(0),
            Some((SuperMonomial::from_parts(&[], 0b10), false))
        );
        assert_eq!(
            e12.deriv_ferm(1),
            Some((SuperMonomial::from_parts(&[], 0b01), true))
        );
    }
}
