use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use super::monomial::SuperMonomial;
use super::varspec::{BlockId, Var, VarSpec};
use super::{Parity, SuperError};
use crate::exactmath::{RatMatrix, Rational};

/// A sparse superpolynomial: canonical monomials with nonzero rational coefficients.
#[derive(Clone)]
pub struct SuperPolynomial {
    spec: Arc<VarSpec>,
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl PartialEq for SuperPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for SuperPolynomial {}

fn same_spec(a: &Arc<VarSpec>, b: &Arc<VarSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SuperPolynomial {
    pub fn zero(spec: &Arc<VarSpec>) -> Self {
        Self {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &Arc<VarSpec>, c: Rational) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(SuperMonomial::one(spec.nbos()), c);
        p
    }

    pub fn one(spec: &Arc<VarSpec>) -> Self {
        Self::constant(spec, Rational::ONE)
    }

    pub fn var(spec: &Arc<VarSpec>, v: Var) -> Self {
        let mut mono = SuperMonomial::one(spec.nbos());
        match v {
            Var::Bos(i) => mono = mono.with_bos_exp(i, 1),
            Var::Ferm(j) => mono = SuperMonomial::from_parts(mono.bos_exponents(), 1u64 << j),
        }
        Self::from_term(spec, mono, Rational::ONE)
    }

    pub fn from_term(spec: &Arc<VarSpec>, mono: SuperMonomial, c: Rational) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(
        spec: &Arc<VarSpec>,
        terms: impl IntoIterator<Item = (SuperMonomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(spec);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn spec(&self) -> &Arc<VarSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (SuperMonomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &SuperMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn add_term(&mut self, mono: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &SuperPolynomial) {
        self.check_spec(other);
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    fn check_spec(&self, other: &SuperPolynomial) {
        assert!(
            same_spec(&self.spec, &other.spec),
            "variable spec mismatch: {} vs {}",
            self.spec,
            other.spec
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec);
        }
        Self {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &SuperPolynomial) -> Result<Self, SuperError> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(SuperError::SpecMismatch);
        }
        let mut out = Self::zero(&self.spec);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, neg)) = a.mul(b) {
                    let c = x * y;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.spec);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Left multiplication by a single variable.
    pub fn mul_var(&self, v: Var) -> Self {
        let mut out = Self::zero(&self.spec);
        match v {
            Var::Bos(i) => {
                for (m, c) in &self.terms {
                    out.add_term(m.with_bos_exp(i, m.bos_exp(i) + 1), c.clone());
                }
            }
            Var::Ferm(j) => {
                for (m, c) in &self.terms {
                    if m.has_ferm(j) {
                        continue;
                    }
                    let mask = m.ferm_mask();
                    let neg = (mask & ((1u64 << j) - 1)).count_ones() % 2 == 1;
                    let mono = SuperMonomial::from_parts(m.bos_exponents(), mask | 1u64 << j);
                    out.add_term(mono, if neg { -c } else { c.clone() });
                }
            }
        }
        out
    }

    /// Partial derivative; fermionic derivatives act from the left.
    pub fn deriv(&self, v: Var) -> Self {
        let mut out = Self::zero(&self.spec);
        match v {
            Var::Bos(i) => {
                for (m, c) in &self.terms {
                    if let Some((d, e)) = m.deriv_bos(i) {
                        out.add_term(d, c * &Rational::from_integer(e as i64));
                    }
                }
            }
            Var::Ferm(j) => {
                for (m, c) in &self.terms {
                    if let Some((d, neg)) = m.deriv_ferm(j) {
                        out.add_term(d, if neg { -c } else { c.clone() });
                    }
                }
            }
        }
        out
    }

    pub fn deriv_by_name(&self, name: &str) -> Result<Self, SuperError> {
        let v = self
            .spec
            .lookup(name)
            .ok_or_else(|| SuperError::UnknownVariable(name.to_string()))?;
        Ok(self.deriv(v))
    }

    /// Maximum total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(SuperMonomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(SuperMonomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, keep: impl Fn(&SuperMonomial) -> bool) -> Self {
        Self {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Grassmann parity, if every term has the same one. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::from_odd(m.is_odd()));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&SuperMonomial::one(self.spec.nbos()))
    }

    /// Sets every variable of `block` to zero.
    pub fn eval_block_zero(&self, block: BlockId) -> Self {
        let b = self.spec.block(block);
        let (br, fr) = (b.bos_range(), b.ferm_range());
        self.filter(|m| br.clone().all(|i| m.bos_exp(i) == 0) && fr.clone().all(|j| !m.has_ferm(j)))
    }

    /// `d_{e_2n} ... d_{e_1}` over the fermionic variables of `block`
    /// (the rightmost derivative acts first). No `pi` normalization.
    pub fn berezin(&self, block: BlockId) -> Self {
        let b = self.spec.block(block);
        let mut out = self.clone();
        for j in b.ferm_range() {
            out = out.deriv(Var::Ferm(j));
        }
        out
    }

    /// Replaces variables by polynomials over `target`, multiplying the images
    /// in the canonical factor order of each monomial. Images of fermionic
    /// variables must be odd and images of bosonic ones even.
    pub fn substitute(
        &self,
        target: &Arc<VarSpec>,
        image: impl Fn(Var) -> SuperPolynomial,
    ) -> Self {
        let bos: Vec<SuperPolynomial> = (0..self.spec.nbos()).map(|i| image(Var::Bos(i))).collect();
        let ferm: Vec<SuperPolynomial> = (0..self.spec.nferm())
            .map(|j| image(Var::Ferm(j)))
            .collect();
        let mut powers: Vec<Vec<SuperPolynomial>> = bos
            .iter()
            .map(|p| vec![SuperPolynomial::one(target), p.clone()])
            .collect();
        let mut out = SuperPolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = SuperPolynomial::constant(target, c.clone());
            for (i, &e) in m.bos_exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &bos[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            for j in m.ferm_indices() {
                acc = &acc * &ferm[j];
            }
            out.add_scaled(&Rational::ONE, &acc);
        }
        out
    }

    /// Moves the polynomial into `target` by renaming variables through `map`.
    pub fn embed(&self, target: &Arc<VarSpec>, map: impl Fn(Var) -> Var) -> Self {
        self.substitute(target, |v| SuperPolynomial::var(target, map(v)))
    }

    /// `f(S^{-1} X)` on the supervector of `block`, for `S` block diagonal
    /// with respect to the bosonic and fermionic coordinates of the block.
    pub fn substitute_linear(&self, s: &RatMatrix, block: BlockId) -> Result<Self, SuperError> {
        let b = self.spec.block(block);
        let (m, nf) = (b.m(), b.nferm());
        if s.rows() != m + nf || s.cols() != m + nf {
            return Err(SuperError::BadSubstitution(
                "matrix size does not match the block".into(),
            ));
        }
        for i in 0..m + nf {
            for j in 0..m + nf {
                if (i < m) != (j < m) && !s[(i, j)].is_zero() {
                    return Err(SuperError::BadSubstitution("matrix mixes parities".into()));
                }
            }
        }
        let inv = s
            .inverse()
            .map_err(|_| SuperError::BadSubstitution("matrix is not invertible".into()))?;
        let sv = b.supervector();
        let spec = self.spec.clone();
        Ok(
            self.substitute(&spec, |v| match sv.iter().position(|&w| w == v) {
                Some(row) => {
                    let mut p = SuperPolynomial::zero(&spec);
                    for (col, w) in sv.iter().enumerate() {
                        let c = &inv[(row, col)];
                        if !c.is_zero() {
                            p.add_scaled(c, &SuperPolynomial::var(&spec, *w));
                        }
                    }
                    p
                }
                None => SuperPolynomial::var(&spec, v),
            }),
        )
    }

    /// Terms in display order: by degree, then larger bosonic exponents first.
    pub fn sorted_terms(&self) -> Vec<(&SuperMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| m.display_key());
        v
    }

    /// A pseudo-random polynomial of total degree at most `max_deg` with
    /// up to `nterms` terms and small integer-ratio coefficients.
    pub fn random<R: Rng>(spec: &Arc<VarSpec>, rng: &mut R, max_deg: usize, nterms: usize) -> Self {
        let mut p = Self::zero(spec);
        for _ in 0..nterms {
            let deg = rng.gen_range(0..=max_deg);
            p.add_scaled(&Rational::ONE, &Self::random_monomial(spec, rng, deg));
        }
        p
    }

    /// A random monomial of degree exactly `deg` (or lower if the fermions run
    /// out and there are no bosons) times a random small coefficient.
    pub fn random_monomial<R: Rng>(spec: &Arc<VarSpec>, rng: &mut R, deg: usize) -> Self {
        let (nb, nf) = (spec.nbos(), spec.nferm());
        let mut bos = vec![0u8; nb];
        let mut mask = 0u64;
        for _ in 0..deg {
            let pick_ferm = nb == 0 || (nf > 0 && rng.gen_bool(0.4));
            if pick_ferm {
                let j = rng.gen_range(0..nf);
                if mask >> j & 1 == 0 {
                    mask |= 1 << j;
                    continue;
                }
                if nb == 0 {
                    continue;
                }
            }
            bos[rng.gen_range(0..nb)] += 1;
        }
        let num = rng.gen_range(-5i64..=5);
        let num = if num == 0 { 1 } else { num };
        let den = rng.gen_range(1i64..=3);
        Self::from_term(
            spec,
            SuperMonomial::from_parts(&bos, mask),
            Rational::new(num, den),
        )
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (i, &e) in m.bos_exponents().iter().enumerate() {
                let name = self.spec.name(Var::Bos(i));
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            for j in m.ferm_indices() {
                factors.push(self.spec.name(Var::Ferm(j)).to_string());
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial({self})")
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        out.add_scaled(&Rational::ONE, rhs);
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        out.add_scaled(&-Rational::ONE, rhs);
        out
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_mul(rhs).expect("variable spec mismatch")
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-Rational::ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for SuperPolynomial {
            type Output = SuperPolynomial;
            fn $f(self, rhs: SuperPolynomial) -> SuperPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::parse;

    fn spec(m: usize, n: usize) -> Arc<VarSpec> {
        Arc::new(VarSpec::superspace(m, n))
    }

    fn p(s: &Arc<VarSpec>, text: &str) -> SuperPolynomial {
        parse(s, text).unwrap()
    }

    #[test]
    fn square_with_nilpotent_part() {
        let s = spec(1, 1);
        let f = p(&s, "x1 + e1*e2");
        assert_eq!(&f * &f, p(&s, "x1^2 + 2*x1*e1*e2"));
    }

    #[test]
    fn left_derivatives() {
        let s = spec(1, 1);
        let e12 = p(&s, "e1*e2");
        assert_eq!(e12.deriv(Var::Ferm(1)), p(&s, "-e1"));
        assert_eq!(e12.deriv(Var::Ferm(0)), p(&s, "e2"));
        assert_eq!(p(&s, "x1^2*e1").deriv(Var::Bos(0)), p(&s, "2*x1*e1"));
    }

    #[test]
    fn berezin_top_forms() {
        let s = spec(1, 1);
        let x = s.block_id("x").unwrap();
        assert_eq!(p(&s, "e1*e2").berezin(x), SuperPolynomial::one(&s));
        assert!(p(&s, "x1*e1").berezin(x).is_zero());
        let s2 = spec(0, 2);
        let x2 = s2.block_id("x").unwrap();
        assert_eq!(p(&s2, "e1*e2*e3*e4").berezin(x2), SuperPolynomial::one(&s2));
    }

    #[test]
    fn linear_substitution() {
        let s = spec(2, 1);
        let x = s.block_id("x").unwrap();
        let id = RatMatrix::identity(4);
        let f = p(&s, "x1^2*e1 - 3*x2*e1*e2");
        assert_eq!(f.substitute_linear(&id, x).unwrap(), f);
        let swap =
            RatMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(
            p(&s, "x1").substitute_linear(&swap, x).unwrap(),
            p(&s, "x2")
        );
        let mut sc = RatMatrix::identity(4);
        sc[(2, 2)] = Rational::new(3, 1);
        sc[(3, 3)] = Rational::new(1, 3);
        let theta2 = p(&s, "-e1*e2");
        assert_eq!(theta2.substitute_linear(&sc, x).unwrap(), theta2);
        let mut mixed = RatMatrix::identity(4);
        mixed[(0, 2)] = Rational::ONE;
        assert!(theta2.substitute_linear(&mixed, x).is_err());
    }
}
