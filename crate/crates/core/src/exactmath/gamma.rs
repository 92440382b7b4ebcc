//! Gamma function bookkeeping at integer and half-integer arguments.
//!
//! Every value is `coeff * pi^(sqrt_pi_power / 2)`; no floating point is used.

use serde::Serialize;

use super::rational::{factorial, Rational};
use super::MathError;

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub fn twice_value(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Nonpositive integers are the poles of Γ.
    pub fn is_pole(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice, 2)
    }

    pub fn add_int(self, k: i64) -> Self {
        Self {
            twice: self.twice + 2 * k,
        }
    }

    /// `self - other` when it is an integer.
    pub fn int_diff(self, other: HalfInt) -> Option<i64> {
        let d = self.twice - other.twice;
        (d % 2 == 0).then_some(d / 2)
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Γ(s) as `coeff * sqrt(pi)^sqrt_pi_power`, or a pole.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaValue {
    pub coeff: Rational,
    pub sqrt_pi_power: u8,
    pub is_pole: bool,
}

impl GammaValue {
    /// 1/Γ(s), with the value exactly zero at poles.
    pub fn recip(&self) -> Option<Rational> {
        (!self.is_pole).then(|| self.coeff.recip())
    }
}

pub fn gamma(s: HalfInt) -> GammaValue {
    if s.is_pole() {
        return GammaValue {
            coeff: Rational::ZERO,
            sqrt_pi_power: 0,
            is_pole: true,
        };
    }
    if s.is_integer() {
        let n = s.twice / 2;
        return GammaValue {
            coeff: factorial((n - 1) as u64),
            sqrt_pi_power: 0,
            is_pole: false,
        };
    }
    // Walk from Γ(1/2) = √π using Γ(s+1) = sΓ(s).
    let mut coeff = Rational::ONE;
    let mut cur = HalfInt::from_twice(1);
    while cur < s {
        coeff = &coeff * &cur.to_rational();
        cur = cur.add_int(1);
    }
    while cur > s {
        cur = cur.add_int(-1);
        coeff = &coeff / &cur.to_rational();
    }
    GammaValue {
        coeff,
        sqrt_pi_power: 1,
        is_pole: false,
    }
}

/// Γ(top)/Γ(bottom) for an integer difference, as a rising or falling product.
///
/// When `top >= bottom` the rising product `bottom (bottom+1) ... (top-1)` is
/// returned; it is the analytic limit of the ratio and is exactly zero when
/// `bottom` is a pole and `top` is not. When `top < bottom` the ratio is the
/// reciprocal of the rising product from `top`, which fails if that product
/// vanishes (a pole of Γ(top) not cancelled by Γ(bottom)).
pub fn gamma_ratio(top: HalfInt, bottom: HalfInt) -> Result<Rational, MathError> {
    let diff = top
        .int_diff(bottom)
        .ok_or(MathError::NonIntegerGammaRatio { top, bottom })?;
    let rising = |start: HalfInt, len: i64| -> Rational {
        (0..len).map(|i| start.add_int(i).to_rational()).product()
    };
    if diff >= 0 {
        Ok(rising(bottom, diff))
    } else {
        let p = rising(top, -diff);
        if p.is_zero() {
            return Err(MathError::GammaPole(top));
        }
        Ok(p.recip())
    }
}

/// Generalized binomial coefficient a(a-1)...(a-l+1)/l!.
pub fn gen_binomial(a: HalfInt, l: u64) -> Rational {
    let falling: Rational = (0..l as i64).map(|i| a.add_int(-i).to_rational()).product();
    &falling / &factorial(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn gamma_examples() {
        let g1 = gamma(h(2));
        assert_eq!(
            (g1.coeff, g1.sqrt_pi_power, g1.is_pole),
            (Rational::ONE, 0, false)
        );
        let g32 = gamma(h(3));
        assert_eq!((g32.coeff, g32.sqrt_pi_power), (Rational::new(1, 2), 1));
        // Γ(-1/2) = Γ(1/2)/(-1/2) = -2√π
        let gm = gamma(h(-1));
        assert_eq!(
            (gm.coeff, gm.sqrt_pi_power),
            (Rational::from_integer(-2), 1)
        );
        assert!(gamma(h(0)).is_pole);
        assert!(gamma(h(-4)).is_pole);
    }

    #[test]
    fn gamma_recurrence_grid() {
        for t in -9..=9 {
            let s = h(t);
            let next = s.add_int(1);
            if s.is_pole() {
                continue;
            }
            let (gs, gn) = (gamma(s), gamma(next));
            if gn.is_pole {
                continue;
            }
            assert_eq!(gs.sqrt_pi_power, gn.sqrt_pi_power);
            assert_eq!(gn.coeff, &s.to_rational() * &gs.coeff, "s = {s}");
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(gamma_ratio(h(5), h(1)).unwrap(), Rational::new(3, 4));
        assert_eq!(
            gamma_ratio(HalfInt::from_int(4), HalfInt::from_int(2)).unwrap(),
            Rational::from_integer(6)
        );
        assert_eq!(gamma_ratio(h(3), h(3)).unwrap(), Rational::ONE);
        assert!(gamma_ratio(h(3), h(2)).is_err());
        // bottom pole, top regular: reciprocal-zero convention
        assert_eq!(
            gamma_ratio(HalfInt::from_int(2), HalfInt::from_int(0)).unwrap(),
            Rational::ZERO
        );
    }

    #[test]
    fn ratio_chain() {
        for t in -7..=9 {
            for b in (-7..=9).filter(|b| (t - b) % 2 == 0) {
                for c in (-7..=9).filter(|c| (b - c) % 2 == 0) {
                    let (tt, bb, cc) = (h(t), h(b), h(c));
                    if tt.is_pole() || bb.is_pole() || cc.is_pole() {
                        continue;
                    }
                    let lhs = gamma_ratio(tt, bb).unwrap() * gamma_ratio(bb, cc).unwrap();
                    assert_eq!(lhs, gamma_ratio(tt, cc).unwrap());
                }
            }
        }
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(h(1), 2), Rational::new(-1, 8));
        assert_eq!(gen_binomial(HalfInt::from_int(3), 0), Rational::ONE);
        assert_eq!(gen_binomial(HalfInt::from_int(2), 3), Rational::ZERO);
    }
}
