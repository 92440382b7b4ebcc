//! Integration over the supersphere `S^{m-1|2n}` for polynomials: the Pizzetti
//! series, an independent evaluation in Berezin form, evaluation through the
//! Fischer decomposition, and the spherical mean with its Darboux equation.
//!
//! Values are [`ScaledScalar`]s `c * pi^e`. For fixed `(m, n)` every integral
//! has `e = floor(M/2)`, `M = m - 2n`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::exactmath::{factorial, gamma, gen_binomial, HalfInt, Rational};
use crate::harmonic::{in_minus_2n, FischerSplitter, HarmonicError};
use crate::operators::Superspace;
use crate::superalgebra::{BlockId, SuperMonomial, SuperPolynomial, Var, VarSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntegrationError {
    #[error("supersphere integration needs m > 0")]
    ZeroM,
    #[error("Fischer route unavailable: M = {0} is a nonpositive even integer")]
    FischerObstruction(i64),
    #[error("pi exponents differ: {0} vs {1}")]
    UnitMismatch(i64, i64),
}

/// `coeff * pi^pi_exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ScaledScalar {
    pub coeff: Rational,
    pub pi_exponent: i64,
}

impl ScaledScalar {
    pub fn new(coeff: Rational, pi_exponent: i64) -> Self {
        Self { coeff, pi_exponent }
    }

    pub fn zero(pi_exponent: i64) -> Self {
        Self::new(Rational::ZERO, pi_exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn try_add(&self, other: &ScaledScalar) -> Result<ScaledScalar, IntegrationError> {
        if self.pi_exponent != other.pi_exponent {
            return Err(IntegrationError::UnitMismatch(
                self.pi_exponent,
                other.pi_exponent,
            ));
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.pi_exponent))
    }

    pub fn scale(&self, c: &Rational) -> ScaledScalar {
        Self::new(&self.coeff * c, self.pi_exponent)
    }

    /// Decimal approximation, for human-readable output only.
    pub fn approx(&self) -> f64 {
        self.coeff.to_f64() * std::f64::consts::PI.powi(self.pi_exponent as i32)
    }
}

impl fmt::Display for ScaledScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exponent {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}·π", self.coeff),
            e => write!(f, "{}·π^{}", self.coeff, e),
        }
    }
}

/// The common exponent `floor(M/2)`.
pub fn unit_exponent(m: usize, n: usize) -> i64 {
    (m as i64 - 2 * n as i64).div_euclid(2)
}

/// `pi^{M/2} / Γ(k + M/2)` as a rational multiple of `pi^{floor(M/2)}`;
/// zero at poles.
fn pi_over_gamma(big_m: i64, k: i64) -> Rational {
    let g = gamma(HalfInt::from_twice(2 * k + big_m));
    let coeff = g.recip().unwrap_or(Rational::ZERO);
    // Odd M: Γ carries exactly one sqrt(pi), which cancels the half power.
    if !g.is_pole {
        assert_eq!(
            g.sqrt_pi_power as i64,
            big_m.rem_euclid(2),
            "pi power does not fold"
        );
    }
    coeff
}

/// The Pizzetti coefficients `c_k = 2 / (4^k k!) * pi^{M/2} / Γ(k + M/2)`
/// in units of `pi^{floor(M/2)}`.
pub fn pizzetti_coefficient(big_m: i64, k: usize) -> Rational {
    let four_k = Rational::from_integer(4).pow(k as i32);
    &(&Rational::from_integer(2) / &(&four_k * &factorial(k as u64)))
        * &pi_over_gamma(big_m, k as i64)
}

/// Pizzetti integral over the variables of `ss`; all other variables are
/// treated as coefficients and survive in the result.
pub fn pizzetti_partial(
    f: &SuperPolynomial,
    ss: &Superspace,
) -> Result<(SuperPolynomial, i64), IntegrationError> {
    if ss.m() == 0 {
        return Err(IntegrationError::ZeroM);
    }
    let big_m = ss.superdim();
    let lap = ss.laplacian();
    let mut out = SuperPolynomial::zero(f.spec());
    let mut cur = f.clone();
    let mut k = 0;
    while !cur.is_zero() {
        let c = pizzetti_coefficient(big_m, k);
        if !c.is_zero() {
            out.add_scaled(&c, &cur.eval_block_zero(ss.block()));
        }
        cur = lap.apply(&cur);
        k += 1;
    }
    Ok((out, unit_exponent(ss.m(), ss.n())))
}

/// `∫_{S^{m-1|2n}} f` by the Pizzetti series.
pub fn pizzetti(f: &SuperPolynomial, ss: &Superspace) -> Result<ScaledScalar, IntegrationError> {
    let (p, e) = pizzetti_partial(f, ss)?;
    Ok(ScaledScalar::new(p.constant_term(), e))
}

/// `∫_{S^{m-1}} x^alpha = 2 prod Γ((alpha_i+1)/2) / Γ((|alpha|+m)/2)`.
pub fn bosonic_sphere_moment(alpha: &[u8]) -> ScaledScalar {
    let m = alpha.len();
    if alpha.iter().any(|a| a % 2 == 1) {
        return ScaledScalar::zero((m / 2) as i64);
    }
    let mut coeff = Rational::from_integer(2);
    let mut sqrt_pi = 0i64;
    for &a in alpha {
        let g = gamma(HalfInt::from_twice(a as i64 + 1));
        coeff = &coeff * &g.coeff;
        sqrt_pi += g.sqrt_pi_power as i64;
    }
    let total: i64 = alpha.iter().map(|&a| a as i64).sum();
    let g = gamma(HalfInt::from_twice(total + m as i64));
    coeff = &coeff / &g.coeff;
    sqrt_pi -= g.sqrt_pi_power as i64;
    assert!(
        sqrt_pi % 2 == 0,
        "bosonic moments carry an integer power of pi"
    );
    ScaledScalar::new(coeff, sqrt_pi / 2)
}

/// Integration in Berezin form:
/// `∫_{S^{m-1}} ∫_B (1 - theta^2/r^2)^{m/2-1} φ^# f` at `r = 1`, where on a
/// term `f_B(x) e_B` of bosonic degree `d`,
/// `φ^# = sum_j (-theta^2)^j / j! * prod_{i<j} (d/2 - i)`.
/// The Berezin integral carries the factor `pi^{-n}`.
pub fn berezin_sphere_oracle(
    f: &SuperPolynomial,
    ss: &Superspace,
) -> Result<ScaledScalar, IntegrationError> {
    if ss.m() == 0 {
        return Err(IntegrationError::ZeroM);
    }
    let (m, n) = (ss.m(), ss.n());
    let spec = ss.spec();
    let block = spec.block(ss.block());
    let bos: Vec<usize> = block.bos_range().collect();
    let minus_t2 = ss.theta2_poly().scale(&-Rational::ONE);
    let powers: Vec<SuperPolynomial> = (0..=n).map(|j| minus_t2.pow(j as u32)).collect();
    let weight_a = HalfInt::from_twice(m as i64 - 2);
    let mut total = Rational::ZERO;
    for (mono, c) in f.terms() {
        let alpha: Vec<u8> = bos.iter().map(|&i| mono.bos_exp(i)).collect();
        let moment = bosonic_sphere_moment(&alpha);
        if moment.is_zero() {
            continue;
        }
        let d = alpha.iter().map(|&a| a as i64).sum::<i64>();
        let half_d = HalfInt::from_twice(d);
        // Coefficient of (-theta^2)^t in φ^# times the measure factor;
        // prod_{i<j}(d/2 - i) / j! is the generalized binomial C(d/2, j).
        let mut weights = vec![Rational::ZERO; n + 1];
        for (j, wj) in (0..=n).map(|j| (j, gen_binomial(half_d, j as u64))) {
            for l in 0..=(n - j) {
                weights[j + l] += &(&wj * &gen_binomial(weight_a, l as u64));
            }
        }
        let ferm_part = SuperPolynomial::from_term(
            spec,
            SuperMonomial::from_parts(&vec![0u8; spec.nbos()], mono.ferm_mask()),
            Rational::ONE,
        );
        let mut expanded = SuperPolynomial::zero(spec);
        for (t, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                expanded.add_scaled(w, &(&powers[t] * &ferm_part));
            }
        }
        let top = expanded.berezin(ss.block()).constant_term();
        total += &(&(c * &moment.coeff) * &top);
    }
    Ok(ScaledScalar::new(total, unit_exponent(m, n)))
}

/// Integration through the Fischer decomposition: only the `R^{2j}` times
/// constant components contribute, each with the value of `∫ 1`.
pub struct FischerIntegrator {
    splitter: FischerSplitter,
    one: ScaledScalar,
}

impl FischerIntegrator {
    pub fn new(ss: &Superspace, max_degree: usize) -> Result<Self, IntegrationError> {
        if ss.m() == 0 {
            return Err(IntegrationError::ZeroM);
        }
        let splitter = FischerSplitter::new(ss, max_degree).map_err(|e| match e {
            HarmonicError::FischerObstruction(m) => IntegrationError::FischerObstruction(m),
            _ => IntegrationError::FischerObstruction(ss.superdim()),
        })?;
        let one = pizzetti(&SuperPolynomial::one(ss.spec()), ss)?;
        Ok(Self { splitter, one })
    }

    pub fn integrate(&self, f: &SuperPolynomial) -> ScaledScalar {
        let mut c = Rational::ZERO;
        for k in (0..=f.degree().unwrap_or(0)).step_by(2) {
            let part = f.homogeneous_part(k);
            if part.is_zero() {
                continue;
            }
            let comps = self.splitter.split(&part, k);
            c += &comps[k / 2].constant_term();
        }
        self.one.scale(&c)
    }
}

pub fn fischer_route_integral(
    f: &SuperPolynomial,
    ss: &Superspace,
) -> Result<ScaledScalar, IntegrationError> {
    if ss.m() > 0 && in_minus_2n(ss.superdim()) {
        return Err(IntegrationError::FischerObstruction(ss.superdim()));
    }
    Ok(FischerIntegrator::new(ss, f.degree().unwrap_or(0))?.integrate(f))
}

/// `<f|g> = ∫ f g` (real coefficients, so no conjugation).
pub fn sphere_bilinear(
    f: &SuperPolynomial,
    g: &SuperPolynomial,
    ss: &Superspace,
) -> Result<ScaledScalar, IntegrationError> {
    pizzetti(&(f * g), ss)
}

/// The spherical mean `Mf(x, L) = ∫_{S_y} f(x + L y)`, a polynomial in the
/// `x` block and `L` with coefficients in units of `pi^{floor(M/2)}`.
#[derive(Debug, Clone)]
pub struct MeanResult {
    pub poly: SuperPolynomial,
    pub pi_exponent: i64,
    m: usize,
    n: usize,
}

impl MeanResult {
    pub fn spec(&self) -> &Arc<VarSpec> {
        self.poly.spec()
    }

    pub fn l_var(&self) -> Var {
        self.spec().lookup("L").expect("mean spec has L")
    }

    pub fn x_space(&self) -> Superspace {
        Superspace::on_block(self.spec(), BlockId(0))
    }

    /// Whether only even powers of `L` occur.
    pub fn is_even_in_l(&self) -> bool {
        let Var::Bos(l) = self.l_var() else {
            unreachable!()
        };
        self.poly.terms().all(|(m, _)| m.bos_exp(l) % 2 == 0)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }
}

/// Lifts `f` over `R^{m|2n}` into the mean spec via `X -> X + L Y`.
pub fn shifted_argument(f: &SuperPolynomial, ss: &Superspace) -> (Arc<VarSpec>, SuperPolynomial) {
    let target = Arc::new(VarSpec::mean_space(ss.m(), ss.n()));
    let (xb, yb) = (
        target.block(BlockId(0)).clone(),
        target.block(BlockId(1)).clone(),
    );
    let l = SuperPolynomial::var(&target, target.lookup("L").expect("L"));
    let src = ss.spec().block(ss.block()).clone();
    let lifted = f.substitute(&target, |v| {
        let idx = src
            .supervector()
            .iter()
            .position(|&w| w == v)
            .expect("variable of the block");
        let (xv, yv) = (xb.supervector()[idx], yb.supervector()[idx]);
        &SuperPolynomial::var(&target, xv) + &(&l * &SuperPolynomial::var(&target, yv))
    });
    (target, lifted)
}

pub fn sphere_mean(f: &SuperPolynomial, ss: &Superspace) -> Result<MeanResult, IntegrationError> {
    if ss.m() == 0 {
        return Err(IntegrationError::ZeroM);
    }
    let (target, lifted) = shifted_argument(f, ss);
    let yspace = Superspace::on_block(&target, BlockId(1));
    let (poly, pi_exponent) = pizzetti_partial(&lifted, &yspace)?;
    Ok(MeanResult {
        poly,
        pi_exponent,
        m: ss.m(),
        n: ss.n(),
    })
}

/// `sum_j c_j L^{2j} ∇^{2j} f`, the series form of the mean.
pub fn mean_series(f: &SuperPolynomial, ss: &Superspace) -> Result<MeanResult, IntegrationError> {
    if ss.m() == 0 {
        return Err(IntegrationError::ZeroM);
    }
    let (target, lifted) = shifted_argument(f, ss);
    let x_only = lifted
        .eval_block_zero(BlockId(1))
        .eval_block_zero(BlockId(2));
    let xspace = Superspace::on_block(&target, BlockId(0));
    let lap = xspace.laplacian();
    let l = SuperPolynomial::var(&target, target.lookup("L").expect("L"));
    let l2 = &l * &l;
    let mut out = SuperPolynomial::zero(&target);
    let mut cur = x_only;
    let mut lpow = SuperPolynomial::one(&target);
    let mut j = 0;
    while !cur.is_zero() {
        let c = pizzetti_coefficient(ss.superdim(), j);
        out.add_scaled(&c, &(&lpow * &cur));
        cur = lap.apply(&cur);
        lpow = &lpow * &l2;
        j += 1;
    }
    Ok(MeanResult {
        poly: out,
        pi_exponent: unit_exponent(ss.m(), ss.n()),
        m: ss.m(),
        n: ss.n(),
    })
}

/// `[∇²_x - d²/dL² - (M-1) (1/L) d/dL] Mf`, which vanishes identically.
pub fn darboux_residual(
    f: &SuperPolynomial,
    ss: &Superspace,
) -> Result<SuperPolynomial, IntegrationError> {
    let mean = sphere_mean(f, ss)?;
    Ok(darboux_operator(&mean))
}

pub fn darboux_operator(mean: &MeanResult) -> SuperPolynomial {
    let Var::Bos(li) = mean.l_var() else {
        unreachable!()
    };
    let big_m = mean.m as i64 - 2 * mean.n as i64;
    let g = &mean.poly;
    let mut out = mean.x_space().laplacian().apply(g);
    out.add_scaled(&-Rational::ONE, &g.deriv(Var::Bos(li)).deriv(Var::Bos(li)));
    // (1/L) d/dL on an even polynomial in L: x^a L^e -> e x^a L^{e-2}.
    let mut div = SuperPolynomial::zero(g.spec());
    for (mono, c) in g.terms() {
        let e = mono.bos_exp(li);
        if e == 0 {
            continue;
        }
        assert!(e >= 2, "mean must be even in L");
        div.add_term(
            mono.with_bos_exp(li, e - 2),
            c * &Rational::from_integer(e as i64),
        );
    }
    out.add_scaled(&Rational::from_integer(-(big_m - 1)), &div);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::parse;

    fn ss(m: usize, n: usize) -> Superspace {
        Superspace::new(m, n)
    }

    #[test]
    fn pizzetti_of_one() {
        let s = ss(2, 0);
        assert_eq!(
            pizzetti(&SuperPolynomial::one(s.spec()), &s).unwrap(),
            ScaledScalar::new(Rational::from_integer(2), 1)
        );
        let s = ss(3, 1);
        assert_eq!(
            pizzetti(&SuperPolynomial::one(s.spec()), &s).unwrap(),
            ScaledScalar::new(Rational::from_integer(2), 0)
        );
        let s = ss(2, 1);
        assert!(pizzetti(&SuperPolynomial::one(s.spec()), &s)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn moments() {
        assert_eq!(
            bosonic_sphere_moment(&[0, 0, 0]),
            ScaledScalar::new(Rational::from_integer(4), 1)
        );
        assert_eq!(
            bosonic_sphere_moment(&[2, 0, 0]),
            ScaledScalar::new(Rational::new(4, 3), 1)
        );
        assert!(bosonic_sphere_moment(&[1, 0]).is_zero());
    }

    #[test]
    fn oracle_agrees_on_small_inputs() {
        let s = ss(3, 1);
        for text in ["1", "-e1*e2", "x1^2", "x1^2*e1*e2 + 3*x2^4"] {
            let f = parse(s.spec(), text).unwrap();
            assert_eq!(
                berezin_sphere_oracle(&f, &s).unwrap(),
                pizzetti(&f, &s).unwrap(),
                "{text}"
            );
            assert_eq!(
                fischer_route_integral(&f, &s).unwrap(),
                pizzetti(&f, &s).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn mean_of_r_squared() {
        let s = ss(3, 1);
        let mean = sphere_mean(&s.r_squared_poly(), &s).unwrap();
        let spec = mean.spec().clone();
        let expect = parse(&spec, "2*x1^2 + 2*x2^2 + 2*x3^2 - 2*e1*e2 + 2*L^2").unwrap();
        assert_eq!(mean.poly, expect);
        assert!(mean.is_even_in_l());
        assert!(darboux_operator(&mean).is_zero());
    }
}
