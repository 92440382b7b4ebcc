use std::fmt;
use std::sync::Arc;

use crate::exactmath::Rational;
use crate::superalgebra::{Parity, SuperPolynomial};

type Rule = Arc<dyn Fn(&SuperPolynomial) -> SuperPolynomial + Send + Sync>;

/// A linear endomorphism of superpolynomials given by an application rule.
///
/// Every operator built here maps homogeneous polynomials of degree `k` to
/// homogeneous polynomials of degree `k + degree_shift` and has a definite
/// Grassmann parity.
#[derive(Clone)]
pub struct LinearOp {
    name: String,
    degree_shift: i32,
    parity: Parity,
    rule: Rule,
}

impl fmt::Debug for LinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearOp({}, shift {}, {:?})",
            self.name, self.degree_shift, self.parity
        )
    }
}

impl LinearOp {
    pub fn new(
        name: impl Into<String>,
        degree_shift: i32,
        parity: Parity,
        rule: impl Fn(&SuperPolynomial) -> SuperPolynomial + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            degree_shift,
            parity,
            rule: Arc::new(rule),
        }
    }

    pub fn identity() -> Self {
        Self::new("id", 0, Parity::Even, |f| f.clone())
    }

    pub fn zero(degree_shift: i32, parity: Parity) -> Self {
        Self::new("0", degree_shift, parity, |f| {
            SuperPolynomial::zero(f.spec())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree_shift(&self) -> i32 {
        self.degree_shift
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        (self.rule)(f)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOp) -> LinearOp {
        let (a, b) = (self.rule.clone(), other.rule.clone());
        Self {
            name: format!("{}∘{}", self.name, other.name),
            degree_shift: self.degree_shift + other.degree_shift,
            parity: self.parity + other.parity,
            rule: Arc::new(move |f| a(&b(f))),
        }
    }

    fn check_compatible(&self, other: &LinearOp) {
        assert_eq!(
            self.degree_shift, other.degree_shift,
            "adding operators with different degree shifts"
        );
        assert_eq!(
            self.parity, other.parity,
            "adding operators of different parity"
        );
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Rational, other: &LinearOp) -> LinearOp {
        self.check_compatible(other);
        let (a, b) = (self.rule.clone(), other.rule.clone());
        Self {
            name: format!("({} + {}·{})", self.name, c, other.name),
            degree_shift: self.degree_shift,
            parity: self.parity,
            rule: Arc::new(move |f| {
                let mut out = a(f);
                out.add_scaled(&c, &b(f));
                out
            }),
        }
    }

    pub fn add(&self, other: &LinearOp) -> LinearOp {
        self.add_scaled(Rational::ONE, other)
    }

    pub fn sub(&self, other: &LinearOp) -> LinearOp {
        self.add_scaled(-Rational::ONE, other)
    }

    pub fn scale(&self, c: Rational) -> LinearOp {
        let a = self.rule.clone();
        Self {
            name: format!("{}·{}", c, self.name),
            degree_shift: self.degree_shift,
            parity: self.parity,
            rule: Arc::new(move |f| a(f).scale(&c)),
        }
    }

    /// `self + c` (shift by a scalar multiple of the identity); needs shift 0.
    pub fn shifted(&self, c: Rational) -> LinearOp {
        assert_eq!(self.degree_shift, 0);
        assert_eq!(self.parity, Parity::Even);
        let a = self.rule.clone();
        Self {
            name: format!("({} + {})", self.name, c),
            degree_shift: 0,
            parity: Parity::Even,
            rule: Arc::new(move |f| {
                let mut out = a(f);
                out.add_scaled(&c, f);
                out
            }),
        }
    }

    /// `[A, B] = AB - (-1)^{|A||B|} BA`.
    pub fn supercommutator(&self, other: &LinearOp) -> LinearOp {
        let (a, b) = (self.rule.clone(), other.rule.clone());
        let sign = if self.parity.is_odd() && other.parity.is_odd() {
            Rational::ONE
        } else {
            -Rational::ONE
        };
        Self {
            name: format!("[{}, {}]", self.name, other.name),
            degree_shift: self.degree_shift + other.degree_shift,
            parity: self.parity + other.parity,
            rule: Arc::new(move |f| {
                let mut out = a(&b(f));
                out.add_scaled(&sign, &b(&a(f)));
                out
            }),
        }
    }
}
