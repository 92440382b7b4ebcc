//! Superpolynomials over named blocks of commuting and anticommuting variables.
//!
//! Fermionic monomials are stored in ascending variable order with the sign of
//! any reordering folded into the coefficient. Fermionic derivatives act from
//! the left: on `e_{i1} ... e_{ik}`, `d/de_{il}` gives `(-1)^(l-1)` times the
//! monomial with `e_{il}` removed.

mod monomial;
mod parse;
mod poly;
mod varspec;

pub use monomial::SuperMonomial;
pub use parse::{parse, ParseError};
pub use poly::SuperPolynomial;
pub use varspec::{Block, BlockId, Var, VarSpec, VarSpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != other.is_odd())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuperError {
    #[error("polynomials are built over different variable specs")]
    SpecMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid substitution: {0}")]
    BadSubstitution(String),
}
