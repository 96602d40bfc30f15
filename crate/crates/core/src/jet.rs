//! Truncated bivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::KernelError;
use crate::rational::Q;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// A bivariate polynomial with all terms of total degree `>= truncation`
/// discarded, i.e. an element of `Q[x,y] / m^N`.
///
/// Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    coeffs: BTreeMap<Exponent, Q>,
    truncation: u32,
}

impl Jet {
    pub fn zero(truncation: u32) -> Self {
        Jet {
            coeffs: BTreeMap::new(),
            truncation,
        }
    }

    pub fn constant(c: Q, truncation: u32) -> Self {
        Self::from_terms([((0, 0), c)], truncation)
    }

    pub fn monomial(i: u32, j: u32, truncation: u32) -> Self {
        Self::from_terms([((i, j), Q::one())], truncation)
    }

    pub fn x(truncation: u32) -> Self {
        Self::monomial(1, 0, truncation)
    }

    pub fn y(truncation: u32) -> Self {
        Self::monomial(0, 1, truncation)
    }

    /// Builds a jet from terms; repeated exponents are summed, then zero
    /// coefficients and terms at or above the truncation are dropped.
    pub fn from_terms<I>(terms: I, truncation: u32) -> Self
    where
        I: IntoIterator<Item = (Exponent, Q)>,
    {
        let mut coeffs: BTreeMap<Exponent, Q> = BTreeMap::new();
        for ((i, j), c) in terms {
            if i as u64 + j as u64 >= truncation as u64 {
                continue;
            }
            *coeffs.entry((i, j)).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet { coeffs, truncation }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    /// Highest total degree of a stored term.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).max()
    }

    /// Lowest total degree of a stored term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).min()
    }

    /// Re-truncates at a lower (or equal) degree bound.
    pub fn truncated(&self, truncation: u32) -> Result<Jet, KernelError> {
        if truncation > self.truncation {
            return Err(KernelError::TruncationTooLow {
                needed: truncation,
                available: self.truncation,
            });
        }
        Ok(Self::from_terms(
            self.coeffs.iter().map(|(e, c)| (*e, c.clone())),
            truncation,
        ))
    }

    pub fn scale(&self, c: &Q) -> Jet {
        Self::from_terms(self.coeffs.iter().map(|(e, v)| (*e, v * c)), self.truncation)
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Jet {
        Self::from_terms(
            self.coeffs.iter().map(|((a, b), v)| ((a + i, b + j), v.clone())),
            self.truncation,
        )
    }

    pub fn pow(&self, mut exp: u32) -> Jet {
        let mut base = self.clone();
        let mut acc = Jet::constant(Q::one(), self.truncation);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `d/dx`; the result is only known modulo `m^(N-1)`.
    pub fn partial_x(&self) -> Jet {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * Q::from_integer((*i).into()))),
            self.truncation.saturating_sub(1),
        )
    }

    /// `d/dy`; the result is only known modulo `m^(N-1)`.
    pub fn partial_y(&self) -> Jet {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * Q::from_integer((*j).into()))),
            self.truncation.saturating_sub(1),
        )
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet::from_terms(
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(e, c)| (*e, c.clone())),
            self.truncation.min(rhs.truncation),
        )
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self + &(-rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            truncation: self.truncation,
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.truncation.min(rhs.truncation);
        let mut terms = Vec::with_capacity(self.coeffs.len() * rhs.coeffs.len());
        for ((a, b), c) in &self.coeffs {
            for ((i, j), d) in &rhs.coeffs {
                if a + b + i + j < n {
                    terms.push(((a + i, b + j), c * d));
                }
            }
        }
        Jet::from_terms(terms, n)
    }
}

/// Writes the jet in the input grammar, highest degree first.
impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        for (idx, ((i, j), c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (*i == 0 && *j == 0) {
                if abs.denom().is_one() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("({abs})"));
                }
            }
            for (var, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
