//! Exact bivariate polynomials in `x` and `y` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::catalan::binomial;

/// Coefficients keyed by `(x-degree, y-degree)`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff.into(), dx, dy);
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `(x-1)^a (y-1)^b`.
    pub fn shifted_power(a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=a {
            let ci = BigInt::from(binomial(a as usize, i as usize));
            let si = if (a - i).is_multiple_of(2) { ci } else { -ci };
            for j in 0..=b {
                let cj = BigInt::from(binomial(b as usize, j as usize));
                let sj = if (b - j).is_multiple_of(2) { cj } else { -cj };
                p.add_term(&si * &sj, i, j);
            }
        }
        p
    }

    pub fn add_term(&mut self, coeff: BigInt, dx: u32, dy: u32) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(dx, dy), c)| (dx, dy, c))
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(dx, dy), c)| {
                c * num_traits::pow(x.clone(), dx as usize)
                    * num_traits::pow(y.clone(), dy as usize)
            })
            .sum()
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> BigInt {
        self.eval(&BigInt::from(x), &BigInt::from(y))
    }

    /// `p(1, y)`.
    pub fn at_x_one(&self) -> Self {
        let mut p = Self::zero();
        for (&(_, dy), c) in &self.terms {
            p.add_term(c.clone(), 0, dy);
        }
        p
    }

    /// `p(x, 1)`.
    pub fn at_y_one(&self) -> Self {
        let mut p = Self::zero();
        for (&(dx, _), c) in &self.terms {
            p.add_term(c.clone(), dx, 0);
        }
        p
    }

    /// `p(y, x)`.
    pub fn swapped(&self) -> Self {
        let mut p = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            p.add_term(c.clone(), dy, dx);
        }
        p
    }

    /// `(dx, dy, coeff)` triples in print order.
    pub fn triples(&self) -> Vec<(u32, u32, BigInt)> {
        self.print_order()
            .map(|(dx, dy, c)| (dx, dy, c.clone()))
            .collect()
    }

    /// x-degree descending, then y-degree ascending.
    fn print_order(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        let mut keys: Vec<_> = self
            .terms
            .iter()
            .map(|(&(dx, dy), c)| (dx, dy, c))
            .collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        keys.into_iter()
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (dx, dy, c)) in self.print_order().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let monomial = match (dx, dy) {
                (0, 0) => String::new(),
                _ => {
                    let part = |v: &str, d: u32| match d {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{d}"),
                    };
                    format!("{}{}", part("x", dx), part("y", dy))
                }
            };
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{mag}{monomial}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as a list of `[dx, dy, coeff]` triples; coefficients as decimal strings
/// so that arbitrarily large values survive JSON.
impl Serialize for BivariatePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (dx, dy, c) in self.print_order() {
            seq.serialize_element(&(dx, dy, c.to_string()))?;
        }
        seq.end()
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(c.clone(), dx, dy);
        }
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), k) in &rhs.terms {
                out.add_term(c * k, a + d, b + e);
            }
        }
        out
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl std::iter::Sum for BivariatePoly {
    fn sum<I: Iterator<Item = BivariatePoly>>(iter: I) -> Self {
        iter.fold(BivariatePoly::zero(), |acc, p| &acc + &p)
    }
}
