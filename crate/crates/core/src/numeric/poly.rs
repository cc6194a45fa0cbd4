use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use super::intpoly::{self, IntPoly};
use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q in the variable `z`.
///
/// `coefficients()[i]` multiplies `z^i`; there is never a trailing zero,
/// so the zero polynomial is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub(crate) fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let t = top / lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&t * c);
            }
            quot[k] = t;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Primitive integer coefficients with positive leading coefficient.
    /// The zero polynomial maps to itself.
    pub fn canonical(&self) -> Self {
        Self::from_bigints(&self.primitive_integer())
    }

    /// Clears denominators and content; leading coefficient positive.
    pub(crate) fn primitive_integer(&self) -> IntPoly {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
        let ints: IntPoly = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        intpoly::primitive(ints)
    }

    /// True when `other = lambda * self` for some nonzero rational lambda.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.canonical() == other.canonical()
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let a = c.abs();
            let monomial = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{a}*{monomial}"));
            }
        }
        out
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("z"))
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePolynomial({self})")
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UnivariatePolynomial::new(out)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Binary form over Q: `coefficients()[i]` multiplies `x^i y^(degree-i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousBivariatePolynomial {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomogeneousBivariatePolynomial {
    pub fn new(degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Parse(format!(
                "form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(HomogeneousBivariatePolynomial { degree, coeffs })
    }

    pub(crate) fn from_bigints(degree: usize, coeffs: &[BigInt]) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().cloned().map(Rational::from).collect();
        c.resize(degree + 1, Rational::zero());
        HomogeneousBivariatePolynomial { degree, coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HomogeneousBivariatePolynomial {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut ypow = Rational::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + &(c * &ypow);
            ypow *= y;
        }
        acc
    }

    /// `p(z) = F(z, 1)`.
    pub fn dehomogenize(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.clone())
    }

    /// Homogenizes `p` to the given total degree (`>= deg p`).
    pub fn homogenize(p: &UnivariatePolynomial, degree: usize) -> Result<Self> {
        if p.coefficients().len() > degree + 1 {
            return Err(Error::Parse(format!(
                "cannot homogenize degree {:?} to {degree}",
                p.degree()
            )));
        }
        let mut c = p.coefficients().to_vec();
        c.resize(degree + 1, Rational::zero());
        Ok(HomogeneousBivariatePolynomial { degree, coeffs: c })
    }
}

impl Mul for &HomogeneousBivariatePolynomial {
    type Output = HomogeneousBivariatePolynomial;
    fn mul(self, rhs: &HomogeneousBivariatePolynomial) -> HomogeneousBivariatePolynomial {
        let mut out = vec![Rational::zero(); self.degree + rhs.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        HomogeneousBivariatePolynomial {
            degree: self.degree + rhs.degree,
            coeffs: out,
        }
    }
}

impl fmt::Display for HomogeneousBivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            out.push_str(match (out.is_empty(), c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let mut factors = Vec::new();
            let a = c.abs();
            if !a.is_one() || (i == 0 && j == 0) {
                factors.push(a.to_string());
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for HomogeneousBivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousBivariatePolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn display_descending_integer_form() {
        let p = UnivariatePolynomial::from_integers(&[1, 0, 4, 0, 2]);
        assert_eq!(p.to_string(), "2*z^4 + 4*z^2 + 1");
        let p = UnivariatePolynomial::from_integers(&[-13, -1, 1]);
        assert_eq!(p.to_string(), "z^2 - z - 13");
        let p = UnivariatePolynomial::new(vec![q("1/2"), q("-3/2")]);
        assert_eq!(p.to_string(), "-3/2*z + 1/2");
        assert_eq!(UnivariatePolynomial::zero().to_string(), "0");
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = UnivariatePolynomial::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UnivariatePolynomial::from_integers(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_canonical_form() {
        let a = UnivariatePolynomial::new(vec![q("1/3"), q("-2"), q("5/7")]);
        let b = UnivariatePolynomial::new(vec![q("-4"), q("0"), q("3/2"), q("1")]);
        let prod = &a * &b;
        let (quot, rem) = prod.div_rem(&b).unwrap();
        assert_eq!(quot, a);
        assert!(rem.is_zero());
        let c = a.canonical();
        assert_eq!(c, UnivariatePolynomial::from_integers(&[7, -42, 15]));
        assert!(a.is_proportional(&a.scale(&q("-9/4"))));
        assert!(!a.is_proportional(&b));
        assert!(b.div_rem(&UnivariatePolynomial::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let p = UnivariatePolynomial::from_integers(&[-2, 1, 1]);
        assert!(p.eval(&q("1")).is_zero());
        assert!(p.eval(&q("-2")).is_zero());
        assert_eq!(p.eval(&q("1/2")), q("-5/4"));
    }

    #[test]
    fn form_display_and_dehomogenize() {
        let f = HomogeneousBivariatePolynomial::new(2, vec![q("1"), q("0"), q("1")]).unwrap();
        assert_eq!(f.to_string(), "x^2 + y^2");
        let g = HomogeneousBivariatePolynomial::new(2, vec![q("0"), q("1"), q("0")]).unwrap();
        assert_eq!(g.to_string(), "x*y");
        assert_eq!((&f * &g).degree(), 4);
        assert_eq!(f.dehomogenize().to_string(), "z^2 + 1");
        assert_eq!(f.eval(&q("2"), &q("3")), q("13"));
        assert!(HomogeneousBivariatePolynomial::new(2, vec![q("1")]).is_err());
    }
}
