//! Dense integer polynomials and binary forms.
//!
//! Iterating a map symbolically is done on integer-scaled forms so that no
//! gcd normalization happens per coefficient operation; callers rescale to
//! exact rational results where they need them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients `c[i]` of `x^i` (or of `x^i y^(deg-i)` for forms).
pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(mut p: IntPoly) -> IntPoly {
    trim(&mut p);
    let g = content(&p);
    if g.is_zero() {
        return p;
    }
    let neg = p.last().is_some_and(|c| c.is_negative());
    let g = if neg { -g } else { g };
    if !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

/// `f / g` when `g` divides `f` in `Z[x]`; `g` must be primitive and nonzero.
pub(crate) fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let mut r: IntPoly = f.to_vec();
    trim(&mut r);
    let mut g = g.to_vec();
    trim(&mut g);
    let dg = g.len().checked_sub(1)?;
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < g.len() {
        return None;
    }
    let lead = g[dg].clone();
    let dq = r.len() - g.len();
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let top = &r[k + dg];
        if top.is_zero() {
            continue;
        }
        let (t, rem) = top.div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, gj) in g.iter().enumerate() {
            if !gj.is_zero() {
                r[k + j] -= &t * gj;
            }
        }
        q[k] = t;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

/// `sum c[i] u^i v^(n-i)` with `n = c.len() - 1`, i.e. `v^n p(u/v)`.
pub(crate) fn eval_homogeneous(p: &[BigInt], u: &BigInt, v: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * u + c * &vpow;
        vpow *= v;
    }
    acc
}

/// Binary form of the given degree; `coeffs[i]` multiplies `x^i y^(degree-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntForm {
    pub degree: usize,
    pub coeffs: IntPoly,
}

impl IntForm {
    pub fn new(degree: usize, mut coeffs: IntPoly) -> Self {
        debug_assert!(coeffs.len() <= degree + 1);
        coeffs.resize(degree + 1, BigInt::zero());
        IntForm { degree, coeffs }
    }

    pub fn mul(&self, other: &IntForm) -> IntForm {
        let mut c = mul(&self.coeffs, &other.coeffs);
        c.resize(self.degree + other.degree + 1, BigInt::zero());
        IntForm {
            degree: self.degree + other.degree,
            coeffs: c,
        }
    }

    pub fn add(&self, other: &IntForm) -> IntForm {
        assert_eq!(self.degree, other.degree, "forms of different degree");
        IntForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> IntForm {
        IntForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `y * self`
    pub fn times_y(&self) -> IntForm {
        let mut c = self.coeffs.clone();
        c.push(BigInt::zero());
        IntForm {
            degree: self.degree + 1,
            coeffs: c,
        }
    }

    /// `x * self`
    pub fn times_x(&self) -> IntForm {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coeffs.iter().cloned());
        IntForm {
            degree: self.degree + 1,
            coeffs: c,
        }
    }

    pub fn sub(&self, other: &IntForm) -> IntForm {
        assert_eq!(self.degree, other.degree, "forms of different degree");
        IntForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn primitive(&self) -> IntForm {
        IntForm::new(self.degree, primitive(self.coeffs.clone()))
    }

    /// Exact quotient of forms; `None` if the division leaves a remainder.
    pub fn exact_div(&self, g: &IntForm) -> Option<IntForm> {
        let degree = self.degree.checked_sub(g.degree)?;
        let q = exact_div(&self.coeffs, &primitive(g.coeffs.clone()))?;
        if q.len() > degree + 1 {
            return None;
        }
        Some(IntForm::new(degree, q))
    }

    /// `a F^2 + b F G + c G^2` for the quadratic form `[c, b, a]`
    /// (coefficients of `y^2`, `xy`, `x^2`).
    pub fn compose_quadratic(q: &[BigInt; 3], f: &IntForm, g: &IntForm) -> IntForm {
        let mut out = IntForm::new(f.degree * 2, Vec::new());
        if !q[2].is_zero() {
            out = out.add(&f.mul(f).scale(&q[2]));
        }
        if !q[1].is_zero() {
            out = out.add(&f.mul(g).scale(&q[1]));
        }
        if !q[0].is_zero() {
            out = out.add(&g.mul(g).scale(&q[0]));
        }
        out
    }
}
