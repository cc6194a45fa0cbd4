//! Homogeneous iterates, period and dynatomic polynomials, rational roots.
//!
//! Iterates are computed on integer-scaled forms: with `lambda` the common
//! denominator of the map's coefficients, `lambda * (F_1, G_1)` has integer
//! coefficients and the scaled `n`-th iterate equals
//! `lambda^(2^n - 1) * (F_n, G_n)`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::Map;
use crate::error::{Error, Result};
use crate::numeric::intpoly::{self, IntForm, IntPoly};
use crate::numeric::{HomogeneousBivariatePolynomial, Rational, UnivariatePolynomial};

/// Largest iterate index accepted; forms of degree `2^n` beyond this are
/// not useful at desk scale.
pub const MAX_ITERATE: u32 = 16;

/// Moebius function.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `phi^n = [F_n : G_n]`, both forms of degree `2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratePair {
    pub f: HomogeneousBivariatePolynomial,
    pub g: HomogeneousBivariatePolynomial,
    pub n: u32,
}

fn check_period(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ITERATE {
        Err(Error::UnsupportedPeriod(n))
    } else {
        Ok(())
    }
}

/// Integer-scaled homogenization of a map and its iterates.
pub(crate) struct Iterates {
    f1: [BigInt; 3],
    g1: [BigInt; 3],
    lambda: BigInt,
    forms: Vec<(IntForm, IntForm)>,
}

impl Iterates {
    pub fn new(map: &Map) -> Self {
        let z = BigInt::zero;
        let (f1, g1, lambda) = match map {
            Map::Quadratic(m) => {
                let (n, d) = (m.c.numer().clone(), m.c.denom().clone());
                ([n, z(), d.clone()], [d.clone(), z(), z()], d)
            }
            Map::Kb(m) => {
                let (k1, k2) = (m.k().numer(), m.k().denom());
                let (b1, b2) = (m.b().numer(), m.b().denom());
                let lambda = k2 * b2;
                ([b1 * k2, z(), k1 * b2], [z(), lambda.clone(), z()], lambda)
            }
        };
        let first = (
            IntForm::new(2, f1.to_vec()),
            IntForm::new(2, g1.to_vec()),
        );
        Iterates {
            f1,
            g1,
            lambda,
            forms: vec![first],
        }
    }

    /// Scaled `(F_n, G_n)`.
    pub fn get(&mut self, n: u32) -> &(IntForm, IntForm) {
        while self.forms.len() < n as usize {
            let (f, g) = self.forms.last().expect("nonempty");
            let next = (
                IntForm::compose_quadratic(&self.f1, f, g),
                IntForm::compose_quadratic(&self.g1, f, g),
            );
            self.forms.push(next);
        }
        &self.forms[n as usize - 1]
    }

    /// `lambda^(2^n - 1)`, the factor between scaled and exact iterates.
    pub fn scale(&self, n: u32) -> BigInt {
        num_traits::pow(self.lambda.clone(), (1usize << n) - 1)
    }

    /// Scaled `y F_n - x G_n`.
    pub fn period_form(&mut self, n: u32) -> IntForm {
        let (f, g) = self.get(n);
        f.times_y().sub(&g.times_x())
    }
}

/// Memoized dynatomic forms of one map; iterates are shared across `n`.
pub(crate) struct Dynatomic {
    iterates: Iterates,
    period: HashMap<u32, IntForm>,
    dynatomic: HashMap<u32, IntForm>,
}

impl Dynatomic {
    pub fn new(map: &Map) -> Self {
        Dynatomic {
            iterates: Iterates::new(map),
            period: HashMap::new(),
            dynatomic: HashMap::new(),
        }
    }

    /// Primitive `Phi_n` as an integer form.
    fn primitive_period(&mut self, n: u32) -> IntForm {
        if let Some(f) = self.period.get(&n) {
            return f.clone();
        }
        let f = self.iterates.period_form(n).primitive();
        self.period.insert(n, f.clone());
        f
    }

    /// Canonical `Phi*_n` as an integer form of degree
    /// `sum_{k | n} mu(n/k) (2^k + 1)`.
    pub fn form(&mut self, n: u32) -> Result<IntForm> {
        check_period(n)?;
        if let Some(f) = self.dynatomic.get(&n) {
            return Ok(f.clone());
        }
        let mut num = IntForm::new(0, vec![BigInt::one()]);
        let mut den = IntForm::new(0, vec![BigInt::one()]);
        for k in (1..=n).filter(|k| n % k == 0) {
            match moebius(u64::from(n / k)) {
                1 => num = num.mul(&self.primitive_period(k)),
                -1 => den = den.mul(&self.primitive_period(k)),
                _ => {}
            }
        }
        let q = num.exact_div(&den).ok_or(Error::DynatomicDivision)?;
        let q = q.primitive();
        self.dynatomic.insert(n, q.clone());
        Ok(q)
    }

    /// Canonical `Phi*_n(z)` with integer coefficients, lowest degree first.
    pub fn int_poly(&mut self, n: u32) -> Result<IntPoly> {
        let mut c = self.form(n)?.coeffs;
        intpoly::trim(&mut c);
        Ok(c)
    }
}

/// Symbolic `n`-fold composition with exact coefficients.
pub fn iterate_homogeneous(map: &Map, n: u32) -> Result<IteratePair> {
    check_period(n)?;
    let mut it = Iterates::new(map);
    let scale = Rational::from(it.scale(n)).recip()?;
    let (f, g) = it.get(n);
    let to_exact = |form: &IntForm| {
        HomogeneousBivariatePolynomial::from_bigints(form.degree, &form.coeffs).scale(&scale)
    };
    Ok(IteratePair {
        f: to_exact(f),
        g: to_exact(g),
        n,
    })
}

/// `Phi_n(z)`: the dehomogenization of `y F_n - x G_n`, exact coefficients.
pub fn period_polynomial(map: &Map, n: u32) -> Result<UnivariatePolynomial> {
    check_period(n)?;
    let mut it = Iterates::new(map);
    let scale = Rational::from(it.scale(n)).recip()?;
    let form = it.period_form(n);
    Ok(UnivariatePolynomial::from_bigints(&form.coeffs).scale(&scale))
}

/// Canonical homogeneous `Phi*_n(x, y)`; keeps the factors of `y` that the
/// affine polynomial drops (roots at infinity).
pub fn dynatomic_form(map: &Map, n: u32) -> Result<HomogeneousBivariatePolynomial> {
    let f = Dynatomic::new(map).form(n)?;
    Ok(HomogeneousBivariatePolynomial::from_bigints(f.degree, &f.coeffs))
}

/// Canonical `Phi*_n(z) = prod_{k | n} Phi_k(z)^mu(n/k)`: primitive integer
/// coefficients, positive leading coefficient.
pub fn dynatomic_polynomial(map: &Map, n: u32) -> Result<UnivariatePolynomial> {
    Ok(UnivariatePolynomial::from_bigints(
        &Dynatomic::new(map).int_poly(n)?,
    ))
}

/// The two factors of `Phi*_4` for `kz + b/z`, with coefficients as
/// polynomials in `k` and `b`.
pub fn psi4_lambda4(
    k: &Rational,
    b: &Rational,
) -> Result<(UnivariatePolynomial, UnivariatePolynomial)> {
    if k.is_zero() || b.is_zero() {
        return Err(Error::InvalidMap("k and b must be nonzero".into()));
    }
    let kp = |e: i32| k.pow(e);
    let bp = |e: i32| b.pow(e);
    let r = |n: i64| Rational::from(n);

    let psi = in_z_squared(vec![
        bp(2) * k,
        r(2) * b + r(2) * b * kp(2),
        k + &kp(3),
    ]);

    let lambda = in_z_squared(vec![
        bp(4) * kp(5),
        bp(3) + bp(3) * kp(2) + r(2) * bp(3) * kp(4) + r(4) * bp(3) * kp(6),
        bp(2) * k + r(3) * bp(2) * kp(3) + r(4) * bp(2) * kp(5) + r(6) * bp(2) * kp(7),
        b * kp(4) + r(2) * b * kp(6) + r(4) * b * kp(8),
        kp(9),
    ]);
    Ok((psi, lambda))
}

/// `p(z) -> p(z^2)`; the `psi`/`lambda` coefficient lists are in `z^2`.
fn in_z_squared(coeffs: Vec<Rational>) -> UnivariatePolynomial {
    let mut out = Vec::with_capacity(2 * coeffs.len());
    for c in coeffs {
        out.push(c);
        out.push(Rational::zero());
    }
    UnivariatePolynomial::new(out)
}

/// Every rational root of a nonzero polynomial. Roots modulo a small prime
/// are lifted p-adically and turned back into fractions, so the extreme
/// coefficients never need factoring.
pub fn rational_roots(p: &UnivariatePolynomial) -> Result<BTreeSet<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(int_rational_roots(&p.primitive_integer(), None))
}

/// Rational roots of height at most `max_height`; only small candidate
/// numerators and denominators are tried, so no factoring is needed.
pub fn rational_roots_bounded(
    p: &UnivariatePolynomial,
    max_height: u64,
) -> Result<BTreeSet<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(int_rational_roots(&p.primitive_integer(), Some(max_height)))
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        n.is_multiple_of(d)
    }
}

fn small_divisors(n: &BigInt, bound: u64) -> Vec<BigInt> {
    (1..=bound)
        .map(BigInt::from)
        .filter(|d| n.is_multiple_of(d))
        .collect()
}

/// Roots of an integer polynomial (lowest degree first, trimmed).
pub(crate) fn int_rational_roots(f: &[BigInt], bound: Option<u64>) -> BTreeSet<Rational> {
    let mut roots = BTreeSet::new();
    let low = f.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.insert(Rational::zero());
    }
    let g = &f[low..];
    if g.len() < 2 {
        return roots;
    }
    let Some(h) = bound else {
        roots.extend(padic_rational_roots(g));
        return roots;
    };
    let (nums, dens) = (small_divisors(&g[0], h), small_divisors(&g[g.len() - 1], h));
    let at_one: BigInt = g.iter().sum();
    let at_minus_one: BigInt = g
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
        .sum();
    for v in &dens {
        for u in &nums {
            if !u.gcd(v).is_one() {
                continue;
            }
            for s in [u.clone(), -u] {
                if !divides(&(v - &s), &at_one) || !divides(&(v + &s), &at_minus_one) {
                    continue;
                }
                if intpoly::eval_homogeneous(g, &s, v).is_zero() {
                    roots.insert(Rational::new(s, v.clone()).expect("v > 0"));
                }
            }
        }
    }
    roots
}

fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(f: &[BigInt]) -> IntPoly {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `f / gcd(f, f')` as a primitive integer polynomial.
fn squarefree(f: &[BigInt]) -> IntPoly {
    let p = UnivariatePolynomial::from_bigints(f);
    let mut a = p.clone();
    let mut b = UnivariatePolynomial::from_bigints(&derivative(f));
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    if a.degree() == Some(0) {
        return f.to_vec();
    }
    p.div_rem(&a).expect("nonzero gcd").0.primitive_integer()
}

/// `u/v` with `u = a v (mod m)`, `|u| <= n`, `0 < v <= n`, if one exists.
fn reconstruct(a: &BigInt, m: &BigInt, n: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    let (u, v) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    (!v.is_zero() && &v <= n).then_some((u, v))
}

/// Rational roots of an integer polynomial with nonzero constant term.
fn padic_rational_roots(f: &[BigInt]) -> Vec<Rational> {
    let g = squarefree(f);
    let (a0, an) = (&g[0], &g[g.len() - 1]);
    if g.len() == 2 {
        return vec![Rational::new(-a0, an.clone()).expect("nonzero leading")];
    }
    // a root u/v has |u| <= |a0| and v <= |an|
    let n = a0.abs().max(an.abs());
    let target = BigInt::from(2) * &n * &n;
    let dg = derivative(&g);
    for p in (3u64..).filter(|&p| is_small_prime(p)) {
        let pb = BigInt::from(p);
        if an.is_multiple_of(&pb) {
            continue;
        }
        let residues: Vec<BigInt> = (0..p)
            .map(BigInt::from)
            .filter(|r| eval_mod(&g, r, &pb).is_zero())
            .collect();
        if residues.iter().any(|r| eval_mod(&dg, r, &pb).is_zero()) {
            continue;
        }
        let mut out = Vec::new();
        for mut r in residues {
            let mut m = pb.clone();
            while m <= target {
                m = &m * &m;
                let inv = eval_mod(&dg, &r, &m).extended_gcd(&m).x;
                r = (&r - eval_mod(&g, &r, &m) * inv).mod_floor(&m);
            }
            if let Some((u, v)) = reconstruct(&r, &m, &n) {
                if intpoly::eval_homogeneous(&g, &u, &v).is_zero() {
                    out.push(Rational::new(u, v).expect("v > 0"));
                }
            }
        }
        return out;
    }
    unreachable!("a squarefree polynomial has finitely many bad primes")
}

/// Rational points of exact period `n`: roots of `Phi*_n` whose orbit
/// closes after exactly `n` steps.
pub fn periodic_points_exact(map: &Map, n: u32, max_steps: usize) -> Result<BTreeSet<Rational>> {
    let f = Dynatomic::new(map).int_poly(n)?;
    Ok(filter_exact(map, n, int_rational_roots(&f, None), max_steps))
}

/// [`periodic_points_exact`] restricted to points of height at most
/// `max_height`.
pub fn periodic_points_bounded(
    map: &Map,
    n: u32,
    max_height: u64,
    max_steps: usize,
) -> Result<BTreeSet<Rational>> {
    let f = Dynatomic::new(map).int_poly(n)?;
    Ok(filter_exact(
        map,
        n,
        int_rational_roots(&f, Some(max_height)),
        max_steps,
    ))
}

pub(crate) fn filter_exact(
    map: &Map,
    n: u32,
    roots: BTreeSet<Rational>,
    max_steps: usize,
) -> BTreeSet<Rational> {
    roots
        .into_iter()
        .filter(|z| map.period_of(z, max_steps) == Some(n as usize))
        .collect()
}
