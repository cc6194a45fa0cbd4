use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::enumeration_key;
use super::scan::run_chunked;
use crate::error::{Error, Result};
use crate::numeric::integer::{exact_sqrt_biguint, perfect_sqrt_u128};
use crate::numeric::{Rational, UnivariatePolynomial};

/// `y^2 = a4 t^4 + a3 t^3 + a2 t^2 + a1 t + a0` with `a4 != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticCurve {
    pub a4: Rational,
    pub a3: Rational,
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
}

impl QuarticCurve {
    pub fn new(a4: Rational, a3: Rational, a2: Rational, a1: Rational, a0: Rational) -> Result<Self> {
        if a4.is_zero() {
            return Err(Error::InvalidCurve("leading coefficient a4 is zero".into()));
        }
        Ok(QuarticCurve { a4, a3, a2, a1, a0 })
    }

    /// Integer coefficients, highest degree first.
    pub fn from_integers(c: [i64; 5]) -> Result<Self> {
        let [a4, a3, a2, a1, a0] = c.map(Rational::from);
        Self::new(a4, a3, a2, a1, a0)
    }

    /// `y^2 = t^4 + 6t^3 + 7t^2 + 2t + 1`
    pub fn first() -> Self {
        Self::from_integers([1, 6, 7, 2, 1]).expect("nonzero a4")
    }

    /// `y^2 = t^4 - 2t^3 - 5t^2 - 2t + 1`
    pub fn second() -> Self {
        Self::from_integers([1, -2, -5, -2, 1]).expect("nonzero a4")
    }

    /// `y^2 = t^4 + 2t^3 + 7t^2 + 6t + 1`
    pub fn third() -> Self {
        Self::from_integers([1, 2, 7, 6, 1]).expect("nonzero a4")
    }

    /// Coefficients, highest degree first.
    pub fn coefficients(&self) -> [&Rational; 5] {
        [&self.a4, &self.a3, &self.a2, &self.a1, &self.a0]
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients()
            .into_iter()
            .fold(Rational::zero(), |acc, a| acc * t.clone() + a.clone())
    }

    pub fn contains(&self, t: &Rational, y: &Rational) -> bool {
        y.square() == self.eval(t)
    }
}

impl fmt::Display for QuarticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let low_first: Vec<Rational> = self.coefficients().into_iter().rev().cloned().collect();
        write!(f, "y^2 = {}", UnivariatePolynomial::new(low_first).display_with("t"))
    }
}

impl std::str::FromStr for QuarticCurve {
    type Err = Error;

    /// Five comma-separated coefficients `a4,a3,a2,a1,a0`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<Rational> = s
            .split(',')
            .map(str::parse)
            .collect::<Result<_>>()?;
        match <[Rational; 5]>::try_from(parts) {
            Ok([a4, a3, a2, a1, a0]) => Self::new(a4, a3, a2, a1, a0),
            Err(_) => Err(Error::Parse(format!("expected five coefficients, got {s:?}"))),
        }
    }
}

/// Affine points found by a bounded search, plus whether the two points
/// at infinity are rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticPoints {
    pub affine: Vec<(Rational, Rational)>,
    pub infinity: bool,
}

/// Integer data of a curve after clearing denominators: `A_i = L a_i`.
struct Cleared {
    a: [BigInt; 5],
    l: BigInt,
    small: Option<([i128; 5], i128)>,
}

impl Cleared {
    fn new(curve: &QuarticCurve, h: u64) -> Self {
        let l = curve
            .coefficients()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let a = curve.coefficients().map(|c| c.numer() * (&l / c.denom()));
        // |M L| <= L sum|A_i| H^4 must fit comfortably in an i128
        let bound = &l * a.iter().map(|x| x.abs()).sum::<BigInt>() * BigInt::from(h).pow(4);
        let small = if bound.bits() < 120 {
            let s = a.clone().map(|x| x.to_i128().expect("small"));
            Some((s, l.to_i128().expect("small")))
        } else {
            None
        };
        Cleared { a, l, small }
    }

    /// `y` values over `t = u/v`, lowest first, from `M = sum A_i u^i v^(4-i)`.
    fn points_at(&self, u: i64, v: i64) -> Vec<Rational> {
        let root = match self.small {
            Some((a, l)) => {
                let (u, v) = (u as i128, v as i128);
                let m = (((a[0] * u + a[1] * v) * u + a[2] * v * v) * u + a[3] * v * v * v) * u
                    + a[4] * v * v * v * v;
                if m < 0 {
                    return Vec::new();
                }
                match perfect_sqrt_u128((m * l) as u128) {
                    Some(r) => BigInt::from(r),
                    None => return Vec::new(),
                }
            }
            None => {
                let (u, v) = (BigInt::from(u), BigInt::from(v));
                let mut m = BigInt::zero();
                for (i, c) in self.a.iter().enumerate() {
                    m += c * u.pow(4 - i as u32) * v.pow(i as u32);
                }
                if m.is_negative() {
                    return Vec::new();
                }
                match exact_sqrt_biguint(&(m * &self.l).magnitude().clone()) {
                    Some(r) => BigInt::from(r),
                    None => return Vec::new(),
                }
            }
        };
        if num_integer::gcd(u, v) != 1 {
            return Vec::new();
        }
        let den = &self.l * BigInt::from(v) * BigInt::from(v);
        let y = Rational::new(root, den).expect("positive denominator");
        if y.is_zero() {
            vec![y]
        } else {
            vec![-y.clone(), y]
        }
    }
}

/// Rational points `(t, y)` with `height(t) <= h`, found by testing whether
/// the cleared-denominator value at each `t = u/v` is a perfect square.
/// Sorted by `t` in enumeration order, then by `y`.
pub fn quartic_rational_points(curve: &QuarticCurve, h: u64, workers: usize) -> QuarticPoints {
    let cleared = Cleared::new(curve, h);
    let h = h as i64;
    let vs: Vec<i64> = (1..=h).collect();
    let per_v = run_chunked(&vs, workers, |&v| {
        let mut found = Vec::new();
        for u in -h..=h {
            for y in cleared.points_at(u, v) {
                found.push((Rational::frac(u, v), y));
            }
        }
        found
    });
    let mut affine: Vec<(Rational, Rational)> = per_v.into_iter().flatten().collect();
    affine.sort_by(|a, b| (enumeration_key(&a.0), &a.1).cmp(&(enumeration_key(&b.0), &b.1)));
    QuarticPoints {
        affine,
        infinity: curve.a4.is_square(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn expected() -> Vec<(Rational, Rational)> {
        vec![
            (q("-1"), q("-1")),
            (q("-1"), q("1")),
            (q("0"), q("-1")),
            (q("0"), q("1")),
        ]
    }

    #[test]
    fn named_curves_small_search() {
        for c in [QuarticCurve::first(), QuarticCurve::second(), QuarticCurve::third()] {
            let pts = quartic_rational_points(&c, 200, 2);
            assert_eq!(pts.affine, expected(), "{c}");
            assert!(pts.infinity);
        }
    }

    #[test]
    fn display_and_parse() {
        let c = QuarticCurve::first();
        assert_eq!(c.to_string(), "y^2 = t^4 + 6*t^3 + 7*t^2 + 2*t + 1");
        assert_eq!("1,6,7,2,1".parse::<QuarticCurve>().unwrap(), c);
        assert!("0,1,1,1,1".parse::<QuarticCurve>().is_err());
        assert!("1,2".parse::<QuarticCurve>().is_err());
    }

    #[test]
    fn rational_coefficients_and_nonsquare_leading() {
        // y^2 = 2t^4 + 1/4: t = 0 gives y = 1/2; a4 = 2 has no rational root
        let c = QuarticCurve::new(q("2"), q("0"), q("0"), q("0"), q("1/4")).unwrap();
        let pts = quartic_rational_points(&c, 30, 1);
        assert!(pts.affine.contains(&(q("0"), q("1/2"))));
        assert!(!pts.infinity);
        for (t, y) in &pts.affine {
            assert!(c.contains(t, y));
        }
    }

    #[test]
    fn double_root_gives_y_zero_once() {
        // y^2 = (t^2 - 1)^2
        let c = QuarticCurve::from_integers([1, 0, -2, 0, 1]).unwrap();
        let pts = quartic_rational_points(&c, 5, 1);
        let at_one: Vec<_> = pts.affine.iter().filter(|p| p.0 == q("1")).collect();
        assert_eq!(at_one, vec![&(q("1"), q("0"))]);
        // every t is a point here
        assert_eq!(pts.affine.len() as u64, 2 * crate::count_rationals(5) - 2);
    }

    #[test]
    fn wide_coefficients_use_exact_arithmetic() {
        let big = Rational::from(BigInt::one() << 100u32);
        let c = QuarticCurve::new(big, q("0"), q("0"), q("0"), q("1")).unwrap();
        let pts = quartic_rational_points(&c, 40, 1);
        assert!(pts.affine.contains(&(q("0"), q("1"))));
        for (t, y) in &pts.affine {
            assert!(c.contains(t, y));
        }
    }

    proptest! {
        #[test]
        fn points_lie_on_curve_and_are_symmetric(
            a in proptest::array::uniform5(-6i64..7),
            h in 1u64..25,
        ) {
            prop_assume!(a[0] != 0);
            let c = QuarticCurve::from_integers(a).unwrap();
            let pts = quartic_rational_points(&c, h, 1);
            for (t, y) in &pts.affine {
                prop_assert!(c.contains(t, y));
                prop_assert!(t.height() <= h.into());
                prop_assert!(pts.affine.contains(&(t.clone(), -y.clone())));
            }
            // independent check: every t of bounded height with a square value
            for t in crate::enumerate_rationals(h) {
                if let Some(y) = c.eval(&t).sqrt() {
                    prop_assert!(pts.affine.contains(&(t.clone(), y)));
                }
            }
        }
    }
}
