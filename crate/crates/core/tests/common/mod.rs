//! Oracles shared by the integration tests. Nothing here calls into the
//! library's root finding or closed forms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratperiod::Rational;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational of height at most `h`.
pub fn random_rational(rng: &mut ChaCha8Rng, h: i64) -> Rational {
    Rational::frac(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn random_nonzero(rng: &mut ChaCha8Rng, h: i64) -> Rational {
    loop {
        let r = random_rational(rng, h);
        if !r.is_zero() {
            return r;
        }
    }
}

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// First return time of `u/d` under `u -> (u^2 + a)/d` within `max_period`
/// steps, staying on numerators over `d` with `|u| <= bound`.
fn first_return(u0: i128, a: i128, d: i128, bound: i128, max_period: u32) -> Option<u32> {
    let mut u = u0;
    for n in 1..=max_period {
        let s = u * u + a;
        if s % d != 0 {
            return None;
        }
        u = s / d;
        if u.abs() > bound {
            return None;
        }
        if u == u0 {
            return Some(n);
        }
    }
    None
}

/// Periodic points of `z^2 + c` of period at most `max_period`, by
/// iterating every candidate point. A periodic point of `z^2 + a/d^2` has
/// denominator `d` and absolute value at most `1/2 + sqrt(1/4 - c)`.
pub fn quad_periodic_brute(c: &Rational, max_period: u32) -> BTreeMap<u32, BTreeSet<Rational>> {
    let mut out = BTreeMap::new();
    let a = c.numer().to_i128().unwrap();
    let e = c.denom().to_i128().unwrap();
    let d = isqrt(e);
    if d * d != e || 4 * a > e {
        return out;
    }
    // |x| <= 1 + sqrt(|c|) + 1, as numerators over d
    let bound = d * (2 + isqrt(a.abs() / e + 1));
    for u in -bound..=bound {
        if let Some(n) = first_return(u, a, d, bound, max_period) {
            out.entry(n)
                .or_insert_with(BTreeSet::new)
                .insert(Rational::frac(u as i64, d as i64));
        }
    }
    out
}

/// Every `c = n/v^2` with `n` in `range` for which `q = u/v` has exact
/// period at most 3 under `z^2 + c`, by direct iteration.
pub fn shared_c_brute(q: &Rational, range: std::ops::RangeInclusive<i128>) -> Vec<(Rational, u32)> {
    let u = q.numer().to_i128().unwrap();
    let v = q.denom().to_i128().unwrap();
    let mut out = Vec::new();
    let (lo, hi) = range.into_inner();
    // only n = -u^2 mod v keeps the next point over v
    let mut n = lo + (-u * u - lo).rem_euclid(v);
    while n <= hi {
        if let Some(p) = first_return(u, n, v, i128::MAX / 4, 3) {
            out.push((Rational::new(n, v * v).unwrap(), p));
        }
        n += v;
    }
    out.sort();
    out
}

/// Range of `n` covering every `c = n/v^2` admitting a periodic point `q`:
/// `-(|q| + 2)^2 < c <= 1/4`.
pub fn shared_c_range(q: &Rational) -> std::ops::RangeInclusive<i128> {
    let u = q.numer().to_i128().unwrap().abs();
    let v = q.denom().to_i128().unwrap();
    let lo = -(u + 2 * v) * (u + 2 * v);
    let hi = v * v / 4;
    lo..=hi
}
