//! Integer factoring and square tests.
//!
//! Factoring is trial division by small primes followed by Miller-Rabin and
//! Pollard-Brent rho on the cofactor. Inputs here are the extreme
//! coefficients of cleared polynomials, which are products of small values.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

const TRIAL_LIMIT: u32 = 50_000;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in small_primes().iter().take(20) {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Fixed bases are deterministic below 3.3e24; beyond that the test is
    // probabilistic with negligible error for these inputs.
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut rng = SplitMix::seeded(n);
    loop {
        let y0 = rng.gen_biguint_below(n);
        let c = rng.gen_biguint_below(n);
        let m = 64u64;
        let mut y = y0;
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        let f = |v: &BigUint| (v * v + &c) % n;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

/// Deterministic per input so factoring never varies between runs.
struct SplitMix(u64);

impl SplitMix {
    fn seeded(n: &BigUint) -> Self {
        SplitMix(n.iter_u64_digits().fold(0x9E37_79B9_7F4A_7C15u64, |h, d| {
            (h ^ d).wrapping_mul(0x1000_0000_01B3)
        }))
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn gen_biguint_below(&mut self, bound: &BigUint) -> BigUint {
        let words = bound.iter_u64_digits().count() + 1;
        let digits: Vec<u64> = (0..words).map(|_| self.next()).collect();
        let mut bytes = Vec::with_capacity(words * 8);
        for d in digits {
            bytes.extend_from_slice(&d.to_le_bytes());
        }
        BigUint::from_bytes_le(&bytes) % bound
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt_biguint(&n) {
        factor_into(r.clone(), out);
        factor_into(r, out);
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    factor_into(d, out);
    factor_into(e, out);
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing
/// order. `0` and `±1` have no factors.
pub fn factor(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    if m.is_zero() {
        return Vec::new();
    }
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        while (&m % &pb).is_zero() {
            m /= &pb;
            primes.push(pb.clone());
        }
    }
    if !m.is_one() {
        factor_into(m, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All positive divisors of `|n|` in increasing order (`n != 0`).
pub fn divisors(n: &BigInt) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub(crate) fn exact_sqrt_biguint(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Floor square root of a `u128`.
pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // correct the float estimate in both directions
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

const fn residue_mask(m: u32) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < m {
        mask |= 1 << ((i * i) % m);
        i += 1;
    }
    mask
}

const SQ64: u128 = residue_mask(64);
const SQ63: u128 = residue_mask(63);
const SQ65: u128 = residue_mask(65);
const SQ11: u128 = residue_mask(11);

/// `Some(r)` with `r*r == n` if `n` is a perfect square.
pub(crate) fn perfect_sqrt_u128(n: u128) -> Option<u128> {
    if SQ64 >> (n % 64) & 1 == 0
        || SQ63 >> (n % 63) & 1 == 0
        || SQ65 >> (n % 65) & 1 == 0
        || SQ11 >> (n % 11) & 1 == 0
    {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn big(n: i128) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_small() {
        let f = factor(&big(360));
        let f: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(f, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor(&big(1)).is_empty());
        assert!(factor(&big(-1)).is_empty());
        assert!(factor(&big(0)).is_empty());
    }

    #[test]
    fn factor_large_semiprime() {
        // two primes beyond the trial-division limit
        let p = 1_000_000_007i128;
        let q = 998_244_353i128;
        let f = factor(&big(p * q * 12));
        let primes: Vec<u128> = f.iter().map(|(p, _)| p.to_u128().unwrap()).collect();
        assert_eq!(primes, vec![2, 3, 998_244_353, 1_000_000_007]);
    }

    #[test]
    fn divisors_of_12() {
        let d: Vec<u64> = divisors(&big(-12)).iter().map(|d| d.to_u64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn square_filters_accept_all_squares() {
        for r in 0u128..5000 {
            assert_eq!(perfect_sqrt_u128(r * r), Some(r));
        }
        let big_r = 3_000_000_000_000u128;
        assert_eq!(perfect_sqrt_u128(big_r * big_r), Some(big_r));
        assert_eq!(perfect_sqrt_u128(big_r * big_r + 1), None);
    }

    proptest! {
        #[test]
        fn square_test_matches_isqrt(n in 0u128..(1u128 << 100)) {
            let r = isqrt_u128(n);
            prop_assert!(r * r <= n && (r + 1) * (r + 1) > n);
            prop_assert_eq!(perfect_sqrt_u128(n).is_some(), r * r == n);
        }

        #[test]
        fn factorization_multiplies_back(n in 1i64..i64::MAX) {
            let prod = factor(&BigInt::from(n)).into_iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e));
            prop_assert_eq!(prod, BigUint::from(n as u64));
        }
    }
}
