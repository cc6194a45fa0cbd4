use num_integer::Integer;

use super::Rational;

/// Lazy sequence of every rational of height at most `max_height`, each
/// exactly once, ordered by height, then numerator, then denominator.
#[derive(Clone, Debug)]
pub struct Rationals {
    inner: Fractions,
}

impl Iterator for Rationals {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        self.inner.next().map(|(n, d)| Rational::frac(n, d as i64))
    }
}

/// All rationals of height `<= max_height`; see [`Rationals`].
pub fn enumerate_rationals(max_height: u64) -> Rationals {
    Rationals {
        inner: enumerate_fractions(max_height),
    }
}

/// Same order as [`enumerate_rationals`], as reduced `(numerator,
/// denominator)` machine pairs.
pub fn enumerate_fractions(max_height: u64) -> Fractions {
    assert!(max_height < (1 << 62), "height bound too large");
    Fractions {
        max_height,
        height: 1,
        numer: -1,
        denom: 0,
    }
}

/// Number of rationals of height `<= max_height`.
pub fn count_rationals(max_height: u64) -> u64 {
    enumerate_fractions(max_height).count() as u64
}

#[derive(Clone, Debug)]
pub struct Fractions {
    max_height: u64,
    height: u64,
    numer: i64,
    // 0 means "start the current numerator"
    denom: u64,
}

impl Iterator for Fractions {
    type Item = (i64, u64);

    fn next(&mut self) -> Option<(i64, u64)> {
        loop {
            if self.height > self.max_height {
                return None;
            }
            let h = self.height as i64;
            if self.numer > h {
                self.height += 1;
                self.numer = -(self.height as i64);
                self.denom = 0;
                continue;
            }
            let n = self.numer;
            let abs_n = n.unsigned_abs();
            // denominators with max(|n|, d) == h, ascending
            let d = if abs_n == self.height {
                let next = self.denom + 1;
                if next > self.height {
                    None
                } else {
                    Some(next)
                }
            } else if self.denom < self.height {
                Some(self.height)
            } else {
                None
            };
            match d {
                None => {
                    self.numer += 1;
                    self.denom = 0;
                }
                Some(d) => {
                    self.denom = d;
                    if abs_n.gcd(&d) == 1 {
                        return Some((n, d));
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_heights() {
        let h1: Vec<String> = enumerate_rationals(1).map(|r| r.to_string()).collect();
        assert_eq!(h1, ["-1", "0", "1"]);
        let h2: Vec<String> = enumerate_rationals(2).map(|r| r.to_string()).collect();
        assert_eq!(h2, ["-1", "0", "1", "-2", "-1/2", "1/2", "2"]);
        assert_eq!(enumerate_rationals(3).count(), 15);
    }

    // nested-loop oracle over all pairs
    fn oracle(h: i64) -> BTreeSet<Rational> {
        let mut out = BTreeSet::new();
        for n in -h..=h {
            for d in 1..=h {
                out.insert(Rational::frac(n, d));
            }
        }
        out
    }

    #[test]
    fn matches_nested_loop_oracle() {
        for h in 1..=50u64 {
            let seq: Vec<Rational> = enumerate_rationals(h).collect();
            let set: BTreeSet<Rational> = seq.iter().cloned().collect();
            assert_eq!(set.len(), seq.len(), "duplicates at H={h}");
            assert_eq!(set, oracle(h as i64), "value set differs at H={h}");
        }
    }

    #[test]
    fn order_is_height_numerator_denominator() {
        let seq: Vec<(i64, u64)> = enumerate_fractions(12).collect();
        let key = |&(n, d): &(i64, u64)| (n.unsigned_abs().max(d), n, d);
        for w in seq.windows(2) {
            assert!(key(&w[0]) < key(&w[1]), "{:?} !< {:?}", w[0], w[1]);
        }
    }
}
