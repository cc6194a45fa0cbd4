//! The two map classes `z^2 + c` and `kz + b/z`, exact orbits and periods.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{ProjectivePoint, Rational};

/// Iteration budget used when callers have no better bound.
pub const DEFAULT_MAX_STEPS: usize = 64;

/// `f(z) = z^2 + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticMap {
    pub c: Rational,
}

impl QuadraticMap {
    pub fn new(c: Rational) -> Self {
        QuadraticMap { c }
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        if p.is_infinity() {
            return ProjectivePoint::infinity();
        }
        // [x^2 + c y^2 : y^2] scaled by den(c)
        let (x, y) = (p.x(), p.y());
        let y2 = y * y;
        let n = self.c.numer();
        let d = self.c.denom();
        ProjectivePoint::canonical(d * x * x + n * &y2, d * y2)
    }

    pub fn apply_rational(&self, z: &Rational) -> Rational {
        z.square() + &self.c
    }
}

/// `phi(z) = kz + b/z` with `k, b` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KbMap {
    k: Rational,
    b: Rational,
}

impl KbMap {
    pub fn new(k: Rational, b: Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InvalidMap("k must be nonzero".into()));
        }
        if b.is_zero() {
            return Err(Error::InvalidMap("b must be nonzero".into()));
        }
        Ok(KbMap { k, b })
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// True when the automorphism group is exactly `{z, -z}`, i.e. `k != -1/2`.
    pub fn aut_is_c2(&self) -> bool {
        self.k != Rational::frac(-1, 2)
    }

    /// `-phi`, the map `(-k, -b)`.
    pub fn negate(&self) -> KbMap {
        KbMap {
            k: -&self.k,
            b: -&self.b,
        }
    }

    /// The conjugate `phi(s z) / s`, which is `phi_{k, b/s^2}`. A cycle
    /// `(z_i)` of `phi` becomes the cycle `(z_i / s)`.
    pub fn conjugate_by_scaling(&self, s: &Rational) -> Result<KbMap> {
        let s2 = s.square();
        KbMap::new(self.k.clone(), self.b.checked_div(&s2)?)
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        if p.is_infinity() {
            return ProjectivePoint::infinity();
        }
        // [k x^2 + b y^2 : x y] scaled by den(k) den(b)
        let (x, y) = (p.x(), p.y());
        let (k1, k2) = (self.k.numer(), self.k.denom());
        let (b1, b2) = (self.b.numer(), self.b.denom());
        let num: BigInt = k1 * b2 * x * x + b1 * k2 * y * y;
        let den: BigInt = k2 * b2 * x * y;
        ProjectivePoint::canonical(num, den)
    }
}

/// Either map class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Map {
    Quadratic(QuadraticMap),
    Kb(KbMap),
}

/// How an orbit computation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitStatus {
    Periodic,
    BoundExceeded,
}

/// Forward orbit split into a preperiodic tail and a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub tail: Vec<ProjectivePoint>,
    pub cycle: Vec<ProjectivePoint>,
    pub status: OrbitStatus,
}

impl OrbitReport {
    /// Cycle length, when the orbit closed.
    pub fn period(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Periodic => Some(self.cycle.len()),
            OrbitStatus::BoundExceeded => None,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &ProjectivePoint> {
        self.tail.iter().chain(self.cycle.iter())
    }
}

impl Map {
    pub fn quadratic(c: Rational) -> Map {
        Map::Quadratic(QuadraticMap::new(c))
    }

    pub fn kb(k: Rational, b: Rational) -> Result<Map> {
        KbMap::new(k, b).map(Map::Kb)
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        match self {
            Map::Quadratic(m) => m.apply(p),
            Map::Kb(m) => m.apply(p),
        }
    }

    /// Bits of the largest parameter numerator or denominator.
    pub fn parameter_bits(&self) -> u64 {
        match self {
            Map::Quadratic(m) => m.c.bits(),
            Map::Kb(m) => m.k.bits().max(m.b.bits()),
        }
    }

    /// Points larger than this cannot be periodic for any map of this size;
    /// iterating them further only grows the numbers.
    fn height_cap_bits(&self) -> u64 {
        512 + 16 * self.parameter_bits()
    }

    /// Iterates until a point repeats or `max_steps` distinct points have
    /// been recorded. A wandering point whose height passes a cap scaled to
    /// the parameters also ends with `BoundExceeded`.
    pub fn orbit(&self, start: &ProjectivePoint, max_steps: usize) -> OrbitReport {
        let max_steps = max_steps.max(1);
        let cap = self.height_cap_bits().max(start.bits() + 1);
        let mut seen: HashMap<ProjectivePoint, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut p = start.clone();
        loop {
            seen.insert(p.clone(), points.len());
            points.push(p.clone());
            let next = self.apply(&p);
            if let Some(&i) = seen.get(&next) {
                let cycle = points.split_off(i);
                return OrbitReport {
                    tail: points,
                    cycle,
                    status: OrbitStatus::Periodic,
                };
            }
            if points.len() >= max_steps || next.bits() > cap {
                return OrbitReport {
                    tail: points,
                    cycle: Vec::new(),
                    status: OrbitStatus::BoundExceeded,
                };
            }
            p = next;
        }
    }

    /// Least `n` with `map^n(P) = P`, for points on a cycle found within
    /// `max_steps`; `None` for preperiodic or undecided points.
    pub fn exact_period(&self, p: &ProjectivePoint, max_steps: usize) -> Option<usize> {
        let report = self.orbit(p, max_steps);
        if report.tail.is_empty() {
            report.period()
        } else {
            None
        }
    }

    /// [`Map::exact_period`] for a finite point.
    pub fn period_of(&self, z: &Rational, max_steps: usize) -> Option<usize> {
        self.exact_period(&ProjectivePoint::from(z), max_steps)
    }

    /// The cycle through a finite periodic point, starting at that point.
    pub fn cycle_of(&self, z: &Rational, max_steps: usize) -> Option<Vec<Rational>> {
        let report = self.orbit(&ProjectivePoint::from(z), max_steps);
        if !report.tail.is_empty() || report.status != OrbitStatus::Periodic {
            return None;
        }
        report.cycle.iter().map(|p| p.to_rational()).collect()
    }
}

impl From<QuadraticMap> for Map {
    fn from(m: QuadraticMap) -> Self {
        Map::Quadratic(m)
    }
}

impl From<KbMap> for Map {
    fn from(m: KbMap) -> Self {
        Map::Kb(m)
    }
}

impl fmt::Display for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Map::Quadratic(m) => write!(f, "quad:c={}", m.c),
            Map::Kb(m) => write!(f, "kb:k={},b={}", m.k, m.b),
        }
    }
}

impl fmt::Display for QuadraticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quad:c={}", self.c)
    }
}

impl fmt::Display for KbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kb:k={},b={}", self.k, self.b)
    }
}

impl FromStr for Map {
    type Err = Error;

    /// `quad:c=<rat>` or `kb:k=<rat>,b=<rat>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid map descriptor {s:?}"));
        if let Some(rest) = s.strip_prefix("quad:") {
            let c = rest.strip_prefix("c=").ok_or_else(bad)?;
            return Ok(Map::quadratic(c.parse()?));
        }
        if let Some(rest) = s.strip_prefix("kb:") {
            let (k, b) = rest.split_once(',').ok_or_else(bad)?;
            let k = k.strip_prefix("k=").ok_or_else(bad)?;
            let b = b.strip_prefix("b=").ok_or_else(bad)?;
            return Map::kb(k.parse()?, b.parse()?);
        }
        Err(bad())
    }
}

impl Serialize for Map {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Map {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for KbMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `c` such that `Az^2 + Bz + C` is conjugate to `z^2 + c` by
/// `l(z) = Az + B/2`.
pub fn normalize_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::NotQuadratic);
    }
    let half = Rational::frac(1, 2);
    Ok(a * c + b * &half - b.square() / Rational::from(4))
}

/// `phi_{k1,b1}` and `phi_{k2,b2}` are conjugate over Q iff `k1 = k2` and
/// `b1/b2` is a square.
pub fn kb_conjugate_equivalent(m1: &KbMap, m2: &KbMap) -> bool {
    m1.k == m2.k && (&m1.b / &m2.b).is_square()
}

/// See [`KbMap::aut_is_c2`].
pub fn aut_is_c2(map: &KbMap) -> bool {
    map.aut_is_c2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> ProjectivePoint {
        s.parse().unwrap()
    }

    fn map(s: &str) -> Map {
        s.parse().unwrap()
    }

    fn cycle(m: &Map, start: &str) -> Vec<String> {
        let r = m.orbit(&pt(start), DEFAULT_MAX_STEPS);
        assert_eq!(r.status, OrbitStatus::Periodic);
        assert!(r.tail.is_empty());
        r.cycle.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn apply_examples() {
        let kb = map("kb:k=24/7,b=-300/7");
        assert_eq!(kb.apply(&pt("3")), pt("-4"));
        assert_eq!(kb.apply(&pt("0")), ProjectivePoint::infinity());
        assert_eq!(kb.apply(&ProjectivePoint::infinity()), ProjectivePoint::infinity());
        let quad = map("quad:c=-13");
        assert_eq!(quad.apply(&pt("3")), pt("-4"));
        assert_eq!(quad.apply(&ProjectivePoint::infinity()), ProjectivePoint::infinity());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(cycle(&map("quad:c=-13"), "3"), ["3", "-4"]);
        assert_eq!(cycle(&map("kb:k=24/7,b=-300/7"), "3"), ["3", "-4", "-3", "4"]);
        let r = map("quad:c=0").orbit(&pt("2"), 5);
        assert_eq!(r.status, OrbitStatus::BoundExceeded);
        let tail: Vec<String> = r.tail.iter().map(|p| p.to_string()).collect();
        assert_eq!(tail, ["2", "4", "16", "256", "65536"]);
        assert!(r.cycle.is_empty());
    }

    #[test]
    fn preperiodic_tail() {
        // -1 -> 0 -> -1 under z^2 - 1, and 1 -> 0 enters that cycle
        let r = map("quad:c=-1").orbit(&pt("1"), 64);
        assert_eq!(r.status, OrbitStatus::Periodic);
        assert_eq!(r.tail, vec![pt("1")]);
        assert_eq!(r.cycle, vec![pt("0"), pt("-1")]);
        assert_eq!(map("quad:c=-1").exact_period(&pt("1"), 64), None);
    }

    #[test]
    fn exact_period_examples() {
        assert_eq!(map("quad:c=-7/4").exact_period(&pt("1/2"), 64), Some(2));
        assert_eq!(map("kb:k=4/3,b=-10/3").exact_period(&pt("2"), 64), Some(4));
        assert_eq!(map("quad:c=0").exact_period(&pt("0"), 64), Some(1));
        assert_eq!(map("quad:c=0").exact_period(&pt("0"), 1), Some(1));
        assert_eq!(map("quad:c=0").exact_period(&pt("2"), 64), None);
    }

    #[test]
    fn wandering_points_stop_at_the_height_cap() {
        let r = map("quad:c=1").orbit(&pt("1"), 10_000);
        assert_eq!(r.status, OrbitStatus::BoundExceeded);
        assert!(r.tail.len() < 20);
    }

    #[test]
    fn normalize_quadratic_examples() {
        assert_eq!(normalize_quadratic(&q("1"), &q("0"), &q("-13")).unwrap(), q("-13"));
        assert_eq!(normalize_quadratic(&q("2"), &q("2"), &q("1")).unwrap(), q("2"));
        assert_eq!(normalize_quadratic(&q("1"), &q("-1"), &q("0")).unwrap(), q("-3/4"));
        assert_eq!(
            normalize_quadratic(&q("0"), &q("1"), &q("1")),
            Err(Error::NotQuadratic)
        );
    }

    // l(g(z)) == f(l(z)) along 20-step orbits from sample points
    fn conjugation_holds(a: &Rational, b: &Rational, cc: &Rational) -> bool {
        let c = normalize_quadratic(a, b, cc).unwrap();
        let half = Rational::frac(1, 2);
        let l = |z: &Rational| a * z + b * &half;
        let g = |z: &Rational| a * &z.square() + b * z + cc;
        let f = QuadraticMap::new(c);
        (-10..10).all(|i| {
            let mut z = Rational::frac(i, 3);
            let mut w = l(&z);
            for _ in 0..4 {
                z = g(&z);
                w = f.apply_rational(&w);
                if l(&z) != w {
                    return false;
                }
            }
            true
        })
    }

    #[test]
    fn normalize_quadratic_conjugates_orbits() {
        assert!(conjugation_holds(&q("2"), &q("2"), &q("1")));
        assert!(conjugation_holds(&q("1"), &q("-1"), &q("0")));
        assert!(conjugation_holds(&q("-3/5"), &q("7/2"), &q("-4")));
    }

    #[test]
    fn conjugacy_criterion() {
        let m = |k: &str, b: &str| KbMap::new(q(k), q(b)).unwrap();
        assert!(kb_conjugate_equivalent(&m("5", "3"), &m("5", "12")));
        assert!(!kb_conjugate_equivalent(&m("5", "3"), &m("5", "6")));
        assert!(!kb_conjugate_equivalent(&m("1/2", "3"), &m("1/3", "3")));
        assert!(!m("-1/2", "3").aut_is_c2());
        assert!(aut_is_c2(&m("1/2", "3")));
    }

    #[test]
    fn kb_rejects_degenerate_parameters() {
        assert!(KbMap::new(q("0"), q("1")).is_err());
        assert!(KbMap::new(q("1"), q("0")).is_err());
        assert!("kb:k=0,b=1".parse::<Map>().is_err());
    }

    #[test]
    fn descriptor_roundtrip() {
        for s in ["quad:c=-13", "quad:c=1/4", "kb:k=24/7,b=-300/7"] {
            assert_eq!(map(s).to_string(), s);
        }
        for s in ["quad:-13", "kb:k=1", "kb:b=1,k=1", "cubic:c=1", "quad:c=1/0"] {
            assert!(s.parse::<Map>().is_err(), "{s}");
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=30).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn nonzero_rat() -> impl Strategy<Value = Rational> {
        small_rat().prop_filter("nonzero", |r| !r.is_zero())
    }

    proptest! {
        #[test]
        fn kb_is_odd(k in nonzero_rat(), b in nonzero_rat(), z in nonzero_rat()) {
            let m = KbMap::new(k, b).unwrap();
            let p = ProjectivePoint::from(&z);
            prop_assert_eq!(m.apply(&p.negate()), m.apply(&p).negate());
        }

        #[test]
        fn infinity_is_fixed(c in small_rat(), k in nonzero_rat(), b in nonzero_rat()) {
            let inf = ProjectivePoint::infinity();
            prop_assert_eq!(Map::quadratic(c).apply(&inf), inf.clone());
            prop_assert_eq!(Map::kb(k, b).unwrap().apply(&inf), inf);
        }

        #[test]
        fn orbit_is_deterministic(c in small_rat(), z in small_rat()) {
            let m = Map::quadratic(c);
            let p = ProjectivePoint::from(&z);
            prop_assert_eq!(m.orbit(&p, 32), m.orbit(&p, 32));
        }

        #[test]
        fn period_constant_along_cycle(k in nonzero_rat(), b in nonzero_rat(), z in nonzero_rat()) {
            let m = Map::kb(k, b).unwrap();
            let p = ProjectivePoint::from(&z);
            if let Some(n) = m.exact_period(&p, 64) {
                prop_assert_eq!(m.exact_period(&m.apply(&p), 64), Some(n));
            }
        }

        #[test]
        fn scaling_transports_cycles(m in 2i64..12, s in nonzero_rat()) {
            // the period-4 family member at m, then an equivalent map
            let m = Rational::from(m);
            let m2 = m.square();
            let k = (Rational::from(2) * &m) / (&m2 - Rational::one());
            let b = -(&m) / (m2.square() - Rational::one());
            let phi = KbMap::new(k, b).unwrap();
            let psi = phi.conjugate_by_scaling(&s).unwrap();
            prop_assert!(kb_conjugate_equivalent(&phi, &psi));
            let start = Rational::one() / (&m2 + Rational::one());
            let cyc = Map::Kb(phi).cycle_of(&start, 64).unwrap();
            let moved: Vec<Rational> = cyc.iter().map(|z| z / &s).collect();
            let image = Map::Kb(psi).cycle_of(&moved[0], 64).unwrap();
            prop_assert_eq!(image, moved);
        }
    }
}
