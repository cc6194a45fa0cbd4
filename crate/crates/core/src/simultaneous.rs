//! Shared periodic points: `z^2 + c` against `kz + b/z`, two `kz + b/z`
//! maps against each other, and several `z^2 + c` maps through one point.

use std::collections::HashSet;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::classification::{c_tau, check_m, period3_parameters, period4_b, period4_k, quad_family_period3};
use crate::dynamics::{KbMap, Map, DEFAULT_MAX_STEPS};
use crate::error::{excluded, Error, Result};
use crate::numeric::{ProjectivePoint, Rational};

/// Named free parameters of a family member, in the order they were given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub Vec<(&'static str, Rational)>);

impl Params {
    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// `z^2 + c` and `kz + b/z` sharing a periodic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedFamilyTriple {
    pub k: Rational,
    pub b: Rational,
    pub c: Rational,
    pub f_period: u32,
    pub phi_period: u32,
    pub shared_point: Rational,
    pub parameters: Params,
}

impl MixedFamilyTriple {
    pub fn quadratic(&self) -> Map {
        Map::quadratic(self.c.clone())
    }

    pub fn kb(&self) -> Map {
        Map::kb(self.k.clone(), self.b.clone()).expect("family maps have k, b nonzero")
    }

    /// Checks both claimed exact periods by iteration.
    pub fn verify(&self) -> bool {
        let p = &self.shared_point;
        self.quadratic().period_of(p, DEFAULT_MAX_STEPS) == Some(self.f_period as usize)
            && self.kb().period_of(p, DEFAULT_MAX_STEPS) == Some(self.phi_period as usize)
    }

    pub fn intersection(&self) -> Result<Vec<ProjectivePoint>> {
        orbit_intersection(&self.quadratic(), &self.kb(), &self.shared_point)
    }
}

/// Two `kz + b/z` maps sharing a periodic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KbPairQuadruple {
    pub k1: Rational,
    pub b1: Rational,
    pub k2: Rational,
    pub b2: Rational,
    pub periods: (u32, u32),
    pub shared_point: Rational,
    pub parameters: Params,
}

impl KbPairQuadruple {
    pub fn map1(&self) -> Map {
        Map::kb(self.k1.clone(), self.b1.clone()).expect("family maps have k, b nonzero")
    }

    pub fn map2(&self) -> Map {
        Map::kb(self.k2.clone(), self.b2.clone()).expect("family maps have k, b nonzero")
    }

    pub fn verify(&self) -> bool {
        let p = &self.shared_point;
        self.map1().period_of(p, DEFAULT_MAX_STEPS) == Some(self.periods.0 as usize)
            && self.map2().period_of(p, DEFAULT_MAX_STEPS) == Some(self.periods.1 as usize)
    }

    pub fn intersection(&self) -> Result<Vec<ProjectivePoint>> {
        orbit_intersection(&self.map1(), &self.map2(), &self.shared_point)
    }
}

/// One `z^2 + c` having the query point on a cycle of the given length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedMapEntry {
    pub c: Rational,
    pub period: u32,
    pub cycle: Vec<Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn check_nonzero(name: &str, v: &Rational) -> Result<()> {
    if v.is_zero() {
        Err(excluded(format!("{name}=0")))
    } else {
        Ok(())
    }
}

fn check_not(name: &str, v: &Rational, bad: &[Rational]) -> Result<()> {
    if bad.contains(v) {
        Err(excluded(format!("{name}={v}")))
    } else {
        Ok(())
    }
}

/// `(k, b)` making `p` a point of exact period `n` for `kz + b/z`, from the
/// rows shared by the three mixed families.
fn kb_row(p: &Rational, n: u32, param: &Rational) -> Result<(Rational, Rational, Params)> {
    match n {
        1 => {
            check_not("q", param, &[int(0), -p])?;
            Ok(((param + p) / p, -(param * p), Params(vec![("p", p.clone()), ("q", param.clone())])))
        }
        2 => {
            check_not("q", param, &[int(0), p.clone()])?;
            Ok(((param - p) / p, -(param * p), Params(vec![("p", p.clone()), ("q", param.clone())])))
        }
        4 => {
            check_m("m", param)?;
            Ok((period4_k(param), period4_b(p, param), Params(vec![("p", p.clone()), ("m", param.clone())])))
        }
        _ => Err(Error::UnsupportedPeriod(n)),
    }
}

/// `p` fixed by `z^2 + p - p^2` and of exact period `n` for `kz + b/z`.
pub fn mixed_family_fixed(p: &Rational, n: u32, param: &Rational) -> Result<MixedFamilyTriple> {
    check_nonzero("p", p)?;
    let (k, b, parameters) = kb_row(p, n, param)?;
    Ok(MixedFamilyTriple {
        k,
        b,
        c: p - &p.square(),
        f_period: 1,
        phi_period: n,
        shared_point: p.clone(),
        parameters,
    })
}

/// `p` of exact period 2 for `z^2 - (p^2 + p + 1)` and `n` for `kz + b/z`.
pub fn mixed_family_period2(p: &Rational, n: u32, param: &Rational) -> Result<MixedFamilyTriple> {
    check_nonzero("p", p)?;
    check_not("p", p, &[Rational::frac(-1, 2)])?;
    let (k, b, parameters) = kb_row(p, n, param)?;
    Ok(MixedFamilyTriple {
        k,
        b,
        c: -(p.square() + p + int(1)),
        f_period: 2,
        phi_period: n,
        shared_point: p.clone(),
        parameters,
    })
}

fn check_index(name: &str, i: u8) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(excluded(format!("{name}={i}")))
    }
}

/// The point `x_i` of the 3-cycle of `z^2 + c_tau`, of exact period `n`
/// for `kz + b/z`.
pub fn mixed_family_period3(
    tau: &Rational,
    i: u8,
    n: u32,
    param: &Rational,
) -> Result<MixedFamilyTriple> {
    check_index("i", i)?;
    let fam = quad_family_period3(tau)?;
    let x = fam.x(i)?;
    let x2 = x.square();
    let (k, b, name) = match n {
        1 => {
            check_not("q", param, &[int(0), int(1)])?;
            (int(1) - param, param * &x2, "q")
        }
        2 => {
            check_not("q", param, &[int(0), int(1)])?;
            (param - &int(1), -(param * &x2), "q")
        }
        4 => {
            check_m("m", param)?;
            (period4_k(param), period4_b(&x, param), "m")
        }
        _ => return Err(Error::UnsupportedPeriod(n)),
    };
    Ok(MixedFamilyTriple {
        k,
        b,
        c: fam.c,
        f_period: 3,
        phi_period: n,
        shared_point: x,
        parameters: Params(vec![
            ("tau", tau.clone()),
            ("i", int(i64::from(i))),
            (name, param.clone()),
        ]),
    })
}

/// `Orb_1(p) ∩ Orb_2(p)` for a point periodic under both maps, listed in
/// the order the first map visits them starting from `p`.
pub fn orbit_intersection(map1: &Map, map2: &Map, p: &Rational) -> Result<Vec<ProjectivePoint>> {
    let cycle = |m: &Map| -> Result<Vec<ProjectivePoint>> {
        let r = m.orbit(&ProjectivePoint::from(p), DEFAULT_MAX_STEPS);
        match r.period() {
            Some(_) if r.tail.is_empty() => Ok(r.cycle),
            _ => Err(Error::NotCommonPeriodic(format!("{p} is not periodic for {m}"))),
        }
    };
    let first = cycle(map1)?;
    let second: HashSet<ProjectivePoint> = cycle(map2)?.into_iter().collect();
    Ok(first.into_iter().filter(|x| second.contains(x)).collect())
}

/// `(k, b, c)` whose orbits through `p` meet in exactly `{p, -p-1}`.
pub fn intersection2_family_mixed(p: &Rational, sign: i8) -> Result<MixedFamilyTriple> {
    check_not("p", p, &[int(0), Rational::frac(-1, 2), int(-1)])?;
    let s = sign_of(sign)?;
    let p1 = p + &int(1);
    let d = int(2) * p + int(1);
    let k = &s * &(int(2) * p * &p1 / &d);
    let b = -(&s * &(p * &p1 * (p.square() + p1.square()) / &d));
    Ok(MixedFamilyTriple {
        k,
        b,
        c: -(p.square() + p + int(1)),
        f_period: 2,
        phi_period: 4,
        shared_point: p.clone(),
        parameters: Params(vec![("p", p.clone()), ("sign", int(i64::from(sign)))]),
    })
}

fn sign_of(sign: i8) -> Result<Rational> {
    match sign {
        1 => Ok(int(1)),
        -1 => Ok(int(-1)),
        _ => Err(excluded(format!("sign={sign}"))),
    }
}

/// `(k, b, c_tau)` whose orbits through `x_i` meet in `{x_i, x_j}`, with
/// `m_tau = sign * x_i / x_j`.
pub fn intersection2_family_period3(tau: &Rational, i: u8, j: u8, sign: i8) -> Result<MixedFamilyTriple> {
    check_index("i", i)?;
    check_index("j", j)?;
    if i >= j {
        return Err(excluded(format!("i={i}, j={j} (need i < j)")));
    }
    let s = sign_of(sign)?;
    let fam = quad_family_period3(tau)?;
    let (xi, xj) = (fam.x(i)?, fam.x(j)?);
    let m = s * (&xi / &xj);
    check_m("m_tau", &m)?;
    Ok(MixedFamilyTriple {
        k: period4_k(&m),
        b: period4_b(&xi, &m),
        c: fam.c,
        f_period: 3,
        phi_period: 4,
        shared_point: xi,
        parameters: Params(vec![
            ("tau", tau.clone()),
            ("i", int(i64::from(i))),
            ("j", int(i64::from(j))),
            ("sign", int(i64::from(sign))),
            ("m_tau", m),
        ]),
    })
}

/// The three `kz + b/z` rows through `p`, indexed by period.
fn kb_pair_row(period: u32, p: &Rational, name: &'static str, s: &Rational) -> Result<(Rational, Rational)> {
    let p2 = p.square();
    match period {
        1 => {
            check_not(name, s, &[int(0), int(1)])?;
            Ok((int(1) - s, s * &p2))
        }
        2 => {
            check_not(name, s, &[int(0), int(1)])?;
            Ok((s - &int(1), -(s * &p2)))
        }
        4 => {
            check_m(name, s)?;
            Ok((period4_k(s), period4_b(p, s)))
        }
        _ => Err(Error::UnsupportedPeriod(period)),
    }
}

const KB_PAIR_ROWS: [(u32, u32); 6] = [(1, 1), (2, 2), (4, 4), (1, 2), (1, 4), (2, 4)];

fn kb_pair(periods: (u32, u32), p: &Rational, s1: &Rational, s2: &Rational, extra: Option<(&'static str, i64)>) -> Result<KbPairQuadruple> {
    check_nonzero("p", p)?;
    let (k1, b1) = kb_pair_row(periods.0, p, "s1", s1)?;
    let (k2, b2) = kb_pair_row(periods.1, p, "s2", s2)?;
    let mut params = Vec::new();
    if let Some((name, v)) = extra {
        params.push((name, int(v)));
    }
    params.extend([("p", p.clone()), ("s1", s1.clone()), ("s2", s2.clone())]);
    Ok(KbPairQuadruple {
        k1,
        b1,
        k2,
        b2,
        periods,
        shared_point: p.clone(),
        parameters: Params(params),
    })
}

/// Row `1..=6` of the table of `kz + b/z` pairs sharing the periodic point
/// `p`: periods (1,1), (2,2), (4,4), (1,2), (1,4), (2,4).
pub fn kb_pair_family(row: u8, p: &Rational, s1: &Rational, s2: &Rational) -> Result<KbPairQuadruple> {
    let periods = match row {
        1..=6 => KB_PAIR_ROWS[usize::from(row - 1)],
        _ => return Err(excluded(format!("row={row}"))),
    };
    kb_pair(periods, p, s1, s2, Some(("row", i64::from(row))))
}

/// Pairs of `kz + b/z` maps whose orbits through `p` meet in `{p, -p}`:
/// case 1 periods (2,2), case 2 periods (2,4), case 3 periods (4,4).
pub fn intersection2_family_kbkb(case: u8, p: &Rational, s1: &Rational, s2: &Rational) -> Result<KbPairQuadruple> {
    let periods = match case {
        1 => (2, 2),
        2 => (2, 4),
        3 => {
            if s1 == s2 || *s1 == -s2 {
                return Err(Error::MapsCoincide);
            }
            (4, 4)
        }
        _ => return Err(excluded(format!("case={case}"))),
    };
    kb_pair(periods, p, s1, s2, Some(("case", i64::from(case))))
}

/// A one-parameter family of `kz + b/z` maps, all having `p` and `-p` on
/// one cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub period: u32,
    pub p: Rational,
    pub k: &'static str,
    pub b: &'static str,
    pub excluded_s: Vec<Rational>,
}

impl FamilyDescriptor {
    fn new(period: u32, p: &Rational) -> Self {
        let (k, b, excluded_s) = match period {
            1 => ("1-s", "s*p^2", vec![int(0), int(1)]),
            2 => ("s-1", "-s*p^2", vec![int(0), int(1)]),
            _ => ("2*s/(s^2-1)", "-p^2*(s^2+1)/(s*(s^2-1))", vec![int(-1), int(0), int(1)]),
        };
        FamilyDescriptor {
            period,
            p: p.clone(),
            k,
            b,
            excluded_s,
        }
    }

    /// The member at parameter `s`.
    pub fn sample(&self, s: &Rational) -> Result<KbMap> {
        let (k, b) = kb_pair_row(self.period, &self.p, "s", s)?;
        KbMap::new(k, b)
    }
}

/// A map having both query points periodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimultaneousMap {
    pub map: KbMap,
    pub periods: (u32, u32),
}

/// Every `t1 z + t2/z` with both `a` and `b` periodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "members", rename_all = "lowercase")]
pub enum SimultaneousMaps {
    /// `a^2 = b^2`: infinitely many, given as families.
    Infinite(Vec<FamilyDescriptor>),
    /// `a^2 != b^2`: the complete list, each member checked by iteration.
    Finite(Vec<SimultaneousMap>),
}

pub fn simultaneous_point_maps(a: &Rational, b: &Rational) -> Result<SimultaneousMaps> {
    check_nonzero("a", a)?;
    check_nonzero("b", b)?;
    if a.square() == b.square() {
        return Ok(SimultaneousMaps::Infinite(
            [1, 2, 4].iter().map(|&n| FamilyDescriptor::new(n, a)).collect(),
        ));
    }
    let mut candidates = vec![
        (crate::classification::kb_from_fixed_and_period2(a, b)?, (1, 2)),
        (crate::classification::kb_from_fixed_and_period2(b, a)?, (2, 1)),
    ];
    // one 4-cycle (a, a/s, -a, -a/s) through b
    for s in [-(a / b), a / b] {
        candidates.push((KbMap::new(period4_k(&s), period4_b(a, &s))?, (4, 4)));
    }
    let verified = candidates
        .into_iter()
        .filter(|(m, (pa, pb))| {
            let m = Map::Kb(m.clone());
            m.period_of(a, DEFAULT_MAX_STEPS) == Some(*pa as usize)
                && m.period_of(b, DEFAULT_MAX_STEPS) == Some(*pb as usize)
        })
        .map(|(map, periods)| SimultaneousMap { map, periods })
        .collect();
    Ok(SimultaneousMaps::Finite(verified))
}

/// Every `z^2 + c` with `q` periodic of period at most 3, one entry per
/// distinct `c`.
pub fn shared_quadratic_maps(q: &Rational) -> Vec<SharedMapEntry> {
    let mut cs = vec![(q - &q.square(), 1u32)];
    // sigma = q + 1/2 must be nonzero
    if *q != Rational::frac(-1, 2) {
        cs.push((-(q.square() + q + int(1)), 2));
    }
    for (_, tau) in period3_parameters(q) {
        cs.push((c_tau(&tau).expect("admissible tau"), 3));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (c, period) in cs {
        if !seen.insert(c.clone()) {
            continue;
        }
        let map = Map::quadratic(c.clone());
        let Some(cycle) = map.cycle_of(q, DEFAULT_MAX_STEPS) else {
            continue;
        };
        if cycle.len() == period as usize {
            out.push(SharedMapEntry { c, period, cycle });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn kbc(t: &MixedFamilyTriple) -> (String, String, String) {
        (t.k.to_string(), t.b.to_string(), t.c.to_string())
    }

    fn kkbb(t: &KbPairQuadruple) -> [String; 4] {
        [&t.k1, &t.b1, &t.k2, &t.b2].map(|r| r.to_string())
    }

    fn pts(v: &[ProjectivePoint]) -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    fn tuple(a: &str, b: &str, c: &str) -> (String, String, String) {
        (a.into(), b.into(), c.into())
    }

    #[test]
    fn mixed_fixed_examples() {
        let t = mixed_family_fixed(&q("3/2"), 1, &q("1")).unwrap();
        assert_eq!(kbc(&t), tuple("5/3", "-3/2", "-3/4"));
        let t = mixed_family_fixed(&q("3"), 2, &q("1/2")).unwrap();
        assert_eq!(kbc(&t), tuple("-5/6", "-3/2", "-6"));
        let t = mixed_family_fixed(&q("2"), 4, &q("2")).unwrap();
        assert_eq!(kbc(&t), tuple("4/3", "-10/3", "-2"));
        assert!(t.verify());
        assert_eq!(
            mixed_family_fixed(&q("0"), 1, &q("1")).unwrap_err().to_string(),
            "parameter excluded: p=0"
        );
        assert!(mixed_family_fixed(&q("2"), 1, &q("-2")).is_err());
        assert!(mixed_family_fixed(&q("2"), 2, &q("2")).is_err());
        assert!(mixed_family_fixed(&q("2"), 4, &q("-1")).is_err());
    }

    #[test]
    fn mixed_period2_examples() {
        let t = mixed_family_period2(&q("1/2"), 1, &q("1")).unwrap();
        assert_eq!(kbc(&t), tuple("3", "-1/2", "-7/4"));
        let t = mixed_family_period2(&q("1"), 2, &q("-1")).unwrap();
        assert_eq!(kbc(&t), tuple("-2", "1", "-3"));
        let t = mixed_family_period2(&q("-1"), 4, &q("3")).unwrap();
        assert_eq!(kbc(&t), tuple("3/4", "-5/12", "-1"));
        assert!(t.verify());
        assert!(mixed_family_period2(&q("-1/2"), 1, &q("1")).is_err());
    }

    #[test]
    fn mixed_period3_examples() {
        let t = mixed_family_period3(&q("1"), 2, 1, &q("16")).unwrap();
        assert_eq!(kbc(&t), tuple("-15", "1", "-29/16"));
        assert_eq!(t.shared_point, q("-1/4"));
        let t = mixed_family_period3(&q("1/2"), 1, 2, &q("9")).unwrap();
        assert_eq!(kbc(&t), tuple("8", "-289/16", "-421/144"));
        assert_eq!(t.shared_point, q("17/12"));
        let t = mixed_family_period3(&q("-1/2"), 3, 4, &q("2")).unwrap();
        assert_eq!(kbc(&t), tuple("4/3", "-5/96", "-29/16"));
        assert_eq!(t.shared_point, q("-1/4"));
        assert!(t.verify());
        assert!(mixed_family_period3(&q("1"), 1, 1, &q("1")).is_err());
        assert!(mixed_family_period3(&q("1"), 4, 1, &q("2")).is_err());
    }

    #[test]
    fn orbit_intersection_examples() {
        let f = Map::quadratic(q("-13"));
        let phi = Map::kb(q("24/7"), q("-300/7")).unwrap();
        assert_eq!(pts(&orbit_intersection(&f, &phi, &q("3")).unwrap()), ["3", "-4"]);
        let f = Map::quadratic(q("-301/144"));
        let phi = Map::kb(q("-115/252"), q("31855/36288")).unwrap();
        assert_eq!(
            pts(&orbit_intersection(&f, &phi, &q("5/12")).unwrap()),
            ["5/12", "-23/12"]
        );
        let f = Map::quadratic(q("-3/4"));
        let phi = Map::kb(q("5/3"), q("-3/2")).unwrap();
        assert_eq!(pts(&orbit_intersection(&f, &phi, &q("3/2")).unwrap()), ["3/2"]);
        assert!(matches!(
            orbit_intersection(&f, &phi, &q("1")),
            Err(Error::NotCommonPeriodic(_))
        ));
    }

    #[test]
    fn intersection2_mixed_examples() {
        let t = intersection2_family_mixed(&q("3"), 1).unwrap();
        assert_eq!(kbc(&t), tuple("24/7", "-300/7", "-13"));
        let t = intersection2_family_mixed(&q("3"), -1).unwrap();
        assert_eq!(kbc(&t), tuple("-24/7", "300/7", "-13"));
        assert_eq!(pts(&t.intersection().unwrap()), ["3", "-4"]);
        for p in ["-1", "0", "-1/2"] {
            assert!(intersection2_family_mixed(&q(p), 1).is_err());
        }
    }

    #[test]
    fn intersection2_period3_examples() {
        let t = intersection2_family_period3(&q("2"), 2, 3, -1).unwrap();
        assert_eq!(kbc(&t), tuple("-115/252", "31855/36288", "-301/144"));
        assert_eq!(t.parameters.get("m_tau"), Some(&q("5/23")));
        let t = intersection2_family_period3(&q("1"), 1, 2, 1).unwrap();
        assert_eq!(t.shared_point, q("5/4"));
        assert_eq!(pts(&t.intersection().unwrap()), ["5/4", "-1/4"]);
        // phi-cycle is (x_i, x_i/m, -x_i, -x_i/m)
        let m = t.parameters.get("m_tau").unwrap().clone();
        let x = t.shared_point.clone();
        let cyc = t.kb().cycle_of(&x, 64).unwrap();
        assert_eq!(cyc, vec![x.clone(), &x / &m, -&x, -(&x / &m)]);
        assert!(intersection2_family_period3(&q("1"), 2, 1, 1).is_err());
    }

    #[test]
    fn kb_pair_examples() {
        let t = kb_pair_family(3, &q("3/5"), &q("2"), &q("1/3")).unwrap();
        assert_eq!(kkbb(&t), ["4/3", "-3/10", "-3/4", "27/20"]);
        let t = kb_pair_family(1, &q("1"), &q("2"), &q("3")).unwrap();
        assert_eq!(kkbb(&t), ["-1", "2", "-2", "3"]);
        assert!(t.verify());
        let t = kb_pair_family(4, &q("1"), &q("2"), &q("2")).unwrap();
        assert_eq!(kkbb(&t), ["-1", "2", "1", "-2"]);
        assert!(t.verify());
        assert!(kb_pair_family(3, &q("1"), &q("1"), &q("2")).is_err());
        assert!(kb_pair_family(5, &q("1"), &q("2"), &q("-1")).is_err());
        assert!(kb_pair_family(7, &q("1"), &q("2"), &q("3")).is_err());
    }

    #[test]
    fn kbkb_intersection_examples() {
        let t = intersection2_family_kbkb(3, &q("3/5"), &q("2"), &q("1/3")).unwrap();
        assert_eq!(pts(&t.intersection().unwrap()), ["3/5", "-3/5"]);
        assert_eq!(
            t.map1().cycle_of(&q("3/5"), 64).unwrap(),
            vec![q("3/5"), q("3/10"), q("-3/5"), q("-3/10")]
        );
        assert_eq!(
            t.map2().cycle_of(&q("3/5"), 64).unwrap(),
            vec![q("3/5"), q("9/5"), q("-3/5"), q("-9/5")]
        );
        let t = intersection2_family_kbkb(1, &q("1"), &q("2"), &q("3")).unwrap();
        assert_eq!(kkbb(&t), ["1", "-2", "2", "-3"]);
        assert_eq!(pts(&t.intersection().unwrap()), ["1", "-1"]);
        assert_eq!(
            intersection2_family_kbkb(3, &q("1"), &q("2"), &q("-2")),
            Err(Error::MapsCoincide)
        );
    }

    #[test]
    fn simultaneous_finite_example() {
        let SimultaneousMaps::Finite(list) = simultaneous_point_maps(&q("1"), &q("2")).unwrap() else {
            panic!("expected a finite list");
        };
        let got: Vec<(String, String)> = list
            .iter()
            .map(|e| (e.map.k().to_string(), e.map.b().to_string()))
            .collect();
        let want = [("-5/3", "8/3"), ("5/3", "-8/3"), ("4/3", "-10/3"), ("-4/3", "10/3")];
        assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
        let m = Map::kb(q("-4/3"), q("10/3")).unwrap();
        assert_eq!(m.cycle_of(&q("1"), 64).unwrap(), vec![q("1"), q("2"), q("-1"), q("-2")]);
    }

    #[test]
    fn simultaneous_infinite_example() {
        let SimultaneousMaps::Infinite(fams) = simultaneous_point_maps(&q("3/5"), &q("-3/5")).unwrap() else {
            panic!("expected families");
        };
        assert_eq!(fams.len(), 3);
        let member = fams[2].sample(&q("2")).unwrap();
        assert_eq!((member.k().clone(), member.b().clone()), (q("4/3"), q("-3/10")));
        assert!(matches!(
            simultaneous_point_maps(&q("1"), &q("1")).unwrap(),
            SimultaneousMaps::Infinite(_)
        ));
        assert!(simultaneous_point_maps(&q("0"), &q("1")).is_err());
    }

    #[test]
    fn shared_maps_examples() {
        let got = shared_quadratic_maps(&q("101/40"));
        let want = [
            ("-6161/1600", 1, vec!["101/40"]),
            ("-15841/1600", 2, vec!["101/40", "-141/40"]),
            ("-7841/1600", 3, vec!["101/40", "59/40", "-109/40"]),
        ];
        assert_eq!(got.len(), 3);
        for (e, (c, n, cyc)) in got.iter().zip(want) {
            assert_eq!(e.c, q(c));
            assert_eq!(e.period, n);
            assert_eq!(e.cycle, cyc.iter().map(|s| q(s)).collect::<Vec<_>>());
        }
        let got = shared_quadratic_maps(&q("0"));
        assert_eq!(got.len(), 2);
        assert_eq!((got[0].c.clone(), got[1].c.clone()), (q("0"), q("-1")));
        assert_eq!(got[1].cycle, vec![q("0"), q("-1")]);
        let got = shared_quadratic_maps(&q("1/2"));
        assert_eq!((got[0].c.clone(), got[0].period), (q("1/4"), 1));
        assert_eq!(shared_quadratic_maps(&q("-1/2")).len(), 1);
    }

    fn rat(max: i64) -> impl Strategy<Value = Rational> {
        (-max..=max, 1..=max).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn mixed_families_verify(p in rat(20), param in rat(20), n in prop::sample::select(vec![1u32, 2, 4])) {
            if let Ok(t) = mixed_family_fixed(&p, n, &param) {
                prop_assert!(t.verify(), "{:?}", t);
            }
            if let Ok(t) = mixed_family_period2(&p, n, &param) {
                prop_assert!(t.verify(), "{:?}", t);
            }
        }

        #[test]
        fn period3_mixed_families_verify(tau in rat(12), i in 1u8..=3, param in rat(20), n in prop::sample::select(vec![1u32, 2, 4])) {
            if let Ok(t) = mixed_family_period3(&tau, i, n, &param) {
                prop_assert!(t.verify(), "{:?}", t);
            }
        }

        #[test]
        fn intersection_families_meet_in_two_points(p in rat(20), tau in rat(12), sign in prop::sample::select(vec![1i8, -1]), i in 1u8..=2, dj in 1u8..=2) {
            if let Ok(t) = intersection2_family_mixed(&p, sign) {
                prop_assert!(t.verify());
                let meet = t.intersection().unwrap();
                let want: Vec<ProjectivePoint> = vec![(&p).into(), (&(-&p - int(1))).into()];
                prop_assert_eq!(meet, want);
            }
            let j = (i + dj).min(3);
            if let Ok(t) = intersection2_family_period3(&tau, i, j, sign) {
                prop_assert!(t.verify());
                prop_assert_eq!(t.intersection().unwrap().len(), 2);
            }
        }

        #[test]
        fn kb_pair_rows_verify(row in 1u8..=6, p in rat(20), s1 in rat(20), s2 in rat(20)) {
            if let Ok(t) = kb_pair_family(row, &p, &s1, &s2) {
                prop_assert!(t.verify(), "{:?}", t);
                let meet = t.intersection().unwrap().len();
                if row == 1 {
                    // both fixed: orbits are singletons
                    prop_assert_eq!(meet, 1);
                }
            }
        }

        #[test]
        fn kbkb_families_meet_in_two_points(case in 1u8..=3, p in rat(20), s1 in rat(20), s2 in rat(20)) {
            if let Ok(t) = intersection2_family_kbkb(case, &p, &s1, &s2) {
                prop_assert!(t.verify());
                let meet = t.intersection().unwrap();
                prop_assert_eq!(meet, vec![ProjectivePoint::from(&p), ProjectivePoint::from(&-&p)]);
            }
        }

        #[test]
        fn shared_maps_at_most_three(qq in rat(100)) {
            let got = shared_quadratic_maps(&qq);
            prop_assert!(got.len() <= 3);
            let cs: HashSet<_> = got.iter().map(|e| e.c.clone()).collect();
            prop_assert_eq!(cs.len(), got.len());
            for e in &got {
                prop_assert_eq!(&e.cycle[0], &qq);
                prop_assert_eq!(e.cycle.len(), e.period as usize);
            }
        }
    }
}
