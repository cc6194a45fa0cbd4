//! Closed-form periodic points of periods 1, 2, 3 for `z^2 + c` and
//! 1, 2, 4 for `kz + b/z`, with the parametrized families.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dynamics::{KbMap, Map, DEFAULT_MAX_STEPS};
use crate::dynatomic::{periodic_points_exact, psi4_lambda4, rational_roots};
use crate::error::{excluded, Error, Result};
use crate::numeric::{Rational, UnivariatePolynomial};

/// Parameter certifying a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    /// `c = 1/4 - rho^2`
    Rho(Rational),
    /// `c = -3/4 - sigma^2`
    Sigma(Rational),
    /// `c = c_tau`
    Tau(Rational),
    /// `b/(1-k) = m^2`, `b/(k+1) = -m^2`, or the 4-cycle ratio.
    M(Rational),
}

/// Rational points of one exact period for one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPoints {
    pub n: u32,
    pub points: BTreeSet<Rational>,
    /// The cycle, starting at its largest point, for periods above 1.
    pub cycle: Option<Vec<Rational>>,
    pub witness: Option<Witness>,
}

impl PeriodicPoints {
    fn empty(n: u32) -> Self {
        PeriodicPoints {
            n,
            points: BTreeSet::new(),
            cycle: None,
            witness: None,
        }
    }
}

/// A 3-cycle `x1 -> x2 -> x3 -> x1` of `z^2 + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Period3Family {
    pub tau: Rational,
    pub c: Rational,
    pub x1: Rational,
    pub x2: Rational,
    pub x3: Rational,
}

impl Period3Family {
    pub fn points(&self) -> [Rational; 3] {
        [self.x1.clone(), self.x2.clone(), self.x3.clone()]
    }

    /// `x_i` for `i` in `1..=3`.
    pub fn x(&self, i: u8) -> Result<Rational> {
        match i {
            1 => Ok(self.x1.clone()),
            2 => Ok(self.x2.clone()),
            3 => Ok(self.x3.clone()),
            _ => Err(excluded(format!("i={i}"))),
        }
    }
}

/// `kz + b/z` with the 4-cycle `x1 -> x2 -> x3 -> x4 -> x1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KbPeriod4Family {
    pub m: Rational,
    pub k: Rational,
    pub b: Rational,
    pub points: Vec<Rational>,
}

impl KbPeriod4Family {
    pub fn map(&self) -> KbMap {
        KbMap::new(self.k.clone(), self.b.clone()).expect("family parameters are nonzero")
    }
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn poly(c: &[i64]) -> UnivariatePolynomial {
    UnivariatePolynomial::from_integers(c)
}

/// Numerators of `x_1, x_2, x_3` over the common denominator
/// `2 tau (tau + 1)`.
fn period3_numerators() -> [UnivariatePolynomial; 3] {
    [
        poly(&[1, 1, 2, 1]),
        poly(&[-1, -1, 0, 1]),
        poly(&[-1, -3, -2, -1]),
    ]
}

fn period3_denominator() -> UnivariatePolynomial {
    poly(&[0, 2, 2])
}

/// `c_tau` as numerator and denominator in `tau`.
fn c_tau_parts() -> (UnivariatePolynomial, UnivariatePolynomial) {
    (poly(&[-1, -4, -9, -8, -4, -2, -1]), poly(&[0, 0, 4, 8, 4]))
}

fn check_tau(tau: &Rational) -> Result<()> {
    if tau.is_zero() || *tau == int(-1) {
        Err(excluded(format!("tau={tau}")))
    } else {
        Ok(())
    }
}

/// `c_tau`, the parameter whose map has the 3-cycle indexed by `tau`.
pub fn c_tau(tau: &Rational) -> Result<Rational> {
    check_tau(tau)?;
    let (n, d) = c_tau_parts();
    Ok(n.eval(tau) / d.eval(tau))
}

/// The 3-cycle of `z^2 + c_tau`.
pub fn quad_family_period3(tau: &Rational) -> Result<Period3Family> {
    let c = c_tau(tau)?;
    let d = period3_denominator().eval(tau);
    let [x1, x2, x3] = period3_numerators().map(|n| n.eval(tau) / &d);
    Ok(Period3Family {
        tau: tau.clone(),
        c,
        x1,
        x2,
        x3,
    })
}

/// Cubic in `tau` whose roots are the parameters with `x_i(tau) = q`:
/// `N_i(tau) - q * 2 tau (tau + 1)`.
pub fn period3_cubic(i: u8, q: &Rational) -> Result<UnivariatePolynomial> {
    let idx = match i {
        1..=3 => usize::from(i - 1),
        _ => return Err(excluded(format!("i={i}"))),
    };
    let [n1, n2, n3] = period3_numerators();
    let n = [n1, n2, n3][idx].clone();
    Ok(&n - &period3_denominator().scale(q))
}

/// Every `(i, tau)` with `tau` admissible and `x_i(tau) = q`.
pub fn period3_parameters(q: &Rational) -> Vec<(u8, Rational)> {
    let mut out = Vec::new();
    for i in 1..=3u8 {
        let cubic = period3_cubic(i, q).expect("valid index");
        let roots = rational_roots(&cubic).expect("monic up to sign");
        for tau in roots {
            if check_tau(&tau).is_ok() {
                out.push((i, tau));
            }
        }
    }
    out
}

/// Rotates a cycle so it starts at its largest element.
pub(crate) fn from_largest(mut cycle: Vec<Rational>) -> Vec<Rational> {
    if let Some(i) = (0..cycle.len()).max_by(|&a, &b| cycle[a].cmp(&cycle[b])) {
        cycle.rotate_left(i);
    }
    cycle
}

/// Periodic points of exact period `n` in `{1, 2, 3}` for `z^2 + c`.
pub fn quad_periodic_points(c: &Rational, n: u32) -> Result<PeriodicPoints> {
    let half = Rational::frac(1, 2);
    match n {
        1 => {
            // 1 - 4c = (2 rho)^2
            let Some(two_rho) = (int(1) - int(4) * c).sqrt() else {
                return Ok(PeriodicPoints::empty(1));
            };
            let rho = two_rho * &half;
            let points = [&half + &rho, &half - &rho].into_iter().collect();
            Ok(PeriodicPoints {
                n,
                points,
                cycle: None,
                witness: Some(Witness::Rho(rho)),
            })
        }
        2 => {
            // -4c - 3 = (2 sigma)^2, sigma != 0
            match (int(-4) * c - int(3)).sqrt() {
                Some(two_sigma) if !two_sigma.is_zero() => {
                    let sigma = two_sigma * &half;
                    let a = &sigma - &half;
                    let b = -(&half) - &sigma;
                    Ok(PeriodicPoints {
                        n,
                        points: [a.clone(), b.clone()].into_iter().collect(),
                        cycle: Some(vec![a, b]),
                        witness: Some(Witness::Sigma(sigma)),
                    })
                }
                _ => Ok(PeriodicPoints::empty(2)),
            }
        }
        3 => {
            let map = Map::quadratic(c.clone());
            let points = periodic_points_exact(&map, 3, DEFAULT_MAX_STEPS)?;
            let Some(start) = points.iter().next_back() else {
                return Ok(PeriodicPoints::empty(3));
            };
            let cycle = map
                .cycle_of(start, DEFAULT_MAX_STEPS)
                .expect("root of exact period 3");
            let witness = period3_parameters(start)
                .into_iter()
                .find(|(_, tau)| c_tau(tau).as_ref() == Ok(c))
                .map(|(_, tau)| Witness::Tau(tau));
            Ok(PeriodicPoints {
                n,
                points,
                cycle: Some(from_largest(cycle)),
                witness,
            })
        }
        _ => Err(Error::UnsupportedPeriod(n)),
    }
}

/// Periodic points of exact period `n` in `{1, 2, 4}` for `kz + b/z`.
pub fn kb_periodic_points(k: &Rational, b: &Rational, n: u32) -> Result<PeriodicPoints> {
    let map = KbMap::new(k.clone(), b.clone())?;
    let pm = |m: Rational| -> BTreeSet<Rational> { [-&m, m].into_iter().collect() };
    match n {
        1 => {
            if k.is_one() {
                return Ok(PeriodicPoints::empty(1));
            }
            match (b / &(int(1) - k)).sqrt() {
                Some(m) => Ok(PeriodicPoints {
                    n,
                    points: pm(m.clone()),
                    cycle: None,
                    witness: Some(Witness::M(m)),
                }),
                None => Ok(PeriodicPoints::empty(1)),
            }
        }
        2 => {
            if *k == int(-1) {
                return Ok(PeriodicPoints::empty(2));
            }
            match (-(b / &(k + &int(1)))).sqrt() {
                Some(m) => Ok(PeriodicPoints {
                    n,
                    points: pm(m.clone()),
                    cycle: Some(vec![m.clone(), -&m]),
                    witness: Some(Witness::M(m)),
                }),
                None => Ok(PeriodicPoints::empty(2)),
            }
        }
        4 => {
            let (psi, _) = psi4_lambda4(k, b)?;
            let map = Map::Kb(map);
            let points: BTreeSet<Rational> = rational_roots(&psi)?
                .into_iter()
                .filter(|z| map.period_of(z, DEFAULT_MAX_STEPS) == Some(4))
                .collect();
            let Some(start) = points.iter().next_back() else {
                return Ok(PeriodicPoints::empty(4));
            };
            let cycle = from_largest(map.cycle_of(start, DEFAULT_MAX_STEPS).expect("period 4"));
            // cycle is (p, p/m, -p, -p/m)
            let m = &cycle[0] / &cycle[1];
            Ok(PeriodicPoints {
                n,
                points,
                cycle: Some(cycle),
                witness: Some(Witness::M(m)),
            })
        }
        _ => Err(Error::UnsupportedPeriod(n)),
    }
}

pub(crate) fn check_m(name: &str, m: &Rational) -> Result<()> {
    if m.is_zero() || m.abs().is_one() {
        Err(excluded(format!("{name}={m}")))
    } else {
        Ok(())
    }
}

/// `k = 2m/(m^2 - 1)`.
pub(crate) fn period4_k(m: &Rational) -> Rational {
    int(2) * m / (m.square() - int(1))
}

/// `b = -p^2 (m^2 + 1) / (m (m^2 - 1))`, making `(p, p/m, -p, -p/m)` a cycle.
pub(crate) fn period4_b(p: &Rational, m: &Rational) -> Rational {
    let m2 = m.square();
    -(p.square() * (&m2 + &int(1))) / (m * &(m2 - int(1)))
}

/// The map with a rational 4-cycle indexed by `m`.
pub fn kb_family_period4(m: &Rational) -> Result<KbPeriod4Family> {
    check_m("m", m)?;
    let m2 = m.square();
    let k = period4_k(m);
    let b = -m / (m2.square() - int(1));
    let d = &m2 + &int(1);
    let points = vec![int(1) / &d, -m / &d, int(-1) / &d, m / &d];
    Ok(KbPeriod4Family {
        m: m.clone(),
        k,
        b,
        points,
    })
}

/// The unique `kz + b/z` with fixed point `q1` and a point `q2` of exact
/// period 2.
pub fn kb_from_fixed_and_period2(q1: &Rational, q2: &Rational) -> Result<KbMap> {
    if q1.is_zero() {
        return Err(excluded("q1=0"));
    }
    if q2.is_zero() {
        return Err(excluded("q2=0"));
    }
    let (s1, s2) = (q1.square(), q2.square());
    if s1 == s2 {
        return Err(Error::DegeneratePair(format!("q1^2 = q2^2 for q1={q1}, q2={q2}")));
    }
    let d = &s2 - &s1;
    let k = -(&s2 + &s1) / &d;
    let b = int(2) * &s1 * &s2 / &d;
    KbMap::new(k, b)
}
