use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;

use super::{enumeration_key, Hit, Method, ParameterBox, ScanKind, ScanOptions, ScanReport};
use crate::dynamics::Map;
use crate::dynatomic::{filter_exact, int_rational_roots, Dynatomic, MAX_ITERATE};
use crate::error::{Error, Result};
use crate::numeric::{enumerate_rationals, ProjectivePoint, Rational};

/// Applies `f` to every item, `workers` threads each taking contiguous
/// chunks; results come back in input order.
pub(crate) fn run_chunked<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers * 4).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| {
        items
            .par_chunks(chunk)
            .map(|c| c.iter().map(&f).collect::<Vec<R>>())
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

fn check_periods(periods: &[u32]) -> Result<Vec<u32>> {
    let mut p: Vec<u32> = periods.to_vec();
    p.sort_unstable();
    p.dedup();
    if let Some(&bad) = p.iter().find(|&&n| n == 0 || n > MAX_ITERATE) {
        return Err(Error::UnsupportedPeriod(bad));
    }
    Ok(p)
}

/// Points of height at most `h_p` with exact period in `periods`, sorted
/// by period, then in enumeration order.
fn periodic_hits(
    map: &Map,
    periods: &[u32],
    h_p: u64,
    method: Method,
    candidates: &[Rational],
) -> Result<Vec<(Rational, u32)>> {
    let mut out = Vec::new();
    match method {
        Method::Dynatomic => {
            let mut d = Dynatomic::new(map);
            for &n in periods {
                let f = d.int_poly(n)?;
                let steps = n as usize;
                for z in filter_exact(map, n, int_rational_roots(&f, Some(h_p)), steps) {
                    out.push((z, n));
                }
            }
        }
        Method::Orbit => {
            let longest = periods.iter().copied().max().unwrap_or(1) as usize;
            for z in candidates {
                if let Some(n) = map.period_of(z, longest) {
                    let n = n as u32;
                    if periods.contains(&n) {
                        out.push((z.clone(), n));
                    }
                }
            }
        }
    }
    out.sort_by_key(|a| (a.1, enumeration_key(&a.0)));
    Ok(out)
}

fn periodic_scan(
    kind: ScanKind,
    parameter_box: ParameterBox,
    maps: Vec<Map>,
    periods: &[u32],
    options: ScanOptions,
) -> Result<ScanReport> {
    let start = Instant::now();
    let h_p = parameter_box.h_p;
    let candidates: Vec<Rational> = match options.method {
        Method::Orbit => enumerate_rationals(h_p).collect(),
        Method::Dynatomic => Vec::new(),
    };
    let per_map = run_chunked(&maps, options.workers, |m| {
        periodic_hits(m, periods, h_p, options.method, &candidates)
    });
    let mut hits = Vec::new();
    for (map, found) in maps.iter().zip(per_map) {
        for (point, period) in found? {
            hits.push(Hit::Periodic {
                map: map.clone(),
                point,
                period,
            });
        }
    }
    Ok(ScanReport {
        scan_kind: kind,
        parameter_box,
        hits,
        scanned_count: maps.len() as u64,
        tally: BTreeMap::new(),
        elapsed: start.elapsed(),
    })
}

fn quadratic_maps(h: u64) -> Vec<Map> {
    enumerate_rationals(h).map(Map::quadratic).collect()
}

fn kb_maps(h_k: u64, h_b: u64) -> Vec<Map> {
    let bs: Vec<Rational> = enumerate_rationals(h_b).filter(|b| !b.is_zero()).collect();
    enumerate_rationals(h_k)
        .filter(|k| !k.is_zero())
        .flat_map(|k| {
            bs.iter()
                .map(move |b| Map::kb(k.clone(), b.clone()).expect("nonzero parameters"))
        })
        .collect()
}

/// Rational points of the given exact periods for every `z^2 + c` with
/// `height(c) <= h_c`, restricted to points of height `<= h_p`.
pub fn scan_quadratic_conjecture(
    h_c: u64,
    h_p: u64,
    periods: &[u32],
    options: ScanOptions,
) -> Result<ScanReport> {
    let periods = check_periods(periods)?;
    let parameter_box = ParameterBox {
        h_c: Some(h_c),
        h_p,
        periods: periods.clone(),
        ..ParameterBox::default()
    };
    periodic_scan(
        ScanKind::QuadraticConjecture,
        parameter_box,
        quadratic_maps(h_c),
        &periods,
        options,
    )
}

/// As [`scan_quadratic_conjecture`] over `kz + b/z` with
/// `height(k) <= h_k`, `height(b) <= h_b`, both nonzero.
pub fn scan_kb_conjecture(
    h_k: u64,
    h_b: u64,
    h_p: u64,
    periods: &[u32],
    options: ScanOptions,
) -> Result<ScanReport> {
    let periods = check_periods(periods)?;
    let parameter_box = ParameterBox {
        h_k: Some(h_k),
        h_b: Some(h_b),
        h_p,
        periods: periods.clone(),
        ..ParameterBox::default()
    };
    periodic_scan(
        ScanKind::KbConjecture,
        parameter_box,
        kb_maps(h_k, h_b),
        &periods,
        options,
    )
}

/// Finite cycles of a map through points of height `<= h_p`, periods 1 to 4.
fn small_cycles(map: &Map, h_p: u64, method: Method, candidates: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let found = periodic_hits(map, &[1, 2, 3, 4], h_p, method, candidates)?;
    let mut seen: HashSet<Rational> = HashSet::new();
    let mut cycles = Vec::new();
    for (z, _) in found {
        if seen.contains(&z) {
            continue;
        }
        let cycle = map.cycle_of(&z, 4).expect("periodic point");
        seen.extend(cycle.iter().cloned());
        cycles.push(cycle);
    }
    Ok(cycles)
}

fn pair_kind(a: &Map, b: &Map) -> &'static str {
    match (a, b) {
        (Map::Quadratic(_), Map::Quadratic(_)) => "quad-quad",
        (Map::Quadratic(_), Map::Kb(_)) | (Map::Kb(_), Map::Quadratic(_)) => "quad-kb",
        (Map::Kb(_), Map::Kb(_)) => "kb-kb",
    }
}

/// Every pair of distinct maps from the box (`z^2 + c` and `kz + b/z`, all
/// parameters of height `<= h`) sharing a periodic point of height
/// `<= h_p`; intersections of three or more points are reported as hits.
/// The tally counts shared cycle pairs by pair kind and intersection size.
pub fn scan_intersection_bound(h: u64, h_p: u64, options: ScanOptions) -> Result<ScanReport> {
    let start = Instant::now();
    let mut maps = quadratic_maps(h);
    maps.extend(kb_maps(h, h));
    let candidates: Vec<Rational> = match options.method {
        Method::Orbit => enumerate_rationals(h_p).collect(),
        Method::Dynatomic => Vec::new(),
    };
    let cycles: Vec<Vec<Vec<Rational>>> = run_chunked(&maps, options.workers, |m| {
        small_cycles(m, h_p, options.method, &candidates)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    // point -> (map, cycle) occurrences, in map order
    let mut by_point: HashMap<&Rational, Vec<(usize, usize)>> = HashMap::new();
    for (mi, cs) in cycles.iter().enumerate() {
        for (ci, c) in cs.iter().enumerate() {
            for z in c {
                by_point.entry(z).or_default().push((mi, ci));
            }
        }
    }
    let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut seen = HashSet::new();
    for occ in by_point.values() {
        for (a, &x) in occ.iter().enumerate() {
            for &y in &occ[a + 1..] {
                if x.0 != y.0 && seen.insert((x, y)) {
                    pairs.push((x, y));
                }
            }
        }
    }
    pairs.sort();

    let mut tally: BTreeMap<String, u64> = BTreeMap::new();
    let mut hits = Vec::new();
    for ((m1, c1), (m2, c2)) in pairs {
        let second: HashSet<&Rational> = cycles[m2][c2].iter().collect();
        let cyc = &cycles[m1][c1];
        let common: Vec<usize> = (0..cyc.len()).filter(|&i| second.contains(&cyc[i])).collect();
        let kind = pair_kind(&maps[m1], &maps[m2]);
        *tally.entry(format!("{kind}:{}", common.len())).or_default() += 1;
        if common.len() < 3 {
            continue;
        }
        let first = *common
            .iter()
            .min_by_key(|&&i| enumeration_key(&cyc[i]))
            .expect("nonempty");
        let order = (0..cyc.len()).map(|s| (first + s) % cyc.len());
        let intersection = order
            .filter(|&i| second.contains(&cyc[i]))
            .map(|i| ProjectivePoint::from(&cyc[i]))
            .collect();
        hits.push(Hit::Intersection {
            map1: maps[m1].clone(),
            map2: maps[m2].clone(),
            point: cyc[first].clone(),
            intersection,
        });
    }
    Ok(ScanReport {
        scan_kind: ScanKind::IntersectionBound,
        parameter_box: ParameterBox {
            h: Some(h),
            h_p,
            ..ParameterBox::default()
        },
        hits,
        scanned_count: maps.len() as u64,
        tally,
        elapsed: start.elapsed(),
    })
}
