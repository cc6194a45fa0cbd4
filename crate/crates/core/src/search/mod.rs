//! Height-bounded searches: periodic-point scans over parameter boxes,
//! orbit-intersection scans, and rational points on quartic curves.
//!
//! Scans split the parameter enumeration into contiguous chunks, one per
//! worker, and concatenate the chunk results in order, so the report does
//! not depend on the worker count.

mod quartic;
mod scan;

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::dynamics::Map;
use crate::numeric::{ProjectivePoint, Rational};

pub use quartic::{quartic_rational_points, QuarticCurve, QuarticPoints};
pub use scan::{scan_intersection_bound, scan_kb_conjecture, scan_quadratic_conjecture};

/// Which scan produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    QuadraticConjecture,
    KbConjecture,
    IntersectionBound,
}

impl ScanKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanKind::QuadraticConjecture => "quadratic-conjecture",
            ScanKind::KbConjecture => "kb-conjecture",
            ScanKind::IntersectionBound => "intersection-bound",
        }
    }
}

/// How exact periods are decided during a scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Bounded rational roots of the dynatomic polynomial, filtered by
    /// exact period.
    #[default]
    Dynatomic,
    /// Iterate every point of bounded height.
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub workers: usize,
    pub method: Method,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: 1,
            method: Method::Dynatomic,
        }
    }
}

impl ScanOptions {
    pub fn workers(workers: usize) -> Self {
        ScanOptions {
            workers,
            ..Self::default()
        }
    }
}

/// Height bounds of a scan; absent bounds do not apply to its kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParameterBox {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    pub h_p: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub periods: Vec<u32>,
}

/// One finding of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Hit {
    Periodic {
        map: Map,
        point: Rational,
        period: u32,
    },
    Intersection {
        map1: Map,
        map2: Map,
        point: Rational,
        intersection: Vec<ProjectivePoint>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub scan_kind: ScanKind,
    pub parameter_box: ParameterBox,
    pub hits: Vec<Hit>,
    pub scanned_count: u64,
    /// Counts of examined configurations by category; empty for
    /// periodic-point scans.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tally: BTreeMap<String, u64>,
    /// Wall time; excluded from serialized reports so they stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    /// Header and rows for CSV output: `scan_kind, parameters..., point,
    /// period` (or `size` for intersection scans).
    pub fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let kind = self.scan_kind.as_str().to_string();
        let header = match self.scan_kind {
            ScanKind::QuadraticConjecture => vec!["scan_kind", "c", "point", "period"],
            ScanKind::KbConjecture => vec!["scan_kind", "k", "b", "point", "period"],
            ScanKind::IntersectionBound => vec!["scan_kind", "map1", "map2", "point", "size"],
        };
        let rows = self
            .hits
            .iter()
            .map(|h| {
                let mut row = vec![kind.clone()];
                match h {
                    Hit::Periodic { map, point, period } => {
                        match map {
                            Map::Quadratic(m) => row.push(m.c.to_string()),
                            Map::Kb(m) => {
                                row.push(m.k().to_string());
                                row.push(m.b().to_string());
                            }
                        }
                        row.push(point.to_string());
                        row.push(period.to_string());
                    }
                    Hit::Intersection {
                        map1,
                        map2,
                        point,
                        intersection,
                    } => {
                        row.push(map1.to_string());
                        row.push(map2.to_string());
                        row.push(point.to_string());
                        row.push(intersection.len().to_string());
                    }
                }
                row
            })
            .collect();
        (header, rows)
    }
}

/// Sort key placing rationals in enumeration order.
pub(crate) fn enumeration_key(r: &Rational) -> (num_bigint::BigInt, num_bigint::BigInt, num_bigint::BigInt) {
    (r.height(), r.numer().clone(), r.denom().clone())
}
