pub mod error;
pub mod numeric;

pub use error::{Error, Result};
pub use numeric::*;
pub mod dynamics;

pub use dynamics::{
    aut_is_c2, kb_conjugate_equivalent, normalize_quadratic, KbMap, Map, OrbitReport, OrbitStatus,
    QuadraticMap, DEFAULT_MAX_STEPS,
};
pub mod dynatomic;

pub use dynatomic::{
    dynatomic_form, dynatomic_polynomial, iterate_homogeneous, moebius, period_polynomial,
    periodic_points_bounded, periodic_points_exact, psi4_lambda4, rational_roots,
    rational_roots_bounded, IteratePair,
};
pub mod classification;

pub use classification::{
    c_tau, kb_family_period4, kb_from_fixed_and_period2, kb_periodic_points, period3_cubic,
    period3_parameters, quad_family_period3, quad_periodic_points, KbPeriod4Family,
    Period3Family, PeriodicPoints, Witness,
};
pub mod simultaneous;

pub use simultaneous::{
    intersection2_family_kbkb, intersection2_family_mixed, intersection2_family_period3,
    kb_pair_family, mixed_family_fixed, mixed_family_period2, mixed_family_period3,
    orbit_intersection, shared_quadratic_maps, simultaneous_point_maps, FamilyDescriptor,
    KbPairQuadruple, MixedFamilyTriple, Params, SharedMapEntry, SimultaneousMap,
    SimultaneousMaps,
};
pub mod search;
pub use search::{quartic_rational_points, scan_intersection_bound, scan_kb_conjecture, scan_quadratic_conjecture, Hit, Method, ParameterBox, QuarticCurve, QuarticPoints, ScanKind, ScanOptions, ScanReport};
