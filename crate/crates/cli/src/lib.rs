//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and renders the result; `main` only prints and exits.

mod config;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ratperiod::{
    classification, dynatomic_form, iterate_homogeneous, psi4_lambda4, dynatomic_polynomial, intersection2_family_kbkb,
    intersection2_family_mixed, intersection2_family_period3, kb_pair_family, mixed_family_fixed,
    mixed_family_period2, mixed_family_period3, orbit_intersection, periodic_points_exact,
    quartic_rational_points, rational_roots, scan_intersection_bound, scan_kb_conjecture,
    scan_quadratic_conjecture, shared_quadratic_maps, simultaneous_point_maps, Map, Method,
    QuarticCurve, Rational, ScanOptions, DEFAULT_MAX_STEPS,
};

pub use config::Config;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a domain error such as an excluded parameter.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for a usage error.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ratperiod",
    version,
    about = "Exact rational periodic points of z^2 + c and kz + b/z",
    after_help = "Rationals are written n or n/d; maps as quad:c=<rat> or kb:k=<rat>,b=<rat>."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// File of key=value lines giving default scan bounds.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forward orbit of a point: preperiodic tail and cycle.
    Orbit {
        #[arg(long)]
        map: Map,
        /// Starting point; `inf` for the point at infinity.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Exact period of a point, or null if it is not periodic.
    Period {
        #[arg(long)]
        map: Map,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Dynatomic polynomial, its rational roots and the points of exact period n.
    Dynatomic {
        #[arg(long)]
        map: Map,
        #[arg(long)]
        n: u32,
    },
    /// Rational periodic points by closed form: periods 1, 2, 3 for
    /// quadratic maps and 1, 2, 4 for kz + b/z.
    Classify {
        #[arg(long)]
        map: Map,
        /// A single period; all supported periods when omitted.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Members of the parametrized families.
    Family(FamilyArgs),
    /// Intersection of the orbits of a common periodic point.
    Intersect {
        #[arg(long)]
        map1: Map,
        #[arg(long)]
        map2: Map,
        #[arg(long, allow_hyphen_values = true)]
        point: Rational,
    },
    /// Every z^2 + c with q periodic of period at most 3.
    Shared {
        #[arg(long, allow_hyphen_values = true)]
        q: Rational,
    },
    /// Every kz + b/z with both p and q periodic.
    Simul {
        #[arg(long, allow_hyphen_values = true)]
        p: Rational,
        #[arg(long, allow_hyphen_values = true)]
        q: Rational,
    },
    /// Height-bounded searches over parameter boxes.
    Scan(ScanArgs),
    /// Rational points of bounded height on a quartic curve.
    Quartic {
        /// `first`, `second`, `third`, or coefficients `a4,a3,a2,a1,a0`.
        #[arg(long, default_value = "first", allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// Shared fixed point: --p, --n, --q.
    Mixed1,
    /// Quadratic 2-cycle through the shared point: --p, --n, --q.
    Mixed2,
    /// Quadratic 3-cycle through the shared point: --tau, --i, --n, --q.
    Mixed3,
    /// Orbits meeting in two points: --p, --sign.
    Int2,
    /// Quadratic 3-cycle meeting a 4-cycle in two points: --tau, --i, --j, --sign.
    Int2Period3,
    /// Two kz + b/z maps sharing a periodic point: --row, --p, --s1, --s2.
    Kbpair,
    /// Two kz + b/z maps whose orbits meet in two points: --row, --p, --s1, --s2.
    Kbkb,
    /// Quadratic 3-cycle: --tau.
    Period3,
    /// kz + b/z 4-cycle: --m.
    Period4,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: FamilyKind,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    s1: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    s2: Option<Rational>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    i: Option<u8>,
    #[arg(long)]
    j: Option<u8>,
    #[arg(long)]
    row: Option<u8>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanKindArg {
    /// Periodic points of z^2 + c.
    Quadratic,
    /// Periodic points of kz + b/z.
    Kb,
    /// Orbit intersections of pairs of maps.
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dynatomic,
    Orbit,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: ScanKindArg,
    #[arg(long)]
    height_c: Option<u64>,
    #[arg(long)]
    height_k: Option<u64>,
    #[arg(long)]
    height_b: Option<u64>,
    /// Parameter bound of the intersection scan.
    #[arg(long)]
    height: Option<u64>,
    /// Height bound on periodic points.
    #[arg(long)]
    height_p: Option<u64>,
    /// Comma-separated exact periods.
    #[arg(long, value_delimiter = ',')]
    periods: Option<Vec<u32>>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Dynatomic)]
    method: MethodArg,
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ratperiod::Error> for Failure {
    fn from(e: ratperiod::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// A rendered result: JSON value plus optional CSV rows.
struct Output {
    value: Value,
    csv: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, csv: None }
    }
}

fn missing(flag: &str, kind: &str) -> Failure {
    Failure::Usage(format!("--{flag} is required for --kind {kind}"))
}

fn need<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> std::result::Result<T, Failure> {
    v.clone().ok_or_else(|| missing(flag, kind))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_point(s: &str) -> std::result::Result<ratperiod::ProjectivePoint, Failure> {
    if s == "inf" {
        return Ok(ratperiod::ProjectivePoint::infinity());
    }
    s.parse::<Rational>()
        .map(Into::into)
        .map_err(|e| Failure::Usage(format!("invalid value '{s}' for '--point': {e}")))
}

fn orbit(map: &Map, point: &str, max_steps: usize) -> Outcome {
    let start = parse_point(point)?;
    let report = map.orbit(&start, max_steps);
    Ok(json!({
        "map": map,
        "point": start,
        "tail": report.tail,
        "cycle": report.cycle,
        "status": report.status,
        "period": report.period(),
    })
    .into())
}

fn period(map: &Map, point: &str, max_steps: usize) -> Outcome {
    let start = parse_point(point)?;
    Ok(json!({
        "map": map,
        "point": start,
        "period": map.exact_period(&start, max_steps),
    })
    .into())
}

fn dynatomic(map: &Map, n: u32) -> Outcome {
    let form = dynatomic_form(map, n)?;
    let poly = dynatomic_polynomial(map, n)?;
    let roots = rational_roots(&poly)?;
    let exact = periodic_points_exact(map, n, DEFAULT_MAX_STEPS)?;
    let it = iterate_homogeneous(map, n)?;
    let mut v = json!({
        "map": map,
        "n": n,
        "iterate": { "f": it.f.to_string(), "g": it.g.to_string() },
        "degree": form.degree(),
        "form": form.to_string(),
        "polynomial": poly.to_string(),
        "rational_roots": roots,
        "periodic_points": exact,
    });
    if let (Map::Kb(m), 4) = (map, n) {
        let (psi, lambda) = psi4_lambda4(m.k(), m.b())?;
        v["psi4"] = json!(psi.to_string());
        v["psi4_roots"] = to_value(&rational_roots(&psi)?);
        v["lambda4"] = json!(lambda.to_string());
        v["lambda4_roots"] = to_value(&rational_roots(&lambda)?);
    }
    Ok(v.into())
}

fn classify(map: &Map, n: Option<u32>) -> Outcome {
    let periods: Vec<u32> = match (map, n) {
        (_, Some(n)) => vec![n],
        (Map::Quadratic(_), None) => vec![1, 2, 3],
        (Map::Kb(_), None) => vec![1, 2, 4],
    };
    let mut results = Vec::new();
    for n in periods {
        let r = match map {
            Map::Quadratic(m) => classification::quad_periodic_points(&m.c, n)?,
            Map::Kb(m) => classification::kb_periodic_points(m.k(), m.b(), n)?,
        };
        results.push(to_value(&r));
    }
    Ok(json!({ "map": map, "results": results }).into())
}

fn triple(t: ratperiod::MixedFamilyTriple) -> Outcome {
    let meet = t.intersection()?;
    let mut v = to_value(&t);
    v["quadratic"] = to_value(&t.quadratic());
    v["kb"] = to_value(&t.kb());
    v["intersection"] = to_value(&meet);
    v["verified"] = Value::Bool(t.verify());
    Ok(v.into())
}

fn quadruple(t: ratperiod::KbPairQuadruple) -> Outcome {
    let meet = t.intersection()?;
    let mut v = to_value(&t);
    v["map1"] = to_value(&t.map1());
    v["map2"] = to_value(&t.map2());
    v["intersection"] = to_value(&meet);
    v["verified"] = Value::Bool(t.verify());
    Ok(v.into())
}

/// Free parameter of the mixed families: `--q`, or `--m` when the
/// kz + b/z map is on a 4-cycle.
fn param(a: &FamilyArgs, kind: &str) -> std::result::Result<Rational, Failure> {
    match (&a.q, &a.m) {
        (Some(_), Some(_)) => Err(Failure::Usage("give only one of --q and --m".into())),
        (Some(v), None) | (None, Some(v)) => Ok(v.clone()),
        (None, None) => Err(missing("q", kind)),
    }
}

fn family(a: &FamilyArgs) -> Outcome {
    use FamilyKind::*;
    let name = a
        .kind
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let k = name.as_str();
    match a.kind {
        Mixed1 => triple(mixed_family_fixed(&need(&a.p, "p", k)?, need(&a.n, "n", k)?, &param(a, k)?)?),
        Mixed2 => triple(mixed_family_period2(&need(&a.p, "p", k)?, need(&a.n, "n", k)?, &param(a, k)?)?),
        Mixed3 => triple(mixed_family_period3(
            &need(&a.tau, "tau", k)?,
            need(&a.i, "i", k)?,
            need(&a.n, "n", k)?,
            &param(a, k)?,
        )?),
        Int2 => triple(intersection2_family_mixed(&need(&a.p, "p", k)?, need(&a.sign, "sign", k)?)?),
        Int2Period3 => triple(intersection2_family_period3(
            &need(&a.tau, "tau", k)?,
            need(&a.i, "i", k)?,
            need(&a.j, "j", k)?,
            need(&a.sign, "sign", k)?,
        )?),
        Kbpair => quadruple(kb_pair_family(
            need(&a.row, "row", k)?,
            &need(&a.p, "p", k)?,
            &need(&a.s1, "s1", k)?,
            &need(&a.s2, "s2", k)?,
        )?),
        Kbkb => quadruple(intersection2_family_kbkb(
            need(&a.row, "row", k)?,
            &need(&a.p, "p", k)?,
            &need(&a.s1, "s1", k)?,
            &need(&a.s2, "s2", k)?,
        )?),
        Period3 => {
            let f = classification::quad_family_period3(&need(&a.tau, "tau", k)?)?;
            let mut v = to_value(&f);
            v["map"] = to_value(&Map::quadratic(f.c.clone()));
            Ok(v.into())
        }
        Period4 => {
            let f = classification::kb_family_period4(&need(&a.m, "m", k)?)?;
            let mut v = to_value(&f);
            v["map"] = to_value(&f.map());
            Ok(v.into())
        }
    }
}

fn intersect(map1: &Map, map2: &Map, point: &Rational) -> Outcome {
    let meet = orbit_intersection(map1, map2, point)?;
    Ok(json!({
        "map1": map1,
        "map2": map2,
        "point": point,
        "cycle1": map1.cycle_of(point, DEFAULT_MAX_STEPS),
        "cycle2": map2.cycle_of(point, DEFAULT_MAX_STEPS),
        "intersection": meet,
    })
    .into())
}

fn shared(q: &Rational) -> Outcome {
    let entries: Vec<Value> = shared_quadratic_maps(q)
        .iter()
        .map(|e| {
            let mut v = to_value(e);
            v["map"] = to_value(&Map::quadratic(e.c.clone()));
            v
        })
        .collect();
    Ok(json!({ "q": q, "count": entries.len(), "entries": entries }).into())
}

fn simul(p: &Rational, q: &Rational) -> Outcome {
    let maps = simultaneous_point_maps(p, q)?;
    Ok(json!({ "p": p, "q": q, "maps": maps }).into())
}

fn scan(a: &ScanArgs, cfg: &Config) -> Outcome {
    let workers = a.workers.or(cfg.workers).unwrap_or(1);
    let method = match a.method {
        MethodArg::Dynatomic => Method::Dynatomic,
        MethodArg::Orbit => Method::Orbit,
    };
    let opts = ScanOptions { workers, method };
    let h_p = a.height_p.or(cfg.h_p).unwrap_or(100);
    let report = match a.kind {
        ScanKindArg::Quadratic => {
            let periods = a.periods.clone().or_else(|| cfg.periods.clone()).unwrap_or_else(|| vec![4]);
            scan_quadratic_conjecture(a.height_c.or(cfg.h_c).unwrap_or(20), h_p, &periods, opts)?
        }
        ScanKindArg::Kb => {
            let periods = a.periods.clone().or_else(|| cfg.periods.clone()).unwrap_or_else(|| vec![3]);
            let h_k = a.height_k.or(cfg.h_k).unwrap_or(10);
            let h_b = a.height_b.or(cfg.h_b).unwrap_or(10);
            scan_kb_conjecture(h_k, h_b, h_p, &periods, opts)?
        }
        ScanKindArg::Intersection => {
            if a.periods.is_some() {
                return Err(Failure::Usage("--periods does not apply to --kind intersection".into()));
            }
            let h_p = a.height_p.or(cfg.h_p).unwrap_or(50);
            scan_intersection_bound(a.height.or(cfg.h).unwrap_or(8), h_p, opts)?
        }
    };
    let (header, rows) = report.csv_rows();
    Ok(Output {
        value: to_value(&report),
        csv: Some((header.into_iter().map(String::from).collect(), rows)),
    })
}

fn quartic(curve: &str, height: Option<u64>, workers: Option<usize>, cfg: &Config) -> Outcome {
    let c = match curve {
        "first" => QuarticCurve::first(),
        "second" => QuarticCurve::second(),
        "third" => QuarticCurve::third(),
        s => s.parse()?,
    };
    let h = height.or(cfg.quartic_h).unwrap_or(1000);
    let pts = quartic_rational_points(&c, h, workers.or(cfg.workers).unwrap_or(1));
    let rows = pts.affine.iter().map(|(t, y)| vec![t.to_string(), y.to_string()]).collect();
    Ok(Output {
        value: json!({
            "curve": c.to_string(),
            "height": h,
            "affine": pts.affine,
            "infinity": pts.infinity,
        }),
        csv: Some((vec!["t".into(), "y".into()], rows)),
    })
}

fn dispatch(cli: &Cli) -> Outcome {
    let cfg = match &cli.config {
        Some(path) => Config::load(path).map_err(Failure::Usage)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Orbit { map, point, max_steps } => orbit(map, point, *max_steps),
        Command::Period { map, point, max_steps } => period(map, point, *max_steps),
        Command::Dynatomic { map, n } => dynatomic(map, *n),
        Command::Classify { map, n } => classify(map, *n),
        Command::Family(a) => family(a),
        Command::Intersect { map1, map2, point } => intersect(map1, map2, point),
        Command::Shared { q } => shared(q),
        Command::Simul { p, q } => simul(p, q),
        Command::Scan(a) => scan(a, &cfg),
        Command::Quartic { curve, height, workers } => quartic(curve, *height, *workers, &cfg),
    }
}

/// Runs one invocation; `argv` excludes the program name. Returns the exit
/// code and the text to print (the error message on failure).
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("ratperiod")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok(out) => match render::render(&out.value, out.csv.as_ref(), cli.format) {
            Ok(text) => (EXIT_OK, text),
            Err(msg) => (EXIT_USAGE, msg),
        },
        Err(Failure::Usage(msg)) => (EXIT_USAGE, msg),
        Err(Failure::Domain(msg)) => (EXIT_DOMAIN, msg),
    }
}
