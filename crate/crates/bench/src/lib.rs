//! Benchmark support crate; see `benches/`.

use ratperiod::Map;

/// Maps used across the benchmarks.
pub fn sample_maps() -> Vec<Map> {
    ["quad:c=-29/16", "quad:c=-13/16", "kb:k=24/7,b=-300/7", "kb:k=4/3,b=-5/6"]
        .iter()
        .map(|s| s.parse().expect("valid map"))
        .collect()
}
