//! Criterion benchmarks for the base-size pipeline live in `benches/`.

use subset_base::ActionSpec;

/// `(n, r)` pairs spanning the small, mid and large regimes.
pub const SAMPLE: [(u64, u64); 6] = [
    (18, 7),
    (40, 9),
    (120, 10),
    (500, 20),
    (2_000, 12),
    (10_000, 3),
];

pub fn symmetric(n: u64, r: u64) -> ActionSpec {
    ActionSpec::symmetric(n, r).expect("sample parameters lie in the domain")
}
