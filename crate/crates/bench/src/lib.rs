//! Inputs shared by the benchmarks.

use hooksum_core::LabelSet;

/// `{1..n}` for each `n` in `sizes`.
pub fn ranges(sizes: &[u32]) -> Vec<LabelSet> {
    sizes.iter().map(|&n| LabelSet::range(n)).collect()
}

/// Evenly spread labels `{1, 1+step, ..., 1+(n-1)*step}`.
pub fn spread(n: u32, step: u32) -> LabelSet {
    LabelSet::new((0..n).map(|k| 1 + k * step)).expect("positive distinct labels")
}
