//! Proof-labeling schemes for interval, chordal, circular-arc, trapezoid and
//! permutation graphs, together with a synchronous one-round simulator,
//! brute-force membership oracles and a fuzzing harness.

pub mod campaign;
pub mod enumerate;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod models;
pub mod oracles;
pub mod runtime;
pub mod schemes;

pub use graph::{Graph, GraphError};
pub use runtime::{Certificate, NodeView, RunReport, Scheme, Verdict};

/// `ceil(log2(x))` for `x >= 1`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::ceil_log2;

    #[test]
    fn ceil_log2_small_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 36), 36);
        assert_eq!(ceil_log2((1 << 36) + 1), 37);
    }
}
