//! Fixtures shared by the benchmarks.

use bandlimit::SeqWindow;

/// Deterministic unit-norm window of length `len` starting at `n0`.
pub fn unit_window(n0: i64, len: usize) -> SeqWindow {
    // cheap LCG: fixtures only need to be fixed, not random-looking
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let v: Vec<f64> = (0..len)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    SeqWindow::new(n0, v.iter().map(|x| x / n).collect(), 0.0).expect("finite window")
}
