/// How an infinite series is cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Smallest half-width whose rigorous tail bound is at most this value.
    Tolerance(f64),
    /// Fixed symmetric half-width.
    HalfWidth(usize),
}

impl From<f64> for Truncation {
    fn from(tol: f64) -> Self {
        Truncation::Tolerance(tol)
    }
}

/// A truncated series value together with a bound on what was cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub tail_bound: f64,
    /// Number of series terms actually summed.
    pub terms: usize,
    /// False when `tail_bound` is an a-posteriori estimate rather than a proven bound.
    pub rigorous: bool,
}

/// Upper limit on any half-width chosen from a tolerance.
pub const MAX_HALF_WIDTH: usize = 4_000_000;

/// Σ_{n ≥ 0} (a + n)^{-q} for a > 0, q > 1: first term plus midpoint-convexity integral.
pub(crate) fn power_tail(a: f64, q: f64) -> f64 {
    debug_assert!(a > 0.0 && q > 1.0);
    a.powf(-q) + (a + 0.5).powf(1.0 - q) / (q - 1.0)
}

/// Symmetric-outward order over the integers in `[lo, hi]` starting at `c`:
/// c, c+1, c−1, c+2, c−2, …
pub(crate) fn outward(c: i64, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let reach = (hi - c).max(c - lo).max(0);
    std::iter::once(c)
        .chain((1..=reach).flat_map(move |j| [c + j, c - j]))
        .filter(move |&k| k >= lo && k <= hi)
}
