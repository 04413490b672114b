//! Plancherel–Pólya sampling norms, embedding constants, Favard constants and
//! the Landau–Kolmogorov–Stein inequality.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::norm::Exponent;
use crate::sampling::{BandlimitedFn, UniformSamples};
use crate::truncation::{outward, power_tail};

/// A windowed norm and how much the out-of-window samples could add.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteNorm {
    pub value: f64,
    /// The full norm lies in [value, value + slack]; infinite when the tail is not summable.
    pub slack: f64,
}

/// (h·Σ_k |f(kh)|^p)^{1/p} over the window, or the window maximum for p = ∞.
pub fn discrete_norm(s: &UniformSamples, p: Exponent) -> DiscreteNorm {
    let t = s.tail();
    match p {
        Exponent::Infinity => {
            let value = p.norm_weighted(s.values().iter().copied(), 1.0);
            DiscreteNorm { value, slack: (t.bound - value).max(0.0) }
        }
        Exponent::Finite(pp) => {
            let sum: f64 = s.values().iter().map(|v| v.abs().powf(pp)).sum();
            let value = (s.h() * sum).powf(1.0 / pp);
            let tail_sum = if t.bound == 0.0 {
                0.0
            } else if t.decay * pp > 1.0 {
                // Σ_{j≥0} (T·(r/(r+j))^d)^p on each side
                2.0 * t.bound.powf(pp) * t.scale.powf(t.decay * pp) * power_tail(t.scale, t.decay * pp)
            } else {
                f64::INFINITY
            };
            let upper = (s.h() * (sum + tail_sum)).powf(1.0 / pp);
            DiscreteNorm { value, slack: upper - value }
        }
    }
}

/// The three terms of ‖f‖_p ≤ sup_x (hΣ|f(x−kh)|^p)^{1/p} ≤ (1+hσ)‖f‖_p.
#[derive(Debug, Clone, PartialEq)]
pub struct PlancherelPolyaReport {
    pub p: Exponent,
    pub h: f64,
    pub norm: f64,
    pub middle: f64,
    pub upper: f64,
    pub lower_slack: f64,
    pub upper_slack: f64,
    /// Bound on the numerical error in the slacks (tails and quadrature).
    pub error_budget: f64,
    pub pass: bool,
}

/// 64 equally spaced shifts over one period [0, h).
pub fn default_shifts(h: f64) -> Vec<f64> {
    (0..64).map(|i| h * i as f64 / 64.0).collect()
}

const MAX_WINDOW: i64 = 1 << 18;

/// 5-point Gauss–Legendre nodes and weights on [−1, 1].
const GL5: [(f64, f64); 5] = [
    (0.0, 0.5688888888888889),
    (-0.5384693101056831, 0.4786286704993665),
    (0.5384693101056831, 0.4786286704993665),
    (-0.906_179_845_938_664, 0.2369268850561891),
    (0.906_179_845_938_664, 0.2369268850561891),
];

fn gauss_legendre(g: &(impl Fn(f64) -> f64 + Sync), a: f64, cells: usize, width: f64) -> f64 {
    const CHUNK: usize = 4096;
    let chunks = cells.div_ceil(CHUNK);
    let partial: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut s = 0.0;
            for i in c * CHUNK..((c + 1) * CHUNK).min(cells) {
                let mid = a + (i as f64 + 0.5) * width;
                for (x, w) in GL5 {
                    s += w * g(mid + 0.5 * width * x);
                }
            }
            s * 0.5 * width
        })
        .collect();
    partial.iter().sum()
}

/// Check the Plancherel–Pólya sandwich for f at step h over the given shifts.
///
/// For p < ∞ the decay certificate of `f` bounds both the integral tail beyond
/// the window and the sample tail beyond |k| ≤ N. For p = ∞ the sup norm is
/// taken over the same point set as the middle term.
pub fn plancherel_polya_check(f: &BandlimitedFn, h: f64, p: Exponent, shifts: &[f64]) -> Result<PlancherelPolyaReport> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(domain(format!("step h must be finite and > 0, got {h}")));
    }
    if shifts.is_empty() {
        return Err(domain("need at least one shift"));
    }
    let sigma = f.sigma();
    let factor = 1.0 + h * sigma;
    let (norm, middle, error_budget) = match p {
        Exponent::Infinity => {
            let n = ((256.0 / sigma) / h).ceil() as i64 + 64;
            let sups: Vec<f64> = shifts
                .par_iter()
                .map(|&x| (-n..=n).map(|k| f.eval(x - k as f64 * h).abs()).fold(0.0, f64::max))
                .collect();
            let m = sups.iter().copied().fold(0.0, f64::max);
            (m, m, 0.0)
        }
        Exponent::Finite(pp) => {
            let d = f.decay().ok_or_else(|| domain("p < ∞ needs a decay certificate for f"))?;
            let q = d.power * pp;
            if q <= 1.0 {
                return Err(domain(format!("f is not certified to lie in L^{pp}: decay power {}", d.power)));
            }
            let cp = d.scale.powf(pp);
            // beyond |k| > N: |x − kh| ≥ (|k| − 1)h for x ∈ [0, h)
            let sample_tail = |n: i64| 2.0 * h * cp * h.powf(-q) * power_tail(n as f64, q);
            let integral_tail = |l: f64| 2.0 * cp * l.powf(1.0 - q) / (q - 1.0);
            let target = 1e-8 * f.sup_bound().powf(pp) / sigma;
            let mut n: i64 = 64;
            while n < MAX_WINDOW && sample_tail(n) + integral_tail(n as f64 * h) > target {
                n *= 2;
            }
            let l = n as f64 * h;
            let g = |x: f64| {
                let v = f.eval(x).abs();
                if pp == 1.0 {
                    v
                } else if pp == 2.0 {
                    v * v
                } else {
                    v.powf(pp)
                }
            };
            let width = h.min(PI / sigma) / 2.0;
            let cells = (2.0 * l / width).ceil() as usize;
            let width = 2.0 * l / cells as f64;
            let fine = gauss_legendre(&g, -l, cells, width);
            let coarse = gauss_legendre(&g, -l, cells.div_ceil(2), 2.0 * l / cells.div_ceil(2) as f64);
            let quad_err = (fine - coarse).abs();
            let sums: Vec<f64> = shifts
                .par_iter()
                .map(|&x| h * outward(0, -n, n).map(|k| g(x - k as f64 * h)).sum::<f64>())
                .collect();
            let mid_pow = sums.iter().copied().fold(0.0, f64::max);
            let norm_pow = fine;
            let budget_pow = quad_err + integral_tail(l) + sample_tail(n);
            let norm = norm_pow.powf(1.0 / pp);
            let middle = mid_pow.powf(1.0 / pp);
            // first-order propagation of the p-th power error through x^{1/p}
            let base = norm_pow.min(mid_pow).max(f64::MIN_POSITIVE);
            let budget = budget_pow / pp * base.powf(1.0 / pp - 1.0) * factor;
            (norm, middle, budget)
        }
    };
    let upper = factor * norm;
    let lower_slack = middle - norm;
    let upper_slack = upper - middle;
    let pass = lower_slack >= -error_budget && upper_slack >= -error_budget;
    Ok(PlancherelPolyaReport {
        p,
        h,
        norm,
        middle,
        upper,
        lower_slack,
        upper_slack,
        error_budget,
        pass,
    })
}

/// h^{1/q − 1/p}(1 + hσ): constant of the embedding B^p_σ ⊂ B^q_σ.
pub fn embedding_constant(p: Exponent, q: Exponent, h: f64, sigma: f64) -> Result<f64> {
    if p.reciprocal() < q.reciprocal() {
        return Err(domain(format!("embedding needs p ≤ q, got p = {p}, q = {q}")));
    }
    if !(h > 0.0 && sigma > 0.0) {
        return Err(domain("h and σ must be > 0"));
    }
    Ok(h.powf(q.reciprocal() - p.reciprocal()) * (1.0 + h * sigma))
}

/// K_j = (4/π)·Σ_{r≥0} (−1)^{r(j+1)}/(2r+1)^{j+1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FavardConstant {
    pub j: u32,
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the error of `value` from the tail correction.
    pub tail: f64,
}

const FAVARD_MAX_TERMS: usize = 1 << 24;

/// n ↦ (∫ₙ^∞ g, g′(n), g‴(n)).
type TailFn = dyn Fn(f64) -> (f64, f64, f64);

/// Favard constant K_j to within `tol`.
///
/// Explicit terms followed by an Euler–Maclaurin tail with the B₂ and B₄
/// corrections; the remainder is at most |g‴(n)|/720 for the summand g (or
/// for the pair (4q+1)^{−s} − (4q+3)^{−s} when j is even and the series alternates).
pub fn favard_constant(j: u32, tol: f64) -> Result<FavardConstant> {
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be > 0, got {tol}")));
    }
    let s = (j + 1) as f64;
    let alternating = (j + 1) % 2 == 1;
    let sc = 4.0 / PI;
    // pair-or-term function, its integral tail and derivatives at n
    let (g, tail_fn): (Box<dyn Fn(f64) -> f64>, Box<TailFn>) = if alternating {
        (
            Box::new(move |x: f64| (4.0 * x + 1.0).powf(-s) - (4.0 * x + 3.0).powf(-s)),
            Box::new(move |n: f64| {
                let (a, b) = (4.0 * n + 1.0, 4.0 * n + 3.0);
                let integral = if s == 1.0 { 0.25 * (b / a).ln() } else { (a.powf(1.0 - s) - b.powf(1.0 - s)) / (4.0 * (s - 1.0)) };
                let d1 = -4.0 * s * (a.powf(-s - 1.0) - b.powf(-s - 1.0));
                let d3 = -64.0 * s * (s + 1.0) * (s + 2.0) * (a.powf(-s - 3.0) - b.powf(-s - 3.0));
                (integral, d1, d3)
            }),
        )
    } else {
        (
            Box::new(move |x: f64| (2.0 * x + 1.0).powf(-s)),
            Box::new(move |n: f64| {
                let a = 2.0 * n + 1.0;
                let integral = a.powf(1.0 - s) / (2.0 * (s - 1.0));
                let d1 = -2.0 * s * a.powf(-s - 1.0);
                let d3 = -8.0 * s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0);
                (integral, d1, d3)
            }),
        )
    };
    let remainder = |n: usize| tail_fn(n as f64).2.abs() / 720.0;
    let mut n = 8usize;
    while sc * remainder(n) > tol * 0.5 && n < FAVARD_MAX_TERMS {
        n *= 2;
    }
    // explicit sum from the smallest terms upward
    let mut sum = 0.0;
    for q in (0..n).rev() {
        sum += g(q as f64);
    }
    let (integral, d1, d3) = tail_fn(n as f64);
    let tail_est = integral + g(n as f64) / 2.0 - d1 / 12.0 + d3 / 720.0;
    let terms_used = if alternating { 2 * n } else { n };
    Ok(FavardConstant {
        j,
        value: sc * (sum + tail_est),
        terms_used,
        tail: sc * remainder(n) + 4.0 * f64::EPSILON * sc * sum.abs(),
    })
}

/// C_{k,n} = K_{n−k}^n / K_n^{n−k}.
pub fn lks_constant(k: u32, n: u32) -> Result<f64> {
    if !(0 < k && k < n) {
        return Err(domain(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let a = favard_constant(n - k, 1e-15)?.value;
    let b = favard_constant(n, 1e-15)?.value;
    Ok(a.powi(n as i32) / b.powi((n - k) as i32))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LksReport {
    pub k: u32,
    pub n: u32,
    pub constant: f64,
    /// ‖D^k f‖^n
    pub lhs: f64,
    /// C_{k,n}·‖D^n f‖^k·‖f‖^{n−k}
    pub rhs: f64,
    pub pass: bool,
}

impl LksReport {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Check ‖D^k f‖^n ≤ C_{k,n}·‖D^n f‖^k·‖f‖^{n−k} for the norm triple (‖f‖, ‖D^k f‖, ‖D^n f‖).
pub fn lks_check(norms: (f64, f64, f64), k: u32, n: u32) -> Result<LksReport> {
    let constant = lks_constant(k, n)?;
    let (f, dk, dn) = norms;
    if !(f >= 0.0 && dk >= 0.0 && dn >= 0.0) {
        return Err(domain("norms must be ≥ 0"));
    }
    let lhs = dk.powi(n as i32);
    let rhs = constant * dn.powi(k as i32) * f.powi((n - k) as i32);
    Ok(LksReport { k, n, constant, lhs, rhs, pass: lhs <= rhs * (1.0 + 1e-12) })
}
