//! Normalized sinc, its derivatives, and the Boas coefficient families.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_finite, domain, Error, Result};
use crate::truncation::MAX_HALF_WIDTH;

/// Below this radius derivatives come from the differentiated Taylor series.
pub const SERIES_RADIUS: f64 = 0.05;
const SERIES_TERMS: u32 = 12;

/// sin(πx)/(πx), with the removable singularity filled.
pub fn sinc(x: f64) -> Result<f64> {
    check_finite("x", x)?;
    Ok(sinc_f(x))
}

/// The m-th derivative of the normalized sinc.
pub fn sinc_derivative(m: i32, x: f64) -> Result<f64> {
    if m < 0 {
        return Err(domain(format!("derivative order must be ≥ 0, got {m}")));
    }
    check_finite("x", x)?;
    Ok(sinc_deriv(m as u32, x))
}

pub(crate) fn sinc_f(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    // exact zeros keep interpolation formulas exact at the nodes
    if x.fract() == 0.0 {
        return 0.0;
    }
    if x.abs() < SERIES_RADIUS {
        return sinc_series(0, x);
    }
    let y = PI * x;
    y.sin() / y
}

pub(crate) fn sinc_deriv(m: u32, x: f64) -> f64 {
    if m == 0 {
        return sinc_f(x);
    }
    let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let v = if ax < SERIES_RADIUS {
        sinc_series(m, ax)
    } else {
        sinc_closed(m, ax)
    };
    sign * v
}

/// Termwise derivative of Σ_j (−1)^j (πx)^{2j}/(2j+1)!.
pub fn sinc_series(m: u32, x: f64) -> f64 {
    let j0 = m.div_ceil(2);
    let mut sum = 0.0;
    for j in (j0..j0 + SERIES_TERMS).rev() {
        let p = 2 * j - m;
        // π^{2j}/((2j+1)(2j−m)!)
        let mut c = PI.powi(2 * j as i32) / (2 * j + 1) as f64;
        for i in 2..=p {
            c /= i as f64;
        }
        let t = c * x.powi(p as i32);
        sum += if j % 2 == 0 { t } else { -t };
    }
    sum
}

/// Closed form (−1)^m m!/(π x^{m+1}) · [sin πx·Σ_{ν≤m/2}(−1)^ν(πx)^{2ν}/(2ν)! − cos πx·Σ_{ν≤(m−1)/2}(−1)^ν(πx)^{2ν+1}/(2ν+1)!].
///
/// For small πx the bracket is a near-total cancellation, so it is evaluated
/// through the equivalent remainder form −Im(e^{iy}·Σ_{j>m}(−iy)^j/j!), y = πx.
pub fn sinc_closed(m: u32, x: f64) -> f64 {
    let y = PI * x;
    let bracket = if y.abs() < m as f64 + 2.0 {
        closed_bracket_remainder(m, y)
    } else {
        closed_bracket_direct(m, y)
    };
    let mut fact = 1.0;
    for i in 2..=m {
        fact *= i as f64;
    }
    let s = if m % 2 == 0 { 1.0 } else { -1.0 };
    s * fact * bracket / (PI * x.powi(m as i32 + 1))
}

fn closed_bracket_direct(m: u32, y: f64) -> f64 {
    let (mut even, mut odd) = (0.0, 0.0);
    let mut term = 1.0; // y^j/j!
    for j in 0..=m {
        if j > 0 {
            term *= y / j as f64;
        }
        let sgn = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            even += sgn * term;
        } else {
            odd += sgn * term;
        }
    }
    y.sin() * even - y.cos() * odd
}

fn closed_bracket_remainder(m: u32, y: f64) -> f64 {
    // w^j/j! with w = −iy, starting at j = m + 1
    let w = Complex64::new(0.0, -y);
    let mut term = Complex64::new(1.0, 0.0);
    for j in 1..=m + 1 {
        term *= w / j as f64;
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut j = m + 1;
    loop {
        sum += term;
        j += 1;
        term *= w / j as f64;
        if term.norm() <= 1e-18 * sum.norm() || j > m + 400 {
            break;
        }
    }
    -(Complex64::new(y.cos(), y.sin()) * sum).im
}

/// sin(πz)/(πz) for complex z, with the same series switch as the real case.
pub fn sinc_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(sinc_f(z.re), 0.0);
    }
    if z.norm() < SERIES_RADIUS {
        let w2 = (z * PI) * (z * PI);
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for j in 1..SERIES_TERMS {
            term *= -w2 / ((2 * j) as f64 * (2 * j + 1) as f64);
            sum += term;
        }
        return sum;
    }
    let w = z * PI;
    w.sin() / w
}

/// Which coefficient family: A_{m,k} (odd orders, half-integer nodes) or B_{m,k} (even orders).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// A_{m,k} (odd) or B_{m,k} (even).
pub fn boas_coefficient(parity: Parity, m: i32, k: i64) -> Result<f64> {
    if m < 1 {
        return Err(domain(format!("coefficient order m must be ≥ 1, got {m}")));
    }
    Ok(coef(parity, m as u32, k))
}

pub(crate) fn coef(parity: Parity, m: u32, k: i64) -> f64 {
    match parity {
        Parity::Odd => {
            let u = k as f64 - 0.5;
            let pu = PI * u;
            let mut sum = 0.0;
            let mut term = 1.0; // (πu)^{2j}/(2j)!
            for j in 0..m {
                if j > 0 {
                    term *= pu * pu / ((2 * j - 1) as f64 * (2 * j) as f64);
                }
                sum += if j % 2 == 0 { term } else { -term };
            }
            factorial(2 * m - 1) * sum / (PI * u.powi(2 * m as i32))
        }
        Parity::Even => {
            if k == 0 {
                let s = if m % 2 == 1 { 1.0 } else { -1.0 };
                return s * PI.powi(2 * m as i32) / (2 * m + 1) as f64;
            }
            let kf = k as f64;
            let pk = PI * kf;
            let mut sum = 0.0;
            let mut term = pk; // (πk)^{2j+1}/(2j+1)!
            for j in 0..m {
                if j > 0 {
                    term *= pk * pk / ((2 * j) as f64 * (2 * j + 1) as f64);
                }
                sum += if j % 2 == 0 { term } else { -term };
            }
            factorial(2 * m) * sum / (PI * kf.powi(2 * m as i32 + 1))
        }
    }
}

/// Bound on Σ over the indices outside a half-width-K table of |c_k|/|node_k|^extra,
/// where node_k is k − 1/2 (odd) or k (even).
///
/// Majorants: |A_{m,k}| ≤ (2m−1)!/π·Σ_{j<m} π^{2j}/(2j)!·|u|^{2j−2m} and
/// |B_{m,k}| ≤ (2m)!·Σ_{j<m} π^{2j}/(2j+1)!·|k|^{2j−2m}; each power is summed
/// by the midpoint integral comparison Σ_{n>K} g(n) ≤ ∫_{K+1/2}^∞ g.
pub fn coefficient_tail(parity: Parity, m: u32, half_width: usize, extra: u32) -> f64 {
    let kk = half_width as f64;
    let mut total = 0.0;
    let mut term = 1.0;
    for j in 0..m {
        let q = (2 * (m - j) + extra) as f64;
        match parity {
            Parity::Odd => {
                if j > 0 {
                    term *= PI * PI / ((2 * j - 1) as f64 * (2 * j) as f64);
                }
                // nodes u = K+1/2, K+3/2, …: Σ u^{-q} ≤ ∫_K^∞
                total += term * kk.powf(1.0 - q) / (q - 1.0);
            }
            Parity::Even => {
                if j == 0 {
                    term = 1.0;
                } else {
                    term *= PI * PI / ((2 * j) as f64 * (2 * j + 1) as f64);
                }
                total += term * (kk + 0.5).powf(1.0 - q) / (q - 1.0);
            }
        }
    }
    match parity {
        Parity::Odd => 2.0 * factorial(2 * m - 1) / PI * total,
        Parity::Even => 2.0 * factorial(2 * m) * total,
    }
}

/// Smallest half-width K ≥ 1 with `coefficient_tail` ≤ tol.
pub(crate) fn half_width_for(parity: Parity, m: u32, extra: u32, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be > 0, got {tol}")));
    }
    let tail = |k: usize| coefficient_tail(parity, m, k, extra);
    if tail(1) <= tol {
        return Ok(1);
    }
    if tail(MAX_HALF_WIDTH) > tol {
        return Err(Error::Truncation { achievable: tail(MAX_HALF_WIDTH) });
    }
    let (mut lo, mut hi) = (1usize, 2usize);
    while tail(hi) > tol {
        lo = hi;
        hi = (hi * 2).min(MAX_HALF_WIDTH);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Boas coefficients over a symmetric window with a bound on the discarded tail.
///
/// Odd tables hold k ∈ [1−K, K] (K pairs k ↔ 1−k around 1/2); even tables
/// hold k ∈ [−K, K]. Both families are symmetric, so only one half is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    parity: Parity,
    m: u32,
    half_width: usize,
    // odd: c_{j+1} for j < K; even: c_j for j ≤ K
    half: Vec<f64>,
    tail: f64,
}

impl CoeffTable {
    pub fn with_half_width(parity: Parity, m: u32, half_width: usize) -> Result<Self> {
        if m < 1 {
            return Err(domain("coefficient order m must be ≥ 1"));
        }
        if half_width < 1 {
            return Err(domain("half-width must be ≥ 1"));
        }
        let half = match parity {
            Parity::Odd => (1..=half_width as i64).map(|k| coef(parity, m, k)).collect(),
            Parity::Even => (0..=half_width as i64).map(|k| coef(parity, m, k)).collect(),
        };
        Ok(CoeffTable {
            parity,
            m,
            half_width,
            half,
            tail: coefficient_tail(parity, m, half_width, 0),
        })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Bound on Σ_{k outside the table} |c_k|.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Inclusive index range covered.
    pub fn k_range(&self) -> (i64, i64) {
        let kk = self.half_width as i64;
        match self.parity {
            Parity::Odd => (1 - kk, kk),
            Parity::Even => (-kk, kk),
        }
    }

    pub fn len(&self) -> usize {
        match self.parity {
            Parity::Odd => 2 * self.half_width,
            Parity::Even => 2 * self.half_width + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: i64) -> Option<f64> {
        let (lo, hi) = self.k_range();
        if k < lo || k > hi {
            return None;
        }
        let idx = match self.parity {
            Parity::Odd => (if k >= 1 { k } else { 1 - k }) - 1,
            Parity::Even => k.abs(),
        };
        Some(self.half[idx as usize])
    }

    /// (k, c_k) in symmetric-outward order: 1, 0, 2, −1, … (odd) or 0, 1, −1, … (even).
    pub fn iter_outward(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let odd = self.parity == Parity::Odd;
        self.half.iter().enumerate().flat_map(move |(j, &c)| {
            let j = j as i64;
            let (a, b) = if odd { (j + 1, -j) } else { (j, -j) };
            let second = if !odd && j == 0 { None } else { Some((b, c)) };
            std::iter::once((a, c)).chain(second)
        })
    }

    /// Σ |c_k| over the table.
    pub fn abs_sum(&self) -> f64 {
        self.iter_outward().map(|(_, c)| c.abs()).sum()
    }

    /// π^{2m−1} (odd) or π^{2m} (even): the full absolute sum.
    pub fn total_abs(&self) -> f64 {
        match self.parity {
            Parity::Odd => PI.powi(2 * self.m as i32 - 1),
            Parity::Even => PI.powi(2 * self.m as i32),
        }
    }
}

/// Smallest table whose tail bound is at most `tol`.
pub fn coefficient_table(parity: Parity, m: i32, tol: f64) -> Result<CoeffTable> {
    if m < 1 {
        return Err(domain(format!("coefficient order m must be ≥ 1, got {m}")));
    }
    let kk = half_width_for(parity, m as u32, 0, tol)?;
    CoeffTable::with_half_width(parity, m as u32, kk)
}

/// |Σ_{|k|≤K} sinc^{(m)}(x − k)|, summed outward with ±k paired.
pub fn zero_sum_residual(m: i32, x: f64, half_width: usize) -> Result<f64> {
    if m < 1 {
        return Err(domain(format!("m must be ≥ 1, got {m}")));
    }
    if half_width < 1 {
        return Err(domain("K must be ≥ 1"));
    }
    check_finite("x", x)?;
    let m = m as u32;
    let mut sum = sinc_deriv(m, x);
    for k in 1..=half_width as i64 {
        let kf = k as f64;
        sum += sinc_deriv(m, x - kf) + sinc_deriv(m, x + kf);
    }
    Ok(sum.abs())
}
