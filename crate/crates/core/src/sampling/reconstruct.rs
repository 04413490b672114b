use std::f64::consts::PI;

use num_complex::Complex64;

use super::samples::UniformSamples;
use crate::error::{check_finite, domain, Error, Result};
use crate::sinc::{sinc_complex, sinc_deriv};
use crate::truncation::{outward, power_tail, Estimate};

/// Terms summed explicitly in the rigorous tail before switching to an integral bound.
const TAIL_EXPLICIT: usize = 4096;

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Bound on |sinc^{(m)}(y)| for |y| ≥ d from the Leibniz expansion of sin(πy)·(πy)^{−1},
/// capped by Bernstein's π^m.
fn kernel_bound(m: u32, d: f64) -> f64 {
    let mf = factorial(m);
    let mut s = 0.0;
    for i in 0..=m {
        s += mf / factorial(i) * PI.powi(i as i32 - 1) * d.powi(-((m - i + 1) as i32));
    }
    s.min(PI.powi(m as i32))
}

/// x-grid position u = x/h, snapped onto an integer node when within rounding of one.
fn node_position(x: f64, h: f64) -> f64 {
    let u = x / h;
    let r = u.round();
    if (u - r).abs() <= 4.0 * f64::EPSILON * u.abs().max(1.0) {
        r
    } else {
        u
    }
}

/// Whittaker–Kotel'nikov–Shannon series for f^{(m)}(x): h^{−m}·Σ_k f(kh)·sinc^{(m)}(x/h − k).
///
/// The tail is bounded rigorously when the sample tail decays (or vanishes).
/// With only a uniform bound the series is refused at the critical rate
/// h = π/σ; under strict oversampling the tail is estimated by Abel summation
/// of the alternating leading term and `rigorous` is false.
pub fn wks_eval(s: &UniformSamples, m: u32, x: f64, tol: f64) -> Result<Estimate> {
    check_finite("x", x)?;
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be > 0, got {tol}")));
    }
    let h = s.h();
    let nyquist = PI / h;
    if s.sigma() > nyquist * (1.0 + 1e-12) {
        return Err(domain(format!(
            "undersampled: step {h} exceeds π/σ = {}",
            PI / s.sigma()
        )));
    }
    let u = node_position(x, h);
    let (lo, hi) = (s.k_min(), s.k_max());
    if u < lo as f64 || u > hi as f64 {
        return Err(domain(format!("x = {x} lies outside the sample window [{}, {}]", lo as f64 * h, hi as f64 * h)));
    }
    let vals = s.values();
    let mut sum = 0.0;
    let mut terms = 0;
    for k in outward(u.round() as i64, lo, hi) {
        sum += vals[(k - lo) as usize] * sinc_deriv(m, u - k as f64);
        terms += 1;
    }
    let scale = h.powi(-(m as i32));
    let d_right = hi as f64 + 1.0 - u;
    let d_left = u - lo as f64 + 1.0;
    let tail = s.tail();
    let (tail_bound, rigorous) = if tail.bound == 0.0 {
        (0.0, true)
    } else if tail.decay > 0.0 {
        (scale * decaying_tail(m, tail.bound, tail.decay, tail.scale, d_right, d_left), true)
    } else if s.sigma() < nyquist * (1.0 - 1e-9) {
        (scale * abel_tail_estimate(m, vals, tail.bound, d_right, d_left), false)
    } else {
        return Err(Error::ReconstructionUnsound(format!(
            "samples at the critical rate h = π/σ with only a uniform tail bound {} do not determine f; \
             supply a decaying tail or oversample",
            tail.bound
        )));
    };
    if tail_bound > tol {
        return Err(Error::ToleranceUnachievable { requested: tol, achievable: tail_bound });
    }
    Ok(Estimate { value: scale * sum, tail_bound, terms, rigorous })
}

/// Σ over both sides of T·(r/(r+j))^p·KB(m, d + j).
fn decaying_tail(m: u32, t: f64, p: f64, r: f64, d_right: f64, d_left: f64) -> f64 {
    let side = |d0: f64| {
        let mut s = 0.0;
        for j in 0..TAIL_EXPLICIT {
            let jf = j as f64;
            s += (r / (r + jf)).powf(p) * kernel_bound(m, d0 + jf);
        }
        // remainder: (r+j)^{−p}(d0+j)^{−q} ≤ (min(r,d0)+j)^{−(p+q)}, q = m−i+1 ≥ 1
        let a = r.min(d0) + TAIL_EXPLICIT as f64;
        let mf = factorial(m);
        let mut rem = 0.0;
        for i in 0..=m {
            let q = (m - i + 1) as f64;
            rem += mf / factorial(i) * PI.powi(i as i32 - 1) * power_tail(a, p + q);
        }
        s + r.powf(p) * rem
    };
    t * (side(d_right) + side(d_left))
}

/// Leading kernel term is (−1)^k π^{m−1} sin(πu + mπ/2)/(u − k): its tail is bounded by
/// Abel summation with the partial sums of (−1)^k f(kh) estimated from the window.
/// Lower-order terms decay like |u − k|^{−2} and are bounded absolutely.
fn abel_tail_estimate(m: u32, vals: &[f64], t: f64, d_right: f64, d_left: f64) -> f64 {
    let (mut p, mut pmax, mut pmin) = (0.0f64, 0.0f64, 0.0f64);
    for (i, v) in vals.iter().enumerate() {
        p += if i % 2 == 0 { *v } else { -*v };
        pmax = pmax.max(p);
        pmin = pmin.min(p);
    }
    let g = (pmax - pmin).max(t);
    let mut est = PI.powi(m as i32 - 1) * g * (1.0 / d_right + 1.0 / d_left);
    let mf = factorial(m);
    for i in 0..m {
        let q = (m - i + 1) as f64;
        est += t * mf / factorial(i) * PI.powi(i as i32 - 1) * (power_tail(d_right, q) + power_tail(d_left, q));
    }
    est
}

/// Complex value with a truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEstimate {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Valiron–Tschakaloff series at complex z from samples at kπ/σ (σ = π/h):
/// z·f′(0)·sinc(w) + f(0)·sinc(w) + Σ_{k≠0} f(kh)·(w/k)·sinc(w − k), w = z/h.
///
/// Bounded samples suffice; the tail is T·|w|·cosh(π Im w)/π·Σ_{out} 1/(|k|·|w − k|).
pub fn valiron_tschakaloff_eval(s: &UniformSamples, f0: f64, df0: f64, z: Complex64) -> Result<ComplexEstimate> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain(format!("z must be finite, got {z}")));
    }
    check_finite("f(0)", f0)?;
    check_finite("f'(0)", df0)?;
    let h = s.h();
    let (lo, hi) = (s.k_min(), s.k_max());
    if lo > 0 || hi < 0 {
        return Err(domain("sample window must contain k = 0"));
    }
    let w = Complex64::new(node_position(z.re, h), z.im / h);
    let aw = w.norm();
    let sw = sinc_complex(w);
    let mut sum = z * df0 * sw + f0 * sw;
    let vals = s.values();
    let c = w.re.round().clamp(lo as f64, hi as f64) as i64;
    let mut terms = 1;
    for k in outward(c, lo, hi) {
        if k == 0 {
            continue;
        }
        let kf = k as f64;
        sum += vals[(k - lo) as usize] * (w / kf) * sinc_complex(w - kf);
        terms += 1;
    }
    let t = s.tail().bound;
    let tail_bound = if t == 0.0 {
        0.0
    } else {
        let (a_right, a_left) = (hi as f64 + 1.0 - aw, -(lo as f64) + 1.0 - aw);
        if a_right <= 0.0 || a_left <= 0.0 {
            return Err(domain(format!("|z| = {} reaches past the sample window", z.norm())));
        }
        // 1/(|k|·|w−k|) ≤ 1/(|k| − |w|)² beyond the window
        let side = power_tail(a_right, 2.0) + power_tail(a_left, 2.0);
        t * aw * (PI * w.im.abs()).cosh() / PI * side
    };
    Ok(ComplexEstimate { value: sum, tail_bound, terms })
}

/// Riesz's formula for P′(x), P a trigonometric polynomial of order ≤ N:
/// (1/4N)·Σ_{k=1}^{2N} (−1)^{k+1}·P(x + x_k)/sin²(x_k/2), x_k = (2k−1)π/(2N).
pub fn riesz_trig_derivative(p: impl Fn(f64) -> f64, n: usize, x: f64) -> Result<f64> {
    if n < 1 {
        return Err(domain("Riesz formula needs N ≥ 1"));
    }
    check_finite("x", x)?;
    let nf = n as f64;
    let mut sum = 0.0;
    // k and 2N+1−k share sin²(x_k/2) and carry opposite signs
    for k in 1..=n {
        let xk = (2 * k - 1) as f64 * PI / (2.0 * nf);
        let xm = (2 * (2 * n + 1 - k) - 1) as f64 * PI / (2.0 * nf);
        let s2 = (xk / 2.0).sin().powi(2);
        let pair = (p(x + xk) - p(x + xm)) / s2;
        sum += if k % 2 == 1 { pair } else { -pair };
    }
    Ok(sum / (4.0 * nf))
}

/// |(λ/√2π)·Σ_{|k|≤K} f(t + λk) − Σ_{|k|≤K} f̂(2πk/λ)·e^{2πikt/λ}|, with f̂ = (2π)^{−1/2}∫f e^{−ixξ}.
///
/// The left sum is centred on the lattice point nearest 0, so t and t + λ give the same residual.
pub fn poisson_residual(
    f: impl Fn(f64) -> f64,
    fhat: impl Fn(f64) -> Complex64,
    lambda: f64,
    t: f64,
    half_width: usize,
) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(format!("λ must be finite and > 0, got {lambda}")));
    }
    check_finite("t", t)?;
    let kk = half_width as i64;
    let n = (t / lambda).round();
    let t0 = t - n * lambda;
    let mut left = f(t0);
    for k in 1..=kk {
        let kf = k as f64;
        left += f(t0 + lambda * kf) + f(t0 - lambda * kf);
    }
    left *= lambda / (2.0 * PI).sqrt();
    let mut right = fhat(0.0);
    for k in 1..=kk {
        let xi = 2.0 * PI * k as f64 / lambda;
        let ph = xi * t0;
        let e = Complex64::new(ph.cos(), ph.sin());
        right += fhat(xi) * e + fhat(-xi) * e.conj();
    }
    Ok((Complex64::new(left, 0.0) - right).norm())
}
