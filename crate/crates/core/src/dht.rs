//! The discrete Hilbert transform H = πH̃ on ℓ², (Ha)_m = Σ_{n≠m} a_n/(m − n),
//! its isometry group e^{tH} in closed form, and the sampling and Boas
//! formulas specialized to that group (σ = π, sample spacing 1).
//!
//! Sequences are finite windows plus an ℓ² bound on everything the window
//! does not represent. Output windows of the group are centred at −round(t),
//! where e^{tH} moves the mass.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::boas::BoasStencil;
use crate::error::{check_finite, domain, Result};
use crate::group::{resolve_k, GroupInstance, LinearSpace};
use crate::sinc::sinc_f;
use crate::truncation::{outward, power_tail, Truncation};

/// Entries a_{n0}, …, a_{n0+len−1} of an ℓ² sequence.
///
/// When the interior is exact, `tail_l2` bounds the ℓ² mass outside the
/// window; otherwise it bounds the ℓ² distance between the window (padded
/// with zeros) and the sequence it stands for.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqWindow {
    n0: i64,
    values: Vec<f64>,
    tail_l2: f64,
    exact_interior: bool,
}

/// Largest default window expansion.
pub const MAX_EXPAND: usize = 100_000;

/// |t − round t| below this takes the exact integer branch.
pub const INTEGER_THRESHOLD: f64 = 1e-9;

impl SeqWindow {
    pub fn new(n0: i64, values: Vec<f64>, tail_l2: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("sequence window must hold at least one entry"));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(domain(format!("entry at n = {} is not finite: {v}", n0 + i as i64)));
        }
        if !(tail_l2 >= 0.0 && tail_l2.is_finite()) {
            return Err(domain(format!("tail_l2 must be finite and ≥ 0, got {tail_l2}")));
        }
        Ok(SeqWindow { n0, values, tail_l2, exact_interior: true })
    }

    /// The unit sequence e_n.
    pub fn unit(n: i64) -> Self {
        SeqWindow { n0: n, values: vec![1.0], tail_l2: 0.0, exact_interior: true }
    }

    pub fn zeros(n0: i64, len: usize) -> Self {
        SeqWindow { n0, values: vec![0.0; len.max(1)], tail_l2: 0.0, exact_interior: true }
    }

    fn computed(n0: i64, values: Vec<f64>, tail_l2: f64, exact_interior: bool) -> Self {
        SeqWindow { n0, values, tail_l2, exact_interior }
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last index.
    pub fn end(&self) -> i64 {
        self.n0 + self.values.len() as i64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_l2(&self) -> f64 {
        self.tail_l2
    }

    pub fn is_exact_interior(&self) -> bool {
        self.exact_interior
    }

    /// a_n, zero outside the window.
    pub fn get(&self, n: i64) -> f64 {
        if n >= self.n0 && n < self.end() {
            self.values[(n - self.n0) as usize]
        } else {
            0.0
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.n0 + i as i64, *v))
    }

    pub fn window_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// Interval containing the true ℓ² norm.
    pub fn norm_bounds(&self) -> (f64, f64) {
        let (w, t) = (self.window_norm(), self.tail_l2);
        if self.exact_interior {
            (w, w.hypot(t))
        } else {
            ((w - t).max(0.0), w + t)
        }
    }

    /// Entries over [lo, hi], zero-padded.
    pub fn range(&self, lo: i64, hi: i64) -> Vec<f64> {
        (lo..=hi).map(|n| self.get(n)).collect()
    }
}

impl LinearSpace for SeqWindow {
    fn zeros_like(&self) -> Self {
        SeqWindow::zeros(self.n0, self.len())
    }

    fn axpy(&mut self, a: f64, x: &Self) {
        let lo = self.n0.min(x.n0);
        let hi = self.end().max(x.end());
        if lo != self.n0 || hi != self.end() {
            let mut v = vec![0.0; (hi - lo) as usize];
            let off = (self.n0 - lo) as usize;
            v[off..off + self.len()].copy_from_slice(&self.values);
            self.values = v;
            self.n0 = lo;
        }
        let off = (x.n0 - self.n0) as usize;
        for (s, v) in self.values[off..off + x.len()].iter_mut().zip(&x.values) {
            *s += a * v;
        }
        self.tail_l2 += a.abs() * x.tail_l2;
        self.exact_interior &= x.exact_interior;
    }

    fn norm(&self) -> f64 {
        self.window_norm()
    }
}

/// sin(πt), accurate near the integers.
fn sin_pi(t: f64) -> f64 {
    let n = t.round();
    let s = (PI * (t - n)).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

fn side(x: f64) -> f64 {
    if x > 0.0 {
        power_tail(x, 2.0)
    } else {
        f64::INFINITY
    }
}

/// Σ_n |a_n|·(Σ_{m∉[lo,hi]} 1/(m − n + τ)²)^{1/2}: by Minkowski, a bound on the
/// ℓ² mass outside [lo, hi] of m ↦ Σ_n a_n/(m − n + τ), τ = shift + frac.
fn kernel_outside(a: &SeqWindow, shift: i64, frac: f64, lo: i64, hi: i64) -> f64 {
    a.iter()
        .filter(|(_, v)| *v != 0.0)
        .map(|(n, v)| {
            let right = (hi + 1 - n + shift) as f64 + frac;
            let left = (n - lo + 1 - shift) as f64 - frac;
            v.abs() * (side(right) + side(left)).sqrt()
        })
        .sum()
}

/// Integer part and remainder of t, remainder in [−1/2, 1/2].
fn split(t: f64) -> (i64, f64) {
    let n = t.round();
    (n as i64, t - n)
}

/// Ha over [lo, hi] from the window alone.
fn hilbert_entries(a: &SeqWindow, lo: i64, hi: i64) -> Vec<f64> {
    (lo..=hi)
        .into_par_iter()
        .map(|m| {
            a.iter()
                .filter(|&(n, _)| n != m)
                .map(|(n, v)| v / (m - n) as f64)
                .sum()
        })
        .collect()
}

/// (Ha)_m over the window grown by `expand` on each side.
///
/// The tail combines the window's own leakage (Minkowski over Σ 1/(m−n)²)
/// and π·tail_l2 for the unrepresented part of the input.
pub fn hilbert_apply(a: &SeqWindow, expand: usize) -> SeqWindow {
    let e = expand as i64;
    let (lo, hi) = (a.n0 - e, a.end() - 1 + e);
    let values = hilbert_entries(a, lo, hi);
    let tail = kernel_outside(a, 0, 0.0, lo, hi) + PI * a.tail_l2;
    SeqWindow::computed(lo, values, tail, a.exact_interior && a.tail_l2 == 0.0)
}

/// Output range of e^{tH} for window `a`: shifted by −round(t), grown by `expand`.
pub fn group_range(t: f64, a: &SeqWindow, expand: usize) -> (i64, i64) {
    let (n, _) = split(t);
    let e = expand as i64;
    (a.n0 - n - e, a.end() - 1 - n + e)
}

/// (e^{tH}a)_m for m in [lo, hi], window entries only.
pub fn hilbert_group_range(t: f64, a: &SeqWindow, lo: i64, hi: i64) -> Vec<f64> {
    let (n, c) = split(t);
    if c.abs() < INTEGER_THRESHOLD {
        let sg = if n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        return (lo..=hi).map(|m| sg * a.get(m + n)).collect();
    }
    let s = sin_pi(t) / PI;
    (lo..=hi)
        .into_par_iter()
        .map(|m| s * a.iter().map(|(j, v)| v / ((m + n - j) as f64 + c)).sum::<f64>())
        .collect()
}

/// e^{tH}a: b_m = (sin πt/π)·Σ_n a_n/(m − n + t), or (−1)^t a_{m+t} for integer t.
pub fn hilbert_group(t: f64, a: &SeqWindow, expand: usize) -> Result<SeqWindow> {
    check_finite("t", t)?;
    let (n, c) = split(t);
    if c.abs() < INTEGER_THRESHOLD {
        let sg = if n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        let values = a.values.iter().map(|v| sg * v).collect();
        return Ok(SeqWindow::computed(a.n0 - n, values, a.tail_l2, a.exact_interior));
    }
    let (lo, hi) = group_range(t, a, expand);
    let values = hilbert_group_range(t, a, lo, hi);
    let leak = (sin_pi(t).abs() / PI * kernel_outside(a, n, c, lo, hi)).min(a.window_norm());
    Ok(SeqWindow::computed(lo, values, leak + a.tail_l2, a.exact_interior && a.tail_l2 == 0.0))
}

/// The default expansion: ‖a‖/tol for a tolerance, K for a fixed half-width, capped.
pub fn default_expand(a: &SeqWindow, trunc: Truncation) -> usize {
    let e = match trunc {
        Truncation::Tolerance(tol) => (a.window_norm() / tol).ceil(),
        Truncation::HalfWidth(k) => k as f64,
    };
    if e.is_finite() {
        (e as usize).min(MAX_EXPAND)
    } else {
        MAX_EXPAND
    }
}

/// Shared body of the two orbit expansions with sample spacing 1.
fn orbit_series(
    a: &SeqWindow,
    t: f64,
    trunc: Truncation,
    expand: Option<usize>,
    reconstruct: bool,
) -> Result<SeqWindow> {
    check_finite("t", t)?;
    let (n, c) = split(t);
    let t = if c.abs() < INTEGER_THRESHOLD { n as f64 } else { t };
    let e = expand.unwrap_or_else(|| default_expand(a, trunc));
    let (lo, hi) = group_range(t, a, e);
    let norm = a.window_norm();
    // k with m + k inside the input window for some output m
    let (kmin, kmax) = (a.n0 - hi, a.end() - 1 - lo);
    let weight = |k: i64| t / k as f64 * if k % 2 == 0 { 1.0 } else { -1.0 } * sinc_f(t - k as f64);
    let cut = |kk: usize| {
        let kk = kk as i64;
        let beyond: f64 = (kmin..=kmax).filter(|k| k.abs() > kk).map(|k| weight(k).abs()).sum();
        let s1 = if reconstruct {
            t.abs() * 2.0 * sin_pi(t).abs() / (PI * ((kk as f64 + 1.0).powi(2) - t * t))
        } else {
            0.0
        };
        norm * (beyond + s1)
    };
    let kk = resolve_k(trunc, t.abs().floor() as usize + 1, cut)?;
    let ki = kk as i64;
    let st = sinc_f(t);
    let ha = if st != 0.0 { hilbert_entries(a, lo, hi) } else { vec![0.0; (hi - lo + 1) as usize] };
    let coef_a = if reconstruct {
        let s_k: f64 = outward(0, -ki, ki).filter(|&k| k != 0).map(|k| sinc_f(t - k as f64) / k as f64).sum();
        1.0 - t * s_k
    } else {
        st
    };
    let w: Vec<f64> = (kmin..=kmax).map(|k| if k != 0 && k.abs() <= ki { weight(k) } else { 0.0 }).collect();
    let values: Vec<f64> = (lo..=hi)
        .into_par_iter()
        .map(|m| {
            let mut s = coef_a * a.get(m) + t * st * ha[(m - lo) as usize];
            for (j, v) in a.iter() {
                s += w[(j - m - kmin) as usize] * v;
            }
            s
        })
        .collect();
    let leak = (sin_pi(t).abs() / PI * kernel_outside(a, n, t - n as f64, lo, hi)).min(norm);
    Ok(SeqWindow::computed(lo, values, cut(kk) + leak + a.tail_l2, false))
}

/// e^{tH}a = a + t·sinc(t)·Ha + t·Σ_{k≠0} (e^{kH}a − a)/k·sinc(t − k), with the
/// integer samples e^{kH}a = ((−1)^k a_{m+k})_m. `trunc` fixes the sample range.
pub fn dht_orbit_reconstruct(
    a: &SeqWindow,
    t: f64,
    trunc: impl Into<Truncation>,
    expand: Option<usize>,
) -> Result<SeqWindow> {
    orbit_series(a, t, trunc.into(), expand, true)
}

/// e^{tH}a = sinc(t)·a + t·sinc(t)·Ha + Σ_{k≠0} (t/k)·sinc(t − k)·e^{kH}a.
pub fn dht_vt(a: &SeqWindow, t: f64, trunc: impl Into<Truncation>, expand: Option<usize>) -> Result<SeqWindow> {
    orbit_series(a, t, trunc.into(), expand, false)
}

/// Σ_j w_j·e^{τ_j H}a over [lo, hi] for shifts all integer or all half-integer,
/// plus a bound on the ℓ² mass each shifted copy pushes outside [lo, hi].
fn apply_shifts(a: &SeqWindow, terms: &[(f64, f64)], lo: i64, hi: i64) -> (Vec<f64>, f64) {
    let norm = a.window_norm();
    let half = terms.first().is_some_and(|&(s, _)| s.fract() != 0.0);
    if half {
        // τ = k − 1/2 has sin(πτ) = (−1)^{k+1}: entries (1/π)(−1)^{k+1}Σ_n a_n/(m − n + τ)
        let scaled: Vec<(i64, f64, f64)> = terms
            .iter()
            .map(|&(tau, w)| {
                let k = (tau + 0.5).round() as i64;
                let sg = if k.rem_euclid(2) == 1 { 1.0 } else { -1.0 };
                (k, tau, w * sg / PI)
            })
            .collect();
        let (dmin, dmax) = (lo - (a.end() - 1), hi - a.n0);
        let g: Vec<f64> = (dmin..=dmax)
            .into_par_iter()
            .map(|d| scaled.iter().map(|&(_, tau, cw)| cw / (d as f64 + tau)).sum())
            .collect();
        let values = (lo..=hi)
            .into_par_iter()
            .map(|m| a.iter().map(|(n, v)| v * g[(m - n - dmin) as usize]).sum())
            .collect();
        let leak = scaled
            .par_iter()
            .map(|&(k, _, cw)| (cw.abs() * kernel_outside(a, k, -0.5, lo, hi)).min(cw.abs() * PI * norm))
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        (values, leak)
    } else {
        // e^{kH}a = ((−1)^k a_{m+k})_m
        let signed: Vec<(i64, f64)> = terms
            .iter()
            .map(|&(s, w)| {
                let k = s.round() as i64;
                (k, if k.rem_euclid(2) == 1 { -w } else { w })
            })
            .collect();
        let values = (lo..=hi)
            .into_par_iter()
            .map(|m| signed.iter().map(|&(k, w)| w * a.get(m + k)).sum())
            .collect();
        let mut prefix = vec![0.0];
        for v in &a.values {
            prefix.push(prefix.last().unwrap() + v * v);
        }
        let mass = |from: i64, to: i64| {
            let f = (from - a.n0).clamp(0, a.len() as i64) as usize;
            let t = (to - a.n0).clamp(0, a.len() as i64) as usize;
            if t > f {
                prefix[t] - prefix[f]
            } else {
                0.0
            }
        };
        // the copy shifted by −k leaves [lo, hi] where n < lo + k or n > hi + k
        let leak = signed
            .iter()
            .map(|&(k, w)| w.abs() * (mass(a.n0, lo + k) + mass(hi + k + 1, a.end())).max(0.0).sqrt())
            .sum();
        (values, leak)
    }
}

/// r-fold self-convolution of `base` via one FFT.
fn convolve_power(base: &[f64], r: u32) -> Vec<f64> {
    let out_len = r as usize * (base.len() - 1) + 1;
    let n = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex64> = base.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    buf.resize(n, Complex64::new(0.0, 0.0));
    planner.plan_fft_forward(n).process(&mut buf);
    for z in &mut buf {
        *z = z.powu(r);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf[..out_len].iter().map(|z| z.re / n as f64).collect()
}

/// H^r a through the Boas operators with σ = π: odd orders sum half-integer
/// group samples, even orders reduce to −Σ_k B_{s,k} a_{m+k}.
pub fn dht_power(a: &SeqWindow, r: u32, trunc: impl Into<Truncation>, expand: Option<usize>) -> Result<SeqWindow> {
    if r < 1 {
        return Err(domain("power r must be ≥ 1"));
    }
    let trunc = trunc.into();
    let norm = a.window_norm();
    let stencil = BoasStencil::new(r, PI, trunc, norm)?;
    let e = expand.unwrap_or_else(|| default_expand(a, trunc)) as i64;
    let (lo, hi) = (a.n0 - e, a.end() - 1 + e);
    let terms: Vec<(f64, f64)> = stencil.nodes().collect();
    let (values, leak) = apply_shifts(a, &terms, lo, hi);
    let tail = stencil.weight_tail() * norm + PI.powi(r as i32) * a.tail_l2 + leak;
    Ok(SeqWindow::computed(lo, values, tail, false))
}

/// (R_H)^r a with R_H the first-order Boas operator.
///
/// Composing r half-integer shifts gives a shift in ℤ − r/2, so the r-fold
/// operator is one weighted sum of exact group samples whose weights are the
/// r-fold convolution of the first-order weights; no intermediate window is cut.
pub fn dht_power_iterated(
    a: &SeqWindow,
    r: u32,
    trunc: impl Into<Truncation>,
    expand: Option<usize>,
) -> Result<SeqWindow> {
    if r < 1 {
        return Err(domain("power r must be ≥ 1"));
    }
    let trunc = trunc.into();
    let norm = a.window_norm();
    // per-factor tolerance so that r·π^{r−1}·δ stays within the request
    let factor_trunc = match trunc {
        Truncation::Tolerance(tol) => Truncation::Tolerance(tol / (r as f64 * PI.powi(r as i32 - 1))),
        t => t,
    };
    let stencil = BoasStencil::new(1, PI, factor_trunc, norm)?;
    let kk = stencil.half_width() as i64;
    // first-order weights indexed by k ∈ [1 − K, K], shift k − 1/2
    let mut base = vec![0.0; 2 * kk as usize];
    for (s, w) in stencil.nodes() {
        base[((s + 0.5).round() as i64 - (1 - kk)) as usize] = w;
    }
    // cur[i] holds the weight of Σk = r(1 − K) + i
    let cur = convolve_power(&base, r);
    let first = r as i64 * (1 - kk);
    let terms: Vec<(f64, f64)> = cur
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0.0)
        .map(|(i, &w)| ((first + i as i64) as f64 - r as f64 / 2.0, w))
        .collect();
    let e = expand.unwrap_or_else(|| default_expand(a, trunc)) as i64;
    let (lo, hi) = (a.n0 - e, a.end() - 1 + e);
    let (values, leak) = apply_shifts(a, &terms, lo, hi);
    let delta = stencil.weight_tail();
    let tail = r as f64 * PI.powi(r as i32 - 1) * delta * norm + PI.powi(r as i32) * a.tail_l2 + leak;
    Ok(SeqWindow::computed(lo, values, tail, false))
}

/// ⟨e^{tH}a, a*⟩ against its oversampled sinc series Σ_k ⟨e^{γkH}a, a*⟩·sinc(t/γ − k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingReport {
    pub lhs: f64,
    pub rhs: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

impl PairingReport {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn pairing(tau: f64, a: &SeqWindow, a_star: &SeqWindow) -> f64 {
    hilbert_group_range(tau, a, a_star.n0, a_star.end() - 1)
        .iter()
        .zip(&a_star.values)
        .map(|(x, y)| x * y)
        .sum()
}

/// Pairing form of the oversampled sampling theorem for real t, windows only.
///
/// |⟨e^{τH}a, a*⟩| ≤ ‖a‖₁‖a*‖₁/(π(|τ| − D)) with D the largest index gap
/// between the windows bounds the tail.
pub fn pairing_check(
    a: &SeqWindow,
    a_star: &SeqWindow,
    gamma: f64,
    t: f64,
    trunc: impl Into<Truncation>,
) -> Result<PairingReport> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(domain(format!("γ must lie in (0, 1), got {gamma}")));
    }
    check_finite("t", t)?;
    let c = a.l1() * a_star.l1();
    let gap = ((a_star.end() - 1) - a.n0).abs().max((a_star.n0 - (a.end() - 1)).abs()) as f64;
    let k0 = (gap / gamma).max(t.abs() / gamma);
    let tail = |kk: usize| 2.0 * c / (PI * PI * gamma) * power_tail(kk as f64 + 1.0 - k0, 2.0);
    let kk = resolve_k(trunc.into(), k0.floor() as usize + 1, tail)? as i64;
    let u = t / gamma;
    let rhs = outward(0, -kk, kk)
        .map(|k| {
            let s = sinc_f(u - k as f64);
            if s == 0.0 {
                0.0
            } else {
                s * pairing(gamma * k as f64, a, a_star)
            }
        })
        .sum();
    Ok(PairingReport {
        lhs: pairing(t, a, a_star),
        rhs,
        tail_bound: tail(kk as usize),
        terms: (2 * kk + 1) as usize,
    })
}

/// e^{tH} on windows, as a group instance for the generic orbit engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhtGroup {
    pub expand: usize,
}

impl GroupInstance for DhtGroup {
    type Vector = SeqWindow;

    fn orbit(&self, t: f64, v: &SeqWindow) -> SeqWindow {
        hilbert_group(t, v, self.expand).expect("finite orbit time")
    }

    fn generator(&self, v: &SeqWindow) -> SeqWindow {
        hilbert_apply(v, self.expand)
    }

    fn sigma_bound(&self) -> f64 {
        PI
    }
}

/// ℓ² distance between two windows over [lo, hi].
pub fn window_distance(a: &SeqWindow, b: &SeqWindow, lo: i64, hi: i64) -> f64 {
    (lo..=hi).map(|m| (a.get(m) - b.get(m)).powi(2)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupLawReport {
    /// ℓ² distance of e^{sH}e^{tH}a and e^{(s+t)H}a on the measured range.
    pub residual: f64,
    /// Bound on the part of that distance caused by cutting the inner orbit.
    pub slack: f64,
}

/// Group law on [lo, hi], the inner orbit e^{tH}a cut to its window grown by `inner_expand`.
///
/// Past the inner edge |(e^{tH}a)_m| ≤ ‖a‖₁/(π(E + j − 1/2)), and the outer kernel
/// is at most 1/(π(D + j − 1/2)) with D the gap between [lo, hi] and that edge.
pub fn group_law_residual(s: f64, t: f64, a: &SeqWindow, inner_expand: usize, lo: i64, hi: i64) -> Result<GroupLawReport> {
    check_finite("s", s)?;
    if a.tail_l2 != 0.0 {
        return Err(domain("group-law check needs an exactly known window"));
    }
    let inner = hilbert_group(t, a, inner_expand)?;
    let (il, ih) = (inner.n0, inner.end() - 1);
    let (ns, cs) = split(s);
    let (_, ct) = split(t);
    // an integer t leaves the inner orbit exactly supported on its window
    let cut = ct.abs() >= INTEGER_THRESHOLD;
    let gap = (lo - il).min(ih - hi) - ns.abs() - 1;
    if cut && gap < 1 {
        return Err(domain("measured range must sit inside the inner window"));
    }
    let lhs = hilbert_group_range(s, &inner, lo, hi);
    let rhs = hilbert_group_range(s + t, a, lo, hi);
    let residual = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let slack = if !cut || cs.abs() < INTEGER_THRESHOLD {
        0.0
    } else {
        let per_entry = 2.0 * sin_pi(s).abs() * sin_pi(t).abs() / (PI * PI) * a.l1() * power_tail(gap as f64 + 0.5, 2.0);
        per_entry * ((hi - lo + 1) as f64).sqrt()
    };
    Ok(GroupLawReport { residual, slack })
}
