//! Boas-type differentiation of every order from shifted samples.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{check_finite, domain, Error, Result};
use crate::norm::Exponent;
use crate::sampling::{BandlimitedFn, UniformSamples};
use crate::sinc::{coef, coefficient_tail, half_width_for, Parity};
use crate::truncation::{Estimate, Truncation, MAX_HALF_WIDTH};

/// Weighted shifts realizing D^r ≈ Σ w·T_s, T_s f = f(· + s), truncated symmetrically.
///
/// Odd r = 2m−1 pairs k ↔ 1−k at shifts π(k−1/2)/σ with weights (σ/π)^r(−1)^{k+1}A_{m,k};
/// even r = 2m keeps k = 0 and pairs k ↔ −k at shifts πk/σ with (σ/π)^r(−1)^{k+1}B_{m,k}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoasStencil {
    r: u32,
    sigma: f64,
    center: Option<(f64, f64)>,
    pairs: Vec<[(f64, f64); 2]>,
    weight_tail: f64,
}

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 1 {
        1.0
    } else {
        -1.0
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("type σ must be finite and > 0, got {sigma}")))
    }
}

/// Half-width for a weight-tail target `tol/(sup·scale)` or a fixed K.
fn resolve_half_width(
    trunc: Truncation,
    parity: Parity,
    m: u32,
    extra: u32,
    weight_scale: f64,
    sup_bound: f64,
) -> Result<usize> {
    match trunc {
        Truncation::HalfWidth(k) => {
            if k < 1 {
                Err(domain("half-width must be ≥ 1"))
            } else if k > MAX_HALF_WIDTH {
                Err(domain(format!("half-width {k} exceeds the maximum {MAX_HALF_WIDTH}")))
            } else {
                Ok(k)
            }
        }
        Truncation::Tolerance(tol) => {
            if !(tol > 0.0) {
                return Err(domain(format!("tolerance must be > 0, got {tol}")));
            }
            let scale = weight_scale * sup_bound;
            if scale == 0.0 {
                return Ok(1);
            }
            half_width_for(parity, m, extra, tol / scale).map_err(|e| match e {
                Error::Truncation { achievable } => Error::ToleranceUnachievable {
                    requested: tol,
                    achievable: achievable * scale,
                },
                other => other,
            })
        }
    }
}

impl BoasStencil {
    /// Stencil for D^r on functions of type σ bounded by `sup_bound`.
    pub fn new(r: u32, sigma: f64, trunc: impl Into<Truncation>, sup_bound: f64) -> Result<Self> {
        if r < 1 {
            return Err(domain("derivative order r must be ≥ 1"));
        }
        check_sigma(sigma)?;
        let (parity, m) = parity_of(r);
        let scale = (sigma / PI).powi(r as i32);
        let kk = resolve_half_width(trunc.into(), parity, m, 0, scale, sup_bound)?;
        Ok(Self::build(r, sigma, kk))
    }

    pub fn with_half_width(r: u32, sigma: f64, half_width: usize) -> Result<Self> {
        Self::new(r, sigma, Truncation::HalfWidth(half_width), 1.0)
    }

    fn build(r: u32, sigma: f64, kk: usize) -> Self {
        let (parity, m) = parity_of(r);
        let scale = (sigma / PI).powi(r as i32);
        let step = PI / sigma;
        let kk = kk as i64;
        let (center, pairs) = match parity {
            Parity::Odd => {
                let pairs = (1..=kk)
                    .map(|k| {
                        let c = scale * coef(parity, m, k);
                        let j = 1 - k;
                        [
                            (step * (k as f64 - 0.5), sign(k) * c),
                            (step * (j as f64 - 0.5), sign(j) * c),
                        ]
                    })
                    .collect();
                (None, pairs)
            }
            Parity::Even => {
                let c0 = scale * coef(parity, m, 0);
                let pairs = (1..=kk)
                    .map(|k| {
                        let c = scale * coef(parity, m, k);
                        [(step * k as f64, sign(k) * c), (-step * k as f64, sign(-k) * c)]
                    })
                    .collect();
                (Some((0.0, -c0)), pairs)
            }
        };
        BoasStencil {
            r,
            sigma,
            center,
            pairs,
            weight_tail: scale * coefficient_tail(parity, m, kk as usize, 0),
        }
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn half_width(&self) -> usize {
        self.pairs.len()
    }

    /// Number of shifted evaluations.
    pub fn terms(&self) -> usize {
        2 * self.pairs.len() + self.center.is_some() as usize
    }

    /// Bound on Σ |w| over the discarded shifts.
    pub fn weight_tail(&self) -> f64 {
        self.weight_tail
    }

    /// (shift, weight) in symmetric-outward order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.center.into_iter().chain(self.pairs.iter().flat_map(|p| p.iter().copied()))
    }

    /// Σ w·g(shift), each symmetric pair combined before accumulation.
    pub fn apply(&self, g: impl Fn(f64) -> f64) -> f64 {
        let mut sum = self.center.map_or(0.0, |(s, w)| w * g(s));
        for [(s1, w1), (s2, w2)] in &self.pairs {
            sum += w1 * g(*s1) + w2 * g(*s2);
        }
        sum
    }
}

pub(crate) fn parity_of(r: u32) -> (Parity, u32) {
    if r % 2 == 1 {
        (Parity::Odd, r.div_ceil(2))
    } else {
        (Parity::Even, r / 2)
    }
}

/// f^{(r)}(x) by the Boas-type series at the declared type of `f`.
pub fn boas_derivative(f: &BandlimitedFn, r: u32, x: f64, trunc: impl Into<Truncation>) -> Result<Estimate> {
    check_finite("x", x)?;
    let st = BoasStencil::new(r, f.sigma(), trunc, f.sup_bound())?;
    let value = st.apply(|s| f.eval(x + s));
    Ok(Estimate {
        value,
        tail_bound: st.weight_tail() * f.sup_bound(),
        terms: st.terms(),
        rigorous: true,
    })
}

/// Lattice point where [`boas_on_samples`] evaluates D^r: jh for even r, (j + 1/2)h for odd r.
pub fn sample_lattice_point(h: f64, r: u32, j: i64) -> f64 {
    if r % 2 == 1 {
        (j as f64 + 0.5) * h
    } else {
        j as f64 * h
    }
}

/// f^{(r)} at [`sample_lattice_point`]`(h, r, j)` from the samples alone.
///
/// The stencil is built at type π/h ≥ σ so that every node is a sample point.
/// Nodes past the window are bounded through the sample tail model.
pub fn boas_on_samples(s: &UniformSamples, r: u32, j: i64, trunc: impl Into<Truncation>) -> Result<Estimate> {
    let trunc = trunc.into();
    let h = s.h();
    let tail = s.tail();
    let sup = s.values().iter().fold(tail.bound, |m, v| m.max(v.abs()));
    let st = BoasStencil::new(r, PI / h, trunc, sup)?;
    let offset = if r % 2 == 1 { 0.5 } else { 0.0 };
    let (lo, hi) = (s.k_min(), s.k_max());
    let mut value = 0.0;
    let mut outside = 0.0;
    for (shift, w) in st.nodes() {
        let k = j + (shift / h + offset).round() as i64;
        match s.get(k) {
            Some(v) => value += w * v,
            None => {
                let d = if k > hi { k - hi - 1 } else { lo - 1 - k };
                outside += w.abs() * tail.at(d as f64);
            }
        }
    }
    let tail_bound = st.weight_tail() * sup + outside;
    if let Truncation::Tolerance(tol) = trunc {
        if tail_bound > tol {
            return Err(Error::ToleranceUnachievable { requested: tol, achievable: tail_bound });
        }
    }
    Ok(Estimate { value, tail_bound, terms: st.terms(), rigorous: true })
}

/// Stencil for the formulas with O(k⁻³) weights.
///
/// Even r = 2m: (−1)^m σ^{2m}·f(t) + (2mσ^{2m}/π^{2m})·Σ_k (−1)^{k+1}A_{m,k}/(k−1/2)·f(t + π(k−1/2)/σ).
/// Odd r = 2m+1: −((2m+1)σ^{2m}/π^{2m})·B_{m,0}·f′(t) + ((2m+1)σ^{2m+1}/π^{2m+1})·Σ_{k≠0}(−1)^{k+1}B_{m,k}/k·f(t + πk/σ).
#[derive(Debug, Clone, PartialEq)]
pub struct FastBoasStencil {
    r: u32,
    /// Coefficient of f(t) (even r) or f′(t) (odd r).
    local: f64,
    pairs: Vec<[(f64, f64); 2]>,
    weight_tail: f64,
}

impl FastBoasStencil {
    pub fn new(r: u32, sigma: f64, trunc: impl Into<Truncation>, sup_bound: f64) -> Result<Self> {
        if r < 2 {
            return Err(domain("the O(k⁻³) formulas need r ≥ 2"));
        }
        check_sigma(sigma)?;
        let step = PI / sigma;
        let trunc = trunc.into();
        if r % 2 == 0 {
            let m = r / 2;
            let scale = 2.0 * m as f64 * (sigma / PI).powi(r as i32);
            let kk = resolve_half_width(trunc, Parity::Odd, m, 1, scale, sup_bound)?;
            let pairs = (1..=kk as i64)
                .map(|k| {
                    let c = scale * coef(Parity::Odd, m, k) / (k as f64 - 0.5);
                    let j = 1 - k;
                    // (−1)^{j+1}/(j − 1/2) = (−1)^{k+1}/(k − 1/2): both weights agree
                    [(step * (k as f64 - 0.5), sign(k) * c), (step * (j as f64 - 0.5), sign(k) * c)]
                })
                .collect();
            let local = if m % 2 == 0 { 1.0 } else { -1.0 } * sigma.powi(r as i32);
            Ok(FastBoasStencil {
                r,
                local,
                pairs,
                weight_tail: scale * coefficient_tail(Parity::Odd, m, kk, 1),
            })
        } else {
            let m = (r - 1) / 2;
            let scale = r as f64 * (sigma / PI).powi(r as i32);
            let kk = resolve_half_width(trunc, Parity::Even, m, 1, scale, sup_bound)?;
            let pairs = (1..=kk as i64)
                .map(|k| {
                    let c = scale * coef(Parity::Even, m, k) / k as f64;
                    [(step * k as f64, sign(k) * c), (-step * k as f64, -sign(k) * c)]
                })
                .collect();
            let local = -(r as f64) * (sigma / PI).powi(r as i32 - 1) * coef(Parity::Even, m, 0);
            Ok(FastBoasStencil {
                r,
                local,
                pairs,
                weight_tail: scale * coefficient_tail(Parity::Even, m, kk, 1),
            })
        }
    }

    pub fn terms(&self) -> usize {
        2 * self.pairs.len() + 1
    }

    pub fn half_width(&self) -> usize {
        self.pairs.len()
    }

    pub fn weight_tail(&self) -> f64 {
        self.weight_tail
    }

    pub fn local_coefficient(&self) -> f64 {
        self.local
    }

    /// `local_value` is f(t) for even r and f′(t) for odd r.
    pub fn apply(&self, local_value: f64, g: impl Fn(f64) -> f64) -> f64 {
        let mut sum = self.local * local_value;
        for [(s1, w1), (s2, w2)] in &self.pairs {
            sum += w1 * g(*s1) + w2 * g(*s2);
        }
        sum
    }
}

/// f^{(r)}(t) by the O(k⁻³) formulas. Odd orders consume f′(t) from the derivative handle.
pub fn boas_derivative_fast(f: &BandlimitedFn, r: u32, t: f64, trunc: impl Into<Truncation>) -> Result<Estimate> {
    check_finite("t", t)?;
    if r >= 2 && r % 2 == 1 && !f.has_derivative() {
        return Err(Error::MissingDerivative(format!("order {r} needs f′(t)")));
    }
    let st = FastBoasStencil::new(r, f.sigma(), trunc, f.sup_bound())?;
    let local = if r % 2 == 0 { f.eval(t) } else { f.deriv_eval(t).unwrap_or(0.0) };
    let value = st.apply(local, |s| f.eval(t + s));
    Ok(Estimate {
        value,
        tail_bound: st.weight_tail() * f.sup_bound(),
        terms: st.terms(),
        rigorous: true,
    })
}

/// Evaluation grid: `points` equally spaced nodes on [start, end].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        let g = Grid { start, end, points };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.end.is_finite() && self.start < self.end) || self.points < 3 {
            return Err(domain(format!(
                "degenerate grid [{}, {}] with {} points",
                self.start, self.end, self.points
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..self.points).map(move |i| if i + 1 == self.points { self.end } else { self.start + i as f64 * h })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinRatio {
    /// ‖f^{(m)}‖_p / ‖f‖_p on the grid.
    pub ratio: f64,
    /// σ^m.
    pub bound: f64,
    /// Relative quadrature error estimate (trapezoid vs. half-density trapezoid).
    pub quadrature_error: f64,
    /// Relative effect of the series truncation on the ratio.
    pub truncation_error: f64,
}

impl BernsteinRatio {
    pub fn slack(&self) -> f64 {
        self.quadrature_error + self.truncation_error
    }

    pub fn holds(&self) -> bool {
        self.ratio <= self.bound * (1.0 + self.slack())
    }
}

fn grid_norm(vals: &[f64], h: f64, p: Exponent) -> (f64, f64) {
    match p {
        Exponent::Infinity => (Exponent::Infinity.norm_weighted(vals.iter().copied(), 1.0), 0.0),
        Exponent::Finite(p) => {
            let trap = |step: usize| {
                let pts: Vec<f64> = vals.iter().step_by(step).map(|v| v.abs().powf(p)).collect();
                let n = pts.len();
                let inner: f64 = pts[1..n - 1].iter().sum();
                (inner + 0.5 * (pts[0] + pts[n - 1])) * h * step as f64
            };
            let fine = trap(1);
            let coarse = if vals.len() % 2 == 1 { trap(2) } else { fine };
            (fine.powf(1.0 / p), if fine > 0.0 { (fine - coarse).abs() / fine / p } else { 0.0 })
        }
    }
}

/// Estimate ‖f^{(m)}‖_p/‖f‖_p on a grid using the Boas series for f^{(m)}.
pub fn bernstein_ratio(f: &BandlimitedFn, m: u32, p: Exponent, grid: Grid) -> Result<BernsteinRatio> {
    grid.validate()?;
    let bound = f.sigma().powi(m as i32);
    let tol = 1e-4 * bound * f.sup_bound().max(f64::MIN_POSITIVE);
    let st = BoasStencil::new(m, f.sigma(), Truncation::Tolerance(tol), f.sup_bound())?;
    let xs: Vec<f64> = grid.iter().collect();
    let fv: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let dv: Vec<f64> = xs.par_iter().map(|&x| st.apply(|s| f.eval(x + s))).collect();
    let (nf, ef) = grid_norm(&fv, grid.step(), p);
    let (nd, ed) = grid_norm(&dv, grid.step(), p);
    if nf == 0.0 {
        return Err(domain("‖f‖ vanishes on the grid"));
    }
    let quadrature_error = ef + ed;
    if quadrature_error > 0.01 {
        return Err(domain(format!(
            "grid too coarse: relative quadrature error estimate {quadrature_error:.3e} exceeds 1%"
        )));
    }
    let truncation_error = st.weight_tail() * f.sup_bound() / nf / bound;
    Ok(BernsteinRatio { ratio: nd / nf, bound, quadrature_error, truncation_error })
}
