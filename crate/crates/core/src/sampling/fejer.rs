use std::f64::consts::{LN_2, PI};
use std::sync::Arc;

use super::function::BandlimitedFn;
use crate::error::{domain, Error, Result};

/// Normalization a with a·∫(sin(t/4)/t)⁴ dt = 1.
pub const FEJER_NORMALIZATION: f64 = 96.0 / PI;

/// C_h = ∫h(t)(1 + |t|) dt = 1 + 12 ln 2/π, the constant in the approximation estimate.
pub const FEJER_MOMENT: f64 = 1.0 + 12.0 * LN_2 / PI;

/// h(t) = a·(sin(t/4)/t)⁴, even, nonnegative, type 1, unit integral.
pub fn fejer_kernel(t: f64) -> f64 {
    // sin(t/4)/t = sinc(t/4π)/4
    let s = crate::sinc::sinc_f(t / (4.0 * PI)) / 4.0;
    FEJER_NORMALIZATION * s * s * s * s
}

/// Composite midpoint rule on [−half_width, half_width] with `nodes` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub half_width: f64,
    pub nodes: usize,
}

impl Quadrature {
    /// Error estimate for R(f) with |f| ≤ sup_bound and f of type `f_type`:
    /// kernel tail 2a·M/(3T³) plus the midpoint bound (2T)·δ²/24·M·h(0)·(1 + τ/σ)²,
    /// using Bernstein's inequality on the type-(1 + τ/σ) integrand.
    pub fn error_estimate(&self, sup_bound: f64, f_type: f64, sigma: f64) -> f64 {
        let t = self.half_width;
        let delta = 2.0 * t / self.nodes as f64;
        let kernel_tail = 2.0 * FEJER_NORMALIZATION * sup_bound / (3.0 * t.powi(3));
        let h0 = FEJER_NORMALIZATION / 256.0;
        let midpoint = 2.0 * t * delta * delta / 24.0 * sup_bound * h0 * (1.0 + f_type / sigma).powi(2);
        kernel_tail + midpoint
    }

    /// Smallest rule meeting `tol`, split evenly between kernel tail and midpoint error.
    pub fn for_tolerance(sup_bound: f64, f_type: f64, sigma: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(domain(format!("tolerance must be > 0, got {tol}")));
        }
        let m = sup_bound.max(f64::MIN_POSITIVE);
        let t = (4.0 * FEJER_NORMALIZATION * m / (3.0 * tol)).cbrt().max(1.0);
        let h0 = FEJER_NORMALIZATION / 256.0;
        let delta = (6.0 * tol / (t * m * h0 * (1.0 + f_type / sigma).powi(2))).sqrt();
        let nodes = (2.0 * t / delta).ceil() as usize;
        Ok(Quadrature { half_width: t, nodes: nodes.max(1) })
    }
}

/// R(f)(x) = ∫h(t)·f(x + t/σ) dt by quadrature; the result has type σ and
/// approximates f within C_h·Ω(f, 1/σ) plus the quadrature error.
pub fn fejer_regularize(f: &BandlimitedFn, sigma: f64, quad: Quadrature, tol: f64) -> Result<BandlimitedFn> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(domain(format!("σ must be finite and > 0, got {sigma}")));
    }
    if !(quad.half_width > 0.0 && quad.nodes > 0) {
        return Err(domain("quadrature needs a positive half-width and node count"));
    }
    let estimate = quad.error_estimate(f.sup_bound(), f.sigma(), sigma);
    if estimate > tol {
        return Err(Error::Quadrature { estimate, tol });
    }
    let delta = 2.0 * quad.half_width / quad.nodes as f64;
    let rule: Arc<Vec<(f64, f64)>> = Arc::new(
        (0..quad.nodes)
            .map(|i| {
                let t = -quad.half_width + (i as f64 + 0.5) * delta;
                (t / sigma, fejer_kernel(t) * delta)
            })
            .collect(),
    );
    let (g, r) = (f.clone(), rule.clone());
    let out = BandlimitedFn::new(sigma, f.sup_bound(), move |x| r.iter().map(|&(s, w)| w * g.eval(x + s)).sum())?;
    Ok(if f.has_derivative() {
        let g = f.clone();
        out.with_derivative(move |x| rule.iter().map(|&(s, w)| w * g.deriv_eval(x + s).unwrap_or(0.0)).sum())
    } else {
        out
    })
}
