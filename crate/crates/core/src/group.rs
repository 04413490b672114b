//! Orbit sampling for one-parameter isometry groups e^{tD}: reconstruction
//! of the trajectory from the samples e^{(kπ/σ)D}f, the group
//! Valiron–Tschakaloff expansion, abstract Boas operators for D^r, and the
//! exponential-type estimator. `RotationGroup` is the closed-form oracle.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use crate::boas::BoasStencil;
use crate::error::{check_finite, domain, Error, Result};
use crate::sinc::sinc_f;
use crate::truncation::{power_tail, Truncation, MAX_HALF_WIDTH};

/// The vector operations the orbit formulas need.
pub trait LinearSpace: Clone + Send + Sync {
    fn zeros_like(&self) -> Self;
    /// self += a·x
    fn axpy(&mut self, a: f64, x: &Self);
    fn norm(&self) -> f64;

    fn scaled(&self, a: f64) -> Self {
        let mut z = self.zeros_like();
        z.axpy(a, self);
        z
    }

    fn distance(&self, other: &Self) -> f64 {
        let mut d = self.clone();
        d.axpy(-1.0, other);
        d.norm()
    }
}

/// Euclidean ℝⁿ.
impl LinearSpace for Vec<f64> {
    fn zeros_like(&self) -> Self {
        vec![0.0; self.len()]
    }

    fn axpy(&mut self, a: f64, x: &Self) {
        assert_eq!(self.len(), x.len(), "dimension mismatch");
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }

    fn norm(&self) -> f64 {
        self.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// A one-parameter group of isometries e^{tD} with generator D.
///
/// Implementations must tolerate concurrent `orbit` calls.
pub trait GroupInstance: Send + Sync {
    type Vector: LinearSpace;

    fn orbit(&self, t: f64, v: &Self::Vector) -> Self::Vector;
    fn generator(&self, v: &Self::Vector) -> Self::Vector;
    /// Smallest known σ with ‖D^k v‖ ≤ σ^k‖v‖ on every admissible v.
    fn sigma_bound(&self) -> f64;

    fn norm(&self, v: &Self::Vector) -> f64 {
        v.norm()
    }
}

/// D block-diagonal with 2×2 blocks σᵢ[[0, −1], [1, 0]] on ℝ^{2n}.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationGroup {
    sigmas: Vec<f64>,
}

pub fn rotation_instance(sigmas: &[f64]) -> Result<RotationGroup> {
    if sigmas.is_empty() {
        return Err(domain("rotation instance needs at least one block"));
    }
    if let Some(s) = sigmas.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(domain(format!("block frequencies must be finite and > 0, got {s}")));
    }
    Ok(RotationGroup { sigmas: sigmas.to_vec() })
}

impl RotationGroup {
    pub fn dim(&self) -> usize {
        2 * self.sigmas.len()
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    /// (x, y) placed in block i.
    pub fn block_vector(&self, i: usize, xy: (f64, f64)) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[2 * i] = xy.0;
        v[2 * i + 1] = xy.1;
        v
    }

    /// Exact type of v: the largest frequency among blocks where v is nonzero.
    pub fn exact_type(&self, v: &[f64]) -> f64 {
        self.sigmas
            .iter()
            .enumerate()
            .filter(|(i, _)| v[2 * i] != 0.0 || v[2 * i + 1] != 0.0)
            .map(|(_, s)| *s)
            .fold(0.0, f64::max)
    }

    /// v certified at its exact type.
    pub fn bernstein(&self, v: Vec<f64>) -> Result<BernsteinVector<'_, Self>> {
        let sigma = self.exact_type(&v);
        if sigma == 0.0 {
            return Err(domain("the zero vector has no positive type"));
        }
        Ok(BernsteinVector { instance: self, v, sigma })
    }
}

impl GroupInstance for RotationGroup {
    type Vector = Vec<f64>;

    fn orbit(&self, t: f64, v: &Vec<f64>) -> Vec<f64> {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        let mut out = vec![0.0; v.len()];
        for (i, s) in self.sigmas.iter().enumerate() {
            let (sn, cs) = (s * t).sin_cos();
            let (x, y) = (v[2 * i], v[2 * i + 1]);
            out[2 * i] = cs * x - sn * y;
            out[2 * i + 1] = sn * x + cs * y;
        }
        out
    }

    fn generator(&self, v: &Vec<f64>) -> Vec<f64> {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        let mut out = vec![0.0; v.len()];
        for (i, s) in self.sigmas.iter().enumerate() {
            out[2 * i] = -s * v[2 * i + 1];
            out[2 * i + 1] = s * v[2 * i];
        }
        out
    }

    fn sigma_bound(&self) -> f64 {
        self.sigmas.iter().copied().fold(0.0, f64::max)
    }
}

/// A vector with a certified type: ‖D^k v‖ ≤ σ^k‖v‖.
pub struct BernsteinVector<'a, G: GroupInstance> {
    instance: &'a G,
    v: G::Vector,
    sigma: f64,
}

impl<'a, G: GroupInstance> Clone for BernsteinVector<'a, G> {
    fn clone(&self) -> Self {
        BernsteinVector { instance: self.instance, v: self.v.clone(), sigma: self.sigma }
    }
}

/// Relative slack allowed when checking the Bernstein bounds.
const CERTIFY_SLACK: f64 = 1e-10;

impl<'a, G: GroupInstance> BernsteinVector<'a, G> {
    /// Check ‖D^k v‖ ≤ σ^k‖v‖ for k ≤ depth (normalized iterates, no overflow).
    pub fn certify(instance: &'a G, v: G::Vector, sigma: f64, depth: u32) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain(format!("type σ must be finite and > 0, got {sigma}")));
        }
        let n0 = instance.norm(&v);
        let mut w = v.scaled(1.0);
        for k in 1..=depth {
            w = instance.generator(&w).scaled(1.0 / sigma);
            let n = instance.norm(&w);
            if n > n0 * (1.0 + CERTIFY_SLACK).powi(k as i32) {
                return Err(domain(format!("‖D^{k} v‖ / σ^{k} = {n:e} exceeds ‖v‖ = {n0:e}")));
            }
        }
        Ok(BernsteinVector { instance, v, sigma })
    }

    /// Trust the caller's certificate.
    pub fn assume(instance: &'a G, v: G::Vector, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain(format!("type σ must be finite and > 0, got {sigma}")));
        }
        Ok(BernsteinVector { instance, v, sigma })
    }

    pub fn instance(&self) -> &'a G {
        self.instance
    }

    pub fn vector(&self) -> &G::Vector {
        &self.v
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A truncated vector-valued series and a bound on the norm of what was cut off.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorEstimate<V> {
    pub value: V,
    pub tail_bound: f64,
    pub terms: usize,
}

/// |k| shells above this are recomputed rather than cached.
const CACHE_SHELLS: i64 = 1 << 16;

/// Samples e^{(kπ/σ)D}f fetched lazily and cached, shared by the expansions.
pub struct OrbitSampler<'a, G: GroupInstance> {
    b: BernsteinVector<'a, G>,
    norm: f64,
    step: f64,
    df: OnceLock<G::Vector>,
    cache: RwLock<HashMap<i64, Arc<G::Vector>>>,
}

/// u snapped to the nearest integer when within rounding of it.
fn snap(u: f64) -> (f64, bool) {
    let r = u.round();
    if (u - r).abs() <= 4.0 * f64::EPSILON * u.abs().max(1.0) {
        (r, true)
    } else {
        (u, false)
    }
}

/// Smallest symmetric half-width K ≥ min_k whose tail(K) ≤ tol.
pub(crate) fn resolve_k(trunc: Truncation, min_k: usize, tail: impl Fn(usize) -> f64) -> Result<usize> {
    match trunc {
        Truncation::HalfWidth(k) => {
            if k < min_k {
                Err(domain(format!("half-width {k} must be at least {min_k} here")))
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
            if tail(min_k) <= tol {
                return Ok(min_k);
            }
            let best = tail(MAX_HALF_WIDTH);
            if best > tol {
                return Err(Error::ToleranceUnachievable { requested: tol, achievable: best });
            }
            let (mut lo, mut hi) = (min_k, MAX_HALF_WIDTH);
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
    }
}

/// Bound on Σ_{|k|>K} 1/(|k|·|u − k|), both sides.
fn reciprocal_tail(u: f64, kk: usize) -> f64 {
    2.0 * power_tail(kk as f64 + 1.0 - u.abs(), 2.0)
}

fn min_half_width(u: f64) -> usize {
    u.abs().floor() as usize + 1
}

impl<'a, G: GroupInstance> OrbitSampler<'a, G> {
    pub fn new(b: &BernsteinVector<'a, G>) -> Self {
        OrbitSampler {
            norm: b.instance.norm(&b.v),
            step: PI / b.sigma,
            b: b.clone(),
            df: OnceLock::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Sample spacing π/σ.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// e^{(kπ/σ)D}f.
    pub fn sample(&self, k: i64) -> Arc<G::Vector> {
        if k.abs() > CACHE_SHELLS {
            return Arc::new(self.b.instance.orbit(k as f64 * self.step, &self.b.v));
        }
        if let Some(v) = self.cache.read().unwrap().get(&k) {
            return v.clone();
        }
        let v = Arc::new(self.b.instance.orbit(k as f64 * self.step, &self.b.v));
        self.cache.write().unwrap().entry(k).or_insert(v).clone()
    }

    pub fn cached_shells(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    fn df(&self) -> &G::Vector {
        self.df.get_or_init(|| self.b.instance.generator(&self.b.v))
    }

    /// e^{tD}f = f + t·sinc(σt/π)·Df + t·Σ_{k≠0} (e^{(kπ/σ)D}f − f)/(kπ/σ)·sinc(σt/π − k).
    pub fn reconstruct(&self, t: f64, trunc: impl Into<Truncation>) -> Result<VectorEstimate<G::Vector>> {
        check_finite("t", t)?;
        let (u, node) = snap(t / self.step);
        let scale = 2.0 * self.norm * u.abs() / PI;
        let kk = resolve_k(trunc.into(), min_half_width(u), |kk| scale * reciprocal_tail(u, kk))?;
        let f = &self.b.v;
        let mut acc = f.clone();
        let s0 = sinc_f(u);
        if t != 0.0 && s0 != 0.0 {
            acc.axpy(t * s0, self.df());
        }
        let mut wsum = 0.0;
        let mut terms = 1;
        for k in 1..=kk as i64 {
            for k in [k, -k] {
                let w = u / k as f64 * sinc_f(u - k as f64);
                if w != 0.0 {
                    acc.axpy(w, &self.sample(k));
                    wsum += w;
                    terms += 1;
                }
            }
        }
        acc.axpy(-wsum, f);
        let tail_bound = if node { 0.0 } else { scale * reciprocal_tail(u, kk) };
        Ok(VectorEstimate { value: acc, tail_bound, terms })
    }

    /// e^{tD}f = sinc(σt/π)(f + tDf) + Σ_{k≠0} (σt/kπ)·sinc(σt/π − k)·e^{(kπ/σ)D}f.
    pub fn valiron_tschakaloff(&self, t: f64, trunc: impl Into<Truncation>) -> Result<VectorEstimate<G::Vector>> {
        check_finite("t", t)?;
        let (u, node) = snap(t / self.step);
        let scale = self.norm * u.abs() / PI;
        let kk = resolve_k(trunc.into(), min_half_width(u), |kk| scale * reciprocal_tail(u, kk))?;
        let f = &self.b.v;
        let mut acc = f.zeros_like();
        let s0 = sinc_f(u);
        let mut terms = 0;
        if s0 != 0.0 {
            acc.axpy(s0, f);
            if t != 0.0 {
                acc.axpy(t * s0, self.df());
            }
            terms += 1;
        }
        for k in 1..=kk as i64 {
            for k in [k, -k] {
                let w = u / k as f64 * sinc_f(u - k as f64);
                if w != 0.0 {
                    acc.axpy(w, &self.sample(k));
                    terms += 1;
                }
            }
        }
        let tail_bound = if node { 0.0 } else { scale * reciprocal_tail(u, kk) };
        Ok(VectorEstimate { value: acc, tail_bound, terms })
    }

    /// Recover f from the orbit data around t, fetched from the instance.
    pub fn recover_initial(&self, t: f64, trunc: impl Into<Truncation>) -> Result<VectorEstimate<G::Vector>> {
        let g = self.b.instance;
        let at_t = g.orbit(t, &self.b.v);
        let d_at_t = g.generator(&at_t);
        let step = self.step;
        recover_initial(self.b.sigma, t, &at_t, &d_at_t, |k| g.orbit(k as f64 * step + t, &self.b.v), trunc)
    }
}

pub fn orbit_reconstruct<G: GroupInstance>(
    b: &BernsteinVector<'_, G>,
    t: f64,
    trunc: impl Into<Truncation>,
) -> Result<VectorEstimate<G::Vector>> {
    OrbitSampler::new(b).reconstruct(t, trunc)
}

pub fn orbit_vt<G: GroupInstance>(
    b: &BernsteinVector<'_, G>,
    t: f64,
    trunc: impl Into<Truncation>,
) -> Result<VectorEstimate<G::Vector>> {
    OrbitSampler::new(b).valiron_tschakaloff(t, trunc)
}

/// f = e^{tD}f − t·sinc(σt/π)·e^{tD}Df − t·Σ_{k≠0} (e^{(kπ/σ+t)D}f − e^{tD}f)/(kπ/σ)·sinc(σt/π + k).
///
/// `at_t` = e^{tD}f, `d_at_t` = e^{tD}Df and `sample(k)` = e^{(kπ/σ + t)D}f;
/// f itself is never consulted.
pub fn recover_initial<V: LinearSpace>(
    sigma: f64,
    t: f64,
    at_t: &V,
    d_at_t: &V,
    sample: impl Fn(i64) -> V,
    trunc: impl Into<Truncation>,
) -> Result<VectorEstimate<V>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(domain(format!("type σ must be finite and > 0, got {sigma}")));
    }
    check_finite("t", t)?;
    let (u, node) = snap(sigma * t / PI);
    let scale = 2.0 * at_t.norm() * u.abs() / PI;
    let kk = resolve_k(trunc.into(), min_half_width(u), |kk| scale * reciprocal_tail(u, kk))?;
    let mut acc = at_t.clone();
    let s0 = sinc_f(u);
    if t != 0.0 && s0 != 0.0 {
        acc.axpy(-t * s0, d_at_t);
    }
    let mut wsum = 0.0;
    let mut terms = 1;
    for k in 1..=kk as i64 {
        for k in [k, -k] {
            let w = -u / k as f64 * sinc_f(u + k as f64);
            if w != 0.0 {
                acc.axpy(w, &sample(k));
                wsum += w;
                terms += 1;
            }
        }
    }
    acc.axpy(-wsum, at_t);
    let tail_bound = if node { 0.0 } else { scale * reciprocal_tail(u, kk) };
    Ok(VectorEstimate { value: acc, tail_bound, terms })
}

/// D^r f through the abstract Boas operator: Σ w·e^{sD}f over the Boas stencil.
pub fn group_boas<G: GroupInstance>(
    b: &BernsteinVector<'_, G>,
    r: u32,
    trunc: impl Into<Truncation>,
) -> Result<VectorEstimate<G::Vector>> {
    let norm = b.instance.norm(&b.v);
    let stencil = BoasStencil::new(r, b.sigma, trunc, norm)?;
    let mut acc = b.v.zeros_like();
    for (s, w) in stencil.nodes() {
        acc.axpy(w, &b.instance.orbit(s, &b.v));
    }
    Ok(VectorEstimate {
        value: acc,
        tail_bound: stencil.weight_tail() * norm,
        terms: stencil.terms(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialType {
    /// (‖D^k f‖/‖f‖)^{1/k} at k = k_max.
    pub estimate: f64,
    /// The same quantity for k = 1..=k_max.
    pub sequence: Vec<f64>,
}

/// (‖D^k f‖/‖f‖)^{1/k} for k ≤ k_max, accumulated in log space.
///
/// Dividing by ‖f‖ leaves the limit unchanged and makes the estimate exact on
/// single-frequency vectors.
pub fn exponential_type<G: GroupInstance>(instance: &G, v: &G::Vector, k_max: u32) -> Result<ExponentialType> {
    if k_max < 1 {
        return Err(domain("k_max must be ≥ 1"));
    }
    let n0 = instance.norm(v);
    if !(n0 > 0.0 && n0.is_finite()) {
        return Err(domain("exponential type needs a nonzero finite vector"));
    }
    let mut w = v.scaled(1.0 / n0);
    let mut log_norm = 0.0;
    let mut sequence = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        w = instance.generator(&w);
        let n = instance.norm(&w);
        if n == 0.0 {
            sequence.resize(k_max as usize, 0.0);
            break;
        }
        log_norm += n.ln();
        w = w.scaled(1.0 / n);
        sequence.push((log_norm / k as f64).exp());
    }
    Ok(ExponentialType { estimate: *sequence.last().unwrap(), sequence })
}

/// Worst residuals of the group axioms over a set of times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceResiduals {
    /// max |‖e^{tD}v‖ − ‖v‖|
    pub isometry: f64,
    /// max ‖e^{sD}e^{tD}v − e^{(s+t)D}v‖ over pairs of times
    pub group_law: f64,
    /// ‖(e^{εD}v − v)/ε − Dv‖ at ε = 1e−6
    pub generator: f64,
}

pub fn instance_residuals<G: GroupInstance>(instance: &G, v: &G::Vector, times: &[f64]) -> InstanceResiduals {
    let n0 = instance.norm(v);
    let mut iso: f64 = 0.0;
    let mut law: f64 = 0.0;
    for &t in times {
        let ot = instance.orbit(t, v);
        iso = iso.max((instance.norm(&ot) - n0).abs());
        for &s in times {
            let a = instance.orbit(s, &ot);
            let b = instance.orbit(s + t, v);
            law = law.max(instance.norm(&{
                let mut d = a;
                d.axpy(-1.0, &b);
                d
            }));
        }
    }
    let eps = 1e-6;
    let mut q = instance.orbit(eps, v);
    q.axpy(-1.0, v);
    let mut q = q.scaled(1.0 / eps);
    q.axpy(-1.0, &instance.generator(v));
    InstanceResiduals { isometry: iso, group_law: law, generator: instance.norm(&q) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &[f64], b: &[f64]) -> f64 {
        a.to_vec().distance(&b.to_vec())
    }

    #[test]
    fn rotation_examples() {
        let g = rotation_instance(&[2.0]).unwrap();
        let v = vec![1.0, 0.0];
        assert!(close(&g.orbit(PI / 2.0, &v), &[-1.0, 0.0]) < 1e-15);
        let mut w = v.clone();
        for k in 1..=8 {
            w = g.generator(&w);
            assert!((w.norm() - 2f64.powi(k)).abs() < 1e-12);
        }
        let r = instance_residuals(&g, &vec![0.3, -0.8], &[-2.0, 0.1, 0.7, 5.0]);
        assert!(r.isometry < 1e-14 && r.group_law < 1e-14 && r.generator < 1e-5);
        assert!(rotation_instance(&[]).is_err());
        assert!(rotation_instance(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn certification() {
        let g = rotation_instance(&[1.0, 3.0]).unwrap();
        let v = vec![1.0, 0.5, -0.2, 0.4];
        assert!(BernsteinVector::certify(&g, v.clone(), 3.0, 60).is_ok());
        assert!(BernsteinVector::certify(&g, v.clone(), 2.9, 60).is_err());
        assert_eq!(g.bernstein(v).unwrap().sigma(), 3.0);
        assert_eq!(g.bernstein(g.block_vector(0, (0.0, 2.0))).unwrap().sigma(), 1.0);
        assert!(g.bernstein(vec![0.0; 4]).is_err());
    }

    #[test]
    fn reconstruction_matches_rotation() {
        let g = rotation_instance(&[1.0]).unwrap();
        let b = g.bernstein(vec![0.6, -0.8]).unwrap();
        let s = OrbitSampler::new(&b);
        for t in [0.3, 0.7, 1.9, -2.4] {
            let exact = g.orbit(t, b.vector());
            let e1 = s.reconstruct(t, 1e-6).unwrap();
            let e2 = s.valiron_tschakaloff(t, 1e-6).unwrap();
            let e3 = s.recover_initial(t, 1e-6).unwrap();
            for (e, target) in [(&e1, &exact), (&e2, &exact), (&e3, b.vector())] {
                let err = close(&e.value, target);
                assert!(err <= e.tail_bound + 1e-12 && err < 1e-6, "t={t}: {err} > {}", e.tail_bound);
            }
        }
        assert!(s.cached_shells() > 0);
    }

    #[test]
    fn nodes_and_origin_are_exact() {
        let g = rotation_instance(&[1.3, 0.4]).unwrap();
        let b = g.bernstein(vec![0.2, 0.9, -1.0, 0.3]).unwrap();
        let s = OrbitSampler::new(&b);
        let h = s.step();
        for m in [-3i64, 0, 1, 5] {
            let t = m as f64 * h;
            let exact = g.orbit(t, b.vector());
            for e in [s.reconstruct(t, 1e-3).unwrap(), s.valiron_tschakaloff(t, 1e-3).unwrap()] {
                assert!(close(&e.value, &exact) < 1e-14, "m={m}");
                assert_eq!(e.tail_bound, 0.0);
            }
            let r = s.recover_initial(t, 1e-3).unwrap();
            assert!(close(&r.value, b.vector()) < 1e-14);
        }
        assert_eq!(s.reconstruct(0.0, 1e-3).unwrap().value, *b.vector());
    }

    #[test]
    fn critical_rate_tail_is_first_order() {
        // single block at its exact type: the truncation error decays like 1/K
        let g = rotation_instance(&[1.0]).unwrap();
        let b = g.bernstein(vec![1.0, 0.0]).unwrap();
        let s = OrbitSampler::new(&b);
        let t = 1.9;
        let exact = g.orbit(t, b.vector());
        let err = |k| close(&s.reconstruct(t, Truncation::HalfWidth(k)).unwrap().value, &exact);
        let ratio = err(1000) / err(2000);
        assert!((1.5..3.0).contains(&ratio), "{ratio}");
        // halving tol roughly doubles K
        let k1 = s.reconstruct(t, 1e-4).unwrap().terms;
        let k2 = s.reconstruct(t, 5e-5).unwrap().terms;
        let q = k2 as f64 / k1 as f64;
        assert!(q > 0.5 * 2.0 && q < 4.0 * 2.0, "{q}");
    }

    #[test]
    fn group_boas_reproduces_generator_powers() {
        let g = rotation_instance(&[0.5, 1.5]).unwrap();
        let b = g.bernstein(vec![0.3, -0.4, 0.8, 0.1]).unwrap();
        let mut d = b.vector().clone();
        for r in 1..=3 {
            d = g.generator(&d);
            let e = group_boas(&b, r, 5e-7).unwrap();
            let err = close(&e.value, &d);
            assert!(err <= e.tail_bound + 1e-12 && err < 1e-6, "r={r}: {err}");
            assert!(e.value.norm() <= 1.5f64.powi(r as i32) * b.vector().norm() * (1.0 + 1e-6));
        }
        assert!(group_boas(&b, 0, 1e-3).is_err());
    }

    #[test]
    fn exponential_type_examples() {
        let g = rotation_instance(&[1.0, 3.0]).unwrap();
        let e = exponential_type(&g, &g.block_vector(1, (0.3, 0.4)), 60).unwrap();
        assert!(e.sequence.iter().all(|s| (s - 3.0).abs() < 1e-12));
        let e = exponential_type(&g, &g.block_vector(0, (1.0, 0.0)), 60).unwrap();
        assert!((e.estimate - 1.0).abs() < 1e-12);
        let e = exponential_type(&g, &vec![1.0, 0.0, 1.0, 0.0], 60).unwrap();
        assert!(e.estimate < 3.0 && e.estimate > 2.97);
        assert!(e.sequence.windows(2).all(|w| w[1] >= w[0]));
        let big = rotation_instance(&[1e10]).unwrap();
        let e = exponential_type(&big, &vec![1.0, 0.0], 60).unwrap();
        assert!((e.estimate / 1e10 - 1.0).abs() < 1e-12);
        assert!(exponential_type(&g, &vec![0.0; 4], 5).is_err());
    }

    #[test]
    fn equivalent_characterizations_agree() {
        let g = rotation_instance(&[0.7, 2.2, 1.1]).unwrap();
        let v = g.block_vector(1, (0.5, -0.25));
        let b = BernsteinVector::certify(&g, v.clone(), 2.2, 40).unwrap();
        let mut d = v.clone();
        for r in 1..=2 {
            d = g.generator(&d);
            assert!(close(&group_boas(&b, r, 1e-6).unwrap().value, &d) < 1e-6);
        }
        assert!((exponential_type(&g, &v, 40).unwrap().estimate - 2.2).abs() < 1e-12);
    }

    #[test]
    fn unachievable_tolerance() {
        let g = rotation_instance(&[1.0]).unwrap();
        let b = g.bernstein(vec![1.0, 0.0]).unwrap();
        assert!(matches!(orbit_reconstruct(&b, 1.9, 1e-12), Err(Error::ToleranceUnachievable { .. })));
        assert!(orbit_vt(&b, 10.0, Truncation::HalfWidth(3)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn expansions_are_linear(a in -2.0f64..2.0, c in -2.0f64..2.0, t in -3.0f64..3.0) {
            let g = rotation_instance(&[1.0, 0.6]).unwrap();
            let (x, y) = (vec![1.0, 0.2, -0.3, 0.5], vec![-0.4, 0.9, 0.1, 0.0]);
            let mut z = x.scaled(a);
            z.axpy(c, &y);
            let k = Truncation::HalfWidth(200);
            let run = |v: &Vec<f64>| {
                let b = BernsteinVector::assume(&g, v.clone(), 1.0).unwrap();
                let s = OrbitSampler::new(&b);
                (s.reconstruct(t, k).unwrap().value, s.valiron_tschakaloff(t, k).unwrap().value, s.recover_initial(t, k).unwrap().value)
            };
            let (rx, ry, rz) = (run(&x), run(&y), run(&z));
            for (px, py, pz) in [(&rx.0, &ry.0, &rz.0), (&rx.1, &ry.1, &rz.1), (&rx.2, &ry.2, &rz.2)] {
                let mut comb = px.scaled(a);
                comb.axpy(c, py);
                prop_assert!(close(&comb, pz) < 1e-12);
            }
        }

        #[test]
        fn rotation_axioms(t in -50.0f64..50.0, s in -50.0f64..50.0, x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let g = rotation_instance(&[0.9, 2.5]).unwrap();
            let v = vec![x, y, y, -x];
            let r = instance_residuals(&g, &v, &[t, s]);
            prop_assert!(r.isometry < 1e-10 && r.group_law < 1e-10);
        }
    }
}
