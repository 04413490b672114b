use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::function::BandlimitedFn;
use crate::error::{domain, Result};

/// Model for samples outside the stored window.
///
/// With j ≥ 0 the distance past the window edge, |f(kh)| ≤ bound·(scale/(scale + j))^decay.
/// `decay = 0` means only the uniform bound is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleTail {
    pub bound: f64,
    pub decay: f64,
    pub scale: f64,
}

impl SampleTail {
    pub fn bounded(bound: f64) -> Self {
        SampleTail { bound, decay: 0.0, scale: 1.0 }
    }

    pub fn zero() -> Self {
        SampleTail::bounded(0.0)
    }

    /// Bound on |f| at distance j ≥ 0 beyond the edge.
    pub fn at(&self, j: f64) -> f64 {
        if self.decay == 0.0 {
            self.bound
        } else {
            self.bound * (self.scale / (self.scale + j)).powf(self.decay)
        }
    }
}

/// Equally spaced samples f(kh), k ∈ [k_min, k_max].
#[derive(Debug, Clone, PartialEq)]
pub struct UniformSamples {
    sigma: f64,
    h: f64,
    k_min: i64,
    values: Vec<f64>,
    tail: SampleTail,
}

impl UniformSamples {
    pub fn new(sigma: f64, h: f64, k_min: i64, values: Vec<f64>, tail: SampleTail) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain(format!("bandwidth σ must be finite and > 0, got {sigma}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(domain(format!("step h must be finite and > 0, got {h}")));
        }
        if values.is_empty() {
            return Err(domain("sample window is empty"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!("sample at k = {} is not finite", k_min + i as i64)));
        }
        if !(tail.bound >= 0.0 && tail.bound.is_finite()) {
            return Err(domain(format!("tail bound must be finite and ≥ 0, got {}", tail.bound)));
        }
        if !(tail.decay >= 0.0 && tail.decay.is_finite() && tail.scale > 0.0 && tail.scale.is_finite()) {
            return Err(domain("tail decay must be ≥ 0 and tail scale > 0"));
        }
        Ok(UniformSamples { sigma, h, k_min, values, tail })
    }

    /// Sample `f` on k ∈ [k_min, k_max] at step h. The tail model comes from
    /// the decay certificate when the window straddles 0, else from sup_bound.
    pub fn from_fn(f: &BandlimitedFn, h: f64, k_min: i64, k_max: i64) -> Result<Self> {
        if k_max < k_min {
            return Err(domain(format!("empty window [{k_min}, {k_max}]")));
        }
        let values = (k_min..=k_max).map(|k| f.eval(k as f64 * h)).collect();
        let tail = match f.decay() {
            Some(d) if k_min <= 0 && k_max >= 0 => {
                // nearest out-of-window node index is ≥ r in magnitude
                let r = (k_max + 1).min(1 - k_min) as f64;
                SampleTail { bound: d.scale * (h * r).powf(-d.power), decay: d.power, scale: r }
            }
            _ => SampleTail::bounded(f.sup_bound()),
        };
        Self::new(f.sigma(), h, k_min, values, tail)
    }

    /// Critical-rate samples at kπ/σ.
    pub fn critical(f: &BandlimitedFn, k_min: i64, k_max: i64) -> Result<Self> {
        Self::from_fn(f, PI / f.sigma(), k_min, k_max)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> SampleTail {
        self.tail
    }

    /// f(kh) if k is in the window.
    pub fn get(&self, k: i64) -> Option<f64> {
        if k < self.k_min || k > self.k_max() {
            None
        } else {
            Some(self.values[(k - self.k_min) as usize])
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.k_min + i as i64, v))
    }

    /// Same samples with different values; used for superposition checks.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(domain("replacement values must match the window length"));
        }
        Self::new(self.sigma, self.h, self.k_min, values, self.tail)
    }

    pub fn sidecar(&self) -> SampleSidecar {
        SampleSidecar {
            sigma: self.sigma,
            h: self.h,
            k_min: self.k_min,
            k_max: self.k_max(),
            tail_bound: self.tail.bound,
            tail_decay: (self.tail.decay != 0.0).then_some(self.tail.decay),
            tail_scale: (self.tail.decay != 0.0).then_some(self.tail.scale),
        }
    }
}

/// JSON metadata accompanying a `k,value` sample file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSidecar {
    pub sigma: f64,
    pub h: f64,
    pub k_min: i64,
    pub k_max: i64,
    pub tail_bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_decay: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_scale: Option<f64>,
}

impl SampleSidecar {
    pub fn tail(&self) -> SampleTail {
        match self.tail_decay {
            Some(p) if p > 0.0 => SampleTail {
                bound: self.tail_bound,
                decay: p,
                scale: self.tail_scale.unwrap_or(1.0),
            },
            _ => SampleTail::bounded(self.tail_bound),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{make_reference, Reference};

    #[test]
    fn decay_model_dominates_out_of_window_samples() {
        for id in [Reference::Sinc, Reference::Fejer] {
            let f = make_reference(id, 1.3).unwrap();
            let s = UniformSamples::critical(&f, -40, 25).unwrap();
            let t = s.tail();
            for j in 0..5000 {
                let right = f.eval((s.k_max() + 1 + j) as f64 * s.h()).abs();
                let left = f.eval((s.k_min() - 1 - j) as f64 * s.h()).abs();
                assert!(right.max(left) <= t.at(j as f64) * (1.0 + 1e-12), "{id} j={j}");
            }
        }
    }

    #[test]
    fn validation() {
        assert!(UniformSamples::new(1.0, 0.0, 0, vec![1.0], SampleTail::zero()).is_err());
        assert!(UniformSamples::new(1.0, 1.0, 0, vec![], SampleTail::zero()).is_err());
        assert!(UniformSamples::new(1.0, 1.0, 0, vec![f64::NAN], SampleTail::zero()).is_err());
        let s = UniformSamples::new(1.0, 1.0, -2, vec![1.0, 2.0, 3.0], SampleTail::zero()).unwrap();
        assert_eq!((s.k_max(), s.get(-1), s.get(1)), (0, Some(2.0), None));
    }

    #[test]
    fn sidecar_round_trip() {
        let f = make_reference(Reference::Fejer, 2.0).unwrap();
        let s = UniformSamples::critical(&f, -10, 10).unwrap();
        let j = serde_json::to_string(&s.sidecar()).unwrap();
        let back: SampleSidecar = serde_json::from_str(&j).unwrap();
        assert_eq!(back.tail(), s.tail());
        let err = serde_json::from_str::<SampleSidecar>(r#"{"h":1,"k_min":0,"k_max":1,"tail_bound":0}"#)
            .unwrap_err();
        assert!(err.to_string().contains("sigma"));
    }
}
