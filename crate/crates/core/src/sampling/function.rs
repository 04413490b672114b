use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::sinc::{sinc_deriv, sinc_f};

pub type Handle = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Decay certificate |f(x)| ≤ scale·|x|^{−power} on ℝ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub scale: f64,
    pub power: f64,
}

/// A function of exponential type σ bounded by `sup_bound` on the real line.
#[derive(Clone)]
pub struct BandlimitedFn {
    sigma: f64,
    sup_bound: f64,
    eval: Handle,
    deriv: Option<Handle>,
    decay: Option<Decay>,
}

impl fmt::Debug for BandlimitedFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandlimitedFn")
            .field("sigma", &self.sigma)
            .field("sup_bound", &self.sup_bound)
            .field("has_derivative", &self.deriv.is_some())
            .field("decay", &self.decay)
            .finish()
    }
}

impl BandlimitedFn {
    pub fn new(
        sigma: f64,
        sup_bound: f64,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain(format!("type σ must be finite and > 0, got {sigma}")));
        }
        if !(sup_bound >= 0.0 && sup_bound.is_finite()) {
            return Err(domain(format!("sup bound must be finite and ≥ 0, got {sup_bound}")));
        }
        Ok(BandlimitedFn {
            sigma,
            sup_bound,
            eval: Arc::new(eval),
            deriv: None,
            decay: None,
        })
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv = Some(Arc::new(d));
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = Some(decay);
        self
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn decay(&self) -> Option<Decay> {
        self.decay
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn deriv_eval(&self, x: f64) -> Option<f64> {
        self.deriv.as_ref().map(|d| d(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    /// x ↦ f(x + s). The decay certificate does not survive translation.
    pub fn shifted(&self, s: f64) -> Self {
        let e = self.eval.clone();
        BandlimitedFn {
            sigma: self.sigma,
            sup_bound: self.sup_bound,
            eval: Arc::new(move |x| e(x + s)),
            deriv: self.deriv.clone().map(|d| -> Handle { Arc::new(move |x| d(x + s)) }),
            decay: None,
        }
    }

    /// Same function, different declared type. Widening is always sound.
    pub fn with_sigma(mut self, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain(format!("type σ must be finite and > 0, got {sigma}")));
        }
        self.sigma = sigma;
        Ok(self)
    }
}

/// Reference functions with closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    /// sin(σx + φ)
    Sin { phase: f64 },
    /// cos(σx)
    Cos,
    /// sinc(σx/π) = sin(σx)/(σx)
    Sinc,
    /// sinc²(σx/2π), the Fejér kernel of type σ
    Fejer,
    /// f ≡ 1
    Const,
}

impl Reference {
    pub const ALL: [Reference; 5] = [
        Reference::Sin { phase: 0.0 },
        Reference::Cos,
        Reference::Sinc,
        Reference::Fejer,
        Reference::Const,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Reference::Sin { .. } => "sin",
            Reference::Cos => "cos",
            Reference::Sinc => "sinc",
            Reference::Fejer => "fejer",
            Reference::Const => "const",
        }
    }
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin" => Ok(Reference::Sin { phase: 0.0 }),
            "cos" => Ok(Reference::Cos),
            "sinc" => Ok(Reference::Sinc),
            "fejer" => Ok(Reference::Fejer),
            "const" => Ok(Reference::Const),
            other => Err(Error::Input(format!(
                "unknown reference function '{other}' (expected sin, cos, sinc, fejer or const)"
            ))),
        }
    }
}

/// Build a reference function of type σ with its first-derivative handle.
///
/// The constant has true type 0; it is declared with the requested σ, which
/// every positive σ bounds.
pub fn make_reference(id: Reference, sigma: f64) -> Result<BandlimitedFn> {
    let s = sigma;
    let f = match id {
        Reference::Sin { phase } => BandlimitedFn::new(s, 1.0, move |x| (s * x + phase).sin())?
            .with_derivative(move |x| s * (s * x + phase).cos()),
        Reference::Cos => BandlimitedFn::new(s, 1.0, move |x| (s * x).cos())?
            .with_derivative(move |x| -s * (s * x).sin()),
        Reference::Sinc => BandlimitedFn::new(s, 1.0, move |x| sinc_f(s * x / PI))?
            .with_derivative(move |x| s / PI * sinc_deriv(1, s * x / PI))
            .with_decay(Decay { scale: 1.0 / s, power: 1.0 }),
        Reference::Fejer => BandlimitedFn::new(s, 1.0, move |x| {
            let v = sinc_f(s * x / (2.0 * PI));
            v * v
        })?
        .with_derivative(move |x| {
            let u = s * x / (2.0 * PI);
            2.0 * sinc_f(u) * sinc_deriv(1, u) * s / (2.0 * PI)
        })
        .with_decay(Decay { scale: 4.0 / (s * s), power: 2.0 }),
        Reference::Const => BandlimitedFn::new(s, 1.0, |_| 1.0)?.with_derivative(|_| 0.0),
    };
    Ok(f)
}
