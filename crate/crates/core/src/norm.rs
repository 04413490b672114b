use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An L^p / ℓ^p exponent, 1 ≤ p ≤ ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn finite(p: f64) -> Result<Self> {
        if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::Domain(format!("exponent must satisfy 1 ≤ p ≤ ∞, got {p}")))
        }
    }

    /// 1/p, zero for p = ∞.
    pub fn reciprocal(&self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// ‖v‖_p of a vector, with an optional weight on the p-th power sum.
    pub fn norm_weighted(&self, v: impl IntoIterator<Item = f64>, weight: f64) -> f64 {
        match *self {
            Exponent::Infinity => v.into_iter().fold(0.0, |m, x| m.max(x.abs())),
            Exponent::Finite(p) => {
                let s: f64 = v.into_iter().map(|x| x.abs().powf(p)).sum();
                (weight * s).powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::Input(format!("invalid exponent '{s}'")))?;
                Exponent::finite(p)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_norms() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::TWO);
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        let v = [3.0, -4.0];
        assert_eq!(Exponent::TWO.norm_weighted(v, 1.0), 5.0);
        assert_eq!(Exponent::ONE.norm_weighted(v, 2.0), 14.0);
        assert_eq!(Exponent::Infinity.norm_weighted(v, 1.0), 4.0);
    }
}
