//! Canonical-link exponential families.
//!
//! A working model is fixed by its cumulant function `b`; the conditional
//! mean is `b'(x'θ)` and the working variance is `b''(x'θ)`. The nuisance
//! term `c(y)` of the density never depends on θ and is not represented.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentialFamily {
    /// `b(η) = η²/2`.
    Gaussian,
    /// `b(η) = log(1 + e^η)`.
    #[serde(rename = "logit")]
    BernoulliLogit,
    /// `b(η) = e^η`.
    Poisson,
}

/// Logistic function without overflow for large `|x|`.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

impl ExponentialFamily {
    pub const ALL: [ExponentialFamily; 3] = [
        ExponentialFamily::Gaussian,
        ExponentialFamily::BernoulliLogit,
        ExponentialFamily::Poisson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExponentialFamily::Gaussian => "gaussian",
            ExponentialFamily::BernoulliLogit => "logit",
            ExponentialFamily::Poisson => "poisson",
        }
    }

    /// Cumulant `b(η)`, unchecked.
    #[inline]
    pub fn b(self, eta: f64) -> f64 {
        match self {
            ExponentialFamily::Gaussian => 0.5 * eta * eta,
            ExponentialFamily::BernoulliLogit => eta.max(0.0) + (-eta.abs()).exp().ln_1p(),
            ExponentialFamily::Poisson => eta.exp(),
        }
    }

    /// Mean function `b'(η)`, unchecked.
    #[inline]
    pub fn db(self, eta: f64) -> f64 {
        match self {
            ExponentialFamily::Gaussian => eta,
            ExponentialFamily::BernoulliLogit => sigmoid(eta),
            ExponentialFamily::Poisson => eta.exp(),
        }
    }

    /// Variance function `b''(η)`, unchecked.
    #[inline]
    pub fn d2b(self, eta: f64) -> f64 {
        match self {
            ExponentialFamily::Gaussian => 1.0,
            ExponentialFamily::BernoulliLogit => {
                let mu = sigmoid(eta);
                mu * (1.0 - mu)
            }
            ExponentialFamily::Poisson => eta.exp(),
        }
    }

    /// `b'''(η)`, unchecked.
    #[inline]
    pub fn d3b(self, eta: f64) -> f64 {
        match self {
            ExponentialFamily::Gaussian => 0.0,
            ExponentialFamily::BernoulliLogit => {
                let mu = sigmoid(eta);
                mu * (1.0 - mu) * (1.0 - 2.0 * mu)
            }
            ExponentialFamily::Poisson => eta.exp(),
        }
    }

    /// Checked cumulant.
    pub fn cumulant(self, eta: f64) -> Result<f64> {
        if !eta.is_finite() {
            return Err(Error::Domain(format!("cumulant argument must be finite, got {eta}")));
        }
        Ok(self.b(eta))
    }

    /// Checked derivative of the cumulant, `order` in `1..=3`.
    pub fn cumulant_deriv(self, eta: f64, order: u8) -> Result<f64> {
        if !eta.is_finite() {
            return Err(Error::Domain(format!("cumulant argument must be finite, got {eta}")));
        }
        match order {
            1 => Ok(self.db(eta)),
            2 => Ok(self.d2b(eta)),
            3 => Ok(self.d3b(eta)),
            _ => Err(Error::Domain(format!("derivative order must be 1, 2 or 3, got {order}"))),
        }
    }
}

impl fmt::Display for ExponentialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExponentialFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(ExponentialFamily::Gaussian),
            "logit" => Ok(ExponentialFamily::BernoulliLogit),
            "poisson" => Ok(ExponentialFamily::Poisson),
            _ => Err(Error::UnknownName {
                kind: "family",
                name: s.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use ExponentialFamily::*;

    #[test]
    fn cumulant_values() {
        assert!((BernoulliLogit.cumulant(0.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(Gaussian.cumulant(2.0).unwrap(), 2.0);
        assert_eq!(Poisson.cumulant(0.0).unwrap(), 1.0);
    }

    #[test]
    fn derivative_values() {
        assert_eq!(BernoulliLogit.cumulant_deriv(0.0, 1).unwrap(), 0.5);
        assert_eq!(Gaussian.cumulant_deriv(7.3, 2).unwrap(), 1.0);
        assert_eq!(BernoulliLogit.cumulant_deriv(0.0, 2).unwrap(), 0.25);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Gaussian.cumulant(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(Poisson.cumulant(f64::INFINITY), Err(Error::Domain(_))));
        assert!(matches!(BernoulliLogit.cumulant_deriv(0.0, 0), Err(Error::Domain(_))));
        assert!(matches!(BernoulliLogit.cumulant_deriv(0.0, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn logit_is_overflow_safe() {
        for eta in [-800.0, -710.0, 710.0, 800.0] {
            for order in 1..=3 {
                assert!(BernoulliLogit.cumulant_deriv(eta, order).unwrap().is_finite());
            }
            assert!(BernoulliLogit.b(eta).is_finite());
        }
        assert_eq!(BernoulliLogit.b(800.0), 800.0);
        assert_eq!(BernoulliLogit.b(-800.0), 0.0);
    }

    #[test]
    fn convex_on_grid() {
        for family in ExponentialFamily::ALL {
            for i in 0..=600 {
                let eta = -30.0 + 0.1 * i as f64;
                assert!(family.d2b(eta) >= 0.0, "{family} at {eta}");
            }
        }
    }

    #[test]
    fn finite_differences_match() {
        let h = 1e-5;
        for family in ExponentialFamily::ALL {
            for i in 0..=400 {
                let eta = -20.0 + 0.1 * i as f64;
                let d1 = (family.b(eta + h) - family.b(eta - h)) / (2.0 * h);
                let d2 = (family.db(eta + h) - family.db(eta - h)) / (2.0 * h);
                let d3 = (family.d2b(eta + h) - family.d2b(eta - h)) / (2.0 * h);
                assert!((d1 - family.db(eta)).abs() <= 1e-6 * (1.0 + family.db(eta).abs()), "{family} b' at {eta}");
                assert!((d2 - family.d2b(eta)).abs() <= 1e-6 * (1.0 + family.d2b(eta).abs()), "{family} b'' at {eta}");
                assert!((d3 - family.d3b(eta)).abs() <= 1e-6 * (1.0 + family.d3b(eta).abs()), "{family} b''' at {eta}");
            }
        }
    }

    #[test]
    fn parses_names() {
        for family in ExponentialFamily::ALL {
            assert_eq!(family.name().parse::<ExponentialFamily>().unwrap(), family);
        }
        assert!("probit".parse::<ExponentialFamily>().is_err());
    }

    proptest! {
        #[test]
        fn logit_symmetry(eta in -40.0f64..40.0) {
            let f = BernoulliLogit;
            prop_assert!((f.db(-eta) - (1.0 - f.db(eta))).abs() < 1e-15);
            prop_assert!((f.d2b(-eta) - f.d2b(eta)).abs() < 1e-15);
        }
    }
}
