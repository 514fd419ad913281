//! Parameter records, densities and raw moments of the three families.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, ln_gamma_diff, LogValue};

/// Which of the supported families a parameter record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistKind {
    Weibull,
    Gamma,
    LogNormal,
}

impl DistKind {
    pub const ALL: [DistKind; 3] = [DistKind::Weibull, DistKind::Gamma, DistKind::LogNormal];

    pub fn name(self) -> &'static str {
        match self {
            DistKind::Weibull => "weibull",
            DistKind::Gamma => "gamma",
            DistKind::LogNormal => "lognormal",
        }
    }

    /// Parameter names in record order: shape first for Weibull and Gamma,
    /// location first for Log-normal.
    pub fn param_names(self) -> [&'static str; 2] {
        match self {
            DistKind::Weibull => ["k", "lambda"],
            DistKind::Gamma => ["alpha", "beta"],
            DistKind::LogNormal => ["mu", "sigma"],
        }
    }
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weibull" => Ok(DistKind::Weibull),
            "gamma" => Ok(DistKind::Gamma),
            "lognormal" | "log-normal" => Ok(DistKind::LogNormal),
            other => Err(Error::domain(format!("unknown distribution {other:?}"))),
        }
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Weibull shape `k` and scale `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeibullParams {
    k: f64,
    lambda: f64,
}

impl WeibullParams {
    pub fn new(k: f64, lambda: f64) -> Result<Self> {
        require_positive("k", k)?;
        require_positive("lambda", lambda)?;
        Ok(Self { k, lambda })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Gamma shape `alpha` and scale `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    alpha: f64,
    beta: f64,
}

impl GammaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Log-normal log-location `mu` and log-scale `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalParams {
    mu: f64,
    sigma: f64,
}

impl LogNormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::domain(format!("mu must be finite, got {mu}")));
        }
        require_positive("sigma", sigma)?;
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A validated parameter record of one of the supported families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionParams {
    Weibull(WeibullParams),
    Gamma(GammaParams),
    LogNormal(LogNormalParams),
}

impl From<WeibullParams> for DistributionParams {
    fn from(p: WeibullParams) -> Self {
        DistributionParams::Weibull(p)
    }
}

impl From<GammaParams> for DistributionParams {
    fn from(p: GammaParams) -> Self {
        DistributionParams::Gamma(p)
    }
}

impl From<LogNormalParams> for DistributionParams {
    fn from(p: LogNormalParams) -> Self {
        DistributionParams::LogNormal(p)
    }
}

impl DistributionParams {
    /// Builds a record from its two parameters, in [`DistKind::param_names`] order.
    pub fn new(kind: DistKind, first: f64, second: f64) -> Result<Self> {
        Ok(match kind {
            DistKind::Weibull => WeibullParams::new(first, second)?.into(),
            DistKind::Gamma => GammaParams::new(first, second)?.into(),
            DistKind::LogNormal => LogNormalParams::new(first, second)?.into(),
        })
    }

    pub fn weibull(k: f64, lambda: f64) -> Result<Self> {
        Ok(WeibullParams::new(k, lambda)?.into())
    }

    pub fn gamma(alpha: f64, beta: f64) -> Result<Self> {
        Ok(GammaParams::new(alpha, beta)?.into())
    }

    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        Ok(LogNormalParams::new(mu, sigma)?.into())
    }

    pub fn kind(&self) -> DistKind {
        match self {
            DistributionParams::Weibull(_) => DistKind::Weibull,
            DistributionParams::Gamma(_) => DistKind::Gamma,
            DistributionParams::LogNormal(_) => DistKind::LogNormal,
        }
    }

    /// The two parameters in [`DistKind::param_names`] order.
    pub fn values(&self) -> [f64; 2] {
        match *self {
            DistributionParams::Weibull(p) => [p.k, p.lambda],
            DistributionParams::Gamma(p) => [p.alpha, p.beta],
            DistributionParams::LogNormal(p) => [p.mu, p.sigma],
        }
    }

    pub fn named_values(&self) -> [(&'static str, f64); 2] {
        let names = self.kind().param_names();
        let values = self.values();
        [(names[0], values[0]), (names[1], values[1])]
    }

    /// Probability density at `x`.
    ///
    /// Zero for `x < 0`. At `x = 0` the Log-normal density is its limit 0;
    /// Weibull with `k < 1` and Gamma with `alpha < 1` diverge there and
    /// return `f64::INFINITY`.
    pub fn pdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x < 0.0 {
            return 0.0;
        }
        match *self {
            DistributionParams::Weibull(WeibullParams { k, lambda }) => {
                if x == 0.0 {
                    return shape_at_origin(k, 1.0 / lambda);
                }
                let z = x / lambda;
                (k.ln() - lambda.ln() + (k - 1.0) * z.ln() - z.powf(k)).exp()
            }
            DistributionParams::Gamma(GammaParams { alpha, beta }) => {
                if x == 0.0 {
                    return shape_at_origin(alpha, 1.0 / beta);
                }
                (-alpha * beta.ln() - ln_gamma(alpha) + (alpha - 1.0) * x.ln() - x / beta).exp()
            }
            DistributionParams::LogNormal(LogNormalParams { mu, sigma }) => {
                if x == 0.0 {
                    return 0.0;
                }
                let z = (x.ln() - mu) / sigma;
                (-0.5 * z * z).exp() / ((2.0 * PI).sqrt() * sigma * x)
            }
        }
    }

    /// `ln E(X^i)`, computed without leaving the log domain.
    pub fn log_theoretical_moment(&self, i: f64) -> Result<LogValue> {
        require_positive("moment order", i)?;
        let v = match *self {
            DistributionParams::Weibull(WeibullParams { k, lambda }) => {
                i * lambda.ln() + ln_gamma(1.0 + i / k)
            }
            DistributionParams::Gamma(GammaParams { alpha, beta }) => {
                i * beta.ln() + ln_gamma_diff(alpha, i)
            }
            DistributionParams::LogNormal(LogNormalParams { mu, sigma }) => {
                mu * i + 0.5 * sigma * sigma * i * i
            }
        };
        if v.is_finite() {
            Ok(LogValue(v))
        } else {
            Err(Error::Overflow(format!("log moment of order {i}")))
        }
    }

    /// `E(X^i)`. Fails with [`Error::Overflow`] when the value is outside the
    /// positive normal range; use [`Self::log_theoretical_moment`] then.
    pub fn theoretical_moment(&self, i: f64) -> Result<f64> {
        let log = self.log_theoretical_moment(i)?;
        match log.exp() {
            Some(v) if v >= f64::MIN_POSITIVE => Ok(v),
            _ => Err(Error::Overflow(format!(
                "moment of order {i} (log value {})",
                log.value()
            ))),
        }
    }
}

fn shape_at_origin(shape: f64, rate: f64) -> f64 {
    if shape < 1.0 {
        f64::INFINITY
    } else if shape == 1.0 {
        rate
    } else {
        0.0
    }
}
