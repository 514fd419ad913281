//! Parameter estimation for the Weibull, Gamma and Log-normal families from
//! any pair of raw moments `E(Xⁿ)`, `E(Xᵐ)` with `n > m > 0`.
//!
//! The shape parameter is recovered by bisection on a scale-free moment
//! ratio that is strictly monotone in the shape; the scale (or log-location)
//! then follows in closed form from the lower-order moment.
//!
//! ```
//! use momfit::{fit_weibull, MomentPair, SolverConfig};
//!
//! // Exponential distribution: E(X) = 1, E(X²) = 2.
//! let mp = MomentPair::new(2.0, 1.0, 2.0, 1.0).unwrap();
//! let fit = fit_weibull(&mp, &SolverConfig::default()).unwrap();
//! let [k, lambda] = fit.params.values();
//! assert!((k - 1.0).abs() < 1e-9 && (lambda - 1.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod dist;
pub mod empirical;
pub mod error;
pub mod estimate;
pub mod specfun;
pub mod synth;

pub use dist::{DistKind, DistributionParams, GammaParams, LogNormalParams, WeibullParams};
pub use empirical::{compute_raw_moments, load_samples, log_raw_moments, SampleFormat, SampleSummary};
pub use error::{Error, Result};
pub use estimate::{
    bisect, fit, fit_gamma, fit_lognormal, fit_weibull, select_bracket, Bisection, Bracket,
    FitResult, MomentPair, Monotonicity, SolverConfig,
};
pub use specfun::{log_gamma, log_gamma_ratio, log_lognormal_ratio, log_weibull_ratio, LogValue};
pub use synth::{sample, SeededGenerator};
