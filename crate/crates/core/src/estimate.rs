//! Moment-pair estimators.
//!
//! For each family the ratio `E(Xⁿ)^m / E(Xᵐ)^n` is free of the scale
//! parameter and strictly monotone in the shape parameter, so the shape is
//! found by bisection on that ratio and the scale (or location) is then
//! solved directly from the lower-order moment. All ratios are handled as
//! logarithms.
//!
//! | family     | ratio in log form                        | direction  |
//! |------------|------------------------------------------|------------|
//! | Weibull    | `m lnΓ(1+n/k) - n lnΓ(1+m/k)`            | decreasing |
//! | Gamma      | `m lnΓ(n+α) + n lnΓ(α) - n lnΓ(m+α) - m lnΓ(α)` | decreasing |
//! | Log-normal | `σ²(n-m)/2`, compared with `ln E(Xⁿ)/n - ln E(Xᵐ)/m` | increasing |

use crate::dist::{DistKind, DistributionParams, GammaParams, LogNormalParams, WeibullParams};
use crate::error::{Error, Result};
use crate::specfun::{
    gamma_ratio_unchecked, ln_gamma, ln_gamma_diff, lognormal_ratio_unchecked,
    weibull_ratio_unchecked,
};

/// Two raw moments of distinct orders `n > m > 0`, stored as logarithms so
/// that pairs whose moments overflow `f64` can still be represented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPair {
    n: f64,
    m: f64,
    log_moment_n: f64,
    log_moment_m: f64,
}

impl MomentPair {
    /// Pair from observed moments `E(Xⁿ)` and `E(Xᵐ)`.
    pub fn new(n: f64, m: f64, moment_n: f64, moment_m: f64) -> Result<Self> {
        for (name, v) in [("moment_n", moment_n), ("moment_m", moment_m)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Self::from_log_moments(n, m, moment_n.ln(), moment_m.ln())
    }

    /// Pair from `ln E(Xⁿ)` and `ln E(Xᵐ)`.
    pub fn from_log_moments(n: f64, m: f64, log_moment_n: f64, log_moment_m: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0 && n.is_finite() && n > m) {
            return Err(Error::domain(format!(
                "orders must satisfy n > m > 0, got n={n}, m={m}"
            )));
        }
        if !(log_moment_n.is_finite() && log_moment_m.is_finite()) {
            return Err(Error::domain("log moments must be finite"));
        }
        Ok(Self { n, m, log_moment_n, log_moment_m })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn log_moment_n(&self) -> f64 {
        self.log_moment_n
    }

    pub fn log_moment_m(&self) -> f64 {
        self.log_moment_m
    }

    /// `ln r = m ln E(Xⁿ) - n ln E(Xᵐ)`.
    pub fn log_ratio(&self) -> f64 {
        self.m * self.log_moment_n - self.n * self.log_moment_m
    }

    /// `ln g = ln E(Xⁿ)/n - ln E(Xᵐ)/m`, which equals `ln r / (nm)`.
    pub fn log_power_mean_ratio(&self) -> f64 {
        self.log_moment_n / self.n - self.log_moment_m / self.m
    }

    /// Strict power-mean inequality; every family needs it to have a solution.
    pub fn is_feasible(&self) -> bool {
        self.log_ratio() > 0.0
    }
}

/// Bisection settings.
///
/// `delta` is an absolute width on the parameter interval: the loop runs
/// while `hi - lo > delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub delta: f64,
    pub max_iterations: u32,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub max_expansions: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            delta: 1e-10,
            max_iterations: 200,
            bracket_lo: 1e-2,
            bracket_hi: 1e3,
            max_expansions: 60,
        }
    }
}

impl SolverConfig {
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_bracket(mut self, lo: f64, hi: f64) -> Self {
        self.bracket_lo = lo;
        self.bracket_hi = hi;
        self
    }

    pub fn with_max_iterations(mut self, n: u32) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_max_expansions(mut self, n: u32) -> Self {
        self.max_expansions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::domain(format!("tolerance must be positive, got {}", self.delta)));
        }
        if !(self.bracket_lo.is_finite() && self.bracket_lo > 0.0 && self.bracket_hi.is_finite())
            || self.bracket_lo >= self.bracket_hi
        {
            return Err(Error::domain(format!(
                "bracket must satisfy 0 < lo < hi, got [{}, {}]",
                self.bracket_lo, self.bracket_hi
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::domain("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A search interval whose endpoint values straddle a target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    /// Total halvings of `lo` plus doublings of `hi`.
    pub expansions: u32,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn straddles_low(value: f64, target: f64, dir: Monotonicity) -> bool {
    match dir {
        Monotonicity::Decreasing => value >= target,
        Monotonicity::Increasing => value <= target,
    }
}

fn straddles_high(value: f64, target: f64, dir: Monotonicity) -> bool {
    match dir {
        Monotonicity::Decreasing => value <= target,
        Monotonicity::Increasing => value >= target,
    }
}

/// Widens `[cfg.bracket_lo, cfg.bracket_hi]` geometrically until the
/// monotone `ratio` straddles `log_target`, halving `lo` and doubling `hi`
/// at most `cfg.max_expansions` times each.
pub fn select_bracket<F>(
    log_target: f64,
    ratio: F,
    direction: Monotonicity,
    cfg: &SolverConfig,
) -> Result<Bracket>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !log_target.is_finite() {
        return Err(Error::domain(format!("target must be finite, got {log_target}")));
    }
    let exhausted = |lo: f64, hi: f64| Error::BracketExhausted {
        target: log_target,
        lo,
        hi,
        expansions: cfg.max_expansions,
    };

    let mut lo = cfg.bracket_lo;
    let mut hi = cfg.bracket_hi;
    let mut expansions = 0;

    let mut steps = 0;
    while !straddles_low(ratio(lo), log_target, direction) {
        if steps == cfg.max_expansions {
            return Err(exhausted(lo, hi));
        }
        lo *= 0.5;
        steps += 1;
    }
    expansions += steps;

    steps = 0;
    while !straddles_high(ratio(hi), log_target, direction) {
        if steps == cfg.max_expansions {
            return Err(exhausted(lo, hi));
        }
        hi *= 2.0;
        steps += 1;
    }
    expansions += steps;

    Ok(Bracket { lo, hi, expansions })
}

/// Outcome of [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Midpoint of the final interval.
    pub root: f64,
    pub iterations: u32,
    pub final_width: f64,
}

/// Interval-halving search for `ratio(x) = target` inside `bracket`.
///
/// `observe` is called with `(lo, hi)` after every halving.
pub fn bisect<F, O>(
    ratio: F,
    direction: Monotonicity,
    target: f64,
    bracket: Bracket,
    cfg: &SolverConfig,
    mut observe: O,
) -> Result<Bisection>
where
    F: Fn(f64) -> f64,
    O: FnMut(f64, f64),
{
    let Bracket { mut lo, mut hi, .. } = bracket;
    let mut iterations = 0;
    while hi - lo > cfg.delta {
        if iterations == cfg.max_iterations {
            return Err(Error::IterationLimit { iterations, width: hi - lo });
        }
        let mid = (lo + hi) / 2.0;
        let overshoot = ratio(mid) > target;
        match (direction, overshoot) {
            (Monotonicity::Decreasing, true) | (Monotonicity::Increasing, false) => lo = mid,
            (Monotonicity::Decreasing, false) | (Monotonicity::Increasing, true) => hi = mid,
        }
        iterations += 1;
        observe(lo, hi);
    }
    Ok(Bisection {
        root: (lo + hi) / 2.0,
        iterations,
        final_width: hi - lo,
    })
}

/// Estimated parameters plus solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub params: DistributionParams,
    pub iterations: u32,
    pub expansions: u32,
    pub final_bracket_width: f64,
    /// Ratio at the estimate minus the observed ratio, both in log form.
    pub log_ratio_residual: f64,
    /// Search interval after expansion, before halving.
    pub search_bracket: (f64, f64),
}

struct ShapeSolve {
    shape: f64,
    bracket: Bracket,
    bisection: Bisection,
    residual: f64,
}

fn solve_shape<F>(ratio: F, direction: Monotonicity, target: f64, cfg: &SolverConfig) -> Result<ShapeSolve>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(target > 0.0) {
        return Err(Error::InfeasibleRatio { log_ratio: target });
    }
    let bracket = select_bracket(target, &ratio, direction, cfg)?;
    let bisection = bisect(&ratio, direction, target, bracket, cfg, |_, _| {})?;
    let shape = bisection.root;
    Ok(ShapeSolve {
        shape,
        bracket,
        bisection,
        residual: ratio(shape) - target,
    })
}

fn finish(params: DistributionParams, s: ShapeSolve) -> FitResult {
    FitResult {
        params,
        iterations: s.bisection.iterations,
        expansions: s.bracket.expansions,
        final_bracket_width: s.bisection.final_width,
        log_ratio_residual: s.residual,
        search_bracket: (s.bracket.lo, s.bracket.hi),
    }
}

fn exp_scale(name: &str, log_value: f64) -> Result<f64> {
    let v = log_value.exp();
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{name} (log value {log_value})")))
    }
}

/// Weibull shape `k` by bisection on the decreasing ratio, then
/// `λ = (E(Xᵐ) / Γ(1 + m/k))^{1/m}`.
pub fn fit_weibull(mp: &MomentPair, cfg: &SolverConfig) -> Result<FitResult> {
    let (n, m) = (mp.n, mp.m);
    let s = solve_shape(
        |k| weibull_ratio_unchecked(k, n, m),
        Monotonicity::Decreasing,
        mp.log_ratio(),
        cfg,
    )?;
    let k = s.shape;
    let lambda = exp_scale("lambda", (mp.log_moment_m - ln_gamma(1.0 + m / k)) / m)?;
    Ok(finish(WeibullParams::new(k, lambda)?.into(), s))
}

/// Gamma shape `α` by bisection on the decreasing ratio, then
/// `β = (E(Xᵐ) Γ(α) / Γ(m+α))^{1/m}`.
pub fn fit_gamma(mp: &MomentPair, cfg: &SolverConfig) -> Result<FitResult> {
    let (n, m) = (mp.n, mp.m);
    let s = solve_shape(
        |a| gamma_ratio_unchecked(a, n, m),
        Monotonicity::Decreasing,
        mp.log_ratio(),
        cfg,
    )?;
    let alpha = s.shape;
    let beta = exp_scale("beta", (mp.log_moment_m - ln_gamma_diff(alpha, m)) / m)?;
    Ok(finish(GammaParams::new(alpha, beta)?.into(), s))
}

/// Log-normal `σ` by bisection on the increasing `ln G(σ) = σ²(n-m)/2`
/// against `ln g`, then `μ = ln E(Xᵐ)/m - σ²m/2`.
///
/// The residual in the result is measured against `ln g`, not `ln r`.
pub fn fit_lognormal(mp: &MomentPair, cfg: &SolverConfig) -> Result<FitResult> {
    let (n, m) = (mp.n, mp.m);
    let target = mp.log_power_mean_ratio();
    if !(mp.log_ratio() > 0.0) {
        return Err(Error::InfeasibleRatio { log_ratio: mp.log_ratio() });
    }
    let s = solve_shape(
        |sigma| lognormal_ratio_unchecked(sigma, n, m),
        Monotonicity::Increasing,
        target,
        cfg,
    )?;
    let sigma = s.shape;
    let mu = mp.log_moment_m / m - 0.5 * sigma * sigma * m;
    Ok(finish(LogNormalParams::new(mu, sigma)?.into(), s))
}

/// Dispatches to the estimator for `kind`.
pub fn fit(kind: DistKind, mp: &MomentPair, cfg: &SolverConfig) -> Result<FitResult> {
    match kind {
        DistKind::Weibull => fit_weibull(mp, cfg),
        DistKind::Gamma => fit_gamma(mp, cfg),
        DistKind::LogNormal => fit_lognormal(mp, cfg),
    }
}
