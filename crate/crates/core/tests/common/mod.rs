#![allow(dead_code)]

use momfit::{DistKind, DistributionParams};

pub const SHAPES: [f64; 6] = [0.3, 0.5, 1.0, 2.0, 5.0, 10.0];
pub const SCALES: [f64; 3] = [0.5, 1.0, 3.0];
pub const LOCATIONS: [f64; 3] = [-1.0, 0.0, 2.0];
pub const ORDER_PAIRS: [(f64, f64); 5] = [(2.0, 1.0), (3.0, 1.0), (3.0, 2.0), (4.0, 2.0), (2.5, 1.0)];

/// Every (shape/σ, scale/μ) combination of the round-trip grid.
pub fn parameter_grid(kind: DistKind) -> Vec<DistributionParams> {
    let mut out = Vec::new();
    for &shape in &SHAPES {
        match kind {
            DistKind::LogNormal => {
                for &mu in &LOCATIONS {
                    out.push(DistributionParams::lognormal(mu, shape).unwrap());
                }
            }
            _ => {
                for &scale in &SCALES {
                    out.push(DistributionParams::new(kind, shape, scale).unwrap());
                }
            }
        }
    }
    out
}

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`, pre-split into `panels` pieces
/// so narrow peaks are not skipped by the first coarse estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = lo + h;
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(&f, lo, hi, fa, fm, fb, whole, eps / panels as f64, 50)
        })
        .sum()
}

/// Log-space limits `[ln x_lo, ln x_hi]` outside which the analytic tail
/// mass of each family is below 1e-7 on each side.
pub fn log_support(p: &DistributionParams) -> (f64, f64) {
    let tail = 1e-7f64.ln();
    match p.kind() {
        DistKind::Weibull => {
            let [k, lambda] = p.values();
            // P(X < x) ≈ (x/λ)^k ; P(X > x) = exp(-(x/λ)^k)
            (lambda.ln() + tail / k, lambda.ln() + (-tail).ln() / k)
        }
        DistKind::Gamma => {
            let [alpha, beta] = p.values();
            // P(X < x) ≤ (x/β)^α / Γ(α+1), and Γ(α+1) > 0.88
            let lower = beta.ln() + (tail - 1.0) / alpha;
            let upper = beta * (alpha + 12.0 * alpha.sqrt() + 40.0);
            (lower, upper.ln())
        }
        DistKind::LogNormal => {
            let [mu, sigma] = p.values();
            (mu - 6.0 * sigma, mu + 6.0 * sigma)
        }
    }
}

/// `∫ x^power f(x) dx`, integrated in `u = ln x`.
pub fn density_integral(p: &DistributionParams, power: f64, extra_upper: f64) -> f64 {
    let (lo, hi) = log_support(p);
    let g = |u: f64| {
        let x = u.exp();
        p.pdf(x) * x.powf(power + 1.0)
    };
    integrate(g, lo, hi + extra_upper, 1e-10, 400)
}
