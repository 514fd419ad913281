//! Reproducible random variates.
//!
//! The uniform source is xoshiro256** seeded through SplitMix64 (the
//! reference seeding of that generator), so a seed names the same stream on
//! every platform. Stream `s` of a seed is the base state advanced by `s`
//! jumps of 2^128 steps.
//!
//! Uniforms are drawn from the open interval (0, 1) as
//! `((x >> 11) + 0.5) / 2^53`. Standard normals are obtained by inverse
//! transform through Wichura's AS241 quantile approximation, which keeps the
//! whole pipeline free of rejection loops except in the Gamma sampler.
//!
//! * Weibull: `λ (-ln U)^{1/k}`.
//! * Log-normal: `exp(μ + σ Z)`.
//! * Gamma, shape ≥ 1: Marsaglia-Tsang squeeze/acceptance over `(1 + cZ)^3`.
//!   Shape < 1 draws with shape + 1 and multiplies by `U^{1/α}`.
//!
//! Results are clamped into `[f64::MIN_POSITIVE, f64::MAX]`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::dist::{DistributionParams, GammaParams, LogNormalParams, WeibullParams};
use crate::error::{Error, Result};

/// Deterministic uniform/normal source.
#[derive(Debug, Clone)]
pub struct SeededGenerator {
    seed: u64,
    stream: u64,
    rng: Xoshiro256StarStar,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent stream `stream` of `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
        for _ in 0..stream {
            rng.jump();
        }
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval (0, 1).
    pub fn next_uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64 + 0.5) * SCALE
    }

    pub fn next_normal(&mut self) -> f64 {
        normal_quantile(self.next_uniform())
    }
}

// Wichura, AS241 (PPND16) coefficients.
const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn horner(coeffs: &[f64; 8], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Standard normal quantile for `p` in (0, 1), relative error about 1e-16.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * horner(&A, r) / horner(&B, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        horner(&C, r) / horner(&D, r)
    } else {
        r -= 5.0;
        horner(&E, r) / horner(&F, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

fn clamp_positive(x: f64) -> f64 {
    x.clamp(f64::MIN_POSITIVE, f64::MAX)
}

fn weibull_variate(p: &WeibullParams, gen: &mut SeededGenerator) -> f64 {
    let u = gen.next_uniform();
    clamp_positive(p.lambda() * (-u.ln()).powf(1.0 / p.k()))
}

fn lognormal_variate(p: &LogNormalParams, gen: &mut SeededGenerator) -> f64 {
    clamp_positive((p.mu() + p.sigma() * gen.next_normal()).exp())
}

/// Unit-scale Gamma variate with shape ≥ 1.
fn marsaglia_tsang(shape: f64, gen: &mut SeededGenerator) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let z = gen.next_normal();
        let v = 1.0 + c * z;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = gen.next_uniform();
        let z2 = z * z;
        if u < 1.0 - 0.0331 * z2 * z2 || u.ln() < 0.5 * z2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

fn gamma_variate(p: &GammaParams, gen: &mut SeededGenerator) -> f64 {
    let alpha = p.alpha();
    let x = if alpha >= 1.0 {
        marsaglia_tsang(alpha, gen).ln()
    } else {
        let g = marsaglia_tsang(alpha + 1.0, gen);
        g.ln() + gen.next_uniform().ln() / alpha
    };
    clamp_positive((x + p.beta().ln()).exp())
}

/// One variate from `params`.
pub fn variate(params: &DistributionParams, gen: &mut SeededGenerator) -> f64 {
    match params {
        DistributionParams::Weibull(p) => weibull_variate(p, gen),
        DistributionParams::Gamma(p) => gamma_variate(p, gen),
        DistributionParams::LogNormal(p) => lognormal_variate(p, gen),
    }
}

/// `count` variates from `params`, drawn in order from `gen`.
pub fn sample(params: &DistributionParams, count: usize, gen: &mut SeededGenerator) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    Ok((0..count).map(|_| variate(params, gen)).collect())
}
