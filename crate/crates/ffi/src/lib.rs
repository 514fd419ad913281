//! C ABI over `momfit`.
//!
//! Every fallible entry point returns a [`MomfitStatus`]; results are written
//! through out-pointers only on `MOMFIT_STATUS_OK`. The text of the most recent
//! failure on the calling thread is available from
//! [`momfit_last_error_message`]. Solver settings and random generators are
//! opaque heap handles owned by the caller and released with the matching
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use momfit::{DistKind, DistributionParams, MomentPair, SeededGenerator, SolverConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomfitStatus {
    Ok = 0,
    NullPointer = 1,
    DomainError = 2,
    InfeasibleRatio = 3,
    BracketExhausted = 4,
    IterationLimit = 5,
    ParseError = 6,
    Overflow = 7,
    IoError = 8,
    Panic = 9,
}

/// Distribution family selector. Any other value is a domain error.
pub type MomfitDist = u32;
pub const MOMFIT_DIST_WEIBULL: MomfitDist = 0;
pub const MOMFIT_DIST_GAMMA: MomfitDist = 1;
pub const MOMFIT_DIST_LOGNORMAL: MomfitDist = 2;

/// Two-parameter record. `a`, `b` are (k, lambda), (alpha, beta) or
/// (mu, sigma) depending on `dist`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MomfitParams {
    pub dist: MomfitDist,
    pub a: f64,
    pub b: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MomfitFitResult {
    pub params: MomfitParams,
    pub iterations: u32,
    pub expansions: u32,
    pub final_bracket_width: f64,
    pub log_ratio_residual: f64,
    /// Bracket the bisection started from.
    pub search_lo: f64,
    pub search_hi: f64,
}

/// Opaque solver settings.
pub struct MomfitSolver {
    cfg: SolverConfig,
}

/// Opaque seeded random generator.
pub struct MomfitGenerator {
    inner: SeededGenerator,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(MomfitStatus, String);

impl From<momfit::Error> for Failure {
    fn from(e: momfit::Error) -> Self {
        let status = match e.code() {
            "INFEASIBLE_RATIO" => MomfitStatus::InfeasibleRatio,
            "BRACKET_EXHAUSTED" => MomfitStatus::BracketExhausted,
            "ITERATION_LIMIT" => MomfitStatus::IterationLimit,
            "PARSE_ERROR" => MomfitStatus::ParseError,
            "OVERFLOW" => MomfitStatus::Overflow,
            "IO_ERROR" => MomfitStatus::IoError,
            _ => MomfitStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MomfitStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard<F>(f: F) -> MomfitStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            MomfitStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_owned());
            MomfitStatus::Panic
        }
    }
}

fn kind_of(dist: MomfitDist) -> Result<DistKind, Failure> {
    match dist {
        MOMFIT_DIST_WEIBULL => Ok(DistKind::Weibull),
        MOMFIT_DIST_GAMMA => Ok(DistKind::Gamma),
        MOMFIT_DIST_LOGNORMAL => Ok(DistKind::LogNormal),
        other => Err(Failure(MomfitStatus::DomainError, format!("unknown distribution {other}"))),
    }
}

fn dist_of(kind: DistKind) -> MomfitDist {
    match kind {
        DistKind::Weibull => MOMFIT_DIST_WEIBULL,
        DistKind::Gamma => MOMFIT_DIST_GAMMA,
        DistKind::LogNormal => MOMFIT_DIST_LOGNORMAL,
    }
}

unsafe fn read_params(p: *const MomfitParams) -> Result<DistributionParams, Failure> {
    let p = p.as_ref().ok_or_else(|| null("params"))?;
    Ok(DistributionParams::new(kind_of(p.dist)?, p.a, p.b)?)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn config_of(solver: *const MomfitSolver) -> SolverConfig {
    solver.as_ref().map(|s| s.cfg).unwrap_or_default()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn momfit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static name of a status code, e.g. `"INFEASIBLE_RATIO"`.
#[no_mangle]
pub extern "C" fn momfit_status_string(status: MomfitStatus) -> *const c_char {
    let s: &'static CStr = match status {
        MomfitStatus::Ok => c"OK",
        MomfitStatus::NullPointer => c"NULL_POINTER",
        MomfitStatus::DomainError => c"DOMAIN_ERROR",
        MomfitStatus::InfeasibleRatio => c"INFEASIBLE_RATIO",
        MomfitStatus::BracketExhausted => c"BRACKET_EXHAUSTED",
        MomfitStatus::IterationLimit => c"ITERATION_LIMIT",
        MomfitStatus::ParseError => c"PARSE_ERROR",
        MomfitStatus::Overflow => c"OVERFLOW",
        MomfitStatus::IoError => c"IO_ERROR",
        MomfitStatus::Panic => c"PANIC",
    };
    s.as_ptr()
}

/// Message for the last call on this thread; empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn momfit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// New solver with default settings (tolerance 1e-10, 200 iterations,
/// initial bracket [1e-2, 1e3], 60 expansions per side).
#[no_mangle]
pub extern "C" fn momfit_solver_new() -> *mut MomfitSolver {
    Box::into_raw(Box::new(MomfitSolver { cfg: SolverConfig::default() }))
}

/// # Safety
/// `solver` must come from [`momfit_solver_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn momfit_solver_free(solver: *mut MomfitSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

unsafe fn update_solver(solver: *mut MomfitSolver, f: impl FnOnce(SolverConfig) -> SolverConfig) -> MomfitStatus {
    guard(|| {
        let s = solver.as_mut().ok_or_else(|| null("solver"))?;
        let cfg = f(s.cfg);
        cfg.validate()?;
        s.cfg = cfg;
        Ok(())
    })
}

/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn momfit_solver_set_tolerance(solver: *mut MomfitSolver, delta: f64) -> MomfitStatus {
    update_solver(solver, |c| c.with_delta(delta))
}

/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn momfit_solver_set_bracket(solver: *mut MomfitSolver, lo: f64, hi: f64) -> MomfitStatus {
    update_solver(solver, |c| c.with_bracket(lo, hi))
}

/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn momfit_solver_set_max_iterations(solver: *mut MomfitSolver, max_iterations: u32) -> MomfitStatus {
    update_solver(solver, |c| c.with_max_iterations(max_iterations))
}

/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn momfit_solver_set_max_expansions(solver: *mut MomfitSolver, max_expansions: u32) -> MomfitStatus {
    update_solver(solver, |c| c.with_max_expansions(max_expansions))
}

unsafe fn run_fit(solver: *const MomfitSolver, dist: MomfitDist, mp: Result<MomentPair, momfit::Error>, out: *mut MomfitFitResult) -> MomfitStatus {
    guard(|| {
        let kind = kind_of(dist)?;
        let r = momfit::fit(kind, &mp?, &config_of(solver))?;
        let [a, b] = r.params.values();
        write(
            out,
            MomfitFitResult {
                params: MomfitParams { dist: dist_of(kind), a, b },
                iterations: r.iterations,
                expansions: r.expansions,
                final_bracket_width: r.final_bracket_width,
                log_ratio_residual: r.log_ratio_residual,
                search_lo: r.search_bracket.0,
                search_hi: r.search_bracket.1,
            },
        )
    })
}

/// Fit `dist` from raw moments `E(X^n) = moment_n`, `E(X^m) = moment_m`,
/// `n > m > 0`. `solver` may be null for default settings.
///
/// # Safety
/// `solver` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn momfit_fit(
    solver: *const MomfitSolver,
    dist: MomfitDist,
    n: f64,
    m: f64,
    moment_n: f64,
    moment_m: f64,
    out: *mut MomfitFitResult,
) -> MomfitStatus {
    run_fit(solver, dist, MomentPair::new(n, m, moment_n, moment_m), out)
}

/// As [`momfit_fit`] but takes natural logs of the moments, for moments
/// outside the double range.
///
/// # Safety
/// `solver` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn momfit_fit_log(
    solver: *const MomfitSolver,
    dist: MomfitDist,
    n: f64,
    m: f64,
    log_moment_n: f64,
    log_moment_m: f64,
    out: *mut MomfitFitResult,
) -> MomfitStatus {
    run_fit(solver, dist, MomentPair::from_log_moments(n, m, log_moment_n, log_moment_m), out)
}

/// # Safety
/// `params` must be readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn momfit_pdf(params: *const MomfitParams, x: f64, out: *mut f64) -> MomfitStatus {
    guard(|| {
        let p = read_params(params)?;
        write(out, p.pdf(x))
    })
}

/// Raw moment `E(X^order)`; `MOMFIT_STATUS_OVERFLOW` if it exceeds the double range.
///
/// # Safety
/// `params` must be readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn momfit_moment(params: *const MomfitParams, order: f64, out: *mut f64) -> MomfitStatus {
    guard(|| {
        let p = read_params(params)?;
        write(out, p.theoretical_moment(order)?)
    })
}

/// # Safety
/// `params` must be readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn momfit_log_moment(params: *const MomfitParams, order: f64, out: *mut f64) -> MomfitStatus {
    guard(|| {
        let p = read_params(params)?;
        write(out, p.log_theoretical_moment(order)?.value())
    })
}

/// Sample raw moments of `data[0..len]` at each of `orders[0..n_orders]`,
/// written to `out[0..n_orders]`.
///
/// # Safety
/// The three arrays must hold at least the stated number of elements.
#[no_mangle]
pub unsafe extern "C" fn momfit_raw_moments(
    data: *const f64,
    len: usize,
    orders: *const f64,
    n_orders: usize,
    out: *mut f64,
) -> MomfitStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        if orders.is_null() || out.is_null() {
            return Err(null(if orders.is_null() { "orders" } else { "output pointer" }));
        }
        let data = std::slice::from_raw_parts(data, len);
        let orders = std::slice::from_raw_parts(orders, n_orders);
        let summary = momfit::compute_raw_moments(data, orders)?;
        for (i, (_, v)) in summary.moments.iter().enumerate() {
            out.add(i).write(*v);
        }
        Ok(())
    })
}

/// Generator for `(seed, stream)`. Distinct streams of one seed do not overlap.
#[no_mangle]
pub extern "C" fn momfit_generator_new(seed: u64, stream: u64) -> *mut MomfitGenerator {
    Box::into_raw(Box::new(MomfitGenerator { inner: SeededGenerator::with_stream(seed, stream) }))
}

/// # Safety
/// `generator` must come from [`momfit_generator_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn momfit_generator_free(generator: *mut MomfitGenerator) {
    if !generator.is_null() {
        drop(Box::from_raw(generator));
    }
}

/// Draw `count` variates into `out`. The generator advances.
///
/// # Safety
/// `generator` must be live, `params` readable, `out` hold `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn momfit_generator_sample(
    generator: *mut MomfitGenerator,
    params: *const MomfitParams,
    out: *mut f64,
    count: usize,
) -> MomfitStatus {
    guard(|| {
        let g = generator.as_mut().ok_or_else(|| null("generator"))?;
        let p = read_params(params)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let xs = momfit::sample(&p, count, &mut g.inner)?;
        ptr::copy_nonoverlapping(xs.as_ptr(), out, xs.len());
        Ok(())
    })
}
