use std::ffi::CStr;
use std::ptr;

use momfit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(momfit_last_error_message()) }.to_str().unwrap().to_owned()
}

fn empty_result() -> MomfitFitResult {
    MomfitFitResult {
        params: MomfitParams { dist: 99, a: f64::NAN, b: f64::NAN },
        iterations: 0,
        expansions: 0,
        final_bracket_width: f64::NAN,
        log_ratio_residual: f64::NAN,
        search_lo: f64::NAN,
        search_hi: f64::NAN,
    }
}

#[test]
fn fit_exponential_with_default_solver() {
    let mut out = empty_result();
    let st = unsafe { momfit_fit(ptr::null(), MOMFIT_DIST_WEIBULL, 2.0, 1.0, 2.0, 1.0, &mut out) };
    assert_eq!(st, MomfitStatus::Ok);
    assert_eq!(out.params.dist, MOMFIT_DIST_WEIBULL);
    assert!((out.params.a - 1.0).abs() < 1e-9);
    assert!((out.params.b - 1.0).abs() < 1e-9);
    assert!(out.final_bracket_width <= 1e-10);
    assert!(out.iterations > 0);
    assert!(out.search_lo < 1.0 && out.search_hi > 1.0);
    assert_eq!(last_error(), "");
}

#[test]
fn round_trip_through_moments() {
    let cases = [
        MomfitParams { dist: MOMFIT_DIST_WEIBULL, a: 1.7, b: 0.4 },
        MomfitParams { dist: MOMFIT_DIST_GAMMA, a: 0.3, b: 6.0 },
        MomfitParams { dist: MOMFIT_DIST_LOGNORMAL, a: -1.2, b: 0.8 },
    ];
    for p in cases {
        let (mut mn, mut mm) = (0.0, 0.0);
        unsafe {
            assert_eq!(momfit_moment(&p, 3.0, &mut mn), MomfitStatus::Ok);
            assert_eq!(momfit_moment(&p, 1.5, &mut mm), MomfitStatus::Ok);
        }
        let mut out = empty_result();
        let st = unsafe { momfit_fit(ptr::null(), p.dist, 3.0, 1.5, mn, mm, &mut out) };
        assert_eq!(st, MomfitStatus::Ok);
        assert!((out.params.a - p.a).abs() <= 1e-8 * p.a.abs(), "{p:?} {out:?}");
        assert!((out.params.b - p.b).abs() <= 1e-8 * p.b.abs(), "{p:?} {out:?}");
    }
}

#[test]
fn log_moments_beyond_double_range() {
    let p = MomfitParams { dist: MOMFIT_DIST_LOGNORMAL, a: 2.0, b: 10.0 };
    let (mut big, mut ln4, mut ln2) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(momfit_moment(&p, 4.0, &mut big), MomfitStatus::Overflow);
        assert!(last_error().contains('4'));
        assert_eq!(momfit_log_moment(&p, 4.0, &mut ln4), MomfitStatus::Ok);
        assert_eq!(momfit_log_moment(&p, 2.0, &mut ln2), MomfitStatus::Ok);
    }
    assert!(ln4 > 709.0);
    let mut out = empty_result();
    let st = unsafe { momfit_fit_log(ptr::null(), MOMFIT_DIST_LOGNORMAL, 4.0, 2.0, ln4, ln2, &mut out) };
    assert_eq!(st, MomfitStatus::Ok);
    assert!((out.params.b - 10.0).abs() < 1e-9);
    assert!((out.params.a - 2.0).abs() < 1e-8);
}

#[test]
fn solver_handle_settings() {
    let s = momfit_solver_new();
    unsafe {
        assert_eq!(momfit_solver_set_tolerance(s, 1e-4), MomfitStatus::Ok);
        let mut out = empty_result();
        assert_eq!(momfit_fit(s, MOMFIT_DIST_GAMMA, 2.0, 1.0, 6.0, 2.0, &mut out), MomfitStatus::Ok);
        assert!(out.final_bracket_width <= 1e-4);
        assert!(out.iterations < 30);

        assert_eq!(momfit_solver_set_tolerance(s, -1.0), MomfitStatus::DomainError);
        assert!(!last_error().is_empty());
        assert_eq!(momfit_solver_set_bracket(s, 5.0, 1.0), MomfitStatus::DomainError);

        assert_eq!(momfit_solver_set_tolerance(s, 1e-12), MomfitStatus::Ok);
        assert_eq!(momfit_solver_set_max_iterations(s, 3), MomfitStatus::Ok);
        assert_eq!(momfit_fit(s, MOMFIT_DIST_GAMMA, 2.0, 1.0, 6.0, 2.0, &mut out), MomfitStatus::IterationLimit);

        assert_eq!(momfit_solver_set_max_iterations(s, 200), MomfitStatus::Ok);
        assert_eq!(momfit_solver_set_bracket(s, 10.0, 20.0), MomfitStatus::Ok);
        assert_eq!(momfit_solver_set_max_expansions(s, 0), MomfitStatus::Ok);
        assert_eq!(momfit_fit(s, MOMFIT_DIST_GAMMA, 2.0, 1.0, 6.0, 2.0, &mut out), MomfitStatus::BracketExhausted);
        momfit_solver_free(s);
        momfit_solver_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    let mut out = empty_result();
    unsafe {
        assert_eq!(momfit_fit(ptr::null(), MOMFIT_DIST_WEIBULL, 2.0, 1.0, 1.0, 1.0, &mut out), MomfitStatus::InfeasibleRatio);
        assert!(out.params.a.is_nan(), "output untouched on failure");
        assert_eq!(momfit_fit(ptr::null(), MOMFIT_DIST_WEIBULL, 1.0, 2.0, 2.0, 1.0, &mut out), MomfitStatus::DomainError);
        assert_eq!(momfit_fit(ptr::null(), 7, 2.0, 1.0, 2.0, 1.0, &mut out), MomfitStatus::DomainError);
        assert!(last_error().contains("unknown distribution"));
        assert_eq!(momfit_fit(ptr::null(), MOMFIT_DIST_WEIBULL, 2.0, 1.0, 2.0, 1.0, ptr::null_mut()), MomfitStatus::NullPointer);

        let mut y = 0.0;
        assert_eq!(momfit_pdf(ptr::null(), 1.0, &mut y), MomfitStatus::NullPointer);
        let bad = MomfitParams { dist: MOMFIT_DIST_GAMMA, a: -1.0, b: 1.0 };
        assert_eq!(momfit_pdf(&bad, 1.0, &mut y), MomfitStatus::DomainError);
    }
}

#[test]
fn status_strings_match_cli_codes() {
    let name = |s| unsafe { CStr::from_ptr(momfit_status_string(s)) }.to_str().unwrap();
    assert_eq!(name(MomfitStatus::Ok), "OK");
    assert_eq!(name(MomfitStatus::InfeasibleRatio), "INFEASIBLE_RATIO");
    assert_eq!(name(MomfitStatus::BracketExhausted), "BRACKET_EXHAUSTED");
    assert_eq!(name(MomfitStatus::IterationLimit), "ITERATION_LIMIT");
    assert_eq!(name(MomfitStatus::ParseError), "PARSE_ERROR");
    assert_eq!(name(MomfitStatus::DomainError), "DOMAIN_ERROR");
    let v = unsafe { CStr::from_ptr(momfit_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn pdf_values() {
    let p = MomfitParams { dist: MOMFIT_DIST_WEIBULL, a: 1.0, b: 2.0 };
    let mut y = 0.0;
    unsafe { assert_eq!(momfit_pdf(&p, 2.0, &mut y), MomfitStatus::Ok) };
    assert!((y - 0.5 * (-1.0f64).exp()).abs() < 1e-16);
}

#[test]
fn raw_moments_of_array() {
    let data = [1.0, 2.0, 3.0, 4.0];
    let orders = [1.0, 2.0, 0.5];
    let mut out = [0.0; 3];
    let st = unsafe { momfit_raw_moments(data.as_ptr(), data.len(), orders.as_ptr(), orders.len(), out.as_mut_ptr()) };
    assert_eq!(st, MomfitStatus::Ok);
    assert_eq!(out[0], 2.5);
    assert_eq!(out[1], 7.5);
    let half = (1.0 + 2f64.sqrt() + 3f64.sqrt() + 2.0) / 4.0;
    assert!((out[2] - half).abs() < 1e-15);

    let neg = [1.0, -2.0];
    let st = unsafe { momfit_raw_moments(neg.as_ptr(), 2, orders.as_ptr(), 1, out.as_mut_ptr()) };
    assert_eq!(st, MomfitStatus::DomainError);
    let st = unsafe { momfit_raw_moments(data.as_ptr(), 0, orders.as_ptr(), 1, out.as_mut_ptr()) };
    assert_eq!(st, MomfitStatus::DomainError);
    let st = unsafe { momfit_raw_moments(ptr::null(), 0, orders.as_ptr(), 1, out.as_mut_ptr()) };
    assert_eq!(st, MomfitStatus::NullPointer);
}

#[test]
fn generator_streams() {
    let p = MomfitParams { dist: MOMFIT_DIST_GAMMA, a: 2.0, b: 1.5 };
    let draw = |seed, stream| {
        let g = momfit_generator_new(seed, stream);
        let mut xs = vec![0.0; 1000];
        let st = unsafe { momfit_generator_sample(g, &p, xs.as_mut_ptr(), xs.len()) };
        assert_eq!(st, MomfitStatus::Ok);
        unsafe { momfit_generator_free(g) };
        xs
    };
    let a = draw(42, 0);
    assert_eq!(a, draw(42, 0));
    assert_ne!(a, draw(42, 1));
    assert!(a.iter().all(|&x| x > 0.0 && x.is_finite()));
    let mean = a.iter().sum::<f64>() / a.len() as f64;
    assert!((mean - 3.0).abs() < 0.3, "{mean}");

    // output matches the core library for the same seed and stream
    let core = momfit::sample(
        &momfit::DistributionParams::gamma(2.0, 1.5).unwrap(),
        1000,
        &mut momfit::SeededGenerator::with_stream(42, 0),
    )
    .unwrap();
    assert_eq!(a, core);

    let g = momfit_generator_new(1, 0);
    let mut x = 0.0;
    unsafe {
        assert_eq!(momfit_generator_sample(g, &p, &mut x, 0), MomfitStatus::DomainError);
        assert_eq!(momfit_generator_sample(ptr::null_mut(), &p, &mut x, 1), MomfitStatus::NullPointer);
        momfit_generator_free(g);
    }
}
