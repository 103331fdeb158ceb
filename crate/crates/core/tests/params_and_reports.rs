use std::time::Duration;
use tqlab_core::{check_all_core, check_core_identity, cx, parse_complex, ChainSpec, IdentityReport, Params, Params64, Residual, SpectralSampler, TqError, C64};

#[test]
fn default_parameters_are_valid() {
    let p = Params64::default();
    p.validate().unwrap();
    p.require_trace_regime().unwrap();
    assert_eq!(p.s(), 2);
    assert!((p.q() - p.p * p.p).norm() < 1e-15);
    assert!((p.lambda() - (p.q() - p.q().inv())).norm() < 1e-15);
}

#[test]
fn invalid_parameters_are_rejected() {
    let bad = [
        Params64 { eps_plus: cx::<f64>(0.0, 0.0), ..Params64::default() },
        Params64 { epsbar_minus: cx::<f64>(0.0, 0.0), ..Params64::default() },
        Params64 { s0: 0, s1: 0, ..Params64::default() },
        Params64 { s0: -1, s1: 3, ..Params64::default() },
        Params64 { p: cx::<f64>(0.0, 1.0), ..Params64::default() },
        Params64 { p: cx::<f64>(f64::NAN, 0.0), ..Params64::default() },
        Params64 { tol_exact: 0.0, ..Params64::default() },
        Params64 { sample_count: 0, ..Params64::default() },
    ];
    for p in bad {
        assert!(matches!(p.validate(), Err(TqError::InvalidParams(_))), "{p:?}");
    }
    let general = Params64 { s0: -1, s1: 3, allow_general_gradation: true, ..Params64::default() };
    general.validate().unwrap();
}

#[test]
fn unit_disc_is_valid_but_outside_the_trace_regime() {
    let p = Params64 { p: cx::<f64>(0.62, 0.21), ..Params64::default() };
    p.validate().unwrap();
    assert!(matches!(p.require_trace_regime(), Err(TqError::UnsupportedRegime(_))));
}

#[test]
fn zeta_is_an_involution_swapping_the_boundary_data() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let z = p.zeta();
    assert_eq!((z.s0, z.s1), (1, 2));
    assert_eq!(z.eps_plus, p.eps_minus);
    assert_eq!(z.epsbar_minus, p.epsbar_plus);
    assert_eq!(z.zeta(), p);
}

#[test]
fn digest_tracks_every_parameter() {
    let p = Params64::default();
    assert_eq!(p.digest(), Params64::default().digest());
    assert_eq!(p.digest().len(), 16);
    for q in [
        Params64 { rng_seed: 1, ..Params64::default() },
        Params64 { eps_minus: cx::<f64>(0.1, 0.050001), ..Params64::default() },
        Params64 { tol_trace: 1e-9, ..Params64::default() },
    ] {
        assert_ne!(q.digest(), p.digest());
    }
}

#[test]
fn precision_cast_round_trips() {
    let p = Params64::default();
    let back: Params64 = p.cast::<f32>().cast::<f64>();
    assert!((back.p - p.p).norm() < 1e-7);
    assert_eq!(back.s0, p.s0);
    let exact: Params<f64> = p.cast::<f64>();
    assert_eq!(exact, p);
}

#[test]
fn chain_validation() {
    ChainSpec::<f64>::generic(5).validate().unwrap();
    assert!(ChainSpec::<f64>::generic(0).validate().is_err());
    assert!(ChainSpec::<f64>::generic(6).validate().is_err());
    assert!(ChainSpec::new(vec![cx::<f64>(3.0, 0.0)]).is_err());
    assert_eq!(ChainSpec::<f64>::generic(3).dim(), 8);
}

#[test]
fn sampler_is_deterministic_and_stream_separated() {
    let a: Vec<C64> = (0..10).map({
        let mut s = SpectralSampler::new(7, "x");
        move |_| s.point()
    })
    .collect();
    let b: Vec<C64> = (0..10).map({
        let mut s = SpectralSampler::new(7, "x");
        move |_| s.point()
    })
    .collect();
    let c: C64 = SpectralSampler::new(7, "y").point();
    assert_eq!(a, b);
    assert_ne!(a[0], c);
    for z in &a {
        assert!((0.8..=1.25).contains(&z.norm()));
    }
}

#[test]
fn sampler_avoids_declared_poles() {
    let mut s = SpectralSampler::new(1, "poles");
    let pts: Vec<C64> = s.points(50, |z: C64| if z.re > 0.0 { 0.0 } else { f64::INFINITY });
    assert_eq!(pts.len(), 50);
    assert!(pts.iter().all(|z| z.re <= 0.0));
}

#[test]
fn reports_derive_pass_from_the_threshold() {
    let p = Params64::default();
    let r = IdentityReport::new("x.a", &p, &[Residual::new(1e-12), Residual::new(3e-11)], 1e-10, Duration::from_millis(12));
    assert!(r.pass);
    assert_eq!(r.samples, 2);
    assert_eq!(r.max_residual, 3e-11);
    let cols: Vec<String> = r.tsv(true).split('\t').map(String::from).collect();
    assert_eq!(cols.len(), IdentityReport::tsv_header().split('\t').count());
    assert_eq!(cols[6], "12");
    assert!(r.tsv(false).ends_with("\t-"));
    assert!(!IdentityReport::new("x.b", &p, &[Residual::new(f64::NAN)], 1e-10, Duration::ZERO).pass);
    assert!(!IdentityReport::new("x.c", &p, &[], 1e-10, Duration::ZERO).pass);
    assert!(!IdentityReport::new("x.d", &p, &[Residual::new(1e-10)], 1e-10, Duration::ZERO).pass);
}

#[test]
fn residual_normalization() {
    assert_eq!(Residual::from_norms(0.5, 0.1).value, 0.5);
    assert_eq!(Residual::from_norms(0.5, 10.0).value, 0.05);
    assert_eq!(Residual::new(1.0).max(Residual::new(2.0)).value, 2.0);
}

#[test]
fn complex_literals() {
    assert_eq!(parse_complex("1.08+0.12j").unwrap(), C64::new(1.08, 0.12));
    assert_eq!(parse_complex("0.8-0.3i").unwrap(), C64::new(0.8, -0.3));
    assert_eq!(parse_complex("-2").unwrap(), C64::new(-2.0, 0.0));
    assert_eq!(parse_complex("0.5j").unwrap(), C64::new(0.0, 0.5));
    assert_eq!(parse_complex(" 1e-3+2e-3j ").unwrap(), C64::new(1e-3, 2e-3));
    for bad in ["", "abc", "1+", "nan", "inf+0j"] {
        assert!(matches!(parse_complex(bad), Err(TqError::ConfigInvalid(_))), "{bad}");
    }
}

#[test]
fn scalar_suite_passes_on_both_sides_of_the_unit_circle() {
    for p in [Params64::default(), Params64 { p: cx::<f64>(0.62, 0.21), ..Params64::default() }] {
        for r in check_all_core(&p).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
    assert!(matches!(check_core_identity("core.none", &Params64::default()), Err(TqError::UnknownIdentity(_))));
}

#[test]
fn single_precision_scalar_suite() {
    let p = Params64::default().cast::<f32>();
    let p = Params { tol_exact: 1e-5, ..p };
    for r in check_all_core(&p).unwrap() {
        assert!(r.pass, "{r:?}");
    }
}
