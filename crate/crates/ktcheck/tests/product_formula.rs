use tqlab_core::{cx, Params64, TqError, C64};
use tqlab_fock::{build_fock, Flavor};
use tqlab_ktcheck::*;
use tqlab_lax::{l_operator, r_matrix, LaxKind, LaxShape};
use tqlab_tensor::{mat2, TensorOp};

fn gradations() -> Vec<Params64> {
    vec![
        Params64::default(),
        Params64 { s0: 2, s1: 1, ..Params64::default() },
        Params64 { s0: 0, s1: 3, ..Params64::default() },
    ]
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

#[test]
fn casimir_value_and_both_forms() {
    let p = Params64::default();
    let q = p.q();
    let c = casimir_fundamental(&p);
    let expected = (q * q + (q * q).inv()) / (p.lambda() * p.lambda());
    assert!((c - expected).norm() < 1e-14 * expected.norm());
    let fe = casimir_fe_form(&p);
    let ef = casimir_ef_form(&p);
    assert!(fe.rel_residual(&ef).unwrap().value < 1e-14);
    assert!((fe.get(0, 0) - fe.get(1, 1)).norm() < 1e-14);
}

#[test]
fn central_elements_match_their_generating_function() {
    let p = Params64::default();
    let q = p.q();
    let c1 = central_ck(1, &p).unwrap();
    assert!((c1 - p.lambda() * p.lambda() * casimir_fundamental(&p)).norm() < 1e-13);
    for k in 1..=12 {
        let closed = q.powi(2 * k) + q.powi(-2 * k);
        assert!((central_ck(k as usize, &p).unwrap() - closed).norm() < 1e-12 * closed.norm(), "k = {k}");
    }
    assert!(matches!(central_ck(0, &p), Err(TqError::InvalidParams(_))));
}

#[test]
fn central_elements_are_real_at_real_q() {
    let p = Params64 { p: cx(1.1, 0.0), ..Params64::default() };
    for k in 1..=10 {
        assert!(central_ck(k, &p).unwrap().im.abs() < 1e-12, "k = {k}");
    }
}

#[test]
fn series_logarithm_roundtrip() {
    let f = vec![cx(0.3, 0.1), cx(-0.2, 0.4), cx(0.05, 0.0), cx(0.0, 0.0), cx(0.1, -0.1), zero(), zero(), zero()];
    let back = scalar_series_exp(&scalar_series_log(&f));
    for (a, b) in back.iter().zip(&f) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn lowest_root_vectors_are_the_generators() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(0.9, 0.2);
    let ea = closed_image(Species::EAlpha, 0, x, &p).unwrap();
    assert!(ea.rel_residual(&mat2(zero(), x.powi(1), zero(), zero())).unwrap().value < 1e-15);
    let k = 3;
    let q = p.q();
    let fda = closed_image(Species::FDeltaAlpha, k, x, &p).unwrap();
    // (-1)^k x^{-ks-s0} q^{kH} E
    let expected = mat2(zero(), -x.powi(-3 * 3 - 2) * q.powi(3), zero(), zero());
    assert!(fda.rel_residual(&expected).unwrap().value < 1e-14);
}

#[test]
fn closed_and_recursive_root_vectors_agree() {
    for p in gradations() {
        for x in [cx::<f64>(0.9, 0.2), cx(1.1, -0.3)] {
            let rec = recursive_roots(8, x, &p);
            for species in Species::ALL {
                for k in species.min_k()..=8 {
                    let closed = closed_image(species, k, x, &p).unwrap();
                    let r = rec.get(species, k).rel_residual(&closed).unwrap().value;
                    assert!(r < 1e-10, "{species:?} k={k} s=({},{}): {r:e}", p.s0, p.s1);
                }
            }
        }
    }
}

#[test]
fn imaginary_root_generating_function_on_closed_forms() {
    // log(1 + lambda sum e'_k z^-k) = lambda sum e_k z^-k with both sides closed.
    let p = Params64::default();
    let x = cx::<f64>(1.05, 0.1);
    let lam = p.lambda();
    let primes: Vec<TensorOp<f64>> = (1..=8).map(|k| closed_image(Species::EPrimeDelta, k, x, &p).unwrap().scale(lam)).collect();
    for (k, g) in series_log(&primes).iter().enumerate() {
        let closed = closed_image(Species::EDelta, k + 1, x, &p).unwrap().scale(lam);
        assert!(g.rel_residual(&closed).unwrap().value < 1e-11, "k = {}", k + 1);
    }
}

#[test]
fn root_vector_modes_agree_through_the_public_entry_point() {
    let p = Params64::default();
    let x = cx::<f64>(0.95, 0.05);
    let a = root_vector_image(Species::FDelta, 5, x, RootMode::Closed, &p).unwrap();
    let b = root_vector_image(Species::FDelta, 5, x, RootMode::Recursive, &p).unwrap();
    assert_eq!((a.species, a.k), (b.species, b.k));
    assert!(a.matrix.rel_residual(&b.matrix).unwrap().value < 1e-10);
    assert!(root_vector_image(Species::EDelta, 0, x, RootMode::Closed, &p).is_err());
}

#[test]
fn product_formula_reproduces_the_r_matrix() {
    for p in gradations() {
        let x = cx::<f64>(0.5, 0.0);
        let r = reconstruct_r(x, 40, &p).unwrap();
        assert_eq!(r.dims(), &[2, 2]);
        assert!(r.rel_residual(&r_matrix(x, &p)).unwrap().value < 1e-8);
    }
}

#[test]
fn reconstruction_error_decreases_with_the_number_of_factors() {
    let p = Params64::default();
    let x = cx::<f64>(0.6, 0.2);
    let mut last = f64::INFINITY;
    for kmax in [5, 10, 20, 40] {
        let (r, _) = reconstruct_r_truncated(x, kmax, &p).unwrap();
        let res = r.rel_residual(&r_matrix(x, &p)).unwrap().value;
        assert!(res <= last.max(1e-15), "kmax {kmax}: {res:e} after {last:e}");
        last = res;
    }
    assert!(last < 1e-8);
}

#[test]
fn short_products_are_rejected_by_the_tail_check() {
    let err = reconstruct_r(cx::<f64>(0.5, 0.0), 5, &Params64::default()).unwrap_err();
    assert!(matches!(err, TqError::TailTooLarge(d) if d > 1e-12));
}

#[test]
fn product_formula_needs_small_spectral_parameter() {
    let err = reconstruct_r(cx::<f64>(1.2, 0.0), 40, &Params64::default()).unwrap_err();
    assert!(matches!(err, TqError::SeriesNotConverged(_)));
}

#[test]
fn product_formula_reproduces_the_oscillator_l_operator() {
    for p in gradations() {
        let x = cx::<f64>(0.5, 0.0);
        let n = 12;
        let rebuilt = reconstruct_l1(x, n, 40, &p).unwrap();
        let rep = build_fock(Flavor::One, n, &p).unwrap();
        let direct = l_operator(LaxKind::new(LaxShape::Plain, Flavor::One), x, &rep, &p).unwrap();
        assert!(rebuilt.slab_residual(&direct, 0, n - 1).unwrap().value < 1e-8);
    }
}

#[test]
fn l_operator_cartan_factor_gives_the_diagonal_scalings() {
    let p = Params64::default();
    let x = cx::<f64>(0.45, 0.2);
    let d = l1_cartan_factor(x, 40, &p).unwrap().scale(tqlab_core::special::phi1(x, &p).unwrap());
    let xs = x.powi(2);
    assert!((d.get(0, 0) - one()).norm() < 1e-12);
    assert!((d.get(1, 1) - (one() - p.q() * xs)).norm() < 1e-12);
    assert_eq!(d.get(0, 1), zero());
}

#[test]
fn registry_passes_and_is_deterministic() {
    for p in gradations() {
        let a = check_all_kt(&p, &KtCheckOptions::default()).unwrap();
        let b = check_all_kt(&p, &KtCheckOptions::default()).unwrap();
        assert_eq!(a.len(), KT_IDS.len());
        for r in &a {
            assert!(r.pass, "{r:?}");
        }
        let ta: Vec<String> = a.iter().map(|r| r.tsv(false)).collect();
        let tb: Vec<String> = b.iter().map(|r| r.tsv(false)).collect();
        assert_eq!(ta, tb);
    }
    assert!(matches!(check_kt_identity("kt.none", &Params64::default(), &KtCheckOptions::default()), Err(TqError::UnknownIdentity(_))));
}
