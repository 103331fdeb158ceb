use tqlab_boundary::*;
use tqlab_core::{cx, ChainSpec, Params64, C64};
use tqlab_fock::{build_fock, Flavor};
use tqlab_lax::{r_matrix, rbar_matrix};
use tqlab_tensor::TensorOp;

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn k_matrix_entries_match_printed_form() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(0.9, 0.3);
    let k = k_matrix(x, &p);
    assert!(close(k.get(0, 0), x.powi(2) * p.eps_plus + x.powi(-1) * p.eps_minus, 1e-15));
    assert!(close(k.get(1, 1), x.powi(-2) * p.eps_plus + x.powi(1) * p.eps_minus, 1e-15));
    let kb = kbar_matrix(x, &p);
    let q = p.q();
    assert!(close(kb.get(0, 0), x.powi(2) * p.epsbar_plus / q + q * x.powi(-1) * p.epsbar_minus, 1e-15));
    assert_eq!(k.get(0, 1), C64::new(0.0, 0.0));
}

#[test]
fn k_operator_is_normalized_on_the_vacuum() {
    let p = Params64::default();
    let x = cx::<f64>(1.05, -0.2);
    let lv = k_operator_levels(KOpKind::K, Flavor::One, x, 6, &p).unwrap();
    assert_eq!(lv[0], C64::new(1.0, 0.0));
}

#[test]
fn product_form_matches_q_exponential_form() {
    for p in [Params64::default(), Params64 { s0: 2, s1: 1, ..Params64::default() }] {
        for flavor in [Flavor::One, Flavor::Two] {
            for kind in [KOpKind::K, KOpKind::CheckBar] {
                let x = cx::<f64>(0.97, 0.11);
                let a = k_operator_levels(kind, flavor, x, 8, &p).unwrap();
                let b = k_operator_levels_qexp(kind, flavor, x, 8, &p).unwrap();
                for (u, v) in a.iter().zip(&b) {
                    assert!(close(*u, *v, 1e-9), "{kind:?} {flavor:?}: {u} vs {v}");
                }
            }
        }
    }
}

#[test]
fn checkbar_levels_decay_geometrically() {
    // Ratio of consecutive entries tends to x^{-2 s0} q^2 times a factor tending to 0,
    // i.e. the entries shrink once q^{2n} dominates the denominator.
    let p = Params64::default();
    let x = cx::<f64>(1.0, 0.05);
    let lv = k_operator_levels(KOpKind::CheckBar, Flavor::One, x, 30, &p).unwrap();
    assert!(lv[29].norm() < lv[10].norm());
}

#[test]
fn ratios_reproduce_levels() {
    let p = Params64::default();
    let x = cx::<f64>(0.93, 0.2);
    let lv = k_operator_levels(KOpKind::K, Flavor::Two, x, 10, &p).unwrap();
    let r = k_ratios(Flavor::Two, x, 9, &p).unwrap();
    for n in 0..9 {
        assert!(close(lv[n + 1] / lv[n], r[n], 1e-13));
    }
}

#[test]
fn k_operator_pole_is_detected() {
    // Put the first factor 1 + (e-/e+) x^s q exactly on zero.
    let mut p = Params64::default();
    let x = C64::new(1.0, 0.0);
    p.eps_minus = -p.eps_plus / p.q();
    let err = k_operator_levels(KOpKind::K, Flavor::One, x, 4, &p).unwrap_err();
    assert!(matches!(err, tqlab_core::TqError::PoleHit(_)));
}

#[test]
fn dressing_elements_are_upper_triangular_in_the_auxiliary_space() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 10, &p).unwrap();
    for barred in [false, true] {
        for inverse in [false, true] {
            let g = dressing_g(&rep, barred, inverse, &p).unwrap();
            let low = tqlab_lax::block(&g, 1, 0);
            assert_eq!(low.max_abs(), 0.0);
        }
    }
    let rep2 = build_fock(Flavor::Two, 10, &p).unwrap();
    assert!(dressing_g(&rep2, false, false, &p).is_err());
}

#[test]
fn dressed_k_with_empty_chain_is_bare_k() {
    let p = Params64::default();
    let x = cx::<f64>(0.9, 0.1);
    let empty = ChainSpec { xi: vec![] };
    assert!(dressed_k_t(x, &empty, &p).unwrap().rel_residual(&k_matrix(x, &p)).unwrap().value < 1e-15);
    let rep = build_fock(Flavor::One, 8, &p).unwrap();
    let bare = k_operator(KOpKind::K, x, &rep, &p).unwrap();
    assert!(dressed_k_q(x, &rep, &empty, &p).unwrap().rel_residual(&bare).unwrap().value < 1e-15);
}

#[test]
fn dressed_k_single_site_matches_direct_product() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(0.9, 0.1);
    let xi = cx::<f64>(1.1, -0.1);
    let chain = ChainSpec::new(vec![xi]).unwrap();
    let direct = TensorOp::chain(&[
        &r_matrix((x * xi).inv(), &p),
        &k_matrix(x, &p).kron(&TensorOp::identity(&[2])),
        &rbar_matrix(x / xi, &p),
    ])
    .unwrap();
    assert!(dressed_k_t(x, &chain, &p).unwrap().rel_residual(&direct).unwrap().value < 1e-15);
}

#[test]
fn omega_of_flavor_two_is_zeta_of_flavor_one() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(0.9, 0.1);
    assert_eq!(omega(Flavor::Two, x, &p), omega(Flavor::One, x, &p.zeta()));
}
