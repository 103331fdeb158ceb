use tqlab_core::{cx, Params64, C64};
use tqlab_fock::{build_fock, Flavor};
use tqlab_lax::*;

fn report_all(params: &Params64) {
    report_all_at(params, LaxCheckOptions::default());
}

fn report_all_at(params: &Params64, opts: LaxCheckOptions) {
    for rep in check_all_lax(params, &opts).unwrap() {
        println!("{}", rep.tsv(false));
        assert!(rep.pass, "{} failed with residual {:e}", rep.id, rep.max_residual);
        assert!(rep.max_residual < 1e-10);
    }
}

#[test]
fn all_lax_identities_pass_at_default_point() {
    report_all(&Params64::default());
}

#[test]
fn all_lax_identities_pass_with_unequal_gradation() {
    // With s = 3 the level-n diagonal terms of the inverse identities grow like
    // |q|^{2n} before cancelling, so the comparison window is kept lower.
    let opts = LaxCheckOptions { cutoff: 24, ..LaxCheckOptions::default() };
    report_all_at(&Params64 { s0: 2, s1: 1, ..Params64::default() }, opts.clone());
    report_all_at(&Params64 { s0: 0, s1: 3, ..Params64::default() }, opts);
}

#[test]
fn lax_identities_pass_inside_the_unit_disc() {
    // Lax-level identities are rational in q and do not need |q| > 1, but for
    // |q| < 1 the lowering coefficients grow like |q|^{-2n}, and the cancelling
    // terms of the inverse identities grow even faster, so only low levels are
    // compared.
    let opts = LaxCheckOptions { cutoff: 8, ..LaxCheckOptions::default() };
    report_all_at(&Params64 { p: cx(0.62, 0.21), ..Params64::default() }, opts);
}

#[test]
fn unknown_identity_is_rejected() {
    let err = check_lax_identity("lax.nope", &Params64::default(), &LaxCheckOptions::default()).unwrap_err();
    assert!(matches!(err, tqlab_core::TqError::UnknownIdentity(_)));
}

#[test]
fn r_matrix_entries_match_printed_form() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(0.9, 0.2);
    let r = r_matrix(x, &p);
    let q = p.q();
    assert!((r.get(0, 0) - (q - x.powi(3) / q)).norm() < 1e-14);
    assert!((r.get(1, 2) - p.lambda() * x.powi(1)).norm() < 1e-14);
    assert!((r.get(2, 1) - p.lambda() * x.powi(2)).norm() < 1e-14);
    // Rbar is R at 1/x with s0 and s1 exchanged off the diagonal.
    let rb = rbar_matrix(x, &p);
    let r_inv = r_matrix(x.inv(), &p.zeta());
    assert!(rb.rel_residual(&r_inv).unwrap().value < 1e-14);
}

#[test]
fn r_at_one_is_lambda_times_permutation() {
    let p = Params64::default();
    let r = r_matrix(C64::new(1.0, 0.0), &p);
    let mut perm = tqlab_tensor::TensorOp::zeros(&[2, 2]);
    for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        perm.set(a, b, C64::new(1.0, 0.0));
    }
    assert!(r.rel_residual(&perm.scale(p.lambda())).unwrap().value < 1e-14);
}

#[test]
fn l_operator_blocks_match_printed_form() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 8, &p).unwrap();
    let x = cx::<f64>(1.1, -0.3);
    let l = l_operator(LaxKind::new(LaxShape::Plain, Flavor::One), x, &rep, &p).unwrap();
    let b11 = block(&l, 0, 0);
    assert!(b11.rel_residual(&rep.q_half_h(1)).unwrap().value < 1e-14);
    let b12 = block(&l, 0, 1);
    let expect = rep.f.matmul(&rep.q_half_h(-1)).unwrap().scale(p.lambda() * x);
    assert!(b12.rel_residual(&expect).unwrap().value < 1e-14);
    let lc = l_operator(LaxKind::new(LaxShape::Check, Flavor::One), x, &rep, &p).unwrap();
    let expect22 = rep.q_half_h(1).scale(-x * x / p.q());
    assert!(block(&lc, 1, 1).rel_residual(&expect22).unwrap().value < 1e-14);
}

#[test]
fn flavor_mismatch_is_a_shape_error() {
    let p = Params64::default();
    let rep = build_fock(Flavor::Two, 4, &p).unwrap();
    assert!(l_operator(LaxKind::new(LaxShape::Plain, Flavor::One), cx(1.0, 0.0), &rep, &p).is_err());
}

#[test]
fn sigma_is_an_involution_and_zeta_too() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let r = r_matrix(cx(0.7, 0.4), &p);
    let back = sigma_map(&sigma_map(&r, 0).unwrap(), 0).unwrap();
    assert!(back.rel_residual(&r).unwrap().value < 1e-15);
    assert_eq!(zeta_params(&zeta_params(&p)), p);
    assert!(sigma_map(&r.with_dims(&[4]).unwrap(), 0).is_err());
}

#[test]
fn g_is_invariant_under_zeta_sigma() {
    let p = Params64 { s0: 3, s1: 1, ..Params64::default() };
    let g = g_matrix(&p);
    let moved = sigma_map(&g_matrix(&p.zeta()), 0).unwrap();
    assert!(moved.rel_residual(&g).unwrap().value < 1e-14);
}

#[test]
fn registry_is_deterministic() {
    let p = Params64::default();
    let a = check_lax_identity("lax.RLL2", &p, &LaxCheckOptions::default()).unwrap();
    let b = check_lax_identity("lax.RLL2", &p, &LaxCheckOptions::default()).unwrap();
    assert_eq!(a.tsv(false), b.tsv(false));
}
