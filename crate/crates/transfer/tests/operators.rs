use tqlab_boundary::{dressed_k_q, k_matrix, k_operator, k_operator_levels, kbar_matrix, KOpKind};
use tqlab_core::{cx, ChainSpec, Params64, TqError, C64};
use tqlab_fock::{build_fock, Flavor};
use tqlab_lax::{r_matrix, rbar_matrix};
use tqlab_tensor::TensorOp;
use tqlab_transfer::*;

fn x0() -> C64 {
    cx(0.95, 0.15)
}

/// Fock trace of `Kcb(1/x) (x) 1` times the dressed K-operator, built from
/// the full K-operator entries, over the levels `0..keep`.
fn naive_q(flavor: Flavor, x: C64, chain: &ChainSpec<f64>, p: &Params64, n: usize) -> TensorOp<f64> {
    let rep = build_fock(flavor, n, p).unwrap();
    let dressed = dressed_k_q(x, &rep, chain, p).unwrap();
    let kcb = k_operator(KOpKind::CheckBar, x.inv(), &rep, p).unwrap().embed(&[0], dressed.dims()).unwrap();
    let full = kcb.matmul(&dressed).unwrap();
    let keep = n - chain.len() - 1;
    full.restrict_slot(0, keep).unwrap().partial_trace(0).unwrap()
}

#[test]
fn stable_trace_matches_direct_k_operator_product() {
    let p = Params64::default();
    for (flavor, pp) in [(Flavor::One, p.clone()), (Flavor::Two, p.zeta())] {
        for l in 1..=2 {
            let chain = ChainSpec::generic(l);
            let (stable, _) = q_operator_fixed(flavor, x0(), &chain, &pp, 16).unwrap();
            let naive = naive_q(flavor, x0(), &chain, &pp, 16);
            let r = stable.rel_residual(&naive).unwrap().value;
            assert!(r < 1e-12, "{flavor:?} L={l}: {r:e}");
        }
    }
}

#[test]
fn trace_weights_are_products_of_k_operator_levels() {
    let p = Params64 { s0: 2, s1: 1, ..Params64::default() };
    let x = cx::<f64>(1.02, -0.07);
    for flavor in [Flavor::One, Flavor::Two] {
        let w = trace_weights(flavor, x, 12, &p).unwrap();
        let k = k_operator_levels(KOpKind::K, flavor, x, 12, &p).unwrap();
        let kcb = k_operator_levels(KOpKind::CheckBar, flavor, x.inv(), 12, &p).unwrap();
        for n in 0..12 {
            let direct = k[n] * kcb[n];
            assert!((w[n] - direct).norm() < 1e-12 * direct.norm().max(1e-300), "{flavor:?} level {n}");
        }
    }
}

#[test]
fn t_operator_matches_dense_assembly() {
    let p = Params64 { s0: 1, s1: 2, ..Params64::default() };
    let chain = ChainSpec::generic(2);
    let x = x0();
    let dims = [2, 2, 2];
    let e = |op: TensorOp<f64>, slots: &[usize]| op.embed(slots, &dims).unwrap();
    let mut m = e(kbar_matrix(x.inv(), &p), &[0]);
    for k in (0..2).rev() {
        m = m.matmul(&e(r_matrix((x * chain.xi[k]).inv(), &p), &[0, k + 1])).unwrap();
    }
    m = m.matmul(&e(k_matrix(x, &p), &[0])).unwrap();
    for k in 0..2 {
        m = m.matmul(&e(rbar_matrix(x / chain.xi[k], &p), &[0, k + 1])).unwrap();
    }
    let dense = m.partial_trace(0).unwrap();
    let t = t_operator(x, &chain, &p).unwrap();
    assert_eq!(t.dims(), &[2, 2]);
    assert!(t.rel_residual(&dense).unwrap().value < 1e-14);
}

#[test]
fn single_site_t_operator_is_two_by_two() {
    let t = t_operator(x0(), &ChainSpec::generic(1), &Params64::default()).unwrap();
    assert_eq!(t.side(), 2);
}

#[test]
fn adaptive_cutoff_stops_once_the_tail_is_negligible() {
    let p = Params64::default();
    let chain = ChainSpec::generic(2);
    let q = q_operator(Flavor::One, x0(), &chain, &p, &TraceOptions::default()).unwrap();
    assert!(q.cutoff <= 192);
    assert!(q.tail < 1e-15);
    let (fixed, _) = q_operator_fixed(Flavor::One, x0(), &chain, &p, 2 * q.cutoff).unwrap();
    assert!(q.op.rel_residual(&fixed).unwrap().value < 1e-14);
}

#[test]
fn flavor_two_trace_diverges_at_the_default_point() {
    let err = q_operator(Flavor::Two, x0(), &ChainSpec::generic(2), &Params64::default(), &TraceOptions::default()).unwrap_err();
    assert!(matches!(err, TqError::TraceDiverging { .. }), "{err}");
}

#[test]
fn slowly_converging_trace_reports_truncation() {
    // A tiny cap leaves a decaying but non-negligible tail.
    let opts = TraceOptions { initial_cutoff: 8, max_cutoff: 8, tail_tol: 1e-15 };
    let err = q_operator(Flavor::One, x0(), &ChainSpec::generic(1), &Params64::default(), &opts).unwrap_err();
    assert!(matches!(err, TqError::TruncationNotConverged { .. }), "{err}");
}

#[test]
fn unit_disc_is_rejected_for_traces() {
    let p = Params64 { p: cx(0.62, 0.21), ..Params64::default() };
    let err = q_operator(Flavor::One, x0(), &ChainSpec::generic(1), &p, &TraceOptions::default()).unwrap_err();
    assert!(matches!(err, TqError::UnsupportedRegime(_)));
}

#[test]
fn tq_residual_decreases_under_cutoff_doubling() {
    let p = Params64::default();
    let chain = ChainSpec::generic(2);
    let x = x0();
    let t = t_operator(x, &chain, &p).unwrap();
    let mut last = f64::INFINITY;
    for n in [8, 16, 32, 64] {
        let q = |z: C64| q_operator_fixed(Flavor::One, z, &chain, &p, n).unwrap().0;
        let (a, b, c) = (q(p.p * x), q(x / p.p), q(p.p * p.p * p.p * x));
        let (lhs, rhs) = tq_sides(Flavor::One, x, &chain, &p, &t, [&a, &b, &c]).unwrap();
        let r = lhs.rel_residual(&rhs).unwrap().value;
        assert!(r <= last.max(1e-13), "cutoff {n}: {r:e} after {last:e}");
        last = r;
    }
    assert!(last < 1e-12);
}

#[test]
fn eta_and_total_spin_are_diagonal() {
    let p = Params64::default();
    let e = eta(2, 1, &p);
    let q = p.q();
    assert!((e.get(0, 0) - q * q).norm() < 1e-15);
    assert!((e.get(3, 3) - (q * q).inv()).norm() < 1e-15);
    assert!((e.get(1, 1) - C64::new(1.0, 0.0)).norm() < 1e-15);
    let sz = total_sz::<f64>(3);
    assert_eq!(sz.get(0, 0), C64::new(3.0, 0.0));
    assert_eq!(sz.get(7, 7), C64::new(-3.0, 0.0));
    assert_eq!(sz.get(1, 1), C64::new(1.0, 0.0));
}

#[test]
fn chi_functions_vanish_at_their_zeros() {
    let p = Params64::default();
    let chain = ChainSpec::generic(1);
    // chi_2 vanishes where (x xi)^s = 1, e.g. x = 1/xi.
    let x = chain.xi[0].inv();
    assert!(chi2(x, &chain, &p).norm() < 1e-14);
    // chi_1 vanishes where (x/xi)^s = q^{-2} = p^{-2s}, e.g. x = xi / p^2.
    let x1 = chain.xi[0] / (p.p * p.p);
    assert!(chi1(x1, &chain, &p).norm() < 1e-13);
}

#[test]
fn single_precision_run_agrees_with_double_to_its_accuracy() {
    let p = Params64::default();
    let p32 = p.cast::<f32>();
    let chain = ChainSpec::generic(1);
    let chain32 = ChainSpec::<f32> { xi: chain.xi.iter().map(|z| cx(z.re, z.im)).collect() };
    let opts = TraceOptions { tail_tol: 1e-7, ..TraceOptions::default() };
    let a = q_operator(Flavor::One, x0(), &chain, &p, &TraceOptions::default()).unwrap().op;
    let b = q_operator(Flavor::One, cx::<f32>(0.95, 0.15), &chain32, &p32, &opts).unwrap().op.to_f64();
    assert!(a.rel_residual(&b).unwrap().value < 1e-4);
    let r = tq_residual(Flavor::One, cx::<f32>(0.95, 0.15), &chain32, &p32, &opts).unwrap().value;
    assert!(r < 1e-3, "{r:e}");
}
