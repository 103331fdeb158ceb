use tqlab_core::special::{q_exp_series, q_pow};
use tqlab_core::{cx, ipow, q_exp, ExpBase, Params64, SpectralSampler, TqError, C64};
use tqlab_fock::{build_fock, cartan_diag, lowering_coefficient, t12, t_conjugator, Flavor, FockRep};
use tqlab_tensor::TensorOp;

type Op = TensorOp<f64>;

fn params() -> Vec<Params64> {
    vec![Params64::default(), Params64 { p: cx(0.62, 0.21), ..Params64::default() }, Params64 { s0: 2, s1: 1, ..Params64::default() }]
}

fn low(op: &Op, keep: usize) -> Op {
    op.restrict_slot(0, keep).unwrap()
}

fn res(a: &Op, b: &Op) -> f64 {
    a.rel_residual(b).unwrap().value
}

#[test]
fn defining_relations_hold_below_the_top_level() {
    for p in params().into_iter().filter(|p| p.q().norm() > 1.0) {
        for flavor in [Flavor::One, Flavor::Two] {
            let rep = build_fock(flavor, 16, &p).unwrap();
            for (name, r) in rep.relation_residuals().unwrap() {
                assert!(r.value < 1e-13, "{:?} {flavor:?} {name}: {:e}", p.p, r.value);
            }
        }
    }
}

#[test]
fn relations_inside_the_unit_disc_lose_only_conditioning_digits() {
    // For |q| < 1 the flavor-1 coefficients grow like |q|^{-2n}; the
    // q-commutator then cancels large terms, so the bound scales with them.
    let p = Params64 { p: cx(0.62, 0.21), ..Params64::default() };
    for flavor in [Flavor::One, Flavor::Two] {
        let rep = build_fock(flavor, 8, &p).unwrap();
        let growth = p.q().norm().powi(-16);
        for (name, r) in rep.relation_residuals().unwrap() {
            assert!(r.value < 1e-14 * growth, "{flavor:?} {name}: {:e}", r.value);
        }
    }
}

#[test]
fn truncation_breaks_only_the_top_level() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 8, &p).unwrap();
    let q = p.q();
    let lam = p.lambda();
    let ef = rep.e.matmul(&rep.f).unwrap();
    for n in 0..8 {
        let expected = q * (cx::<f64>(1.0, 0.0) - ipow(q, -2 * n as i64 - 2)) / (lam * lam);
        let ok = (ef.get(n, n) - expected).norm() < 1e-13 * expected.norm();
        assert_eq!(ok, n < 7, "level {n}");
    }
}

#[test]
fn vacuum_and_number_operator() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 12, &p).unwrap();
    for r in 0..12 {
        assert_eq!(rep.e.get(r, 0), cx(0.0, 0.0));
    }
    let fe = rep.f.matmul(&rep.e).unwrap();
    let q = p.q();
    let lam = p.lambda();
    for n in 0..12 {
        let expected = q * (cx::<f64>(1.0, 0.0) - ipow(q, -2 * n as i64)) / (lam * lam);
        assert!((fe.get(n, n) - expected).norm() < 1e-13 * expected.norm().max(1.0));
        if n > 0 {
            assert_eq!(lowering_coefficient(q, n), rep.e.get(n - 1, n));
        }
    }
}

#[test]
fn flavor_two_is_the_image_of_flavor_one() {
    let p = Params64::default();
    let one = build_fock(Flavor::One, 10, &p).unwrap();
    let two = build_fock(Flavor::Two, 10, &p).unwrap();
    assert_eq!(two.e, one.f);
    assert_eq!(two.f, one.e);
    assert!(two.levels.iter().zip(&one.levels).all(|(a, b)| *a == -*b));
    // q^{xi h_2} |n> = q^{2 xi n} |n>
    let xi = cx::<f64>(0.3, -0.2);
    let d = cartan_diag(&two, |_, h| q_pow(xi * cx(h as f64, 0.0), &p)).unwrap();
    for n in 0..10 {
        let expected = q_pow(xi * cx(2.0 * n as f64, 0.0), &p);
        assert!((d.get(n, n) - expected).norm() < 1e-13 * expected.norm());
    }
}

#[test]
fn cartan_functions() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 10, &p).unwrap();
    assert_eq!(cartan_diag(&rep, |_, _| cx(1.0, 0.0)).unwrap(), rep.identity());
    let xi = cx::<f64>(0.7, 0.1);
    let d = cartan_diag(&rep, |_, h| q_pow(xi * cx(h as f64, 0.0), &p)).unwrap();
    for n in 0..10 {
        let expected = q_pow(xi * cx(-2.0 * n as f64, 0.0), &p);
        assert!((d.get(n, n) - expected).norm() < 1e-13 * expected.norm());
    }
    // commutes with q^{xi h}
    let qh = rep.q_half_h(2);
    assert_eq!(d.commutator(&qh).unwrap().max_abs(), 0.0);
    // q-exponential Cartan function, checked against the series at n = 0
    let x = cx::<f64>(0.9, 0.2);
    let q = p.q();
    let arg = |h: i64| -p.eps_minus * ipow(x, p.s() as i64) * ipow(q, -h) / (p.lambda() * p.eps_plus);
    let f = cartan_diag(&rep, |_, h| q_exp(arg(h), ExpBase::QInvSquared, &p, false).unwrap()).unwrap();
    let series = q_exp_series(arg(0), ipow(q, -2), 200).expect("series converges");
    assert!((f.get(0, 0) - series).norm() < 1e-12 * series.norm());
    assert!(matches!(cartan_diag(&rep, |_, _| cx(f64::INFINITY, 0.0)), Err(TqError::PoleHit(_))));
}

fn words(rep: &FockRep<f64>, s: &mut SpectralSampler) -> Vec<Op> {
    let letters = [rep.e.clone(), rep.f.clone(), rep.q_half_h(1), rep.p_half_h(3)];
    (0..20)
        .map(|_| {
            let len = 1 + (s.uniform() * 3.0) as usize;
            let mut w = rep.identity();
            for _ in 0..len {
                let k = (s.uniform() * letters.len() as f64) as usize;
                w = w.matmul(&letters[k.min(3)]).unwrap();
            }
            w.scale(s.square(1.0))
        })
        .collect()
}

#[test]
fn anti_involution_reverses_products() {
    for p in params() {
        for flavor in [Flavor::One, Flavor::Two] {
            let rep = build_fock(flavor, 14, &p).unwrap();
            let tc = t_conjugator(&rep).unwrap();
            let mut s = SpectralSampler::new(p.rng_seed, "t-words");
            let ws = words(&rep, &mut s);
            for pair in ws.chunks(2) {
                let (a, b) = (&pair[0], &pair[1]);
                let lhs = tc.apply(&a.matmul(b).unwrap()).unwrap();
                let rhs = tc.apply(b).unwrap().matmul(&tc.apply(a).unwrap()).unwrap();
                assert!(low(&lhs, 12).slab_residual(&low(&rhs, 12), 0, 12).unwrap().value < 1e-10);
            }
        }
    }
}

#[test]
fn anti_involution_acts_on_generators() {
    let p = Params64::default();
    let q = p.q();
    let rep = build_fock(Flavor::One, 12, &p).unwrap();
    let tc = t_conjugator(&rep).unwrap();
    let te = tc.apply(&rep.e).unwrap();
    let expected = cartan_diag(&rep, |_, h| ipow(q, -h - 1)).unwrap().matmul(&rep.f).unwrap();
    assert!(res(&low(&te, 11), &low(&expected, 11)) < 1e-13);
    // diagonal operators are fixed
    let qh = rep.q_half_h(3);
    assert!(res(&tc.apply(&qh).unwrap(), &qh) < 1e-15);
    // t is an involution
    let x = rep.e.matmul(&rep.f).unwrap().add(&rep.f.scale(cx(0.3, 0.1))).unwrap();
    assert!(res(&tc.apply(&tc.apply(&x).unwrap()).unwrap(), &x) < 1e-13);
    // the conjugating diagonal is consistent with its ratios
    let d: Vec<C64> = tc.diagonal();
    assert!((tc.ratio(5, 2) - d[5] / d[2]).norm() < 1e-12 * tc.ratio(5, 2).norm());
}

#[test]
fn anti_involution_fixes_trace_class_monomials() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 16, &p).unwrap();
    let tc = t_conjugator(&rep).unwrap();
    let xi = cx::<f64>(0.4, 0.3);
    let qxh = cartan_diag(&rep, |_, h| q_pow(xi * cx(h as f64, 0.0), &p)).unwrap();
    for n in 1..=3 {
        let mut m = qxh.clone();
        for _ in 0..n {
            m = rep.f.matmul(&m).unwrap();
        }
        for _ in 0..n {
            m = rep.e.matmul(&m).unwrap();
        }
        let keep = 16 - n;
        let t = tc.apply(&m).unwrap();
        assert!(low(&t, keep).slab_residual(&low(&m, keep), 0, keep).unwrap().value < 1e-12, "n = {n}");
    }
}

#[test]
fn anti_involution_on_both_slots() {
    let p = Params64::default();
    let rep = build_fock(Flavor::One, 6, &p).unwrap();
    let tc = t_conjugator(&rep).unwrap();
    let mut m = Op::zeros(&[6, 2]);
    m = m.add(&rep.e.kron(&tqlab_tensor::unit(2, 0, 1))).unwrap();
    let t = t12(&tc, &m).unwrap();
    let expected = tc.apply(&rep.e).unwrap().kron(&tqlab_tensor::unit(2, 1, 0));
    assert!(res(&t, &expected) < 1e-14);
    assert!(matches!(tc.apply(&Op::identity(&[5])), Err(TqError::ShapeMismatch(_))));
}

#[test]
fn invalid_representations() {
    let p = Params64::default();
    assert!(matches!(build_fock(Flavor::One, 1, &p), Err(TqError::InvalidParams(_))));
    assert!(matches!(build_fock(Flavor::One, 8, &Params64 { p: cx(1.0, 0.0), ..p.clone() }), Err(TqError::DegenerateQ(_))));
    assert_eq!(Flavor::from_index(2).unwrap(), Flavor::Two);
    assert!(Flavor::from_index(3).is_err());
}
