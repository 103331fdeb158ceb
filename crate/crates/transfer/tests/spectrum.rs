use tqlab_core::{cx, ChainSpec, Params64, TqError, C64};
use tqlab_fock::Flavor;
use tqlab_transfer::*;

#[test]
fn eigenvalue_tq_relation_on_twenty_points() {
    let p = Params64::default();
    let grid = XGrid::parse("circle:1.05:20").unwrap();
    let rep = spectrum(&grid, Flavor::One, &ChainSpec::generic(2), &p, &SpectrumOptions::default()).unwrap();
    assert_eq!(rep.pairs.len(), 4);
    assert!(rep.leakage < 1e-8, "leakage {:e}", rep.leakage);
    for (k, e) in rep.pairs.iter().enumerate() {
        assert!(e.tq_residual < 1e-7, "pair {k}: {:e}", e.tq_residual);
        assert_eq!(e.q_modulus.len(), 20);
    }
    assert_eq!(rep.lines().lines().count(), 4);
    assert_eq!(rep.lines().lines().next().unwrap().split('\t').count(), 6);
}

#[test]
fn eigenvalues_sum_to_the_trace() {
    let p = Params64::default();
    let chain = ChainSpec::generic(2);
    let opts = SpectrumOptions::default();
    let rep = spectrum(&XGrid::parse("list:1.0+0.1j").unwrap(), Flavor::One, &chain, &p, &opts).unwrap();
    let sum: C64 = rep.pairs.iter().map(|e| e.t).sum();
    let tr = t_operator(opts.reference, &chain, &p).unwrap().trace();
    assert!((sum - tr).norm() < 1e-12 * tr.norm().max(1.0));
}

#[test]
fn empty_grid_gives_empty_report() {
    let rep = spectrum(&XGrid::parse("none").unwrap(), Flavor::One, &ChainSpec::generic(2), &Params64::default(), &SpectrumOptions::default()).unwrap();
    assert!(rep.pairs.is_empty());
    assert!(rep.lines().is_empty());
}

#[test]
fn symmetric_point_is_degenerate() {
    let p = Params64 { eps_minus: cx(1.0, 0.0), epsbar_minus: cx(1.0, 0.0), ..Params64::default() };
    let chain = ChainSpec { xi: vec![cx(1.0, 0.0); 2] };
    let err = spectrum(&XGrid::parse("circle:1.0:4").unwrap(), Flavor::One, &chain, &p, &SpectrumOptions::default()).unwrap_err();
    assert!(matches!(err, TqError::DegenerateSpectrum(_)), "{err}");
}

#[test]
fn grid_specifications_parse() {
    assert_eq!(XGrid::parse("circle:1.1:7").unwrap().points.len(), 7);
    let line = XGrid::parse("line:0.9-0.1j:1.1+0.1j:3").unwrap();
    assert_eq!(line.points.len(), 3);
    assert!((line.points[1] - C64::new(1.0, 0.0)).norm() < 1e-15);
    assert_eq!(XGrid::parse("list:1+0j,0.5j").unwrap().points[1], C64::new(0.0, 0.5));
    assert!(XGrid::parse("circle:0:3").is_err());
    assert!(XGrid::parse("spiral:1:3").is_err());
    assert!(XGrid::parse("list:0").is_err());
}
