use tqlab_boundary::*;
use tqlab_core::Params64;

#[test]
fn all_boundary_identities_pass_at_default_point() {
    let p = Params64::default();
    let mut bad = Vec::new();
    for id in BOUNDARY_IDS {
        match check_boundary_identity(id, &p, &BoundaryCheckOptions::default()) {
            Ok(r) => {
                println!("{}", r.tsv(true));
                if !r.pass {
                    bad.push(id.to_string());
                }
            }
            Err(e) => {
                println!("{id}\terror {e}");
                bad.push(id.to_string());
            }
        }
    }
    assert!(bad.is_empty(), "failing: {bad:?}");
}

#[test]
fn all_boundary_identities_pass_with_unequal_gradation() {
    // Smaller cutoff: the K-operator entries grow like |q|^{n^2} and |q| is larger for s = 3.
    let opts = BoundaryCheckOptions { cutoff: 20, ..BoundaryCheckOptions::default() };
    for p in [Params64 { s0: 2, s1: 1, ..Params64::default() }, Params64 { s0: 1, s1: 2, ..Params64::default() }] {
        for r in check_all_boundary(&p, &opts).unwrap() {
            println!("{}", r.tsv(false));
            assert!(r.pass, "{} residual {:e} at s0={} s1={}", r.id, r.max_residual, p.s0, p.s1);
        }
    }
}

#[test]
fn pure_matrix_identities_meet_machine_precision() {
    let p = Params64::default();
    for id in ["bnd.refeq0", "bnd.refeqdual", "bnd.kmatdual", "bnd.inv1", "bnd.dressT"] {
        let r = check_boundary_identity(id, &p, &BoundaryCheckOptions::default()).unwrap();
        assert!(r.max_residual < 1e-12, "{id}: {:e}", r.max_residual);
    }
}

#[test]
fn four_by_four_identities_hold_inside_the_unit_disc() {
    let p = Params64 { p: tqlab_core::cx(0.62, 0.21), ..Params64::default() };
    for id in ["bnd.refeq0", "bnd.refeqdual", "bnd.kmatdual", "bnd.inv1", "bnd.dressT"] {
        let r = check_boundary_identity(id, &p, &BoundaryCheckOptions::default()).unwrap();
        assert!(r.max_residual < 1e-12, "{id}: {:e}", r.max_residual);
    }
}

#[test]
fn unknown_identity_is_rejected() {
    assert!(matches!(
        check_boundary_identity("bnd.refeq9", &Params64::default(), &BoundaryCheckOptions::default()),
        Err(tqlab_core::TqError::UnknownIdentity(_))
    ));
}

#[test]
fn reports_are_deterministic() {
    let p = Params64::default();
    let o = BoundaryCheckOptions::default();
    let a = check_boundary_identity("bnd.GKLbKG", &p, &o).unwrap();
    let b = check_boundary_identity("bnd.GKLbKG", &p, &o).unwrap();
    assert_eq!(a.tsv(false), b.tsv(false));
}
