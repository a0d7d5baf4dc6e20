use holonomy_core::bbw::*;
use holonomy_core::lie::{RootSystem, Weight};
use holonomy_core::Caps;

#[test]
fn line_bundle_sections_give_the_minuscule_module() {
    let rs = RootSystem::from_dynkin("E7").unwrap();
    let p = parabolic_from_node(&rs, 7).unwrap();
    let b = HomogeneousBundle {
        summands: [(p.line_label(), 1)].into_iter().collect(),
    };
    let t = kostant_cohomology(&p, &b);
    assert_eq!(t.dim(&rs, 0).unwrap(), 56);
    assert_eq!(p.conormal_labels().unwrap().len(), 28);
}

#[test]
fn e7_exact_sequences_and_euler() {
    let rs = RootSystem::from_dynkin("E7").unwrap();
    let p = parabolic_from_node(&rs, 7).unwrap();
    let caps = Caps::default();
    assert_eq!(exact_sequence_checks(&p, &caps).unwrap(), (true, true));
    for k in 1..=3 {
        let r = twisted_conormal_cohomology(&p, k, &caps, None).unwrap();
        assert!(r.euler_matches);
        assert_eq!(r.table.is_some(), k < 3);
    }
}

#[test]
fn e7_first_twist_splits_off_the_center() {
    let rs = RootSystem::from_dynkin("E7").unwrap();
    let p = parabolic_from_node(&rs, 7).unwrap();
    let r = twisted_conormal_cohomology(&p, 1, &Caps::default(), None).unwrap();
    let h0 = r.table.unwrap().degree(0);
    assert_eq!(h0.multiplicity(&Weight::zero(7)), 1);
    assert_eq!(h0.multiplicity(&Weight::fundamental(7, 1)), 1);
    assert_eq!(h0.num_summands(), 2);
}

#[test]
fn spencer_cross_checks_on_the_line() {
    let caps = Caps::default();
    for k in 1..=4 {
        let r = spencer_cross_check(k, &caps).unwrap();
        assert!(r.prolongation_matches, "{r:?}");
        assert!(r.curvature_bounded, "{r:?}");
    }
    let r3 = spencer_cross_check(3, &caps).unwrap();
    assert_eq!(
        (
            r3.prolongation_dim,
            r3.boundary_dim,
            r3.curvature_dim,
            r3.h1_sym3
        ),
        (0, 0, 8, 8)
    );
}

#[test]
fn plethysm_cap_is_enforced() {
    let rs = RootSystem::from_dynkin("E7").unwrap();
    let p = parabolic_from_node(&rs, 7).unwrap();
    let caps = Caps {
        plethysm: 100,
        ..Caps::default()
    };
    assert!(twisted_conormal_cohomology(&p, 3, &caps, None).is_err());
}
