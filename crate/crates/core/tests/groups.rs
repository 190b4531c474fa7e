use dunkl::quadrature::{c_k_closed_form, gaussian_wk_rule};
use dunkl::scalar::{rat, Rational};
use dunkl::verify::GroupSpec;

#[test]
fn group_orders_and_root_counts() {
    for (spec, order, roots) in [
        (GroupSpec::RANK_ONE, 2, 2),
        (GroupSpec::A2, 6, 6),
        (GroupSpec::A3, 24, 12),
        (GroupSpec::B2, 8, 8),
    ] {
        let ctx = spec.context::<Rational>(&[rat(1, 2)]).unwrap();
        assert_eq!(ctx.group().len(), order, "{}", spec.label());
        assert_eq!(ctx.system().roots().len(), roots, "{}", spec.label());
        assert_eq!(ctx.positive().len(), roots / 2);
    }
    let i5 = GroupSpec::I2_5.context::<f64>(&[rat(1, 1)]).unwrap();
    assert_eq!(i5.group().len(), 10);
    assert_eq!(i5.gamma(), &rat(5, 1));
}

#[test]
fn b2_has_two_orbits() {
    let ctx = GroupSpec::B2.context::<Rational>(&[rat(1, 2), rat(2, 1)]).unwrap();
    assert_eq!(ctx.orbits().len(), 2);
    assert_eq!(ctx.gamma(), &rat(5, 1));
}

#[test]
fn gaussian_mass_matches_product_formula() {
    for spec in [GroupSpec::A2, GroupSpec::B2] {
        for k in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            let ctx = spec.context::<f64>(&[k]).unwrap();
            let want = c_k_closed_form(&ctx).unwrap();
            let got = gaussian_wk_rule(&ctx, 24).unwrap().total_mass();
            assert!((got - want).abs() <= 1e-9 * want, "{}: {got} vs {want}", spec.label());
        }
    }
}

#[test]
fn rejects_negative_multiplicity() {
    assert!(GroupSpec::A2.context::<Rational>(&[rat(-1, 2)]).is_err());
}
