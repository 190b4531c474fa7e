use num_complex::Complex64;
use proptest::prelude::*;

use dunkl::dunkl_calculus::{apply_delta_k, apply_t, fischer_pair};
use dunkl::intertwiner::IntertwinerTable;
use dunkl::kernel::{KernelFn, RankOneKernel};
use dunkl::polynomial::{Monomial, MultiPoly};
use dunkl::quadrature::c_k_closed_form;
use dunkl::root_system::RootSystemContext;
use dunkl::scalar::{rat, Rational};
use dunkl::transform_heat::HeatKernel;
use dunkl::verify::GroupSpec;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn multiplicity() -> impl Strategy<Value = Rational> {
    (0i64..=8, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly(dim: usize, max_degree: u16) -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, dim), rational()), 1..5).prop_map(move |terms| {
        let mut p = MultiPoly::zero(dim);
        for (e, c) in terms {
            if e.iter().sum::<u16>() <= max_degree {
                p.add_term(Monomial::from_exponents(&e), c);
            }
        }
        p
    })
}

fn b2(k: &[Rational]) -> RootSystemContext<Rational> {
    GroupSpec::B2.context(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn t_is_linear(k1 in multiplicity(), k2 in multiplicity(), p in poly(2, 4), q in poly(2, 4), c in rational()) {
        let ctx = b2(&[k1, k2]);
        let xi = [rat(1, 1), rat(-2, 3)];
        let lhs = apply_t(&ctx, &xi, &p.add(&q.scale(&c))).unwrap();
        let rhs = apply_t(&ctx, &xi, &p).unwrap().add(&apply_t(&ctx, &xi, &q).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_lowers_degree(k in multiplicity(), p in poly(3, 5)) {
        let ctx = GroupSpec::A2.context::<Rational>(&[k]).unwrap();
        let out = apply_t(&ctx, &[rat(1, 1), rat(0, 1), rat(1, 2)], &p).unwrap();
        if let (Some(dp), Some(dq)) = (p.degree(), out.degree()) {
            prop_assert!(dq < dp);
        }
    }

    #[test]
    fn pairing_is_symmetric(k1 in multiplicity(), k2 in multiplicity(), p in poly(2, 4), q in poly(2, 4)) {
        let ctx = b2(&[k1, k2]);
        prop_assert_eq!(fischer_pair(&ctx, &p, &q).unwrap(), fischer_pair(&ctx, &q, &p).unwrap());
    }

    #[test]
    fn laplacian_of_norm_squared(k in multiplicity()) {
        // Δ_k|x|² = 2N + 4γ
        let ctx = GroupSpec::A3.context::<Rational>(&[k]).unwrap();
        let out = apply_delta_k(&ctx, &MultiPoly::norm_squared(4)).unwrap();
        let want = rat(8, 1) + rat(4, 1) * ctx.gamma().clone();
        prop_assert_eq!(out, MultiPoly::constant(4, want));
    }

    #[test]
    fn intertwiner_preserves_degree(k in multiplicity(), p in poly(2, 5)) {
        let ctx = b2(&[k.clone(), k]);
        let table = IntertwinerTable::build(&ctx, 5).unwrap();
        let v = table.apply(&p).unwrap();
        for n in 0..=5 {
            prop_assert_eq!(p.homogeneous_part(n).is_zero(), v.homogeneous_part(n).is_zero());
        }
    }

    #[test]
    fn rank_one_kernel_symmetry(k in 0.0f64..4.0, x in -3.0f64..3.0, y in -3.0f64..3.0, l in -2.0f64..2.0) {
        let ev = RankOneKernel::new(k);
        let e = |a: f64, b: f64| ev.eval_e(&[a], &[Complex64::new(b, 0.0)]).unwrap().value;
        let v = e(x, y);
        prop_assert!(v.re > 0.0);
        prop_assert!((v - e(y, x)).norm() <= 1e-11 * v.norm());
        prop_assert!((e(l * x, y) - e(x, l * y)).norm() <= 1e-11 * e(l * x, y).norm().max(1.0));
        let bound = ev.eval_e(&[x], &[Complex64::new(0.0, y)]).unwrap().value.norm();
        prop_assert!(bound <= 1.0 + 1e-9);
    }

    #[test]
    fn heat_kernel_positive_and_symmetric(k in 0.0f64..3.0, t in 0.1f64..3.0, x in -4.0f64..4.0, y in -4.0f64..4.0) {
        let kr = dunkl::scalar::rational_from_f64((k * 8.0).round() / 8.0).unwrap();
        let ctx = GroupSpec::RANK_ONE.context::<f64>(&[kr.clone()]).unwrap();
        let ev = RankOneKernel::new(dunkl::scalar::rational_to_f64(&kr));
        let hk = HeatKernel::new(&ctx, &ev, c_k_closed_form(&ctx).unwrap());
        let a = hk.eval(t, &[x], &[y]).unwrap();
        let b = hk.eval(t, &[y], &[x]).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
        prop_assert!(a <= hk.gaussian_bound(t, &[x], &[y]) * (1.0 + 1e-12));
    }
}
