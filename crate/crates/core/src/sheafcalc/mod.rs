//! Characteristic classes: Whitney products and quotients, twists, Chern
//! character, Todd class, projective bundles, blow-ups and Riemann–Roch.

mod bundle;
mod construct;

pub use bundle::{
    ch_to_chern, chern_to_ch, exp_class, inverse_total, todd, todd_log_coefficients, whitney_quotient,
    BundleClass, CharSeries, SeriesKind,
};
pub use construct::{
    blowup_alpha, blowup_chern, blowup_correction, blowup_ring, hrr_euler, hrr_euler_integral,
    hrr_euler_with_todd, projective_bundle, BlowupData,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{ChowRing, DivisorPush, RingMorphism};
    use crate::exactpoly::{binomial, parse_poly, RingSpec, Scalar};
    use crate::groebner::Budget;
    use alloc::sync::Arc;

    fn univariate(name: &str, var: &str, top: u32) -> Arc<ChowRing> {
        let s = RingSpec::graded(&[(var, 1)]).unwrap();
        let rel = parse_poly(&alloc::format!("{var}^{}", top + 1), &s).unwrap();
        let pt = parse_poly(&alloc::format!("{var}^{top}"), &s).unwrap();
        ChowRing::build(name, &s, alloc::vec![rel], top, Some(pt), &Budget::unlimited()).unwrap()
    }

    fn point() -> Arc<ChowRing> {
        let s = RingSpec::graded::<&str>(&[]).unwrap();
        let one = crate::exactpoly::Poly::one(&s);
        ChowRing::build("pt", &s, alloc::vec![], 0, Some(one), &Budget::unlimited()).unwrap()
    }

    #[test]
    fn geometric_series() {
        let r = univariate("P3", "t", 3);
        let b = BundleClass::from_text(&r, 1, "1 + t").unwrap();
        let q = whitney_quotient(&[], &[(&b, 1)]).unwrap();
        assert_eq!(q.total.render(), "-t^3 + t^2 - t + 1");
        assert_eq!(q.rank, -1);
        let p2 = univariate("P2", "k", 2);
        let kb = BundleClass::from_text(&p2, 1, "1 + 4*k").unwrap();
        assert_eq!(whitney_quotient(&[], &[(&kb, 1)]).unwrap().total, p2.parse("1 - 4*k + 16*k^2").unwrap());
    }

    #[test]
    fn twists() {
        let r = univariate("P3", "t", 3);
        let t = r.var("t").unwrap();
        assert_eq!(BundleClass::trivial(&r, 2).twist_by_line(&t).total, r.parse("(1 + t)^2").unwrap());
        let s = RingSpec::graded(&[("e", 1), ("t", 1)]).unwrap();
        let two = ChowRing::build("two", &s, alloc::vec![parse_poly("e^2", &s).unwrap(), parse_poly("t^2", &s).unwrap()], 2, None, &Budget::unlimited())
            .unwrap();
        let line = BundleClass::from_text(&two, 1, "1 + e").unwrap();
        assert_eq!(line.twist_by_line(&two.var("t").unwrap()).total, two.parse("1 + e + t").unwrap());
        assert_eq!(line.twist_by_line(&two.zero()), line);
    }

    #[test]
    fn low_degree_character_and_todd() {
        let s = RingSpec::graded(&[("a", 1), ("b", 2)]).unwrap();
        let r = ChowRing::build("w", &s, alloc::vec![parse_poly("a^3", &s).unwrap(), parse_poly("b^2", &s).unwrap(), parse_poly("a*b", &s).unwrap()], 2, None, &Budget::unlimited())
            .unwrap();
        let e = BundleClass::from_text(&r, 3, "1 + a + b").unwrap();
        assert_eq!(chern_to_ch(&e).component(2), r.parse("(a^2 - 2*b)/2").unwrap());
        assert_eq!(todd(&e).total, r.parse("1 + a/2 + (a^2 + b)/12").unwrap());
        let zero = BundleClass::trivial(&r, 0);
        assert_eq!(todd(&zero).total, r.one());
        let a = todd_log_coefficients(2);
        assert_eq!(a[1], Scalar::from_frac(1, 2));
        assert_eq!(a[2], Scalar::from_frac(-1, 24));
    }

    #[test]
    fn riemann_roch_on_the_plane() {
        let p2 = univariate("P2", "k", 2);
        let t = BundleClass::from_text(&p2, 2, "(1 + k)^3").unwrap();
        let td = todd(&t);
        assert_eq!(p2.integrate(&td.total).unwrap(), Scalar::one());
        for m in -5..=10i64 {
            let chi = hrr_euler_with_todd(&td, &p2.var("k").unwrap().scale_int(m)).unwrap();
            assert_eq!(chi, Scalar::from_frac((m + 1) * (m + 2), 2), "m = {m}");
        }
        assert_eq!(hrr_euler(&t, &p2.var("k").unwrap().scale_int(-5)).unwrap(), Scalar::from_int(6));
    }

    #[test]
    fn projective_space_as_bundle_over_a_point() {
        let pt = point();
        let (p4, rho) = projective_bundle(&pt, &BundleClass::trivial(&pt, 5), "rho", &Budget::unlimited()).unwrap();
        assert_eq!(p4.series().0, alloc::vec![1, 1, 1, 1, 1]);
        assert_eq!(rho.pow(4).integrate().unwrap(), Scalar::one());
        assert!(rho.pow(5).is_zero());
    }

    #[test]
    fn plane_blown_up_at_a_point() {
        let p2 = univariate("P2", "k", 2);
        let pt = point();
        let restrict = RingMorphism::from_text(&p2, &pt, &[("k", "0")]).unwrap();
        let normal = BundleClass::trivial(&pt, 2);
        let kernel = [p2.var("k").unwrap()];
        let center = p2.parse("k^2").unwrap();
        let data = BlowupData { restriction: &restrict, kernel: &kernel, normal: &normal, center: &center, var: "tau" };
        let bl = blowup_ring(&data, &Budget::unlimited()).unwrap();
        assert_eq!(bl.series().0, alloc::vec![1, 2, 1]);
        let e = bl.parse("-tau").unwrap();
        assert_eq!(e.pow(2).integrate().unwrap(), Scalar::from_int(-1));

        // tangent bundle: c1 = 3k − E, ∫c2 = 4
        let (ex, zeta) = projective_bundle(&pt, &normal, "zeta", &Budget::unlimited()).unwrap();
        let i = RingMorphism::new(&bl, &ex, &[("k", &ex.zero()), ("tau", &zeta)]).unwrap();
        let push = DivisorPush::new(i, e.clone()).unwrap();
        let f_ty = BundleClass::from_text(&bl, 2, "(1 + k)^3").unwrap();
        let t_bl = blowup_chern(&f_ty, &BundleClass::trivial(&ex, 0), &BundleClass::trivial(&ex, 2), &zeta, 2, &push).unwrap();
        assert_eq!(t_bl.chern(1), bl.parse("3*k + tau").unwrap());
        assert_eq!(t_bl.chern(2).integrate().unwrap(), Scalar::from_int(4));

        let wrong = [p2.var("k").unwrap().pow(2)];
        let data = BlowupData { kernel: &wrong, ..data };
        let err = blowup_ring(&data, &Budget::unlimited()).unwrap_err();
        assert!(matches!(err, crate::Error::KernelMismatch(_)), "{err:?}");
    }

    #[test]
    fn divisor_center_needs_no_correction() {
        let r = univariate("P3", "t", 3);
        let n = BundleClass::from_text(&r, 1, "1 + t").unwrap();
        let zeta = r.parse("-t").unwrap();
        assert!(blowup_alpha(&n, &zeta, 1).is_zero());
        let two = BundleClass::from_text(&r, 2, "1 + 2*t + 3*t^2").unwrap();
        let z = r.var("t").unwrap();
        let alpha = blowup_alpha(&two, &z, 2);
        assert_eq!(alpha, r.parse("-1 + t + t^2 + t*(2*t) + 3*t^2").unwrap());
        assert_eq!(binomial(14, 0) - binomial(14, 1), Scalar::from_int(-13));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::chow::ChowRing;
    use crate::exactpoly::{parse_poly, Monomial, Poly, RingSpec, Scalar};
    use crate::groebner::Budget;
    use alloc::sync::Arc;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn ring() -> Arc<ChowRing> {
        // P^3 x P^3, top degree 6
        let s = RingSpec::graded(&[("x", 1), ("y", 1)]).unwrap();
        let rels = alloc::vec![parse_poly("x^4", &s).unwrap(), parse_poly("y^4", &s).unwrap()];
        ChowRing::build("P3xP3", &s, rels, 6, Some(parse_poly("x^3*y^3", &s).unwrap()), &Budget::unlimited()).unwrap()
    }

    fn bundle() -> impl Strategy<Value = BundleClass> {
        (0i64..=4, prop::collection::vec(((0u32..=3, 0u32..=3), -3i64..=3), 0..6)).prop_map(|(rank, terms)| {
            let r = ring();
            let p = Poly::from_terms(
                r.spec(),
                terms
                    .into_iter()
                    .filter(|((a, b), _)| a + b > 0)
                    .map(|((a, b), c)| (Monomial::from_exponents(&[a, b]).unwrap(), Scalar::from_int(c))),
            );
            let total = r.class(&(&Poly::one(r.spec()) + &p)).unwrap();
            BundleClass::new(rank, total).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ch_round_trip(b in bundle()) {
            let back = ch_to_chern(&chern_to_ch(&b)).unwrap();
            prop_assert_eq!(back, b);
        }

        #[test]
        fn ch_additive_td_multiplicative(a in bundle(), b in bundle()) {
            let s = a.sum(&b);
            prop_assert_eq!(chern_to_ch(&s), chern_to_ch(&a).add(&chern_to_ch(&b)));
            prop_assert_eq!(todd(&s).total, &todd(&a).total * &todd(&b).total);
        }

        #[test]
        fn whitney_group_law(b in bundle()) {
            let q = whitney_quotient(&[(&b, 1)], &[(&b, 1)]).unwrap();
            prop_assert_eq!(q.rank, 0);
            prop_assert_eq!(q.total, b.ring().one());
        }

        #[test]
        fn zero_twist_is_identity(b in bundle()) {
            prop_assert_eq!(b.twist_by_line(&b.ring().zero()), b.clone());
        }

        #[test]
        fn twist_matches_character(b in bundle(), a in -2i64..=2, c in -2i64..=2) {
            let r = b.ring().clone();
            let t = r.parse(&alloc::format!("{a}*x + {c}*y")).unwrap();
            let line = BundleClass::line(&t);
            let via_ch = ch_to_chern(&chern_to_ch(&b).tensor(&chern_to_ch(&line))).unwrap();
            prop_assert_eq!(b.twist_by_line(&t), via_ch);
        }

        #[test]
        fn bundle_point_class_integrates_to_one(rank in 1i64..=3, coeffs in prop::collection::vec(-2i64..=2, 3)) {
            let base = ring();
            let text: Vec<alloc::string::String> = (1..=rank as usize).map(|i| alloc::format!("{}*x^{i}", coeffs[i - 1])).collect();
            let u = BundleClass::from_text(&base, rank, &alloc::format!("1 + {}", text.join(" + "))).unwrap();
            let (pb, rho) = projective_bundle(&base, &u, "rho", &Budget::unlimited()).unwrap();
            let pt = base.point_class().unwrap().in_ring(&pb).unwrap();
            prop_assert_eq!((&pt * &rho.pow(rank as u32 - 1)).integrate().unwrap(), Scalar::one());
            prop_assert_eq!(pb.series().total(), base.series().total() * rank as u64);
        }
    }
}
