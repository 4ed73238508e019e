//! Exact rational scalars, weighted monomials and sparse polynomials.

mod parse;
mod poly;
mod scalar;
mod spec;

pub use parse::{parse_poly, parse_poly_list};
pub use poly::{Poly, Term};
pub use scalar::{binomial, factorial, Scalar};
pub use spec::{Monomial, MonomialOrder, OrderKey, RingSpec, Variable, MAX_EXPONENT, MAX_VARS};

pub(crate) use poly::same_spec;

#[cfg(test)]
mod props {
    use super::*;
    use alloc::sync::Arc;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn spec_strategy() -> impl Strategy<Value = Arc<RingSpec>> {
        prop::collection::vec(1u32..=3, 1..=4).prop_map(|ws| {
            let names = ["a", "b", "c", "d"];
            let vars: Vec<(&str, u32)> = names.iter().copied().zip(ws).collect();
            RingSpec::graded(&vars).unwrap()
        })
    }

    fn poly_in(spec: Arc<RingSpec>) -> impl Strategy<Value = Poly> {
        let n = spec.nvars();
        prop::collection::vec((prop::collection::vec(0u32..=3, n), -6i64..=6, 1i64..=4), 0..=5).prop_map(
            move |terms| {
                Poly::from_terms(
                    &spec,
                    terms.into_iter().map(|(e, num, den)| {
                        (Monomial::from_exponents(&e).unwrap(), Scalar::from_frac(num, den))
                    }),
                )
            },
        )
    }

    fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
        spec_strategy().prop_flat_map(|s| (poly_in(s.clone()), poly_in(s.clone()), poly_in(s)))
    }

    fn homogeneous_pair() -> impl Strategy<Value = (Poly, Poly)> {
        triple().prop_map(|(p, q, _)| {
            let dp = p.degree().unwrap_or(0);
            let dq = q.degree().unwrap_or(0);
            (p.component(dp), q.component(dq))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms((p, q, r) in triple()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn render_parse_round_trip((p, _, _) in triple()) {
            let text = p.render();
            let back = parse_poly(&text, p.spec()).unwrap();
            prop_assert_eq!(back.render(), text);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn degree_is_additive((p, q) in homogeneous_pair()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.homogeneous_degree(), Some(p.homogeneous_degree().unwrap() + q.homogeneous_degree().unwrap()));
        }

        #[test]
        fn components_sum_back((p, _, _) in triple()) {
            let mut acc = Poly::zero(p.spec());
            for (d, c) in p.graded_components() {
                prop_assert_eq!(c.homogeneous_degree(), Some(d));
                acc = &acc + &c;
            }
            prop_assert_eq!(acc, p);
        }
    }
}
