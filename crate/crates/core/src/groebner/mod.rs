//! Reduced Gröbner bases, normal forms, Hilbert series and elimination.

mod buchberger;
mod ideal;

pub use buchberger::{groebner_basis, Budget, GroebnerBasis};
pub use ideal::{eliminate, ideal_equal, morphism_kernel, Ideal, SeriesVector};

#[cfg(test)]
mod props {
    use super::*;
    use crate::exactpoly::{Monomial, Poly, RingSpec, Scalar};
    use crate::linalg::Matrix;
    use alloc::sync::Arc;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn spec_of(n: usize) -> Arc<RingSpec> {
        let names = ["x", "y", "z"];
        let vars: Vec<(&str, u32)> = names[..n].iter().map(|v| (*v, 1)).collect();
        RingSpec::graded(&vars).unwrap()
    }

    /// Random homogeneous generators in up to three weight-one variables.
    fn homogeneous_ideal() -> impl Strategy<Value = (Arc<RingSpec>, Vec<Poly>)> {
        (1usize..=3).prop_flat_map(|n| {
            let gen = (1u32..=3, prop::collection::vec((0usize..64, -3i64..=3), 1..=4));
            prop::collection::vec(gen, 1..=4).prop_map(move |raw| {
                let spec = spec_of(n);
                let gens = raw
                    .into_iter()
                    .map(|(deg, terms)| {
                        let monos = spec.monomials_of_degree(deg);
                        Poly::from_terms(
                            &spec,
                            terms.into_iter().map(|(i, c)| (monos[i % monos.len()], Scalar::from_int(c))),
                        )
                    })
                    .filter(|p| !p.is_zero())
                    .collect::<Vec<_>>();
                (spec, gens)
            })
        })
    }

    /// dim (R/I)_d computed as #monomials − rank of all multiples m·g in degree d.
    fn brute_force_dimension(spec: &Arc<RingSpec>, gens: &[Poly], d: u32) -> u64 {
        let monos = spec.monomials_of_degree(d);
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            let gd = g.homogeneous_degree().unwrap();
            if gd > d {
                continue;
            }
            for m in spec.monomials_of_degree(d - gd) {
                let p = g.mul_term(&m, &Scalar::one());
                columns.push(monos.iter().map(|mono| p.coefficient(mono)).collect());
            }
        }
        let rank = if columns.is_empty() { 0 } else { Matrix::from_columns(&columns, monos.len()).rank() };
        (monos.len() - rank) as u64
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn hilbert_series_matches_enumeration((spec, gens) in homogeneous_ideal()) {
            let ideal = Ideal::new(&spec, gens.clone()).unwrap().with_basis(&Budget::unlimited()).unwrap();
            let dims = ideal.graded_dimensions(6);
            for d in 0..=6u32 {
                prop_assert_eq!(dims.get(d as usize), brute_force_dimension(&spec, &gens, d));
            }
        }

        #[test]
        fn cached_bases_are_reduced_groebner_bases((spec, gens) in homogeneous_ideal()) {
            let gb = groebner_basis(&spec, &gens, &Budget::unlimited()).unwrap();
            prop_assert!(gb.satisfies_buchberger_criterion());
            prop_assert!(gb.is_reduced());
            for g in &gens {
                prop_assert!(gb.normal_form(g).is_zero());
            }
        }

        #[test]
        fn normal_form_is_idempotent_and_linear(
            (spec, gens) in homogeneous_ideal(),
            a in prop::collection::vec((prop::collection::vec(0u32..=4, 3), -5i64..=5), 0..6),
            b in prop::collection::vec((prop::collection::vec(0u32..=4, 3), -5i64..=5), 0..6),
        ) {
            let gb = groebner_basis(&spec, &gens, &Budget::unlimited()).unwrap();
            let n = spec.nvars();
            let mk = |raw: &Vec<(Vec<u32>, i64)>| Poly::from_terms(
                &spec,
                raw.iter().map(|(e, c)| (Monomial::from_exponents(&e[..n]).unwrap(), Scalar::from_int(*c))),
            );
            let (p, q) = (mk(&a), mk(&b));
            let np = gb.normal_form(&p);
            prop_assert_eq!(gb.normal_form(&np), np.clone());
            let nq = gb.normal_form(&q);
            prop_assert_eq!(gb.normal_form(&(&p + &q)), gb.normal_form(&(&np + &nq)));
            prop_assert!(gb.normal_form(&(&p - &np)).is_zero());
        }

        #[test]
        fn ideal_equality_is_reflexive_and_symmetric((spec, gens) in homogeneous_ideal(), seed in 0usize..24) {
            let mut scrambled = gens.clone();
            scrambled.rotate_left(seed % gens.len().max(1));
            if scrambled.len() > 1 {
                let extra = &scrambled[0] + &scrambled[1];
                scrambled.push(extra);
                scrambled.reverse();
            }
            let a = Ideal::new(&spec, gens).unwrap();
            let b = Ideal::new(&spec, scrambled).unwrap();
            let budget = Budget::unlimited();
            prop_assert!(ideal_equal(&a, &a, &budget).unwrap());
            prop_assert!(ideal_equal(&a, &b, &budget).unwrap());
            prop_assert!(ideal_equal(&b, &a, &budget).unwrap());
        }
    }
}
