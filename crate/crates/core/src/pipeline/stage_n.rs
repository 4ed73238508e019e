//! `A*(N)` from the anti-invariants of the Weyl group `S3 × S2`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::weyl::{WeylData, ROOT_NAMES};
use super::workbench::{NData, Workbench};
use super::report::{join, StageReport};
use crate::chow::{ChowClass, ChowRing};
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, RingSpec, Scalar};
use crate::groebner::{ideal_equal, Budget, Ideal, SeriesVector};
use crate::linalg::{solve, Matrix};
use crate::sheafcalc::BundleClass;

/// `1/(1 + x)` truncated at `top`, for `x` without constant term.
fn geometric_inverse(x: &Poly, top: u32) -> Poly {
    let spec = x.spec();
    let mut acc = Poly::one(spec);
    let mut power = Poly::one(spec);
    for _ in 0..top {
        power = -(&power * x).truncate(top);
        acc = &acc + &power;
    }
    acc
}

/// Solves `r = 0` for the variable `var`, which must occur linearly and
/// only in the monomial `var` itself.
fn solve_linear(r: &Poly, var: &str) -> Result<Poly> {
    let spec = r.spec();
    let i = spec.index_of(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
    let m = Monomial::var(i, 1);
    let c = r.coefficient(&m);
    let rest = r - &Poly::monomial(spec, m, c.clone());
    if c.is_zero() || rest.terms().iter().any(|t| t.mono.exponent(i) > 0) {
        return Err(Error::NotDivisible(format!("{var} is not linear in {}", r.render())));
    }
    Ok(rest.scale(&-c.inv().expect("nonzero")))
}

impl Workbench {
    pub(crate) fn stage_n(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let weyl = WeylData::new()?;
        let sym = weyl.symmetric().clone();
        let phis: Vec<Poly> =
            weyl.anti_invariants()?.iter().map(|a| weyl.antisymmetrize_phi(a)).collect::<Result<_>>()?;
        let b1_minus_d1 = crate::exactpoly::parse_poly("b1 - d1", &sym)?;
        report.check_eq("phi(first anti-invariant)", &b1_minus_d1, &phis[0]);

        // d1 = b1 from here on
        let s4 = RingSpec::graded(&[("b1", 1), ("b2", 2), ("b3", 3), ("d2", 2)])?;
        let v = |n: &str| Poly::var(&s4, n);
        let identify = [Some(v("b1")?), Some(v("b2")?), Some(v("b3")?), Some(v("b1")?), Some(v("d2")?)];
        let rs: Vec<Poly> = phis[1..].iter().map(|p| p.substitute(&identify, &s4)).collect::<Result<_>>()?;
        let listed = fx.polys("N.r", &s4)?;
        for (i, (r, l)) in rs.iter().zip(&listed).enumerate() {
            let name = format!("r{} up to sign", i + 1);
            if r == l {
                report.check(&name, l, r, true);
            } else {
                let flipped = -r;
                report.check(&name, l, r, &flipped == l);
                if &flipped == l {
                    report.note(format!("phi image {} is the negative of the listed r{}", i + 2, i + 1));
                }
            }
        }

        let expected_series = SeriesVector(fx.ints("N.series")?.into_iter().map(|d| d as u64).collect());
        let with_b3 = Ideal::new(&s4, rs.clone())?.with_basis(&Budget::unlimited())?;
        report.check_eq("series of (r1..r6) with b3", &expected_series, &with_b3.hilbert_series(6)?);

        // eliminate b3 through r1, trying the listed sign first
        let ns = fx.spec("N.vars")?;
        let fixture_ideal = Ideal::new(&ns, fx.polys("N.relations", &ns)?)?;
        let mut adopted: Option<(Poly, &str)> = None;
        let candidates = [(listed[0].clone(), "listed"), (fx.poly("N.r1_alternative", &s4)?, "alternative")];
        for (r1, label) in &candidates {
            let b3 = solve_linear(r1, "b3")?;
            let b3 = b3.substitute(&[Some(Poly::var(&ns, "b1")?), None, None, Some(Poly::var(&ns, "d2")?)], &ns)?;
            let into_n = [Some(Poly::var(&ns, "b1")?), Some(Poly::var(&ns, "b2")?), Some(b3.clone()), Some(Poly::var(&ns, "d2")?)];
            let reduced: Vec<Poly> = rs[1..].iter().map(|r| r.substitute(&into_n, &ns)).collect::<Result<_>>()?;
            let equal = ideal_equal(&Ideal::new(&ns, reduced)?, &fixture_ideal, &Budget::unlimited())?;
            report.note(format!("b3 = {} from the {label} r1: ideal equality {equal}", b3.render()));
            if equal && adopted.is_none() {
                adopted = Some((b3, label));
            }
        }
        report.check_true("ideal of r2..r6 after eliminating b3 equals fixture", adopted.is_some());
        let (b3, label) = adopted.ok_or_else(|| Error::Fixture("no sign of r1 reproduces the relations".into()))?;
        report.note(format!("adopted the {label} sign of r1"));

        let bare = ChowRing::build("N", &ns, fixture_ideal.generators().to_vec(), 6, None, &Budget::unlimited())?;
        report.check_eq("series of A*(N)", &expected_series, bare.series());

        let tangent_total = self.tangent_of_n(&weyl, &bare, &b3)?;
        let euler = fx.euler("N")?;
        let ring = bare.gauss_bonnet_point(&tangent_total.component(6), euler)?;
        let tangent = BundleClass::new(6, tangent_total.in_ring(&ring)?)?;
        report.check_eq("c(T_N)", &fx.class("N.tangent", &ring)?, &tangent.total);
        report.check_eq("integral of c6(T_N)", &Scalar::from_int(euler), &tangent.chern(6).integrate()?);

        // pairings of degree-4 candidates for [PV*] against the degree-2 basis
        let rows = fx.int_rows("N.pairing")?;
        let tests = ["b1^2", "b2", "d2"];
        let cands = ["b1^4", "b1^2*b2", "b1^2*d2"];
        let mut matrix = Vec::new();
        for (g, row) in tests.iter().zip(&rows) {
            let g = ring.parse(g)?;
            let computed: Vec<Scalar> =
                cands.iter().map(|c| (&ring.parse(c)? * &g).integrate()).collect::<Result<_>>()?;
            let expected: Vec<Scalar> = row[..3].iter().map(|&x| Scalar::from_int(x)).collect();
            report.check_eq(&format!("pairings with {}", g.render()), &join(&expected), &join(&computed));
            matrix.push(computed);
        }
        let rhs: Vec<Scalar> = rows.iter().map(|r| Scalar::from_int(r[3])).collect();
        let sol = solve(&Matrix::from_rows(matrix, 3), &rhs).ok_or(Error::NotInImage)?;
        let expected: Vec<Scalar> = fx.ints("N.pairing_solution")?.into_iter().map(Scalar::from_int).collect();
        report.check_eq("pairing system solution", &join(&expected), &join(&sol.particular));
        report.check_true("pairing system has a unique solution", sol.directions.is_empty());

        let b3_class = ring.class(&b3)?;
        self.registry.insert_variables(&ring)?;
        self.registry.insert("b3", b3_class.clone())?;
        self.registry.insert("d1", ring.var("b1")?)?;
        self.n = Some(NData { ring, tangent, b3: b3_class });
        Ok(())
    }

    /// `c(T_N) = Π(1 + β_i − δ_k)³ / (Π_{i≠j}(1 + β_i − β_j) Π_{k≠l}(1 + δ_k − δ_l))`
    /// rewritten in `b1, b2, d2`.
    fn tangent_of_n(&self, weyl: &WeylData, ring: &Arc<ChowRing>, b3: &Poly) -> Result<ChowClass> {
        let top = 6;
        let roots: Vec<Poly> = ROOT_NAMES.iter().map(|n| Poly::var(weyl.roots(), n)).collect::<Result<_>>()?;
        let mut num = Vec::new();
        for b in &roots[..3] {
            for d in &roots[3..] {
                let x = b - d;
                num.extend([x.clone(), x.clone(), x]);
            }
        }
        let numerator = weyl.total_chern_of_roots(&num, top);
        let mut den = Vec::new();
        for range in [0..3usize, 3..5] {
            for i in range.clone() {
                for j in range.clone() {
                    if i != j {
                        den.push(&roots[i] - &roots[j]);
                    }
                }
            }
        }
        let denominator = weyl.total_chern_of_roots(&den, top);
        let inverse = geometric_inverse(&(&denominator - &Poly::one(weyl.roots())), top);
        let quotient = (&numerator * &inverse).truncate(top);
        let sym = weyl.to_elementary(&quotient)?;
        let ns = ring.spec();
        let images = [
            Some(Poly::var(ns, "b1")?),
            Some(Poly::var(ns, "b2")?),
            Some(b3.clone()),
            Some(Poly::var(ns, "b1")?),
            Some(Poly::var(ns, "d2")?),
        ];
        ring.class(&sym.substitute(&images, ns)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn geometric_inverse_is_truncated() {
        let s = RingSpec::graded(&[("x", 1)]).unwrap();
        let x = parse_poly("x", &s).unwrap();
        assert_eq!(geometric_inverse(&x, 3), parse_poly("1 - x + x^2 - x^3", &s).unwrap());
    }

    #[test]
    fn linear_elimination() {
        let s = RingSpec::graded(&[("a", 1), ("b", 3)]).unwrap();
        let r = parse_poly("a^3 - 3*b", &s).unwrap();
        assert_eq!(solve_linear(&r, "b").unwrap(), parse_poly("a^3/3", &s).unwrap());
        let bad = parse_poly("a^3 - a*b", &s).unwrap();
        assert!(matches!(solve_linear(&bad, "b"), Err(Error::NotDivisible(_))));
        assert!(matches!(solve_linear(&r, "c"), Err(Error::UnknownVariable(_))));
    }
}
