//! `M = M(4,1)`: descent from `M⁺` along the contraction of `E → C4`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::report::StageReport;
use super::stage_boundary::morphism_from_fixture;
use super::workbench::{MData, Mode, Workbench};
use crate::chow::{perpendicular_descent, ChowClass, ChowRing, DescentEquation, DivisorPush, RingMorphism};
use crate::error::Result;
use crate::exactpoly::{Monomial, RingSpec, Scalar};
use crate::groebner::{ideal_equal, morphism_kernel, Budget, Ideal, SeriesVector};
use crate::linalg::Matrix;
use crate::sheafcalc::{blowup_correction, projective_bundle, todd, BundleClass};

/// `s` with `a·s = b`, when `a ≠ 0` and `b` is a multiple of `a`.
fn ratio(a: &ChowClass, b: &ChowClass) -> Option<Scalar> {
    let lead = a.value().leading()?;
    let s = &b.value().coefficient(&lead.mono) / &lead.coeff;
    (&a.scale(&s) == b).then_some(s)
}

/// Row space equality of two affine systems `constant + Σ c_i x_i`.
fn same_row_space(a: &[Vec<Scalar>], b: &[Vec<Scalar>], width: usize) -> bool {
    let rank = |rows: Vec<Vec<Scalar>>| Matrix::from_rows(rows, width).rank();
    let both: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    let r = rank(both);
    r == rank(a.to_vec()) && r == rank(b.to_vec())
}

fn equation_row(e: &DescentEquation) -> Vec<Scalar> {
    core::iter::once(e.constant.clone()).chain(e.coefficients.iter().cloned()).collect()
}

impl Workbench {
    pub(crate) fn stage_m(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let mp = Self::need(&self.mplus, "Mplus")?.clone();
        let c4 = Self::need(&self.curves.get(&4).cloned(), "curve4")?.clone();
        let mplus = &mp.ring;
        let e = &mp.exceptional;

        // E over C4: the projectivized rank-2 kernel bundle
        let kb = BundleClass::from_text(&c4.ring, 2, "1 - k + k^2")?;
        let (bundle, _) = projective_bundle(&c4.ring, &kb, "h", &Budget::unlimited())?;
        let e4 = bundle.renamed("E4");
        let e4_point = e4.point_class().expect("bundle over C4");
        report.check_eq("point class of E over C4", &fx.class("E.point", &e4)?, &e4_point);
        let e_relations = Ideal::new(e4.spec(), fx.polys("E.relations", e4.spec())?)?;
        report.check_true("presentation of A*(E) over C4", ideal_equal(e4.ideal(), &e_relations, &Budget::unlimited())?);

        let eta_text = fx.line("E.eta")?;
        let to_e = RingMorphism::from_text(&e4, e, &[("eta", eta_text), ("h", "h"), ("k", "k")])?;
        let from_e = RingMorphism::from_text(e, &e4, &[("zeta", "eta - k + h"), ("h", "h"), ("k", "k")])?;
        let id_e4 = RingMorphism::from_text(&e4, &e4, &[("eta", "eta"), ("h", "h"), ("k", "k")])?;
        let id_e = RingMorphism::from_text(e, e, &[("zeta", "zeta"), ("h", "h"), ("k", "k")])?;
        let inverse = to_e.then(&from_e)?.agrees_with(&id_e4) && from_e.then(&to_e)?.agrees_with(&id_e);
        report.check_true("the two presentations of A*(E) are isomorphic", inverse);
        let restriction = morphism_from_fixture(self, "E.restriction", mplus, &e4, &[])?;
        report.check_true("restriction to E agrees in both presentations", mp.restriction.then(&from_e)?.agrees_with(&restriction));
        let tau = mplus.var("tau")?;
        let push = DivisorPush::new(restriction.clone(), -&tau)?;

        // ker r'_*: pullbacks from C4
        let g = RingMorphism::from_text(&c4.ring, &e4, &[("eta", "eta"), ("k", "k")])?;
        let kernel = |d: u32| -> Vec<ChowClass> { c4.ring.graded_basis(d).into_iter().map(|m| g.apply(&c4.ring.monomial(m)).expect("pullback")).collect() };
        let top_e = e4.top_degree();

        let mspec = fx.spec("M.vars")?;
        let image_texts = fx.images("M.images")?;
        let images: Vec<ChowClass> = image_texts.iter().map(|(_, t)| mplus.parse(t)).collect::<Result<_>>()?;
        let image = |n: &str| -> &ChowClass { &images[mspec.index_of(n).expect("M variable")] };
        let v = |n: &str| mplus.var(n);

        let k1 = kernel(top_e - 1);
        for (var, gen) in [("rho", "alpha"), ("b1", "beta")] {
            let sol = perpendicular_descent(&v(var)?, &k1, &restriction, core::slice::from_ref(&tau))?;
            report.check_eq(&format!("descent of {var}"), image(gen), &sol.particular);
            report.check_true(&format!("descent of {var} is unique"), sol.directions.is_empty());
        }
        let k2 = kernel(top_e - 2);
        let corrections = [tau.pow(2), &tau * &v("rho")?, &tau * &v("b1")?];
        let sol_b2 = perpendicular_descent(&v("b2")?, &k2, &restriction, &corrections)?;
        let abc = RingSpec::graded(&[("a", 1), ("b", 1), ("c", 1)])?;
        let printed: Vec<Vec<Scalar>> = fx
            .polys("M.descent_b2_equations", &abc)?
            .iter()
            .map(|p| {
                let mut row = alloc::vec![p.coefficient(&Monomial::one())];
                row.extend((0..3).map(|i| p.coefficient(&Monomial::var(i, 1))));
                row
            })
            .collect();
        let computed: Vec<Vec<Scalar>> = sol_b2.equations.iter().map(equation_row).collect();
        report.check_true("descent equations for b2 match the printed system", same_row_space(&printed, &computed, 4));
        for (n, sol) in fx.lines("M.descent_b2_solutions")?.iter().enumerate() {
            let c = mplus.parse(sol)?;
            report.check_true(&format!("printed b2 solution {} satisfies the system", n + 1), sol_b2.contains(&c)?);
        }
        report.check_true("descent of b2 contains x", sol_b2.contains(image("x"))?);
        let sol_d2 = perpendicular_descent(&v("d2")?, &k2, &restriction, &corrections)?;
        report.check_true("descent of d2 contains y", sol_d2.contains(image("y"))?);
        let z_direction = match sol_b2.directions.as_slice() {
            [dir] => ratio(dir, image("z")),
            _ => None,
        };
        report.check(
            "free direction of the degree-2 descent is a multiple of z",
            image("z"),
            sol_b2.directions.iter().map(|c| c.render()).collect::<Vec<_>>().join("; "),
            z_direction.is_some(),
        );

        // presentation of A*(M)
        let relations = fx.polys("M.relations", &mspec)?;
        let slots: Vec<Option<_>> = images.iter().map(|c| Some(c.value().clone())).collect();
        for (n, r) in relations.iter().enumerate() {
            let residue = mplus.normal_form(&r.substitute(&slots, mplus.spec())?);
            report.check(&format!("relation {} vanishes in A*(M+)", n + 1), 0, residue.render(), residue.is_zero());
        }
        let printed_rel = fx.poly("M.relation_printed", &mspec)?;
        let residue = mplus.normal_form(&printed_rel.substitute(&slots, mplus.spec())?);
        if !residue.is_zero() {
            report.note(format!(
                "the degree-12 relation as printed (27*y^2) leaves residue {} in A*(M+); the fixture uses 17*y^2",
                residue.render()
            ));
        }
        let point = fx.poly("M.point", &mspec)?;
        let ring = ChowRing::build("M", &mspec, relations.clone(), 17, Some(point), &Budget::unlimited())?;
        let expected_series = SeriesVector(fx.ints("M.series")?.into_iter().map(|d| d as u64).collect());
        report.check_eq("series of A*(M)", &expected_series, ring.series());
        let euler = fx.euler("M")?;
        report.check_eq("total dimension of A*(M)", &(euler as u64), &ring.series().total());
        report.check_eq("dimension of A^17(M)", &1, &ring.series().get(17));
        let names: Vec<String> = mspec.vars().iter().map(|v| v.name.clone()).collect();
        let pairs: Vec<(&str, &ChowClass)> = names.iter().map(|n| n.as_str()).zip(images.iter()).collect();
        let pullback = RingMorphism::new(&ring, mplus, &pairs)?;
        report.check_true("r* is injective", (0..=17).all(|d| pullback.is_injective_in(d)));
        if self.mode == Mode::Discovery {
            let polys: Vec<_> = images.iter().map(|c| c.value().clone()).collect();
            let regenerated = morphism_kernel(&mspec, &polys, mplus.relations(), &self.budget)?;
            report.note(format!("kernel of r* has {} generators", regenerated.generators().len()));
            let equal = ideal_equal(&regenerated, &Ideal::new(&mspec, relations)?, &self.budget)?;
            report.check_true("kernel of r* equals the fixture ideal", equal);
        }

        // Chern classes through the blow-down
        let c1_pull = &mp.tangent.chern(1) - &tau;
        report.check_eq("r* c1(T_M)", &fx.class("M.rstar_c1", mplus)?, &c1_pull);
        let c1 = pullback.preimage(&c1_pull)?;

        let j_images: Vec<ChowClass> = images
            .iter()
            .map(|c| g.preimage(&restriction.apply(c)?))
            .collect::<Result<_>>()?;
        for (n, (c, j)) in images.iter().zip(&j_images).enumerate() {
            let lifted = restriction.apply(c)?;
            report.check_true(&format!("r*{} restricts from C4", names[n]), g.apply(j)? == lifted);
        }
        let j_pairs: Vec<(&str, &ChowClass)> = names.iter().map(|n| n.as_str()).zip(j_images.iter()).collect();
        let j = RingMorphism::new(&ring, &c4.ring, &j_pairs)?;
        let j_fixture = morphism_from_fixture(self, "C4.restriction", &ring, &c4.ring, &[])?;
        report.check_true("restriction A*(M) -> A*(C4) matches fixture", j.agrees_with(&j_fixture));

        let t_c4 = &c4.tangent;
        let n1 = &j.apply(&c1)? - &t_c4.chern(1);
        let zeta = restriction.apply(&tau)?;
        let c4_pull = push.push(&(&g.apply(&n1)? + &zeta))?;
        report.check_eq("r*[C4] as a pushforward", &push.push(&e4.parse("h - eta")?)?, &c4_pull);
        report.check_eq("r*[C4] = r*z", image("z"), &c4_pull);

        let c2_pull = &(&mp.tangent.chern(2) - &c4_pull) - &(&tau * &c1_pull);
        report.check_eq("r* c2(T_M)", &fx.class("M.rstar_c2", mplus)?, &c2_pull);
        let c2 = pullback.preimage(&c2_pull)?;
        report.check_eq("c2(T_M) in generators", &fx.class("M.c2_in_generators", &ring)?, &c2);
        let n2 = &(&j.apply(&c2)? - &t_c4.chern(2)) - &(&n1 * &t_c4.chern(1));
        let normal = BundleClass::new(2, &(&c4.ring.one() + &n1) + &n2)?;
        report.check_eq("c(normal bundle of C4)", &fx.class("C4.normal", &c4.ring)?, &normal.total);

        let on_e4 = |b: &BundleClass| -> Result<BundleClass> { Ok(BundleClass { rank: b.rank, total: g.apply(&b.total)? }) };
        let correction = blowup_correction(&on_e4(t_c4)?, &on_e4(&normal)?, &zeta, 2, &push)?;
        let total_pull = &mp.tangent.total - &correction;
        let chern_lines = fx.lines("M.chern")?;
        for (i, line) in chern_lines.iter().enumerate() {
            let d = i as u32 + 1;
            let fixture = pullback.apply(&ring.parse(line)?)?;
            report.check_eq(&format!("r* c{d}(T_M)"), &fixture.component(d), &total_pull.component(d));
        }
        let total = pullback.preimage(&total_pull)?;
        let tangent = BundleClass::new(17, total)?;
        report.check_eq("c1(T_M)", &ring.parse(&chern_lines[0])?, &c1);
        let c17 = tangent.chern(17);
        report.check_eq("integral of c17(T_M)", &Scalar::from_int(euler), &c17.integrate()?);
        let pt = ring.point_class().expect("installed");
        report.check_eq("c17(T_M)/192 is the point class", &pt, &c17.scale(&Scalar::from_frac(1, euler)));
        report.check_eq("integral over M+ of r*(point)", &Scalar::one(), &pullback.apply(&pt)?.integrate()?);
        let c4_class = pullback.preimage(&c4_pull)?;
        report.check_eq("[C4] in A*(M)", &ring.var("z")?, &c4_class);
        let td = todd(&tangent);

        self.registry.insert_variables(&ring)?;
        self.registry.insert_variables(&e4)?;
        self.m = Some(MData {
            ring,
            pullback,
            exceptional: e4,
            restriction,
            push,
            tangent,
            todd: td,
            c4_class,
        });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Scalar>> {
        v.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn row_spaces() {
        let a = rows(&[&[3, 7, -3, -12], &[0, 2, -1, -3]]);
        let b = rows(&[&[3, 9, -4, -15], &[0, 4, -2, -6]]);
        assert!(same_row_space(&a, &b, 4));
        let c = rows(&[&[3, 7, -3, -12]]);
        assert!(!same_row_space(&a, &c, 4));
    }
}
