//! `M⁺ = Bl_{Fl} Q` and its tangent bundle.

use alloc::format;
use alloc::vec::Vec;

use super::report::StageReport;
use super::workbench::{MPlusData, Workbench};
use crate::chow::{ChowClass, ChowRing, DivisorPush, RingMorphism};
use crate::error::Result;
use crate::exactpoly::Scalar;
use crate::groebner::{ideal_equal, Budget, Ideal, SeriesVector};
use crate::sheafcalc::{blowup_chern, blowup_ring, projective_bundle, BlowupData, BundleClass};

fn trimmed(s: &SeriesVector) -> SeriesVector {
    let mut v = s.0.clone();
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    SeriesVector(v)
}

fn series_of(fx: &super::fixtures::FixtureSet, key: &str) -> Result<SeriesVector> {
    Ok(SeriesVector(fx.ints(key)?.into_iter().map(|d| d as u64).collect()))
}

impl Workbench {
    pub(crate) fn stage_mplus(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let q = Self::need(&self.q, "Q")?.clone();
        let b = Self::need(&self.boundary, "boundary")?.clone();
        let fl = b.i.target().clone();

        let kernel: Vec<ChowClass> =
            fx.polys("Fl.kernel", q.ring.spec())?.iter().map(|p| q.ring.class(p)).collect::<Result<_>>()?;
        for g in &kernel {
            report.check_true(&format!("{g} restricts to zero on Fl"), b.i.apply(g)?.is_zero());
        }
        let mut rels = q.ring.relations().to_vec();
        rels.extend(kernel.iter().map(|g| g.value().clone()));
        let quotient = ChowRing::build("Q/J", q.ring.spec(), rels, q.ring.top_degree(), None, &Budget::unlimited())?;
        let expected = series_of(&fx, "Fl.kernel_series")?;
        report.check_eq("series of A*(Q)/J", &expected, &trimmed(quotient.series()));
        report.check_eq("series of A*(Fl)", &expected, fl.series());

        let data = BlowupData { restriction: &b.i, kernel: &kernel, normal: &b.fl_normal, center: &b.fl_class, var: "tau" };
        let ring = blowup_ring(&data, &Budget::unlimited())?.renamed("Mplus");
        let spec = ring.spec();
        let fixture = Ideal::new(spec, fx.polys("Mplus.relations", spec)?)?;
        report.check_true("presentation of A*(M+) matches fixture", ideal_equal(ring.ideal(), &fixture, &Budget::unlimited())?);
        let codim = q.ring.top_degree() - fl.top_degree();
        let law = q.ring.series().plus(&SeriesVector::range(1, codim as usize - 1).times(fl.series()));
        report.check_eq("series of A*(M+) by the blow-up law", &law, ring.series());

        // exceptional divisor E = P(N_Fl)
        let (bundle, zeta) = projective_bundle(&fl, &b.fl_normal, "zeta", &Budget::unlimited())?;
        let e = bundle.renamed("E");
        let zeta = zeta.in_ring(&e)?;
        let e_fixture = Ideal::new(e.spec(), fx.polys("E.relations_zeta", e.spec())?)?;
        report.check_true("presentation of A*(E) in zeta", ideal_equal(e.ideal(), &e_fixture, &Budget::unlimited())?);

        let mut images: Vec<(&str, ChowClass)> = Vec::new();
        let names: Vec<alloc::string::String> = q.ring.spec().vars().iter().map(|v| v.name.clone()).collect();
        for n in &names {
            images.push((n.as_str(), b.i.image_of(n).expect("own variable").in_ring(&e)?));
        }
        images.push(("tau", zeta.clone()));
        let refs: Vec<(&str, &ChowClass)> = images.iter().map(|(n, c)| (*n, c)).collect();
        let restriction = RingMorphism::new(&ring, &e, &refs)?;
        let push = DivisorPush::new(restriction.clone(), -&ring.var("tau")?)?;

        let on_m = |c: &ChowClass| c.in_ring(&ring);
        let on_e = |c: &BundleClass| -> Result<BundleClass> { Ok(BundleClass { rank: c.rank, total: c.total.in_ring(&e)? }) };
        let ambient = BundleClass { rank: q.tangent.rank, total: on_m(&q.tangent.total)? };
        let fl_tangent = self.curves.get(&1).map(|c| c.tangent.clone()).expect("curve1 ran");
        let tangent = blowup_chern(&ambient, &on_e(&fl_tangent)?, &on_e(&b.fl_normal)?, &zeta, codim, &push)?;
        report.check_eq("c1(T_M+)", &fx.class("Mplus.tangent_c1", &ring)?, &tangent.chern(1));
        report.check_eq("c2(T_M+)", &fx.class("Mplus.tangent_c2", &ring)?, &tangent.chern(2));
        let euler = fx.euler("Mplus")?;
        report.check_eq("integral of c17(T_M+)", &Scalar::from_int(euler), &tangent.chern(17).integrate()?);
        report.check_eq("total dimension of A*(M+)", &(euler as u64), &ring.series().total());

        self.registry.insert_variables(&ring)?;
        self.registry.insert("zeta", zeta)?;
        self.mplus = Some(MPlusData { ring, exceptional: e, restriction, tangent });
        Ok(())
    }
}
