//! `Q = P(U)` over `N`, a `P^11`-bundle.

use super::report::StageReport;
use super::workbench::{QData, Workbench};
use crate::error::Result;
use crate::exactpoly::Scalar;
use crate::groebner::{ideal_equal, Budget, Ideal};
use crate::sheafcalc::{projective_bundle, whitney_quotient, BundleClass};

impl Workbench {
    pub(crate) fn stage_q(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let n = Self::need(&self.n, "N")?.clone();
        let base = &n.ring;
        let b1 = base.var("b1")?;
        let b2 = base.var("b2")?;
        let d2 = base.var("d2")?;
        let e = BundleClass::new(3, &(&(&base.one() + &b1) + &b2) + &n.b3)?;
        let f = BundleClass::new(2, &(&base.one() + &b1) + &d2)?;
        let universal = whitney_quotient(&[(&e, 6)], &[(&f, 3)])?;
        report.check_eq("rank of U", &12, &universal.rank);
        report.check_eq("c(U)", &fx.class("Q.cU", base)?, &universal.total);

        let (bundle, rho) = projective_bundle(base, &universal, "rho", &Budget::unlimited())?;
        let ring = bundle.renamed("Q");
        let rho = rho.in_ring(&ring)?;
        let spec = ring.spec();
        let mut gens = fx.polys("N.relations", spec)?;
        gens.push(fx.poly("Q.relation", spec)?);
        let equal = ideal_equal(ring.ideal(), &Ideal::new(spec, gens)?, &Budget::unlimited())?;
        report.check_true("presentation matches the degree-12 relation over N", equal);
        let printed = fx.class_with("Q.relation_as_printed", &ring, &[("d1", "d2")])?;
        report.check_true("printed N relation, with d1^2 read as d2^2, holds", printed.is_zero());

        // T_Q = T_N + U ⊗ O(1) − O
        let twisted = BundleClass { rank: universal.rank, total: universal.total.in_ring(&ring)? }.twist_by_line(&rho);
        let t_n = BundleClass { rank: n.tangent.rank, total: n.tangent.total.in_ring(&ring)? };
        let tangent = BundleClass { rank: twisted.rank + t_n.rank - 1, total: &twisted.total * &t_n.total };
        report.check_eq("rank of T_Q", &17, &tangent.rank);
        report.check_eq("c1(T_Q)", &fx.class("Q.tangent_c1", &ring)?, &tangent.chern(1));
        report.check_eq("c2(T_Q)", &fx.class("Q.tangent_c2", &ring)?, &tangent.chern(2));
        let euler = fx.euler("Q")?;
        report.check_eq("integral of c17(T_Q)", &Scalar::from_int(euler), &tangent.chern(17).integrate()?);
        report.check_eq("total dimension of A*(Q)", &(euler as u64), &ring.series().total());

        self.registry.insert_variables(&ring)?;
        self.q = Some(QData { ring, universal, tangent });
        Ok(())
    }
}
