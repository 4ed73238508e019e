//! The two boundary loci: `PV* ⊂ N` and `Fl(V) ⊂ Q`.

use alloc::string::String;
use alloc::vec::Vec;

use super::fixtures::rename;
use super::report::{join, StageReport};
use super::stage_curve::projective_space;
use super::workbench::{BoundaryData, Workbench};
use crate::chow::{fundamental_class, ChowClass, ChowRing, RingMorphism};
use crate::error::{Error, Result};
use crate::exactpoly::Scalar;
use crate::linalg::{solve, Matrix};
use crate::sheafcalc::{whitney_quotient, BundleClass};
use alloc::sync::Arc;

/// `a -> text` fixture lines as a morphism, after renaming identifiers.
pub(crate) fn morphism_from_fixture(
    wb: &Workbench,
    key: &str,
    source: &Arc<ChowRing>,
    target: &Arc<ChowRing>,
    aliases: &[(&str, &str)],
) -> Result<RingMorphism> {
    let images = wb.fixtures.images(key)?;
    let renamed: Vec<(String, String)> = images
        .into_iter()
        .map(|(v, t)| {
            let t = rename(&t, aliases);
            (v, t)
        })
        .collect();
    let refs: Vec<(&str, &str)> = renamed.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    RingMorphism::from_text(source, target, &refs)
}

impl Workbench {
    pub(crate) fn stage_boundary(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let n = Self::need(&self.n, "N")?.clone();
        let q = Self::need(&self.q, "Q")?.clone();
        let fl = Self::need(&self.curves.get(&1).cloned(), "curve1")?.clone();

        // PV* ⊂ N
        let pv = projective_space("PV", "h", 2)?;
        let j = morphism_from_fixture(self, "PV.restriction", &n.ring, &pv, &[])?;
        let t_n = BundleClass { rank: n.tangent.rank, total: j.apply(&n.tangent.total)? };
        report.check_eq("T_N restricted to PV*", &fx.class("PV.tangent_restricted", &pv)?, &t_n.total);
        let t_pv = BundleClass::new(2, pv.parse("(1 + h)^3")?)?;
        let pv_normal = whitney_quotient(&[(&t_n, 1)], &[(&t_pv, 1)])?;
        report.check_eq("rank of the normal bundle of PV*", &4, &pv_normal.rank);
        report.check_eq("c(normal bundle of PV*)", &fx.class("PV.normal", &pv)?, &pv_normal.total);

        let tests = ["b1^2", "b2", "d2"];
        let cands = ["b1^4", "b1^2*b2", "b1^2*d2"];
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in tests {
            let g = n.ring.parse(g)?;
            rows.push(cands.iter().map(|c| (&n.ring.parse(c)? * &g).integrate()).collect::<Result<Vec<_>>>()?);
            rhs.push(j.apply(&g)?.integrate()?);
        }
        let expected_rhs: Vec<Scalar> = fx.int_rows("N.pairing")?.iter().map(|r| Scalar::from_int(r[3])).collect();
        report.check_eq("integrals over PV* of b1^2, b2, d2", &join(&expected_rhs), &join(&rhs));
        let sol = solve(&Matrix::from_rows(rows, 3), &rhs).ok_or(Error::NotInImage)?;
        let mut pv_class = n.ring.zero();
        for (c, x) in cands.iter().zip(&sol.particular) {
            pv_class = &pv_class + &n.ring.parse(c)?.scale(x);
        }
        report.check_eq("[PV*] from the pairing system", &fx.class("PV.class", &n.ring)?, &pv_class);
        report.check_eq("[PV*] from the restriction map", &pv_class, &fundamental_class(&j)?);

        // Fl(V) ⊂ Q
        let xi = [("xi", "(k - h)")];
        let i = morphism_from_fixture(self, "Fl.restriction", &q.ring, &fl.ring, &xi)?;
        let t_q = BundleClass { rank: q.tangent.rank, total: i.apply(&q.tangent.total)? };
        let fl_normal = whitney_quotient(&[(&t_q, 1)], &[(&fl.tangent, 1)])?;
        report.check_eq("rank of the normal bundle of Fl", &14, &fl_normal.rank);
        report.check_eq("c(normal bundle of Fl)", &fx.class_with("Fl.normal", &fl.ring, &xi)?, &fl_normal.total);
        let fibre_part = BundleClass::line(&fl.ring.parse("k - 2*h")?).pow(10);
        let factored = &fibre_part.total * &pv_normal.total.in_ring(&fl.ring)?;
        report.check_eq("c(normal bundle of Fl) = (1 + xi - h)^10 c(N_PV*)", &factored, &fl_normal.total);

        let fl_class = fx.class_with("Fl.class", &q.ring, &[("c2", "d2")])?;
        let factor: ChowClass = q.ring.parse("(rho + b1/3)^10")?;
        report.check_eq("[Fl] = (rho + b1/3)^10 [PV*]", &fl_class, &(&factor * &pv_class.in_ring(&q.ring)?));
        report.check_eq("[Fl] from the restriction map", &fl_class, &fundamental_class(&i)?);

        self.registry.insert_variables(&pv)?;
        self.registry.insert("xi", fl.ring.parse("k - h")?)?;
        self.boundary = Some(BoundaryData { pv, j, pv_normal, pv_class, i, fl_normal, fl_class });
        Ok(())
    }
}
