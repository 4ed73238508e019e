//! Universal plane curves `C_d ⊂ P² × |O(d)|` as projective bundles over `P²`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use super::report::StageReport;
use super::workbench::{CurveData, CurveStageParams, Workbench};
use crate::chow::ChowRing;
use crate::error::Result;
use crate::exactpoly::{parse_poly, RingSpec, Scalar};
use crate::groebner::{ideal_equal, Budget, Ideal};
use crate::sheafcalc::{ch_to_chern, exp_class, inverse_total, projective_bundle, BundleClass, CharSeries, SeriesKind};

/// `P^n` with hyperplane `var` and point class `var^n`.
pub fn projective_space(name: &str, var: &str, n: u32) -> Result<Arc<ChowRing>> {
    let s = RingSpec::graded(&[(var, 1)])?;
    let rel = parse_poly(&format!("{var}^{}", n + 1), &s)?;
    let pt = parse_poly(&format!("{var}^{n}"), &s)?;
    ChowRing::build(name, &s, alloc::vec![rel], n, Some(pt), &Budget::unlimited())
}

impl Workbench {
    pub(crate) fn stage_curve(&mut self, d: u32, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let params = CurveStageParams::new(d)?;
        let r = params.r_d;
        let plane = projective_space("P2", "k", 2)?;
        let k = plane.var("k")?;
        // E_d = ker(H⁰(O(d)) ⊗ O → O(d)), rank r_d
        let e = BundleClass::new(i64::from(r), inverse_total(&(&plane.one() + &k.scale_int(i64::from(d)))))?;
        let var = if d == 1 { "h" } else { "eta" };
        let (bundle, taut) = projective_bundle(&plane, &e, var, &Budget::unlimited())?;
        let name = if d == 1 { String::from("Fl") } else { format!("C{d}") };
        let ring = bundle.renamed(&name);
        let taut = taut.in_ring(&ring)?;
        let k = ring.var("k")?;

        // ch T = ch T_P² + ch(E ⊗ O(1)) − 1
        let ch_e = &ring.scalar(Scalar::from_int(i64::from(r) + 1)) - &exp_class(&k.scale_int(i64::from(d)));
        let ch = &(&(&ch_e * &exp_class(&taut)) + &exp_class(&k).scale_int(3)) - &ring.scalar(Scalar::from_int(2));
        let tangent = ch_to_chern(&CharSeries { kind: SeriesKind::ChernCharacter, total: ch })?;
        report.check_eq("rank of T", &(i64::from(r) + 1), &tangent.rank);

        let aliases = [("d", format!("({d})")), ("r", format!("({r})")), ("eta", String::from(var))];
        let aliases: alloc::vec::Vec<(&str, &str)> = aliases.iter().map(|(a, b)| (*a, b.as_str())).collect();
        report.check_eq("c1(T)", &fx.class_with("curve.c1", &ring, &aliases)?, &tangent.chern(1));
        report.check_eq("c2(T)", &fx.class_with("curve.c2", &ring, &aliases)?, &tangent.chern(2));
        report.check_eq(
            "integral of top Chern class",
            &Scalar::from_int(3 * i64::from(r)),
            &tangent.chern(ring.top_degree()).integrate()?,
        );
        let pt = ring.parse(&format!("k^2*{var}^{}", r - 1))?;
        report.check_eq("point class", &ring.point_class().expect("bundle over P2"), &pt);

        let relations_key = match d {
            1 => Some("Fl.relations_hk"),
            4 => Some("curve.C4_relation"),
            _ => None,
        };
        if let Some(key) = relations_key {
            let mut gens = fx.polys(key, ring.spec())?;
            gens.push(parse_poly("k^3", ring.spec())?);
            let equal = ideal_equal(ring.ideal(), &Ideal::new(ring.spec(), gens)?, &Budget::unlimited())?;
            report.check_true(&format!("presentation matches {key}"), equal);
        }
        if d == 1 {
            let hxi = fx.polys_with("Fl.relations_hxi", ring.spec(), &[("xi", "(k - h)")])?;
            let equal = ideal_equal(ring.ideal(), &Ideal::new(ring.spec(), hxi)?, &Budget::unlimited())?;
            report.check_true("presentation in h and xi = k - h", equal);
        }

        self.registry.insert_variables(&ring)?;
        self.curves.insert(d, CurveData { params, plane, ring, tangent });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::SeriesVector;
    use crate::pipeline::StageId;

    #[test]
    fn projective_plane() {
        let p2 = projective_space("P2", "k", 2).unwrap();
        assert_eq!(p2.series(), &SeriesVector(alloc::vec![1, 1, 1]));
        assert_eq!(p2.parse("k^2").unwrap().integrate().unwrap(), Scalar::one());
    }

    #[test]
    fn conics() {
        let mut wb = Workbench::with_embedded_fixtures().unwrap();
        assert!(wb.run(StageId::Curve(2)).unwrap().passed());
        let c2 = wb.curve(2).unwrap();
        // P⁴-bundle over P², Euler number 3·5
        assert_eq!(c2.ring.top_degree(), 6);
        assert_eq!(c2.tangent.chern(6).integrate().unwrap(), Scalar::from_int(15));
    }
}
