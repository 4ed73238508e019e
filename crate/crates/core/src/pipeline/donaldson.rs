//! Euler characteristics of determinant line bundles on `M`, and the
//! binomial law for `χ(M(d,1), mα_d)` in small degrees.

use alloc::format;

use num_bigint::BigInt;

use super::report::StageReport;
use super::stage_curve::projective_space;
use super::workbench::{MData, Workbench};
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, Scalar};
use crate::sheafcalc::{hrr_euler, hrr_euler_integral, BundleClass};

/// `χ(M, (m − 3k)α − kβ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DonaldsonQuery {
    pub k: i64,
    pub m: i64,
    pub class: ChowClass,
    pub chi: BigInt,
}

impl DonaldsonQuery {
    /// Fails with [`Error::NonIntegral`] if Riemann–Roch returns a fraction.
    pub fn compute(m_data: &MData, k: i64, m: i64) -> Result<Self> {
        let ring = &m_data.ring;
        let class = &ring.var("alpha")?.scale_int(m - 3 * k) - &ring.var("beta")?.scale_int(k);
        let chi = hrr_euler_integral(&m_data.todd, &class)?;
        Ok(DonaldsonQuery { k, m, class, chi })
    }

    /// Below the Bogomolov bound `8m ≥ 5k` the table has no entry.
    pub fn bogomolov(k: i64, m: i64) -> bool {
        8 * m >= 5 * k
    }
}

impl Workbench {
    /// Runs the `M` stage if needed.
    pub fn donaldson(&mut self, k: i64, m: i64) -> Result<DonaldsonQuery> {
        if !self.run(super::StageId::M)?.passed() {
            return Err(Error::PrerequisiteFailed("M".into()));
        }
        DonaldsonQuery::compute(Self::need(&self.m, "M")?, k, m)
    }

    pub(crate) fn stage_donaldson(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let m_data = Self::need(&self.m, "M")?;
        let columns = fx.ints("table1.columns")?;
        let table = fx.table("table1")?;
        let mut grey = 0;
        let mut printed = 0;
        for (&m, row) in &table {
            for (&k, cell) in columns.iter().zip(row) {
                let chi = match DonaldsonQuery::compute(m_data, k, m) {
                    Ok(q) => q.chi,
                    Err(Error::NonIntegral(v)) => {
                        report.check(&format!("chi(k={k}, m={m}) is an integer"), "integer", v, false);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                report.check_eq(
                    &format!("blank cell (k={k}, m={m}) iff 8m < 5k"),
                    &!DonaldsonQuery::bogomolov(k, m),
                    &cell.value.is_none(),
                );
                if let Some(v) = cell.value {
                    printed += 1;
                    grey += usize::from(cell.grey);
                    report.check_eq(&format!("chi(k={k}, m={m})"), &BigInt::from(v), &chi);
                }
            }
        }
        report.note(format!("{printed} printed cells, {grey} of them grey (no vanishing claimed)"));
        Ok(())
    }

    pub(crate) fn stage_conjecture(&mut self, report: &mut StageReport) -> Result<()> {
        let law = |d: i64, m: i64| binomial(m + 3 * d - 1, m);
        let check = |report: &mut StageReport, d: i64, m: i64, chi: Scalar| {
            report.check_eq(&format!("d={d}, m={m}"), &law(d, m), &chi);
        };

        let p2 = projective_space("P2", "k", 2)?;
        let t_p2 = BundleClass::new(2, p2.parse("(1 + k)^3")?)?;
        let p5 = projective_space("P5", "H", 5)?;
        let t_p5 = BundleClass::new(5, p5.parse("(1 + H)^6")?)?;
        let c3 = Self::need(&self.curves.get(&3).cloned(), "curve3")?.clone();
        let eta = c3.ring.var("eta")?;
        report.check_eq("c1(C3) = 9 eta", &eta.scale_int(9), &c3.tangent.chern(1));
        for m in 0..=10i64 {
            check(report, 1, m, hrr_euler(&t_p2, &p2.var("k")?.scale_int(m))?);
            check(report, 2, m, hrr_euler(&t_p5, &p5.var("H")?.scale_int(m))?);
            check(report, 3, m, hrr_euler(&c3.tangent, &eta.scale_int(m))?);
        }
        let m_data = Self::need(&self.m, "M")?;
        // k = 0 gives the class mα
        for m in 0..=17i64 {
            let q = DonaldsonQuery::compute(m_data, 0, m)?;
            check(report, 4, m, Scalar::from_bigint(q.chi));
        }
        Ok(())
    }
}
