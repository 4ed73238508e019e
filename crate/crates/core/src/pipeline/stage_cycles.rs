//! Named cycles on `M` and the blow-up `H(3)` of `N` along `PV*`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::report::StageReport;
use super::workbench::{CyclesData, Workbench};
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::exactpoly::Scalar;
use crate::groebner::{Budget, SeriesVector};
use crate::linalg::Matrix;
use crate::sheafcalc::{blowup_ring, BlowupData};

impl Workbench {
    pub(crate) fn stage_cycles(&mut self, report: &mut StageReport) -> Result<()> {
        let fx = self.fixtures.clone();
        let m = Self::need(&self.m, "M")?.clone();
        let n = Self::need(&self.n, "N")?.clone();
        let b = Self::need(&self.boundary, "boundary")?.clone();
        let mplus = m.pullback.target();

        let c4_pull = m.pullback.apply(&m.c4_class)?;
        report.check_eq("r*[C4]", &fx.class("cycles.C4", mplus)?, &c4_pull);
        report.check_eq("r*[C4] = r*z", &m.pullback.apply(&m.ring.var("z")?)?, &c4_pull);

        // −K_M = c1(T_M) = 12α
        let s = m.tangent.chern(1).scale(&Scalar::from_frac(1, 12));
        report.check_eq("S = -K_M/12", &m.ring.var("alpha")?, &s);
        let mut named = Vec::new();
        for line in fx.lines("cycles.identities")? {
            let (name, text) = line.split_once('=').ok_or_else(|| Error::Fixture(format!("bad identity `{line}`")))?;
            named.push((String::from(name.trim()), m.ring.parse(text.trim())?));
            report.note(format!("recorded {line} without rederiving it"));
        }
        report.check_eq("S agrees with the recorded identity", &named[0].1, &s);

        let kernel: Vec<ChowClass> =
            fx.polys("cycles.H3_kernel", n.ring.spec())?.iter().map(|p| n.ring.class(p)).collect::<Result<_>>()?;
        let k2 = b.j.kernel_in_degree(2);
        let same = Matrix::from_rows(
            k2.iter().chain(&kernel).map(|c| n.ring.coordinates(c, 2)).collect(),
            n.ring.graded_basis(2).len(),
        )
        .rank()
            == k2.len();
        report.check_true("b1^2 - 3*d2 and b2 - d2 span the degree-2 kernel of j*", same && k2.len() == kernel.len());
        // the degree-2 generators leave part of A^3(N) outside the ideal, so
        // the blow-up takes the whole kernel of j* in degrees >= 3 as well
        let mut full_kernel = kernel.clone();
        for d in 3..=n.ring.top_degree() {
            full_kernel.extend(b.j.kernel_in_degree(d));
        }
        let data = BlowupData { restriction: &b.j, kernel: &full_kernel, normal: &b.pv_normal, center: &b.pv_class, var: "A" };
        let h3 = blowup_ring(&data, &Budget::unlimited())?.renamed("H3");
        let codim = n.ring.top_degree() - b.pv.top_degree();
        let law = n.ring.series().plus(&SeriesVector::range(1, codim as usize - 1).times(b.pv.series()));
        report.check_eq("series of A*(H(3))", &law, h3.series());

        // kernel of ·A : A²(H(3)) → A³(H(3))
        let a = h3.var("A")?;
        let basis2 = h3.graded_basis(2);
        let cols: Vec<Vec<Scalar>> = basis2.iter().map(|mo| h3.coordinates(&(&h3.monomial(*mo) * &a), 3)).collect();
        let mult = Matrix::from_columns(&cols, h3.graded_basis(3).len());
        let null = mult.nullspace();
        report.check_eq("dimension of the kernel of multiplication by A in degree 2", &kernel.len(), &null.len());
        let gens: Vec<Vec<Scalar>> = kernel.iter().map(|g| Ok(h3.coordinates(&g.in_ring(&h3)?, 2))).collect::<Result<_>>()?;
        let width = basis2.len();
        let rank = |rows: Vec<Vec<Scalar>>| Matrix::from_rows(rows, width).rank();
        let spans = rank(gens.clone()) == kernel.len()
            && rank(null.iter().chain(&gens).cloned().collect()) == null.len();
        report.check_true("the kernel is spanned by b1^2 - 3*d2 and b2 - d2", spans);

        self.registry.insert_variables(&h3)?;
        for (name, class) in named {
            self.registry.insert(&name, class)?;
        }
        self.cycles = Some(CyclesData { h3 });
        Ok(())
    }
}
