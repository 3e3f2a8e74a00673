//! Quasicoherent subsheaves of `S̃_B(F)` represented by saturation classes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{irrelevant_ideal, saturate, CoxRing, GradedIdeal, GradedSubmodule};

/// The sheaf associated with a submodule `N ⊆ F`, stored as its canonical
/// representative `Sat(N, I_B)` and the per-chart witnesses
/// `Sat(N, (ẑ_σ^e))` (with `e` the least power putting `ẑ_σ^e` in `S_B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafData {
    representative: GradedSubmodule,
    witnesses: Vec<(Vec<usize>, GradedSubmodule)>,
}

impl SheafData {
    pub fn representative(&self) -> &GradedSubmodule {
        &self.representative
    }

    pub fn witnesses(&self) -> &[(Vec<usize>, GradedSubmodule)] {
        &self.witnesses
    }

    /// Zero sheaf: the quotient `F/N` is `I_B`-torsion.
    pub fn is_zero(&self) -> bool {
        self.representative.is_whole()
    }
}

/// The principal ideal `(ẑ_σ^e)` of `S_B`.
pub fn chart_ideal(r: &Arc<CoxRing>, sigma: &[usize]) -> Result<GradedIdeal> {
    let e = r.z_hat_power_in_b(sigma)?;
    let m = r.poly().monomial(0, e, num_traits::One::one());
    GradedSubmodule::ideal(r.clone(), vec![m])
}

pub fn sheaf_of(n: &GradedSubmodule) -> Result<SheafData> {
    let r = n.ring();
    let irr = irrelevant_ideal(r)?;
    let representative = saturate(n, &irr)?;
    let mut witnesses = Vec::new();
    for sigma in r.diagram().fan().max_cones() {
        let a = chart_ideal(r, sigma)?;
        witnesses.push((sigma.clone(), saturate(n, &a)?));
    }
    let mut meet: Option<GradedSubmodule> = None;
    for (_, w) in &witnesses {
        meet = Some(match meet {
            None => w.clone(),
            Some(m) => m.intersect(w)?,
        });
    }
    if let Some(m) = meet {
        if m != representative {
            return Err(Error::CorrespondenceViolation(
                "Sat(N, I_B) differs from the intersection of the chart saturations".into(),
            ));
        }
    }
    Ok(SheafData {
        representative,
        witnesses,
    })
}

/// `Ξ(N) = Ξ(H)` decided by comparing `I_B`-saturations.
pub fn xi_equal(n: &GradedSubmodule, h: &GradedSubmodule) -> Result<bool> {
    let a = sheaf_of(n)?;
    let b = sheaf_of(h)?;
    let by_sat = a.representative == b.representative;
    let by_charts = a.witnesses == b.witnesses;
    if by_sat != by_charts {
        return Err(Error::CorrespondenceViolation(
            "saturation and chart-witness routes disagree".into(),
        ));
    }
    Ok(by_sat)
}

/// The same verdict from the chart witnesses alone.
pub fn xi_equal_via_charts(n: &GradedSubmodule, h: &GradedSubmodule) -> Result<bool> {
    let r = n.ring();
    for sigma in r.diagram().fan().max_cones() {
        let a = chart_ideal(r, sigma)?;
        if saturate(n, &a)? != saturate(h, &a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique `I_B`-saturated submodule with the given sheaf.
pub fn saturated_preimage(s: &SheafData) -> GradedSubmodule {
    s.representative.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples;
    use crate::graded::cox_ring;
    use crate::lattice::Subgroup;
    use crate::picard::build_diagram;

    fn ring() -> Arc<CoxRing> {
        let d = Arc::new(build_diagram(&examples::p2()));
        let a = d.group().clone();
        Arc::new(cox_ring(d, Subgroup::whole(a)).unwrap())
    }

    #[test]
    fn p2_examples() {
        let r = ring();
        let id = |g: &[&str]| {
            GradedSubmodule::ideal(r.clone(), g.iter().map(|s| r.poly().parse(s).unwrap()).collect())
                .unwrap()
        };
        assert!(!xi_equal(&id(&["Z_0"]), &id(&["Z_0^2"])).unwrap());
        let irr = irrelevant_ideal(&r).unwrap();
        assert!(xi_equal(&irr, &id(&["1"])).unwrap());
        let s = sheaf_of(&irr).unwrap();
        assert!(s.is_zero());
        assert!(saturated_preimage(&s).is_whole());
        let n = id(&["Z_0^2", "Z_0*Z_1", "Z_0*Z_2"]);
        let sn = sheaf_of(&n).unwrap();
        assert_eq!(saturated_preimage(&sn), id(&["Z_0"]));
        assert!(xi_equal_via_charts(&n, &id(&["Z_0"])).unwrap());
    }
}
