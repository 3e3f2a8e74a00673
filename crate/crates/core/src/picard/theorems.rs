//! Cross-checks between the diagram of a fan and its geometry.
//!
//! Every check compares a statement computed from the groups `A`, `A^σ` and
//! `Pic` with one computed from ray matrices alone. A failing check means the
//! library is wrong somewhere.

use serde::Serialize;

use super::diagram::{
    cone_regularity_via_diagram, cone_regularity_via_geometry, degree_monoid, image_meets_orthant_trivially,
    is_big, picard_group, FanDiagram,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Equivalence,
    Implication,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: bool,
    pub rhs: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub fan: String,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    checks: Vec<TheoremCheck>,
}

impl Builder {
    fn equiv(&mut self, name: impl Into<String>, lhs: bool, rhs: bool) {
        self.checks.push(TheoremCheck {
            name: name.into(),
            kind: CheckKind::Equivalence,
            lhs,
            rhs,
            holds: lhs == rhs,
        });
    }

    fn implies(&mut self, name: impl Into<String>, lhs: bool, rhs: bool) {
        self.checks.push(TheoremCheck {
            name: name.into(),
            kind: CheckKind::Implication,
            lhs,
            rhs,
            holds: !lhs || rhs,
        });
    }
}

/// Evaluates all checks without failing.
pub fn theorem_report(d: &FanDiagram) -> TheoremReport {
    let f = d.fan();
    let a = d.group();
    let pic = picard_group(d);
    let pic_group = pic.as_group();
    let mut b = Builder { checks: Vec::new() };

    let regular = f.is_regular();
    let simplicial = f.is_simplicial();
    let affine = f.is_affine();
    let rel_full = f.is_relatively_full_dimensional();
    let a_finite = a.free_rank() == 0;

    b.equiv("regular_iff_pic_is_everything", regular, pic.is_whole());
    b.equiv("simplicial_iff_pic_big", simplicial, is_big(&pic));
    b.equiv("big_small_subgroup_exists_iff_simplicial", is_big(&pic), simplicial);
    for sigma in f.cones() {
        let geo = cone_regularity_via_geometry(f, sigma);
        let dia = cone_regularity_via_diagram(d, sigma).expect("cone of the fan");
        b.equiv(
            format!("cone_{sigma:?}_regular_iff_a_sigma_whole"),
            geo == super::diagram::ConeRegularity::Regular,
            dia == super::diagram::ConeRegularity::Regular,
        );
        b.equiv(
            format!("cone_{sigma:?}_simplicial_iff_a_sigma_big"),
            geo != super::diagram::ConeRegularity::Neither,
            dia != super::diagram::ConeRegularity::Neither,
        );
    }
    b.implies("relatively_full_dimensional_implies_pic_free", rel_full, pic_group.is_free());
    b.implies("affine_implies_pic_zero", affine, pic.is_zero());
    b.implies("a_finite_implies_simplicial", a_finite, simplicial);
    b.equiv(
        "simplicial_affine_iff_relfull_a_finite",
        simplicial && affine,
        rel_full && a_finite,
    );
    b.implies(
        "relfull_simplicial_implies_pic_zero_iff_affine",
        rel_full && simplicial,
        pic.is_zero() == affine,
    );

    let rsc_geometry = f.is_relatively_skeletal_complete();
    let rsc_image = image_meets_orthant_trivially(d);
    let dm = degree_monoid(d);
    let rsc_monoid = dm.sharp && dm.all_alpha_nonzero;
    b.equiv("skeletal_complete_iff_image_meets_orthant_trivially", rsc_geometry, rsc_image);
    b.equiv("image_meets_orthant_trivially_iff_degree_monoid_sharp", rsc_image, rsc_monoid);
    b.implies(
        "skeletal_complete_implies_a_and_pic_free",
        rsc_geometry,
        a.is_free() && pic_group.is_free(),
    );
    b.equiv(
        "kernel_rank_is_codimension",
        d.kernel_rank() == f.ambient_dim() - f.dim(),
        true,
    );
    TheoremReport {
        fan: f.name().to_string(),
        checks: b.checks,
    }
}

/// Evaluates all checks; any failure is reported as an error.
pub fn fan_classification_theorems(d: &FanDiagram) -> Result<TheoremReport> {
    let r = theorem_report(d);
    if let Some(c) = r.checks.iter().find(|c| !c.holds) {
        return Err(Error::TheoremViolation {
            name: c.name.clone(),
            fan: r.fan.clone(),
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::picard::build_diagram;

    #[test]
    fn reports_hold_on_small_fans() {
        let fans = [
            Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0], vec![1]]).unwrap(),
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
                vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            )
            .unwrap(),
            Fan::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1]], vec![vec![0], vec![1], vec![2]]).unwrap(),
        ];
        for f in &fans {
            let r = fan_classification_theorems(&build_diagram(f)).unwrap();
            assert!(r.all_hold());
        }
        let r = theorem_report(&build_diagram(&fans[1]));
        let c = r.get("simplicial_iff_pic_big").unwrap();
        assert!(c.lhs && c.rhs);
        let c = r.get("regular_iff_pic_is_everything").unwrap();
        assert!(!c.lhs && !c.rhs);
    }
}
