//! Sheaf cohomology of shifted free modules on the Cox scheme, graded local
//! cohomology with respect to the irrelevant ideal, and the comparison
//! between them.
//!
//! Both are computed character by character over a box of characters; each
//! result records whether enlarging the box by one changes it.

pub mod character;
pub mod complex;
pub mod tensor;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::monomial_count;
use crate::lattice::GroupElem;
use crate::picard::FanDiagram;
pub use character::{CharacterSpace, Totals};
pub use complex::SubsetComplex;
pub use tensor::{tensor_h0, TensorH0};

/// Environment variable overriding the default box radius.
pub const BOX_RADIUS_VAR: &str = "TORIC_BOX_RADIUS";

pub fn radius_from_env() -> Option<i64> {
    std::env::var(BOX_RADIUS_VAR).ok()?.trim().parse().ok()
}

fn elem_strings(x: &GroupElem) -> Vec<String> {
    x.iter().map(|v| v.to_string()).collect()
}

fn check_degrees(d: &FanDiagram, xs: &[&GroupElem]) -> Result<()> {
    let n = d.group().ngens();
    for x in xs {
        if x.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "degree has {} coordinates, the group has {n}",
                x.len()
            )));
        }
    }
    Ok(())
}

/// Twisted degrees `α + β_j` of `F(α)` for `F = ⊕_j S(β_j)`.
fn summands(d: &FanDiagram, shifts: &[GroupElem], twist: &GroupElem) -> Result<Vec<GroupElem>> {
    check_degrees(d, &[twist])?;
    check_degrees(d, &shifts.iter().collect::<Vec<_>>())?;
    Ok(shifts.iter().map(|b| d.group().add(twist, b)).collect())
}

/// Totals for `F(α)` at radius `r` and `r + 1 … r + extra`.
fn scan_module(
    space: &mut CharacterSpace,
    d: &FanDiagram,
    shifts: &[GroupElem],
    twist: &GroupElem,
    radius: Option<i64>,
    extra: i64,
) -> Result<(i64, Vec<Totals>)> {
    let degs = summands(d, shifts, twist)?;
    let r = match radius.or_else(radius_from_env) {
        Some(r) => r,
        None => degs
            .iter()
            .map(|g| space.default_radius(d, g))
            .max()
            .unwrap_or(2),
    };
    let radii: Vec<i64> = (0..=extra).map(|e| r + e).collect();
    let mut acc: Option<Vec<Totals>> = None;
    for g in &degs {
        let t = space.scan(d, g, &radii)?;
        acc = Some(match acc {
            None => t,
            Some(mut a) => {
                for (x, y) in a.iter_mut().zip(&t) {
                    x.add(y);
                }
                a
            }
        });
    }
    let s = space.ncones();
    let zero = Totals {
        sheaf: vec![0; s],
        local: vec![0; s + 1],
        monomials: 0,
        eta_rank: 0,
        d_squared_zero: true,
        euler_consistent: true,
    };
    Ok((r, acc.unwrap_or_else(|| vec![zero; radii.len()])))
}

/// Dimensions at one radius, with the stability flag comparing `r` and `r+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub dims: Vec<usize>,
    pub radius: i64,
    /// Unchanged at radius `r + 1`. When false the dimensions are lower
    /// bounds.
    pub stable: bool,
}

/// `dim Hⁱ(Y, S̃(F(α)))` for `F = ⊕ S(β_j)`, `i = 0 … |Σ_max| − 1`.
pub fn sheaf_cohomology(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twist: &GroupElem,
    radius: Option<i64>,
) -> Result<CohomologyDims> {
    let mut space = CharacterSpace::new(d)?;
    let (r, t) = scan_module(&mut space, d, shifts, twist, radius, 1)?;
    Ok(CohomologyDims {
        dims: t[0].sheaf.clone(),
        radius: r,
        stable: t[0].sheaf == t[1].sheaf,
    })
}

/// `dim Hⁱ_{I}(F)_α`, `i = 0 … |Σ_max|`.
pub fn local_cohomology(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twist: &GroupElem,
    radius: Option<i64>,
) -> Result<CohomologyDims> {
    let mut space = CharacterSpace::new(d)?;
    let (r, t) = scan_module(&mut space, d, shifts, twist, radius, 1)?;
    Ok(CohomologyDims {
        dims: t[0].local.clone(),
        radius: r,
        stable: t[0].local == t[1].local,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRow {
    pub twist: Vec<String>,
    pub radius: i64,
    pub sheaf: Vec<usize>,
    pub local: Vec<usize>,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub fan: String,
    pub shifts: Vec<Vec<String>>,
    pub rows: Vec<CohomologyRow>,
    pub stable: bool,
    pub d_squared_zero: bool,
    pub euler_consistent: bool,
}

pub fn cohomology_report(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twists: &[GroupElem],
    radius: Option<i64>,
) -> Result<CohomologyReport> {
    let mut space = CharacterSpace::new(d)?;
    let mut rows = Vec::new();
    let mut dsq = true;
    let mut euler = true;
    for tw in twists {
        let (r, t) = scan_module(&mut space, d, shifts, tw, radius, 1)?;
        dsq &= t[1].d_squared_zero;
        euler &= t[1].euler_consistent;
        rows.push(CohomologyRow {
            twist: elem_strings(tw),
            radius: r,
            sheaf: t[0].sheaf.clone(),
            local: t[0].local.clone(),
            stable: t[0].sheaf == t[1].sheaf && t[0].local == t[1].local,
        });
    }
    Ok(CohomologyReport {
        fan: d.fan().name().to_string(),
        shifts: shifts.iter().map(elem_strings).collect(),
        stable: rows.iter().all(|r| r.stable),
        rows,
        d_squared_zero: dsq,
        euler_consistent: euler,
    })
}

/// One twist of the comparison between sheaf and local cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceRow {
    pub twist: Vec<String>,
    pub radius: i64,
    pub sheaf: Vec<usize>,
    pub local: Vec<usize>,
    /// `dim ker(F_α → Γ_**(F)_α)`.
    pub eta_kernel: usize,
    /// `dim coker(F_α → Γ_**(F)_α)`.
    pub eta_cokernel: usize,
    pub stable: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub fan: String,
    pub shifts: Vec<Vec<String>>,
    pub rows: Vec<CorrespondenceRow>,
    pub violations: Vec<String>,
    pub stable: bool,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks degree-wise that `0 → H⁰_I(F) → F → Γ_**(F) → H¹_I(F) → 0` is
/// exact and that `Hⁱ(Y, S̃(F(α))) ≅ H^{i+1}_I(F)_α` for `i ≥ 1`. The sheaf
/// and local sides come from separately assembled complexes.
pub fn serre_grothendieck_report(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twists: &[GroupElem],
    radius: Option<i64>,
) -> Result<CorrespondenceReport> {
    let mut space = CharacterSpace::new(d)?;
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for tw in twists {
        let (r, t) = scan_module(&mut space, d, shifts, tw, radius, 1)?;
        let t0 = &t[0];
        let eta_kernel = t0.monomials - t0.eta_rank;
        let h0 = t0.sheaf.first().copied().unwrap_or(0);
        let eta_cokernel = h0 - t0.eta_rank;
        let mut ok = t0.local.first() == Some(&eta_kernel)
            && t0.local.get(1).copied().unwrap_or(0) == eta_cokernel;
        for i in 1..t0.sheaf.len() {
            ok &= t0.sheaf[i] == t0.local.get(i + 1).copied().unwrap_or(0);
        }
        ok &= t0.d_squared_zero && t0.euler_consistent;
        if !ok {
            violations.push(format!(
                "twist {:?}: sheaf {:?}, local {:?}, ker {eta_kernel}, coker {eta_cokernel}",
                elem_strings(tw),
                t0.sheaf,
                t0.local
            ));
        }
        rows.push(CorrespondenceRow {
            twist: elem_strings(tw),
            radius: r,
            sheaf: t0.sheaf.clone(),
            local: t0.local.clone(),
            eta_kernel,
            eta_cokernel,
            stable: t[0] == t[1],
            holds: ok,
        });
    }
    Ok(CorrespondenceReport {
        fan: d.fan().name().to_string(),
        shifts: shifts.iter().map(elem_strings).collect(),
        stable: rows.iter().all(|r| r.stable),
        rows,
        violations,
    })
}

/// As [`serre_grothendieck_report`], failing on any mismatch.
pub fn serre_grothendieck_verify(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twists: &[GroupElem],
    radius: Option<i64>,
) -> Result<CorrespondenceReport> {
    let rep = serre_grothendieck_report(d, shifts, twists, radius)?;
    if rep.holds() {
        Ok(rep)
    } else {
        Err(Error::CorrespondenceViolation(rep.violations.join("; ")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalSectionsRow {
    pub twist: Vec<String>,
    pub h0: usize,
    pub monomials: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalSectionsReport {
    pub fan: String,
    pub rows: Vec<GlobalSectionsRow>,
    /// `h⁰(Y, O)`, recorded for complete fans.
    pub structure_sheaf_h0: Option<usize>,
}

impl GlobalSectionsReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.h0 == r.monomials && r.stable)
            && self.structure_sheaf_h0.is_none_or(|h| h == 1)
    }
}

/// Compares `h⁰(Y, O(α))` with `dim S_α` counted by direct monomial
/// enumeration.
pub fn global_sections_check(
    d: &FanDiagram,
    twists: &[GroupElem],
    radius: Option<i64>,
) -> Result<GlobalSectionsReport> {
    let zero = d.group().zero();
    let shifts = [zero.clone()];
    let mut rows = Vec::new();
    for tw in twists {
        let h = sheaf_cohomology(d, &shifts, tw, radius)?;
        rows.push(GlobalSectionsRow {
            twist: elem_strings(tw),
            h0: h.dims.first().copied().unwrap_or(0),
            monomials: monomial_count(d, tw)?,
            stable: h.stable,
        });
    }
    let structure_sheaf_h0 = if d.fan().is_complete() {
        Some(sheaf_cohomology(d, &shifts, &zero, radius)?.dims[0])
    } else {
        None
    };
    Ok(GlobalSectionsReport {
        fan: d.fan().name().to_string(),
        rows,
        structure_sheaf_h0,
    })
}

/// Dimensions at radii `r, r+1, r+2`; agreement is evidence (not proof) that
/// every degree piece is finite-dimensional.
#[derive(Clone, Debug, Serialize)]
pub struct FinitenessEvidence {
    pub radii: Vec<i64>,
    pub sheaf: Vec<Vec<usize>>,
    pub local: Vec<Vec<usize>>,
    pub stable: bool,
}

pub fn finiteness_evidence(
    d: &FanDiagram,
    shifts: &[GroupElem],
    twist: &GroupElem,
    radius: Option<i64>,
) -> Result<FinitenessEvidence> {
    let mut space = CharacterSpace::new(d)?;
    let (r, t) = scan_module(&mut space, d, shifts, twist, radius, 2)?;
    let stable = t.windows(2).all(|w| w[0].sheaf == w[1].sheaf && w[0].local == w[1].local);
    Ok(FinitenessEvidence {
        radii: vec![r, r + 1, r + 2],
        sheaf: t.iter().map(|x| x.sheaf.clone()).collect(),
        local: t.iter().map(|x| x.local.clone()).collect(),
        stable,
    })
}

/// All degrees whose free coordinates lie in `[lo, hi]` (every torsion
/// residue included), in lexicographic order.
pub fn twist_grid(d: &FanDiagram, lo: i64, hi: i64) -> Vec<GroupElem> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let a = d.group();
    let ranges: Vec<(i64, i64)> = a
        .invariant_factors()
        .iter()
        .take(a.torsion_len())
        .map(|f| (0, f.to_i64().unwrap_or(1) - 1))
        .chain(std::iter::repeat_n((lo, hi), a.free_rank()))
        .collect();
    let mut out = Vec::new();
    if ranges.iter().any(|(a, b)| a > b) {
        return out;
    }
    let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            x[i] += 1;
            if x[i] <= ranges[i].1 {
                break;
            }
            x[i] = ranges[i].0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples;
    use crate::picard::build_diagram;
    use num_bigint::BigInt;

    fn deg(d: &FanDiagram, k: i64) -> GroupElem {
        d.group().scale(&BigInt::from(k), &d.alpha()[0])
    }

    #[test]
    fn projective_plane() {
        let d = build_diagram(&examples::p2());
        let z = [d.group().zero()];
        let h = sheaf_cohomology(&d, &z, &deg(&d, 2), None).unwrap();
        assert_eq!(h.dims, vec![6, 0, 0]);
        assert!(h.stable);
        let h = sheaf_cohomology(&d, &z, &deg(&d, -3), None).unwrap();
        assert_eq!(h.dims, vec![0, 0, 1]);
        let l = local_cohomology(&d, &z, &deg(&d, -3), None).unwrap();
        assert_eq!(l.dims, vec![0, 0, 0, 1]);
        let l = local_cohomology(&d, &z, &deg(&d, 0), None).unwrap();
        assert_eq!(l.dims, vec![0, 0, 0, 0]);
    }

    #[test]
    fn projective_line() {
        let d = build_diagram(&examples::p1());
        let z = [d.group().zero()];
        assert_eq!(sheaf_cohomology(&d, &z, &deg(&d, -2), None).unwrap().dims, vec![0, 1]);
        assert_eq!(local_cohomology(&d, &z, &deg(&d, -2), None).unwrap().dims, vec![0, 0, 1]);
        let e = finiteness_evidence(&d, &z, &deg(&d, -2), Some(3)).unwrap();
        assert!(e.stable);
    }

    #[test]
    fn shift_compatibility() {
        let d = build_diagram(&examples::hirzebruch(2));
        let grid = twist_grid(&d, -2, 2);
        for a in &grid {
            for b in &grid {
                let lhs = sheaf_cohomology(&d, std::slice::from_ref(b), a, Some(8)).unwrap();
                let rhs =
                    sheaf_cohomology(&d, &[d.group().zero()], &d.group().add(a, b), Some(8)).unwrap();
                assert_eq!(lhs.dims, rhs.dims);
            }
        }
    }

    #[test]
    fn correspondence_on_p2() {
        let d = build_diagram(&examples::p2());
        let twists: Vec<_> = (-5..=5).map(|k| deg(&d, k)).collect();
        let rep = serre_grothendieck_verify(&d, &[d.group().zero()], &twists, None).unwrap();
        assert!(rep.stable);
    }

    #[test]
    fn global_sections_weighted() {
        let d = build_diagram(&examples::ex_3_290());
        let one = d.alpha()[2].clone();
        let rep = global_sections_check(&d, &[one], None).unwrap();
        assert_eq!(rep.rows[0].h0, 1);
        assert!(rep.holds());
    }
}
