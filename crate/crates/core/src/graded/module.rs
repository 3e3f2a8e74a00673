//! Graded submodules of shifted-free modules over the Cox ring.
//!
//! A submodule `N ⊆ F_{(B)}` with `F = ⊕ⱼ S(αⱼ)` is stored through its
//! extension `S_A·N ⊆ F`, which determines it (`N = S_A·N ∩ F_{(B)}`). The
//! reduced Gröbner basis of `S_A·N` is therefore a canonical form. Colon and
//! saturation over `S_B` are computed over `S_A` and restricted back to
//! degrees in `B`; that last step is monomial-only when `B ≠ A`.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::cox::{minimalize, CoxRing};
use super::groebner::{groebner_basis, normal_form, reduces_to_zero};
use super::poly::{Exps, ModElem, PolyRing};
use crate::error::{Error, Result};
use crate::lattice::GroupElem;

/// Upper bound on colon iterations inside [`saturate`].
pub const SATURATION_BOUND: usize = 256;

#[derive(Clone)]
pub struct GradedSubmodule {
    ring: Arc<CoxRing>,
    shifts: Vec<GroupElem>,
    generators: Vec<ModElem>,
    groebner: Vec<ModElem>,
}

/// An ideal is a submodule of the free module of rank one with shift 0.
pub type GradedIdeal = GradedSubmodule;

impl PartialEq for GradedSubmodule {
    fn eq(&self, other: &Self) -> bool {
        self.shifts == other.shifts && self.groebner == other.groebner
    }
}
impl Eq for GradedSubmodule {}

impl fmt::Debug for GradedSubmodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.groebner.iter().map(|x| x.to_text()).collect();
        f.debug_struct("GradedSubmodule")
            .field("rank", &self.shifts.len())
            .field("groebner", &g)
            .finish()
    }
}

impl GradedSubmodule {
    /// Validates shifts and homogeneity and computes the Gröbner cache.
    pub fn new(ring: Arc<CoxRing>, shifts: Vec<GroupElem>, generators: Vec<ModElem>) -> Result<Self> {
        for s in &shifts {
            if !ring.in_b(s) {
                return Err(Error::NotInSubgroup(format!("shift {s:?}")));
            }
        }
        let generators: Vec<ModElem> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            let deg = element_degree(&ring, &shifts, g)?;
            if !ring.in_b(&deg) {
                return Err(Error::NotInSubgroup(format!(
                    "generator {g} has degree {deg:?} outside B"
                )));
            }
        }
        Ok(Self::from_parts(ring, shifts, generators))
    }

    fn from_parts(ring: Arc<CoxRing>, shifts: Vec<GroupElem>, generators: Vec<ModElem>) -> Self {
        let groebner = groebner_basis(ring.poly(), &generators, shifts.len());
        GradedSubmodule {
            ring,
            shifts,
            generators,
            groebner,
        }
    }

    pub fn ideal(ring: Arc<CoxRing>, generators: Vec<ModElem>) -> Result<Self> {
        let zero = ring.diagram().group().zero();
        Self::new(ring, vec![zero], generators)
    }

    pub fn whole(ring: Arc<CoxRing>, shifts: Vec<GroupElem>) -> Result<Self> {
        let k = ring.nvars();
        let gens = (0..shifts.len())
            .map(|j| ring.poly().monomial(j, vec![0; k], One::one()))
            .collect();
        Self::new(ring, shifts, gens)
    }

    pub fn zero(ring: Arc<CoxRing>, shifts: Vec<GroupElem>) -> Result<Self> {
        Self::new(ring, shifts, Vec::new())
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        &self.ring
    }

    pub fn shifts(&self) -> &[GroupElem] {
        &self.shifts
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn generators(&self) -> &[ModElem] {
        &self.generators
    }

    /// Reduced Gröbner basis of `S_A·N`.
    pub fn groebner(&self) -> &[ModElem] {
        &self.groebner
    }

    fn poly(&self) -> &PolyRing {
        self.ring.poly()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.groebner.iter().all(|g| g.is_monomial())
    }

    /// Equal to the whole ambient `F_{(B)}`.
    pub fn is_whole(&self) -> bool {
        (0..self.rank()).all(|j| {
            self.groebner
                .iter()
                .any(|g| g.lead_term().is_some_and(|t| t.comp() == j && t.exps().iter().all(|&e| e == 0)))
        })
    }

    pub fn degree_of(&self, f: &ModElem) -> Result<GroupElem> {
        element_degree(&self.ring, &self.shifts, f)
    }

    pub fn normal_form(&self, f: &ModElem) -> ModElem {
        normal_form(self.poly(), f, &self.groebner)
    }

    /// Membership for an element of `F_{(B)}`.
    pub fn contains(&self, f: &ModElem) -> bool {
        reduces_to_zero(self.poly(), f, &self.groebner)
    }

    pub fn is_submodule_of(&self, other: &GradedSubmodule) -> bool {
        self.shifts == other.shifts && self.groebner.iter().all(|g| other.contains(g))
    }

    fn check_compatible(&self, other: &GradedSubmodule) -> Result<()> {
        if self.shifts != other.shifts || self.poly() != other.poly() {
            return Err(Error::DimensionMismatch("submodules of different ambients".into()));
        }
        Ok(())
    }

    fn check_ideal(a: &GradedIdeal) -> Result<()> {
        if a.rank() != 1 || !a.ring.diagram().group().is_zero_elem(&a.shifts[0]) {
            return Err(Error::DimensionMismatch("expected an ideal".into()));
        }
        Ok(())
    }

    /// Reduced basis of `S_A·(self ∩ other)`.
    pub fn intersect(&self, other: &GradedSubmodule) -> Result<GradedSubmodule> {
        self.check_compatible(other)?;
        let g = intersect_bases(self.poly(), self.rank(), &self.groebner, &other.groebner);
        self.restricted(g)
    }

    pub fn sum(&self, other: &GradedSubmodule) -> Result<GradedSubmodule> {
        self.check_compatible(other)?;
        let mut g = self.groebner.clone();
        g.extend(other.groebner.iter().cloned());
        Ok(Self::from_parts(self.ring.clone(), self.shifts.clone(), g))
    }

    /// `(N : a) = {x : a·x ⊆ N}`.
    pub fn colon(&self, a: &GradedIdeal) -> Result<GradedSubmodule> {
        Self::check_ideal(a)?;
        let p = self.poly();
        let r = self.rank();
        let mut acc: Option<Vec<ModElem>> = None;
        for f in &a.groebner {
            let q = colon_by_element(p, r, &self.groebner, f);
            acc = Some(match acc {
                None => q,
                Some(prev) => intersect_bases(p, r, &prev, &q),
            });
        }
        match acc {
            // Zero ideal: everything.
            None => GradedSubmodule::whole(self.ring.clone(), self.shifts.clone()),
            Some(g) => self.restricted(g),
        }
    }

    /// Packages an `S_A`-basis, restricting to degrees in `B` when needed.
    fn restricted(&self, g: Vec<ModElem>) -> Result<GradedSubmodule> {
        let m = Self::from_parts(self.ring.clone(), self.shifts.clone(), g);
        if self.ring.is_unrestricted() {
            Ok(m)
        } else {
            m.restrict_to_b()
        }
    }

    /// `S_A·(M_{(B)})` for a monomial `S_A`-module `M`.
    fn restrict_to_b(&self) -> Result<GradedSubmodule> {
        if !self.is_monomial() {
            return Err(Error::Unsupported(
                "degree restriction of a non-monomial submodule".into(),
            ));
        }
        let mut out: Vec<(usize, Exps)> = Vec::new();
        for g in &self.groebner {
            let (t, _) = g.lead().expect("nonzero");
            let deg = term_degree(&self.ring, &self.shifts, t.comp(), t.exps());
            if self.ring.in_b(&deg) {
                out.push((t.comp(), t.exps().to_vec()));
                continue;
            }
            for s in self.ring.coset_representatives(&deg)? {
                let e = t.exps().iter().zip(&s).map(|(a, b)| a + b).collect();
                out.push((t.comp(), e));
            }
        }
        let gens = minimalize(out)
            .into_iter()
            .map(|(c, e)| self.poly().monomial(c, e, One::one()))
            .collect();
        Ok(Self::from_parts(self.ring.clone(), self.shifts.clone(), gens))
    }

    /// Minimal monomial generators as `(component, exponents)`; requires a
    /// monomial submodule.
    pub fn monomial_generators(&self) -> Result<Vec<(usize, Exps)>> {
        if !self.is_monomial() {
            return Err(Error::Unsupported("submodule is not monomial".into()));
        }
        Ok(self
            .groebner
            .iter()
            .map(|g| {
                let t = g.lead_term().expect("nonzero");
                (t.comp(), t.exps().to_vec())
            })
            .collect())
    }

    /// Generators of `N` as an `S_B`-module: for `B = A` the reduced basis,
    /// otherwise (monomial case) the minimal monomials of degree in `B`.
    pub fn b_generators(&self) -> Result<Vec<ModElem>> {
        if self.ring.is_unrestricted() {
            return Ok(self.groebner.clone());
        }
        let mut v = Vec::new();
        for (c, e) in self.monomial_generators()? {
            let deg = term_degree(&self.ring, &self.shifts, c, &e);
            if self.ring.in_b(&deg) {
                v.push(self.poly().monomial(c, e, One::one()));
            }
        }
        Ok(v)
    }

    /// Restriction to a big subgroup `B′ ⊆ B`, re-expressed over the Cox ring
    /// graded by `B′` (monomial submodules only).
    pub fn degree_restriction(&self, target: Arc<CoxRing>) -> Result<GradedSubmodule> {
        if !target.grading_group().is_subgroup_of(self.ring.grading_group())
            || target.poly() != self.poly()
        {
            return Err(Error::NotInSubgroup("target grading is not a subgroup of B".into()));
        }
        for s in &self.shifts {
            if !target.in_b(s) {
                return Err(Error::NotInSubgroup(format!("shift {s:?} outside B′")));
            }
        }
        let lifted = Self::from_parts(target, self.shifts.clone(), self.groebner.clone());
        if lifted.ring.is_unrestricted() {
            Ok(lifted)
        } else {
            lifted.restrict_to_b()
        }
    }
}

/// Degree `a(e) − α_j` of the term `Z^e·e_j`.
fn term_degree(ring: &CoxRing, shifts: &[GroupElem], comp: usize, e: &[u32]) -> GroupElem {
    ring.diagram().group().sub(&ring.degree(e), &shifts[comp])
}

/// Common degree of all terms, or an error if `f` is not homogeneous.
pub fn element_degree(ring: &CoxRing, shifts: &[GroupElem], f: &ModElem) -> Result<GroupElem> {
    let mut deg: Option<GroupElem> = None;
    for (t, _) in f.terms() {
        if t.comp() >= shifts.len() {
            return Err(Error::DimensionMismatch(format!(
                "component {} in a module of rank {}",
                t.comp(),
                shifts.len()
            )));
        }
        if t.exps().len() != ring.nvars() {
            return Err(Error::DimensionMismatch("exponent length".into()));
        }
        let d = term_degree(ring, shifts, t.comp(), t.exps());
        match &deg {
            None => deg = Some(d),
            Some(d0) if *d0 != d => {
                return Err(Error::NotHomogeneous(f.to_text()));
            }
            _ => {}
        }
    }
    Ok(deg.unwrap_or_else(|| ring.diagram().group().zero()))
}

/// Reduced basis of `U ∩ V` in a free module of rank `r`, from the module
/// generated by `(u, u)` and `(v, 0)` in rank `2r`: its elements whose leading
/// term lies in the second block have zero first block, and their second
/// blocks generate the intersection.
pub fn intersect_bases(p: &PolyRing, r: usize, u: &[ModElem], v: &[ModElem]) -> Vec<ModElem> {
    let mut gens: Vec<ModElem> = Vec::with_capacity(u.len() + v.len());
    for x in u {
        gens.push(x.add(&p.shift_components(x, r)));
    }
    for y in v {
        gens.push(y.clone());
    }
    let g = groebner_basis(p, &gens, 2 * r);
    let out: Vec<ModElem> = g
        .iter()
        .filter(|h| h.lead_term().is_some_and(|t| t.comp() >= r))
        .map(|h| p.restrict_components(h, r, 2 * r))
        .collect();
    groebner_basis(p, &out, r)
}

/// Basis of `(N : f) = (N ∩ f·F) / f` for a basis `n` of `N`.
fn colon_by_element(p: &PolyRing, r: usize, n: &[ModElem], f: &ModElem) -> Vec<ModElem> {
    let ff: Vec<ModElem> = (0..r).map(|j| p.in_component(f, j)).collect();
    let inter = intersect_bases(p, r, &ff, n);
    let quot: Vec<ModElem> = inter
        .iter()
        .map(|g| p.exact_div(g, f).expect("elements of f·F are divisible by f"))
        .collect();
    groebner_basis(p, &quot, r)
}

/// `Sat(N, a) = ⋃ₖ (N : aᵏ)`, iterating the colon until the reduced basis is
/// stable.
pub fn saturate(n: &GradedSubmodule, a: &GradedIdeal) -> Result<GradedSubmodule> {
    let mut cur = n.clone();
    for _ in 0..SATURATION_BOUND {
        let next = cur.colon(a)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::IterationBound(SATURATION_BOUND))
}

pub fn colon(n: &GradedSubmodule, a: &GradedIdeal) -> Result<GradedSubmodule> {
    n.colon(a)
}

/// `Γ_a(F/N)` represented by `Sat(N, a)`, whose quotient by `N` it is.
pub fn torsion_submodule(n: &GradedSubmodule, a: &GradedIdeal) -> Result<GradedSubmodule> {
    saturate(n, a)
}

/// `F/N` is `a`-torsion, i.e. `Sat(N, a) = F`.
pub fn is_torsion(n: &GradedSubmodule, a: &GradedIdeal) -> Result<bool> {
    Ok(saturate(n, a)?.is_whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::graded::cox::{cox_ring, irrelevant_ideal};
    use crate::lattice::Subgroup;
    use crate::picard::build_diagram;

    fn p2() -> Arc<CoxRing> {
        let d = Arc::new(build_diagram(&crate::fan::examples::p2()));
        let a = d.group().clone();
        Arc::new(cox_ring(d, Subgroup::whole(a)).unwrap())
    }

    fn ideal(r: &Arc<CoxRing>, gens: &[&str]) -> GradedIdeal {
        let g = gens.iter().map(|s| r.poly().parse(s).unwrap()).collect();
        GradedSubmodule::ideal(r.clone(), g).unwrap()
    }

    #[test]
    fn colon_examples() {
        let r = p2();
        let n = ideal(&r, &["Z_0^2*Z_1"]);
        let m = ideal(&r, &["Z_0", "Z_1"]);
        assert_eq!(n.colon(&m).unwrap(), n);
        let x2 = ideal(&r, &["Z_0^2"]);
        assert_eq!(x2.colon(&ideal(&r, &["Z_0"])).unwrap(), ideal(&r, &["Z_0"]));
        assert_eq!(x2.colon(&ideal(&r, &["1"])).unwrap(), x2);
    }

    #[test]
    fn saturation_examples() {
        let r = p2();
        let n = ideal(&r, &["Z_0^2", "Z_0*Z_1"]);
        let m = ideal(&r, &["Z_0", "Z_1"]);
        assert_eq!(saturate(&n, &m).unwrap(), ideal(&r, &["Z_0"]));
        let irr = irrelevant_ideal(&r).unwrap();
        let z = ideal(&r, &["Z_0^2*Z_1"]);
        assert_eq!(saturate(&z, &irr).unwrap(), z);
        // The unit ideal fixes every submodule; the zero ideal gives everything.
        assert_eq!(saturate(&z, &ideal(&r, &["1"])).unwrap(), z);
        assert!(saturate(&z, &ideal(&r, &[])).unwrap().is_whole());
        assert!(is_torsion(&irr, &irr).unwrap());
        assert!(!is_torsion(&ideal(&r, &["Z_0"]), &irr).unwrap());
        assert!(torsion_submodule(&GradedSubmodule::zero(r.clone(), vec![r.diagram().group().zero()]).unwrap(), &irr)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let d = Arc::new(build_diagram(&Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()));
        let a = d.group().clone();
        let r = Arc::new(cox_ring(d, Subgroup::whole(a)).unwrap());
        let f = r.poly().parse("Z_0 + Z_1").unwrap();
        assert!(matches!(
            GradedSubmodule::ideal(r.clone(), vec![f]),
            Err(Error::NotHomogeneous(_))
        ));
        // 2 + 1 = 3: Z_0*Z_2 and Z_1 share a degree.
        let g = r.poly().parse("Z_0*Z_2 - Z_1").unwrap();
        assert!(GradedSubmodule::ideal(r, vec![g]).is_ok());
    }

    #[test]
    fn cyclic_module_is_saturated() {
        let r = p2();
        let zero = r.diagram().group().zero();
        let a0 = r.var_degree(0).clone();
        let p = r.poly();
        // (Z_1, Z_0^2) in S ⊕ S(α_0) is homogeneous of degree α.
        let g = p
            .monomial(0, vec![0, 1, 0], One::one())
            .add(&p.monomial(1, vec![2, 0, 0], One::one()));
        let n = GradedSubmodule::new(r.clone(), vec![zero, a0], vec![g.clone()]).unwrap();
        let m = ideal(&r, &["Z_0", "Z_1", "Z_2"]);
        assert_eq!(n.colon(&m).unwrap(), n);
        let x = p.mul_scalar_poly(&p.parse("Z_2^3").unwrap(), &g);
        assert!(n.contains(&x));
        assert!(!n.contains(&p.monomial(0, vec![0, 1, 0], One::one())));
    }
}
