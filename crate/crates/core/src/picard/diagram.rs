use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fan::cone::{orthogonal_lattice, rays_from_inequalities, Vector};
use crate::fan::Fan;
use crate::lattice::{
    cokernel, rank, solve_integer, subgroup_intersection, Cardinal, FinAbGroup, GroupElem,
    IntMatrix, Subgroup,
};

/// The diagram of a fan: the map `c: M → ℤ^{Σ₁}` (rows are the rays), its
/// cokernel `A = A_{Σ₁}` with projection `a`, and the ray classes `α_ρ`.
#[derive(Clone, Debug)]
pub struct FanDiagram {
    fan: Fan,
    c: IntMatrix,
    a: Arc<FinAbGroup>,
    alpha: Vec<GroupElem>,
}

pub fn build_diagram(f: &Fan) -> FanDiagram {
    let n = f.ambient_dim();
    let k = f.nrays();
    let c = if k == 0 {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows_i64(f.rays(), n)
    };
    let a = Arc::new(cokernel(&c));
    let alpha = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::from(1);
            a.project(&e)
        })
        .collect();
    let d = FanDiagram {
        fan: f.clone(),
        c,
        a,
        alpha,
    };
    debug_assert_eq!(d.kernel_rank(), n - f.dim());
    d
}

impl FanDiagram {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn c_matrix(&self) -> &IntMatrix {
        &self.c
    }

    pub fn group(&self) -> &Arc<FinAbGroup> {
        &self.a
    }

    pub fn alpha(&self) -> &[GroupElem] {
        &self.alpha
    }

    pub fn nrays(&self) -> usize {
        self.fan.nrays()
    }

    /// Rank of `ker(c)`; zero exactly for full fans.
    pub fn kernel_rank(&self) -> usize {
        self.fan.ambient_dim() - rank(&self.c)
    }

    /// `a(m)` for an exponent vector `m ∈ ℤ^{Σ₁}`.
    pub fn degree(&self, m: &[i64]) -> GroupElem {
        self.a.project_i64(m)
    }

    pub fn degree_big(&self, m: &[BigInt]) -> GroupElem {
        self.a.project(m)
    }

    /// `c(u)` for a character `u ∈ M`.
    pub fn character_exponents(&self, u: &[i64]) -> Vec<i64> {
        self.fan
            .rays()
            .iter()
            .map(|r| r.iter().zip(u).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// `α̂_σ = Σ_{ρ ∉ σ₁} α_ρ`.
    pub fn alpha_hat(&self, sigma: &[usize]) -> GroupElem {
        let mut acc = self.a.zero();
        for i in self.fan.complement(sigma) {
            acc = self.a.add(&acc, &self.alpha[i]);
        }
        acc
    }

    /// `A^σ = ⟨α_ρ : ρ ∉ σ₁⟩`.
    pub fn a_sigma(&self, sigma: &[usize]) -> Subgroup {
        let gens: Vec<GroupElem> = self
            .fan
            .complement(sigma)
            .into_iter()
            .map(|i| self.alpha[i].clone())
            .collect();
        Subgroup::new(self.a.clone(), &gens)
    }

    pub fn whole_group(&self) -> Subgroup {
        Subgroup::whole(self.a.clone())
    }

    /// Coefficients `s ∈ ℤ^{Σ₁}` supported off `σ₁` with `a(s) = x`, if any.
    pub fn express_off_cone(&self, x: &GroupElem, sigma: &[usize]) -> Option<Vec<BigInt>> {
        let off = self.fan.complement(sigma);
        let t = self.a.torsion_len();
        let ng = self.a.ngens();
        let mut cols: Vec<Vec<BigInt>> = off.iter().map(|&i| self.alpha[i].clone()).collect();
        for (j, d) in self.a.invariant_factors().iter().enumerate().take(t) {
            let mut e = vec![BigInt::zero(); ng];
            e[j] = d.clone();
            cols.push(e);
        }
        let m = IntMatrix::from_cols(&cols, ng);
        let y = solve_integer(&m, x)?;
        let mut s = vec![BigInt::zero(); self.nrays()];
        for (k, &i) in off.iter().enumerate() {
            s[i] = y[k].clone();
        }
        Some(s)
    }

    /// A character `u` with `c(u) = y`, if one exists.
    pub fn character_preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_integer(&self.c, y)
    }

    /// Canonical integer basis of `σ^⊥ ∩ M`.
    pub fn cone_perp(&self, sigma: &[usize]) -> Vec<Vector> {
        orthogonal_lattice(&self.fan.cone_generators(sigma), self.fan.ambient_dim())
    }
}

/// `Pic(Σ) = ⋂_{σ ∈ Σ_max} A^σ`. Debug builds cross-check against the
/// intersection over all cones.
pub fn picard_group(d: &FanDiagram) -> Subgroup {
    let subs: Vec<Subgroup> = d.fan.max_cones().iter().map(|s| d.a_sigma(s)).collect();
    let pic = subgroup_intersection(&subs).expect("common ambient");
    if cfg!(debug_assertions) {
        let all: Vec<Subgroup> = d.fan.cones().iter().map(|s| d.a_sigma(s)).collect();
        let pic_all = subgroup_intersection(&all).expect("common ambient");
        assert_eq!(pic, pic_all, "maximal-cone and all-cone intersections differ");
    }
    pic
}

/// Finite index in `A`.
pub fn is_big(s: &Subgroup) -> bool {
    s.index().is_finite()
}

/// Contained in `Pic(Σ)`.
pub fn is_small(s: &Subgroup, d: &FanDiagram) -> bool {
    s.is_subgroup_of(&picard_group(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeRegularity {
    Regular,
    SimplicialOnly,
    Neither,
}

/// Regularity of a cone read off the diagram: `A^σ = A` for regular cones,
/// `A^σ` big for simplicial ones.
pub fn cone_regularity_via_diagram(d: &FanDiagram, sigma: &[usize]) -> Result<ConeRegularity> {
    if !d.fan.contains_cone(sigma) {
        return Err(Error::ConeNotInFan(sigma.to_vec()));
    }
    let s = d.a_sigma(sigma);
    Ok(if s.is_whole() {
        ConeRegularity::Regular
    } else if is_big(&s) {
        ConeRegularity::SimplicialOnly
    } else {
        ConeRegularity::Neither
    })
}

/// Regularity of a cone from its ray matrix alone.
pub fn cone_regularity_via_geometry(f: &Fan, sigma: &[usize]) -> ConeRegularity {
    let pc = f.polycone(sigma);
    if pc.is_regular() {
        ConeRegularity::Regular
    } else if pc.is_simplicial() {
        ConeRegularity::SimplicialOnly
    } else {
        ConeRegularity::Neither
    }
}

/// The degree monoid `⟨α_ρ⟩_ℕ ⊆ A`.
#[derive(Clone, Debug)]
pub struct DegreeMonoidInfo {
    pub generators: Vec<GroupElem>,
    pub sharp: bool,
    pub all_alpha_nonzero: bool,
}

/// Sharpness test: the monoid fails to be sharp exactly when some `ρ` with
/// `α_ρ ≠ 0` lies in the support of `ker(a) ∩ ℕ^{Σ₁}`. That support is the
/// support of the rational cone `{x ≥ 0 : free part of a(x) = 0}`, read off
/// its extreme rays.
pub fn degree_monoid(d: &FanDiagram) -> DegreeMonoidInfo {
    let k = d.nrays();
    let t = d.a.torsion_len();
    let proj = d.a.projection_matrix();
    let eqs: Vec<Vector> = (t..d.a.ngens())
        .map(|i| {
            crate::lattice::small_vec(&proj.row(i))
        })
        .collect();
    let ineqs: Vec<Vector> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    let rays = rays_from_inequalities(&eqs, &ineqs, k).expect("cone inside the orthant is pointed");
    let mut support = vec![false; k];
    for r in &rays {
        for (s, x) in support.iter_mut().zip(r) {
            if *x != 0 {
                *s = true;
            }
        }
    }
    let nonzero: Vec<bool> = d.alpha.iter().map(|a| !d.a.is_zero_elem(a)).collect();
    let sharp = (0..k).all(|i| !(support[i] && nonzero[i]));
    DegreeMonoidInfo {
        generators: d.alpha.clone(),
        sharp,
        all_alpha_nonzero: nonzero.iter().all(|&b| b),
    }
}

/// `im(c)_ℝ ∩ ℝ_{≥0}^{Σ₁} = 0`, decided from the column span of `c`.
pub fn image_meets_orthant_trivially(d: &FanDiagram) -> bool {
    let k = d.nrays();
    if k == 0 {
        return true;
    }
    let cols: Vec<Vector> = (0..d.c.cols())
        .map(|j| crate::lattice::small_vec(&d.c.col(j)))
        .collect();
    let eqs = orthogonal_lattice(&cols, k);
    let ineqs: Vec<Vector> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    rays_from_inequalities(&eqs, &ineqs, k)
        .expect("cone inside the orthant is pointed")
        .is_empty()
}

/// Index of a subgroup as a string, for reports.
pub fn index_string(s: &Subgroup) -> String {
    match s.index() {
        Cardinal::Finite(n) => n.to_string(),
        Cardinal::Infinite => "infinite".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::big_vec;

    fn fan(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Fan {
        Fan::new(rays[0].len(), rays, cones).unwrap()
    }

    #[test]
    fn weighted_projective_degrees() {
        let f = fan(
            vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        );
        let d = build_diagram(&f);
        assert_eq!(d.group().structure_string(), "Z");
        let degs: Vec<_> = d.alpha().to_vec();
        assert_eq!(degs, vec![big_vec(&[2]), big_vec(&[3]), big_vec(&[1])]);
        let pic = picard_group(&d);
        assert_eq!(pic.index(), Cardinal::Finite(BigInt::from(6)));
        assert!(is_big(&pic) && is_small(&pic, &d));
        assert_eq!(
            cone_regularity_via_diagram(&d, &[1, 2]).unwrap(),
            ConeRegularity::SimplicialOnly
        );
    }

    #[test]
    fn small_named_fans() {
        let d = build_diagram(&fan(vec![vec![1, 0], vec![1, 2]], vec![vec![0], vec![1]]));
        assert_eq!(picard_group(&d).as_group().structure_string(), "Z/2");
        let d = build_diagram(&fan(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0], vec![1], vec![2]],
        ));
        assert_eq!(picard_group(&d).as_group().structure_string(), "Z");
        let d = build_diagram(&fan(vec![vec![1, 0], vec![0, 1]], vec![vec![0], vec![1]]));
        assert!(picard_group(&d).is_zero());
        let dm = degree_monoid(&d);
        assert!(dm.sharp && !dm.all_alpha_nonzero);
        let d = build_diagram(&fan(
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            vec![vec![0], vec![1], vec![2]],
        ));
        assert_eq!(d.group().structure_string(), "Z");
        assert!(!degree_monoid(&d).sharp);
        assert!(!image_meets_orthant_trivially(&d));
    }

    #[test]
    fn square_cone_is_neither() {
        let f = fan(
            vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]],
            vec![vec![0, 1, 2, 3]],
        );
        let d = build_diagram(&f);
        assert_eq!(
            cone_regularity_via_diagram(&d, &[0, 1, 2, 3]).unwrap(),
            ConeRegularity::Neither
        );
        assert_eq!(
            cone_regularity_via_geometry(&f, &[0, 1, 2, 3]),
            ConeRegularity::Neither
        );
    }
}
