use std::collections::BTreeSet;

use serde::Serialize;

use super::cone::{
    face_ray_sets, h_rep, intersect_cones, primitive_ray, rays_unimodular, saturated_span, Polycone,
    Vector,
};
use crate::error::{Error, Result};
use crate::lattice::rational::rank_q_int;
use crate::lattice::{big_vec, small_vec, solve_integer, IntMatrix};

/// A cone of a fan, as a sorted list of ray indices.
pub type ConeIdx = Vec<usize>;

/// A rational fan in `ℝⁿ`.
///
/// Rays are the primitive generators of the one-dimensional cones, in input
/// order. Every cone is identified with the sorted set of its ray indices;
/// `cones` lists all of them (including the zero cone `[]`), ordered by ray
/// count and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<Vector>,
    max_cones: Vec<ConeIdx>,
    cones: Vec<ConeIdx>,
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanFlags {
    pub dim: usize,
    pub complete: bool,
    pub full: bool,
    pub relatively_full_dimensional: bool,
    pub relatively_skeletal_complete: bool,
    pub simplicial: bool,
    pub regular: bool,
    pub affine: bool,
}

fn cone_rays(rays: &[Vector], c: &[usize]) -> Vec<Vector> {
    c.iter().map(|&i| rays[i].clone()).collect()
}

impl Fan {
    /// Validates the data and closes it under faces.
    ///
    /// Each entry of `max_cones` lists ray indices; every listed ray must be
    /// an extreme ray of its cone and every ray must be used. Listed cones
    /// that turn out to be faces of other listed cones are kept only as
    /// faces. An empty `max_cones` gives the fan consisting of the origin.
    pub fn new(ambient_dim: usize, rays: Vec<Vector>, max_cones: Vec<ConeIdx>) -> Result<Fan> {
        for r in &rays {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "ray {r:?} in ambient dimension {ambient_dim}"
                )));
            }
            if primitive_ray(r)? != *r {
                return Err(Error::DimensionMismatch(format!("ray {r:?} is not primitive")));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if rays[..i].contains(r) {
                return Err(Error::DimensionMismatch(format!("ray {r:?} listed twice")));
            }
        }
        let mut maxes: Vec<ConeIdx> = Vec::new();
        for c in &max_cones {
            let mut c = c.clone();
            c.sort();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::DimensionMismatch(format!(
                    "ray index {bad} out of range ({} rays)",
                    rays.len()
                )));
            }
            let gens = cone_rays(&rays, &c);
            let pc = Polycone::new(ambient_dim, &gens)?;
            if pc.rays().len() != gens.len() {
                let extra: Vec<Vector> = gens.iter().filter(|g| !pc.rays().contains(g)).cloned().collect();
                return Err(Error::DimensionMismatch(format!(
                    "generators {extra:?} are not extreme rays of their cone"
                )));
            }
            if !maxes.contains(&c) {
                maxes.push(c);
            }
        }
        if maxes.is_empty() {
            maxes.push(Vec::new());
        }
        // Pairwise intersection condition.
        for i in 0..maxes.len() {
            for j in i + 1..maxes.len() {
                check_pair(ambient_dim, &rays, &maxes[i], &maxes[j])?;
            }
        }
        // Drop listed cones that are faces of others.
        let listed = maxes.clone();
        maxes.retain(|c| {
            !listed
                .iter()
                .any(|d| d != c && c.iter().all(|i| d.contains(i)))
        });
        maxes.sort();
        let mut all: BTreeSet<ConeIdx> = BTreeSet::new();
        for c in &maxes {
            let gens = cone_rays(&rays, c);
            let h = h_rep(&gens, ambient_dim);
            for f in face_ray_sets(c.len(), &h) {
                all.insert(f.iter().map(|&k| c[k]).collect());
            }
        }
        let mut cones: Vec<ConeIdx> = all.into_iter().collect();
        cones.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        for i in 0..rays.len() {
            if !cones.contains(&vec![i]) {
                return Err(Error::DimensionMismatch(format!(
                    "ray {:?} is not a ray of any cone",
                    rays[i]
                )));
            }
        }
        Ok(Fan {
            ambient_dim,
            rays,
            max_cones: maxes,
            cones,
            name: None,
        })
    }

    /// Builds a fan from maximal polycones, collecting their rays.
    pub fn from_polycones(ambient_dim: usize, max_cones: &[Polycone]) -> Result<Fan> {
        let mut rays: Vec<Vector> = Vec::new();
        let mut idx = Vec::new();
        for c in max_cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch("polycone ambient dimension".into()));
            }
            let mut ci = Vec::new();
            for r in c.rays() {
                let k = match rays.iter().position(|x| x == r) {
                    Some(k) => k,
                    None => {
                        rays.push(r.clone());
                        rays.len() - 1
                    }
                };
                ci.push(k);
            }
            idx.push(ci);
        }
        Fan::new(ambient_dim, rays, idx)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Fan {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[ConeIdx] {
        &self.max_cones
    }

    pub fn cones(&self) -> &[ConeIdx] {
        &self.cones
    }

    pub fn contains_cone(&self, c: &[usize]) -> bool {
        let mut c = c.to_vec();
        c.sort();
        self.cones.contains(&c)
    }

    pub fn cone_generators(&self, c: &[usize]) -> Vec<Vector> {
        cone_rays(&self.rays, c)
    }

    pub fn polycone(&self, c: &[usize]) -> Polycone {
        Polycone::new(self.ambient_dim, &self.cone_generators(c)).expect("fan cones are sharp")
    }

    pub fn cone_dim(&self, c: &[usize]) -> usize {
        rank_q_int(&self.cone_generators(c), self.ambient_dim)
    }

    /// `τ ⪯ σ`.
    pub fn is_face(&self, tau: &[usize], sigma: &[usize]) -> bool {
        tau.iter().all(|i| sigma.contains(i))
    }

    /// Faces of `σ` that belong to the fan.
    pub fn faces_of(&self, sigma: &[usize]) -> Vec<ConeIdx> {
        self.cones
            .iter()
            .filter(|t| self.is_face(t, sigma))
            .cloned()
            .collect()
    }

    /// Infimum of two cones in the face order (their intersection).
    pub fn meet(&self, a: &[usize], b: &[usize]) -> ConeIdx {
        a.iter().copied().filter(|i| b.contains(i)).collect()
    }

    /// `dim ⟨Σ⟩`.
    pub fn dim(&self) -> usize {
        rank_q_int(&self.rays, self.ambient_dim)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones
            .iter()
            .all(|c| self.cone_dim(c) == c.len())
    }

    pub fn is_regular(&self) -> bool {
        self.max_cones.iter().all(|c| {
            self.cone_dim(c) == c.len() && rays_unimodular(&self.cone_generators(c), self.ambient_dim)
        })
    }

    pub fn is_affine(&self) -> bool {
        self.max_cones.len() <= 1
    }

    pub fn is_relatively_full_dimensional(&self) -> bool {
        let d = self.dim();
        self.max_cones.iter().any(|c| self.cone_dim(c) == d)
    }

    /// `cone(⋃Σ) = ⟨Σ⟩`, decided by the dual of the ray hull being linear.
    pub fn is_relatively_skeletal_complete(&self) -> bool {
        h_rep(&self.rays, self.ambient_dim).facets.is_empty()
    }

    /// Support equals `ℝⁿ`: the fan is pure of dimension `n` and every
    /// codimension-one face of a maximal cone lies in exactly two maximal
    /// cones.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_dim;
        if n == 0 {
            return true;
        }
        if !self.max_cones.iter().all(|c| self.cone_dim(c) == n) {
            return false;
        }
        for sigma in &self.max_cones {
            for tau in self.faces_of(sigma) {
                if self.cone_dim(&tau) != n - 1 {
                    continue;
                }
                let k = self
                    .max_cones
                    .iter()
                    .filter(|m| self.is_face(&tau, m))
                    .count();
                if k != 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn flags(&self) -> FanFlags {
        FanFlags {
            dim: self.dim(),
            complete: self.is_complete(),
            full: self.is_full(),
            relatively_full_dimensional: self.is_relatively_full_dimensional(),
            relatively_skeletal_complete: self.is_relatively_skeletal_complete(),
            simplicial: self.is_simplicial(),
            regular: self.is_regular(),
            affine: self.is_affine(),
        }
    }

    /// Ray indices not in `σ`.
    pub fn complement(&self, sigma: &[usize]) -> Vec<usize> {
        (0..self.nrays()).filter(|i| !sigma.contains(i)).collect()
    }
}

fn check_pair(n: usize, rays: &[Vector], a: &[usize], b: &[usize]) -> Result<()> {
    let ga = cone_rays(rays, a);
    let gb = cone_rays(rays, b);
    let common: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
    let fail = |witness: Vector| Error::IntersectionNotFace {
        sigma: a.to_vec(),
        tau: b.to_vec(),
        witness,
    };
    let inter = intersect_cones(&ga, &gb, n)?;
    for r in &inter {
        if !common.iter().any(|&i| rays[i] == *r) {
            return Err(fail(r.clone()));
        }
    }
    // The common rays must span a face of both cones.
    for (c, g) in [(a, &ga), (b, &gb)] {
        let h = h_rep(g, n);
        let local: Vec<usize> = common
            .iter()
            .map(|i| c.iter().position(|x| x == i).unwrap())
            .collect();
        let is_face = face_ray_sets(c.len(), &h).contains(&local);
        if !is_face {
            let mut w = vec![0i64; n];
            for &i in &common {
                for (x, y) in w.iter_mut().zip(&rays[i]) {
                    *x += y;
                }
            }
            return Err(fail(w));
        }
    }
    Ok(())
}

/// Classification flags of a fan.
pub fn classify_fan(f: &Fan) -> FanFlags {
    f.flags()
}

/// Validates a list of maximal polycones as a fan.
pub fn validate_fan(ambient_dim: usize, max_cones: &[Polycone]) -> Result<Fan> {
    Fan::from_polycones(ambient_dim, max_cones)
}

/// The fan re-expressed in a basis of `N ∩ ⟨Σ⟩`, together with the
/// `n × dim Σ` matrix whose columns are that basis.
pub fn full_fan_associated(f: &Fan) -> (Fan, IntMatrix) {
    let n = f.ambient_dim();
    let basis = saturated_span(f.rays(), n);
    let d = basis.len();
    let cols: Vec<_> = basis.iter().map(|b| big_vec(b)).collect();
    let bm = IntMatrix::from_cols(&cols, n);
    let rays: Vec<Vector> = f
        .rays()
        .iter()
        .map(|r| small_vec(&solve_integer(&bm, &big_vec(r)).expect("ray lies in its saturated span")))
        .collect();
    let g = Fan::new(d, rays, f.max_cones().to_vec()).expect("coordinate change preserves validity");
    let g = match &f.name {
        Some(nm) => g.with_name(nm.clone()),
        None => g,
    };
    (g, bm)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn p2() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    #[test]
    fn p2_is_smooth_complete() {
        let f = p2();
        assert_eq!(f.cones().len(), 7);
        let fl = f.flags();
        assert!(fl.complete && fl.full && fl.simplicial && fl.regular && !fl.affine);
        assert!(fl.relatively_skeletal_complete);
    }

    #[test]
    fn overlapping_cones_rejected() {
        let a = Polycone::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let b = Polycone::new(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert!(matches!(
            validate_fan(2, &[a, b]),
            Err(Error::IntersectionNotFace { .. })
        ));
    }

    #[test]
    fn singular_complete_fan() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let fl = f.flags();
        assert!(fl.complete && fl.simplicial && !fl.regular);
    }

    #[test]
    fn two_rays_regular_not_complete() {
        let f = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0], vec![1]]).unwrap();
        let fl = f.flags();
        assert!(!fl.complete && fl.regular && !fl.affine);
    }

    #[test]
    fn full_fan_of_a_single_ray() {
        let f = Fan::new(2, vec![vec![1, 1]], vec![vec![0]]).unwrap();
        let (g, b) = full_fan_associated(&f);
        assert_eq!(g.rays(), &[vec![1]]);
        assert_eq!(b.to_i64_rows().unwrap(), vec![vec![1], vec![1]]);
        let (h, id) = full_fan_associated(&p2());
        assert_eq!(h, p2());
        assert_eq!(id, IntMatrix::identity(2));
    }

    #[test]
    fn unused_or_out_of_range_rays_rejected() {
        assert!(Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0]]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0]], vec![vec![0, 9]]).is_err());
    }

    #[test]
    fn one_dimensional_fans() {
        let both = Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
        assert!(both.is_complete());
        let one = Fan::new(1, vec![vec![1]], vec![vec![0]]).unwrap();
        assert!(!one.is_complete());
        let zero = Fan::new(1, vec![], vec![]).unwrap();
        assert_eq!(zero.cones(), &[Vec::<usize>::new()]);
        assert!(!zero.is_complete());
    }
}
