//! Rational polyhedral cones in `ℝⁿ` with integer generators.
//!
//! Conversions between generator and inequality descriptions are done by
//! brute-force enumeration of tight subsets, which is adequate for the small
//! dimensions and generator counts handled here.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::rational::{kernel_q, primitive_integer, q, rank_q_int, Q};
use crate::lattice::{big_vec, integer_kernel, lattice_basis, small_vec, IntMatrix};

pub type Vector = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// The primitive integer vector on the ray through `v`.
pub fn primitive_ray(v: &[i64]) -> Result<Vector> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

fn rank(vs: &[Vector], n: usize) -> usize {
    rank_q_int(vs, n)
}

/// Combinations of `k` elements out of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Primitive integer vector spanning the one-dimensional rational kernel of
/// the given rows, or `None` if the kernel is not a line.
fn kernel_line(rows: &[Vector], n: usize) -> Option<Vector> {
    let qrows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let k = kernel_q(&qrows, n);
    if k.len() != 1 {
        return None;
    }
    Some(small_vec(&primitive_integer(&k[0])))
}

/// Integer basis (canonical) of the orthogonal complement of `span(vs)`.
pub fn orthogonal_lattice(vs: &[Vector], n: usize) -> Vec<Vector> {
    if vs.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let m = IntMatrix::from_rows_i64(vs, n);
    let k = integer_kernel(&m);
    k.col_vecs().iter().map(|c| small_vec(c)).collect()
}

/// Canonical basis of the saturated lattice `span_ℚ(vs) ∩ ℤⁿ`.
pub fn saturated_span(vs: &[Vector], n: usize) -> Vec<Vector> {
    let perp = orthogonal_lattice(vs, n);
    let m = if perp.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows_i64(&perp, n)
    };
    let k = integer_kernel(&m);
    k.col_vecs().iter().map(|c| small_vec(c)).collect()
}

/// Facet of a cone: an inward normal lying in the span of the cone, and the
/// indices of the generators on the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vector,
    pub tight: Vec<usize>,
}

/// Inequality description of `cone(gens)`: `x ⊥ span_perp` and
/// `facet.normal · x ≥ 0`.
#[derive(Clone, Debug)]
pub struct HRep {
    pub dim: usize,
    pub span_perp: Vec<Vector>,
    pub facets: Vec<Facet>,
}

impl HRep {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.span_perp.iter().all(|u| dot(u, x) == 0)
            && self.facets.iter().all(|f| dot(&f.normal, x) >= 0)
    }

    /// True when the cone contains no line.
    pub fn is_sharp(&self, n: usize) -> bool {
        let normals: Vec<Vector> = self.facets.iter().map(|f| f.normal.clone()).collect();
        rank(&normals, n) == self.dim
    }
}

pub fn h_rep(gens: &[Vector], n: usize) -> HRep {
    let gens: Vec<Vector> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let dim = rank(&gens, n);
    let span_perp = orthogonal_lattice(&gens, n);
    let mut facets: Vec<Facet> = Vec::new();
    if dim == 0 {
        return HRep { dim, span_perp, facets };
    }
    for s in combinations(gens.len(), dim - 1) {
        let sub: Vec<Vector> = s.iter().map(|&i| gens[i].clone()).collect();
        if rank(&sub, n) != dim - 1 {
            continue;
        }
        // Normal inside span(gens): orthogonal to sub and to span_perp.
        let mut rows = sub.clone();
        rows.extend(span_perp.iter().cloned());
        let Some(mut u) = kernel_line(&rows, n) else { continue };
        let vals: Vec<i128> = gens.iter().map(|g| dot(&u, g)).collect();
        if vals.iter().all(|&v| v <= 0) {
            u.iter_mut().for_each(|x| *x = -*x);
        } else if !vals.iter().all(|&v| v >= 0) {
            continue;
        }
        if facets.iter().any(|f| f.normal == u) {
            continue;
        }
        let tight = (0..gens.len()).filter(|&i| dot(&u, &gens[i]) == 0).collect();
        facets.push(Facet { normal: u, tight });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    HRep { dim, span_perp, facets }
}

/// Extreme rays (primitive, sorted) of the pointed cone
/// `{x : eqs·x = 0, ineqs·x ≥ 0}`. Returns an error if the cone contains a
/// line.
pub fn rays_from_inequalities(eqs: &[Vector], ineqs: &[Vector], n: usize) -> Result<Vec<Vector>> {
    let re = rank(eqs, n);
    let mut out: Vec<Vector> = Vec::new();
    if re >= n {
        return Ok(out);
    }
    let need = n - 1 - re;
    for s in combinations(ineqs.len(), need) {
        let mut rows: Vec<Vector> = eqs.to_vec();
        rows.extend(s.iter().map(|&i| ineqs[i].clone()));
        let Some(x) = kernel_line(&rows, n) else { continue };
        let vals: Vec<i128> = ineqs.iter().map(|f| dot(f, &x)).collect();
        let pos = vals.iter().all(|&v| v >= 0);
        let neg = vals.iter().all(|&v| v <= 0);
        if pos && neg {
            return Err(Error::NonSharpCone(vec![x]));
        }
        let cand = if pos {
            x
        } else if neg {
            x.iter().map(|v| -v).collect()
        } else {
            continue;
        };
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    Ok(out)
}

/// Sharp rational polyhedral cone, stored by its primitive extreme rays in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polycone {
    ambient_dim: usize,
    rays: Vec<Vector>,
}

impl Polycone {
    /// The cone generated by `gens`. Generators are normalized to primitive
    /// vectors and redundant ones are dropped.
    pub fn new(ambient_dim: usize, gens: &[Vector]) -> Result<Polycone> {
        let mut prim: Vec<Vector> = Vec::new();
        for g in gens {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {g:?} in ambient dimension {ambient_dim}"
                )));
            }
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            let p = primitive_ray(g)?;
            if !prim.contains(&p) {
                prim.push(p);
            }
        }
        let h = h_rep(&prim, ambient_dim);
        if !h.is_sharp(ambient_dim) {
            return Err(Error::NonSharpCone(prim));
        }
        let mut rays: Vec<Vector> = extreme_indices(&prim, &h)
            .into_iter()
            .map(|i| prim[i].clone())
            .collect();
        rays.sort();
        Ok(Polycone { ambient_dim, rays })
    }

    pub fn zero(ambient_dim: usize) -> Polycone {
        Polycone {
            ambient_dim,
            rays: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        rank(&self.rays, self.ambient_dim)
    }

    pub fn h_rep(&self) -> HRep {
        h_rep(&self.rays, self.ambient_dim)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.h_rep().contains(x)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Rays form part of a lattice basis.
    pub fn is_regular(&self) -> bool {
        self.is_simplicial() && rays_unimodular(&self.rays, self.ambient_dim)
    }

    /// Generators of the dual cone `{u : u·x ≥ 0 on the cone}`.
    pub fn dual(&self) -> Vec<Vector> {
        dual_cone(&self.rays, self.ambient_dim)
    }

    /// All faces, each once, ordered by dimension then rays.
    pub fn faces(&self) -> Vec<Polycone> {
        let h = self.h_rep();
        let mut out: Vec<Polycone> = face_ray_sets(self.rays.len(), &h)
            .into_iter()
            .map(|s| Polycone {
                ambient_dim: self.ambient_dim,
                rays: s.iter().map(|&i| self.rays[i].clone()).collect(),
            })
            .collect();
        out.sort_by(|a, b| (a.rays.len(), &a.rays).cmp(&(b.rays.len(), &b.rays)));
        out
    }
}

/// True when the matrix with the given rows has all SNF invariant factors 1,
/// i.e. the vectors extend to a lattice basis.
pub fn rays_unimodular(rays: &[Vector], n: usize) -> bool {
    if rays.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows_i64(rays, n);
    let snf = crate::lattice::smith_normal_form(&m);
    let d = snf.diagonal();
    d.len() == rays.len() && d.iter().all(|x| *x == num_bigint::BigInt::from(1))
}

/// Indices of the generators that span extreme rays (first occurrence of
/// each direction).
fn extreme_indices(gens: &[Vector], h: &HRep) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let on: Vec<&Facet> = h
            .facets
            .iter()
            .filter(|f| dot(&f.normal, g) == 0)
            .collect();
        let common: Vec<usize> = (0..gens.len())
            .filter(|&j| on.iter().all(|f| dot(&f.normal, &gens[j]) == 0))
            .collect();
        let n = g.len();
        let span: Vec<Vector> = common.iter().map(|&j| gens[j].clone()).collect();
        if rank(&span, n) == 1 {
            out.push(i);
        }
    }
    out
}

/// Subsets of ray indices that are faces, given the facet description. The
/// empty set is the zero face.
pub fn face_ray_sets(nrays: usize, h: &HRep) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = vec![(0..nrays).collect()];
    for f in &h.facets {
        let tight: Vec<usize> = f.tight.iter().copied().filter(|&i| i < nrays).collect();
        let mut add = Vec::new();
        for s in &sets {
            let inter: Vec<usize> = s.iter().copied().filter(|i| tight.contains(i)).collect();
            if !sets.contains(&inter) && !add.contains(&inter) {
                add.push(inter);
            }
        }
        sets.extend(add);
    }
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    sets
}

/// Generators of the dual cone of `cone(gens)`: one inward facet normal per
/// facet (chosen inside the span of the cone) and `±` a lattice basis of the
/// orthogonal complement. Sorted lexicographically.
pub fn dual_cone(gens: &[Vector], n: usize) -> Vec<Vector> {
    let h = h_rep(gens, n);
    let mut out: Vec<Vector> = h.facets.iter().map(|f| f.normal.clone()).collect();
    for u in &h.span_perp {
        out.push(u.clone());
        out.push(u.iter().map(|x| -x).collect());
    }
    out.sort();
    out.dedup();
    out
}

/// Extreme rays of `cone(a) ∩ cone(b)`.
pub fn intersect_cones(a: &[Vector], b: &[Vector], n: usize) -> Result<Vec<Vector>> {
    let ha = h_rep(a, n);
    let hb = h_rep(b, n);
    let mut eqs = ha.span_perp.clone();
    eqs.extend(hb.span_perp.iter().cloned());
    let mut ineqs: Vec<Vector> = ha.facets.iter().map(|f| f.normal.clone()).collect();
    ineqs.extend(hb.facets.iter().map(|f| f.normal.clone()));
    rays_from_inequalities(&eqs, &ineqs, n)
}

/// Canonical lattice basis of the sublattice generated by the vectors.
pub fn lattice_span(vs: &[Vector], n: usize) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let cols: Vec<_> = vs.iter().map(|v| big_vec(v)).collect();
    let m = IntMatrix::from_cols(&cols, n);
    lattice_basis(&m).col_vecs().iter().map(|c| small_vec(c)).collect()
}

pub fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_rays() {
        assert_eq!(primitive_ray(&[2, 4]).unwrap(), vec![1, 2]);
        assert_eq!(primitive_ray(&[0, -3]).unwrap(), vec![0, -1]);
        assert_eq!(primitive_ray(&[-2, -3]).unwrap(), vec![-2, -3]);
        assert_eq!(primitive_ray(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn duals() {
        let orth = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(dual_cone(&orth, 2), orth);
        assert_eq!(
            dual_cone(&[vec![1, 0], vec![1, 2]], 2),
            vec![vec![0, 1], vec![2, -1]]
        );
        assert_eq!(
            dual_cone(&[], 2),
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            dual_cone(&[vec![1, 0]], 2),
            vec![vec![0, -1], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn faces_of_small_cones() {
        let c = Polycone::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.faces().len(), 4);
        let r = Polycone::new(2, &[vec![3, 0]]).unwrap();
        assert_eq!(r.rays(), &[vec![1, 0]]);
        assert_eq!(r.faces().len(), 2);
        let c = Polycone::new(2, &[vec![0, 1], vec![-2, -3]]).unwrap();
        let f = c.faces();
        assert_eq!(f.len(), 4);
        assert_eq!(f[1].rays(), &[vec![-2, -3]]);
        assert_eq!(f[2].rays(), &[vec![0, 1]]);
    }

    #[test]
    fn redundant_generators_dropped_and_lines_rejected() {
        let c = Polycone::new(2, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(c.rays().len(), 2);
        assert!(Polycone::new(2, &[vec![1, 0], vec![-1, 0]]).is_err());
        assert!(Polycone::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).is_err());
    }

    #[test]
    fn square_cone_in_3d() {
        let c = Polycone::new(
            3,
            &[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]],
        )
        .unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.h_rep().facets.len(), 4);
        assert_eq!(c.faces().len(), 10);
        assert!(!c.is_simplicial());
    }

    #[test]
    fn cone_intersections() {
        let a = vec![vec![1, 0], vec![0, 1]];
        let b = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(
            intersect_cones(&a, &b, 2).unwrap(),
            vec![vec![1, 0], vec![1, 1]]
        );
        let c = vec![vec![-1, 0]];
        assert!(intersect_cones(&a, &c, 2).unwrap().is_empty());
    }

    #[test]
    fn saturation() {
        assert_eq!(saturated_span(&[vec![2, 2]], 2), vec![vec![1, 1]]);
        assert_eq!(saturated_span(&[vec![1, 0], vec![0, 3]], 2).len(), 2);
    }
}
