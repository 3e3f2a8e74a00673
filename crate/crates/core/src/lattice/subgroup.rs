use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::group::{cokernel, Cardinal, FinAbGroup, GroupElem};
use super::matrix::IntMatrix;
use super::normal_form::{column_hnf, integer_kernel, lattice_basis, solve_integer};
use crate::error::{Error, Result};

/// Subgroup of a [`FinAbGroup`].
///
/// Stored as the full-preimage lattice `L ⊆ ℤ^{t+f}` (normalized coordinates
/// of the ambient), which always contains the relations `dᵢ·eᵢ`. The basis is
/// kept in column Hermite form, so two subgroups are equal iff their bases
/// are.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: Arc<FinAbGroup>,
    basis: IntMatrix,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.basis == other.basis
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(ambient: Arc<FinAbGroup>, gens: &[GroupElem]) -> Self {
        let n = ambient.ngens();
        let t = ambient.torsion_len();
        let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
        for (i, d) in ambient.invariant_factors().iter().enumerate().take(t) {
            let mut e = vec![BigInt::zero(); n];
            e[i] = d.clone();
            cols.push(e);
        }
        let m = IntMatrix::from_cols(&cols, n);
        Subgroup {
            ambient,
            basis: lattice_basis(&m),
        }
    }

    pub fn whole(ambient: Arc<FinAbGroup>) -> Self {
        let n = ambient.ngens();
        let gens: Vec<GroupElem> = (0..n).map(|j| ambient.generator(j)).collect();
        Self::new(ambient, &gens)
    }

    pub fn zero(ambient: Arc<FinAbGroup>) -> Self {
        Self::new(ambient, &[])
    }

    pub fn ambient(&self) -> &Arc<FinAbGroup> {
        &self.ambient
    }

    /// Canonical lattice basis (columns).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Canonical generating set: basis columns reduced into the ambient,
    /// zero classes dropped.
    pub fn generators(&self) -> Vec<GroupElem> {
        self.basis
            .col_vecs()
            .into_iter()
            .map(|mut v| {
                self.ambient.reduce(&mut v);
                v
            })
            .filter(|v| !self.ambient.is_zero_elem(v))
            .collect()
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        solve_integer(&self.basis, x).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.col_vecs().iter().all(|c| other.contains(c))
    }

    /// Index in the ambient.
    pub fn index(&self) -> Cardinal {
        let n = self.ambient.ngens();
        if self.basis.cols() < n {
            return Cardinal::Infinite;
        }
        Cardinal::Finite(self.basis.determinant().abs())
    }

    /// The subgroup as an abstract group.
    pub fn as_group(&self) -> FinAbGroup {
        let n = self.ambient.ngens();
        let k = self.basis.cols();
        let mut rel_cols = Vec::new();
        for (i, d) in self.ambient.invariant_factors().iter().enumerate() {
            let mut e = vec![BigInt::zero(); n];
            e[i] = d.clone();
            let x = solve_integer(&self.basis, &e).expect("relations lie in the lattice");
            rel_cols.push(x);
        }
        cokernel(&IntMatrix::from_cols(&rel_cols, k))
    }

    pub fn is_zero(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.index() == Cardinal::Finite(BigInt::from(1))
    }

    /// Intersection with another subgroup of the same ambient.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if *self.ambient != *other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let n = self.ambient.ngens();
        let (b1, b2) = (&self.basis, &other.basis);
        if b1.cols() == 0 || b2.cols() == 0 {
            return Ok(Subgroup {
                ambient: self.ambient.clone(),
                basis: IntMatrix::zeros(n, 0),
            });
        }
        let joined = b1.hcat(&b2.neg());
        let ker = integer_kernel(&joined);
        let top: Vec<usize> = (0..b1.cols()).collect();
        let coeffs = ker.select_rows(&top);
        let inter = b1.mul(&coeffs);
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            basis: lattice_basis(&inter),
        })
    }

    /// Sum of two subgroups.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if *self.ambient != *other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            basis: lattice_basis(&self.basis.hcat(&other.basis)),
        })
    }

    /// Order of the class of `x` in `ambient / self`, `None` if infinite.
    pub fn order_modulo(&self, x: &GroupElem) -> Option<BigInt> {
        let q = cokernel(&self.basis);
        match q.elem_order(&q.project(x)) {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Infinite => None,
        }
    }

    /// Rank of the free part of the quotient `ambient / self`.
    pub fn quotient_free_rank(&self) -> usize {
        self.ambient.ngens() - column_hnf(&self.basis).rank()
    }
}

/// Intersection of a nonempty family of subgroups sharing one ambient.
pub fn subgroup_intersection(gs: &[Subgroup]) -> Result<Subgroup> {
    let (first, rest) = gs
        .split_first()
        .ok_or_else(|| Error::DimensionMismatch("empty subgroup family".into()))?;
    let mut acc = first.clone();
    for g in rest {
        acc = acc.intersect(g)?;
    }
    Ok(acc)
}

pub fn subgroup_index(s: &Subgroup) -> Cardinal {
    s.index()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::big_vec;

    fn z() -> Arc<FinAbGroup> {
        Arc::new(FinAbGroup::free(1))
    }

    #[test]
    fn intersections_in_z() {
        let a = Subgroup::new(z(), &[big_vec(&[2])]);
        let b = Subgroup::new(z(), &[big_vec(&[3])]);
        let c = subgroup_intersection(&[a.clone(), b]).unwrap();
        assert_eq!(c, Subgroup::new(z(), &[big_vec(&[6])]));
        assert_eq!(c.index(), Cardinal::Finite(BigInt::from(6)));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(Subgroup::zero(z()).index(), Cardinal::Infinite);
        assert_eq!(a.index(), Cardinal::Finite(BigInt::from(2)));
    }

    #[test]
    fn axes_meet_in_zero() {
        let g = Arc::new(FinAbGroup::free(2));
        let x = Subgroup::new(g.clone(), &[big_vec(&[1, 0])]);
        let y = Subgroup::new(g.clone(), &[big_vec(&[0, 1])]);
        assert!(x.intersect(&y).unwrap().is_zero());
    }

    #[test]
    fn torsion_ambient() {
        // Z/4 + Z
        let m = IntMatrix::from_rows_i64(&[vec![4], vec![0]], 1);
        let g = Arc::new(cokernel(&m));
        let two = Subgroup::new(g.clone(), &[big_vec(&[2, 0])]);
        assert_eq!(two.index(), Cardinal::Infinite);
        assert_eq!(two.as_group().structure_string(), "Z/2");
        let all = Subgroup::whole(g.clone());
        assert!(all.is_whole());
        assert_eq!(all.as_group().structure_string(), "Z/4 + Z");
        let diag = Subgroup::new(g.clone(), &[big_vec(&[1, 1])]);
        assert_eq!(diag.index(), Cardinal::Finite(BigInt::from(4)));
        assert_eq!(diag.as_group().structure_string(), "Z");
    }

    #[test]
    fn mismatched_ambient_errors() {
        let a = Subgroup::zero(z());
        let b = Subgroup::zero(Arc::new(FinAbGroup::free(2)));
        assert_eq!(a.intersect(&b), Err(Error::AmbientMismatch));
    }
}
