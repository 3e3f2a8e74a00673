//! Hilbert bases of monoids `{x ∈ Λ : ℓᵢ(x) ≥ 0}` for a lattice `Λ ⊆ ℤ^k`.
//!
//! The unit group is the lattice `Λ ∩ ⋂ ker ℓᵢ`. Modulo units the monoid is
//! pointed; its Hilbert basis is found by enumerating the bounding box of the
//! zonotope spanned by the extreme rays, which contains every irreducible
//! element. Lifts back to `Λ` are reduced modulo the unit lattice, so the
//! output is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::cone::{rays_from_inequalities, Vector};
use crate::lattice::{
    big_vec, cokernel, column_hnf, integer_kernel, lattice_basis, small_vec, solve_integer,
    IntMatrix,
};

/// Upper bound on the number of box points examined.
const MAX_BOX_POINTS: u128 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidBasis {
    /// Basis of `Λ` as columns in `ℤ^k`.
    lattice: IntMatrix,
    /// Surjection from `Λ`-coordinates onto the pointed quotient.
    quotient: IntMatrix,
    /// Unit lattice basis, in `ℤ^k`.
    units: Vec<Vector>,
    /// Irreducible non-unit elements, in `ℤ^k`.
    pointed: Vec<Vector>,
    /// Their images in quotient coordinates, same order.
    pointed_quotient: Vec<Vector>,
    /// Inequalities on `ℤ^k`.
    ineqs: Vec<Vector>,
    /// Inequalities on the pointed quotient.
    quotient_ineqs: Vec<Vector>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_i64_mat(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_i64_rows()
        .ok_or_else(|| Error::Unsupported("matrix entries exceed 64 bits".into()))
}

/// Reduces `v` modulo the lattice with column Hermite basis `h`.
pub(crate) fn reduce_mod(h: &IntMatrix, v: &mut [BigInt]) {
    let f = column_hnf(h);
    for (j, &p) in f.pivots.iter().enumerate() {
        let piv = &f.h[(p, j)];
        let q = v[p].div_floor(piv);
        if !q.is_zero() {
            for (i, x) in v.iter_mut().enumerate() {
                *x -= &q * &f.h[(i, j)];
            }
        }
    }
}

/// Hilbert basis of `{x ∈ Λ : ℓ(x) ≥ 0 for ℓ in ineqs}` where `Λ` is spanned
/// by the columns of `lattice` (a basis, `k × r`).
pub fn hilbert_basis(lattice: &IntMatrix, ineqs: &[Vector]) -> Result<MonoidBasis> {
    let k = lattice.rows();
    let r = lattice.cols();
    // Inequalities in Λ-coordinates.
    let b = to_i64_mat(lattice)?;
    let l: Vec<Vector> = ineqs
        .iter()
        .map(|row| (0..r).map(|j| (0..k).map(|i| row[i] * b[i][j]).sum()).collect())
        .collect();
    let lm = if l.is_empty() {
        IntMatrix::zeros(0, r)
    } else {
        IntMatrix::from_rows_i64(&l, r)
    };
    let kern = integer_kernel(&lm);
    let s = kern.cols();
    let (quot, lift) = if s == 0 {
        (IntMatrix::identity(r), IntMatrix::identity(r))
    } else {
        let g = cokernel(&kern);
        debug_assert_eq!(g.torsion_len(), 0, "unit lattice is saturated");
        (g.projection_matrix().clone(), g.lift_matrix().clone())
    };
    let q = quot.rows();
    let lift64 = to_i64_mat(&lift)?;
    // Inequalities on the quotient: L·lift.
    let lq: Vec<Vector> = l
        .iter()
        .map(|row| (0..q).map(|j| (0..r).map(|i| row[i] * lift64[i][j]).sum()).collect())
        .collect();
    let mut pointed_q: Vec<Vector> = Vec::new();
    if q > 0 {
        let rays = rays_from_inequalities(&[], &lq, q)?;
        let grading: Vector = (0..q).map(|j| lq.iter().map(|row| row[j]).sum()).collect();
        let mut lo = vec![0i64; q];
        let mut hi = vec![0i64; q];
        for ray in &rays {
            for j in 0..q {
                lo[j] += ray[j].min(0);
                hi[j] += ray[j].max(0);
            }
        }
        let size: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as u128).product();
        if size > MAX_BOX_POINTS {
            return Err(Error::Unsupported(format!(
                "Hilbert basis search box has {size} points"
            )));
        }
        let mut cands: Vec<(i64, Vector)> = Vec::new();
        let mut z = lo.clone();
        'outer: loop {
            if z.iter().any(|&x| x != 0) && lq.iter().all(|row| dot(row, &z) >= 0) {
                cands.push((dot(&grading, &z), z.clone()));
            }
            let mut i = 0;
            loop {
                if i == q {
                    break 'outer;
                }
                z[i] += 1;
                if z[i] <= hi[i] {
                    break;
                }
                z[i] = lo[i];
                i += 1;
            }
        }
        cands.sort();
        for (_, z) in cands {
            let reducible = pointed_q.iter().any(|h| {
                let d: Vector = z.iter().zip(h).map(|(a, b)| a - b).collect();
                lq.iter().all(|row| dot(row, &d) >= 0)
            });
            if !reducible {
                pointed_q.push(z);
            }
        }
        pointed_q.sort();
    }
    let unit_basis = if s == 0 {
        IntMatrix::zeros(r, 0)
    } else {
        lattice_basis(&kern)
    };
    let pointed: Vec<Vector> = pointed_q
        .iter()
        .map(|z| {
            let mut y = lift.mul_vec(&big_vec(z));
            if s > 0 {
                reduce_mod(&unit_basis, &mut y);
            }
            small_vec(&lattice.mul_vec(&y))
        })
        .collect();
    let units: Vec<Vector> = (0..s)
        .map(|j| small_vec(&lattice.mul_vec(&unit_basis.col(j))))
        .collect();
    Ok(MonoidBasis {
        lattice: lattice.clone(),
        quotient: quot,
        units,
        pointed,
        pointed_quotient: pointed_q,
        ineqs: ineqs.to_vec(),
        quotient_ineqs: lq,
    })
}

impl MonoidBasis {
    /// Unit lattice basis.
    pub fn units(&self) -> &[Vector] {
        &self.units
    }

    /// Irreducible non-units (lifts reduced modulo the units).
    pub fn pointed(&self) -> &[Vector] {
        &self.pointed
    }

    /// Pointed quotient coordinates of the irreducible non-units.
    pub fn pointed_quotient(&self) -> &[Vector] {
        &self.pointed_quotient
    }

    /// Monoid generators: the irreducible non-units and `±` the unit basis,
    /// sorted.
    pub fn generators(&self) -> Vec<Vector> {
        let mut out = self.pointed.clone();
        for u in &self.units {
            out.push(u.clone());
            out.push(u.iter().map(|x| -x).collect());
        }
        out.sort();
        out
    }

    pub fn is_pointed(&self) -> bool {
        self.units.is_empty()
    }

    /// Membership in the monoid (lattice and inequalities).
    pub fn contains(&self, x: &[i64]) -> bool {
        self.ineqs.iter().all(|l| dot(l, x) >= 0) && self.lattice_coords(x).is_some()
    }

    fn lattice_coords(&self, x: &[i64]) -> Option<Vec<BigInt>> {
        solve_integer(&self.lattice, &big_vec(x))
    }

    /// Coordinates of `x ∈ Λ` in the pointed quotient.
    pub fn quotient_coords(&self, x: &[i64]) -> Option<Vector> {
        let y = self.lattice_coords(x)?;
        self.quotient
            .mul_vec(&y)
            .iter()
            .map(|v| v.to_i64())
            .collect()
    }

    /// Canonical basis of the unit lattice in `ℤ^k`.
    pub fn unit_lattice(&self) -> IntMatrix {
        if self.units.is_empty() {
            return IntMatrix::zeros(self.lattice.rows(), 0);
        }
        let cols: Vec<Vec<BigInt>> = self.units.iter().map(|u| big_vec(u)).collect();
        lattice_basis(&IntMatrix::from_cols(&cols, self.lattice.rows()))
    }

    /// Whether `x` is a nonnegative integer combination of the generators,
    /// decided in the pointed quotient by depth-first search (the grading
    /// `Σ ℓᵢ` is positive on every non-unit, so the search is finite).
    pub fn generates(&self, x: &[i64]) -> bool {
        if !self.contains(x) {
            return false;
        }
        match self.quotient_coords(x) {
            Some(z) => decompose(&z, &self.pointed_quotient, &self.quotient_ineqs),
            None => false,
        }
    }
}

fn decompose(z: &[i64], gens: &[Vector], ineqs: &[Vector]) -> bool {
    if z.iter().all(|&x| x == 0) {
        return true;
    }
    if !ineqs.iter().all(|l| dot(l, z) >= 0) {
        return false;
    }
    gens.iter().any(|g| {
        let rest: Vector = z.iter().zip(g).map(|(a, b)| a - b).collect();
        ineqs.iter().all(|l| dot(l, &rest) >= 0) && decompose(&rest, gens, ineqs)
    })
}
