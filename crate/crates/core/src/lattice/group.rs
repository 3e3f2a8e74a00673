use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{column_hnf, inverse_unimodular, smith_normal_form};

/// Element of a [`FinAbGroup`] in its normalized coordinates: first one
/// residue per invariant factor, then the free coordinates.
pub type GroupElem = Vec<BigInt>;

/// A finitely generated abelian group `ℤ^r / column-span(presentation)`,
/// identified with `⊕ ℤ/dᵢ ⊕ ℤ^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    presentation: IntMatrix,
    /// `(t+f) × r`: coordinates of the class of `x ∈ ℤ^r` are `proj·x`
    /// (torsion rows then reduced).
    proj: IntMatrix,
    /// `r × (t+f)`: column `j` lifts the `j`-th abstract generator.
    lift: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinal {
    Finite(BigInt),
    Infinite,
}

impl Cardinal {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }
}

impl std::fmt::Display for Cardinal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => write!(f, "infinite"),
        }
    }
}

/// The group `ℤ^rows / column-span(m)`.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    let r = m.rows();
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.len();
    let mut torsion_rows = Vec::new();
    let mut invariant_factors = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            torsion_rows.push(i);
            invariant_factors.push(d.clone());
        }
    }
    let free_rank = r - rank;
    let u_inv = inverse_unimodular(&snf.u);

    // Free coordinates: the rows of u past the rank form a basis of the left
    // kernel of m. Replace them by its row Hermite form so the free
    // coordinates do not depend on pivoting choices.
    let free_idx: Vec<usize> = (rank..r).collect();
    let p = snf.u.select_rows(&free_idx);
    let (p_canon, lift_free) = if free_rank > 0 {
        let hnf = column_hnf(&p.transpose());
        // hᵀ = vᵀ·p, so the new free rows are g·p with g = vᵀ and the lifts
        // become u⁻¹_free · g⁻¹.
        let g = hnf.v.transpose();
        let g_inv = inverse_unimodular(&g);
        let h = hnf.h.transpose();
        (h, u_inv.select_cols(&free_idx).mul(&g_inv))
    } else {
        (IntMatrix::zeros(0, r), IntMatrix::zeros(r, 0))
    };

    let t = torsion_rows.len();
    let mut proj = IntMatrix::zeros(t + free_rank, r);
    let mut lift = IntMatrix::zeros(r, t + free_rank);
    for (k, &i) in torsion_rows.iter().enumerate() {
        for j in 0..r {
            proj[(k, j)] = snf.u[(i, j)].clone();
            lift[(j, k)] = u_inv[(j, i)].clone();
        }
    }
    for k in 0..free_rank {
        for j in 0..r {
            proj[(t + k, j)] = p_canon[(k, j)].clone();
            lift[(j, t + k)] = lift_free[(j, k)].clone();
        }
    }
    FinAbGroup {
        invariant_factors,
        free_rank,
        presentation: m.clone(),
        proj,
        lift,
    }
}

impl FinAbGroup {
    /// The free group `ℤ^n`.
    pub fn free(n: usize) -> Self {
        cokernel(&IntMatrix::zeros(n, 0))
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_len(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of normalized coordinates.
    pub fn ngens(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.proj
    }

    pub fn lift_matrix(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn order(&self) -> Cardinal {
        if self.free_rank > 0 {
            Cardinal::Infinite
        } else {
            Cardinal::Finite(self.invariant_factors.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> GroupElem {
        vec![BigInt::zero(); self.ngens()]
    }

    /// The `j`-th abstract generator.
    pub fn generator(&self, j: usize) -> GroupElem {
        let mut e = self.zero();
        e[j] = BigInt::one();
        e
    }

    pub fn reduce(&self, e: &mut GroupElem) {
        for (x, d) in e.iter_mut().zip(&self.invariant_factors) {
            *x = x.mod_floor(d);
        }
    }

    /// Class of a vector of the presenting free group.
    pub fn project(&self, x: &[BigInt]) -> GroupElem {
        let mut e = self.proj.mul_vec(x);
        self.reduce(&mut e);
        e
    }

    pub fn project_i64(&self, x: &[i64]) -> GroupElem {
        self.project(&super::matrix::big_vec(x))
    }

    /// A representative in the presenting free group.
    pub fn lift(&self, e: &GroupElem) -> Vec<BigInt> {
        self.lift.mul_vec(e)
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let mut e: GroupElem = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut e);
        e
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let mut e: GroupElem = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut e);
        e
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        let mut e: GroupElem = a.iter().map(|x| -x).collect();
        self.reduce(&mut e);
        e
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElem) -> GroupElem {
        let mut e: GroupElem = a.iter().map(|x| k * x).collect();
        self.reduce(&mut e);
        e
    }

    pub fn is_zero_elem(&self, a: &GroupElem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// Order of an element.
    pub fn elem_order(&self, a: &GroupElem) -> Cardinal {
        if a[self.torsion_len()..].iter().any(|x| !x.is_zero()) {
            return Cardinal::Infinite;
        }
        let mut ord = BigInt::one();
        for (x, d) in a.iter().zip(&self.invariant_factors) {
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Cardinal::Finite(ord)
    }

    /// Projection of an element to its free coordinates.
    pub fn free_part<'a>(&self, a: &'a GroupElem) -> &'a [BigInt] {
        &a[self.torsion_len()..]
    }

    /// Human-readable structure, e.g. `Z/2 + Z^2` or `0`.
    pub fn structure_string(&self) -> String {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            f => parts.push(format!("Z^{f}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// True when `a` is nonnegative in each coordinate (free part only) and
    /// the torsion is arbitrary. Used for degree comparisons.
    pub fn free_is_nonnegative(&self, a: &GroupElem) -> bool {
        self.free_part(a).iter().all(|x| !x.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::big_vec;

    #[test]
    fn cokernel_of_ray_matrices() {
        // rows = rays (1,0),(1,2)
        let c = IntMatrix::from_rows_i64(&[vec![1, 0], vec![1, 2]], 2);
        let g = cokernel(&c);
        assert_eq!(g.invariant_factors(), &big_vec(&[2])[..]);
        assert_eq!(g.free_rank(), 0);

        let c = IntMatrix::from_rows_i64(&[vec![1, 0], vec![0, 1], vec![-1, -1]], 2);
        let g = cokernel(&c);
        assert!(g.is_free());
        assert_eq!(g.free_rank(), 1);
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(g.project_i64(&e), big_vec(&[1]));
        }

        let g = cokernel(&IntMatrix::identity(2));
        assert!(g.is_trivial());
    }

    #[test]
    fn lift_then_project_is_identity() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4, 0], vec![0, 6, 3], vec![1, 1, 1], vec![0, 0, 0]], 3);
        let g = cokernel(&m);
        for j in 0..g.ngens() {
            let e = g.generator(j);
            assert_eq!(g.project(&g.lift(&e)), e);
        }
        // columns of the presentation vanish
        for col in m.col_vecs() {
            assert!(g.is_zero_elem(&g.project(&col)));
        }
    }
}
