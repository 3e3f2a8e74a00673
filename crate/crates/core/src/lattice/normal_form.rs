//! Hermite and Smith normal forms with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Column-style Hermite normal form `m · v = h`.
///
/// `h` is in column echelon form: column `j < rank` has its leading nonzero
/// entry at row `pivots[j]`, the pivots strictly increase, the pivot entry is
/// positive and entries to its left in the pivot row lie in `[0, pivot)`.
/// Columns `rank..` of `h` are zero, so the matching columns of `v` span the
/// integer kernel of `m`.
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnHnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical basis of the column lattice of the input.
    pub fn basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.h.select_cols(&idx)
    }

    /// A basis of the integer kernel (not canonicalized).
    pub fn kernel_raw(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank()..self.v.cols()).collect();
        self.v.select_cols(&idx)
    }
}

pub fn column_hnf(m: &IntMatrix) -> ColumnHnf {
    let mut h = m.clone();
    let mut v = IntMatrix::identity(m.cols());
    let mut pivots = Vec::new();
    let mut k = 0usize;
    for i in 0..h.rows() {
        if k == h.cols() {
            break;
        }
        loop {
            // Column with the smallest nonzero absolute value in row i.
            let mut best: Option<usize> = None;
            for j in k..h.cols() {
                if h[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) if h[(i, j)].abs() < h[(i, b)].abs() => best = Some(j),
                    _ => {}
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(k, b);
            v.swap_cols(k, b);
            let mut done = true;
            for j in k + 1..h.cols() {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, k)]);
                let nq = -q;
                h.add_col_multiple(j, k, &nq);
                v.add_col_multiple(j, k, &nq);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            v.negate_col(k);
        }
        for j in 0..k {
            let q = h[(i, j)].div_floor(&h[(i, k)]);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(j, k, &nq);
                v.add_col_multiple(j, k, &nq);
            }
        }
        pivots.push(i);
        k += 1;
    }
    ColumnHnf { h, v, pivots }
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `m`.
pub fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    column_hnf(m).basis()
}

/// Canonical basis (as columns) of `{x ∈ ℤ^cols : m·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let k = column_hnf(m).kernel_raw();
    if k.cols() == 0 {
        return k;
    }
    lattice_basis(&k)
}

/// Canonical row basis of the lattice spanned by the rows of `m`.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    lattice_basis(&m.transpose()).transpose()
}

pub fn rank(m: &IntMatrix) -> usize {
    column_hnf(m).rank()
}

/// Some integer solution of `m·x = b`, or `None`. The choice is deterministic.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let f = column_hnf(m);
    let r = f.rank();
    let mut y: Vec<BigInt> = Vec::with_capacity(r);
    for (j, &p) in f.pivots.iter().enumerate() {
        let mut s = b[p].clone();
        for (l, yl) in y.iter().enumerate() {
            s -= &f.h[(p, l)] * yl;
        }
        let (q, rem) = s.div_rem(&f.h[(p, j)]);
        if !rem.is_zero() {
            return None;
        }
        y.push(q);
    }
    let mut full = y.clone();
    full.resize(m.cols(), BigInt::zero());
    // Check the remaining rows.
    let hy = f.h.mul_vec(&full);
    if hy.as_slice() != b {
        return None;
    }
    Some(f.v.mul_vec(&full))
}

/// Inverse of a unimodular matrix. Panics if the matrix is not unimodular.
pub fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), m.cols());
    let f = column_hnf(m);
    assert!(
        f.h == IntMatrix::identity(m.rows()),
        "matrix is not unimodular"
    );
    f.v
}

/// Smith normal form `u · m · v = d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0usize;
    while t < r.min(c) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if d[(i, j)].abs() < d[(bi, bj)].abs() => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Enforce divisibility by the pivot on the trailing block.
            let mut fix: Option<usize> = None;
            'search: for i in t + 1..r {
                for j in t + 1..c {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        fix = Some(i);
                        break 'search;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::big_vec;

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_small_cases() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        let s = check_snf(&IntMatrix::from_rows_i64(&[vec![2, 4], vec![0, 6]], 2));
        assert_eq!(s.diagonal(), big_vec(&[2, 6]));
        let s = check_snf(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        let s = check_snf(&IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(s.diagonal(), big_vec(&[1, 6]));
    }

    #[test]
    fn hnf_kernel_and_solve() {
        let m = IntMatrix::from_rows_i64(&[vec![1, 2, 3], vec![4, 5, 6]], 3);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        assert_eq!(
            solve_integer(&IntMatrix::identity(2), &big_vec(&[5, -7])),
            Some(big_vec(&[5, -7]))
        );
        let two = IntMatrix::from_rows_i64(&[vec![2]], 1);
        assert_eq!(solve_integer(&two, &big_vec(&[3])), None);
        let m = IntMatrix::from_rows_i64(&[vec![1, 1], vec![0, 2]], 2);
        assert_eq!(solve_integer(&m, &big_vec(&[1, 2])), Some(big_vec(&[0, 1])));
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 1], vec![5, 3]], 2);
        let inv = inverse_unimodular(&m);
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }
}
