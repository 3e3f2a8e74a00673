//! Global sections of the sheaf glued from the chartwise tensor products
//! `S_{σ,α} ⊗_{C_σ} S_{σ,β}`.

use serde::Serialize;

use super::character::CharacterSpace;
use crate::charts::{fiber_data, FiberData};
use crate::error::Result;
use crate::lattice::{rank, GroupElem, IntMatrix};
use crate::picard::FanDiagram;

#[derive(Clone, Debug, Serialize)]
pub struct TensorH0 {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    /// `h⁰` of the tensor-product sheaf.
    pub tensor: usize,
    /// `h⁰(Y, O(α + β))`.
    pub direct: usize,
    pub radius: i64,
    pub stable: bool,
}

/// Compares `h⁰` of the chartwise tensor product of `O(α)` and `O(β)` with
/// `h⁰(O(α+β))`. The tensor sheaf is graded by exponent vectors `t`; its
/// sections over a chart in degree `t` have one basis vector per class of
/// the multiplication fiber over `t`, and restriction maps classes to
/// classes.
pub fn tensor_h0(
    d: &FanDiagram,
    alpha: &GroupElem,
    beta: &GroupElem,
    radius: Option<i64>,
) -> Result<TensorH0> {
    let a = d.group();
    let sum = a.add(alpha, beta);
    let zero = a.zero();
    let direct = super::sheaf_cohomology(d, &[zero], &sum, radius)?;
    let r = direct.radius;
    let max = d.fan().max_cones().to_vec();
    let s = max.len();
    let mut charts: Vec<FiberData> = Vec::new();
    for sigma in &max {
        charts.push(fiber_data(d, sigma, alpha)?);
    }
    let mut overlaps: Vec<(usize, usize, FiberData)> = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let face = d.fan().meet(&max[i], &max[j]);
            overlaps.push((i, j, fiber_data(d, &face, alpha)?));
        }
    }
    let space = CharacterSpace::new(d)?;
    let mut totals = [0usize; 2];
    for (slot, rad) in [r, r + 1].into_iter().enumerate() {
        for t in space.characters(d, &sum, rad)? {
            totals[slot] += h0_at(&charts, &overlaps, &t);
        }
    }
    Ok(TensorH0 {
        alpha: alpha.iter().map(|x| x.to_string()).collect(),
        beta: beta.iter().map(|x| x.to_string()).collect(),
        tensor: totals[0],
        direct: direct.dims.first().copied().unwrap_or(0),
        radius: r,
        stable: totals[0] == totals[1] && direct.stable,
    })
}

fn h0_at(charts: &[FiberData], overlaps: &[(usize, usize, FiberData)], t: &[i64]) -> usize {
    let fibers: Vec<_> = charts.iter().map(|c| c.fiber(t)).collect();
    let offsets: Vec<usize> = fibers
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.nclasses();
            Some(o)
        })
        .collect();
    let c0: usize = fibers.iter().map(|f| f.nclasses()).sum();
    if c0 == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, j, ov) in overlaps {
        let g = ov.fiber(t);
        let n = g.nclasses();
        let mut block = vec![vec![0i64; c0]; n];
        for (sign, k) in [(-1i64, *i), (1, *j)] {
            let f = &fibers[k];
            let mut seen = std::collections::BTreeSet::new();
            for (x, &cl) in f.left.iter().zip(&f.class) {
                if !seen.insert(cl) {
                    continue;
                }
                if let Some(target) = g.class_of(x) {
                    block[target][offsets[k] + cl] += sign;
                }
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return c0;
    }
    c0 - rank(&IntMatrix::from_rows_i64(&rows, c0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples;
    use crate::picard::{build_diagram, picard_group};
    use num_bigint::BigInt;

    #[test]
    fn weighted_plane() {
        let d = build_diagram(&examples::ex_3_290());
        let a = d.group().clone();
        let g = picard_group(&d).generators()[0].clone();
        for (i, j) in [(1i64, 1i64), (1, -1), (0, 2), (-1, 0)] {
            let x = a.scale(&BigInt::from(i), &g);
            let y = a.scale(&BigInt::from(j), &g);
            let h = tensor_h0(&d, &x, &y, None).unwrap();
            assert_eq!(h.tensor, h.direct, "{i} {j}");
        }
        let one = d.alpha()[2].clone();
        let two = a.add(&one, &one);
        let h = tensor_h0(&d, &one, &two, None).unwrap();
        // Degree 3 monomials: Z_1, Z_0·Z_2, Z_2³.
        assert_eq!(h.direct, 3);
        assert_eq!(h.tensor, 3);
        assert!(h.stable);
    }
}
