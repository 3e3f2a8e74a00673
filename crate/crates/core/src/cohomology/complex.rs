//! Čech-type complexes on up-closed families of subsets of a finite index
//! set, with ranks computed exactly.

use num_bigint::BigInt;

use crate::lattice::{rank, IntMatrix};

/// Cochains on the subsets `T ⊆ {0..s}` of a family closed under supersets;
/// `C^p` is spanned by members with `|T| = p + offset`, and the differential
/// is `(dc)(T′) = Σ_j (−1)^j c(T′ ∖ {i_j})` over the sorted elements of `T′`.
#[derive(Clone, Debug)]
pub struct SubsetComplex {
    offset: usize,
    cells: Vec<Vec<u32>>,
    diffs: Vec<IntMatrix>,
}

impl SubsetComplex {
    /// `offset = 1` gives the Čech complex of a cover; `offset = 0` the
    /// extended complex whose `C^0` is the empty intersection.
    pub fn new(s: usize, offset: usize, member: impl Fn(u32) -> bool) -> SubsetComplex {
        assert!(s < 32, "at most 31 cover elements");
        let top = s + 1 - offset;
        let mut cells: Vec<Vec<u32>> = vec![Vec::new(); top];
        for t in 0u32..(1u32 << s) {
            let size = t.count_ones() as usize;
            if size >= offset && member(t) {
                cells[size - offset].push(t);
            }
        }
        let diffs = (0..top.saturating_sub(1))
            .map(|p| differential(&cells[p], &cells[p + 1]))
            .collect();
        SubsetComplex {
            offset,
            cells,
            diffs,
        }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn cells(&self, p: usize) -> &[u32] {
        &self.cells[p]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn differential(&self, p: usize) -> &IntMatrix {
        &self.diffs[p]
    }

    /// `dim H^p` for every `p`.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(rank).collect();
        (0..self.cells.len())
            .map(|p| {
                let out = ranks.get(p).copied().unwrap_or(0);
                let inc = if p == 0 { 0 } else { ranks[p - 1] };
                self.cells[p].len() - out - inc
            })
            .collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.diffs
            .windows(2)
            .all(|w| w[1].cols() == 0 || w[0].rows() == 0 || w[1].mul(&w[0]).is_zero())
    }
}

fn differential(src: &[u32], dst: &[u32]) -> IntMatrix {
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    for (r, &t) in dst.iter().enumerate() {
        let mut j = 0i64;
        for i in 0..32 {
            if t & (1 << i) == 0 {
                continue;
            }
            if let Ok(c) = src.binary_search(&(t & !(1 << i))) {
                m[(r, c)] = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
            }
            j += 1;
        }
    }
    m
}

/// `Σ (−1)^p a_p`.
pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}
