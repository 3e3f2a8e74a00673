//! Character decomposition of the degree-`γ` parts of Čech complexes of `S`.
//!
//! Every monomial of degree `γ` is `m₀ + c(u)` for a fixed base point `m₀`
//! and a character `u`; the localization at `ẑ_T = ∏_{σ∈T} ẑ_σ` contains it
//! exactly when `m` is nonnegative on the rays of `⋂_{σ∈T} σ`. The complex
//! therefore splits into one subset complex per character, determined by the
//! set of rays where `m` is negative.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::complex::{alternating_sum, SubsetComplex};
use crate::error::{Error, Result};
use crate::fan::cone::Vector;
use crate::lattice::{column_hnf, lattice_basis, small_vec, GroupElem, IntMatrix};
use crate::picard::FanDiagram;

/// Upper bound on the number of characters in one scan.
const MAX_CHARACTERS: u128 = 5_000_000;

/// Per-character data summed over a box.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Totals {
    /// `dim Hⁱ` of the Čech complex of the maximal-cone cover.
    pub sheaf: Vec<usize>,
    /// `dim Hⁱ` of the extended Čech complex on `{ẑ_σ}`.
    pub local: Vec<usize>,
    /// Characters with `m ≥ 0`: `dim S_γ` inside the box.
    pub monomials: usize,
    /// Rank of `S_γ → H⁰`.
    pub eta_rank: usize,
    pub d_squared_zero: bool,
    pub euler_consistent: bool,
}

impl Totals {
    fn zero(s: usize) -> Totals {
        Totals {
            sheaf: vec![0; s],
            local: vec![0; s + 1],
            monomials: 0,
            eta_rank: 0,
            d_squared_zero: true,
            euler_consistent: true,
        }
    }

    pub fn add(&mut self, o: &Totals) {
        for (a, b) in self.sheaf.iter_mut().zip(&o.sheaf) {
            *a += b;
        }
        for (a, b) in self.local.iter_mut().zip(&o.local) {
            *a += b;
        }
        self.monomials += o.monomials;
        self.eta_rank += o.eta_rank;
        self.d_squared_zero &= o.d_squared_zero;
        self.euler_consistent &= o.euler_consistent;
    }
}

/// The cover data of a fan: for each subset `T` of maximal cones, the rays of
/// `⋂_{σ∈T} σ` (all rays for `T = ∅`), and a basis of the character lattice
/// `im c = ker a` inside `ℤ^{Σ₁}`.
#[derive(Clone, Debug)]
pub struct CharacterSpace {
    k: usize,
    s: usize,
    supports: Vec<Vec<usize>>,
    basis: Vec<Vector>,
    hnf: IntMatrix,
    cache: HashMap<Vec<bool>, Totals>,
}

impl CharacterSpace {
    pub fn new(d: &FanDiagram) -> Result<CharacterSpace> {
        let f = d.fan();
        let k = d.nrays();
        let max = f.max_cones();
        let s = max.len();
        if s > 16 {
            return Err(Error::Unsupported(format!("{s} maximal cones")));
        }
        let supports = (0u32..(1 << s))
            .map(|t| {
                (0..k)
                    .filter(|r| (0..s).all(|i| t & (1 << i) == 0 || max[i].contains(r)))
                    .collect()
            })
            .collect();
        let c = d.c_matrix();
        let basis_m = if c.cols() == 0 {
            IntMatrix::zeros(k, 0)
        } else {
            lattice_basis(c)
        };
        let basis = (0..basis_m.cols()).map(|j| small_vec(&basis_m.col(j))).collect();
        Ok(CharacterSpace {
            k,
            s,
            supports,
            basis,
            hnf: basis_m,
            cache: HashMap::new(),
        })
    }

    pub fn ncones(&self) -> usize {
        self.s
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// A base point `m₀` of degree `γ`, reduced modulo the character lattice.
    pub fn base_point(&self, d: &FanDiagram, gamma: &GroupElem) -> Vector {
        let mut m: Vec<BigInt> = d.group().lift(gamma);
        if self.hnf.cols() > 0 {
            crate::charts::hilbert::reduce_mod(&self.hnf, &mut m);
        }
        debug_assert!(column_hnf(&self.hnf).rank() == self.hnf.cols());
        small_vec(&m)
    }

    /// The default box radius `‖m₀‖₁ + 2`.
    pub fn default_radius(&self, d: &FanDiagram, gamma: &GroupElem) -> i64 {
        self.base_point(d, gamma).iter().map(|x| x.abs()).sum::<i64>() + 2
    }

    fn pattern(&mut self, negative: Vec<bool>) -> Totals {
        if let Some(t) = self.cache.get(&negative) {
            return t.clone();
        }
        let supports = &self.supports;
        let member = |t: u32| supports[t as usize].iter().all(|&r| !negative[r]);
        let sheaf = SubsetComplex::new(self.s, 1, member);
        let local = SubsetComplex::new(self.s, 0, member);
        let hs = sheaf.cohomology();
        let hl = local.cohomology();
        let nonneg = member(0);
        // η: the monomial goes to the constant cochain on the singletons.
        let eta_rank = if nonneg && self.s > 0 {
            let d0_kills = self.s == 1 || {
                let m = sheaf.differential(0);
                (0..m.rows()).all(|r| (0..m.cols()).map(|c| &m[(r, c)]).sum::<BigInt>() == BigInt::from(0))
            };
            usize::from(d0_kills)
        } else {
            0
        };
        let euler = alternating_sum(&sheaf.dims()) == alternating_sum(&hs)
            && alternating_sum(&local.dims()) == alternating_sum(&hl);
        let t = Totals {
            sheaf: hs,
            local: hl,
            monomials: usize::from(nonneg),
            eta_rank,
            d_squared_zero: sheaf.d_squared_zero() && local.d_squared_zero(),
            euler_consistent: euler,
        };
        self.cache.insert(negative, t.clone());
        t
    }

    /// Totals for degree `γ` over the boxes `‖u‖_∞ ≤ r` for each `r` in
    /// `radii` (sorted ascending).
    pub fn scan(&mut self, d: &FanDiagram, gamma: &GroupElem, radii: &[i64]) -> Result<Vec<Totals>> {
        let rmax = *radii.last().expect("at least one radius");
        if rmax < 0 {
            return Err(Error::Unsupported("negative box radius".into()));
        }
        let r = self.rank();
        let side = (2 * rmax + 1) as u128;
        if side.checked_pow(r as u32).is_none_or(|n| n > MAX_CHARACTERS) {
            return Err(Error::Unsupported(format!(
                "box of radius {rmax} in rank {r} is too large"
            )));
        }
        let m0 = self.base_point(d, gamma);
        let mut out = vec![Totals::zero(self.s); radii.len()];
        let mut u = vec![-rmax; r];
        loop {
            let mut m = m0.clone();
            for (uj, b) in u.iter().zip(&self.basis) {
                for (mi, bi) in m.iter_mut().zip(b) {
                    *mi += uj * bi;
                }
            }
            let negative: Vec<bool> = m.iter().map(|&x| x < 0).collect();
            let t = self.pattern(negative);
            let norm = u.iter().map(|x| x.abs()).max().unwrap_or(0);
            for (o, &rad) in out.iter_mut().zip(radii) {
                if norm <= rad {
                    o.add(&t);
                }
            }
            let mut i = 0;
            loop {
                if i == r {
                    return Ok(out);
                }
                u[i] += 1;
                if u[i] <= rmax {
                    break;
                }
                u[i] = -rmax;
                i += 1;
            }
        }
    }

    pub fn nrays(&self) -> usize {
        self.k
    }

    /// The monomials `m₀ + c(u)` of degree `γ` with `‖u‖_∞ ≤ r`.
    pub fn characters(&self, d: &FanDiagram, gamma: &GroupElem, r: i64) -> Result<Vec<Vector>> {
        let rank = self.rank();
        let side = (2 * r.max(0) + 1) as u128;
        if side.checked_pow(rank as u32).is_none_or(|n| n > MAX_CHARACTERS) {
            return Err(Error::Unsupported(format!(
                "box of radius {r} in rank {rank} is too large"
            )));
        }
        let m0 = self.base_point(d, gamma);
        let mut out = Vec::new();
        let mut u = vec![-r; rank];
        loop {
            let mut m = m0.clone();
            for (uj, b) in u.iter().zip(&self.basis) {
                for (mi, bi) in m.iter_mut().zip(b) {
                    *mi += uj * bi;
                }
            }
            out.push(m);
            let mut i = 0;
            loop {
                if i == rank {
                    return Ok(out);
                }
                u[i] += 1;
                if u[i] <= r {
                    break;
                }
                u[i] = -r;
                i += 1;
            }
        }
    }
}
