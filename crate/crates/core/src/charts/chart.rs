//! Chart monoids of the Cox scheme, dual monoids of the toric scheme, their
//! comparison through `c`, and the gluing data between charts.

use num_bigint::BigInt;
use serde::Serialize;

use super::hilbert::{hilbert_basis, MonoidBasis};
use crate::error::{Error, Result};
use crate::fan::cone::{dual_cone, Vector};
use crate::lattice::{big_vec, integer_kernel, lattice_basis, small_vec, IntMatrix};
use crate::picard::FanDiagram;

/// `C_σ = {m ∈ ℤ^{Σ₁} : m_ρ ≥ 0 for ρ ∈ σ₁, a(m) = 0}`.
#[derive(Clone, Debug)]
pub struct ChartMonoid {
    pub cone: Vec<usize>,
    pub basis: MonoidBasis,
}

impl ChartMonoid {
    /// Generators as exponent vectors, sorted.
    pub fn hilbert_basis(&self) -> Vec<Vector> {
        self.basis.generators()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.basis.contains(m)
    }
}

/// Basis of `ker(a) ⊆ ℤ^{Σ₁}` computed from the projection onto `A` alone.
pub fn degree_zero_lattice(d: &FanDiagram) -> IntMatrix {
    let a = d.group();
    let k = d.nrays();
    let ng = a.ngens();
    let t = a.torsion_len();
    let proj = a.projection_matrix();
    let mut m = IntMatrix::zeros(ng, k + t);
    for i in 0..ng {
        for j in 0..k {
            m[(i, j)] = proj[(i, j)].clone();
        }
    }
    for (i, dd) in a.invariant_factors().iter().enumerate().take(t) {
        m[(i, k + i)] = -dd.clone();
    }
    let kern = integer_kernel(&m);
    let cols: Vec<Vec<BigInt>> = kern
        .col_vecs()
        .into_iter()
        .map(|c| c[..k].to_vec())
        .collect();
    if cols.is_empty() {
        return IntMatrix::zeros(k, 0);
    }
    lattice_basis(&IntMatrix::from_cols(&cols, k))
}

fn coordinate_ineqs(k: usize, sigma: &[usize]) -> Vec<Vector> {
    sigma
        .iter()
        .map(|&i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn chart_monoid(d: &FanDiagram, sigma: &[usize]) -> Result<ChartMonoid> {
    if !d.fan().contains_cone(sigma) {
        return Err(Error::ConeNotInFan(sigma.to_vec()));
    }
    let lat = degree_zero_lattice(d);
    let basis = hilbert_basis(&lat, &coordinate_ineqs(d.nrays(), sigma))?;
    Ok(ChartMonoid {
        cone: sigma.to_vec(),
        basis,
    })
}

/// Hilbert basis of `σ^∨ ∩ M` for `σ` spanned by `gens` in `ℤ^n`.
pub fn dual_monoid(gens: &[Vector], n: usize) -> Result<MonoidBasis> {
    hilbert_basis(&IntMatrix::identity(n), gens)
}

/// Per-cone comparison of `c_σ : σ^∨_M → C_σ`.
#[derive(Clone, Debug, Serialize)]
pub struct ChartComparison {
    pub cone: Vec<usize>,
    pub dual_generators: Vec<Vector>,
    pub chart_generators: Vec<Vector>,
    /// `c` maps every dual generator into `C_σ`.
    pub maps_into: bool,
    /// Images of the irreducible non-units agree with those of `C_σ` modulo
    /// units.
    pub pointed_parts_match: bool,
    /// `c` maps the unit lattice of `σ^∨_M` onto that of `C_σ`.
    pub units_onto: bool,
}

impl ChartComparison {
    pub fn surjective(&self) -> bool {
        self.maps_into && self.pointed_parts_match && self.units_onto
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoxToricVerdict {
    Isomorphic,
    NotFull { kernel_rank: usize },
    /// `c_σ` failed to be onto some chart; never expected.
    Mismatch { cones: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxToricReport {
    pub verdict: CoxToricVerdict,
    pub charts: Vec<ChartComparison>,
}

fn apply_c(d: &FanDiagram, u: &[i64]) -> Vector {
    d.character_exponents(u)
}

fn compare_cone(d: &FanDiagram, sigma: &[usize]) -> Result<ChartComparison> {
    let n = d.fan().ambient_dim();
    let chart = chart_monoid(d, sigma)?;
    let dual = dual_monoid(&d.fan().cone_generators(sigma), n)?;
    let mut maps_into = true;
    for g in dual.generators() {
        if !chart.contains(&apply_c(d, &g)) {
            maps_into = false;
        }
    }
    let mut images: Vec<Vector> = Vec::new();
    for g in dual.pointed() {
        match chart.basis.quotient_coords(&apply_c(d, g)) {
            Some(z) => images.push(z),
            None => maps_into = false,
        }
    }
    images.sort();
    let mut target = chart.basis.pointed_quotient().to_vec();
    target.sort();
    let pointed_parts_match = images == target;
    let k = d.nrays();
    let unit_images: Vec<Vec<BigInt>> = dual.units().iter().map(|u| big_vec(&apply_c(d, u))).collect();
    let image_lattice = if unit_images.is_empty() {
        IntMatrix::zeros(k, 0)
    } else {
        lattice_basis(&IntMatrix::from_cols(&unit_images, k))
    };
    let units_onto = image_lattice == chart.basis.unit_lattice();
    Ok(ChartComparison {
        cone: sigma.to_vec(),
        dual_generators: dual.generators(),
        chart_generators: chart.hilbert_basis(),
        maps_into,
        pointed_parts_match,
        units_onto,
    })
}

/// Compares the Cox-scheme charts with the toric charts on every cone. The
/// maps are always onto; they are injective exactly when `c` is, i.e. when
/// the fan is full.
pub fn compare_cox_toric(d: &FanDiagram) -> Result<CoxToricReport> {
    let mut charts = Vec::new();
    for sigma in d.fan().cones() {
        charts.push(compare_cone(d, sigma)?);
    }
    let bad: Vec<Vec<usize>> = charts
        .iter()
        .filter(|c| !c.surjective())
        .map(|c| c.cone.clone())
        .collect();
    let verdict = if !bad.is_empty() {
        CoxToricVerdict::Mismatch { cones: bad }
    } else if d.kernel_rank() > 0 {
        CoxToricVerdict::NotFull {
            kernel_rank: d.kernel_rank(),
        }
    } else {
        CoxToricVerdict::Isomorphic
    };
    Ok(CoxToricReport { verdict, charts })
}

/// Gluing data for a pair of maximal cones: `u ∈ τ^∨_M` cutting out `σ ∩ τ`,
/// the degree-zero monomial `p = Z^{c(u)}` on the chart of `τ`, and `q` of
/// degree `l·α̂_σ` with `q·p = ẑ_σ^l`.
#[derive(Clone, Debug, Serialize)]
pub struct GlueWitness {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub u: Vector,
    pub p: Vector,
    pub q: Vector,
    pub l: i64,
    /// `q + p = l·ẑ_σ` exponentwise.
    pub product_holds: bool,
    /// `q` has degree `l·α̂_σ` and nonnegative exponents on `τ₁`.
    pub q_in_twist: bool,
    /// `τ ∩ u^⊥ = σ ∩ τ`.
    pub cuts_face: bool,
    /// The chart of `σ ∩ τ` is the chart of `τ` with `p` inverted.
    pub localizes: bool,
}

impl GlueWitness {
    pub fn holds(&self) -> bool {
        self.product_holds && self.q_in_twist && self.cuts_face && self.localizes
    }
}

fn glue_pair(d: &FanDiagram, sigma: &[usize], tau: &[usize]) -> Result<GlueWitness> {
    let f = d.fan();
    let n = f.ambient_dim();
    let k = d.nrays();
    let face = f.meet(sigma, tau);
    let rays = f.rays();
    // Sum of the dual generators of τ that vanish on σ ∩ τ.
    let mut u = vec![0i64; n];
    for g in dual_cone(&f.cone_generators(tau), n) {
        if face
            .iter()
            .all(|&i| rays[i].iter().zip(&g).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            for (x, y) in u.iter_mut().zip(&g) {
                *x += y;
            }
        }
    }
    let p = apply_c(d, &u);
    let cut: Vec<usize> = tau.iter().copied().filter(|&i| p[i] == 0).collect();
    let cuts_face = cut == face;
    let l = tau
        .iter()
        .filter(|i| !sigma.contains(i))
        .map(|&i| p[i])
        .max()
        .unwrap_or(0)
        .max(1);
    let mut q = vec![0i64; k];
    for i in 0..k {
        let in_s = sigma.contains(&i);
        let in_t = tau.contains(&i);
        q[i] = match (in_s, in_t) {
            (false, _) => l - p[i],
            (true, false) => -p[i],
            (true, true) => 0,
        };
    }
    let zhat: Vec<i64> = (0..k).map(|i| if sigma.contains(&i) { 0 } else { l }).collect();
    let product_holds = q.iter().zip(&p).map(|(a, b)| a + b).collect::<Vec<_>>() == zhat;
    let a = d.group();
    let target = a.scale(&BigInt::from(l), &d.alpha_hat(sigma));
    let q_in_twist = d.degree(&q) == target && tau.iter().all(|&i| q[i] >= 0);
    // Localization: C_τ[p⁻¹] = C_{σ∩τ}.
    let chart_t = chart_monoid(d, tau)?;
    let chart_f = chart_monoid(d, &face)?;
    let neg_p: Vec<i64> = p.iter().map(|x| -x).collect();
    let mut localizes = chart_f.contains(&neg_p);
    for g in chart_t.hilbert_basis() {
        localizes &= chart_f.contains(&g);
    }
    for g in chart_f.hilbert_basis() {
        // Some g + N·p lies in C_τ.
        let ok = (0..=64).any(|nn| {
            let v: Vec<i64> = g.iter().zip(&p).map(|(a, b)| a + nn * b).collect();
            chart_t.contains(&v)
        });
        localizes &= ok;
    }
    Ok(GlueWitness {
        sigma: sigma.to_vec(),
        tau: tau.to_vec(),
        u,
        p,
        q,
        l,
        product_holds,
        q_in_twist,
        cuts_face,
        localizes,
    })
}

/// Gluing witnesses for all ordered pairs of maximal cones.
pub fn glue_check(d: &FanDiagram) -> Result<Vec<GlueWitness>> {
    let mut out = Vec::new();
    for s in d.fan().max_cones() {
        for t in d.fan().max_cones() {
            out.push(glue_pair(d, s, t)?);
        }
    }
    Ok(out)
}

/// `c(e_i)` for the standard basis of `M`, as exponent vectors.
pub fn character_images(d: &FanDiagram) -> Vec<Vector> {
    let n = d.fan().ambient_dim();
    (0..n)
        .map(|i| {
            let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            small_vec(&big_vec(&apply_c(d, &e)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples;
    use crate::picard::build_diagram;

    #[test]
    fn chart_of_ex_3_290_at_sigma3() {
        let d = build_diagram(&examples::ex_3_290());
        let ch = chart_monoid(&d, &[0, 2]).unwrap();
        // Z₃³Z₂⁻¹, Z₃Z₁Z₂⁻¹, Z₁³Z₂⁻² with Z_i ↦ index i−1.
        let mut want = vec![vec![0, -1, 3], vec![1, -1, 1], vec![3, -2, 0]];
        want.sort();
        assert_eq!(ch.hilbert_basis(), want);
    }

    #[test]
    fn chart_of_p2() {
        let d = build_diagram(&examples::p2());
        let ch = chart_monoid(&d, &[0, 1]).unwrap();
        assert_eq!(ch.hilbert_basis(), vec![vec![0, 1, -1], vec![1, 0, -1]]);
        // Torus chart: units span c(M).
        let ch0 = chart_monoid(&d, &[]).unwrap();
        let imgs: Vec<Vec<BigInt>> = character_images(&d).iter().map(|v| big_vec(v)).collect();
        assert_eq!(ch0.basis.unit_lattice(), lattice_basis(&IntMatrix::from_cols(&imgs, 3)));
        assert!(ch0.basis.pointed().is_empty());
    }

    #[test]
    fn duals() {
        let hb = dual_monoid(&[vec![1, 0]], 2).unwrap();
        assert_eq!(hb.generators(), vec![vec![0, -1], vec![0, 1], vec![1, 0]]);
        let hb = dual_monoid(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(hb.generators(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cox_vs_toric() {
        for f in [examples::p2(), examples::ex_3_290(), examples::hirzebruch(2)] {
            let r = compare_cox_toric(&build_diagram(&f)).unwrap();
            assert_eq!(r.verdict, CoxToricVerdict::Isomorphic, "{}", f.name());
        }
        let line = crate::fan::Fan::new(2, vec![vec![1, 0]], vec![vec![0]]).unwrap();
        let r = compare_cox_toric(&build_diagram(&line)).unwrap();
        assert_eq!(r.verdict, CoxToricVerdict::NotFull { kernel_rank: 1 });
    }

    #[test]
    fn glue_witnesses_hold() {
        for f in [examples::p2(), examples::ex_3_290(), examples::hirzebruch(2), examples::ex_1_100b()] {
            for w in glue_check(&build_diagram(&f)).unwrap() {
                assert!(w.holds(), "{} {:?}", f.name(), w);
            }
        }
    }
}
