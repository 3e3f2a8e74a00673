//! Picard group as virtual polytopes modulo characters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::diagram::{picard_group, FanDiagram};
use crate::error::{Error, Result};
use crate::fan::ConeIdx;
use crate::lattice::{
    big_vec, cokernel, column_hnf, integer_kernel, lattice_basis, solve_integer, FinAbGroup,
    GroupElem, IntMatrix, Subgroup,
};

/// A family `(m_σ)_{σ ∈ Σ}` of characters with `m_σ - m_τ ∈ τ^⊥` for
/// `τ ⪯ σ`. Entries are indexed like `fan.cones()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualPolytope {
    pub m: Vec<Vec<BigInt>>,
}

impl VirtualPolytope {
    pub fn get<'a>(&'a self, d: &FanDiagram, sigma: &[usize]) -> &'a [BigInt] {
        let i = d
            .fan()
            .cones()
            .iter()
            .position(|c| c == sigma)
            .expect("cone of the fan");
        &self.m[i]
    }
}

fn dot_big(r: &[i64], m: &[BigInt]) -> BigInt {
    r.iter().zip(m).map(|(&x, y)| BigInt::from(x) * y).sum()
}

/// Checks the compatibility condition ray by ray.
pub fn is_compatible(d: &FanDiagram, p: &VirtualPolytope) -> bool {
    let f = d.fan();
    let cones = f.cones();
    for (i, sigma) in cones.iter().enumerate() {
        for &r in sigma {
            let j = cones.iter().position(|c| *c == vec![r]).unwrap();
            let ray = &f.rays()[r];
            if dot_big(ray, &p.m[i]) != dot_big(ray, &p.m[j]) {
                return false;
            }
        }
    }
    true
}

/// `d(p) = (ρ(m_ρ))_ρ`.
pub fn ray_values(d: &FanDiagram, p: &VirtualPolytope) -> Vec<BigInt> {
    let f = d.fan();
    (0..f.nrays())
        .map(|r| dot_big(&f.rays()[r], p.get(d, &[r])))
        .collect()
}

/// The class `a(d(p)) ∈ Pic(Σ) ⊆ A`.
pub fn polytope_class(d: &FanDiagram, p: &VirtualPolytope) -> GroupElem {
    d.degree_big(&ray_values(d, p))
}

/// Reduces `m` modulo the lattice spanned by the columns of `basis`
/// (a column Hermite basis), giving a canonical coset representative.
fn reduce_mod_lattice(m: &[BigInt], basis: &IntMatrix) -> Vec<BigInt> {
    let h = column_hnf(basis);
    let b = h.basis();
    let mut out = m.to_vec();
    for (j, &p) in h.pivots.iter().enumerate() {
        let q = out[p].div_floor(&b[(p, j)]);
        if q.is_zero() {
            continue;
        }
        for (i, x) in out.iter_mut().enumerate() {
            *x -= &q * &b[(i, j)];
        }
    }
    out
}

fn perp_matrix(d: &FanDiagram, sigma: &[usize]) -> IntMatrix {
    let n = d.fan().ambient_dim();
    let perp = d.cone_perp(sigma);
    let cols: Vec<Vec<BigInt>> = perp.iter().map(|v| big_vec(v)).collect();
    IntMatrix::from_cols(&cols, n)
}

/// The representative of the class of `p` with `m_σ = 0` for every face
/// `σ ⪯ ω`, each entry reduced modulo `σ^⊥`.
pub fn normal_form_vp(d: &FanDiagram, p: &VirtualPolytope, omega: &[usize]) -> Result<VirtualPolytope> {
    let f = d.fan();
    if !f.contains_cone(omega) {
        return Err(Error::ConeNotInFan(omega.to_vec()));
    }
    let m_omega = reduce_mod_lattice(p.get(d, omega), &perp_matrix(d, omega));
    let m = f
        .cones()
        .iter()
        .zip(&p.m)
        .map(|(sigma, ms)| {
            let shifted: Vec<BigInt> = ms.iter().zip(&m_omega).map(|(a, b)| a - b).collect();
            reduce_mod_lattice(&shifted, &perp_matrix(d, sigma))
        })
        .collect();
    Ok(VirtualPolytope { m })
}

/// A virtual polytope with class `α`, built as in the proof that
/// `⋂ A^σ ⊆ Pic`: write `α = a(r)`, then for each cone pick `s` supported off
/// the cone with `a(s) = α` and solve `c(m_σ) = r - s`.
pub fn virtual_polytope(d: &FanDiagram, alpha: &GroupElem) -> Result<VirtualPolytope> {
    let r = d.group().lift(alpha);
    let f = d.fan();
    let mut per_max: Vec<(ConeIdx, Vec<BigInt>)> = Vec::new();
    for sigma in f.max_cones() {
        let s = d
            .express_off_cone(alpha, sigma)
            .ok_or_else(|| Error::NotInSubgroup(format!("{alpha:?} is not in the Picard group")))?;
        let diff: Vec<BigInt> = r.iter().zip(&s).map(|(a, b)| a - b).collect();
        let m = d
            .character_preimage(&diff)
            .ok_or_else(|| Error::NotInSubgroup("difference is not a character".into()))?;
        per_max.push((sigma.clone(), m));
    }
    let m = f
        .cones()
        .iter()
        .map(|tau| {
            per_max
                .iter()
                .find(|(s, _)| f.is_face(tau, s))
                .map(|(_, m)| m.clone())
                .expect("every cone lies in a maximal cone")
        })
        .collect();
    let p = VirtualPolytope { m };
    debug_assert!(is_compatible(d, &p));
    Ok(p)
}

/// Result of the virtual-polytope construction of the Picard group.
#[derive(Clone, Debug)]
pub struct PicardViaPolytopes {
    /// `P̄ / K` as an abstract group.
    pub group: FinAbGroup,
    /// Image in `A` of each abstract generator of `group` under
    /// `p ↦ a(d(p))`.
    pub witness_images: Vec<GroupElem>,
    /// The kernel of the witness map is trivial.
    pub injective: bool,
    /// The image of the witness map.
    pub image: Subgroup,
    /// The image coincides with the intersection `⋂ A^σ`.
    pub matches_intersection: bool,
}

/// Solves the compatibility constraints `ρ(m_σ) = r_ρ` (`ρ ∈ σ₁`, one
/// character per maximal cone) over ℤ and divides out trivial families and
/// global characters.
pub fn picard_via_polytopes(d: &FanDiagram) -> PicardViaPolytopes {
    let f = d.fan();
    let n = f.ambient_dim();
    let k = f.nrays();
    let maxes = f.max_cones();
    let s = maxes.len();
    let nv = s * n + k;
    let zero = || vec![BigInt::zero(); nv];

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (j, sigma) in maxes.iter().enumerate() {
        for &rho in sigma {
            let mut row = zero();
            for (t, &x) in f.rays()[rho].iter().enumerate() {
                row[j * n + t] = BigInt::from(x);
            }
            row[s * n + rho] = BigInt::from(-1);
            rows.push(row);
        }
    }
    let eq = IntMatrix::from_rows(&rows, nv);
    let l = if rows.is_empty() {
        IntMatrix::identity(nv)
    } else {
        integer_kernel(&eq)
    };
    let lr = l.cols();

    // Trivial families (r = 0, m_σ ∈ σ^⊥) and the diagonal characters.
    let mut triv: Vec<Vec<BigInt>> = Vec::new();
    for (j, sigma) in maxes.iter().enumerate() {
        for u in d.cone_perp(sigma) {
            let mut v = zero();
            for (t, x) in u.iter().enumerate() {
                v[j * n + t] = BigInt::from(*x);
            }
            triv.push(v);
        }
    }
    for i in 0..n {
        let mut v = zero();
        for j in 0..s {
            v[j * n + i] = BigInt::from(1);
        }
        for (rho, ray) in f.rays().iter().enumerate() {
            v[s * n + rho] = BigInt::from(ray[i]);
        }
        triv.push(v);
    }
    let triv_coords: Vec<Vec<BigInt>> = triv
        .iter()
        .map(|v| solve_integer(&l, v).expect("trivial families satisfy the constraints"))
        .collect();
    let triv_mat = if triv_coords.is_empty() {
        IntMatrix::zeros(lr, 0)
    } else {
        IntMatrix::from_cols(&triv_coords, lr)
    };
    let group = cokernel(&triv_mat);

    // Witness map on L-coordinates: y ↦ a(r-part of L·y).
    let a = d.group();
    let r_rows: Vec<usize> = (s * n..nv).collect();
    let r_of_l = l.select_rows(&r_rows);
    let phi = a.projection_matrix().mul(&r_of_l);
    let witness_images: Vec<GroupElem> = (0..group.ngens())
        .map(|g| {
            let y = group.lift(&group.generator(g));
            a.project(&r_of_l.mul_vec(&y))
        })
        .collect();

    // Kernel of the witness map on ℤ^{lr}: y with phi·y ≡ 0 modulo the
    // invariant factors.
    let mut ker_cols: Vec<Vec<BigInt>> = phi.col_vecs();
    for (i, dd) in a.invariant_factors().iter().enumerate() {
        let mut e = vec![BigInt::zero(); a.ngens()];
        e[i] = dd.clone();
        ker_cols.push(e);
    }
    let injective = if a.ngens() == 0 {
        // Every y maps to zero: injective iff the quotient is trivial.
        group.is_trivial()
    } else {
        let big = IntMatrix::from_cols(&ker_cols, a.ngens());
        let ker = integer_kernel(&big);
        let top: Vec<usize> = (0..lr).collect();
        let ker_y = ker.select_rows(&top);
        let triv_lat = lattice_basis(&triv_mat);
        ker_y
            .col_vecs()
            .iter()
            .all(|y| solve_integer(&triv_lat, y).is_some())
    };
    let image = Subgroup::new(a.clone(), &witness_images);
    let matches_intersection = image == picard_group(d);
    PicardViaPolytopes {
        group,
        witness_images,
        injective,
        image,
        matches_intersection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::picard::build_diagram;

    fn wp23() -> FanDiagram {
        build_diagram(
            &Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
                vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn polytope_route_matches() {
        let d = wp23();
        let p = picard_via_polytopes(&d);
        assert!(p.injective && p.matches_intersection);
        assert_eq!(p.group.structure_string(), "Z");

        let d = build_diagram(&Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0], vec![1]]).unwrap());
        let p = picard_via_polytopes(&d);
        assert_eq!(p.group.structure_string(), "Z/2");
        assert!(p.injective && p.matches_intersection);

        let d = build_diagram(&Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap());
        let p = picard_via_polytopes(&d);
        assert!(p.group.is_trivial());
    }

    #[test]
    fn normal_form_of_pic_generator() {
        let d = wp23();
        let six = big_vec(&[6]);
        let p = virtual_polytope(&d, &six).unwrap();
        assert_eq!(polytope_class(&d, &p), six);
        let nf = normal_form_vp(&d, &p, &[0, 1]).unwrap();
        assert_eq!(polytope_class(&d, &nf), six);
        assert!(nf.get(&d, &[0, 1]).iter().all(|x| x.is_zero()));
        assert!(nf.get(&d, &[0]).iter().all(|x| x.is_zero()));
        assert_eq!(normal_form_vp(&d, &nf, &[0, 1]).unwrap(), nf);
        // ρ₂(m) = 0 and ρ₃(m) = 6 on σ₂; ρ₁(m) = 0 and ρ₃(m) = 6 on σ₃
        assert_eq!(nf.get(&d, &[1, 2]), &big_vec(&[-3, 0])[..]);
        assert_eq!(nf.get(&d, &[0, 2]), &big_vec(&[0, -2])[..]);
        assert!(virtual_polytope(&d, &big_vec(&[1])).is_err());
    }
}
