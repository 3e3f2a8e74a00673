//! The `B`-restricted Cox ring of a fan and its irrelevant ideal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::module::GradedSubmodule;
use super::poly::{Exps, PolyRing};
use crate::error::{Error, Result};
use crate::fan::cone::dual_cone;
use crate::lattice::{GroupElem, Subgroup};
use crate::picard::{is_big, FanDiagram};

/// Upper bound on exponent boxes enumerated for degree restriction.
const MAX_BOX: u128 = 2_000_000;

/// Polynomial ring `ℚ[Z_ρ]` graded by `A` through `deg Z_ρ = α_ρ`, together
/// with a big subgroup `B ⊆ A`. Its `B`-restriction `S_B` is spanned by the
/// monomials whose degree lies in `B`.
#[derive(Clone, Debug)]
pub struct CoxRing {
    diagram: Arc<FanDiagram>,
    b: Subgroup,
    poly: PolyRing,
    orders: Vec<u32>,
    monoid_generators: Vec<Exps>,
}

/// Builds the Cox ring of `d` restricted to `b`, which must be big.
pub fn cox_ring(d: Arc<FanDiagram>, b: Subgroup) -> Result<CoxRing> {
    if **b.ambient() != **d.group() {
        return Err(Error::AmbientMismatch);
    }
    if !is_big(&b) {
        return Err(Error::NotBig);
    }
    let k = d.nrays();
    let mut orders = Vec::with_capacity(k);
    for a in d.alpha() {
        let n = b.order_modulo(a).ok_or(Error::NotBig)?;
        orders.push(n.to_u32().ok_or_else(|| {
            Error::Unsupported(format!("degree order {n} modulo B is too large"))
        })?);
    }
    let poly = PolyRing::new(order_weights(&d));
    let mut ring = CoxRing {
        diagram: d,
        b,
        poly,
        orders,
        monoid_generators: Vec::new(),
    };
    ring.monoid_generators = if ring.is_unrestricted() {
        (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        ring.hilbert_basis_of_restriction()?
    };
    Ok(ring)
}

/// A functional `λ` on the free part of `A` with `λ(α_ρ) > 0` for every ray,
/// taken as the sum of the dual-cone generators of the ray degrees.
fn positive_functional(d: &FanDiagram) -> Option<Vec<i64>> {
    let a = d.group();
    let f = a.free_rank();
    if f == 0 {
        return None;
    }
    let free: Vec<Vec<i64>> = d
        .alpha()
        .iter()
        .map(|x| a.free_part(x).iter().map(|v| v.to_i64()).collect())
        .collect::<Option<_>>()?;
    if free.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return None;
    }
    let mut lambda = vec![0i64; f];
    for u in dual_cone(&free, f) {
        for (l, x) in lambda.iter_mut().zip(&u) {
            *l += x;
        }
    }
    let ok = free
        .iter()
        .all(|v| v.iter().zip(&lambda).map(|(x, y)| x * y).sum::<i64>() > 0);
    ok.then_some(lambda)
}

fn weight_of(a: &crate::lattice::FinAbGroup, lambda: &[i64], x: &GroupElem) -> Option<i64> {
    a.free_part(x)
        .iter()
        .zip(lambda)
        .map(|(v, l)| v.to_i64().map(|v| v * l))
        .sum()
}

/// Positive weights `λ(α_ρ)`, or all ones when no positive functional exists.
fn order_weights(d: &FanDiagram) -> Vec<i64> {
    match positive_functional(d) {
        Some(l) => d
            .alpha()
            .iter()
            .map(|x| weight_of(d.group(), &l, x).unwrap_or(1))
            .collect(),
        None => vec![1; d.nrays()],
    }
}

/// `dim S_α`: the number of exponent vectors `e ∈ ℕ^{Σ₁}` with `a(e) = α`,
/// enumerated directly under the bound `λ(a(e)) = λ(α)`. Needs a functional
/// positive on every ray degree (e.g. a complete fan).
pub fn monomial_count(d: &FanDiagram, alpha: &GroupElem) -> Result<usize> {
    let lambda = positive_functional(d)
        .ok_or_else(|| Error::Unsupported("no positive grading functional".into()))?;
    let a = d.group();
    let w: Vec<i64> = d
        .alpha()
        .iter()
        .map(|x| weight_of(a, &lambda, x))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported("weights exceed 64 bits".into()))?;
    let target = weight_of(a, &lambda, alpha)
        .ok_or_else(|| Error::Unsupported("weights exceed 64 bits".into()))?;
    if target < 0 {
        return Ok(0);
    }
    let mut count = 0usize;
    let mut e = vec![0i64; w.len()];
    fn rec(
        i: usize,
        left: i64,
        w: &[i64],
        e: &mut Vec<i64>,
        f: &mut dyn FnMut(&[i64]),
    ) {
        if i == w.len() {
            if left == 0 {
                f(e);
            }
            return;
        }
        let mut x = 0;
        while x * w[i] <= left {
            e[i] = x;
            rec(i + 1, left - x * w[i], w, e, f);
            x += 1;
        }
        e[i] = 0;
    }
    rec(0, target, &w, &mut e, &mut |m| {
        if d.degree(m) == *alpha {
            count += 1;
        }
    });
    Ok(count)
}

/// Calls `f` on every exponent vector `e` with `0 ≤ e_i < bounds_i`.
pub(crate) fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let mut e = vec![0u32; bounds.len()];
    loop {
        f(&e);
        let mut i = 0;
        loop {
            if i == bounds.len() {
                return;
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Removes exponent vectors divisible by another one; sorts the rest.
pub(crate) fn minimalize(mut v: Vec<(usize, Exps)>) -> Vec<(usize, Exps)> {
    v.sort_by_key(|(c, e)| (e.iter().sum::<u32>(), *c, e.clone()));
    v.dedup();
    let mut out: Vec<(usize, Exps)> = Vec::new();
    for (c, e) in v {
        if !out
            .iter()
            .any(|(c2, e2)| *c2 == c && e2.iter().zip(&e).all(|(a, b)| a <= b))
        {
            out.push((c, e));
        }
    }
    out.sort();
    out
}

impl CoxRing {
    pub fn diagram(&self) -> &Arc<FanDiagram> {
        &self.diagram
    }

    pub fn grading_group(&self) -> &Subgroup {
        &self.b
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// `B = A`.
    pub fn is_unrestricted(&self) -> bool {
        self.b.is_whole()
    }

    /// Degree `α_ρ` of `Z_ρ`.
    pub fn var_degree(&self, i: usize) -> &GroupElem {
        &self.diagram.alpha()[i]
    }

    /// Order of `α_ρ` modulo `B`.
    pub fn orders_mod_b(&self) -> &[u32] {
        &self.orders
    }

    /// Generators of the monomial monoid `𝕋_B`.
    pub fn monoid_generators(&self) -> &[Exps] {
        &self.monoid_generators
    }

    pub fn degree(&self, e: &[u32]) -> GroupElem {
        let v: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        self.diagram.degree_big(&v)
    }

    pub fn in_b(&self, x: &GroupElem) -> bool {
        self.b.contains(x)
    }

    fn box_size(&self) -> u128 {
        self.orders.iter().map(|&n| n as u128 + 1).product()
    }

    /// Exponent vectors `t` in the box `0 ≤ t_ρ < n_ρ` with
    /// `offset + a(t) ∈ B`. Every monomial with that property is divisible
    /// by one of them with a quotient of degree in `B`.
    pub fn coset_representatives(&self, offset: &GroupElem) -> Result<Vec<Exps>> {
        if self.box_size() > MAX_BOX {
            return Err(Error::Unsupported(format!(
                "exponent box of size {} exceeds the enumeration limit",
                self.box_size()
            )));
        }
        let a = self.diagram.group();
        let mut out = Vec::new();
        for_each_in_box(&self.orders, |t| {
            let d = a.add(offset, &self.degree(t));
            if self.in_b(&d) {
                out.push(t.to_vec());
            }
        });
        Ok(out)
    }

    /// Hilbert basis of `a⁻¹(B) ∩ ℕ^{Σ₁}`. Irreducible elements satisfy
    /// `t_ρ ≤ n_ρ` with equality only for `n_ρ·e_ρ`, so the search box is
    /// finite.
    fn hilbert_basis_of_restriction(&self) -> Result<Vec<Exps>> {
        if self.box_size() > MAX_BOX {
            return Err(Error::Unsupported(format!(
                "exponent box of size {} exceeds the enumeration limit",
                self.box_size()
            )));
        }
        let bounds: Vec<u32> = self.orders.iter().map(|n| n + 1).collect();
        let mut members: Vec<Exps> = Vec::new();
        for_each_in_box(&bounds, |t| {
            if t.iter().any(|&x| x > 0) && self.in_b(&self.degree(t)) {
                members.push(t.to_vec());
            }
        });
        members.sort_by_key(|t| (t.iter().sum::<u32>(), t.clone()));
        let mut basis: Vec<Exps> = Vec::new();
        for t in members {
            let reducible = basis.iter().any(|h| {
                h != &t
                    && h.iter().zip(&t).all(|(a, b)| a <= b)
                    && {
                        let rest: Vec<u32> = t.iter().zip(h).map(|(a, b)| a - b).collect();
                        self.in_b(&self.degree(&rest))
                    }
            });
            if !reducible {
                basis.push(t);
            }
        }
        basis.sort();
        Ok(basis)
    }

    /// `ẑ_σ = ∏_{ρ ∉ σ₁} Z_ρ` as an exponent vector.
    pub fn z_hat(&self, sigma: &[usize]) -> Exps {
        let mut e = vec![0; self.nvars()];
        for i in self.diagram.fan().complement(sigma) {
            e[i] = 1;
        }
        e
    }

    /// Smallest power of `ẑ_σ` lying in `S_B`.
    pub fn z_hat_power_in_b(&self, sigma: &[usize]) -> Result<Exps> {
        let e = self.z_hat(sigma);
        let n = self
            .b
            .order_modulo(&self.degree(&e))
            .ok_or(Error::NotBig)?
            .to_u32()
            .ok_or_else(|| Error::Unsupported("power too large".into()))?;
        Ok(e.iter().map(|x| x * n).collect())
    }
}

/// The irrelevant ideal `I_B`: generated by the `ẑ_σ` for `B = A`, and by
/// the minimal monomials of `(⟨ẑ_σ⟩)_{(B)}` otherwise.
pub fn irrelevant_ideal(r: &Arc<CoxRing>) -> Result<GradedSubmodule> {
    let fan = r.diagram().fan();
    let mut gens: Vec<(usize, Exps)> = Vec::new();
    for sigma in fan.max_cones() {
        let z = r.z_hat(sigma);
        if r.is_unrestricted() {
            gens.push((0, z));
        } else {
            for t in r.coset_representatives(&r.degree(&z))? {
                gens.push((0, z.iter().zip(&t).map(|(a, b)| a + b).collect()));
            }
        }
    }
    let gens = minimalize(gens);
    let zero = r.diagram().group().zero();
    let elems = gens
        .into_iter()
        .map(|(_, e)| r.poly().monomial(0, e, num_traits::One::one()))
        .collect();
    GradedSubmodule::new(r.clone(), vec![zero], elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::lattice::GroupElem;
    use crate::picard::{build_diagram, picard_group};

    fn ex3290() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    #[test]
    fn degrees_and_irrelevant_ideal() {
        let d = Arc::new(build_diagram(&ex3290()));
        let a = d.group().clone();
        let r = Arc::new(cox_ring(d.clone(), Subgroup::whole(a.clone())).unwrap());
        let degs: Vec<GroupElem> = (0..3).map(|i| r.var_degree(i).clone()).collect();
        // A ≅ ℤ with α = (2, 3, 1) up to sign of the generator.
        let s: Vec<i64> = degs.iter().map(|x| x[0].to_i64().unwrap()).collect();
        assert!(s == vec![2, 3, 1] || s == vec![-2, -3, -1], "{s:?}");
        let i = irrelevant_ideal(&r).unwrap();
        let texts: Vec<String> = i.groebner().iter().map(|g| g.to_text()).collect();
        assert_eq!(i.groebner().len(), 3, "{texts:?}");
        for v in ["Z_0", "Z_1", "Z_2"] {
            assert!(texts.contains(&v.to_string()), "{texts:?}");
        }
    }

    #[test]
    fn restriction_to_picard_group() {
        let d = Arc::new(build_diagram(&ex3290()));
        let pic = picard_group(&d);
        let r = cox_ring(d.clone(), pic).unwrap();
        assert_eq!(r.orders_mod_b(), &[3, 2, 6]);
        let hb = r.monoid_generators();
        // Oracle: bounded enumeration of irreducible solutions of
        // 2x + 3y + z ≡ 0 (mod 6).
        let mut oracle: Vec<Vec<u32>> = Vec::new();
        let inb = |x: u32, y: u32, z: u32| (2 * x + 3 * y + z).is_multiple_of(6);
        let mut all = Vec::new();
        for x in 0..=8u32 {
            for y in 0..=8u32 {
                for z in 0..=8u32 {
                    if (x, y, z) != (0, 0, 0) && inb(x, y, z) {
                        all.push(vec![x, y, z]);
                    }
                }
            }
        }
        for t in &all {
            let red = all.iter().any(|h| {
                h != t && h.iter().zip(t).all(|(a, b)| a <= b) && {
                    let r: Vec<u32> = t.iter().zip(h).map(|(a, b)| a - b).collect();
                    r.iter().any(|&v| v > 0) && inb(r[0], r[1], r[2])
                }
            });
            if !red {
                oracle.push(t.clone());
            }
        }
        oracle.sort();
        assert_eq!(hb, &oracle[..]);
        assert!(hb.contains(&vec![3, 0, 0]));
        assert!(hb.contains(&vec![0, 2, 0]));
        assert!(hb.contains(&vec![0, 0, 6]));
    }

    #[test]
    fn zero_subgroup_is_not_big() {
        let d = Arc::new(build_diagram(&crate::fan::examples::p2()));
        let z = Subgroup::zero(d.group().clone());
        assert_eq!(cox_ring(d, z).unwrap_err(), Error::NotBig);
    }
}
