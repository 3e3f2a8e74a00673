//! Buchberger's algorithm for submodules of `S^r`.

use std::collections::BTreeSet;

use num_traits::One;

use super::poly::{ModElem, PolyRing, Q, Term};

fn lcm_term(ring: &PolyRing, a: &Term, b: &Term) -> Term {
    let e = a.exps().iter().zip(b.exps()).map(|(x, y)| *x.max(y)).collect();
    ring.term(a.comp(), e)
}

fn quotient_exps(a: &Term, b: &Term) -> Vec<u32> {
    a.exps().iter().zip(b.exps()).map(|(x, y)| x - y).collect()
}

fn coprime(a: &Term, b: &Term) -> bool {
    a.exps().iter().zip(b.exps()).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full normal form of `f` modulo `basis` (every term reduced).
pub fn normal_form(ring: &PolyRing, f: &ModElem, basis: &[ModElem]) -> ModElem {
    let mut p = f.clone();
    let mut r = ModElem::zero();
    while let Some((lt, lc)) = p.lead() {
        let lt = lt.clone();
        let lc = lc.clone();
        let div = basis
            .iter()
            .find(|g| g.lead_term().is_some_and(|gl| gl.divides(&lt)));
        match div {
            Some(g) => {
                let (gl, gc) = g.lead().expect("nonzero");
                let e = quotient_exps(&lt, gl);
                let c = &lc / gc;
                p = p.sub(&ring.mul_term(g, &e, &c));
            }
            None => {
                let m = ring.monomial(lt.comp(), lt.exps().to_vec(), lc);
                p = p.sub(&m);
                r = r.add(&m);
            }
        }
    }
    r
}

fn s_poly(ring: &PolyRing, f: &ModElem, g: &ModElem) -> ModElem {
    let (fl, fc) = f.lead().expect("nonzero");
    let (gl, gc) = g.lead().expect("nonzero");
    let l = lcm_term(ring, fl, gl);
    let a = ring.mul_term(f, &quotient_exps(&l, fl), &(Q::one() / fc));
    let b = ring.mul_term(g, &quotient_exps(&l, gl), &(Q::one() / gc));
    a.sub(&b)
}

/// Reduced Gröbner basis: monic, leading terms pairwise non-dividing, tails
/// fully reduced, sorted by leading term. `module_rank` is the number of
/// components; the product criterion is used only when it is 1.
pub fn groebner_basis(ring: &PolyRing, gens: &[ModElem], module_rank: usize) -> Vec<ModElem> {
    let mut g: Vec<ModElem> = Vec::new();
    for f in gens {
        let h = normal_form(ring, f, &g);
        if !h.is_zero() {
            g.push(h.monic());
        }
    }
    // Pairs keyed by the weight and term of their lcm, smallest first.
    let mut queue: BTreeSet<(i64, Term, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |g: &Vec<ModElem>, j: usize, queue: &mut BTreeSet<(i64, Term, usize, usize)>| {
        let lj = g[j].lead_term().expect("nonzero");
        for i in 0..j {
            let li = g[i].lead_term().expect("nonzero");
            if li.comp() != lj.comp() {
                continue;
            }
            if module_rank == 1 && coprime(li, lj) {
                continue;
            }
            let l = lcm_term(ring, li, lj);
            queue.insert((l.weight(), l, i, j));
        }
    };
    for j in 0..g.len() {
        push_pairs(&g, j, &mut queue);
    }
    while let Some(item) = queue.pop_first() {
        let (_, l, i, j) = item;
        done.insert((i, j));
        // Chain criterion: some k with lead_k | lcm whose pairs with i and j
        // are already handled.
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lead_term().is_some_and(|lk| lk.divides(&l))
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(ring, &g[i], &g[j]);
        let h = normal_form(ring, &s, &g);
        if !h.is_zero() {
            g.push(h.monic());
            let n = g.len() - 1;
            push_pairs(&g, n, &mut queue);
        }
    }
    reduce_basis(ring, g)
}

/// Interreduces a Gröbner basis into its canonical reduced form.
pub fn reduce_basis(ring: &PolyRing, mut g: Vec<ModElem>) -> Vec<ModElem> {
    g.retain(|f| !f.is_zero());
    g.sort_by(|a, b| a.lead_term().cmp(&b.lead_term()));
    let mut minimal: Vec<ModElem> = Vec::new();
    for f in g {
        let lf = f.lead_term().expect("nonzero").clone();
        if minimal
            .iter()
            .any(|m| m.lead_term().expect("nonzero").divides(&lf))
        {
            continue;
        }
        minimal.push(f.monic());
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let f = &minimal[idx];
        let others: Vec<ModElem> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, m)| m.clone())
            .collect();
        let lead = f.sub(&f.without_lead());
        let tail = normal_form(ring, &f.without_lead(), &others);
        out.push(lead.add(&tail));
    }
    out.sort_by(|a, b| a.lead_term().cmp(&b.lead_term()));
    out
}

/// Membership test against a Gröbner basis.
pub fn reduces_to_zero(ring: &PolyRing, f: &ModElem, basis: &[ModElem]) -> bool {
    normal_form(ring, f, basis).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ideal_basis() {
        let r = PolyRing::standard(2);
        let f1 = r.parse("Z_0^2 - Z_1*Z_0").unwrap();
        let f2 = r.parse("Z_0*Z_1").unwrap();
        let g = groebner_basis(&r, &[f1, f2], 1);
        let expect = vec![r.parse("Z_0*Z_1").unwrap(), r.parse("Z_0^2").unwrap()];
        assert_eq!(g.len(), 2);
        for e in &expect {
            assert!(g.contains(e), "missing {e}");
        }
    }

    #[test]
    fn zero_and_principal() {
        let r = PolyRing::standard(3);
        assert!(groebner_basis(&r, &[], 1).is_empty());
        assert!(groebner_basis(&r, &[ModElem::zero()], 1).is_empty());
        let m = r.parse("3*Z_0^2*Z_2").unwrap();
        assert_eq!(groebner_basis(&r, std::slice::from_ref(&m), 1), vec![m.monic()]);
    }

    #[test]
    fn twisted_cubic_style() {
        let r = PolyRing::standard(3);
        let gens = [
            r.parse("Z_0^2 - Z_1").unwrap(),
            r.parse("Z_0*Z_1 - Z_2").unwrap(),
        ];
        let g = groebner_basis(&r, &gens, 1);
        for f in &gens {
            assert!(reduces_to_zero(&r, f, &g));
        }
        // Every S-polynomial reduces to zero.
        for i in 0..g.len() {
            for j in 0..i {
                assert!(reduces_to_zero(&r, &s_poly(&r, &g[i], &g[j]), &g));
            }
        }
    }
}
