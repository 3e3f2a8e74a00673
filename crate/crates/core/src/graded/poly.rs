//! Sparse polynomial vectors over ℚ in a free module `S^r`.
//!
//! Terms are ordered position-over-term: a lower component index is larger,
//! then by weighted degree, then lexicographically by exponent vector. The
//! leading term of an element is its largest term.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use crate::lattice::rational::Q;
pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    comp: Reverse<usize>,
    weight: i64,
    exps: Exps,
}

impl Term {
    pub fn comp(&self) -> usize {
        self.comp.0
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// `self` divides `other` (same component, exponentwise ≤).
    pub fn divides(&self, other: &Term) -> bool {
        self.comp == other.comp && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

/// Variable count and the positive weights defining the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    weights: Vec<i64>,
}

impl PolyRing {
    pub fn new(weights: Vec<i64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        PolyRing { weights }
    }

    pub fn standard(nvars: usize) -> Self {
        PolyRing::new(vec![1; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn term(&self, comp: usize, exps: Exps) -> Term {
        assert_eq!(exps.len(), self.nvars());
        let weight = exps
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum();
        Term {
            comp: Reverse(comp),
            weight,
            exps,
        }
    }

    /// The monomial `c·Z^e` placed in component `comp`.
    pub fn monomial(&self, comp: usize, exps: Exps, c: Q) -> ModElem {
        let mut m = ModElem::zero();
        if !c.is_zero() {
            m.terms.insert(self.term(comp, exps), c);
        }
        m
    }

    pub fn one(&self) -> ModElem {
        self.monomial(0, vec![0; self.nvars()], Q::one())
    }

    pub fn var(&self, i: usize) -> ModElem {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(0, e, Q::one())
    }

    /// Multiplies by `c·Z^e`.
    pub fn mul_term(&self, f: &ModElem, exps: &[u32], c: &Q) -> ModElem {
        let mut out = ModElem::zero();
        if c.is_zero() {
            return out;
        }
        for (t, v) in &f.terms {
            let e: Exps = t.exps.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(self.term(t.comp(), e), v * c);
        }
        out
    }

    /// Product of a ring element (component 0) with a module element.
    pub fn mul_scalar_poly(&self, f: &ModElem, g: &ModElem) -> ModElem {
        let mut out = ModElem::zero();
        for (t, c) in &f.terms {
            debug_assert_eq!(t.comp(), 0);
            out = out.add(&self.mul_term(g, &t.exps, c));
        }
        out
    }

    /// Moves a ring element into component `comp`.
    pub fn in_component(&self, f: &ModElem, comp: usize) -> ModElem {
        let mut out = ModElem::zero();
        for (t, c) in &f.terms {
            out.terms.insert(self.term(comp, t.exps.clone()), c.clone());
        }
        out
    }

    /// Component `j` of a module element, as a ring element.
    pub fn component(&self, f: &ModElem, j: usize) -> ModElem {
        let mut out = ModElem::zero();
        for (t, c) in &f.terms {
            if t.comp() == j {
                out.terms.insert(self.term(0, t.exps.clone()), c.clone());
            }
        }
        out
    }

    /// Shifts every component index by `offset`.
    pub fn shift_components(&self, f: &ModElem, offset: usize) -> ModElem {
        let mut out = ModElem::zero();
        for (t, c) in &f.terms {
            out.terms
                .insert(self.term(t.comp() + offset, t.exps.clone()), c.clone());
        }
        out
    }

    /// Keeps components in `lo..hi`, renumbered from 0.
    pub fn restrict_components(&self, f: &ModElem, lo: usize, hi: usize) -> ModElem {
        let mut out = ModElem::zero();
        for (t, c) in &f.terms {
            if (lo..hi).contains(&t.comp()) {
                out.terms
                    .insert(self.term(t.comp() - lo, t.exps.clone()), c.clone());
            }
        }
        out
    }

    /// Exact quotient `g / f` for a ring element `f`, componentwise.
    pub fn exact_div(&self, g: &ModElem, f: &ModElem) -> Option<ModElem> {
        let (lf, lc) = f.lead()?;
        let mut rem = g.clone();
        let mut q = ModElem::zero();
        while let Some((lt, c)) = rem.lead() {
            if !lt.exps.iter().zip(&lf.exps).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Exps = lt.exps.iter().zip(&lf.exps).map(|(a, b)| a - b).collect();
            let coef = c / lc;
            let t = self.monomial(lt.comp(), e.clone(), coef.clone());
            q = q.add(&t);
            let sub = self.in_component(&self.mul_term(f, &e, &coef), lt.comp());
            rem = rem.sub(&sub);
        }
        Some(q)
    }

    /// Parses the text form `c * Z_i^e * ... ± ...` of a ring element.
    pub fn parse(&self, text: &str) -> Result<ModElem> {
        parse_poly(self, text)
    }
}

/// Element of a free module `S^r`: a finite sum of coefficient·term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModElem {
    terms: BTreeMap<Term, Q>,
}

impl ModElem {
    pub fn zero() -> Self {
        ModElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, &Q)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<(&Term, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.lead().map(|(t, _)| t)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            let e = out.terms.entry(t.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(t);
            }
        }
        out
    }

    pub fn sub(&self, other: &ModElem) -> ModElem {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> ModElem {
        if c.is_zero() {
            return ModElem::zero();
        }
        ModElem {
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> ModElem {
        match self.lead() {
            Some((_, c)) => {
                let inv = Q::one() / c;
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn without_lead(&self) -> ModElem {
        let mut out = self.clone();
        if let Some(t) = self.lead_term() {
            out.terms.remove(&t.clone());
        }
        out
    }

    pub fn components(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|t| t.comp()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|t| t.exps.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Text form with 0-based variable names `Z_i`; components other than 0
    /// are written as `[j]` suffixes.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let mono: Vec<String> = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("Z_{i}") } else { format!("Z_{i}^{e}") })
                .collect();
            if !a.is_one() || mono.is_empty() {
                factors.push(a.to_string());
            }
            factors.extend(mono);
            out.push_str(&factors.join("*"));
            if t.comp() != 0 {
                out.push_str(&format!("[{}]", t.comp()));
            }
        }
        out
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Q::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Q::from_integer(p))
    }
}

fn parse_poly(ring: &PolyRing, text: &str) -> Result<ModElem> {
    let n = ring.nvars();
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split into signed terms at top-level + and - (not inside exponents).
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let chars: Vec<char> = src.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        let after_caret = i > 0 && chars[i - 1] == '^';
        if (ch == '+' || ch == '-') && !after_caret {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling sign in `{text}`")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in `{text}`")));
    }
    terms.push((neg, cur));

    let mut out = ModElem::zero();
    for (neg, t) in terms {
        // Optional component suffix `[j]`.
        let (t, comp) = match t.strip_suffix(']').and_then(|r| r.rsplit_once('[')) {
            Some((body, j)) => {
                let j: usize = j
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad component in `{t}`")))?;
                (body.to_string(), j)
            }
            None => (t, 0),
        };
        let mut coef = Q::one();
        let mut exps = vec![0u32; n];
        for factor in t.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{t}`")));
            }
            if let Some(rest) = factor.strip_prefix("Z_") {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (rest, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                if idx >= n {
                    return Err(Error::Parse(format!(
                        "variable Z_{idx} out of range ({n} variables)"
                    )));
                }
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                exps[idx] += e;
            } else {
                coef *= parse_rational(factor)?;
            }
        }
        if neg {
            coef = -coef;
        }
        out = out.add(&ring.monomial(comp, exps, coef));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let r = PolyRing::standard(3);
        let f = r.parse("Z_0^2*Z_1 - 3/2*Z_2^3 + 1").unwrap();
        assert_eq!(f.nterms(), 3);
        let g = r.parse(&f.to_text()).unwrap();
        assert_eq!(f, g);
        assert!(r.parse("Z_5").is_err());
        assert!(r.parse("2*").is_err());
        assert_eq!(r.parse("Z_0 - Z_0").unwrap(), ModElem::zero());
        let m = r.parse("Z_0*Z_1[1] - 2*Z_2 + 1/3[2]").unwrap();
        assert_eq!(r.parse(&m.to_text()).unwrap(), m);
        assert_eq!(m.components(), vec![0, 1, 2]);
    }

    #[test]
    fn order_is_position_over_term() {
        let r = PolyRing::standard(2);
        let a = r.term(0, vec![0, 0]);
        let b = r.term(1, vec![5, 5]);
        assert!(a > b);
        let c = r.term(0, vec![1, 0]);
        let d = r.term(0, vec![0, 1]);
        assert!(c > d);
        assert!(r.term(0, vec![0, 2]) > c);
    }

    #[test]
    fn exact_division() {
        let r = PolyRing::standard(2);
        let f = r.parse("Z_0 + Z_1").unwrap();
        let g = r.parse("Z_0^2 - Z_1^2").unwrap();
        let q = r.exact_div(&g, &f).unwrap();
        assert_eq!(q, r.parse("Z_0 - Z_1").unwrap());
        assert!(r.exact_div(&r.parse("Z_0").unwrap(), &f).is_none());
    }
}
