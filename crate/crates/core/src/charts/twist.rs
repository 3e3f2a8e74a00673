//! Twisting modules `S_{σ,α}` on the charts, invertibility of the twisting
//! sheaves, and the multiplication maps `S_{σ,α} ⊗ S_{σ,β} → S_{σ,α+β}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::chart::{chart_monoid, degree_zero_lattice, ChartMonoid};
use super::hilbert::hilbert_basis;
use crate::error::{Error, Result};
use crate::fan::cone::Vector;
use crate::fan::examples;
use crate::lattice::{small_vec, GroupElem, IntMatrix, Subgroup};
use crate::picard::{build_diagram, is_small, FanDiagram};

/// `S_{σ,α} = {m ∈ ℤ^{Σ₁} : a(m) = α, m_ρ ≥ 0 for ρ ∈ σ₁}` as a module over
/// the chart monoid `C_σ`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistModule {
    pub cone: Vec<usize>,
    pub alpha: Vec<String>,
    /// Minimal generators modulo the units of `C_σ`.
    pub generators: Vec<Vector>,
    /// A generator supported off `σ₁`, present iff `α ∈ A^σ`.
    pub free_generator: Option<Vector>,
}

fn in_twist(d: &FanDiagram, sigma: &[usize], alpha: &GroupElem, m: &[i64]) -> bool {
    sigma.iter().all(|&i| m[i] >= 0) && d.degree(m) == *alpha
}

/// Minimal generators of `S_{σ,α}` over `C_σ`, from the Hilbert basis of the
/// homogenized monoid `{(m, t) : t ≥ 0, m ∈ t·m_α + ker a, m_σ ≥ 0}`.
fn twist_generators(d: &FanDiagram, sigma: &[usize], alpha: &GroupElem) -> Result<Vec<Vector>> {
    let k = d.nrays();
    let ker = degree_zero_lattice(d);
    let base = d.group().lift(alpha);
    let mut cols: Vec<Vec<BigInt>> = ker
        .col_vecs()
        .into_iter()
        .map(|mut c| {
            c.push(BigInt::from(0));
            c
        })
        .collect();
    let mut b = base;
    b.push(BigInt::from(1));
    cols.push(b);
    let lat = IntMatrix::from_cols(&cols, k + 1);
    let mut ineqs: Vec<Vector> = sigma
        .iter()
        .map(|&i| (0..=k).map(|j| i64::from(i == j)).collect())
        .collect();
    ineqs.push((0..=k).map(|j| i64::from(j == k)).collect());
    let hb = hilbert_basis(&lat, &ineqs)?;
    let mut out: Vec<Vector> = hb
        .pointed()
        .iter()
        .filter(|v| v[k] == 1)
        .map(|v| v[..k].to_vec())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn twist_module(d: &FanDiagram, sigma: &[usize], alpha: &GroupElem) -> Result<TwistModule> {
    if !d.fan().contains_cone(sigma) {
        return Err(Error::ConeNotInFan(sigma.to_vec()));
    }
    let generators = twist_generators(d, sigma, alpha)?;
    let free_generator = d.express_off_cone(alpha, sigma).map(|s| small_vec(&s));
    Ok(TwistModule {
        cone: sigma.to_vec(),
        alpha: alpha.iter().map(|x| x.to_string()).collect(),
        generators,
        free_generator,
    })
}

/// Whether `x - y` is a unit of `C_σ` (degree zero, vanishing on `σ₁`).
fn differ_by_unit(d: &FanDiagram, sigma: &[usize], x: &[i64], y: &[i64]) -> bool {
    let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    sigma.iter().all(|&i| diff[i] == 0) && d.group().is_zero_elem(&d.degree(&diff))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartInvertibility {
    pub cone: Vec<usize>,
    pub free_generator: Option<Vector>,
    /// Number of minimal generators of `S_{σ,α}` modulo units.
    pub ngenerators: usize,
    /// The free generator alone generates `S_{σ,α}`.
    pub free_generator_generates: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvertibilityReport {
    pub alpha: Vec<String>,
    pub in_picard: bool,
    pub charts: Vec<ChartInvertibility>,
}

impl InvertibilityReport {
    /// On every chart the twist is free of rank one.
    pub fn invertible(&self) -> bool {
        self.charts
            .iter()
            .all(|c| c.ngenerators == 1 && c.free_generator_generates)
    }

    /// `α ∈ Pic` exactly when every chart is free of rank one.
    pub fn consistent(&self) -> bool {
        self.in_picard == self.invertible()
    }
}

pub fn invertibility_check(d: &FanDiagram, alpha: &GroupElem) -> Result<InvertibilityReport> {
    let mut charts = Vec::new();
    for sigma in d.fan().max_cones() {
        let t = twist_module(d, sigma, alpha)?;
        let generates = match &t.free_generator {
            Some(g) => {
                in_twist(d, sigma, alpha, g)
                    && t.generators.iter().all(|x| {
                        let diff: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                        sigma.iter().all(|&i| diff[i] >= 0)
                    })
            }
            None => false,
        };
        if let (Some(g), [only]) = (&t.free_generator, t.generators.as_slice()) {
            debug_assert!(differ_by_unit(d, sigma, g, only));
        }
        charts.push(ChartInvertibility {
            cone: sigma.clone(),
            free_generator: t.free_generator.clone(),
            ngenerators: t.generators.len(),
            free_generator_generates: generates,
        });
    }
    let pic = crate::picard::picard_group(d);
    Ok(InvertibilityReport {
        alpha: alpha.iter().map(|x| x.to_string()).collect(),
        in_picard: pic.contains(alpha),
        charts,
    })
}

/// Whether `S_{σ,α}·S_{σ,β} = S_{σ,α+β}`: every generator `t` of the target
/// splits as `x + y` with `x` a generator of `S_{σ,α}` and `y ∈ S_{σ,β}`.
pub fn products_span(
    d: &FanDiagram,
    sigma: &[usize],
    alpha: &GroupElem,
    beta: &GroupElem,
) -> Result<bool> {
    let a = d.group();
    let sum = a.add(alpha, beta);
    let left = twist_generators(d, sigma, alpha)?;
    let target = twist_generators(d, sigma, &sum)?;
    Ok(target.iter().all(|t| {
        left.iter().any(|x| sigma.iter().all(|&i| t[i] - x[i] >= 0))
    }))
}

/// Exact check that the multiplication maps are onto for the given degree
/// pairs, on every maximal chart. Requires `B ⊆ Pic` and all degrees in `B`.
pub fn strongly_graded_check(
    d: &FanDiagram,
    b: &Subgroup,
    samples: &[(GroupElem, GroupElem)],
) -> Result<bool> {
    if !is_small(b, d) {
        return Err(Error::NotInSubgroup(
            "strong grading is only asserted for subgroups of Pic".into(),
        ));
    }
    for (x, y) in samples {
        if !b.contains(x) || !b.contains(y) {
            return Err(Error::NotInSubgroup(format!("{x:?}, {y:?}")));
        }
        for sigma in d.fan().max_cones() {
            if !products_span(d, sigma, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs `(x, t − x)` with `x ∈ S_{σ,α}`, `t − x ∈ S_{σ,β}`, taken modulo the
/// units of `C_σ` (so `x` is determined by its `σ₁`-coordinates), grouped into
/// the classes identified in `S_{σ,α} ⊗_{C_σ} S_{σ,β}`. Distinct classes are
/// linearly independent elements of the degree-`t` part of the tensor product.
#[derive(Clone, Debug, Serialize)]
pub struct TensorFiber {
    pub cone: Vec<usize>,
    pub target: Vector,
    /// One representative `x` per element of the fiber.
    pub left: Vec<Vector>,
    pub class: Vec<usize>,
}

impl TensorFiber {
    pub fn nclasses(&self) -> usize {
        self.class.iter().collect::<BTreeSet<_>>().len()
    }

    /// Class of the pair `(x, t − x)`, matching `x` by its `σ₁`-coordinates.
    pub fn class_of(&self, x: &[i64]) -> Option<usize> {
        let key = restrict(x, &self.cone);
        self.left
            .iter()
            .position(|v| restrict(v, &self.cone) == key)
            .map(|i| self.class[i])
    }
}

fn restrict(x: &[i64], sigma: &[usize]) -> Vector {
    sigma.iter().map(|&i| x[i]).collect()
}

fn find(p: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while p[r] != r {
        r = p[r];
    }
    let mut j = i;
    while p[j] != r {
        let nx = p[j];
        p[j] = r;
        j = nx;
    }
    r
}

/// Generators of `S_{σ,α}` and the non-unit Hilbert basis of `C_σ`, enough to
/// enumerate tensor fibers on the chart of `σ`.
#[derive(Clone, Debug)]
pub struct FiberData {
    pub cone: Vec<usize>,
    pub left_generators: Vec<Vector>,
    pub chart_pointed: Vec<Vector>,
}

pub fn fiber_data(d: &FanDiagram, sigma: &[usize], alpha: &GroupElem) -> Result<FiberData> {
    let chart: ChartMonoid = chart_monoid(d, sigma)?;
    Ok(FiberData {
        cone: sigma.to_vec(),
        left_generators: twist_generators(d, sigma, alpha)?,
        chart_pointed: chart.basis.pointed().to_vec(),
    })
}

impl FiberData {
    /// The fiber over `t` (assumed of degree `α + β`). Identifications
    /// `(x + h, y) ~ (x, y + h)` for non-unit Hilbert-basis elements `h`
    /// generate all others, since unit moves fix `σ₁`-coordinates.
    pub fn fiber(&self, t: &[i64]) -> TensorFiber {
        let sigma = &self.cone;
        let fits = |x: &[i64]| sigma.iter().all(|&i| x[i] <= t[i]);
        let mut seen: BTreeMap<Vector, Vector> = BTreeMap::new();
        let mut queue: VecDeque<Vector> = VecDeque::new();
        for x in &self.left_generators {
            if fits(x) && !seen.contains_key(&restrict(x, sigma)) {
                seen.insert(restrict(x, sigma), x.clone());
                queue.push_back(x.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for h in &self.chart_pointed {
                let y: Vector = x.iter().zip(h).map(|(a, b)| a + b).collect();
                let key = restrict(&y, sigma);
                if fits(&y) && !seen.contains_key(&key) {
                    seen.insert(key, y.clone());
                    queue.push_back(y);
                }
            }
        }
        let keys: Vec<Vector> = seen.keys().cloned().collect();
        let index: BTreeMap<&Vector, usize> = keys.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..keys.len()).collect();
        for (i, k) in keys.iter().enumerate() {
            for h in &self.chart_pointed {
                let hk = restrict(h, sigma);
                let y: Vector = k.iter().zip(&hk).map(|(a, b)| a + b).collect();
                if let Some(&j) = index.get(&y) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        let class = (0..keys.len())
            .map(|i| {
                let r = find(&mut parent, i);
                let n = relabel.len();
                *relabel.entry(r).or_insert(n)
            })
            .collect();
        TensorFiber {
            cone: sigma.clone(),
            target: t.to_vec(),
            left: seen.into_values().collect(),
            class,
        }
    }
}

/// The fiber of the multiplication map over the monomial `t`.
pub fn tensor_fiber(
    d: &FanDiagram,
    sigma: &[usize],
    alpha: &GroupElem,
    beta: &GroupElem,
    t: &[i64],
) -> Result<TensorFiber> {
    if d.degree(t) != d.group().add(alpha, beta) {
        return Err(Error::NotHomogeneous(format!("{t:?}")));
    }
    Ok(fiber_data(d, sigma, alpha)?.fiber(t))
}

/// Certificate that the multiplication map `δ` on a chart of the weighted
/// projective plane `P(1,2,3)` is neither injective nor surjective, while
/// every Picard degree gives an isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub cone: Vec<usize>,
    /// Two pure tensors `x₁ ⊗ y₁`, `x₂ ⊗ y₂` with equal product.
    pub kernel_witness: [(Vector, Vector); 2],
    pub same_product: bool,
    /// The two tensors lie in different classes of the fiber.
    pub witness_nonzero: bool,
    pub fiber_classes: usize,
    /// A monomial of degree `α+β` that no product reaches.
    pub missed_target: Vector,
    pub target_outside_image: bool,
    /// For Picard degrees the twists are free and the map is an isomorphism
    /// on every maximal chart.
    pub picard_isomorphism: bool,
}

impl DeltaReport {
    pub fn holds(&self) -> bool {
        self.same_product
            && self.witness_nonzero
            && self.target_outside_image
            && self.picard_isomorphism
    }
}

pub fn delta_counterexample_check() -> Result<DeltaReport> {
    let d = build_diagram(&examples::ex_3_290());
    let a = d.group().clone();
    let sigma = vec![0usize, 2];
    let one = d.alpha()[2].clone();
    let two = a.add(&one, &one);
    let x1 = vec![1, -1, 2];
    let y1 = vec![1, 0, 0];
    let x2 = vec![2, -1, 0];
    let y2 = vec![0, 0, 2];
    let prod = |x: &[i64], y: &[i64]| -> Vector { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    let t = prod(&x1, &y1);
    let same_product = t == prod(&x2, &y2)
        && in_twist(&d, &sigma, &one, &x1)
        && in_twist(&d, &sigma, &one, &x2)
        && in_twist(&d, &sigma, &two, &y1)
        && in_twist(&d, &sigma, &two, &y2);
    let fiber = tensor_fiber(&d, &sigma, &one, &two, &t)?;
    let witness_nonzero = match (fiber.class_of(&x1), fiber.class_of(&x2)) {
        (Some(c1), Some(c2)) => c1 != c2,
        _ => false,
    };
    let missed = vec![0, 1, 0];
    let target_outside_image = tensor_fiber(&d, &sigma, &one, &two, &missed)?.left.is_empty()
        && !products_span(&d, &sigma, &one, &two)?;
    let pic = crate::picard::picard_group(&d);
    let mut picard_isomorphism = true;
    for g in pic.generators() {
        let inv = invertibility_check(&d, &g)?;
        picard_isomorphism &= inv.invertible();
        for s in d.fan().max_cones() {
            picard_isomorphism &= products_span(&d, s, &g, &g)?;
            // Free rank-one modules: the fiber over the product of the
            // generators is a single class.
            let gen = twist_generators(&d, s, &g)?;
            if let [x] = gen.as_slice() {
                let tt = prod(x, x);
                picard_isomorphism &= tensor_fiber(&d, s, &g, &g, &tt)?.nclasses() == 1;
            }
        }
    }
    Ok(DeltaReport {
        cone: sigma,
        kernel_witness: [(x1, y1), (x2, y2)],
        same_product,
        witness_nonzero,
        fiber_classes: fiber.nclasses(),
        missed_target: missed,
        target_outside_image,
        picard_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> FanDiagram {
        build_diagram(&examples::ex_3_290())
    }

    #[test]
    fn twist_generators_on_singular_chart() {
        let d = d();
        let a = d.group().clone();
        let one = d.alpha()[2].clone();
        let s = [0usize, 2];
        let g = |x: &GroupElem| twist_module(&d, &s, x).unwrap().generators;
        assert_eq!(g(&one), vec![vec![0, 0, 1], vec![2, -1, 0]]);
        let two = a.add(&one, &one);
        assert_eq!(g(&two), vec![vec![0, 0, 2], vec![1, 0, 0]]);
        let three = a.add(&two, &one);
        assert_eq!(g(&three), vec![vec![0, 1, 0]]);
    }

    #[test]
    fn delta_counterexample() {
        let r = delta_counterexample_check().unwrap();
        assert!(r.same_product && r.witness_nonzero, "{r:?}");
        assert!(r.target_outside_image && r.picard_isomorphism, "{r:?}");
        assert_eq!(r.fiber_classes, 2);
    }

    #[test]
    fn invertibility_matches_picard() {
        let d = d();
        let a = d.group().clone();
        for k in -7i64..=7 {
            let x = a.scale(&BigInt::from(k), &d.alpha()[2]);
            let rep = invertibility_check(&d, &x).unwrap();
            assert!(rep.consistent(), "{k}: {rep:?}");
            assert_eq!(rep.in_picard, k % 6 == 0);
        }
        let p2 = build_diagram(&examples::p2());
        let x = p2.alpha()[0].clone();
        assert!(invertibility_check(&p2, &x).unwrap().invertible());
    }

    #[test]
    fn strong_grading_on_picard() {
        let d = d();
        let pic = crate::picard::picard_group(&d);
        let g = pic.generators()[0].clone();
        let a = d.group().clone();
        let samples: Vec<_> = (-2i64..=2)
            .flat_map(|i| (-2i64..=2).map(move |j| (i, j)))
            .map(|(i, j)| (a.scale(&BigInt::from(i), &g), a.scale(&BigInt::from(j), &g)))
            .collect();
        assert!(strongly_graded_check(&d, &pic, &samples).unwrap());
        let whole = d.whole_group();
        assert!(strongly_graded_check(&d, &whole, &samples).is_err());
    }

    #[test]
    fn tensor_fiber_identifications() {
        let d = d();
        let one = d.alpha()[2].clone();
        let a = d.group().clone();
        let two = a.add(&one, &one);
        let f = tensor_fiber(&d, &[0, 2], &one, &two, &[2, -1, 2]).unwrap();
        assert_eq!(f.left, vec![vec![0, 0, 1], vec![1, -1, 2], vec![2, -1, 0]]);
        assert_eq!(f.class_of(&[0, 0, 1]), f.class_of(&[1, -1, 2]));
        
    }
}
