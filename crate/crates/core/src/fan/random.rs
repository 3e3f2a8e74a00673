//! Seeded random fans for property tests.
//!
//! * dimension 1: one of the four fans `{0}`, `{ρ+}`, `{ρ-}`, `{ρ+, ρ-}`.
//! * dimension 2: random primitive rays sorted by angle; consecutive pairs
//!   with angle below π become two-dimensional cones. Complete fans always
//!   contain a triangle of rays around the origin; other fans keep a random
//!   subset of the two-cones plus some isolated rays.
//! * dimension 3: cones over the facets of a random lattice polytope with
//!   the origin in its interior; non-complete fans keep a random subset.
//!
//! Non-full fans are produced by embedding a lower-dimensional fan with a
//! random unimodular matrix.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::{dot, primitive_ray, Polycone, Vector};
use super::fan::{ConeIdx, Fan};

fn half(v: &[i64]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn angle_cmp(a: &Vector, b: &Vector) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn random_primitive(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vector {
    loop {
        let v: Vector = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = primitive_ray(&v) {
            return p;
        }
    }
}

/// Removes unused rays and reindexes the cones.
fn compact(n: usize, rays: Vec<Vector>, cones: Vec<ConeIdx>) -> Fan {
    let mut used: Vec<usize> = cones.iter().flatten().copied().collect();
    used.sort();
    used.dedup();
    let new_rays: Vec<Vector> = used.iter().map(|&i| rays[i].clone()).collect();
    let new_cones: Vec<ConeIdx> = cones
        .iter()
        .map(|c| c.iter().map(|i| used.iter().position(|u| u == i).unwrap()).collect())
        .collect();
    Fan::new(n, new_rays, new_cones).expect("generator produces valid fans")
}

fn fan_1d(rng: &mut ChaCha8Rng, complete: bool) -> Fan {
    let choice = if complete { 3 } else { rng.gen_range(0..4) };
    match choice {
        0 => Fan::new(1, vec![], vec![]),
        1 => Fan::new(1, vec![vec![1]], vec![vec![0]]),
        2 => Fan::new(1, vec![vec![-1]], vec![vec![0]]),
        _ => Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]),
    }
    .expect("one-dimensional fans are valid")
}

fn fan_2d(rng: &mut ChaCha8Rng, max_rays: usize, complete: bool) -> Fan {
    let max_rays = max_rays.max(3);
    let mut rays: Vec<Vector> = Vec::new();
    if complete {
        rays.push(vec![1, 0]);
        rays.push(vec![0, 1]);
        rays.push(primitive_ray(&[-rng.gen_range(1..=3), -rng.gen_range(1..=3)]).unwrap());
    }
    let target = rng.gen_range(rays.len().max(2)..=max_rays);
    let mut tries = 0;
    while rays.len() < target && tries < 100 {
        tries += 1;
        let v = random_primitive(rng, 2, 3);
        if !rays.contains(&v) {
            rays.push(v);
        }
    }
    rays.sort_by(angle_cmp);
    let k = rays.len();
    let mut two_cones: Vec<ConeIdx> = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        if j != i && cross(&rays[i], &rays[j]) > 0 {
            two_cones.push(vec![i, j]);
        }
    }
    if complete {
        return compact(2, rays, two_cones);
    }
    let mut cones: Vec<ConeIdx> = two_cones
        .into_iter()
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    for i in 0..k {
        if !cones.iter().any(|c| c.contains(&i)) && rng.gen_bool(0.5) {
            cones.push(vec![i]);
        }
    }
    compact(2, rays, cones)
}

fn fan_3d(rng: &mut ChaCha8Rng, max_rays: usize, complete: bool) -> Fan {
    // Lattice polytope containing a simplex around the origin.
    let mut pts: Vec<Vector> = vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![-rng.gen_range(1..=2), -rng.gen_range(1..=2), -rng.gen_range(1..=2)],
    ];
    let extra = rng.gen_range(0..=max_rays.saturating_sub(4));
    for _ in 0..extra {
        let v: Vector = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|&x| x != 0) && !pts.contains(&v) {
            pts.push(v);
        }
    }
    // Facets by brute force over triples.
    let mut facets: Vec<(Vector, i128)> = Vec::new();
    let np = pts.len();
    for a in 0..np {
        for b in a + 1..np {
            for c in b + 1..np {
                let (pa, pb, pc) = (&pts[a], &pts[b], &pts[c]);
                let u: Vector = vec![pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]];
                let w: Vector = vec![pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2]];
                let nrm: Vector = vec![
                    u[1] * w[2] - u[2] * w[1],
                    u[2] * w[0] - u[0] * w[2],
                    u[0] * w[1] - u[1] * w[0],
                ];
                let Ok(mut nrm) = primitive_ray(&nrm) else { continue };
                let mut h = dot(&nrm, pa);
                if h == 0 {
                    continue;
                }
                if h < 0 {
                    nrm.iter_mut().for_each(|x| *x = -*x);
                    h = -h;
                }
                if pts.iter().all(|p| dot(&nrm, p) <= h) && !facets.iter().any(|(f, _)| *f == nrm) {
                    facets.push((nrm, h));
                }
            }
        }
    }
    facets.sort();
    let mut rays: Vec<Vector> = Vec::new();
    let mut cones: Vec<ConeIdx> = Vec::new();
    for (nrm, h) in &facets {
        let on: Vec<Vector> = pts.iter().filter(|p| dot(nrm, p) == *h).cloned().collect();
        let cone = Polycone::new(3, &on).expect("cone over a facet is sharp");
        let mut idx = Vec::new();
        for r in cone.rays() {
            let k = match rays.iter().position(|x| x == r) {
                Some(k) => k,
                None => {
                    rays.push(r.clone());
                    rays.len() - 1
                }
            };
            idx.push(k);
        }
        cones.push(idx);
    }
    if !complete {
        let keep = rng.gen_range(1..=cones.len());
        cones.shuffle(rng);
        cones.truncate(keep);
    }
    compact(3, rays, cones)
}

/// A random valid fan in `ℝ^dim` (`dim ∈ {1, 2, 3}`).
pub fn generate_random_fan(seed: u64, dim: usize, max_rays: usize) -> Fan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complete = rng.gen_bool(0.4);
    build(&mut rng, dim, max_rays, complete).with_name(format!("random-{dim}d-{seed}"))
}

/// A random complete fan in `ℝ^dim`.
pub fn generate_complete_fan(seed: u64, dim: usize, max_rays: usize) -> Fan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(&mut rng, dim, max_rays, true).with_name(format!("complete-{dim}d-{seed}"))
}

fn build(rng: &mut ChaCha8Rng, dim: usize, max_rays: usize, complete: bool) -> Fan {
    match dim {
        1 => fan_1d(rng, complete),
        2 => fan_2d(rng, max_rays, complete),
        3 => fan_3d(rng, max_rays, complete),
        _ => panic!("random fans are generated in dimensions 1 to 3 only"),
    }
}

/// Random unimodular `n × n` matrix (product of elementary matrices).
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let k = rng.gen_range(-1..=1);
        for r in m.iter_mut() {
            r[j] += k * r[i];
        }
    }
    m
}

/// A random fan whose rays span a proper subspace of `ℝⁿ` (`n ≤ 3`).
pub fn generate_nonfull_fan(seed: u64, max_rays: usize) -> Fan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let d = rng.gen_range(1..n);
    let complete = rng.gen_bool(0.5);
    let mut small = build(&mut rng, d, max_rays, complete);
    if small.nrays() == 0 {
        small = build(&mut rng, d, max_rays, true);
    }
    let u = random_unimodular(&mut rng, n);
    let rays: Vec<Vector> = small
        .rays()
        .iter()
        .map(|r| {
            let mut x = r.clone();
            x.resize(n, 0);
            (0..n).map(|i| (0..n).map(|j| u[i][j] * x[j]).sum()).collect()
        })
        .collect();
    Fan::new(n, rays, small.max_cones().to_vec())
        .expect("unimodular images of fans are fans")
        .with_name(format!("nonfull-{n}d-{seed}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_fans_are_valid_and_deterministic() {
        for seed in 0..40 {
            for dim in 1..=3 {
                let a = generate_random_fan(seed, dim, 7);
                let b = generate_random_fan(seed, dim, 7);
                assert_eq!(a, b);
                assert_eq!(a.ambient_dim(), dim);
            }
        }
    }

    #[test]
    fn complete_generators_are_complete() {
        for seed in 0..20 {
            for dim in 1..=3 {
                let f = generate_complete_fan(seed, dim, 7);
                assert!(f.is_complete(), "{f:?}");
            }
        }
    }

    #[test]
    fn nonfull_fans_are_not_full() {
        for seed in 0..20 {
            let f = generate_nonfull_fan(seed, 6);
            assert!(!f.is_full());
            assert!(f.nrays() > 0);
        }
    }
}
