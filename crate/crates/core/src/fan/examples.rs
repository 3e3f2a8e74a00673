//! Small named fans used throughout tests and shipped as fixtures.

use super::fan::Fan;

fn build(name: &str, rays: &[[i64; 2]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        2,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("valid example fan")
    .with_name(name)
}

/// The projective line: rays `1` and `−1` in `ℝ¹`.
pub fn p1() -> Fan {
    Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]])
        .expect("valid example fan")
        .with_name("p1")
}

/// The projective plane.
pub fn p2() -> Fan {
    build("p2", &[[1, 0], [0, 1], [-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The Hirzebruch surface `F_a` with rays `(1,0), (0,1), (−1,a), (0,−1)`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .expect("valid example fan")
    .with_name(format!("hirzebruch-{a}"))
}

/// Regular fan of two rays `(1,0)`, `(1,2)` with torsion Picard group.
pub fn ex_1_100a() -> Fan {
    build("ex-1.100a", &[[1, 0], [1, 2]], &[&[0], &[1]])
}

/// The three rays of `P²` without their two-dimensional cones.
pub fn ex_1_100b() -> Fan {
    build("ex-1.100b", &[[1, 0], [0, 1], [-1, -1]], &[&[0], &[1], &[2]])
}

/// The two coordinate rays of `ℝ²` as separate cones.
pub fn ex_1_230() -> Fan {
    build("ex-1.230", &[[1, 0], [0, 1]], &[&[0], &[1]])
}

/// Same fan as [`ex_1_230`]: sharp degree monoid without skeletal
/// completeness.
pub fn ex_1_400a() -> Fan {
    build("ex-1.400a", &[[1, 0], [0, 1]], &[&[0], &[1]])
}

/// Three rays in the first quadrant as separate cones: free class group, non
/// sharp degree monoid.
pub fn ex_1_400b() -> Fan {
    build("ex-1.400b", &[[1, 0], [1, 1], [0, 1]], &[&[0], &[1], &[2]])
}

/// Complete simplicial fan with rays `(1,0), (0,1), (−2,−3)`.
pub fn ex_3_290() -> Fan {
    build("ex-3.290", &[[1, 0], [0, 1], [-2, -3]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// All named examples, keyed by fixture name.
pub fn all_examples() -> Vec<(&'static str, Fan)> {
    vec![
        ("p1", p1()),
        ("p2", p2()),
        ("hirzebruch-a", hirzebruch(2)),
        ("ex-1.100a", ex_1_100a()),
        ("ex-1.100b", ex_1_100b()),
        ("ex-1.230", ex_1_230()),
        ("ex-1.400a", ex_1_400a()),
        ("ex-1.400b", ex_1_400b()),
        ("ex-3.290", ex_3_290()),
    ]
}
