use toric_core::fan::{generate_complete_fan, generate_nonfull_fan, generate_random_fan};
use toric_core::picard::{build_diagram, fan_classification_theorems, picard_via_polytopes};

#[test]
fn random_fans_satisfy_two_routes_and_theorems() {
    let mut fans = Vec::new();
    for seed in 0..60 {
        for dim in 1..=3 {
            fans.push(generate_random_fan(seed, dim, 7));
        }
        fans.push(generate_complete_fan(seed, 2, 6));
        fans.push(generate_nonfull_fan(seed, 5));
    }
    for f in &fans {
        let d = build_diagram(f);
        let p = picard_via_polytopes(&d);
        assert!(p.injective, "{}", f.name());
        assert!(p.matches_intersection, "{}", f.name());
        if let Err(e) = fan_classification_theorems(&d) {
            panic!("{e} {:?} {:?}", f.rays(), f.max_cones());
        }
    }
}
