use num_bigint::BigInt;

use toric_core::charts::invertibility_check;
use toric_core::cohomology::{finiteness_evidence, local_cohomology, sheaf_cohomology, tensor_h0};
use toric_core::fan::examples;
use toric_core::picard::{build_diagram, picard_group};

#[test]
fn local_cohomology_of_the_projective_plane() {
    let d = build_diagram(&examples::p2());
    let a = d.group();
    let e = |k: i64| a.scale(&BigInt::from(k), &d.alpha()[0]);
    let zero = [a.zero()];
    assert_eq!(local_cohomology(&d, &zero, &e(-3), None).unwrap().dims, vec![0, 0, 0, 1]);
    assert_eq!(local_cohomology(&d, &zero, &e(-5), None).unwrap().dims, vec![0, 0, 0, 6]);
    assert_eq!(local_cohomology(&d, &zero, &e(2), None).unwrap().dims, vec![0, 0, 0, 0]);
    let ev = finiteness_evidence(&d, &zero, &e(-4), None).unwrap();
    assert!(ev.stable);
    assert_eq!(ev.sheaf[0], vec![0, 0, 3]);
}

#[test]
fn hirzebruch_surface_line_bundles() {
    let d = build_diagram(&examples::hirzebruch(2));
    let a = d.group();
    let zero = [a.zero()];
    let h = sheaf_cohomology(&d, &zero, &a.zero(), None).unwrap();
    assert_eq!(h.dims, vec![1, 0, 0, 0]);
    // The canonical class is minus the sum of the ray degrees; Serre duality
    // gives h²(K) = h⁰(O) = 1.
    let k = d.alpha().iter().fold(a.zero(), |acc, x| a.sub(&acc, x));
    let h = sheaf_cohomology(&d, &zero, &k, None).unwrap();
    assert_eq!(h.dims[..3], [0, 0, 1]);
    assert!(h.stable);
}

#[test]
fn invertible_twists_are_the_picard_degrees() {
    let d = build_diagram(&examples::ex_3_290());
    let a = d.group();
    let pic = picard_group(&d);
    for k in -9..=9 {
        let alpha = a.scale(&BigInt::from(k), &d.alpha()[2]);
        let r = invertibility_check(&d, &alpha).unwrap();
        assert_eq!(r.in_picard, pic.contains(&alpha));
        assert_eq!(r.invertible(), r.in_picard, "degree {k}");
    }
}

#[test]
fn tensor_sections_for_picard_pairs() {
    let d = build_diagram(&examples::ex_3_290());
    let a = d.group();
    let g = &d.alpha()[2];
    for (i, j) in [(6, 0), (6, 6), (-6, 12), (0, 1)] {
        let t = tensor_h0(&d, &a.scale(&BigInt::from(i), g), &a.scale(&BigInt::from(j), g), None).unwrap();
        assert!(t.stable);
        assert_eq!(t.tensor, t.direct, "({i}, {j})");
    }
}
