use std::time::Instant;
use syzlab_core::curvelab::random_curve;
use syzlab_core::koszul::{
    betti_table, extremal_check, strand_dims, strand_dims_with, StrandMethod,
};
use syzlab_core::Degree;

#[test]
fn plane_sextic_extremal_entry() {
    let c = random_curve(Degree::Plane(6), 32003, 1).unwrap();
    let s = strand_dims(&c).unwrap();
    assert_eq!(s.get(6), 27);
    let r = extremal_check(&s, 5, 1);
    assert!(!r.passed());
    assert_eq!(r.last_nonzero, Some((6, 27)));
    assert!(!r.last_divisible_by_index);
}

#[test]
fn two_pencils_genus_nine() {
    let c = random_curve(Degree::Bi(4, 4), 32003, 1).unwrap();
    let t = Instant::now();
    let s = strand_dims(&c).unwrap();
    eprintln!("reduced g=9 {:?} {:?}", s.values, t.elapsed());
    // The canonical model is a quadric section of P1xP1 embedded by O(2,2) in P^8, whose
    // Gorenstein resolution is symmetric in row one: b_5 = b_1 - 1.
    assert_eq!(s.values, vec![21, 64, 90, 64, 20, 0, 0]);
    let r = extremal_check(&s, 4, 2);
    assert!(r.strand_length_ok && !r.equal);
    let t = Instant::now();
    let f = strand_dims_with(&c, StrandMethod::Full).unwrap();
    eprintln!("full g=9 {:?}", t.elapsed());
    assert_eq!(f.values, s.values);
    let table = betti_table(&s).unwrap();
    assert!(table.hilbert_holds() && table.duality_holds());
}

#[test]
fn one_pencil_genus_twelve() {
    let c = random_curve(Degree::Bi(4, 5), 32003, 1).unwrap();
    let t = Instant::now();
    let s = strand_dims(&c).unwrap();
    eprintln!("reduced g=12 {:?} {:?}", s.values, t.elapsed());
    assert_eq!(s.get(8), 8);
    assert!(extremal_check(&s, 4, 1).passed());
}
