use syzlab_core::curvelab::{minimal_pencils, random_curve, CurveModel};
use syzlab_core::quadrics::{
    check_quadric, ehbauer_project, general_position_check, iterated_projection_to_quadric,
    pencil_quadric, projection_center, ProjectedClass,
};
use syzlab_core::scrolls::{restriction_span_dim, scroll_matrix};
use syzlab_core::Degree;

fn pipeline(c: &CurveModel) {
    let pencils = minimal_pencils(c).unwrap();
    let k = pencils[0].degree;
    let g = c.genus();
    let scrolls: Vec<_> = pencils
        .iter()
        .map(|p| scroll_matrix(c, p).unwrap())
        .collect();
    let j = restriction_span_dim(c, &scrolls).unwrap();
    eprintln!(
        "span {:?} curve {} per {:?}",
        j.prefix_spans, j.curve_value, j.per_scroll
    );
    assert!(j.injective && j.containment_ok);
    let center = projection_center(c, g - 1 - k, &pencils, 7).unwrap();
    assert_eq!(center.w_dim(), k + 1);
    let qs: Vec<_> = pencils
        .iter()
        .enumerate()
        .map(|(i, p)| pencil_quadric(c, p, &center, i).unwrap())
        .collect();
    for q in &qs {
        let chk = check_quadric(c, &center, q, 50, 3).unwrap();
        assert_eq!(chk.rank, 4);
        assert!(chk.vanishes_on_points && chk.in_kernel, "{chk:?}");
    }
    assert!(general_position_check(c.field(), &qs));
    let rep = iterated_projection_to_quadric(c, &qs, &j.extremal_classes, j.p, &center).unwrap();
    eprintln!("{rep:?}");
    assert!(
        rep.all_in_span && rep.each_pencil_nonzero && rep.cocycles_ok && rep.leading_residuals_zero
    );
}

#[test]
fn two_rulings() {
    pipeline(&random_curve(Degree::Bi(4, 4), 32003, 1).unwrap());
}

#[test]
fn trigonal() {
    pipeline(&random_curve(Degree::Bi(3, 4), 32003, 2).unwrap());
}

#[test]
fn zero_class_projects_to_zero() {
    let c = random_curve(Degree::Bi(3, 4), 32003, 2).unwrap();
    let pts = syzlab_core::curvelab::rational_points(&c, 1, 1);
    let cls = ProjectedClass::on_canonical_space(6, 3, vec![0; 20 * 6]).unwrap();
    let step = ehbauer_project(&c, &cls, &pts[0]).unwrap();
    assert!(step.class.is_zero());
    assert!(ehbauer_project(&c, &cls, &[1, 2, 3, 4]).is_err());
}
