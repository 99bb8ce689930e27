use cvect_core::prolong::{prolong_to, subspace_compare, ProlongationInput, Relation};
use cvect_core::{Chart, SuperField};

fn dims(name: &str, max: i64) -> Vec<(i64, (usize, usize))> {
    let input = ProlongationInput::by_name(name).unwrap();
    prolong_to(&input, max).unwrap().into_iter().map(|c| (c.degree, c.dims)).collect()
}

#[test]
fn line_prolongs_to_polynomial_fields() {
    assert_eq!(dims("vect1", 3), vec![(-1, (1, 0)), (0, (1, 0)), (1, (1, 0)), (2, (1, 0)), (3, (1, 0))]);
}

#[test]
fn odd_line_stops() {
    assert_eq!(dims("odd1", 2), vec![(-1, (0, 1)), (0, (1, 0)), (1, (0, 0)), (2, (0, 0))]);
}

#[test]
fn exceptional_input() {
    assert_eq!(&dims("vect03", 0)[..], &[(-1, (4, 3)), (0, (12, 12))]);
    assert_eq!(&dims("cvect03", 2)[..], &[(-1, (4, 3)), (0, (13, 12)), (1, (28, 27)), (2, (49, 48))]);
}

#[test]
fn misweighted_degree_zero_is_rejected() {
    let mut input = ProlongationInput::toy_vect1();
    let c = Chart::new(&["x"], &[] as &[&str]).unwrap();
    let x = c.var("x").unwrap();
    let xx = cvect_core::SuperPolynomial::var(&c, x);
    input.g0.push(SuperField::term(&xx * &xx, x));
    assert!(prolong_to(&input, 1).is_err());
}

#[test]
fn span_relations() {
    let c = Chart::standard();
    let d = |n: &str| SuperField::partial_named(&c, n).unwrap();
    assert_eq!(subspace_compare(&[d("y")], &[d("y")]).unwrap().relation, Relation::Equal);
    assert_eq!(subspace_compare(&[d("u1")], &[d("u1"), d("u2")]).unwrap().relation, Relation::AInB);
    assert_eq!(subspace_compare(&[d("u1"), d("u2")], &[d("u1")]).unwrap().relation, Relation::BInA);
    assert_eq!(subspace_compare(&[d("u1")], &[d("u2")]).unwrap().relation, Relation::Incomparable);
}
