use cvect_core::exceptional::{
    bracket_pair, decompose, g0_basis, i1_field, i2_field, membership, phi_auto, realize, regrade, simplicity_witness,
    BasisDictionary, GluedPair, Variant,
};
use cvect_core::prolong::{prolong_to, subspace_compare, ProlongationInput, Relation};
use cvect_core::random::Sampler;
use cvect_core::text::{parse_field, parse_pair, parse_poly};
use cvect_core::{Chart, SuperField, SuperPolynomial};

fn p(s: &str) -> SuperPolynomial {
    parse_poly(s, &Chart::periplectic()).unwrap()
}

fn field(s: &str) -> SuperField {
    parse_field(s, &Chart::standard(), &cvect_core::exceptional::named_fields()).unwrap()
}

fn pair(s: &str) -> GluedPair {
    parse_pair(s).unwrap()
}

#[test]
fn degree_one_prolongation_contains_witness() {
    let comps = prolong_to(&ProlongationInput::cvect03(), 1).unwrap();
    let cmp = subspace_compare(&[simplicity_witness()], &comps[2].basis).unwrap();
    assert_eq!(cmp.relation, Relation::AInB);
}

#[test]
fn degree_zero_functions_give_dictionary() {
    let images: Vec<SuperField> =
        cvect_core::verify::i1_monomials(0).iter().map(|h| i1_field(h).unwrap()).collect();
    let dict: Vec<SuperField> = g0_basis().into_iter().map(|e| e.field).collect();
    assert_eq!(subspace_compare(&images, &dict).unwrap().relation, Relation::Equal);
}

#[test]
fn dictionary_fields_are_members() {
    for e in BasisDictionary::new().entries() {
        let r = membership(&e.field, Variant::Vect).unwrap();
        assert!(r.is_member(), "{}: {r}", e.name);
    }
    assert!(membership(&simplicity_witness(), Variant::Cvect).unwrap().is_member());
    assert!(!membership(&field("x1*Du1"), Variant::Cvect).unwrap().is_member());
}

#[test]
fn dy_decomposes_to_top_odd_function() {
    let got = decompose(&field("Dy")).unwrap();
    assert_eq!(got, pair("(-x1*x2*x3, 0)"));
}

#[test]
fn euler_field_has_a_preimage() {
    let d = field("d");
    assert_eq!(realize(&decompose(&d).unwrap()).unwrap(), d);
}

#[test]
fn random_pairs_round_trip() {
    let mut s = Sampler::new(99).with_max_terms(3);
    for _ in 0..60 {
        let par = s.parity();
        let x = s.pair(par, 3);
        let d = realize(&x).unwrap();
        let back = decompose(&d).unwrap();
        assert_eq!(back, x);
        assert_eq!(realize(&back).unwrap(), d);
    }
}

#[test]
fn bracket_of_constant_functions() {
    let b = bracket_pair(&pair("(u1, 0)"), &pair("(u2, 0)")).unwrap();
    let oracle = i1_field(&p("u1")).unwrap().commutator(&i1_field(&p("u2")).unwrap()).unwrap();
    assert_eq!(b, decompose(&oracle).unwrap());
    assert!(bracket_pair(&pair("(0, u1)"), &pair("(0, x1)")).unwrap().is_zero());
}

#[test]
fn regrading_examples() {
    assert_eq!(regrade(&p("x1")).unwrap(), p("x1"));
    assert_eq!(regrade(&p("u1")).unwrap(), p("x2*x3"));
    assert_eq!(regrade(&p("x2*x3")).unwrap(), p("-u1"));
    assert_eq!(phi_auto(&pair("(u1, 0)")).unwrap(), pair("(0, -u1)"));
    assert_eq!(phi_auto(&pair("(0, x1)")).unwrap(), pair("(x1, 0)"));
}

#[test]
fn i2_images_in_vect_exactly_on_sle_degree() {
    for (f, inside) in [("x1", true), ("u1*x1", false), ("x1*x2*x3", false), ("u1*x2", true)] {
        let r = membership(&i2_field(&p(f)).unwrap(), Variant::Vect).unwrap();
        assert_eq!(r.is_member(), inside, "{f}: {r}");
    }
}
