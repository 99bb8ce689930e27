//! Randomized invariants of the polynomial and field layers.

use proptest::prelude::*;

use cvect_core::buttin::{buttin_bracket, delta};
use cvect_core::random::Sampler;
use cvect_core::text::{format_poly, parse_poly};
use cvect_core::{Chart, Parity, SuperField, SuperPolynomial};

fn poly(seed: u64) -> SuperPolynomial {
    let mut s = Sampler::new(seed);
    let p = s.parity();
    s.homogeneous(p, 3)
}

fn field(seed: u64) -> SuperField {
    let mut s = Sampler::new(seed).with_max_terms(3);
    let p = s.parity();
    s.field(&Chart::standard(), p, 2)
}

fn sign(a: Parity, b: Parity) -> SuperPolynomial {
    SuperPolynomial::constant(&Chart::periplectic(), cvect_core::qi(a.koszul(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_format(seed in any::<u64>()) {
        let p = poly(seed);
        let text = format_poly(&p);
        let back = parse_poly(&text, &Chart::periplectic()).unwrap();
        prop_assert_eq!(back.terms().collect::<Vec<_>>(), p.terms().collect::<Vec<_>>());
        prop_assert_eq!(format_poly(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supercommutative(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (poly(a), poly(b));
        let (pf, pg) = (f.parity().unwrap(), g.parity().unwrap());
        prop_assert_eq!(&f * &g, &(&g * &f) * &sign(pf, pg));
    }

    #[test]
    fn odd_partials_square_to_zero(seed in any::<u64>(), i in 0usize..3) {
        let f = poly(seed);
        let c = Chart::periplectic();
        let x = c.odd_var(i);
        prop_assert!(f.partials(&[x, x]).unwrap().is_zero());
    }

    #[test]
    fn partials_supercommute(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let f = poly(seed);
        let c = Chart::periplectic();
        let vars: Vec<_> = c.vars().collect();
        let (va, vb) = (vars[a], vars[b]);
        let ab = f.partials(&[va, vb]).unwrap();
        let ba = f.partials(&[vb, va]).unwrap();
        prop_assert_eq!(ab, &ba * &sign(c.parity(va), c.parity(vb)));
    }

    #[test]
    fn buttin_antisymmetric(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (poly(a), poly(b));
        let (pf, pg) = (f.parity().unwrap(), g.parity().unwrap());
        let fg = buttin_bracket(&f, &g).unwrap();
        let gf = buttin_bracket(&g, &f).unwrap();
        prop_assert_eq!(fg, -(&gf * &sign(pf.flip(), pg.flip())));
    }

    #[test]
    fn laplacian_squares_to_zero(seed in any::<u64>()) {
        let f = poly(seed);
        prop_assert!(delta(&delta(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn fast_commutator_matches_action(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (field(a), field(b));
        prop_assert_eq!(x.commutator(&y).unwrap(), x.commutator_by_action(&y).unwrap());
    }

    #[test]
    fn commutator_antisymmetric(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (field(a), field(b));
        if x.is_zero() || y.is_zero() {
            return Ok(());
        }
        let k = cvect_core::qi(x.parity().unwrap().koszul(y.parity().unwrap()));
        prop_assert_eq!(x.commutator(&y).unwrap(), -y.commutator(&x).unwrap().scale(&k));
    }

    #[test]
    fn divergence_is_a_cocycle(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (field(a), field(b));
        if x.is_zero() || y.is_zero() {
            return Ok(());
        }
        let k = cvect_core::qi(x.parity().unwrap().koszul(y.parity().unwrap()));
        let lhs = x.commutator(&y).unwrap().div().unwrap();
        let rhs = &x.apply(&y.div().unwrap()).unwrap() - &y.apply(&x.div().unwrap()).unwrap().scale(&k);
        prop_assert_eq!(lhs, rhs);
    }
}
