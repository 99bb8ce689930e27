use crate::buttin::{buttin_bracket, buttin_bracket_raw, d3xi, delta, delta_inv};
use crate::error::Result;
use crate::superpoly::{Chart, SuperPolynomial};
use crate::Rational;

use super::embed::{to_periplectic, CYCLIC};
use super::pair::{canonicalize, GluedPair};

fn xi123() -> SuperPolynomial {
    let c = Chart::periplectic();
    (0..3).fold(SuperPolynomial::one(&c), |acc, j| &acc * &SuperPolynomial::var(&c, c.odd_var(j)))
}

/// `A_h f = Σ (∂²h/∂ξ_j∂ξ_k) ∂f/∂ξ_i` on the periplectic chart.
fn a_apply(h: &SuperPolynomial, f: &SuperPolynomial) -> Result<SuperPolynomial> {
    let c = h.chart().clone();
    let mut out = SuperPolynomial::zero(&c);
    for (i, j, k) in CYCLIC {
        out += &(&h.partials(&[c.odd_var(j), c.odd_var(k)])? * &f.partial(c.odd_var(i))?);
    }
    Ok(out)
}

fn i1(p: SuperPolynomial) -> GluedPair {
    GluedPair::from_f(p)
}

fn i2(p: SuperPolynomial) -> GluedPair {
    GluedPair::from_g(p)
}

/// One cell of the `[i₂f, i₁h]` table for `deg_ξ f = a`, `deg_ξ h = b`.
fn cell(a: u32, b: u32, f: &SuperPolynomial, h: &SuperPolynomial) -> Result<GluedPair> {
    let x = xi123();
    let br = buttin_bracket_raw;
    Ok(match (a, b) {
        (0 | 1, 0) => i2(br(f, &delta(&(h * &x))?)?),
        (0, 1) => -i1(br(&delta(&(f * &x))?, h)?),
        (0, 2) => i1(&br(f, &delta(h)?)? * &x),
        (0, 3) | (3, 0) => GluedPair::zero(),
        (1, 1) => {
            let t = delta_inv(&br(f, &delta(h)?)?)?;
            &i1(t.clone()) + &i2(&br(f, h)? - &t)
        }
        (1, 2) => -i1(&delta(&(f * h))? + &(f * &delta(h)?)),
        (1, 3) => i1(&(-&(f * &delta(h)?)) - &(&delta(f)? * h)),
        (2, 0) => i2(&br(&delta(f)?, h)? * &x),
        (2, 1) => i2(&delta(&(f * h))? - &(&delta(f)? * h)),
        (2, 2) => {
            let t = delta_inv(&d3xi(&(f * &delta(h)?))?)?;
            &i1(t.clone()) + &i2(&a_apply(h, f)? - &t)
        }
        (2, 3) => i1(-(f * &d3xi(h)?)),
        (3, 1) => i2(&(f * &delta(h)?) + &(&delta(f)? * h)),
        (3, 2) => i2(-(h * &d3xi(f)?)),
        (3, 3) => {
            let t = delta_inv(&(&d3xi(f)? * &d3xi(h)?))?;
            &i1(t.clone()) - &i2(t)
        }
        _ => unreachable!("three odd variables"),
    })
}

/// The pair representing `[i₂f, i₁h]`, summed over bihomogeneous components.
pub fn mixed_bracket(f: &SuperPolynomial, h: &SuperPolynomial) -> Result<GluedPair> {
    let f = to_periplectic(f)?.without_constant();
    let h = to_periplectic(h)?.without_constant();
    let mut out = GluedPair::zero();
    for ((_, a), fc) in f.bihomogeneous_components() {
        for ((_, b), hc) in h.bihomogeneous_components() {
            out = &out + &cell(a, b, &fc, &hc)?;
        }
    }
    Ok(canonicalize(&out))
}

/// The bracket of two pairs with parity-homogeneous slots.
pub fn bracket_pair(p: &GluedPair, q: &GluedPair) -> Result<GluedPair> {
    let pf = p.f().parity()?;
    p.g().parity()?;
    q.f().parity()?;
    let qg = q.g().parity()?;
    let same = GluedPair::new(buttin_bracket(p.f(), q.f())?, buttin_bracket(p.g(), q.g())?);
    let forward = mixed_bracket(p.g(), q.f())?;
    let backward = mixed_bracket(q.g(), p.f())?;
    let sign = -Rational::from_integer(pf.flip().koszul(qg.flip()).into());
    Ok(canonicalize(&(&(&same + &forward) + &backward.scale(&sign))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{decompose, i1_field, i2_field, realize};
    use crate::text::parse_poly;

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s, &Chart::periplectic()).unwrap()
    }

    fn oracle(f: &SuperPolynomial, h: &SuperPolynomial) -> GluedPair {
        let c = i2_field(f).unwrap().commutator_by_action(&i1_field(h).unwrap()).unwrap();
        decompose(&c).unwrap()
    }

    #[test]
    fn table_examples() {
        assert!(mixed_bracket(&p("u1*x1*x2*x3"), &p("u2^2")).unwrap().is_zero());
        assert!(mixed_bracket(&p("u1"), &p("u1")).unwrap().is_zero());
        let (f, h) = (p("u1*x1"), p("u2*x2*x3"));
        assert_eq!(mixed_bracket(&f, &h).unwrap(), oracle(&f, &h));
    }

    #[test]
    fn bracket_examples() {
        let a = GluedPair::from_g(p("u1"));
        let b = GluedPair::from_g(p("x1"));
        assert!(bracket_pair(&a, &b).unwrap().is_zero());
        let (u1, u2) = (GluedPair::from_f(p("u1")), GluedPair::from_f(p("u2")));
        let field = realize(&u1).unwrap().commutator(&realize(&u2).unwrap()).unwrap();
        assert_eq!(bracket_pair(&u1, &u2).unwrap(), decompose(&field).unwrap());
    }
}
