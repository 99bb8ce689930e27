use std::sync::Arc;

use crate::buttin::{d3xi, delta, le_field};
use crate::error::Result;
use crate::exceptional::GluedPair;
use crate::superfield::SuperField;
use crate::superpoly::{Chart, Parity, SuperPolynomial, Var};
use crate::Rational;

/// Cyclic triples `(i, j, k)` as zero-based odd slots.
pub(crate) const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn standard() -> Arc<Chart> {
    Chart::standard()
}

fn y_var() -> Var {
    standard().var("y").unwrap()
}

fn y_poly() -> SuperPolynomial {
    SuperPolynomial::var(&standard(), y_var())
}

/// Rewrites a periplectic polynomial on the standard chart.
pub fn lift(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    f.embed(&standard())
}

/// Rewrites a `y`-free polynomial on the periplectic chart.
pub fn to_periplectic(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    f.embed(&Chart::periplectic())
}

fn sign_of(p: Parity) -> Rational {
    Rational::from_integer(p.sign().into())
}

/// `A_f = Σ_{(i,j,k) cyclic} (∂²f/∂ξ_j∂ξ_k) ∂_{ξ_i}` on the standard chart.
pub fn a_field(f: &SuperPolynomial) -> Result<SuperField> {
    let f = to_periplectic(f)?;
    let pc = f.chart().clone();
    let chart = standard();
    let mut out = SuperField::zero(&chart);
    for (i, j, k) in CYCLIC {
        let c = f.partials(&[pc.odd_var(j), pc.odd_var(k)])?;
        if !c.is_zero() {
            out = &out + &SuperField::term(lift(&c)?, chart.odd_var(i));
        }
    }
    Ok(out)
}

/// `i₂(f) = Le_f + y·A_f - (-1)^{p(f)} (y·Δf + y²·D³_ξ f) ∂_y` for parity-homogeneous `f`.
pub fn i2_field(f: &SuperPolynomial) -> Result<SuperField> {
    let f = to_periplectic(f)?;
    let parity = f.parity()?;
    let chart = standard();
    let y = y_poly();
    let le = le_field(&f)?.embed(&chart)?;
    let ya = a_field(&f)?.left_mul(&y)?;
    let r = &(&y * &lift(&delta(&f)?)?) + &(&(&y * &y) * &lift(&d3xi(&f)?)?);
    let r = r.scale(&-sign_of(parity));
    Ok(&(&le + &ya) + &SuperField::term(r, y_var()))
}

/// `α_g = A_g - (-1)^{p(g)} (Δg + 2y·D³_ξ g) ∂_y` for parity-homogeneous `g`.
pub fn alpha_field(g: &SuperPolynomial) -> Result<SuperField> {
    let g = to_periplectic(g)?;
    let parity = g.parity()?;
    let y = y_poly();
    let two = Rational::from_integer(2.into());
    let r = &lift(&delta(&g)?)? + &(&y * &lift(&d3xi(&g)?)?).scale(&two);
    Ok(&a_field(&g)? + &SuperField::term(r.scale(&-sign_of(parity)), y_var()))
}

/// The embedding `i₁` of `le(3;3)`, applied separately to each `deg_ξ` component.
pub fn i1_field(h: &SuperPolynomial) -> Result<SuperField> {
    let h = to_periplectic(h)?.without_constant();
    let pc = h.chart().clone();
    let chart = standard();
    let y = y_poly();
    let xi = |j: usize| pc.odd_var(j);
    let mut out = SuperField::zero(&chart);
    for (deg, f) in h.odd_degree_components() {
        let piece = match deg {
            0 => {
                // Le_{Σ ∂f/∂u_i ξ_j ξ_k - y f} with y a parameter.
                let mut s = SuperPolynomial::zero(&pc);
                for (i, j, k) in CYCLIC {
                    let xjxk = &SuperPolynomial::var(&pc, xi(j)) * &SuperPolynomial::var(&pc, xi(k));
                    s += &(&f.partial(pc.even_var(i))? * &xjxk);
                }
                let le_s = le_field(&s)?.embed(&chart)?;
                let le_f = le_field(&f)?.embed(&chart)?;
                &le_s - &le_f.left_mul(&y)?
            }
            1 => {
                let phi = delta(&f)?;
                let phi_l = lift(&phi)?;
                let le = le_field(&f)?.embed(&chart)?;
                let mut euler_odd = SuperField::zero(&chart);
                for j in 0..3 {
                    euler_odd = &euler_odd + &SuperField::term(SuperPolynomial::var(&chart, chart.odd_var(j)), chart.odd_var(j));
                }
                let xi123 = &(&SuperPolynomial::var(&pc, xi(0)) * &SuperPolynomial::var(&pc, xi(1))) * &SuperPolynomial::var(&pc, xi(2));
                let r = &(-&(&phi_l * &y)) + &lift(&delta(&(&phi * &xi123))?)?;
                &(&le - &euler_odd.left_mul(&phi_l)?) + &SuperField::term(r, y_var())
            }
            2 => {
                let mut d = SuperField::term(-lift(&delta(&f)?)?, y_var());
                for (i, j, k) in CYCLIC {
                    // ψ_i is the coefficient of ξ_j ξ_k.
                    let psi = f.partials(&[xi(k), xi(j)])?;
                    d = &d - &SuperField::term(lift(&psi)?, chart.odd_var(i));
                }
                d
            }
            3 => {
                let psi = f.partials(&[xi(2), xi(1), xi(0)])?;
                SuperField::term(-lift(&psi)?, y_var())
            }
            _ => unreachable!("three odd variables"),
        };
        out = &out + &piece;
    }
    Ok(out)
}

/// `i₁(f) + i₂(g)`, with `g` split into its parity parts.
pub fn realize(p: &GluedPair) -> Result<SuperField> {
    let (ge, go) = p.g().parity_parts();
    let mut out = i1_field(p.f())?;
    for g in [ge, go] {
        if !g.is_zero() {
            out = &out + &i2_field(&g)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_field, parse_poly};

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s, &Chart::periplectic()).unwrap()
    }

    fn field(s: &str) -> SuperField {
        parse_field(s, &Chart::standard(), &Default::default()).unwrap()
    }

    #[test]
    fn a_field_examples() {
        assert!(a_field(&p("u1^2*u2")).unwrap().is_zero());
        assert_eq!(a_field(&p("x1*x2")).unwrap(), field("-Dx3"));
        let a = a_field(&p("x1*x2*x3")).unwrap();
        let euler_odd = field("x1*Dx1 + x2*Dx2 + x3*Dx3");
        assert!(a == euler_odd || a == -euler_odd.clone());
        assert_eq!(a, -euler_odd);
    }

    #[test]
    fn i1_examples() {
        assert_eq!(i1_field(&p("u1")).unwrap(), field("-y*Dx1 - x2*Du3 + x3*Du2"));
        assert_eq!(i1_field(&p("x2*x3")).unwrap(), field("-Dx1"));
        assert_eq!(i1_field(&p("u1*x1*x2*x3")).unwrap(), field("-u1*Dy"));
    }

    #[test]
    fn i2_examples() {
        assert_eq!(i2_field(&p("u1")).unwrap(), field("Dx1"));
        assert_eq!(i2_field(&p("x1")).unwrap(), field("-Du1"));
        assert_eq!(i2_field(&p("u1*x1")).unwrap(), field("x1*Dx1 - u1*Du1 + y*Dy"));
        assert!(i2_field(&p("u1 + x1")).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_field(&p("u1*u2 + u3^3")).unwrap().is_zero());
        assert_eq!(alpha_field(&p("x1*x2")).unwrap(), field("-Dx3"));
        assert_eq!(alpha_field(&p("x1*x2")).unwrap(), i1_field(&p("x1*x2")).unwrap());
        assert_eq!(alpha_field(&p("u1*x1")).unwrap(), field("Dy"));
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize(&GluedPair::new(p("0"), p("u1"))).unwrap(), field("Dx1"));
        assert_eq!(realize(&GluedPair::new(p("u1*x1*x2*x3"), p("0"))).unwrap(), field("-u1*Dy"));
        assert!(realize(&GluedPair::new(p("0"), p("0"))).unwrap().is_zero());
    }
}
