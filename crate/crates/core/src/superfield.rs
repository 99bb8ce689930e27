//! Polynomial vector superfields (superderivations) on a chart.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::superpoly::{check_chart, Chart, Monomial, Parity, SuperPolynomial, Var};
use crate::Rational;

/// `Σ_v c_v ∂_v` with one polynomial coefficient per chart variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperField {
    chart: Arc<Chart>,
    coeffs: Vec<SuperPolynomial>,
}

impl SuperField {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        SuperField { chart: chart.clone(), coeffs: vec![SuperPolynomial::zero(chart); chart.n_vars()] }
    }

    /// The coordinate field `∂_v`.
    pub fn partial(chart: &Arc<Chart>, v: Var) -> Self {
        Self::term(SuperPolynomial::one(chart), v)
    }

    /// `∂_name`.
    pub fn partial_named(chart: &Arc<Chart>, name: &str) -> Result<Self> {
        Ok(Self::partial(chart, chart.var(name)?))
    }

    /// The single term `c·∂_v`.
    pub fn term(c: SuperPolynomial, v: Var) -> Self {
        let mut d = Self::zero(c.chart());
        d.coeffs[v.index()] = c;
        d
    }

    pub fn from_components<I: IntoIterator<Item = (Var, SuperPolynomial)>>(chart: &Arc<Chart>, parts: I) -> Result<Self> {
        let mut d = Self::zero(chart);
        for (v, c) in parts {
            check_chart(chart, c.chart())?;
            if v.index() >= chart.n_vars() {
                return Err(Error::UnknownVariable(format!("#{}", v.index())));
            }
            d.coeffs[v.index()] += &c;
        }
        Ok(d)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn component(&self, v: Var) -> &SuperPolynomial {
        &self.coeffs[v.index()]
    }

    /// Coefficient of `∂_name`.
    pub fn component_named(&self, name: &str) -> Result<&SuperPolynomial> {
        Ok(self.component(self.chart.var(name)?))
    }

    pub fn components(&self) -> impl Iterator<Item = (Var, &SuperPolynomial)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (Var(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPolynomial::is_zero)
    }

    /// Number of (direction, monomial) terms.
    pub fn n_terms(&self) -> usize {
        self.coeffs.iter().map(SuperPolynomial::n_terms).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SuperField { chart: self.chart.clone(), coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// `f·D`, multiplying every coefficient on the left.
    pub fn left_mul(&self, f: &SuperPolynomial) -> Result<Self> {
        check_chart(&self.chart, f.chart())?;
        Ok(SuperField { chart: self.chart.clone(), coeffs: self.coeffs.iter().map(|p| f * p).collect() })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_chart(&self.chart, &other.chart)?;
        Ok(SuperField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Parity of a homogeneous field: parity of a coefficient plus parity of its direction.
    pub fn parity(&self) -> Result<Parity> {
        let mut found: Option<Parity> = None;
        for (v, c) in self.components() {
            for (m, _) in c.terms() {
                let p = m.parity() + self.chart.parity(v);
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return Err(Error::MixedParity(format!("field {self}"))),
                    _ => {}
                }
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    /// Even and odd parts.
    pub fn parity_parts(&self) -> (Self, Self) {
        let mut even = Self::zero(&self.chart);
        let mut odd = Self::zero(&self.chart);
        for (v, c) in self.components() {
            let dir = self.chart.parity(v);
            even.coeffs[v.index()] = c.filter(|m| m.parity() + dir == Parity::Even);
            odd.coeffs[v.index()] = c.filter(|m| m.parity() + dir == Parity::Odd);
        }
        (even, odd)
    }

    /// Nonzero homogeneous parts with their parities.
    fn homogeneous_parts(&self) -> Vec<(Parity, SuperField)> {
        let (e, o) = self.parity_parts();
        let mut out = Vec::new();
        if !e.is_zero() {
            out.push((Parity::Even, e));
        }
        if !o.is_zero() {
            out.push((Parity::Odd, o));
        }
        out
    }

    /// Action on a polynomial: `D(f) = Σ_v c_v ∂_v f`.
    pub fn apply(&self, f: &SuperPolynomial) -> Result<SuperPolynomial> {
        check_chart(&self.chart, f.chart())?;
        let mut out = SuperPolynomial::zero(&self.chart);
        for (v, c) in self.components() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(v)?;
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    /// The supercommutator `[D1, D2] = D1 D2 - (-1)^{p(D1)p(D2)} D2 D1`, expanded
    /// bilinearly over homogeneous parts. Computed from the closed coefficient formula.
    pub fn commutator(&self, other: &SuperField) -> Result<SuperField> {
        check_chart(&self.chart, &other.chart)?;
        let n = self.chart.n_vars();
        let mut acc: Vec<HashMap<Monomial, Rational>> = vec![HashMap::new(); n];
        for (pa, a) in self.homogeneous_parts() {
            for (pb, b) in other.homogeneous_parts() {
                let sign = -pa.koszul(pb);
                for (v, slot) in acc.iter_mut().enumerate() {
                    for w in 0..n {
                        fused_term(slot, &a.coeffs[w], Var(w), &b.coeffs[v], 1, &self.chart);
                        fused_term(slot, &b.coeffs[w], Var(w), &a.coeffs[v], sign, &self.chart);
                    }
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|terms| SuperPolynomial::from_terms(&self.chart, terms.into_iter().filter(|(_, c)| !c.is_zero())))
            .collect();
        Ok(SuperField { chart: self.chart.clone(), coeffs })
    }

    /// The supercommutator computed by composing the two derivations on every
    /// coordinate function. Independent of [`SuperField::commutator`].
    pub fn commutator_by_action(&self, other: &SuperField) -> Result<SuperField> {
        check_chart(&self.chart, &other.chart)?;
        let mut out = SuperField::zero(&self.chart);
        for (pa, a) in self.homogeneous_parts() {
            for (pb, b) in other.homogeneous_parts() {
                let sign = Rational::from_integer(pa.koszul(pb).into());
                for v in self.chart.vars() {
                    let x = SuperPolynomial::var(&self.chart, v);
                    let ab = a.apply(&b.apply(&x)?)?;
                    let ba = b.apply(&a.apply(&x)?)?;
                    out.coeffs[v.index()] += &(&ab - &ba.scale(&sign));
                }
            }
        }
        Ok(out)
    }

    /// Superdivergence `Σ ∂f_i/∂u_i - (-1)^{p(D)} Σ ∂g_j/∂ξ_j`.
    pub fn div(&self) -> Result<SuperPolynomial> {
        let p = self.parity()?;
        let mut even_part = SuperPolynomial::zero(&self.chart);
        let mut odd_part = SuperPolynomial::zero(&self.chart);
        for (v, c) in self.components() {
            let d = c.partial(v)?;
            if self.chart.parity(v) == Parity::Even {
                even_part += &d;
            } else {
                odd_part += &d;
            }
        }
        Ok(&even_part - &odd_part.scale(&Rational::from_integer(p.sign().into())))
    }

    /// Splits the field by `weight(monomial) - weight(direction)`.
    pub fn graded_components(&self, weights: &[i64]) -> Vec<(i64, SuperField)> {
        let mut out: BTreeMap<i64, SuperField> = BTreeMap::new();
        for (v, c) in self.components() {
            for (w, part) in c.weight_components(weights) {
                let deg = w - weights[v.index()];
                out.entry(deg).or_insert_with(|| SuperField::zero(&self.chart)).coeffs[v.index()] += &part;
            }
        }
        out.into_iter().collect()
    }

    /// Degree under the chart's own weights, if the field is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let comps = self.graded_components(self.chart.weights());
        match comps.as_slice() {
            [(d, _)] => Some(*d),
            _ => None,
        }
    }

    /// Rewrites the field on another chart, matching variables by name.
    pub fn embed(&self, target: &Arc<Chart>) -> Result<Self> {
        let mut out = SuperField::zero(target);
        for (v, c) in self.components() {
            if c.is_zero() {
                continue;
            }
            let t = target.var(self.chart.name(v))?;
            out.coeffs[t.index()] += &c.embed(target)?;
        }
        Ok(out)
    }
}

/// Accumulates `scale · a·∂_w(b)` term by term, fusing the derivative with the product.
fn fused_term(
    acc: &mut HashMap<Monomial, Rational>,
    a: &SuperPolynomial,
    w: Var,
    b: &SuperPolynomial,
    scale: i64,
    chart: &Chart,
) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    let odd_slot = chart.odd_slot(w);
    for (mb, cb) in b.terms() {
        let (neg1, mult, q) = match odd_slot {
            Some(j) => match mb.d_odd(j) {
                Some((neg, q)) => (neg, 1u16, q),
                None => continue,
            },
            None => match mb.d_even(w.index()) {
                Some((e, q)) => (false, e, q),
                None => continue,
            },
        };
        for (ma, ca) in a.terms() {
            if let Some((neg2, m)) = ma.mul(&q) {
                let negative = neg1 ^ neg2 ^ (scale < 0);
                let mut c = ca * cb * Rational::from_integer((mult as i64 * scale.abs()).into());
                if negative {
                    c = -c;
                }
                *acc.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
    }
}

impl Add for &SuperField {
    type Output = SuperField;
    fn add(self, rhs: &SuperField) -> SuperField {
        self.try_add(rhs).expect("chart mismatch in field addition")
    }
}

impl Add for SuperField {
    type Output = SuperField;
    fn add(self, rhs: SuperField) -> SuperField {
        &self + &rhs
    }
}

impl Sub for &SuperField {
    type Output = SuperField;
    fn sub(self, rhs: &SuperField) -> SuperField {
        self + &(-rhs)
    }
}

impl Sub for SuperField {
    type Output = SuperField;
    fn sub(self, rhs: SuperField) -> SuperField {
        &self - &rhs
    }
}

impl Neg for &SuperField {
    type Output = SuperField;
    fn neg(self) -> SuperField {
        SuperField { chart: self.chart.clone(), coeffs: self.coeffs.iter().map(|p| -p).collect() }
    }
}

impl Neg for SuperField {
    type Output = SuperField;
    fn neg(self) -> SuperField {
        -&self
    }
}

impl fmt::Display for SuperField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_field(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn p(name: &str) -> SuperPolynomial {
        SuperPolynomial::named(&Chart::standard(), name).unwrap()
    }

    fn dd(name: &str) -> SuperField {
        SuperField::partial_named(&Chart::standard(), name).unwrap()
    }

    fn t(c: SuperPolynomial, name: &str) -> SuperField {
        SuperField::term(c, Chart::standard().var(name).unwrap())
    }

    fn euler() -> SuperField {
        ["u1", "u2", "u3", "y", "x1", "x2", "x3"].iter().fold(SuperField::zero(&Chart::standard()), |acc, n| {
            &acc + &t(p(n), n)
        })
    }

    #[test]
    fn apply_examples() {
        assert_eq!(dd("x1").apply(&(&p("x1") * &p("x2"))).unwrap(), p("x2"));
        let d = t(p("x1"), "u1");
        assert_eq!(d.apply(&(&p("u1") * &p("x2"))).unwrap(), &p("x1") * &p("x2"));
        let f = &p("u1") * &p("x2");
        assert_eq!(euler().apply(&f).unwrap(), f.scale(&qi(2)));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(dd("u1").commutator(&t(p("u1"), "u1")).unwrap(), dd("u1"));
        assert_eq!(dd("x1").commutator(&t(p("x1"), "y")).unwrap(), dd("y"));
        assert_eq!(euler().commutator(&dd("u1")).unwrap(), -dd("u1"));
        for (a, b) in [(dd("x1"), t(p("x1"), "y")), (euler(), dd("u1"))] {
            assert_eq!(a.commutator(&b).unwrap(), a.commutator_by_action(&b).unwrap());
        }
    }

    #[test]
    fn divergence_examples() {
        assert!(dd("y").div().unwrap().is_zero());
        assert_eq!(t(p("u1"), "u1").div().unwrap(), SuperPolynomial::one(&Chart::standard()));
        assert_eq!(t(p("x1"), "x1").div().unwrap(), SuperPolynomial::constant(&Chart::standard(), qi(-1)));
        let mixed = &dd("u1") + &dd("x1");
        assert!(matches!(mixed.div(), Err(Error::MixedParity(_))));
    }

    #[test]
    fn graded_component_examples() {
        let ones = vec![1; 7];
        assert_eq!(dd("u1").graded_components(&ones), vec![(-1, dd("u1"))]);
        let d = &t(p("u1"), "u1") + &t(&p("y") * &p("y"), "y");
        assert_eq!(
            d.graded_components(&ones),
            vec![(0, t(p("u1"), "u1")), (1, t(&p("y") * &p("y"), "y"))]
        );
        // y weighs -1, u weighs 1, ξ weighs 0
        let regraded = vec![1, 1, 1, -1, 0, 0, 0];
        let e = t(-p("y"), "x1");
        assert_eq!(e.graded_components(&regraded), vec![(-1, e.clone())]);
    }
}
