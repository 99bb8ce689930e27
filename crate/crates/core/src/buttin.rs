//! Leitesian calculus on a periplectic `(n|n)` chart: the map `f ↦ Le_f`, the Buttin
//! bracket, the odd Laplacian `Δ`, its right inverse and the `sle°` classifier.
//!
//! Even variable `i` is paired with odd variable `i`. Generating functions are
//! polynomials modulo constants; the raw operators below keep constants because
//! some pipelines use `Δf` as a coefficient rather than as a generating function.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superfield::SuperField;
use crate::superpoly::{Chart, Parity, SuperPolynomial, Var};
use crate::Rational;

fn check_periplectic(chart: &Chart) -> Result<usize> {
    if chart.n_even() != chart.n_odd() {
        return Err(Error::Inconsistent(format!("{} is not a periplectic (n|n) chart", chart.describe())));
    }
    Ok(chart.n_odd())
}

/// A polynomial on the periplectic chart taken modulo constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFunction(SuperPolynomial);

impl GeneratingFunction {
    /// Drops the constant term. Polynomials on a larger chart are accepted when
    /// they only involve the periplectic variables.
    pub fn new(p: SuperPolynomial) -> Result<Self> {
        let chart = Chart::periplectic();
        let p = if p.chart().same_vars(&chart) { p } else { p.embed(&chart)? };
        Ok(GeneratingFunction(p.without_constant()))
    }

    pub fn zero() -> Self {
        GeneratingFunction(SuperPolynomial::zero(&Chart::periplectic()))
    }

    pub fn poly(&self) -> &SuperPolynomial {
        &self.0
    }

    pub fn into_poly(self) -> SuperPolynomial {
        self.0
    }

    /// Parity in the polynomial ring (not the shifted one).
    pub fn parity(&self) -> Result<Parity> {
        self.0.parity()
    }
}

impl fmt::Display for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `Φ = Σ u_i ξ_i`.
pub fn phi(chart: &Arc<Chart>) -> Result<SuperPolynomial> {
    let n = check_periplectic(chart)?;
    let mut out = SuperPolynomial::zero(chart);
    for i in 0..n {
        out += &(&SuperPolynomial::var(chart, chart.even_var(i)) * &SuperPolynomial::var(chart, chart.odd_var(i)));
    }
    Ok(out)
}

/// `Le_f = Σ_i (∂f/∂u_i ∂_{ξ_i} + (-1)^{p(f)} ∂f/∂ξ_i ∂_{u_i})`.
pub fn le_field(f: &SuperPolynomial) -> Result<SuperField> {
    let chart = f.chart().clone();
    let n = check_periplectic(&chart)?;
    let sign = Rational::from_integer(f.parity()?.sign().into());
    let mut parts: Vec<(Var, SuperPolynomial)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (u, xi) = (chart.even_var(i), chart.odd_var(i));
        parts.push((xi, f.partial(u)?));
        parts.push((u, f.partial(xi)?.scale(&sign)));
    }
    SuperField::from_components(&chart, parts)
}

/// The Buttin bracket with the constant term kept.
pub fn buttin_bracket_raw(f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
    let chart = f.chart().clone();
    let n = check_periplectic(&chart)?;
    crate::superpoly::check_chart(&chart, g.chart())?;
    g.parity()?;
    let sign = Rational::from_integer(f.parity()?.sign().into());
    let mut out = SuperPolynomial::zero(&chart);
    for i in 0..n {
        let (u, xi) = (chart.even_var(i), chart.odd_var(i));
        out += &(&f.partial(u)? * &g.partial(xi)?);
        out += &(&f.partial(xi)? * &g.partial(u)?).scale(&sign);
    }
    Ok(out)
}

/// `{f, g} = Σ_i (∂f/∂u_i ∂g/∂ξ_i + (-1)^{p(f)} ∂f/∂ξ_i ∂g/∂u_i)` modulo constants.
pub fn buttin_bracket(f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
    Ok(buttin_bracket_raw(f, g)?.without_constant())
}

/// Bracket of arbitrary (possibly mixed-parity) functions, expanded bilinearly.
pub fn buttin_bracket_bilinear(f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
    let (fe, fo) = f.parity_parts();
    let (ge, go) = g.parity_parts();
    let mut out = SuperPolynomial::zero(f.chart());
    for a in [&fe, &fo] {
        for b in [&ge, &go] {
            if !a.is_zero() && !b.is_zero() {
                out += &buttin_bracket(a, b)?;
            }
        }
    }
    Ok(out)
}

/// The odd Laplacian `Δ = Σ ∂²/∂u_i∂ξ_i` (constants kept).
pub fn delta(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    let chart = f.chart().clone();
    let n = check_periplectic(&chart)?;
    let mut out = SuperPolynomial::zero(&chart);
    for i in 0..n {
        out += &f.partial(chart.odd_var(i))?.partial(chart.even_var(i))?;
    }
    Ok(out)
}

/// `ν(f) = n + deg_u f - deg_ξ f` for a bihomogeneous `f`.
pub fn nu(f: &SuperPolynomial) -> Option<i64> {
    let n = f.chart().n_odd() as i64;
    f.bidegree().map(|(_, du, dx)| n + du as i64 - dx as i64)
}

/// Right inverse of `Δ`: `Φf/ν(f)` on every bihomogeneous component.
pub fn delta_inv(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    let chart = f.chart().clone();
    let n = check_periplectic(&chart)? as i64;
    let phi = phi(&chart)?;
    let mut out = SuperPolynomial::zero(&chart);
    for ((du, dx), part) in f.bihomogeneous_components() {
        let nu = n + du as i64 - dx as i64;
        if nu == 0 {
            return Err(Error::NuZero(format!("component {part}")));
        }
        out += &(&phi * &part).scale(&Rational::new(1.into(), nu.into()));
    }
    Ok(out)
}

/// `D³_ξ = ∂_{ξ_1} ∘ ∂_{ξ_2} ∘ … ∘ ∂_{ξ_n}` (the last odd variable acts first).
pub fn d3xi(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    let chart = f.chart().clone();
    let vars: Vec<Var> = (0..chart.n_odd()).map(|j| chart.odd_var(j)).collect();
    f.partials(&vars)
}

/// Position of a generating function relative to `sle(n) ⊃ sle°(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SleClass {
    /// `Δf ≠ 0`.
    General,
    /// `Δf = 0` but `D³_ξ f ≠ 0`.
    Sle,
    /// `Δf = 0` and `D³_ξ f = 0`.
    SleDegree,
}

pub fn sle_classify(f: &SuperPolynomial) -> Result<SleClass> {
    let f = f.without_constant();
    if !delta(&f)?.is_zero() {
        Ok(SleClass::General)
    } else if !d3xi(&f)?.is_zero() {
        Ok(SleClass::Sle)
    } else {
        Ok(SleClass::SleDegree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use crate::{q, qi};

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s, &Chart::periplectic()).unwrap()
    }

    fn field(s: &str) -> SuperField {
        crate::text::parse_field(s, &Chart::periplectic(), &Default::default()).unwrap()
    }

    #[test]
    fn le_examples() {
        assert_eq!(le_field(&p("u1")).unwrap(), field("Dx1"));
        assert_eq!(le_field(&p("x1")).unwrap(), field("-Du1"));
        assert_eq!(le_field(&p("u1*x1")).unwrap(), field("x1*Dx1 - u1*Du1"));
        assert!(matches!(le_field(&p("u1 + x1")), Err(Error::MixedParity(_))));
    }

    #[test]
    fn bracket_examples() {
        assert!(buttin_bracket(&p("x1"), &p("x2")).unwrap().is_zero());
        assert_eq!(buttin_bracket(&p("u1*u2"), &p("x1")).unwrap(), p("u2"));
        assert_eq!(buttin_bracket(&p("u1*x1"), &p("u1")).unwrap(), p("-u1"));
        assert!(buttin_bracket(&p("u1 + x1"), &p("u1")).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&p("u1*x1")).unwrap(), p("1"));
        assert!(delta(&p("u1*x1")).unwrap().without_constant().is_zero());
        assert!(delta(&p("x1*x2*x3")).unwrap().is_zero());
        assert!(delta(&p("u1*x2")).unwrap().is_zero());
    }

    #[test]
    fn delta_inv_examples() {
        let r = delta_inv(&p("x1")).unwrap();
        assert_eq!(r, (&phi(&Chart::periplectic()).unwrap() * &p("x1")).scale(&q(1, 2)));
        assert_eq!(delta(&r).unwrap(), p("x1"));
        assert_eq!(delta_inv(&p("x1*x2")).unwrap(), p("u3*x1*x2*x3"));
        assert!(matches!(delta_inv(&p("x1*x2*x3")), Err(Error::NuZero(_))));
        assert_eq!(nu(&p("x1*x2*x3")), Some(0));
    }

    #[test]
    fn d3xi_examples() {
        assert_eq!(d3xi(&p("x1*x2*x3")).unwrap(), p("-1"));
        assert!(d3xi(&p("u1*x1*x2")).unwrap().is_zero());
        assert_eq!(d3xi(&p("u3*x1*x2*x3")).unwrap(), p("-u3"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(sle_classify(&p("x1")).unwrap(), SleClass::SleDegree);
        assert_eq!(sle_classify(&p("x1*x2*x3")).unwrap(), SleClass::Sle);
        assert_eq!(sle_classify(&p("u1*x1")).unwrap(), SleClass::General);
    }

    #[test]
    fn phi_times_harmonic_is_scaled() {
        // Δ(Φf) = ν(f) f
        let f = p("u1*x2 - u2*x1");
        assert!(delta(&f).unwrap().is_zero());
        let lhs = delta(&(&phi(&Chart::periplectic()).unwrap() * &f)).unwrap();
        assert_eq!(lhs, f.scale(&qi(nu(&f).unwrap())));
    }
}
