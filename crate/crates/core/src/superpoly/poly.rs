use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::{check_chart, Chart, Monomial, Parity, Var};
use crate::error::{Error, Result};
use crate::Rational;

/// An element of the supercommutative polynomial ring of a [`Chart`] with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct SuperPolynomial {
    chart: Arc<Chart>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for SuperPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.chart.same_vars(&other.chart) && self.terms == other.terms
    }
}

impl Eq for SuperPolynomial {}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl SuperPolynomial {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        SuperPolynomial { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Arc<Chart>, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        add_term(&mut p.terms, Monomial::one(chart.n_even()), c);
        p
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn var(chart: &Arc<Chart>, v: Var) -> Self {
        let mut exps: SmallVec<[u16; 4]> = SmallVec::from_elem(0, chart.n_even());
        let mut mask = 0;
        match chart.odd_slot(v) {
            Some(j) => mask = 1 << j,
            None => exps[v.index()] = 1,
        }
        Self::monomial(chart, Monomial::new(&exps, mask), Rational::one())
    }

    /// The variable with the given name.
    pub fn named(chart: &Arc<Chart>, name: &str) -> Result<Self> {
        Ok(Self::var(chart, chart.var(name)?))
    }

    pub fn monomial(chart: &Arc<Chart>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.n_even(), chart.n_even(), "monomial does not fit the chart");
        let mut p = Self::zero(chart);
        add_term(&mut p.terms, m, c);
        p
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(chart: &Arc<Chart>, terms: I) -> Self {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.n_even(), chart.n_even(), "monomial does not fit the chart");
            add_term(&mut p.terms, m, c);
        }
        p
    }

    /// Exact linear combination `Σ c_k p_k`.
    pub fn combine(chart: &Arc<Chart>, terms: &[(Rational, &SuperPolynomial)]) -> Result<Self> {
        let mut out = Self::zero(chart);
        for (c, p) in terms {
            check_chart(chart, &p.chart)?;
            for (m, a) in &p.terms {
                add_term(&mut out.terms, m.clone(), c * a);
            }
        }
        Ok(out)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.chart.n_even()))
    }

    pub fn without_constant(&self) -> Self {
        self.filter(|m| !m.is_one())
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        SuperPolynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        SuperPolynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_chart(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_chart(&self.chart, &other.chart)?;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    add_term(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        Ok(SuperPolynomial { chart: self.chart.clone(), terms: out })
    }

    /// Left partial derivative. For an odd variable the factor is first moved to the
    /// front of each monomial, so `∂_v(fg) = (∂_v f)g + (-1)^{p(f)} f ∂_v g`.
    pub fn partial(&self, v: Var) -> Result<Self> {
        if v.index() >= self.chart.n_vars() {
            return Err(Error::UnknownVariable(format!("#{}", v.index())));
        }
        let mut out = BTreeMap::new();
        match self.chart.odd_slot(v) {
            Some(j) => {
                for (m, c) in &self.terms {
                    if let Some((neg, q)) = m.d_odd(j) {
                        add_term(&mut out, q, if neg { -c.clone() } else { c.clone() });
                    }
                }
            }
            None => {
                for (m, c) in &self.terms {
                    if let Some((e, q)) = m.d_even(v.index()) {
                        add_term(&mut out, q, c * Rational::from_integer(e.into()));
                    }
                }
            }
        }
        Ok(SuperPolynomial { chart: self.chart.clone(), terms: out })
    }

    /// Partial derivative by variable name.
    pub fn partial_by(&self, name: &str) -> Result<Self> {
        self.partial(self.chart.var(name)?)
    }

    /// Applies `∂_{v_1} ∘ ∂_{v_2} ∘ … ∘ ∂_{v_k}`: the last variable acts first.
    pub fn partials(&self, vars: &[Var]) -> Result<Self> {
        let mut out = self.clone();
        for &v in vars.iter().rev() {
            out = out.partial(v)?;
        }
        Ok(out)
    }

    /// The parity of a homogeneous polynomial; zero counts as even.
    pub fn parity(&self) -> Result<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = match it.next() {
            Some(p) => p,
            None => return Ok(Parity::Even),
        };
        if it.all(|p| p == first) {
            Ok(first)
        } else {
            Err(Error::MixedParity(format!("polynomial {self}")))
        }
    }

    /// Even and odd parts.
    pub fn parity_parts(&self) -> (Self, Self) {
        (self.filter(|m| m.parity() == Parity::Even), self.filter(|m| m.parity() == Parity::Odd))
    }

    /// Parity and bidegree `(deg_u, deg_ξ)` when the polynomial is bihomogeneous.
    /// Every even variable counts towards `deg_u`.
    pub fn bidegree(&self) -> Option<(Parity, u32, u32)> {
        let mut it = self.terms.keys().map(|m| (m.deg_even(), m.deg_odd()));
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some((Parity::from_count(first.1 as usize), first.0, first.1))
        } else {
            None
        }
    }

    /// Decomposition into bihomogeneous components keyed by `(deg_u, deg_ξ)`.
    pub fn bihomogeneous_components(&self) -> BTreeMap<(u32, u32), Self> {
        let mut out: BTreeMap<(u32, u32), Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.deg_even(), m.deg_odd()))
                .or_insert_with(|| Self::zero(&self.chart))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Components keyed by `deg_ξ`.
    pub fn odd_degree_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.deg_odd()).or_insert_with(|| Self::zero(&self.chart)).terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Components keyed by weighted degree.
    pub fn weight_components(&self, weights: &[i64]) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(weights)).or_insert_with(|| Self::zero(&self.chart)).terms.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Rewrites the polynomial on another chart, matching variables by name.
    pub fn embed(&self, target: &Arc<Chart>) -> Result<Self> {
        if self.chart.same_vars(target) {
            return Ok(SuperPolynomial { chart: target.clone(), terms: self.terms.clone() });
        }
        let even_map = self
            .chart
            .even_names()
            .iter()
            .map(|n| target.find(n).filter(|v| target.parity(*v) == Parity::Even).map(Var::index))
            .collect::<Vec<_>>();
        let odd_map = self
            .chart
            .odd_names()
            .iter()
            .map(|n| target.find(n).and_then(|v| target.odd_slot(v)))
            .collect::<Vec<_>>();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[u16; 4]> = SmallVec::from_elem(0, target.n_even());
            for (i, &e) in m.even_exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let t = even_map[i].ok_or_else(|| Error::UnknownVariable(self.chart.even_names()[i].clone()))?;
                exps[t] = e;
            }
            // Odd factors keep their relative order only if the target preserves it.
            let mut factors = Vec::new();
            let mut mask = m.odd_mask();
            while mask != 0 {
                let j = mask.trailing_zeros() as usize;
                let t = odd_map[j].ok_or_else(|| Error::UnknownVariable(self.chart.odd_names()[j].clone()))?;
                factors.push(t);
                mask &= mask - 1;
            }
            let mut negative = false;
            for a in 0..factors.len() {
                for b in a + 1..factors.len() {
                    if factors[a] > factors[b] {
                        negative = !negative;
                    }
                }
            }
            let odd = factors.iter().fold(0u32, |acc, &t| acc | (1 << t));
            add_term(&mut out.terms, Monomial::new(&exps, odd), if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Sets the named variable to zero.
    pub fn at_zero(&self, v: Var) -> Self {
        match self.chart.odd_slot(v) {
            Some(j) => self.filter(|m| m.odd_mask() & (1 << j) == 0),
            None => self.filter(|m| m.even_exponents()[v.index()] == 0),
        }
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_add(rhs).expect("chart mismatch in addition")
    }
}

impl Add for SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(mut self, rhs: SuperPolynomial) -> SuperPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&SuperPolynomial> for SuperPolynomial {
    fn add_assign(&mut self, rhs: &SuperPolynomial) {
        check_chart(&self.chart, &rhs.chart).expect("chart mismatch in addition");
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl SubAssign<&SuperPolynomial> for SuperPolynomial {
    fn sub_assign(&mut self, rhs: &SuperPolynomial) {
        check_chart(&self.chart, &rhs.chart).expect("chart mismatch in subtraction");
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), -c.clone());
        }
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(mut self, rhs: SuperPolynomial) -> SuperPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        -&self
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_mul(rhs).expect("chart mismatch in multiplication")
    }
}

impl Mul for SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: SuperPolynomial) -> SuperPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    fn p(name: &str) -> SuperPolynomial {
        SuperPolynomial::named(&Chart::standard(), name).unwrap()
    }

    #[test]
    fn combine_examples() {
        let c = Chart::standard();
        let x1 = p("x1");
        assert_eq!(
            SuperPolynomial::combine(&c, &[(qi(1), &x1), (qi(1), &x1)]).unwrap(),
            x1.scale(&qi(2))
        );
        let a = &p("x1") * &p("x2");
        let b = &p("x2") * &p("x1");
        assert!(SuperPolynomial::combine(&c, &[(qi(1), &a), (qi(1), &b)]).unwrap().is_zero());
        let u1 = p("u1");
        assert!(SuperPolynomial::combine(&c, &[(q(1, 2), &u1), (q(-1, 2), &u1)]).unwrap().is_zero());
        let other = SuperPolynomial::named(&Chart::periplectic(), "u1").unwrap();
        let small = Chart::new(&["u1"], &["x1"]).unwrap();
        assert!(matches!(
            SuperPolynomial::combine(&small, &[(qi(1), &other)]),
            Err(Error::ChartMismatch { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x2") * &p("x1"), -(&p("x1") * &p("x2")));
        assert!((&(&p("x1") * &p("x2")) * &p("x1")).is_zero());
        let a = &p("u1") + &p("x1");
        let b = &p("u1") - &p("x1");
        assert_eq!(&a * &b, &p("u1") * &p("u1"));
    }

    #[test]
    fn partial_examples() {
        let f = &(&p("u1") * &p("u1")) * &p("x3");
        assert_eq!(f.partial_by("u1").unwrap(), (&p("u1") * &p("x3")).scale(&qi(2)));
        let g = &p("x1") * &p("x2");
        assert_eq!(g.partial_by("x2").unwrap(), -p("x1"));
        let h = &g * &p("x3");
        assert_eq!(h.partial_by("x1").unwrap(), &p("x2") * &p("x3"));
        assert!(matches!(h.partial_by("z9"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn grading_examples() {
        let f = &(&p("u1") * &p("x2")) * &p("x3");
        assert_eq!(f.bidegree(), Some((Parity::Even, 1, 2)));
        let mixed = &p("u1") + &p("x1");
        assert!(mixed.parity().is_err());
        assert_eq!(mixed.bidegree(), None);
        let comps: Vec<_> = mixed.bihomogeneous_components().into_values().collect();
        assert_eq!(comps, vec![p("x1"), p("u1")]);
        let y2x1 = &(&p("y") * &p("y")) * &p("x1");
        assert_eq!(y2x1.bidegree(), Some((Parity::Odd, 2, 1)));
    }

    #[test]
    fn embed_preserves_products() {
        let small = Chart::periplectic();
        let f = &SuperPolynomial::named(&small, "x2").unwrap() * &SuperPolynomial::named(&small, "x1").unwrap();
        let big = f.embed(&Chart::standard()).unwrap();
        assert_eq!(big, &p("x2") * &p("x1"));
        assert!(p("y").embed(&small).is_err());
    }
}
