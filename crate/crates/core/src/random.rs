//! Seeded generators of random polynomials, fields and pairs for property checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exceptional::GluedPair;
use crate::superfield::SuperField;
use crate::superpoly::{monomials_of_bidegree, monomials_of_weight, Chart, Parity, SuperPolynomial};
use crate::{q, Rational};

/// A deterministic source of test data.
pub struct Sampler {
    rng: ChaCha8Rng,
    max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_terms: 4 }
    }

    /// Caps the number of terms per homogeneous piece.
    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = n.max(1);
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero rational with small numerator and denominator.
    pub fn coefficient(&mut self) -> Rational {
        let mut n = self.rng.gen_range(-4i64..=4);
        if n == 0 {
            n = 1;
        }
        let d = if self.rng.gen_bool(0.25) { self.rng.gen_range(2i64..=3) } else { 1 };
        q(n, d)
    }

    /// A random nonzero bihomogeneous polynomial, or zero when the bidegree is empty.
    pub fn bihomogeneous(&mut self, chart: &Arc<Chart>, du: u32, dx: u32) -> SuperPolynomial {
        let mons = monomials_of_bidegree(chart, du, dx);
        let k = self.rng.gen_range(1..=self.max_terms).min(mons.len());
        let chosen: Vec<_> = mons.choose_multiple(&mut self.rng, k).cloned().collect();
        let terms: Vec<_> = chosen.into_iter().map(|m| (m, self.coefficient())).collect();
        SuperPolynomial::from_terms(chart, terms)
    }

    /// A random generating function on the periplectic chart with `deg_u ≤ max_du`,
    /// bihomogeneous and never constant.
    pub fn generating_function(&mut self, max_du: u32) -> SuperPolynomial {
        let chart = Chart::periplectic();
        loop {
            let du = self.rng.gen_range(0..=max_du);
            let dx = self.rng.gen_range(0..=3);
            if du + dx == 0 {
                continue;
            }
            return self.bihomogeneous(&chart, du, dx);
        }
    }

    /// A bihomogeneous generating function with fixed `deg_ξ`.
    pub fn with_odd_degree(&mut self, max_du: u32, dx: u32) -> SuperPolynomial {
        let chart = Chart::periplectic();
        let lo = if dx == 0 { 1 } else { 0 };
        let du = self.rng.gen_range(lo..=max_du.max(lo));
        self.bihomogeneous(&chart, du, dx)
    }

    /// A parity-homogeneous generating function made of up to three bihomogeneous pieces.
    pub fn homogeneous(&mut self, parity: Parity, max_du: u32) -> SuperPolynomial {
        let chart = Chart::periplectic();
        let mut out = SuperPolynomial::zero(&chart);
        let pieces = self.rng.gen_range(1..=3);
        for _ in 0..pieces {
            let options: Vec<u32> = (0..=3).filter(|&d| Parity::from_count(d as usize) == parity).collect();
            let dx = *options.choose(&mut self.rng).unwrap();
            let lo = if dx == 0 { 1 } else { 0 };
            let du = self.rng.gen_range(lo..=max_du.max(lo));
            out += &self.bihomogeneous(&chart, du, dx);
        }
        out
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// A pair whose realization has the given parity.
    pub fn pair(&mut self, parity: Parity, max_du: u32) -> GluedPair {
        let slots = parity.flip();
        let f = if self.rng.gen_bool(0.8) { self.homogeneous(slots, max_du) } else { SuperPolynomial::zero(&Chart::periplectic()) };
        let g = if self.rng.gen_bool(0.8) { self.homogeneous(slots, max_du) } else { SuperPolynomial::zero(&Chart::periplectic()) };
        GluedPair::new(f, g)
    }

    /// A parity-homogeneous field with every coefficient of weight at most `max_weight`.
    pub fn field(&mut self, chart: &Arc<Chart>, parity: Parity, max_weight: i64) -> SuperField {
        let mut out = SuperField::zero(chart);
        let vars: Vec<_> = chart.vars().collect();
        let n = self.rng.gen_range(1..=3);
        for _ in 0..n {
            let v = *vars.choose(&mut self.rng).unwrap();
            let w = self.rng.gen_range(0..=max_weight);
            let want = parity + chart.parity(v);
            let mons: Vec<_> = monomials_of_weight(chart, w).into_iter().filter(|m| m.parity() == want).collect();
            if let Some(m) = mons.choose(&mut self.rng) {
                let c = SuperPolynomial::monomial(chart, m.clone(), self.coefficient());
                out = &out + &SuperField::term(c, v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = Sampler::new(7).generating_function(3);
        let b = Sampler::new(7).generating_function(3);
        assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_has_parity() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let p = s.parity();
            let f = s.homogeneous(p, 3);
            assert_eq!(f.parity().unwrap(), p);
            let d = s.field(&Chart::standard(), p, 2);
            if !d.is_zero() {
                assert_eq!(d.parity().unwrap(), p);
            }
        }
    }
}
