use std::cmp::Ordering;

use smallvec::SmallVec;

use super::{Chart, Parity};

/// A product of powers of even variables and distinct odd variables.
///
/// The odd factors are kept in ascending index order; the sign produced by
/// reordering is carried by the coefficient of the enclosing polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 4]>,
    odd: u32,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, n_even), odd: 0 }
    }

    pub fn new(exps: &[u16], odd_mask: u32) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), odd: odd_mask }
    }

    pub fn even_exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Bit `j` is set when the `j`-th odd variable divides the monomial.
    pub fn odd_mask(&self) -> u32 {
        self.odd
    }

    pub fn n_even(&self) -> usize {
        self.exps.len()
    }

    pub fn deg_even(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn deg_odd(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn degree(&self) -> u32 {
        self.deg_even() + self.deg_odd()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.count_ones() as usize)
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Weighted degree with even weights followed by odd weights.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        let n = self.exps.len();
        let mut w: i64 = self.exps.iter().zip(weights).map(|(&e, &wt)| e as i64 * wt).sum();
        let mut mask = self.odd;
        while mask != 0 {
            let j = mask.trailing_zeros() as usize;
            w += weights[n + j];
            mask &= mask - 1;
        }
        w
    }

    /// Product of two monomials: `None` if an odd variable repeats, otherwise the
    /// reordering sign (`true` for negative) and the canonical monomial.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let negative = reorder_sign(self.odd, other.odd);
        let exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Some((negative, Monomial { exps, odd: self.odd | other.odd }))
    }

    /// Derivative by the `i`-th even variable: multiplicity and quotient.
    pub fn d_even(&self, i: usize) -> Option<(u16, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        Some((e, m))
    }

    /// Left derivative by the `j`-th odd variable: the factor is moved to the front
    /// before it is removed. Returns the sign (`true` for negative) and quotient.
    pub fn d_odd(&self, j: usize) -> Option<(bool, Monomial)> {
        let bit = 1u32 << j;
        if self.odd & bit == 0 {
            return None;
        }
        let before = (self.odd & (bit - 1)).count_ones();
        let mut m = self.clone();
        m.odd &= !bit;
        Some((before % 2 == 1, m))
    }
}

/// Parity of the number of transpositions needed to sort `a·b` (both ascending).
pub(crate) fn reorder_sign(a: u32, b: u32) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        let above = if t >= 31 { 0 } else { a >> (t + 1) };
        count += above.count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree, then even exponents in chart order,
    /// then odd factors in index order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| {
                let n = 32 - (self.odd | other.odd).leading_zeros();
                for j in 0..n {
                    let a = (self.odd >> j) & 1;
                    let b = (other.odd >> j) & 1;
                    if a != b {
                        return a.cmp(&b);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn exponent_vectors(weights: &[i64], target: i64, out: &mut Vec<Vec<u16>>, prefix: &mut Vec<u16>) {
    if prefix.len() == weights.len() {
        if target == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let w = weights[prefix.len()];
    let mut e = 0u16;
    while i64::from(e) * w <= target {
        prefix.push(e);
        exponent_vectors(weights, target - i64::from(e) * w, out, prefix);
        prefix.pop();
        e += 1;
    }
}

/// Every monomial with the given weighted degree, in ascending order.
/// The weights must be positive.
pub fn monomials_of_weight(chart: &Chart, weight: i64) -> Vec<Monomial> {
    let (even_w, odd_w) = chart.weights().split_at(chart.n_even());
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << chart.n_odd()) {
        let odd: i64 = (0..chart.n_odd()).filter(|j| mask & (1 << j) != 0).map(|j| odd_w[j]).sum();
        if odd > weight {
            continue;
        }
        let mut exps = Vec::new();
        exponent_vectors(even_w, weight - odd, &mut exps, &mut Vec::new());
        out.extend(exps.iter().map(|e| Monomial::new(e, mask)));
    }
    out.sort();
    out
}

/// Every monomial with `deg_even = du` and `deg_odd = dx`, in ascending order.
pub fn monomials_of_bidegree(chart: &Chart, du: u32, dx: u32) -> Vec<Monomial> {
    let ones = vec![1; chart.n_even()];
    let mut exps = Vec::new();
    exponent_vectors(&ones, i64::from(du), &mut exps, &mut Vec::new());
    let mut out = Vec::new();
    for mask in (0u32..(1u32 << chart.n_odd())).filter(|m| m.count_ones() == dx) {
        out.extend(exps.iter().map(|e| Monomial::new(e, mask)));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_factors_anticommute() {
        let x1 = Monomial::new(&[0, 0], 0b01);
        let x2 = Monomial::new(&[0, 0], 0b10);
        let (neg, m) = x2.mul(&x1).unwrap();
        assert!(neg);
        assert_eq!(m.odd_mask(), 0b11);
        let (neg, _) = x1.mul(&x2).unwrap();
        assert!(!neg);
        assert!(x1.mul(&m).is_none());
    }

    #[test]
    fn left_derivative_sign() {
        let m = Monomial::new(&[0], 0b111);
        assert_eq!(m.d_odd(0).unwrap(), (false, Monomial::new(&[0], 0b110)));
        assert_eq!(m.d_odd(1).unwrap(), (true, Monomial::new(&[0], 0b101)));
        assert_eq!(m.d_odd(2).unwrap(), (false, Monomial::new(&[0], 0b011)));
    }

    #[test]
    fn reorder_sign_counts_inversions() {
        // x3 * x1 x2 -> two transpositions
        assert!(!reorder_sign(0b100, 0b011));
        // x2 x3 * x1 -> two transpositions
        assert!(!reorder_sign(0b110, 0b001));
        // x2 * x1 -> one
        assert!(reorder_sign(0b10, 0b01));
    }

    #[test]
    fn grlex_order() {
        let u1sq = Monomial::new(&[2, 0], 0);
        let u1u2 = Monomial::new(&[1, 1], 0);
        let u2 = Monomial::new(&[0, 1], 0);
        assert!(u1sq > u1u2);
        assert!(u1u2 > u2);
    }
}
