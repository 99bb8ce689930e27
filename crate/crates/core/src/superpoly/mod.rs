//! Supercommutative polynomial rings in even and odd indeterminates.

mod monomial;
mod poly;

pub use monomial::{monomials_of_bidegree, monomials_of_weight, Monomial};
pub use poly::SuperPolynomial;

use std::fmt;
use std::ops::Add;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Z/2 grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u32 {
        self as u32
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    /// `(-1)^p`.
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// `(-1)^(p q)`, the sign picked up when transposing objects of parities `p` and `q`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A coordinate of a [`Chart`], identified by its position: even variables first, then odd ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An ordered list of named even and odd coordinates together with integer grading weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    even: Vec<String>,
    odd: Vec<String>,
    weights: Vec<i64>,
}

static STANDARD: OnceLock<Arc<Chart>> = OnceLock::new();
static PERIPLECTIC: OnceLock<Arc<Chart>> = OnceLock::new();

impl Chart {
    /// Builds a chart with all weights equal to 1.
    pub fn new<S: AsRef<str>>(even: &[S], odd: &[S]) -> Result<Arc<Chart>> {
        let even: Vec<String> = even.iter().map(|s| s.as_ref().to_string()).collect();
        let odd: Vec<String> = odd.iter().map(|s| s.as_ref().to_string()).collect();
        if odd.len() > 32 {
            return Err(Error::Inconsistent("at most 32 odd variables are supported".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in even.iter().chain(odd.iter()) {
            if !seen.insert(name.as_str()) {
                return Err(Error::Inconsistent(format!("duplicate variable name `{name}`")));
            }
        }
        let weights = vec![1; even.len() + odd.len()];
        Ok(Arc::new(Chart { even, odd, weights }))
    }

    /// The `(4|3)` chart `(u1, u2, u3, y | x1, x2, x3)`, where `x_i` stands for `ξ_i`.
    pub fn standard() -> Arc<Chart> {
        STANDARD
            .get_or_init(|| Chart::new(&["u1", "u2", "u3", "y"], &["x1", "x2", "x3"]).unwrap())
            .clone()
    }

    /// The `(3|3)` periplectic chart `(u1, u2, u3 | x1, x2, x3)` carrying generating functions.
    pub fn periplectic() -> Arc<Chart> {
        PERIPLECTIC
            .get_or_init(|| Chart::new(&["u1", "u2", "u3"], &["x1", "x2", "x3"]).unwrap())
            .clone()
    }

    /// A copy of this chart with other grading weights (ordered like the variables).
    pub fn with_weights(&self, weights: Vec<i64>) -> Result<Arc<Chart>> {
        if weights.len() != self.n_vars() {
            return Err(Error::Inconsistent(format!(
                "{} weights given for {} variables",
                weights.len(),
                self.n_vars()
            )));
        }
        Ok(Arc::new(Chart { weights, ..self.clone() }))
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn n_vars(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.n_vars()).map(Var)
    }

    pub fn even_var(&self, i: usize) -> Var {
        assert!(i < self.n_even());
        Var(i)
    }

    pub fn odd_var(&self, j: usize) -> Var {
        assert!(j < self.n_odd());
        Var(self.n_even() + j)
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.find(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn find(&self, name: &str) -> Option<Var> {
        self.even
            .iter()
            .chain(self.odd.iter())
            .position(|n| n == name)
            .map(Var)
    }

    pub fn name(&self, v: Var) -> &str {
        if v.0 < self.n_even() {
            &self.even[v.0]
        } else {
            &self.odd[v.0 - self.n_even()]
        }
    }

    pub fn parity(&self, v: Var) -> Parity {
        if v.0 < self.n_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Position of an odd variable among the odd ones.
    pub fn odd_slot(&self, v: Var) -> Option<usize> {
        v.0.checked_sub(self.n_even()).filter(|&j| j < self.n_odd())
    }

    pub fn weight(&self, v: Var) -> i64 {
        self.weights[v.0]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    /// Same variables (names and parities); weights are not compared.
    pub fn same_vars(&self, other: &Chart) -> bool {
        std::ptr::eq(self, other) || (self.even == other.even && self.odd == other.odd)
    }

    pub fn describe(&self) -> String {
        format!("({} | {})", self.even.join(","), self.odd.join(","))
    }
}

pub(crate) fn check_chart(a: &Chart, b: &Chart) -> Result<()> {
    if a.same_vars(b) {
        Ok(())
    } else {
        Err(Error::ChartMismatch { left: a.describe(), right: b.describe() })
    }
}
