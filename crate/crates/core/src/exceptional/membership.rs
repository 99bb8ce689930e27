use std::fmt;

use crate::error::Result;
use crate::superfield::SuperField;
use crate::superpoly::{Chart, Parity, SuperPolynomial};
use crate::Rational;

use super::embed::CYCLIC;

/// Which algebra to test against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Cvect,
    Vect,
}

/// The seven defining equations, in order.
///
/// `P_i`, `Q_i`, `R` are the `∂_{ξ_i}`, `∂_{u_i}`, `∂_y` coefficients and `s = (-1)^{p(D)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    /// `∂Q_i/∂u_j + s ∂P_j/∂ξ_i = 0` for `i ≠ j`.
    OffDiagonal,
    /// `∂Q_i/∂u_i + s ∂P_i/∂ξ_i = ½(Σ_j ∂Q_j/∂u_j + ∂R/∂y)`.
    Diagonal,
    /// `∂Q_i/∂ξ_j + ∂Q_j/∂ξ_i = 0`.
    OddSymmetric,
    /// `∂P_i/∂u_j - ∂P_j/∂u_i + s ∂R/∂ξ_k = 0` for cyclic `(i, j, k)`.
    Curl,
    /// `∂Q_i/∂y = 0`.
    YFree,
    /// `∂P_k/∂y = s·½(∂Q_i/∂ξ_j - ∂Q_j/∂ξ_i)` for cyclic `(i, j, k)`.
    OddCurl,
    /// `∂R/∂y - Σ ∂Q_i/∂u_i = 0`, only for [`Variant::Vect`].
    Trace,
}

impl Equation {
    pub const ALL: [Equation; 7] = [
        Equation::OffDiagonal,
        Equation::Diagonal,
        Equation::OddSymmetric,
        Equation::Curl,
        Equation::YFree,
        Equation::OddCurl,
        Equation::Trace,
    ];

    /// One-based position in [`Equation::ALL`].
    pub fn number(self) -> usize {
        Equation::ALL.iter().position(|&e| e == self).unwrap() + 1
    }

    pub fn label(self) -> &'static str {
        match self {
            Equation::OffDiagonal => "off-diagonal",
            Equation::Diagonal => "diagonal",
            Equation::OddSymmetric => "odd-symmetric",
            Equation::Curl => "curl",
            Equation::YFree => "y-free",
            Equation::OddCurl => "odd-curl",
            Equation::Trace => "trace",
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{} ({})", self.number(), self.label())
    }
}

/// A nonzero residual of one equation instance, with 1-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub equation: Equation,
    pub indices: Vec<usize>,
    pub residual: SuperPolynomial,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}[{}] residual {}", self.equation, idx.join(","), self.residual)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub variant: Variant,
    pub parity: Parity,
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct violated equations in order.
    pub fn violated(&self) -> Vec<Equation> {
        let mut out: Vec<Equation> = self.violations.iter().map(|v| v.equation).collect();
        out.dedup();
        out
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_member() {
            return write!(f, "member");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "violates {}", parts.join("; "))
    }
}

/// Checks a parity-homogeneous field on the standard chart against the defining system.
pub fn membership(d: &SuperField, variant: Variant) -> Result<MembershipReport> {
    let chart = Chart::standard();
    let d = d.embed(&chart)?;
    let parity = d.parity()?;
    let s = Rational::from_integer(parity.sign().into());
    let half = Rational::new(1.into(), 2.into());
    let u = |i: usize| chart.even_var(i);
    let xi = |i: usize| chart.odd_var(i);
    let y = chart.var("y")?;
    let q = |i: usize| d.component(u(i));
    let p = |i: usize| d.component(xi(i));
    let r = d.component(y);

    let mut violations = Vec::new();
    let mut push = |equation: Equation, indices: Vec<usize>, residual: SuperPolynomial| {
        if !residual.is_zero() {
            violations.push(Violation { equation, indices, residual });
        }
    };

    let trace = (0..3).fold(SuperPolynomial::zero(&chart), |acc, j| &acc + &q(j).partial(u(j)).unwrap());
    let r_y = r.partial(y)?;

    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let res = &q(i).partial(u(j))? + &p(j).partial(xi(i))?.scale(&s);
                push(Equation::OffDiagonal, vec![i + 1, j + 1], res);
            }
        }
    }
    for i in 0..3 {
        let lhs = &q(i).partial(u(i))? + &p(i).partial(xi(i))?.scale(&s);
        let rhs = (&trace + &r_y).scale(&half);
        push(Equation::Diagonal, vec![i + 1], &lhs - &rhs);
    }
    for i in 0..3 {
        for j in i..3 {
            let res = &q(i).partial(xi(j))? + &q(j).partial(xi(i))?;
            push(Equation::OddSymmetric, vec![i + 1, j + 1], res);
        }
    }
    for (i, j, k) in CYCLIC {
        let res = &(&p(i).partial(u(j))? - &p(j).partial(u(i))?) + &r.partial(xi(k))?.scale(&s);
        push(Equation::Curl, vec![i + 1, j + 1, k + 1], res);
    }
    for i in 0..3 {
        push(Equation::YFree, vec![i + 1], q(i).partial(y)?);
    }
    for (i, j, k) in CYCLIC {
        let rhs = (&q(i).partial(xi(j))? - &q(j).partial(xi(i))?).scale(&(&s * &half));
        push(Equation::OddCurl, vec![i + 1, j + 1, k + 1], &p(k).partial(y)? - &rhs);
    }
    if variant == Variant::Vect {
        push(Equation::Trace, vec![], &r_y - &trace);
    }
    Ok(MembershipReport { variant, parity, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{euler_field, simplicity_witness};
    use crate::text::parse_field;

    fn field(s: &str) -> SuperField {
        parse_field(s, &Chart::standard(), &Default::default()).unwrap()
    }

    #[test]
    fn euler_field_is_cvect_not_vect() {
        let d = euler_field();
        assert!(membership(&d, Variant::Cvect).unwrap().is_member());
        let v = membership(&d, Variant::Vect).unwrap();
        assert_eq!(v.violated(), vec![Equation::Trace]);
        assert_eq!(v.violations[0].residual, SuperPolynomial::constant(&Chart::standard(), Rational::from_integer((-2).into())));
    }

    #[test]
    fn witness_is_member() {
        assert!(membership(&simplicity_witness(), Variant::Cvect).unwrap().is_member());
    }

    #[test]
    fn odd_shift_of_u_fails_odd_symmetry() {
        let r = membership(&field("x1*Du1"), Variant::Cvect).unwrap();
        assert_eq!(r.violated(), vec![Equation::OddSymmetric]);
    }

    #[test]
    fn mixed_parity_is_rejected() {
        assert!(membership(&field("Du1 + Dx1"), Variant::Cvect).is_err());
    }
}
