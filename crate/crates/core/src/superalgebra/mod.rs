//! Polynomials in commuting and Grassmann variables.

pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational;

use std::ops::Add;

use serde::{Deserialize, Serialize};

pub use monomial::{monomial_basis, SuperMonomial, Var};
pub use parse::{parse_in, parse_polynomial};
pub use polynomial::{MonomialBasis, SuperPolynomial};
pub use rational::{binomial, Rational};

use crate::error::{Error, Result};

/// The Z2-degree of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(-1)^(self * other)` as a boolean "is negative".
    pub fn sign_with(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

impl From<usize> for Parity {
    fn from(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from(self.bit() + rhs.bit())
    }
}

/// `R^{m|2n}`: `m` commuting and `2n` Grassmann coordinates.
///
/// Coordinates are also addressed by a unified 0-based index
/// `X_0 .. X_{m+2n-1}`: the first `m` are `x_i`, the rest `xg_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Superspace {
    pub m: usize,
    pub n: usize,
}

impl Superspace {
    pub fn new(m: usize, n: usize) -> Self {
        assert!(2 * n <= monomial::MAX_FERMIONS, "too many Grassmann variables");
        Superspace { m, n }
    }

    /// Total number of coordinates `m + 2n`.
    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    /// Superdimension `M = m - 2n`.
    pub fn superdim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Whether `M ∈ {0, -2, -4, ...}`.
    pub fn degenerate(&self) -> bool {
        let big_m = self.superdim();
        big_m <= 0 && big_m % 2 == 0
    }

    pub fn var(&self, u: usize) -> Result<Var> {
        if u < self.m {
            Ok(Var::Bos(u))
        } else if u < self.dim() {
            Ok(Var::Ferm(u - self.m))
        } else {
            Err(Error::IndexOutOfRange { index: u, bound: self.dim() })
        }
    }

    pub fn parity(&self, u: usize) -> Parity {
        if u < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn coordinate(&self, u: usize) -> SuperPolynomial {
        SuperPolynomial::var(self.var(u).expect("coordinate index in range"))
    }

    pub fn basis(&self, k: usize) -> MonomialBasis {
        MonomialBasis::new(self.m, self.n, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_homogeneous(m: usize, n: usize) -> impl Strategy<Value = SuperPolynomial> {
        (0usize..=4, proptest::collection::vec((any::<u16>(), -5i64..=5), 1..6)).prop_map(move |(k, picks)| {
            let basis = monomial_basis(m, n, k);
            SuperPolynomial::from_terms(
                picks
                    .into_iter()
                    .map(|(i, c)| (basis[i as usize % basis.len()].clone(), Rational::from_integer(c))),
            )
        })
    }

    fn parity_part(p: &SuperPolynomial, par: Parity) -> SuperPolynomial {
        p.filter(|mo| mo.parity() == par)
    }

    fn sign(neg: bool) -> Rational {
        Rational::from_integer(if neg { -1 } else { 1 })
    }

    #[test]
    fn sign_examples() {
        let g1 = SuperPolynomial::xg(0);
        let g2 = SuperPolynomial::xg(1);
        assert!((&g1 * &g1).is_zero());
        assert_eq!(&g2 * &g1, -(&g1 * &g2));
        let x1 = SuperPolynomial::x(0);
        assert_eq!(&(&x1 + &g1) * &(&x1 - &g1), &x1 * &x1);
        let top = &g1 * &g2;
        assert_eq!(top.partial(Var::Ferm(0)), g2);
        assert_eq!(top.partial(Var::Ferm(1)), -&g1);
        assert_eq!((&x1 * &x1).partial(Var::Bos(0)), x1.scale(&Rational::from(2)));
    }

    #[test]
    fn homogeneous_components() {
        let p: SuperPolynomial = "1 + x1 + xg1*xg2".parse().unwrap();
        assert_eq!(p.homogeneous_component(2).to_string(), "xg1*xg2");
        let q: SuperPolynomial = "x1^2".parse().unwrap();
        assert!(q.homogeneous_component(1).is_zero());
        let r2: SuperPolynomial = "x1^2 + x2^2 - xg1*xg2".parse().unwrap();
        assert_eq!(r2.homogeneous_component(2), r2);
    }

    #[test]
    fn fermionic_derivatives_anticommute() {
        for k in 0..=4 {
            for mono in monomial_basis(1, 2, k) {
                let p = SuperPolynomial::term(mono, Rational::from(1));
                for i in 0..4 {
                    for j in 0..4 {
                        let a = p.partial(Var::Ferm(j)).partial(Var::Ferm(i));
                        let b = p.partial(Var::Ferm(i)).partial(Var::Ferm(j));
                        assert_eq!(a, -b);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn graded_commutative_and_associative(
            f in arb_homogeneous(2, 2),
            g in arb_homogeneous(2, 2),
            h in arb_homogeneous(2, 2),
        ) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            for pf in [Parity::Even, Parity::Odd] {
                for pg in [Parity::Even, Parity::Odd] {
                    let a = parity_part(&f, pf);
                    let b = parity_part(&g, pg);
                    prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(pf.sign_with(pg))));
                }
            }
        }

        #[test]
        fn graded_leibniz(f in arb_homogeneous(2, 2), g in arb_homogeneous(2, 2), v in 0usize..6) {
            let var = Superspace::new(2, 2).var(v).unwrap();
            for pf in [Parity::Even, Parity::Odd] {
                let a = parity_part(&f, pf);
                let lhs = (&a * &g).partial(var);
                let rhs = &(&a.partial(var) * &g)
                    + &(&a * &g.partial(var)).scale(&sign(var.parity().sign_with(pf)));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn display_parse_round_trip(f in arb_homogeneous(3, 2), g in arb_homogeneous(3, 2)) {
            let p = &f + &g.scale(&Rational::new(-3, 7));
            let back: SuperPolynomial = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn components_sum_back(f in arb_homogeneous(2, 1), g in arb_homogeneous(2, 1)) {
            let p = &f + &g;
            let total: SuperPolynomial = p.homogeneous_components().into_values().sum();
            prop_assert_eq!(total, p);
        }
    }
}
