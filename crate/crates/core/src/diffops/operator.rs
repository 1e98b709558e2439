use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::linalg::SparseMatrix;
use crate::superalgebra::{MonomialBasis, Rational, SuperPolynomial, Var};

/// A linear endomorphism of the polynomial superalgebra, as an expression
/// tree over multiplication, differentiation and scalars.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearOperator {
    /// Left multiplication by a polynomial.
    MultiplyBy(SuperPolynomial),
    /// Left partial derivative.
    Differentiate(Var),
    Scale(Rational),
    Add(Vec<LinearOperator>),
    /// `Compose([A, B, C])` is `A ∘ B ∘ C`: `C` acts first.
    Compose(Vec<LinearOperator>),
}

impl LinearOperator {
    pub fn identity() -> Self {
        LinearOperator::Scale(Rational::one())
    }

    pub fn zero() -> Self {
        LinearOperator::Add(Vec::new())
    }

    pub fn scalar(c: impl Into<Rational>) -> Self {
        LinearOperator::Scale(c.into())
    }

    pub fn mul_by(p: SuperPolynomial) -> Self {
        LinearOperator::MultiplyBy(p)
    }

    pub fn d(v: Var) -> Self {
        LinearOperator::Differentiate(v)
    }

    pub fn sum<I: IntoIterator<Item = LinearOperator>>(ops: I) -> Self {
        LinearOperator::Add(ops.into_iter().collect())
    }

    pub fn scaled(self, c: impl Into<Rational>) -> Self {
        let c = c.into();
        if c.is_one() {
            self
        } else {
            LinearOperator::Scale(c) * self
        }
    }

    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        if f.is_zero() {
            return SuperPolynomial::zero();
        }
        match self {
            LinearOperator::MultiplyBy(p) => p * f,
            LinearOperator::Differentiate(v) => f.partial(*v),
            LinearOperator::Scale(c) => f.scale(c),
            LinearOperator::Add(ops) => ops.iter().map(|op| op.apply(f)).sum(),
            LinearOperator::Compose(ops) => {
                let mut acc = f.clone();
                for op in ops.iter().rev() {
                    acc = op.apply(&acc);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
        }
    }

    /// True for operators that are zero by construction (empty sums,
    /// multiplication by 0, ...).
    pub fn is_trivially_zero(&self) -> bool {
        match self {
            LinearOperator::MultiplyBy(p) => p.is_zero(),
            LinearOperator::Differentiate(_) => false,
            LinearOperator::Scale(c) => c.is_zero(),
            LinearOperator::Add(ops) => ops.iter().all(|op| op.is_trivially_zero()),
            LinearOperator::Compose(ops) => ops.iter().any(|op| op.is_trivially_zero()),
        }
    }

    /// Change of total degree, if the operator is homogeneous.
    pub fn degree_shift(&self) -> Option<i64> {
        if self.is_trivially_zero() {
            return Some(0);
        }
        match self {
            LinearOperator::MultiplyBy(p) => {
                if p.is_zero() {
                    Some(0)
                } else if p.is_homogeneous() {
                    p.degree().map(|d| d as i64)
                } else {
                    None
                }
            }
            LinearOperator::Differentiate(_) => Some(-1),
            LinearOperator::Scale(_) => Some(0),
            LinearOperator::Add(ops) => {
                let mut shifts = ops.iter().filter(|op| !op.is_trivially_zero()).map(|op| op.degree_shift());
                match shifts.next() {
                    None => Some(0),
                    Some(first) => {
                        let first = first?;
                        for s in shifts {
                            if s? != first {
                                return None;
                            }
                        }
                        Some(first)
                    }
                }
            }
            LinearOperator::Compose(ops) => ops.iter().map(|op| op.degree_shift()).sum(),
        }
    }

    /// Matrix from `P_k` to `P_{k+shift}` in the monomial bases, built
    /// column by column.
    pub fn matrix(&self, source: &MonomialBasis) -> SparseMatrix {
        let shift = self.degree_shift().expect("matrix of a non-homogeneous operator");
        let target_k = source.k as i64 + shift;
        let cols: Vec<_> = (0..source.len())
            .into_par_iter()
            .map(|i| self.apply(&source.element(i)))
            .collect();
        if target_k < 0 {
            assert!(cols.iter().all(|c| c.is_zero()));
            return SparseMatrix::from_cols(0, cols.iter().map(|_| Default::default()).collect());
        }
        let target = MonomialBasis::new(source.m, source.n, target_k as usize);
        SparseMatrix::from_cols(target.len(), cols.iter().map(|c| target.coords(c)).collect())
    }
}

impl Add for LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: LinearOperator) -> LinearOperator {
        match self {
            LinearOperator::Add(mut ops) => {
                ops.push(rhs);
                LinearOperator::Add(ops)
            }
            lhs => LinearOperator::Add(vec![lhs, rhs]),
        }
    }
}

impl Sub for LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: LinearOperator) -> LinearOperator {
        self + (-rhs)
    }
}

impl Neg for LinearOperator {
    type Output = LinearOperator;
    fn neg(self) -> LinearOperator {
        match self {
            LinearOperator::Scale(c) => LinearOperator::Scale(-c),
            op => LinearOperator::Compose(vec![LinearOperator::Scale(-Rational::one()), op]),
        }
    }
}

/// Composition: `(A * B)(f) = A(B(f))`.
impl Mul for LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: LinearOperator) -> LinearOperator {
        let mut ops = match self {
            LinearOperator::Compose(ops) => ops,
            op => vec![op],
        };
        match rhs {
            LinearOperator::Compose(more) => ops.extend(more),
            op => ops.push(op),
        }
        LinearOperator::Compose(ops)
    }
}

/// Graded commutator `[A, B] = AB - (-1)^{|A||B|} BA` with the sign given.
pub fn commutator(a: &LinearOperator, b: &LinearOperator, both_odd: bool) -> LinearOperator {
    let ab = a.clone() * b.clone();
    let ba = b.clone() * a.clone();
    if both_odd {
        ab + ba
    } else {
        ab - ba
    }
}
