use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{monomial_basis, SuperMonomial, Var};
use super::rational::Rational;
use super::Parity;
use crate::linalg::SparseVec;

/// Element of `R[x_1..x_m] ⊗ Λ_{2n}` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(SuperMonomial::one(), c)
    }

    pub fn term(mono: SuperMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        SuperPolynomial { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(SuperMonomial::var(v), Rational::one())
    }

    pub fn x(i: usize) -> Self {
        Self::var(Var::Bos(i))
    }

    pub fn xg(j: usize) -> Self {
        Self::var(Var::Ferm(j))
    }

    pub fn from_terms<I: IntoIterator<Item = (SuperMonomial, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (mono, c) in iter {
            p.add_term(mono, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &SuperMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&SuperMonomial::one())
    }

    /// Highest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Parity if all terms agree (zero counts as even), else `None`.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|m| m.parity());
        match ps.next() {
            None => Some(Parity::Even),
            Some(p) => ps.all(|q| q == p).then_some(p),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SuperPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &SuperMonomial, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            if let Some((neg, prod)) = m.mul(mono) {
                let v = a * c;
                out.add_term(prod, if neg { -v } else { v });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Left partial derivative.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            if let Some((c, d)) = m.partial(v) {
                out.add_term(d, a * Rational::from_integer(c));
            }
        }
        out
    }

    pub fn homogeneous_component(&self, k: usize) -> Self {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter<F: Fn(&SuperMonomial) -> bool>(&self, keep: F) -> Self {
        SuperPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, a)| (m.clone(), a.clone()))
                .collect(),
        }
    }

    /// Components by total degree, ascending.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, SuperPolynomial> {
        let mut out: BTreeMap<usize, SuperPolynomial> = BTreeMap::new();
        for (m, a) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), a.clone());
        }
        out
    }

    /// Number of bosonic variables actually occurring (max index + 1).
    pub fn bosonic_span(&self) -> usize {
        self.terms.keys().map(|m| m.bosonic_len()).max().unwrap_or(0)
    }

    /// Number of Grassmann variables needed to hold every mask.
    pub fn fermionic_span(&self) -> usize {
        let all = self.terms.keys().fold(0u32, |acc, m| acc | m.mask());
        32 - all.leading_zeros() as usize
    }
}

impl Add<&SuperPolynomial> for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        for (m, a) in &rhs.terms {
            out.add_term(m.clone(), a.clone());
        }
        out
    }
}

impl Sub<&SuperPolynomial> for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        for (m, a) in &rhs.terms {
            out.add_term(m.clone(), -a);
        }
        out
    }
}

impl Mul<&SuperPolynomial> for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                if let Some((neg, prod)) = ma.mul(mb) {
                    let v = a * b;
                    out.add_term(prod, if neg { -v } else { v });
                }
            }
        }
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<SuperPolynomial> for SuperPolynomial {
            type Output = SuperPolynomial;
            fn $method(self, rhs: SuperPolynomial) -> SuperPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SuperPolynomial> for SuperPolynomial {
            type Output = SuperPolynomial;
            fn $method(self, rhs: &SuperPolynomial) -> SuperPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        -&self
    }
}

impl std::iter::Sum for SuperPolynomial {
    fn sum<I: Iterator<Item = SuperPolynomial>>(iter: I) -> Self {
        let mut acc = SuperPolynomial::zero();
        for p in iter {
            for (m, a) in p.terms {
                acc.add_term(m, a);
            }
        }
        acc
    }
}

impl From<Rational> for SuperPolynomial {
    fn from(c: Rational) -> Self {
        SuperPolynomial::constant(c)
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, a)) in self.terms.iter().enumerate() {
            let (neg, abs) = if a.is_negative() { (true, -a) } else { (false, a.clone()) };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == SuperMonomial::one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The degree-`k` monomials of `R^{m|2n}` with a reverse index, used to move
/// between polynomials and coordinate vectors.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    monomials: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, usize>,
}

impl MonomialBasis {
    pub fn new(m: usize, n: usize, k: usize) -> Self {
        let monomials = monomial_basis(m, n, k);
        let index = monomials.iter().enumerate().map(|(i, mo)| (mo.clone(), i)).collect();
        MonomialBasis { m, n, k, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[SuperMonomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &SuperMonomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, mono: &SuperMonomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn element(&self, i: usize) -> SuperPolynomial {
        SuperPolynomial::term(self.monomials[i].clone(), Rational::one())
    }

    /// Coordinates of a polynomial lying in this space.
    ///
    /// Panics if `p` has a term outside the basis.
    pub fn coords(&self, p: &SuperPolynomial) -> SparseVec {
        let mut v: Vec<(usize, Rational)> = p
            .terms()
            .map(|(mo, c)| {
                let i = self
                    .index_of(mo)
                    .unwrap_or_else(|| panic!("monomial {mo} not in P_{}({}|{})", self.k, self.m, 2 * self.n));
                (i, c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        SparseVec::from_sorted(v)
    }

    pub fn polynomial(&self, v: &SparseVec) -> SuperPolynomial {
        SuperPolynomial::from_terms(v.iter().map(|(i, c)| (self.monomials[i].clone(), c.clone())))
    }
}
