use std::collections::BTreeMap;


use crate::diffops::{r2_bosonic, theta2};
use crate::error::{precondition, Result};
use crate::superalgebra::rational::{factorial, generalized_binomial};
use crate::superalgebra::{Rational, SuperPolynomial};

/// `Σ_j p_j r^{-2j}` with polynomial numerators.
#[derive(Debug, Clone, Default)]
pub struct LaurentSuperFunction {
    terms: BTreeMap<usize, SuperPolynomial>,
}

impl LaurentSuperFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn polynomial(p: SuperPolynomial) -> Self {
        let mut out = Self::zero();
        out.add_component(0, p);
        out
    }

    pub fn add_component(&mut self, j: usize, p: SuperPolynomial) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(j).or_default();
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.terms.remove(&j);
        }
    }

    /// Pairs `(j, p_j)` with `p_j` nonzero.
    pub fn components(&self) -> impl Iterator<Item = (usize, &SuperPolynomial)> {
        self.terms.iter().map(|(j, p)| (*j, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_pole(&self) -> usize {
        self.terms.keys().copied().max().unwrap_or(0)
    }

    /// `r^{2J}` times the function, for `J = max_pole()`, as a polynomial:
    /// a canonical representative for comparing functions.
    pub fn cleared(&self, m: usize) -> (SuperPolynomial, usize) {
        let big_j = self.max_pole();
        let rr = r2_bosonic(m);
        let total = self
            .terms
            .iter()
            .map(|(j, p)| &rr.pow((big_j - j) as u32) * p)
            .sum();
        (total, big_j)
    }

    /// Equality as functions on `R^m \ {0}`.
    pub fn same_function(&self, other: &Self, m: usize) -> bool {
        let (a, ja) = self.cleared(m);
        let (b, jb) = other.cleared(m);
        let rr = r2_bosonic(m);
        let big_j = ja.max(jb);
        &rr.pow((big_j - ja) as u32) * &a == &rr.pow((big_j - jb) as u32) * &b
    }

    pub fn left_multiply(&self, p: &SuperPolynomial) -> Self {
        let mut out = Self::zero();
        for (j, q) in &self.terms {
            out.add_component(*j, p * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, p) in &self.terms {
            for (j, q) in &other.terms {
                out.add_component(i + j, p * q);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, q) in &other.terms {
            out.add_component(*j, q.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (j, q) in &self.terms {
            out.add_component(*j, q.scale(c));
        }
        out
    }

    /// `∂_{r²} = (1/2r²) 𝔼_b`: on `p r^{-2j}` with `p` of bosonic degree
    /// `d` this is `((d - 2j)/2) p r^{-2j-2}`.
    pub fn d_r2(&self) -> Self {
        let mut out = Self::zero();
        for (j, p) in &self.terms {
            let mut by_degree: BTreeMap<usize, SuperPolynomial> = BTreeMap::new();
            for (mono, c) in p.terms() {
                by_degree
                    .entry(mono.bosonic_degree())
                    .or_default()
                    .add_term(mono.clone(), c.clone());
            }
            for (d, q) in by_degree {
                let c = Rational::new(d as i64 - 2 * *j as i64, 2);
                out.add_component(j + 1, q.scale(&c));
            }
        }
        out
    }
}

fn theta_series(f: &LaurentSuperFunction, n: usize, alternating: bool) -> LaurentSuperFunction {
    let t2 = theta2(n);
    let mut out = LaurentSuperFunction::zero();
    let mut deriv = f.clone();
    let mut power = SuperPolynomial::one();
    for j in 0..=n as u32 {
        let mut c = factorial(j).recip();
        if alternating && j % 2 == 1 {
            c = -c;
        }
        out = out.add(&deriv.left_multiply(&power).scale(&c));
        deriv = deriv.d_r2();
        power = &power * &t2;
        if deriv.is_zero() || power.is_zero() {
            break;
        }
    }
    out
}

/// `φ♯(f) = Σ_{j=0}^n (-1)^j θ^{2j}/j! (∂_{r²})^j f`.
pub fn phi_sharp(f: &SuperPolynomial, m: usize, n: usize) -> Result<LaurentSuperFunction> {
    precondition(m >= 1, || "phi_sharp needs m >= 1".into())?;
    Ok(theta_series(&LaurentSuperFunction::polynomial(f.clone()), n, true))
}

/// `Σ_j θ^{2j}/j! (∂_{r²})^j`, the inverse of [`phi_sharp`].
pub fn phi_sharp_inverse(f: &LaurentSuperFunction, n: usize) -> LaurentSuperFunction {
    theta_series(f, n, false)
}

/// `√(1 - θ²/r²)` truncated by nilpotency of `θ²`.
pub fn sqrt_series(n: usize) -> LaurentSuperFunction {
    let t2 = theta2(n);
    let half = Rational::new(1, 2);
    let mut out = LaurentSuperFunction::zero();
    let mut power = SuperPolynomial::one();
    for s in 0..=n as u32 {
        let mut c = generalized_binomial(&half, s);
        if s % 2 == 1 {
            c = -c;
        }
        out.add_component(s as usize, power.scale(&c));
        power = &power * &t2;
    }
    out
}
