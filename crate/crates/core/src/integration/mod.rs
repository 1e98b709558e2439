//! Berezin and supersphere integration.

mod laurent;
mod scaled;
mod suite;

pub use laurent::{phi_sharp, phi_sharp_inverse, sqrt_series, LaurentSuperFunction};
pub use scaled::{gamma, reciprocal_gamma, ScaledRational};
pub use suite::{compare_integrals, invariance_suite, invariant_functional_dims};

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::diffops::{nabla2, theta2};
use crate::error::{precondition, Result};
use crate::superalgebra::rational::generalized_binomial;
use crate::superalgebra::{monomial_basis, Rational, SuperMonomial, SuperPolynomial, Var};

/// Berezin integral `π^{-n} ∂_{xg_{2n}} ... ∂_{xg_1}`: the bosonic
/// coefficient of `xg_1 ... xg_{2n}` together with the prefactor `π^{-n}`.
pub fn berezin(f: &SuperPolynomial, n: usize) -> (SuperPolynomial, ScaledRational) {
    let mut g = f.clone();
    for j in 0..2 * n {
        g = g.partial(Var::Ferm(j));
    }
    // anything left with Grassmann factors lived outside Λ_{2n}
    let g = g.filter(|mo| mo.mask() == 0);
    (g, ScaledRational::pi_power(-2 * n as i64))
}

/// Integral of `x^alpha` over the unit sphere `S^{m-1}`.
pub fn sphere_moment(alpha: &[u16]) -> ScaledRational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return ScaledRational::zero();
    }
    let mut acc = ScaledRational::rational(Rational::from(2));
    let mut total = 0i64;
    for &a in alpha {
        acc = &acc * &gamma(a as i64 + 1).expect("positive argument");
        total += a as i64 + 1;
    }
    &acc * &reciprocal_gamma(total)
}

/// The supersphere integral of polynomials by the Pizzetti formula,
/// `Σ_k 2π^{M/2}/Γ(k+M/2) (∇^{2k} f)(0) / (4^k k!)`.
///
/// Values `(∇^{deg} μ)(0)` are tabulated once per monomial up to the given
/// degree, so evaluation is a table lookup per term.
#[derive(Debug, Clone)]
pub struct Pizzetti {
    m: usize,
    n: usize,
    max_degree: usize,
    table: HashMap<SuperMonomial, Rational>,
}

impl Pizzetti {
    pub fn new(m: usize, n: usize, max_degree: usize) -> Result<Self> {
        precondition(m >= 1, || "the Pizzetti integral needs m >= 1".into())?;
        let lap = nabla2(m, n);
        let mut table: HashMap<SuperMonomial, Rational> = HashMap::new();
        table.insert(SuperMonomial::one(), Rational::one());
        for d in (2..=max_degree).step_by(2) {
            for mono in monomial_basis(m, n, d) {
                let image = lap.apply(&SuperPolynomial::term(mono.clone(), Rational::one()));
                let value: Rational = image
                    .terms()
                    .map(|(mo, c)| c * table.get(mo).cloned().unwrap_or_else(Rational::zero))
                    .sum();
                if !value.is_zero() {
                    table.insert(mono, value);
                }
            }
        }
        Ok(Pizzetti { m, n, max_degree, table })
    }

    pub fn superdim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Weight `2π^{M/2} / (Γ(j + M/2) 4^j j!)` of degree `2j`.
    fn weight(&self, j: usize) -> ScaledRational {
        let big_m = self.superdim();
        let denom = Rational::from_integer(4).pow(j as u32) * crate::superalgebra::rational::factorial(j as u32);
        (&ScaledRational::pi_power(big_m) * &reciprocal_gamma(2 * j as i64 + big_m))
            .scale(&(Rational::from(2) / denom))
    }

    /// `(∇^{deg μ} μ)(0)` for a monomial of even degree within the table.
    pub fn laplacian_value(&self, mono: &SuperMonomial) -> Rational {
        assert!(mono.degree() <= self.max_degree, "monomial beyond the tabulated degree");
        self.table.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn integrate(&self, f: &SuperPolynomial) -> ScaledRational {
        let mut by_degree: HashMap<usize, Rational> = HashMap::new();
        for (mono, c) in f.terms() {
            let d = mono.degree();
            if d % 2 == 1 {
                continue;
            }
            let v = self.laplacian_value(mono);
            if !v.is_zero() {
                *by_degree.entry(d / 2).or_insert_with(Rational::zero) += c * &v;
            }
        }
        let mut total = ScaledRational::zero();
        let mut keys: Vec<_> = by_degree.keys().copied().collect();
        keys.sort_unstable();
        for j in keys {
            let term = self.weight(j).scale(&by_degree[&j]);
            total = total.try_add(&term).expect("Pizzetti terms share one power of pi");
        }
        total
    }
}

/// Pizzetti integral by literally iterating `∇²` and evaluating at the origin.
pub fn pizzetti(f: &SuperPolynomial, m: usize, n: usize) -> Result<ScaledRational> {
    precondition(m >= 1, || "the Pizzetti integral needs m >= 1".into())?;
    let big_m = m as i64 - 2 * n as i64;
    let lap = nabla2(m, n);
    let mut total = ScaledRational::zero();
    let mut g = f.clone();
    let mut k = 0i64;
    let mut factor = Rational::one();
    while !g.is_zero() {
        let at_zero = g.constant_term();
        if !at_zero.is_zero() {
            let term = (&ScaledRational::pi_power(big_m) * &reciprocal_gamma(2 * k + big_m))
                .scale(&(Rational::from(2) * at_zero / &factor));
            total = total.try_add(&term)?;
        }
        g = lap.apply(&g);
        k += 1;
        factor *= Rational::from_integer(4 * k);
    }
    Ok(total)
}

/// `∫_{S^{m-1}} ∫_B (1-θ²)^{m/2-1} φ♯(f)`.
pub fn supersphere_integral_phi(f: &SuperPolynomial, m: usize, n: usize) -> Result<ScaledRational> {
    precondition(m >= 1, || "the supersphere integral needs m >= 1".into())?;
    let weight = binomial_series_in_theta2(&Rational::new(m as i64 - 2, 2), n);
    let image = phi_sharp(f, m, n)?;
    let integrand = image.left_multiply(&weight);
    let mut total = ScaledRational::zero();
    for (_, numerator) in integrand.components() {
        let (bosonic, prefactor) = berezin(numerator, n);
        // on the sphere r = 1, so r^{-2j} drops out
        for (mono, c) in bosonic.terms() {
            let alpha: Vec<u16> = (0..m).map(|i| mono.exponent(i)).collect();
            let v = (&sphere_moment(&alpha) * &prefactor).scale(c);
            total = total.try_add(&v)?;
        }
    }
    Ok(total)
}

/// `(1 - θ²)^a` as a truncated generalized binomial series.
pub fn binomial_series_in_theta2(a: &Rational, n: usize) -> SuperPolynomial {
    let t2 = theta2(n);
    let mut power = SuperPolynomial::one();
    let mut out = SuperPolynomial::zero();
    for s in 0..=n as u32 {
        let c = generalized_binomial(a, s) * Rational::from_integer(if s % 2 == 0 { 1 } else { -1 });
        out = &out + &power.scale(&c);
        power = &power * &t2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::parse_polynomial as p;

    fn sr(q: Rational, h: i64) -> ScaledRational {
        ScaledRational::new(q, h)
    }

    #[test]
    fn berezin_examples() {
        let (b, pre) = berezin(&SuperPolynomial::one(), 1);
        assert!(b.is_zero());
        assert_eq!(pre, ScaledRational::pi_power(-2));
        assert_eq!(berezin(&p("xg1*xg2").unwrap(), 1).0, SuperPolynomial::one());
        assert_eq!(berezin(&theta2(1), 1).0, p("-1").unwrap());
    }

    #[test]
    fn pizzetti_examples() {
        assert_eq!(pizzetti(&SuperPolynomial::one(), 3, 1).unwrap(), sr(Rational::from(2), 0));
        assert!(pizzetti(&SuperPolynomial::one(), 2, 1).unwrap().is_zero());
        // x1^2 -> π^{M/2}/Γ(1+M/2)
        for (m, n) in [(2, 0), (3, 1), (4, 1), (1, 0)] {
            let big_m = m as i64 - 2 * n as i64;
            let expect = &ScaledRational::pi_power(big_m) * &reciprocal_gamma(2 + big_m);
            assert_eq!(pizzetti(&p("x1^2").unwrap(), m, n).unwrap(), expect);
        }
        assert!(pizzetti(&SuperPolynomial::one(), 0, 1).is_err());
    }

    #[test]
    fn tabulated_matches_direct() {
        for (m, n) in [(1, 1), (2, 1), (3, 2)] {
            let table = Pizzetti::new(m, n, 6).unwrap();
            for d in 0..=6 {
                for mono in monomial_basis(m, n, d) {
                    let f = SuperPolynomial::term(mono, Rational::one());
                    assert_eq!(table.integrate(&f), pizzetti(&f, m, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn sphere_moments() {
        assert_eq!(sphere_moment(&[0, 0]), sr(Rational::from(2), 2));
        assert!(sphere_moment(&[1, 0]).is_zero());
        assert_eq!(sphere_moment(&[2, 0]), sr(Rational::one(), 2));
        // σ_3 = 4π
        assert_eq!(sphere_moment(&[0, 0, 0]), sr(Rational::from(4), 2));
    }

    #[test]
    fn phi_form_examples() {
        assert_eq!(supersphere_integral_phi(&SuperPolynomial::one(), 3, 1).unwrap(), sr(Rational::from(2), 0));
        assert!(supersphere_integral_phi(&p("xg1").unwrap(), 2, 1).unwrap().is_zero());
        assert_eq!(
            supersphere_integral_phi(&p("x1^2").unwrap(), 2, 0).unwrap(),
            sr(Rational::one(), 2)
        );
    }
}
