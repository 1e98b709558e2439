use num_traits::One;

use super::{LinearOperator, Metric};
use crate::error::{Error, Result};
use crate::superalgebra::{Parity, Rational, SuperPolynomial, Superspace};

/// `F = Σ_l F^l ∇_l` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub space: Superspace,
    pub coeffs: Vec<SuperPolynomial>,
}

impl VectorField {
    pub fn new(space: Superspace, coeffs: Vec<SuperPolynomial>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::IndexOutOfRange { index: coeffs.len(), bound: space.dim() });
        }
        Ok(VectorField { space, coeffs })
    }

    /// `∂_{X^j} = ∇_j`.
    pub fn partial(space: Superspace, j: usize) -> Self {
        let mut coeffs = vec![SuperPolynomial::zero(); space.dim()];
        coeffs[j] = SuperPolynomial::one();
        VectorField { space, coeffs }
    }

    /// `L_ij = X_i ∇_j - (-1)^{[i][j]} X_j ∇_i`.
    pub fn generator(space: Superspace, i: usize, j: usize) -> Self {
        let mut coeffs = vec![SuperPolynomial::zero(); space.dim()];
        let sign = if space.parity(i).sign_with(space.parity(j)) { 1 } else { -1 };
        coeffs[j] = &coeffs[j] + &space.coordinate(i);
        coeffs[i] = &coeffs[i] + &space.coordinate(j).scale(&Rational::from(sign));
        VectorField { space, coeffs }
    }

    /// The total parity `|F|`, requiring `|F^l| + [l]` to agree for all
    /// nonzero coefficients.
    pub fn parity(&self) -> Result<Parity> {
        let mut found: Option<Parity> = None;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = c.parity().ok_or(Error::MixedParity)? + self.space.parity(l);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(Error::MixedParity),
                _ => {}
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    pub fn operator(&self) -> LinearOperator {
        let metric = Metric::new(self.space);
        LinearOperator::sum(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| LinearOperator::mul_by(c.clone()) * metric.lower_nabla(l)),
        )
    }
}

/// The reduced Killing condition
/// `∇^j(F^k) + (-1)^{([j]+[k])|F|} (-1)^{[j][k]} ∇^k(F^j) = 0` for all `j, k`.
pub fn killing_check(field: &VectorField) -> Result<bool> {
    let parity = field.parity()?;
    let space = field.space;
    let metric = Metric::new(space);
    let d = space.dim();
    let ups: Vec<LinearOperator> = (0..d).map(|j| metric.upper_nabla(j)).collect();
    for j in 0..d {
        for k in j..d {
            let pj = space.parity(j);
            let pk = space.parity(k);
            let neg = (pj + pk).sign_with(parity) ^ pj.sign_with(pk);
            let sign = if neg { -Rational::one() } else { Rational::one() };
            let a = ups[j].apply(&field.coeffs[k]);
            let b = ups[k].apply(&field.coeffs[j]).scale(&sign);
            if !(&a + &b).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
