use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superalgebra::Rational;

/// The exact real number `q * π^{h/2}`.
///
/// Zero is always stored with `h = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScaled")]
pub struct ScaledRational {
    q: Rational,
    h: i64,
}

#[derive(Deserialize)]
struct RawScaled {
    q: Rational,
    h: i64,
}

impl TryFrom<RawScaled> for ScaledRational {
    type Error = String;
    fn try_from(raw: RawScaled) -> std::result::Result<Self, String> {
        if raw.q.is_zero() && raw.h != 0 {
            return Err("zero must be stored with h = 0".into());
        }
        Ok(ScaledRational { q: raw.q, h: raw.h })
    }
}

impl ScaledRational {
    pub fn new(q: Rational, h: i64) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            ScaledRational { q, h }
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, 0)
    }

    pub fn zero() -> Self {
        ScaledRational { q: Rational::zero(), h: 0 }
    }

    pub fn one() -> Self {
        ScaledRational { q: Rational::one(), h: 0 }
    }

    /// `π^{h/2}`.
    pub fn pi_power(h: i64) -> Self {
        ScaledRational { q: Rational::one(), h }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// Sum; defined when the π-exponents agree or one side is zero.
    pub fn try_add(&self, other: &ScaledRational) -> Result<ScaledRational> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.h != other.h {
            return Err(Error::Inconsistent(format!(
                "adding {self} and {other} with different powers of pi"
            )));
        }
        Ok(ScaledRational::new(&self.q + &other.q, self.h))
    }

    pub fn scale(&self, c: &Rational) -> ScaledRational {
        ScaledRational::new(&self.q * c, self.h)
    }

    pub fn to_f64(&self) -> f64 {
        self.q.to_f64() * std::f64::consts::PI.powf(self.h as f64 / 2.0)
    }
}

impl Mul for &ScaledRational {
    type Output = ScaledRational;
    fn mul(self, rhs: &ScaledRational) -> ScaledRational {
        ScaledRational::new(&self.q * &rhs.q, self.h + rhs.h)
    }
}

impl Mul for ScaledRational {
    type Output = ScaledRational;
    fn mul(self, rhs: ScaledRational) -> ScaledRational {
        &self * &rhs
    }
}

impl Neg for ScaledRational {
    type Output = ScaledRational;
    fn neg(self) -> ScaledRational {
        ScaledRational::new(-self.q, self.h)
    }
}

impl fmt::Display for ScaledRational {
    /// `q * pi^e` with `e = h/2`, e.g. `2 * pi^0`, `4/3 * pi^(-1/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let e = Rational::new(self.h, 2);
        if e.is_integer() && !e.is_negative() {
            write!(f, "{} * pi^{}", self.q, e)
        } else {
            write!(f, "{} * pi^({})", self.q, e)
        }
    }
}

/// `1/Γ(t/2)` exactly; zero at the poles `t/2 ∈ {0, -1, -2, ...}`.
pub fn reciprocal_gamma(t: i64) -> ScaledRational {
    if t <= 0 && t % 2 == 0 {
        return ScaledRational::zero();
    }
    if t % 2 == 0 {
        // 1/(a-1)!
        let a = t / 2;
        let fact: Rational = (1..a).map(Rational::from_integer).product();
        return ScaledRational::rational(fact.recip());
    }
    // half-odd a: Γ(a) = c·√π with c rational
    ScaledRational::new(gamma_half_odd_coefficient(t).recip(), -1)
}

/// `Γ(t/2)` for `t/2` not a pole.
pub fn gamma(t: i64) -> Result<ScaledRational> {
    if t <= 0 && t % 2 == 0 {
        return Err(Error::Precondition(format!("Gamma has a pole at {}", Rational::new(t, 2))));
    }
    if t % 2 == 0 {
        return Ok(ScaledRational::rational((1..t / 2).map(Rational::from_integer).product()));
    }
    Ok(ScaledRational::new(gamma_half_odd_coefficient(t), 1))
}

/// Rational `c` with `Γ(t/2) = c·√π` for odd `t`.
fn gamma_half_odd_coefficient(t: i64) -> Rational {
    debug_assert!(t % 2 != 0);
    let mut c = Rational::one();
    if t > 0 {
        // Γ(a) = (a-1)(a-2)...(1/2) Γ(1/2)
        let mut s = t - 2;
        while s > 0 {
            c *= Rational::new(s, 2);
            s -= 2;
        }
    } else {
        // Γ(a) = Γ(a+1)/a, walking up to 1/2
        let mut s = t;
        while s < 0 {
            c /= Rational::new(s, 2);
            s += 2;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_gamma_values() {
        assert_eq!(reciprocal_gamma(1), ScaledRational::new(Rational::one(), -1));
        assert!(reciprocal_gamma(0).is_zero());
        assert!(reciprocal_gamma(-4).is_zero());
        assert_eq!(reciprocal_gamma(5), ScaledRational::new(Rational::new(4, 3), -1));
        assert_eq!(reciprocal_gamma(6), ScaledRational::rational(Rational::new(1, 2)));
        // Γ(-1/2) = -2√π
        assert_eq!(reciprocal_gamma(-1), ScaledRational::new(Rational::new(-1, 2), -1));
        for t in [-5, -3, -1, 1, 3, 5, 2, 4, 8] {
            let p = &gamma(t).unwrap() * &reciprocal_gamma(t);
            assert_eq!(p, ScaledRational::one());
        }
    }

    #[test]
    fn rendering_and_serde() {
        assert_eq!(ScaledRational::rational(Rational::from(2)).to_string(), "2 * pi^0");
        assert_eq!(ScaledRational::new(Rational::new(4, 3), -1).to_string(), "4/3 * pi^(-1/2)");
        assert_eq!(ScaledRational::new(Rational::one(), 2).to_string(), "1 * pi^1");
        assert_eq!(ScaledRational::new(Rational::one(), -2).to_string(), "1 * pi^(-1)");
        assert_eq!(ScaledRational::zero().to_string(), "0");
        let s = ScaledRational::new(Rational::new(-3, 4), 3);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"q":"-3/4","h":3}"#);
        assert_eq!(serde_json::from_str::<ScaledRational>(&json).unwrap(), s);
        assert!(serde_json::from_str::<ScaledRational>(r#"{"q":"0","h":1}"#).is_err());
    }

    #[test]
    fn addition_rules() {
        let a = ScaledRational::new(Rational::one(), 1);
        let b = ScaledRational::new(Rational::one(), 2);
        assert!(a.try_add(&b).is_err());
        assert_eq!(a.try_add(&ScaledRational::zero()).unwrap(), a);
        assert!(a.try_add(&-a.clone()).unwrap().is_zero());
    }
}
