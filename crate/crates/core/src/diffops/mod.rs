//! The orthosymplectic metric and the differential operators built on it.

mod killing;
mod operator;
mod sl2;

pub use killing::{killing_check, VectorField};
pub use operator::{commutator, LinearOperator};
pub use sl2::{check_laplace_beltrami, check_sl2, CheckFailure};

use num_traits::Zero;

use crate::error::{precondition, Result};
use crate::superalgebra::{Rational, Superspace, SuperPolynomial, Var};

/// The metric `g = diag(I_m, J)` with `J = ½[[0,-1],[1,0]]` per Grassmann
/// pair, together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    pub space: Superspace,
    g: Vec<Vec<Rational>>,
    g_inv: Vec<Vec<Rational>>,
}

impl Metric {
    pub fn new(space: Superspace) -> Self {
        let d = space.dim();
        let mut g = vec![vec![Rational::zero(); d]; d];
        let mut g_inv = vec![vec![Rational::zero(); d]; d];
        for i in 0..space.m {
            g[i][i] = Rational::from(1);
            g_inv[i][i] = Rational::from(1);
        }
        for j in 0..space.n {
            let (a, b) = (space.m + 2 * j, space.m + 2 * j + 1);
            g[a][b] = Rational::new(-1, 2);
            g[b][a] = Rational::new(1, 2);
            g_inv[a][b] = Rational::from(2);
            g_inv[b][a] = Rational::from(-2);
        }
        Metric { space, g, g_inv }
    }

    /// `g^{ij}` as written in the raising rule `X^j = Σ_i X_i g^{ij}`.
    pub fn g(&self, i: usize, j: usize) -> &Rational {
        &self.g[i][j]
    }

    pub fn g_inv(&self, i: usize, j: usize) -> &Rational {
        &self.g_inv[i][j]
    }

    /// Nonzero entries `(i, g^{ij})` of column `j`.
    fn column(&self, j: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        (0..self.space.dim()).map(move |i| (i, &self.g[i][j])).filter(|(_, c)| !c.is_zero())
    }

    /// `X^j = Σ_i X_i g^{ij}`.
    pub fn raised_coordinate(&self, j: usize) -> SuperPolynomial {
        self.column(j)
            .map(|(i, c)| self.space.coordinate(i).scale(c))
            .sum()
    }

    /// `∇_j = ∂_{X^j}`: by the chain rule `Σ_i (g^{-1})_{ji} ∂_{X_i}`.
    pub fn lower_nabla(&self, j: usize) -> LinearOperator {
        LinearOperator::sum((0..self.space.dim()).filter_map(|i| {
            let c = &self.g_inv[j][i];
            (!c.is_zero()).then(|| coordinate_partial(&self.space, i).scaled(c.clone()))
        }))
    }

    /// `∇^j = Σ_i ∇_i g^{ij}`.
    pub fn upper_nabla(&self, j: usize) -> LinearOperator {
        LinearOperator::sum(self.column(j).map(|(i, c)| self.lower_nabla(i).scaled(c.clone())))
    }

    /// `∇^2 = Σ_j ∇^j ∇_j`, assembled through the metric.
    pub fn nabla2(&self) -> LinearOperator {
        LinearOperator::sum((0..self.space.dim()).map(|j| self.upper_nabla(j) * self.lower_nabla(j)))
    }

    /// `R^2 = Σ_j X^j X_j`, assembled through the metric.
    pub fn r2(&self) -> SuperPolynomial {
        (0..self.space.dim())
            .map(|j| &self.raised_coordinate(j) * &self.space.coordinate(j))
            .sum()
    }

    /// `L_ij = X_i ∂_{X^j} - (-1)^{[i][j]} X_j ∂_{X^i}` for any pair of
    /// 0-based indices (so `L_ji = -(-1)^{[i][j]} L_ij`).
    pub fn generator(&self, i: usize, j: usize) -> LinearOperator {
        let s = &self.space;
        let sign = if s.parity(i).sign_with(s.parity(j)) { -1 } else { 1 };
        let first = LinearOperator::mul_by(s.coordinate(i)) * self.lower_nabla(j);
        let second = LinearOperator::mul_by(s.coordinate(j)) * self.lower_nabla(i);
        first - second.scaled(sign)
    }
}

fn coordinate_partial(space: &Superspace, u: usize) -> LinearOperator {
    LinearOperator::d(space.var(u).expect("index in range"))
}

/// `x_1^2 + ... + x_m^2 - Σ_j xg_{2j-1} xg_{2j}`.
pub fn r2(m: usize, n: usize) -> SuperPolynomial {
    r2_bosonic(m) + theta2(n)
}

/// `r^2 = Σ x_i^2`.
pub fn r2_bosonic(m: usize) -> SuperPolynomial {
    (0..m).map(|i| SuperPolynomial::x(i).pow(2)).sum()
}

/// `θ^2 = -Σ_j xg_{2j-1} xg_{2j}`.
pub fn theta2(n: usize) -> SuperPolynomial {
    -(0..n)
        .map(|j| &SuperPolynomial::xg(2 * j) * &SuperPolynomial::xg(2 * j + 1))
        .sum::<SuperPolynomial>()
}

/// Bosonic Laplacian `Σ ∂_{x_i}^2`.
pub fn nabla2_bosonic(m: usize) -> LinearOperator {
    LinearOperator::sum((0..m).map(|i| LinearOperator::d(Var::Bos(i)) * LinearOperator::d(Var::Bos(i))))
}

/// Fermionic Laplacian `-4 Σ_j ∂_{xg_{2j-1}} ∂_{xg_{2j}}`.
pub fn nabla2_fermionic(n: usize) -> LinearOperator {
    LinearOperator::sum((0..n).map(|j| {
        (LinearOperator::d(Var::Ferm(2 * j)) * LinearOperator::d(Var::Ferm(2 * j + 1))).scaled(-4)
    }))
}

/// `∇^2 = ∇_b^2 - 4 Σ_j ∂_{xg_{2j-1}} ∂_{xg_{2j}}`.
pub fn nabla2(m: usize, n: usize) -> LinearOperator {
    nabla2_bosonic(m) + nabla2_fermionic(n)
}

pub fn euler_b(m: usize) -> LinearOperator {
    LinearOperator::sum((0..m).map(|i| LinearOperator::mul_by(SuperPolynomial::x(i)) * LinearOperator::d(Var::Bos(i))))
}

pub fn euler_f(n: usize) -> LinearOperator {
    LinearOperator::sum(
        (0..2 * n).map(|j| LinearOperator::mul_by(SuperPolynomial::xg(j)) * LinearOperator::d(Var::Ferm(j))),
    )
}

pub fn euler(m: usize, n: usize) -> LinearOperator {
    euler_b(m) + euler_f(n)
}

/// `L_ij` for 0-based `i <= j < m + 2n`.
pub fn osp_generator(i: usize, j: usize, m: usize, n: usize) -> Result<LinearOperator> {
    let space = Superspace::new(m, n);
    if j >= space.dim() {
        return Err(crate::error::Error::IndexOutOfRange { index: j, bound: space.dim() });
    }
    precondition(i <= j, || format!("generator L_{{{i},{j}}} needs i <= j"))?;
    Ok(Metric::new(space).generator(i, j))
}

/// Index pairs `i <= j` of all generators, skipping the bosonic diagonal
/// (where `L_ii = 0`).
pub fn generator_indices(space: &Superspace) -> Vec<(usize, usize)> {
    let d = space.dim();
    (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == j && i < space.m))
        .collect()
}

/// All nonzero `L_ij`, `i <= j`, paired with their parity (true if odd).
pub fn generators(space: &Superspace) -> Vec<((usize, usize), LinearOperator, bool)> {
    let metric = Metric::new(*space);
    generator_indices(space)
        .into_iter()
        .map(|(i, j)| {
            let odd = (space.parity(i) + space.parity(j)) == crate::superalgebra::Parity::Odd;
            ((i, j), metric.generator(i, j), odd)
        })
        .collect()
}

fn shifted(op: LinearOperator, c: i64) -> LinearOperator {
    op + LinearOperator::scalar(c)
}

/// `Δ_LB = R^2 ∇^2 - 𝔼(M - 2 + 𝔼)`.
pub fn laplace_beltrami(m: usize, n: usize) -> LinearOperator {
    let big_m = m as i64 - 2 * n as i64;
    LinearOperator::mul_by(r2(m, n)) * nabla2(m, n) - euler(m, n) * shifted(euler(m, n), big_m - 2)
}

/// `Δ_LB = -½ Σ_{ijkl} L_ij g^{il} g^{jk} L_kl`.
pub fn laplace_beltrami_casimir(m: usize, n: usize) -> LinearOperator {
    let space = Superspace::new(m, n);
    let metric = Metric::new(space);
    let d = space.dim();
    let mut terms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let gil = metric.g(i, l);
                if gil.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let gjk = metric.g(j, k);
                    if gjk.is_zero() {
                        continue;
                    }
                    let c = gil * gjk * Rational::new(-1, 2);
                    terms.push((metric.generator(i, j) * metric.generator(k, l)).scaled(c));
                }
            }
        }
    }
    LinearOperator::sum(terms)
}

/// `Δ_{LB,b} = r^2 ∇_b^2 - 𝔼_b(m - 2 + 𝔼_b)`.
pub fn laplace_beltrami_bosonic(m: usize) -> LinearOperator {
    LinearOperator::mul_by(r2_bosonic(m)) * nabla2_bosonic(m) - euler_b(m) * shifted(euler_b(m), m as i64 - 2)
}

/// `Δ_{LB,f} = θ^2 ∇_f^2 - 𝔼_f(-2n - 2 + 𝔼_f)`.
pub fn laplace_beltrami_fermionic(n: usize) -> LinearOperator {
    LinearOperator::mul_by(theta2(n)) * nabla2_fermionic(n) - euler_f(n) * shifted(euler_f(n), -2 * n as i64 - 2)
}
