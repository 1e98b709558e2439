use num_traits::Zero;
use rayon::prelude::*;

use super::{supersphere_integral_phi, Pizzetti};
use crate::diffops::{generators, r2};
use crate::error::{precondition, Result};
use crate::harmonic::{harmonic_basis, shared_basis};
use crate::linalg::{rank_mod_p, SparseVec};
use crate::report::{Outcome, Record, Status};
use crate::superalgebra::{Rational, SuperPolynomial, Superspace};

/// `(∇^{d} μ)(0)` for every monomial of `P_d`, as a vector.
fn laplacian_functional(table: &Pizzetti, m: usize, n: usize, d: usize) -> SparseVec {
    let basis = shared_basis(m, n, d);
    SparseVec::from_sorted(
        basis.monomials().iter().enumerate().map(|(i, mo)| (i, table.laplacian_value(mo))).collect(),
    )
}

/// Invariance properties of the Pizzetti functional `T` on `P_k`, `k ≤ k_max`:
/// (a) `T(L_ij f) = 0`, (b) `T(R² f) = T(f)`, (c) `T(h_k h_l) = 0` for
/// harmonics of different degrees.
///
/// Since `T` restricted to `P_{2j}` is a multiple of `f ↦ (∇^{2j} f)(0)`,
/// (a) and (c) are checked for that functional, which is stronger when the
/// multiple vanishes.
pub fn invariance_suite(m: usize, n: usize, k_max: usize) -> Result<Outcome> {
    precondition(m >= 1, || "the invariance suite needs m >= 1".into())?;
    let space = Superspace::new(m, n);
    let table = Pizzetti::new(m, n, (k_max + 2).max(2 * k_max))?;
    let gens = generators(&space);
    let rr = r2(m, n);
    let mut out = Outcome::new();
    let degenerate = space.degenerate();
    for k in 0..=k_max {
        let basis = shared_basis(m, n, k);

        // (a)
        let mut gen_ok = true;
        if k % 2 == 0 {
            let e = laplacian_functional(&table, m, n, k);
            let bad = gens.par_iter().find_map_any(|((i, j), op, _)| {
                let mat = op.matrix(&basis);
                mat.cols
                    .iter()
                    .position(|c| !e.dot(c).is_zero())
                    .map(|col| format!("T(L_{{{},{}}} {}) != 0", i + 1, j + 1, basis.monomial(col)))
            });
            if let Some(b) = bad {
                gen_ok = false;
                out.fail(b);
            }
        }

        // (b)
        let bad = basis.monomials().par_iter().find_map_any(|mo| {
            let f = SuperPolynomial::term(mo.clone(), Rational::from(1));
            let (a, b) = (table.integrate(&(&rr * &f)), table.integrate(&f));
            (a != b).then(|| format!("T(R^2 {mo}) = {a} but T({mo}) = {b}"))
        });
        let r2_ok = bad.is_none();
        if let Some(b) = bad {
            out.fail(b);
        }

        // (c): pair H_k against H_l for k < l <= k_max, k + l even
        let mut orth_ok = true;
        if let Some(b) = orthogonality_failure(&table, m, n, k, k_max) {
            orth_ok = false;
            out.fail(b);
        }

        out.row(
            Record::new()
                .with("k", k)
                .with("generators", gen_ok)
                .with("r2", r2_ok)
                .with("orthogonal", orth_ok)
                .with("degenerate", degenerate),
        );
    }
    if degenerate {
        out.mark(Status::Degenerate);
    }
    Ok(out)
}

fn orthogonality_failure(table: &Pizzetti, m: usize, n: usize, k: usize, k_max: usize) -> Option<String> {
    let basis_k = shared_basis(m, n, k);
    let hk = harmonic_basis(m, n, k);
    for l in (k + 2..=k_max).step_by(2) {
        let hl = harmonic_basis(m, n, l).polynomials();
        let bad = hl.par_iter().find_map_any(|h| {
            // u_a = (∇^{k+l} μ_a h)(0) for the monomials μ_a of P_k
            let u = SparseVec::from_sorted(
                basis_k
                    .monomials()
                    .iter()
                    .enumerate()
                    .map(|(a, mo)| {
                        let prod = h.mul_monomial(mo, &Rational::from(1));
                        let v: Rational = prod.terms().map(|(t, c)| c * table.laplacian_value(t)).sum();
                        (a, v)
                    })
                    .collect(),
            );
            hk.space.basis().iter().find(|g| !u.dot(g).is_zero()).map(|g| {
                format!("T(h h') != 0 for h = {} in H_{k}, h' = {h} in H_{l}", basis_k.polynomial(g))
            })
        });
        if bad.is_some() {
            return bad;
        }
    }
    None
}

/// Pizzetti and the `φ♯` route agree on every monomial of degree `≤ d_max`.
pub fn compare_integrals(m: usize, n: usize, d_max: usize) -> Result<Outcome> {
    let table = Pizzetti::new(m, n, d_max)?;
    let mut out = Outcome::new();
    for d in 0..=d_max {
        let basis = shared_basis(m, n, d);
        let results: Vec<Result<Option<String>>> = basis
            .monomials()
            .par_iter()
            .map(|mo| {
                let f = SuperPolynomial::term(mo.clone(), Rational::from(1));
                let (a, b) = (table.integrate(&f), supersphere_integral_phi(&f, m, n)?);
                Ok((a != b).then(|| format!("{mo}: Pizzetti {a}, phi-form {b}")))
            })
            .collect();
        let mut ok = true;
        for r in results {
            if let Some(bad) = r? {
                ok = false;
                out.fail(bad);
            }
        }
        out.row(Record::new().with("degree", d).with("monomials", basis.len()).with("agree", ok));
    }
    Ok(out)
}

/// Counts of invariant functionals on `P_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionalCount {
    pub k: usize,
    /// `dim P_k - dim span{L_ij P_k}`.
    pub invariant: usize,
    /// Invariant functionals that also vanish on `R² P_{k-2}`: the freedom
    /// left in degree `k` once lower degrees are fixed by `T(R² f) = T(f)`.
    pub new: usize,
}

/// Falsification harness for uniqueness of the invariant integral. Spans are
/// computed modulo a large prime, so both counts are upper bounds that are
/// exact unless the prime divides a minor.
pub fn invariant_functional_dims(m: usize, n: usize, k_max: usize) -> Vec<FunctionalCount> {
    let space = Superspace::new(m, n);
    let gens = generators(&space);
    let rr = crate::diffops::LinearOperator::mul_by(r2(m, n));
    (0..=k_max)
        .map(|k| {
            let basis = shared_basis(m, n, k);
            let mut images: Vec<SparseVec> =
                gens.iter().flat_map(|(_, op, _)| op.matrix(&basis).cols).collect();
            let invariant = basis.len() - rank_mod_p(&images).expect("integer matrix entries");
            if k >= 2 {
                images.extend(rr.matrix(&shared_basis(m, n, k - 2)).cols);
            }
            let new = basis.len() - rank_mod_p(&images).expect("integer matrix entries");
            FunctionalCount { k, invariant, new }
        })
        .collect()
}
