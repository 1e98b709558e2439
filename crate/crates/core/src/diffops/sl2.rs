use super::{euler, laplace_beltrami, laplace_beltrami_casimir, nabla2, r2, LinearOperator};
use crate::linalg::SparseMatrix;
use crate::report::{Outcome, Record};
use crate::superalgebra::{MonomialBasis, Superspace};

/// A failed identity: where it failed and a rendered witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub context: String,
    pub witness: String,
}

/// First column on which two matrices differ, rendered as polynomials.
pub(crate) fn first_difference(
    a: &SparseMatrix,
    b: &SparseMatrix,
    source: &MonomialBasis,
    target: &MonomialBasis,
) -> Option<String> {
    let pair = a.cols.iter().zip(&b.cols).enumerate().find(|(_, (ca, cb))| ca != cb);
    pair.map(|(j, (ca, cb))| {
        format!("on {}: {} vs {}", source.monomial(j), target.polynomial(ca), target.polynomial(cb))
    })
}

fn target_basis(op: &LinearOperator, source: &MonomialBasis) -> MonomialBasis {
    let k = source.k as i64 + op.degree_shift().unwrap_or(0);
    MonomialBasis::new(source.m, source.n, k.max(0) as usize)
}

/// Verifies on every `P_k`, `k <= k_max`, as matrix identities:
/// `[∇²/2, R²/2] = 𝔼 + M/2`, `[∇²/2, 𝔼 + M/2] = ∇²`, `[R²/2, 𝔼 + M/2] = -R²`.
pub fn check_sl2(m: usize, n: usize, k_max: usize) -> Outcome {
    let space = Superspace::new(m, n);
    let big_m = space.superdim();
    let lap = nabla2(m, n);
    let rr = LinearOperator::mul_by(r2(m, n));
    let e = euler(m, n);
    let h = e.clone() + LinearOperator::scalar(crate::superalgebra::Rational::new(big_m, 2));
    let half = |op: &LinearOperator| op.clone().scaled(crate::superalgebra::Rational::new(1, 2));
    let relations: [(&str, LinearOperator, LinearOperator); 3] = [
        (
            "[lap/2, R2/2] = E + M/2",
            half(&lap) * half(&rr) - half(&rr) * half(&lap),
            h.clone(),
        ),
        ("[lap/2, E + M/2] = lap", half(&lap) * h.clone() - h.clone() * half(&lap), lap.clone()),
        ("[R2/2, E + M/2] = -R2", half(&rr) * h.clone() - h.clone() * half(&rr), -rr.clone()),
    ];
    let mut out = Outcome::new();
    for k in 0..=k_max {
        let basis = space.basis(k);
        for (name, lhs, rhs) in &relations {
            let a = lhs.matrix(&basis);
            let b = rhs.matrix(&basis);
            let ok = a == b;
            out.row(Record::new().with("k", k).with("relation", *name).with("holds", ok));
            if !ok {
                let w = first_difference(&a, &b, &basis, &target_basis(rhs, &basis)).unwrap_or_default();
                out.fail(format!("({m},{n}) k={k} {name}: {w}"));
            }
        }
    }
    out
}

/// Compares the two constructions of the Laplace–Beltrami operator as
/// matrices on every `P_k`, `k <= k_max`.
pub fn check_laplace_beltrami(m: usize, n: usize, k_max: usize) -> Outcome {
    let space = Superspace::new(m, n);
    let a = laplace_beltrami(m, n);
    let b = laplace_beltrami_casimir(m, n);
    let mut out = Outcome::new();
    for k in 0..=k_max {
        let basis = space.basis(k);
        let ma = a.matrix(&basis);
        let mb = b.matrix(&basis);
        let ok = ma == mb;
        out.row(Record::new().with("k", k).with("dim P_k", basis.len()).with("forms agree", ok));
        if !ok {
            let w = first_difference(&ma, &mb, &basis, &basis).unwrap_or_default();
            out.fail(format!("({m},{n}) k={k} Laplace-Beltrami forms differ {w}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_examples() {
        assert!(check_sl2(1, 0, 4).passed());
        assert!(check_sl2(2, 1, 4).passed());
        assert!(check_sl2(0, 2, 4).passed());
    }

    #[test]
    fn laplace_beltrami_forms_agree_small() {
        for (m, n) in [(1, 0), (2, 1), (1, 1), (0, 2), (3, 1)] {
            let o = check_laplace_beltrami(m, n, 3);
            assert!(o.passed(), "{:?}", o.counterexample);
        }
    }
}
