//! Restriction of `L_(k,0,...,0)` from `osp(m|2n)` to `osp(m-1|2n)`, the
//! subalgebra fixing the first bosonic coordinate.
//!
//! Modulo `R²`, every polynomial has a unique representative of degree at
//! most one in `x1` (rewrite `x1² = -R'²` with `R'² = R² - x1²`). This normal
//! form commutes with the subalgebra, so the simple module is realised as
//! `V = N(H_k)` and each predicted branch `l` as `R'^{2a} H'_l` or
//! `x1 R'^{2a} H'_l`, where `H'_l` are the harmonics in the remaining
//! variables.

use std::collections::HashMap;

use rayon::prelude::*;

use super::simple::{in_minus_two_n, is_window, simple_dim};
use crate::diffops::{generators, r2};
use crate::error::{precondition, Result};
use crate::harmonic::{dim_hk, harmonic_basis, shared_basis};
use crate::linalg::{rank, SparseVec, Subspace};
use crate::report::{Outcome, Record};
use crate::superalgebra::{SuperMonomial, SuperPolynomial, Superspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchRule {
    /// `l = 0..=k`.
    Full,
    /// `l = from..=k` (window cells).
    Truncated { from: usize },
    /// The restriction is not completely reducible; no list is asserted.
    NotCompletelyReducible,
}

#[derive(Debug, Clone)]
pub struct Branching {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub rule: BranchRule,
    /// `(l, dim L^{m-1|2n}_(l,0,...,0))`.
    pub branches: Vec<(usize, i64)>,
    pub outcome: Outcome,
}

/// `x1^e μ ↦ x1^{e mod 2} (-R'²)^{⌊e/2⌋} μ` on every term.
pub fn normal_form(p: &SuperPolynomial, m: usize, n: usize) -> SuperPolynomial {
    let x1 = SuperPolynomial::x(0);
    let minus_rest = -(r2(m, n) - &x1 * &x1);
    let mut powers: HashMap<u16, SuperPolynomial> = HashMap::new();
    let mut out = SuperPolynomial::zero();
    for (mono, c) in p.terms() {
        let e = mono.exponent(0);
        if e < 2 {
            out.add_term(mono.clone(), c.clone());
            continue;
        }
        let mut bos = mono.exponents().to_vec();
        bos[0] = e % 2;
        let rest = SuperMonomial::new(&bos, mono.mask());
        let power = powers.entry(e / 2).or_insert_with(|| minus_rest.pow(u32::from(e / 2)));
        out = out + power.mul_monomial(&rest, c);
    }
    out
}

/// Move every bosonic variable up by one, freeing `x1`.
fn shift_bosonic(p: &SuperPolynomial) -> SuperPolynomial {
    SuperPolynomial::from_terms(p.terms().map(|(mono, c)| {
        let mut bos = vec![0];
        bos.extend_from_slice(mono.exponents());
        (SuperMonomial::new(&bos, mono.mask()), c.clone())
    }))
}

pub fn rule(m: usize, n: usize, k: usize) -> BranchRule {
    let big_m = m as i64 - 2 * n as i64;
    if big_m <= 1 && big_m % 2 != 0 && k as i64 >= 2 + (1 - big_m) / 2 {
        BranchRule::NotCompletelyReducible
    } else if is_window(m, n, k) {
        BranchRule::Truncated { from: (3 - big_m - k as i64).max(0) as usize }
    } else {
        BranchRule::Full
    }
}

fn branch_dim(m: usize, n: usize, l: usize) -> Result<i64> {
    if m >= 2 {
        simple_dim(m, n, l)
    } else {
        dim_hk(m, n, l)
    }
}

/// The branch `l` of `P_k` in the variables `x2, ...`: `R'^{2a} H'_l` or
/// `x1 R'^{2a} H'_l`.
fn branch_space(m: usize, n: usize, k: usize, l: usize) -> Vec<SuperPolynomial> {
    let x1 = SuperPolynomial::x(0);
    let rest = r2(m, n) - &x1 * &x1;
    let factor = if (k - l).is_multiple_of(2) { rest.pow(((k - l) / 2) as u32) } else { &x1 * &rest.pow(((k - l - 1) / 2) as u32) };
    harmonic_basis(m - 1, n, l).polynomials().iter().map(|h| &factor * &shift_bosonic(h)).collect()
}

/// Predicted branches of `L^{m|2n}_(k,0,...,0)` with the dimension identity,
/// and, when `explicit`, a direct verification inside `V = N(H_k)`.
pub fn branching(m: usize, n: usize, k: usize, explicit: bool) -> Result<Branching> {
    precondition(m >= 2, || "branching needs m >= 2".into())?;
    let rule = rule(m, n, k);
    let mut out = Outcome::new();
    let range = match rule {
        BranchRule::NotCompletelyReducible => {
            out.row(
                Record::new()
                    .with("k", k)
                    .with("l", "-")
                    .with("dim", "-")
                    .with("rule", "not completely reducible"),
            );
            return Ok(Branching { m, n, k, rule, branches: Vec::new(), outcome: out });
        }
        BranchRule::Full => 0..=k,
        BranchRule::Truncated { from } => from..=k,
    };
    let branches: Vec<(usize, i64)> =
        range.clone().map(|l| Ok((l, branch_dim(m - 1, n, l)?))).collect::<Result<_>>()?;
    let total: i64 = branches.iter().map(|b| b.1).sum();
    let simple = simple_dim(m, n, k)?;
    out.require(total == simple, || {
        format!("branches of ({m},{n},{k}) add up to {total}, simple module has dimension {simple}")
    });

    let verified = if explicit { Some(verify_explicitly(m, n, k, &branches, *range.start(), &mut out)?) } else { None };
    let label = match rule {
        BranchRule::Full => "full",
        _ => "truncated",
    };
    for &(l, d) in &branches {
        let mut rec = Record::new().with("k", k).with("l", l).with("dim", d).with("rule", label);
        if let Some(v) = &verified {
            rec = rec.with("verified", v.contains(&l));
        }
        out.row(rec);
    }
    Ok(Branching { m, n, k, rule, branches, outcome: out })
}

/// Returns the branches that passed every check.
fn verify_explicitly(
    m: usize,
    n: usize,
    k: usize,
    branches: &[(usize, i64)],
    first: usize,
    out: &mut Outcome,
) -> Result<Vec<usize>> {
    let basis = shared_basis(m, n, k);
    let width = basis.len();
    let v_vectors: Vec<SparseVec> = harmonic_basis(m, n, k)
        .polynomials()
        .par_iter()
        .map(|h| basis.coords(&normal_form(h, m, n)))
        .collect();
    let v = Subspace::span(width, &v_vectors);
    let simple = simple_dim(m, n, k)?;
    out.require(v.dim() as i64 == simple, || {
        format!("N(H_{k}) has dimension {} at ({m},{n}), expected {simple}", v.dim())
    });
    let reduced = basis.monomials().iter().filter(|mo| mo.exponent(0) < 2).count();
    let v_is_everything = v.dim() == reduced;

    let restricted: Vec<_> =
        generators(&Superspace::new(m, n)).into_iter().filter(|((i, j), _, _)| *i >= 1 && *j >= 1).collect();

    let checks: Vec<(usize, Vec<SparseVec>, bool, Option<String>)> = branches
        .par_iter()
        .map(|&(l, d)| {
            let polys = branch_space(m, n, k, l);
            let vectors: Vec<SparseVec> = polys.iter().map(|p| basis.coords(p)).collect();
            let w = Subspace::span(width, &vectors);
            let mut bad = None;
            if w.dim() as i64 != d {
                bad = Some(format!("branch {l} of ({m},{n},{k}) has dimension {}, expected {d}", w.dim()));
            } else if !v_is_everything && !v.contains_space(&w) {
                bad = Some(format!("branch {l} of ({m},{n},{k}) is not inside the simple module"));
            } else {
                let moved = restricted.iter().find_map(|((i, j), op, _)| {
                    polys.iter().find(|p| !w.contains(&basis.coords(&op.apply(p)))).map(|p| (i, j, p))
                });
                if let Some((i, j, p)) = moved {
                    bad = Some(format!("L_({},{}) moves {p} out of branch {l} of ({m},{n},{k})", i + 1, j + 1));
                }
            }
            (l, w.basis().to_vec(), bad.is_none(), bad)
        })
        .collect();

    let mut passed = Vec::new();
    let mut all = Vec::new();
    for (l, vecs, ok, bad) in checks {
        if let Some(b) = bad {
            out.fail(b);
        }
        if ok {
            passed.push(l);
        }
        all.extend(vecs);
    }
    let sum_rank = rank(&all, width);
    out.require(sum_rank == all.len() && sum_rank == v.dim(), || {
        format!("branches of ({m},{n},{k}) span {sum_rank} of {} dimensions ({} vectors)", v.dim(), all.len())
    });

    // branches dropped by the truncation do not lie in the simple module
    for l in 0..first {
        let vectors: Vec<SparseVec> = branch_space(m, n, k, l).iter().map(|p| basis.coords(p)).collect();
        let outside = vectors.iter().any(|x| !v.contains(x));
        out.require(outside, || format!("dropped branch {l} of ({m},{n},{k}) lies in the simple module"));
    }
    Ok(passed)
}

/// The flag for restrictions that are not completely reducible.
pub fn not_completely_reducible(m: usize, n: usize, k: usize) -> bool {
    rule(m, n, k) == BranchRule::NotCompletelyReducible
}

/// `M` is odd and not positive beyond one, i.e. `M ∈ 1 - 2ℕ`.
pub fn in_one_minus_two_n(big_m: i64) -> bool {
    in_minus_two_n(big_m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        let x1 = SuperPolynomial::x(0);
        assert_eq!(normal_form(&(&x1 * &x1), 2, 0), -(&SuperPolynomial::x(1) * &SuperPolynomial::x(1)));
        // R² is killed
        assert!(normal_form(&r2(3, 1), 3, 1).is_zero());
        let cubic = x1.pow(3);
        assert_eq!(normal_form(&cubic, 2, 1), -(&x1 * &(r2(2, 1) - &x1 * &x1)));
    }

    #[test]
    fn rules() {
        assert_eq!(rule(2, 1, 2), BranchRule::Truncated { from: 1 });
        assert_eq!(rule(4, 1, 3), BranchRule::Full);
        assert_eq!(rule(3, 1, 3), BranchRule::NotCompletelyReducible);
        assert_eq!(rule(3, 1, 1), BranchRule::Full);
        assert!(in_one_minus_two_n(1) && in_one_minus_two_n(-3) && !in_one_minus_two_n(3));
    }

    #[test]
    fn branching_examples() {
        let b = branching(2, 1, 2, true).unwrap();
        assert_eq!(b.branches, vec![(1, 3), (2, 3)]);
        assert!(b.outcome.passed(), "{:?}", b.outcome.counterexample);
        let b = branching(4, 1, 3, true).unwrap();
        assert_eq!(b.branches.iter().map(|x| x.0).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(b.outcome.passed(), "{:?}", b.outcome.counterexample);
        let b = branching(3, 1, 3, true).unwrap();
        assert!(b.branches.is_empty() && b.outcome.passed());
    }

    #[test]
    fn explicit_small_cells() {
        for m in 2..=4 {
            for n in 0..=2 {
                for k in 0..=3 {
                    let b = branching(m, n, k, true).unwrap();
                    assert!(b.outcome.passed(), "({m},{n},{k}): {:?}", b.outcome.counterexample);
                }
            }
        }
    }
}
