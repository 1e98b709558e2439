use super::graph::PieceGraph;
use super::graph::is_irreducible_by_closures;
use super::{harmonic_radial_intersection, submodule_closure, RepSpace, SpaceKind, SpaceSpec};
use crate::diffops::{nabla2, r2};
use crate::error::{precondition, Result};
use crate::harmonic::{bosonic_harmonics, dim_hk, fermionic_harmonics, harmonic_basis, shared_basis, PolySubspace};
use crate::linalg::{SparseVec, Subspace};
use crate::report::{Outcome, Record};
use crate::superalgebra::binomial;

/// `M ∈ -2ℕ` (zero included).
pub fn in_minus_two_n(big_m: i64) -> bool {
    big_m <= 0 && big_m % 2 == 0
}

fn superdim(m: usize, n: usize) -> i64 {
    m as i64 - 2 * n as i64
}

/// `M ∈ -2ℕ` and `2 - M/2 ≤ k ≤ 2 - M`: `H_k` is reducible but indecomposable.
pub fn is_window(m: usize, n: usize, k: usize) -> bool {
    let big_m = superdim(m, n);
    let k = k as i64;
    in_minus_two_n(big_m) && 2 - big_m / 2 <= k && k <= 2 - big_m
}

/// `dim L_(k,0,...,0)` from the closed forms: four binomial sums in a window,
/// `dim H_k` otherwise.
pub fn simple_dim(m: usize, n: usize, k: usize) -> Result<i64> {
    precondition(m >= 2, || "simple_dim needs m >= 2".into())?;
    if !is_window(m, n, k) {
        return dim_hk(m, n, k);
    }
    let (mi, ni, ki) = (m as i64, n as i64, k as i64);
    let big_m = mi - 2 * ni;
    let sum = |top: i64, f: &dyn Fn(i64) -> i64| -> i64 {
        (0..=top.min(2 * ni)).map(|i| binomial(2 * ni, i) * binomial(f(i), mi - 1)).sum()
    };
    Ok(sum(ki, &|i| ki - i + mi - 1) - sum(ki - 2, &|i| ki - i + mi - 3) + sum(-big_m - ki, &|i| 2 * ni - ki - i - 1)
        - sum(2 - big_m - ki, &|i| 2 * ni - ki - i + 1))
}

/// `R^{2k+M-2} H_{2-M-k}` inside `P_k` (window cells only).
pub fn radial_submodule(m: usize, n: usize, k: usize) -> Result<PolySubspace> {
    precondition(is_window(m, n, k), || format!("({m},{n},{k}) is not a window cell"))?;
    let big_m = superdim(m, n);
    let d = (2 - big_m - k as i64) as usize;
    let power = (k as i64 + big_m / 2 - 1) as u32;
    let factor = r2(m, n).pow(power);
    let polys: Vec<_> = harmonic_basis(m, n, d).polynomials().iter().map(|h| &factor * h).collect();
    Ok(PolySubspace::from_polynomials(shared_basis(m, n, k), &polys))
}

/// One `so(m) ⊕ sp(2n)` constituent `H^b_{k-2l-j} ⊗ H^f_j` of `L_(k,0,...,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplePiece {
    pub j: usize,
    pub l: usize,
    pub p: usize,
    pub dim: usize,
}

/// Constituents of the simple module; in a window `l` is capped by
/// `k + M/2 - 2`, which drops exactly the pieces of the radial submodule.
pub fn decompose_simple(m: usize, n: usize, k: usize) -> Result<Vec<SimplePiece>> {
    precondition(m >= 2, || "decompose_simple needs m >= 2".into())?;
    let cap = is_window(m, n, k).then(|| k as i64 + superdim(m, n) / 2 - 2);
    let mut out = Vec::new();
    for j in 0..=n.min(k) {
        let mut top = (n - j).min((k - j) / 2) as i64;
        if let Some(c) = cap {
            top = top.min(c);
        }
        for l in 0..=top.max(-1) {
            let l = l as usize;
            let p = k - 2 * l - j;
            let dim = bosonic_harmonics(m, p).dim() * fermionic_harmonics(n, j).dim();
            if dim > 0 {
                out.push(SimplePiece { j, l, p, dim });
            }
        }
    }
    Ok(out)
}

/// Largest space on which exact closure cross-checks are run next to the
/// piece graph.
const CLOSURE_LIMIT: usize = 150;

/// In a window: `R^{2k+M-2}H_{2-M-k} = H_k ∩ R²P_{k-2}`, that space is an
/// irreducible submodule, and the quotient is irreducible with the dimension
/// of the closed form.
pub fn window_submodule_check(m: usize, n: usize, k: usize) -> Result<Outcome> {
    precondition(is_window(m, n, k), || format!("({m},{n},{k}) is not a window cell"))?;
    let mut out = Outcome::new();
    let sub = radial_submodule(m, n, k)?;
    let inter = harmonic_radial_intersection(m, n, k);
    let equal = sub.space == inter;
    out.require(equal, || format!("R^(2k+M-2) H_(2-M-k) differs from H_{k} ∩ R²P_(k-2) at ({m},{n})"));

    let hk = RepSpace::new(SpaceSpec::new(SpaceKind::Hk, m, n, k))?;
    let coords: Vec<SparseVec> = sub.polynomials().iter().filter_map(|p| hk.vector_of(p)).collect();
    let inside = coords.len() == sub.dim();
    let span = Subspace::span(hk.dim(), &coords);
    let invariant = inside
        && hk.generators.iter().all(|g| span.basis().iter().all(|v| span.contains(&g.matrix.apply(v))));
    out.require(invariant, || format!("R^(2k+M-2) H_(2-M-k) is not a submodule of H_{k} at ({m},{n})"));

    let graph = PieceGraph::new(m, n, k)?;
    let mut sub_irreducible = graph.radial_irreducible();
    let quotient = RepSpace::new(SpaceSpec::new(SpaceKind::HkModSub, m, n, k))?;
    let mut quotient_irreducible = graph.quotient_irreducible();
    if hk.dim() <= CLOSURE_LIMIT {
        // every nonzero submodule of a sum of pieces contains one of them
        let by_closure = (0..graph.len()).filter(|&a| graph.in_radial[a]).all(|a| {
            hk.vector_of(&graph.pieces[a][0]).is_some_and(|v| submodule_closure(&hk, &[v]) == span)
        });
        let q_by_closure = is_irreducible_by_closures(&quotient)?;
        out.require(by_closure == sub_irreducible && q_by_closure == quotient_irreducible, || {
            format!("piece graph and closures disagree at ({m},{n},{k})")
        });
        sub_irreducible &= by_closure;
        quotient_irreducible &= q_by_closure;
    }
    out.require(sub_irreducible, || format!("window submodule of H_{k} at ({m},{n}) is reducible"));
    out.require(quotient_irreducible, || format!("quotient of H_{k} at ({m},{n}) is reducible"));

    let closed = simple_dim(m, n, k)?;
    out.require(closed == quotient.dim() as i64, || {
        format!("closed form gives {closed}, quotient has dimension {}", quotient.dim())
    });
    out.row(
        Record::new()
            .with("k", k)
            .with("submodule", sub.dim())
            .with("equal", equal)
            .with("invariant", invariant)
            .with("sub_irreducible", sub_irreducible)
            .with("quotient", quotient.dim())
            .with("quotient_irreducible", quotient_irreducible)
            .with("simple_dim", closed),
    );
    Ok(out)
}

/// `R^{2p} H_{k-2p} ⊂ H_k` happens for `p ≥ 1` exactly when `p = k - 1 + M/2`.
pub fn inclusion_obstruction(m: usize, n: usize, k: usize) -> Result<Outcome> {
    precondition(m >= 1, || "the inclusion check needs m >= 1".into())?;
    let big_m = superdim(m, n);
    let lap = nabla2(m, n);
    let rr = r2(m, n);
    let mut out = Outcome::new();
    for p in 1..=k / 2 {
        let factor = rr.pow(p as u32);
        let hs = harmonic_basis(m, n, k - 2 * p).polynomials();
        let contained = !hs.is_empty() && hs.iter().all(|h| lap.apply(&(&factor * h)).is_zero());
        let predicted = big_m % 2 == 0 && 2 * p as i64 == 2 * k as i64 + big_m - 2;
        out.require(contained == predicted, || {
            format!("R^{} H_{} ⊂ H_{k} is {contained} at ({m},{n}), expected {predicted}", 2 * p, k - 2 * p)
        });
        out.row(Record::new().with("k", k).with("p", p).with("contained", contained).with("predicted", predicted));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert!(is_window(2, 1, 2));
        assert!(!is_window(2, 1, 3));
        assert!(is_window(2, 2, 3) && is_window(2, 2, 4) && !is_window(2, 2, 2));
        assert!(is_window(4, 2, 2));
        assert!(!is_window(3, 1, 2));
    }

    #[test]
    fn simple_dims() {
        assert_eq!(simple_dim(2, 1, 2).unwrap(), 6);
        assert_eq!(simple_dim(3, 1, 2).unwrap(), 12);
        assert_eq!(simple_dim(3, 0, 2).unwrap(), 5);
        for (m, n) in [(2, 0), (2, 1), (3, 2), (4, 2)] {
            assert_eq!(simple_dim(m, n, 0).unwrap(), 1);
        }
    }

    #[test]
    fn closed_form_matches_quotient() {
        for m in 2..=4 {
            for n in 0..=2 {
                for k in 0..=5 {
                    let q = RepSpace::new(SpaceSpec::new(SpaceKind::HkModSub, m, n, k)).unwrap();
                    let closed = simple_dim(m, n, k).unwrap();
                    assert_eq!(closed, q.dim() as i64, "({m},{n},{k})");
                    if is_window(m, n, k) {
                        let d = (2 - superdim(m, n) - k as i64) as usize;
                        assert_eq!(closed, dim_hk(m, n, k).unwrap() - dim_hk(m, n, d).unwrap());
                    }
                    let total: usize = decompose_simple(m, n, k).unwrap().iter().map(|p| p.dim).sum();
                    assert_eq!(total as i64, closed, "({m},{n},{k})");
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let pieces = decompose_simple(2, 1, 2).unwrap();
        let labels: Vec<_> = pieces.iter().map(|p| (p.j, p.l, p.dim)).collect();
        assert_eq!(labels, vec![(0, 0, 2), (1, 0, 4)]);
        assert_eq!(decompose_simple(3, 1, 0).unwrap().len(), 1);
    }

    #[test]
    fn window_cells() {
        for (m, n, k) in [(2, 1, 2), (2, 2, 3), (2, 2, 4), (4, 2, 2)] {
            let out = window_submodule_check(m, n, k).unwrap();
            assert!(out.passed(), "({m},{n},{k}): {:?}", out.counterexample);
        }
        assert!(window_submodule_check(3, 1, 2).is_err());
    }

    #[test]
    fn only_predicted_inclusions() {
        for m in 1..=4 {
            for n in 0..=2 {
                for k in 0..=5 {
                    let out = inclusion_obstruction(m, n, k).unwrap();
                    assert!(out.passed(), "({m},{n},{k}): {:?}", out.counterexample);
                }
            }
        }
    }
}
