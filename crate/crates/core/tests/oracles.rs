//! Values from independent sources, frozen: classical sphere moments
//! `2 Π Γ((α_i+1)/2) / Γ((|α|+m)/2)`, the supersphere volume
//! `2 π^{M/2} / Γ(M/2)`, dimension counts from monomials, and hand
//! computations in small cases.

use superh_core::harmonic::{dim_hk, harmonic_pieces};
use superh_core::integration::{pizzetti, supersphere_integral_phi};
use superh_core::modules::{branching, decompose_simple, simple_dim, RepSpace, SpaceKind, SpaceSpec};
use superh_core::superalgebra::{monomial_basis, parse_in};
use superh_core::{Rational, ScaledRational};

const INTEGRALS: &[(usize, usize, &str, &str, i64)] = &[
    (1, 0, "1", "2", 0),
    (1, 1, "1", "-1", -2),
    (1, 2, "1", "3/2", -4),
    (2, 0, "1", "2", 2),
    (2, 1, "1", "0", 0),
    (2, 2, "1", "0", 0),
    (3, 0, "1", "4", 2),
    (3, 1, "1", "2", 0),
    (3, 2, "1", "-1", -2),
    (4, 0, "1", "2", 4),
    (4, 1, "1", "2", 2),
    (4, 2, "1", "0", 0),
    (1, 0, "x1^1", "0", 0),
    (1, 0, "x1^2", "2", 0),
    (1, 0, "x1^3", "0", 0),
    (1, 0, "x1^4", "2", 0),
    (2, 0, "x2^1", "0", 0),
    (2, 0, "x1^1", "0", 0),
    (2, 0, "x2^2", "1", 2),
    (2, 0, "x1^1*x2^1", "0", 0),
    (2, 0, "x1^2", "1", 2),
    (2, 0, "x2^3", "0", 0),
    (2, 0, "x1^1*x2^2", "0", 0),
    (2, 0, "x1^2*x2^1", "0", 0),
    (2, 0, "x1^3", "0", 0),
    (2, 0, "x2^4", "3/4", 2),
    (2, 0, "x1^1*x2^3", "0", 0),
    (2, 0, "x1^2*x2^2", "1/4", 2),
    (2, 0, "x1^3*x2^1", "0", 0),
    (2, 0, "x1^4", "3/4", 2),
    (3, 0, "x3^1", "0", 0),
    (3, 0, "x2^1", "0", 0),
    (3, 0, "x1^1", "0", 0),
    (3, 0, "x3^2", "4/3", 2),
    (3, 0, "x2^1*x3^1", "0", 0),
    (3, 0, "x2^2", "4/3", 2),
    (3, 0, "x1^1*x3^1", "0", 0),
    (3, 0, "x1^1*x2^1", "0", 0),
    (3, 0, "x1^2", "4/3", 2),
    (3, 0, "x3^3", "0", 0),
    (3, 0, "x2^1*x3^2", "0", 0),
    (3, 0, "x2^2*x3^1", "0", 0),
    (3, 0, "x2^3", "0", 0),
    (3, 0, "x1^1*x3^2", "0", 0),
    (3, 0, "x1^1*x2^1*x3^1", "0", 0),
    (3, 0, "x1^1*x2^2", "0", 0),
    (3, 0, "x1^2*x3^1", "0", 0),
    (3, 0, "x1^2*x2^1", "0", 0),
    (3, 0, "x1^3", "0", 0),
    (3, 0, "x3^4", "4/5", 2),
    (3, 0, "x2^1*x3^3", "0", 0),
    (3, 0, "x2^2*x3^2", "4/15", 2),
    (3, 0, "x2^3*x3^1", "0", 0),
    (3, 0, "x2^4", "4/5", 2),
    (3, 0, "x1^1*x3^3", "0", 0),
    (3, 0, "x1^1*x2^1*x3^2", "0", 0),
    (3, 0, "x1^1*x2^2*x3^1", "0", 0),
    (3, 0, "x1^1*x2^3", "0", 0),
    (3, 0, "x1^2*x3^2", "4/15", 2),
    (3, 0, "x1^2*x2^1*x3^1", "0", 0),
    (3, 0, "x1^2*x2^2", "4/15", 2),
    (3, 0, "x1^3*x3^1", "0", 0),
    (3, 0, "x1^3*x2^1", "0", 0),
    (3, 0, "x1^4", "4/5", 2),
    (4, 0, "x4^1", "0", 0),
    (4, 0, "x3^1", "0", 0),
    (4, 0, "x2^1", "0", 0),
    (4, 0, "x1^1", "0", 0),
    (4, 0, "x4^2", "1/2", 4),
    (4, 0, "x3^1*x4^1", "0", 0),
    (4, 0, "x3^2", "1/2", 4),
    (4, 0, "x2^1*x4^1", "0", 0),
    (4, 0, "x2^1*x3^1", "0", 0),
    (4, 0, "x2^2", "1/2", 4),
    (4, 0, "x1^1*x4^1", "0", 0),
    (4, 0, "x1^1*x3^1", "0", 0),
    (4, 0, "x1^1*x2^1", "0", 0),
    (4, 0, "x1^2", "1/2", 4),
    (4, 0, "x4^3", "0", 0),
    (4, 0, "x3^1*x4^2", "0", 0),
    (4, 0, "x3^2*x4^1", "0", 0),
    (4, 0, "x3^3", "0", 0),
    (4, 0, "x2^1*x4^2", "0", 0),
    (4, 0, "x2^1*x3^1*x4^1", "0", 0),
    (4, 0, "x2^1*x3^2", "0", 0),
    (4, 0, "x2^2*x4^1", "0", 0),
    (4, 0, "x2^2*x3^1", "0", 0),
    (4, 0, "x2^3", "0", 0),
    (4, 0, "x1^1*x4^2", "0", 0),
    (4, 0, "x1^1*x3^1*x4^1", "0", 0),
    (4, 0, "x1^1*x3^2", "0", 0),
    (4, 0, "x1^1*x2^1*x4^1", "0", 0),
    (4, 0, "x1^1*x2^1*x3^1", "0", 0),
    (4, 0, "x1^1*x2^2", "0", 0),
    (4, 0, "x1^2*x4^1", "0", 0),
    (4, 0, "x1^2*x3^1", "0", 0),
    (4, 0, "x1^2*x2^1", "0", 0),
    (4, 0, "x1^3", "0", 0),
    (4, 0, "x4^4", "1/4", 4),
    (4, 0, "x3^1*x4^3", "0", 0),
    (4, 0, "x3^2*x4^2", "1/12", 4),
    (4, 0, "x3^3*x4^1", "0", 0),
    (4, 0, "x3^4", "1/4", 4),
    (4, 0, "x2^1*x4^3", "0", 0),
    (4, 0, "x2^1*x3^1*x4^2", "0", 0),
    (4, 0, "x2^1*x3^2*x4^1", "0", 0),
    (4, 0, "x2^1*x3^3", "0", 0),
    (4, 0, "x2^2*x4^2", "1/12", 4),
    (4, 0, "x2^2*x3^1*x4^1", "0", 0),
    (4, 0, "x2^2*x3^2", "1/12", 4),
    (4, 0, "x2^3*x4^1", "0", 0),
    (4, 0, "x2^3*x3^1", "0", 0),
    (4, 0, "x2^4", "1/4", 4),
    (4, 0, "x1^1*x4^3", "0", 0),
    (4, 0, "x1^1*x3^1*x4^2", "0", 0),
    (4, 0, "x1^1*x3^2*x4^1", "0", 0),
    (4, 0, "x1^1*x3^3", "0", 0),
    (4, 0, "x1^1*x2^1*x4^2", "0", 0),
    (4, 0, "x1^1*x2^1*x3^1*x4^1", "0", 0),
    (4, 0, "x1^1*x2^1*x3^2", "0", 0),
    (4, 0, "x1^1*x2^2*x4^1", "0", 0),
    (4, 0, "x1^1*x2^2*x3^1", "0", 0),
    (4, 0, "x1^1*x2^3", "0", 0),
    (4, 0, "x1^2*x4^2", "1/12", 4),
    (4, 0, "x1^2*x3^1*x4^1", "0", 0),
    (4, 0, "x1^2*x3^2", "1/12", 4),
    (4, 0, "x1^2*x2^1*x4^1", "0", 0),
    (4, 0, "x1^2*x2^1*x3^1", "0", 0),
    (4, 0, "x1^2*x2^2", "1/12", 4),
    (4, 0, "x1^3*x4^1", "0", 0),
    (4, 0, "x1^3*x3^1", "0", 0),
    (4, 0, "x1^3*x2^1", "0", 0),
    (4, 0, "x1^4", "1/4", 4),
];

#[test]
fn integrals_match_closed_forms() {
    for &(m, n, expr, q, h) in INTEGRALS {
        let f = parse_in(expr, m, n).unwrap();
        let expected = ScaledRational::new(q.parse::<Rational>().unwrap(), h);
        assert_eq!(pizzetti(&f, m, n).unwrap(), expected, "{expr} on ({m},{n})");
        assert_eq!(supersphere_integral_phi(&f, m, n).unwrap(), expected, "{expr} on ({m},{n})");
    }
}

#[test]
fn hand_computed_integrals() {
    // ∇²(x1²) = 2, so ∫ x1² = π^{M/2} / Γ(1 + M/2); at (2,1) that is 1
    let f = parse_in("x1^2", 2, 1).unwrap();
    assert_eq!(pizzetti(&f, 2, 1).unwrap(), ScaledRational::one());
    let odd = parse_in("xg1", 2, 1).unwrap();
    assert!(pizzetti(&odd, 2, 1).unwrap().is_zero());
}

#[test]
fn dimensions_from_monomial_counts() {
    // away from M ∈ -2N the Laplacian is onto, so dim H_k = dim P_k - dim P_{k-2}
    for m in 1..=4usize {
        for n in 0..=2usize {
            let big_m = m as i64 - 2 * n as i64;
            if big_m <= 0 && big_m % 2 == 0 {
                continue;
            }
            for k in 0..=6 {
                let below = if k >= 2 { monomial_basis(m, n, k - 2).len() } else { 0 };
                let expected = (monomial_basis(m, n, k).len() - below) as i64;
                assert_eq!(dim_hk(m, n, k).unwrap(), expected, "({m},{n},{k})");
            }
        }
    }
    for k in 0..=6 {
        assert_eq!(dim_hk(3, 0, k).unwrap(), 2 * k as i64 + 1);
        assert_eq!(dim_hk(2, 0, k).unwrap(), if k == 0 { 1 } else { 2 });
    }
}

#[test]
fn small_representations() {
    let dim = |kind, m, n, k| RepSpace::new(SpaceSpec::new(kind, m, n, k)).unwrap().dim();
    assert_eq!(dim(SpaceKind::Hk, 2, 1, 2), 7);
    assert_eq!(dim(SpaceKind::PkModR2, 2, 1, 2), 7);
    assert_eq!(dim(SpaceKind::HkModSub, 2, 1, 2), 6);
    assert_eq!(dim(SpaceKind::Hk, 3, 1, 2), 12);
    assert_eq!(simple_dim(2, 1, 2).unwrap(), 6);
    assert_eq!(simple_dim(3, 0, 2).unwrap(), 5);
    let pieces: Vec<usize> = harmonic_pieces(2, 1, 2).unwrap().iter().map(|p| p.dim()).collect();
    assert_eq!(pieces, vec![2, 1, 4]);
    let simple: Vec<usize> = decompose_simple(2, 1, 2).unwrap().iter().map(|p| p.dim).collect();
    assert_eq!(simple, vec![2, 4]);
    let b = branching(2, 1, 2, true).unwrap();
    assert_eq!(b.branches, vec![(1, 3), (2, 3)]);
}
