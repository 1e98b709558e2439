//! Named verification suites over a grid of `(m, n)` cells, shared by the
//! command line and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use crate::diffops::{
    check_laplace_beltrami, check_sl2, generator_indices, killing_check, laplace_beltrami, Metric, VectorField,
};
use crate::error::{Error, Result};
use crate::harmonic::{
    check_projections, fermionic_fischer, fischer, harmonic_basis, harmonic_pieces, shared_basis,
    verify_decomposition,
};
use crate::integration::{compare_integrals, invariance_suite};
use crate::modules::{
    branching, check_casimir_central, check_commutators, in_minus_two_n, inclusion_obstruction,
    indecomposability_witness, is_irreducible, is_irreducible_by_closures, is_window, simple_dim,
    window_submodule_check, RepSpace, SpaceKind, SpaceSpec,
};
use crate::report::{Outcome, Record};
use crate::superalgebra::{Rational, Superspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Sl2,
    Lb,
    Killing,
    Projections,
    Fischer,
    Integrals,
    Irreducibility,
    Windows,
    Branching,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Sl2,
        Suite::Lb,
        Suite::Killing,
        Suite::Projections,
        Suite::Fischer,
        Suite::Integrals,
        Suite::Irreducibility,
        Suite::Windows,
        Suite::Branching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sl2 => "sl2",
            Suite::Lb => "lb",
            Suite::Killing => "killing",
            Suite::Projections => "projections",
            Suite::Fischer => "fischer",
            Suite::Integrals => "integrals",
            Suite::Irreducibility => "irreducibility",
            Suite::Windows => "windows",
            Suite::Branching => "branching",
        }
    }

    /// Whether the suite says anything about `R^{m|2n}`.
    pub fn applies(self, m: usize, n: usize) -> bool {
        match self {
            Suite::Sl2 | Suite::Lb | Suite::Killing | Suite::Fischer => m + n >= 1,
            Suite::Projections | Suite::Integrals => m >= 1,
            Suite::Irreducibility => m >= 1,
            Suite::Windows | Suite::Branching => m >= 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Run one suite on one cell. Rows are tagged with `m` and `n`.
pub fn run_cell(suite: Suite, m: usize, n: usize, k_max: usize, seed: u64) -> Result<Outcome> {
    if !suite.applies(m, n) {
        return Err(Error::Precondition(format!("suite {suite} does not apply to ({m},{n})")));
    }
    let out = match suite {
        Suite::Sl2 => check_sl2(m, n, k_max),
        Suite::Lb => lb_suite(m, n, k_max),
        Suite::Killing => killing_suite(m, n)?,
        Suite::Projections => projections_suite(m, n, k_max, seed)?,
        Suite::Fischer => fischer_suite(m, n, k_max),
        Suite::Integrals => {
            let mut out = compare_integrals(m, n, k_max)?;
            out.absorb(invariance_suite(m, n, k_max)?);
            out
        }
        Suite::Irreducibility => irreducibility_suite(m, n, k_max, seed)?,
        Suite::Windows => windows_suite(m, n, k_max)?,
        Suite::Branching => branching_suite(m, n, k_max)?,
    };
    Ok(out.tagged(&Record::new().with("suite", suite.name()).with("m", m).with("n", n)))
}

/// Run suites over every cell of a grid, skipping cells a suite does not
/// apply to.
pub fn run_grid(
    suites: &[Suite],
    ms: impl IntoIterator<Item = usize> + Clone,
    ns: impl IntoIterator<Item = usize> + Clone,
    k_max: usize,
    seed: u64,
) -> Result<Outcome> {
    let mut out = Outcome::new();
    for &suite in suites {
        for m in ms.clone() {
            for n in ns.clone() {
                if suite.applies(m, n) {
                    out.absorb(run_cell(suite, m, n, k_max, seed)?);
                }
            }
        }
    }
    Ok(out)
}

/// Both Laplace–Beltrami constructions agree, and `Δ_LB h = -k(M-2+k) h` on
/// every basis vector of `H_k`.
pub fn lb_suite(m: usize, n: usize, k_max: usize) -> Outcome {
    let mut out = check_laplace_beltrami(m, n, k_max);
    let big_m = m as i64 - 2 * n as i64;
    let lb = laplace_beltrami(m, n);
    for k in 0..=k_max {
        let ki = k as i64;
        let lambda = Rational::from(-ki * (big_m - 2 + ki));
        let hs = harmonic_basis(m, n, k).polynomials();
        let bad = hs.iter().find(|h| lb.apply(h) != h.scale(&lambda));
        out.require(bad.is_none(), || format!("({m},{n}) Δ_LB {} is not {lambda} times it", bad.unwrap()));
        out.row(
            Record::new()
                .with("k", k)
                .with("dim H_k", hs.len())
                .with("eigenvalue", lambda.to_string())
                .with("eigenvectors", bad.is_none()),
        );
    }
    out
}

/// `L_ij` and `∂_{X^j}` satisfy the Killing condition; the Euler field does not.
pub fn killing_suite(m: usize, n: usize) -> Result<Outcome> {
    let space = Superspace::new(m, n);
    let mut out = Outcome::new();
    for (i, j) in generator_indices(&space) {
        let ok = killing_check(&VectorField::generator(space, i, j))?;
        out.require(ok, || format!("L_({},{}) fails the Killing condition", i + 1, j + 1));
        out.row(Record::new().with("field", format!("L_({},{})", i + 1, j + 1)).with("killing", ok).with("expected", true));
    }
    for j in 0..space.dim() {
        let ok = killing_check(&VectorField::partial(space, j))?;
        let name = format!("d/d{}", space.var(j)?);
        out.require(ok, || format!("{name} fails the Killing condition"));
        out.row(Record::new().with("field", name).with("killing", ok).with("expected", true));
    }
    // 𝔼 = Σ_j X^j ∇_j
    let metric = Metric::new(space);
    let euler = VectorField::new(space, (0..space.dim()).map(|j| metric.raised_coordinate(j)).collect())?;
    let ok = killing_check(&euler)?;
    out.require(!ok, || "the Euler field passes the Killing condition".into());
    out.row(Record::new().with("field", "euler").with("killing", ok).with("expected", false));
    Ok(out)
}

/// Pieces of `H_k` form a direct sum equal to `H_k`, and every `Q^k_{r,s}`
/// acts as the identity on its piece and as zero on the others.
pub fn projections_suite(m: usize, n: usize, k_max: usize, seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    for k in 0..=k_max {
        let pieces = harmonic_pieces(m, n, k)?;
        let d = verify_decomposition(m, n, k, &pieces);
        out.require(d.passed(), || d.counterexample.clone().unwrap_or_default());
        out.absorb(check_projections(m, n, k, seed)?);
    }
    Ok(out)
}

/// The degrees `d ≤ k`, `d ≡ k (mod 2)`, with `H_d ∩ R²P_{d-2} ≠ 0` are
/// exactly the window degrees, so the decomposition of `P_k` fails iff one
/// of them occurs.
pub fn fischer_predicted(m: usize, n: usize, k: usize) -> bool {
    m == 0 || !(2..=k).rev().step_by(2).any(|d| is_window(m, n, d))
}

pub fn fischer_suite(m: usize, n: usize, k_max: usize) -> Outcome {
    let mut out = Outcome::new();
    let big_m = m as i64 - 2 * n as i64;
    for k in 0..=k_max {
        let f = fischer(m, n, k);
        let predicted = fischer_predicted(m, n, k);
        out.require(f.direct_sum == predicted, || {
            format!("Fischer decomposition of P_{k} at ({m},{n}) is {}, expected {predicted}", f.direct_sum)
        });
        out.row(
            Record::new()
                .with("k", k)
                .with("pieces", f.pieces.len())
                .with("direct_sum", f.direct_sum)
                .with("M in -2N", m >= 1 && in_minus_two_n(big_m)),
        );
    }
    if m == 0 {
        let ok = fermionic_fischer(n);
        out.require(ok, || format!("the Grassmann algebra with n = {n} does not decompose"));
        out.row(Record::new().with("k", "all").with("pieces", "-").with("direct_sum", ok).with("M in -2N", true));
    }
    out
}

/// Verdicts for `H_k` from the piece graph and from closures, compared with
/// the window condition; cyclic vectors in the windows; generator closure,
/// centrality of `Δ_LB` and the inclusion obstruction.
pub fn irreducibility_suite(m: usize, n: usize, k_max: usize, seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    for k in 0..=k_max {
        let rep = RepSpace::new(SpaceSpec::new(SpaceKind::Hk, m, n, k))?;
        if rep.dim() == 0 {
            out.row(Record::new().with("k", k).with("dim", 0usize).with("irreducible", "-").with("expected", "-"));
            continue;
        }
        let graph = is_irreducible(&rep)?;
        let closures = is_irreducible_by_closures(&rep)?;
        let expected = !is_window(m, n, k);
        out.require(graph == closures, || format!("H_{k} at ({m},{n}): piece graph says {graph}, closures {closures}"));
        out.require(graph == expected, || format!("H_{k} at ({m},{n}): irreducible is {graph}, expected {expected}"));
        let mut rec = Record::new().with("k", k).with("dim", rep.dim()).with("irreducible", graph).with("expected", expected);
        if !graph {
            let w = indecomposability_witness(&rep, None, seed);
            out.require(w.is_verified(), || format!("no cyclic vector found in H_{k} at ({m},{n})"));
            rec = rec.with("indecomposable", if w.is_verified() { "verified" } else { "inconclusive" });
        }
        out.row(rec);
        for check in [check_commutators(&rep), check_casimir_central(&rep)] {
            out.require(check.passed(), || check.counterexample.clone().unwrap_or_default());
        }
        let o = inclusion_obstruction(m, n, k)?;
        out.require(o.passed(), || o.counterexample.clone().unwrap_or_default());
    }
    Ok(out)
}

/// Window cells get the full structure check; every degree gets the closed
/// form against the quotient dimension.
pub fn windows_suite(m: usize, n: usize, k_max: usize) -> Result<Outcome> {
    let mut out = Outcome::new();
    for k in 0..=k_max {
        let quotient = RepSpace::new(SpaceSpec::new(SpaceKind::HkModSub, m, n, k))?;
        let closed = simple_dim(m, n, k)?;
        out.require(closed == quotient.dim() as i64, || {
            format!("({m},{n},{k}): closed form {closed}, quotient dimension {}", quotient.dim())
        });
        if is_window(m, n, k) {
            out.absorb(window_submodule_check(m, n, k)?);
        }
    }
    Ok(out)
}

pub fn branching_suite(m: usize, n: usize, k_max: usize) -> Result<Outcome> {
    let mut out = Outcome::new();
    for k in 0..=k_max {
        out.absorb(branching(m, n, k, true)?.outcome);
    }
    Ok(out)
}

/// Number of monomials of degree `k`; convenience for tables.
pub fn dim_pk(m: usize, n: usize, k: usize) -> usize {
    shared_basis(m, n, k).len()
}
