//! The acceptance criteria, run exactly on the full grid `m ∈ 1..=4`,
//! `n ∈ 0..=2`, `k ≤ 6`. Prints one line per criterion and exits nonzero if
//! any fails.

use std::process::ExitCode;
use std::time::Instant;

use superh_core::harmonic::{
    check_projections, dim_hk, fermionic_fischer, harmonic_basis, harmonic_pieces, verify_decomposition,
    verify_lemma_lf,
};
use superh_core::integration::{compare_integrals, invariance_suite};
use superh_core::modules::{branching, is_window, simple_dim, BranchRule, RepSpace, SpaceKind, SpaceSpec};
use superh_core::suites::{fischer_suite, killing_suite, lb_suite, run_cell, Suite};
use superh_core::{Cell, Outcome};

const K: usize = 6;
const SEED: u64 = 0x5eed;

fn grid() -> impl Iterator<Item = (usize, usize)> {
    (1..=4).flat_map(|m| (0..=2).map(move |n| (m, n)))
}

fn superdim(m: usize, n: usize) -> i64 {
    m as i64 - 2 * n as i64
}

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new() -> Self {
        Verdict { ok: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.ok {
            self.detail = what();
        }
        self.ok &= ok;
    }

    fn outcome(&mut self, cell: (usize, usize), o: &Outcome) {
        self.check(o.passed(), || format!("{cell:?}: {}", o.counterexample.clone().unwrap_or_default()));
    }
}

fn sl2() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        v.outcome((m, n), &run_cell(Suite::Sl2, m, n, K, SEED).unwrap());
    }
    v
}

fn laplace_beltrami() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        v.outcome((m, n), &lb_suite(m, n, K));
    }
    v
}

fn dimensions() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        for k in 0..=K {
            let closed = dim_hk(m, n, k).unwrap();
            let kernel = harmonic_basis(m, n, k).dim() as i64;
            v.check(closed == kernel, || format!("({m},{n},{k}): formula {closed}, kernel {kernel}"));
        }
        v.check(dim_hk(m, n, 1).unwrap() == (m + 2 * n) as i64, || format!("dim H_1 at ({m},{n})"));
    }
    v.check(dim_hk(2, 1, 2).unwrap() == 7, || "dim H_2(2,1) != 7".into());
    v
}

fn fischer() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        let out = fischer_suite(m, n, K);
        v.outcome((m, n), &out);
        let all_hold = out.rows.iter().all(|r| r.get("direct_sum") == Some(&Cell::Bool(true)));
        let expected = !(superdim(m, n) <= 0 && superdim(m, n) % 2 == 0);
        v.check(all_hold == expected, || format!("({m},{n}): holds for all k is {all_hold}, expected {expected}"));
    }
    for n in 1..=2 {
        v.outcome((0, n), &fischer_suite(0, n, 2 * n));
        v.check(fermionic_fischer(n), || format!("truncated decomposition for n = {n}"));
    }
    v
}

fn projections() -> Verdict {
    let mut v = Verdict::new();
    let mut spectral_cells = Vec::new();
    for (m, n) in grid() {
        for k in 0..=K {
            let pieces = harmonic_pieces(m, n, k).unwrap();
            v.outcome((m, n), &verify_decomposition(m, n, k, &pieces));
            let out = check_projections(m, n, k, SEED).unwrap();
            v.outcome((m, n), &out);
            if out.rows.iter().any(|r| r.get("spectral") == Some(&Cell::Bool(true))) {
                spectral_cells.push((m, n, k));
            }
        }
    }
    // the closed product has a zero denominator only with one bosonic variable
    v.check(!spectral_cells.is_empty() && spectral_cells.iter().all(|c| c.0 == 1), || {
        format!("spectral fallback used on {spectral_cells:?}")
    });
    v
}

fn lemma_lf() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid().filter(|&(_, n)| n >= 1) {
        for q in 0..n {
            for k in 0..=n - q {
                for p in 0..=K.saturating_sub(2 * k + q) {
                    let ok = verify_lemma_lf(k, p, q, m, n).unwrap();
                    v.check(ok, || format!("(k,p,q) = ({k},{p},{q}) at ({m},{n})"));
                }
            }
        }
    }
    v
}

fn integrals() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        v.outcome((m, n), &compare_integrals(m, n, K).unwrap());
        v.outcome((m, n), &invariance_suite(m, n, K).unwrap());
    }
    v
}

fn irreducibility() -> Verdict {
    let mut v = Verdict::new();
    let mut windows = 0;
    for m in 2..=4 {
        for n in 1..=2 {
            let out = run_cell(Suite::Irreducibility, m, n, K, SEED).unwrap();
            v.outcome((m, n), &out);
            for r in &out.rows {
                let k: usize = r.get("k").unwrap().to_string().parse().unwrap();
                let expected = superdim(m, n) > 0
                    || superdim(m, n) % 2 != 0
                    || k as i64 > 2 - superdim(m, n)
                    || (k as i64) < 2 - superdim(m, n) / 2;
                v.check(r.get("irreducible") == Some(&Cell::Bool(expected)), || format!("H_{k} at ({m},{n})"));
                if !expected {
                    windows += 1;
                    let verified = r.get("indecomposable") == Some(&Cell::Text("verified".into()));
                    v.check(verified, || format!("no witness for H_{k} at ({m},{n})"));
                }
            }
        }
    }
    v.check(windows > 0, || "no window cell on the grid".into());
    v
}

fn windows() -> Verdict {
    let mut v = Verdict::new();
    let mut cells = 0;
    for (m, n) in grid().filter(|&(m, _)| m >= 2) {
        let out = run_cell(Suite::Windows, m, n, K, SEED).unwrap();
        v.outcome((m, n), &out);
        cells += out.rows.len();
        for r in &out.rows {
            for key in ["equal", "invariant", "sub_irreducible", "quotient_irreducible"] {
                v.check(r.get(key) == Some(&Cell::Bool(true)), || format!("{key} at ({m},{n})"));
            }
        }
        for k in 0..=K {
            let q = RepSpace::new(SpaceSpec::new(SpaceKind::HkModSub, m, n, k)).unwrap();
            let closed = simple_dim(m, n, k).unwrap();
            v.check(closed == q.dim() as i64, || format!("({m},{n},{k}): {closed} vs {}", q.dim()));
        }
    }
    v.check(cells == 4, || format!("{cells} window cells, expected 4"));
    v.check(simple_dim(2, 1, 2).unwrap() == 6, || "dim L_(2,0) at (2,1) != 6".into());
    v
}

fn branching_rules() -> Verdict {
    let mut v = Verdict::new();
    let required = |m: usize, n: usize, k: usize| {
        (m, n) == (2, 1) && k <= 4 || (m, n) == (4, 1) && k <= 3 || (m, n) == (4, 2) && k <= 3
    };
    for (m, n) in grid().filter(|&(m, _)| m >= 2) {
        for k in 0..=K {
            let b = branching(m, n, k, true).unwrap();
            v.outcome((m, n), &b.outcome);
            let big_m = superdim(m, n);
            let ncr = big_m <= 1 && big_m % 2 != 0 && k as i64 >= 2 + (1 - big_m) / 2;
            v.check((b.rule == BranchRule::NotCompletelyReducible) == ncr, || format!("flag at ({m},{n},{k})"));
            if ncr {
                continue;
            }
            let total: i64 = b.branches.iter().map(|x| x.1).sum();
            v.check(total == simple_dim(m, n, k).unwrap(), || format!("dimension identity at ({m},{n},{k})"));
            let from = if is_window(m, n, k) { (3 - big_m - k as i64) as usize } else { 0 };
            let ls: Vec<usize> = b.branches.iter().map(|x| x.0).collect();
            v.check(ls == (from..=k).collect::<Vec<_>>(), || format!("branch list at ({m},{n},{k}): {ls:?}"));
            let verified = b.outcome.rows.iter().all(|r| r.get("verified") == Some(&Cell::Bool(true)));
            if required(m, n, k) {
                v.check(verified, || format!("explicit verification at ({m},{n},{k})"));
            }
        }
    }
    v
}

fn killing() -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in grid() {
        v.outcome((m, n), &killing_suite(m, n).unwrap());
    }
    v
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("sl2 relations on P_k", sl2),
        ("Laplace-Beltrami constructions and eigenvalues", laplace_beltrami),
        ("dimension formula for H_k", dimensions),
        ("Fischer decomposition", fischer),
        ("H_k decomposition and projections", projections),
        ("L_{1,1+m} f identity", lemma_lf),
        ("Pizzetti and phi-form integrals, invariance", integrals),
        ("irreducibility windows", irreducibility),
        ("window submodule structure", windows),
        ("branching rules", branching_rules),
        ("Killing characterization", killing),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        let secs = t.elapsed().as_secs_f64();
        if v.ok {
            println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1);
        } else {
            failed += 1;
            println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {}", i + 1, v.detail);
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
