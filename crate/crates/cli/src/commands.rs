use superh_core::harmonic::{decompose_hk, dim_hk};
use superh_core::integration::{pizzetti, supersphere_integral_phi};
use superh_core::modules::{branching, is_window, simple_dim};
use superh_core::suites::{fischer_suite, run_grid, Suite};
use superh_core::superalgebra::parse_in;
use superh_core::{Error, Outcome, Record, Report, Result};

use crate::{Command, Grid};

fn parameters(g: &Grid) -> Record {
    Record::new().with("m", g.m.to_string()).with("n", g.n.to_string()).with("k", g.k.to_string())
}

fn cells(g: &Grid) -> impl Iterator<Item = (usize, usize)> + '_ {
    g.m.iter().flat_map(move |m| g.n.iter().map(move |n| (m, n)))
}

pub fn run(command: &Command, seed: u64) -> Result<Report> {
    match command {
        Command::Dims(g) => Ok(Report::from_outcome("dims", parameters(g), dims(g)?)),
        Command::Check { suite, grid } => check(suite, grid, seed),
        Command::Integrate { expr, m, n } => integrate(expr, *m, *n),
        Command::Decompose(g) => Ok(Report::from_outcome("decompose", parameters(g), decompose(g)?)),
        Command::Branch(g) => Ok(Report::from_outcome("branch", parameters(g), branch(g)?)),
        Command::Fischer(g) => {
            let mut out = Outcome::new();
            for (m, n) in cells(g) {
                let o = fischer_suite(m, n, g.k.hi);
                out.absorb(o.tagged(&Record::new().with("m", m).with("n", n)));
            }
            Ok(Report::from_outcome("fischer", parameters(g), out))
        }
    }
}

fn dims(g: &Grid) -> Result<Outcome> {
    let mut out = Outcome::new();
    for (m, n) in cells(g) {
        for k in g.k.iter() {
            let h = dim_hk(m, n, k)?;
            let mut rec = Record::new().with("m", m).with("n", n).with("k", k).with("H", h);
            rec = if m >= 2 { rec.with("L", simple_dim(m, n, k)?) } else { rec.with("L", "-") };
            out.row(rec.with("window", m >= 2 && is_window(m, n, k)));
        }
    }
    Ok(out)
}

fn check(suite: &str, g: &Grid, seed: u64) -> Result<Report> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    if !suites.iter().any(|s| cells(g).any(|(m, n)| s.applies(m, n))) {
        return Err(Error::Precondition(format!("{suite} does not apply to any cell of m={}, n={}", g.m, g.n)));
    }
    let out = run_grid(&suites, g.m.iter(), g.n.iter(), g.k.hi, seed)?;
    let params = Record::new().with("suite", suite).with("m", g.m.to_string()).with("n", g.n.to_string()).with(
        "k_max",
        g.k.hi,
    );
    Ok(Report::from_outcome("check", params.with("seed", seed.to_string()), out))
}

fn integrate(expr: &str, m: usize, n: usize) -> Result<Report> {
    let f = parse_in(expr, m, n)?;
    let piz = pizzetti(&f, m, n)?;
    let phi = supersphere_integral_phi(&f, m, n)?;
    let mut out = Outcome::new();
    out.require(piz == phi, || format!("Pizzetti gives {piz}, the phi form gives {phi}"));
    out.row(Record::new().with("method", "pizzetti").with("value", piz));
    out.row(Record::new().with("method", "phi").with("value", phi));
    let params = Record::new().with("expr", expr).with("m", m).with("n", n);
    Ok(Report::from_outcome("integrate", params, out))
}

fn decompose(g: &Grid) -> Result<Outcome> {
    let mut out = Outcome::new();
    for (m, n) in cells(g) {
        for k in g.k.iter() {
            let mut pieces = decompose_hk(m, n, k)?;
            pieces.sort_by_key(|p| (p.l, p.q));
            for p in &pieces {
                out.row(
                    Record::new()
                        .with("m", m)
                        .with("n", n)
                        .with("k", k)
                        .with("l", p.l)
                        .with("p", p.p)
                        .with("q", p.q)
                        .with("dim", p.dim()),
                );
            }
        }
    }
    Ok(out)
}

fn branch(g: &Grid) -> Result<Outcome> {
    let mut out = Outcome::new();
    for (m, n) in cells(g) {
        for k in g.k.iter() {
            let b = branching(m, n, k, true)?;
            out.absorb(b.outcome.tagged(&Record::new().with("m", m).with("n", n)));
        }
    }
    Ok(out)
}
