use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{bosonic_eigenvalue, fermionic_eigenvalue, harmonic_pieces};
use crate::diffops::{laplace_beltrami_bosonic, laplace_beltrami_fermionic, LinearOperator};
use crate::error::{precondition, Result};
use crate::report::{Outcome, Record};
use crate::superalgebra::{Rational, SuperPolynomial};

/// A projection onto one piece of `H_k`. `spectral` marks the interpolation
/// fallback used when the closed product has a vanishing denominator.
#[derive(Debug, Clone)]
pub struct Projection {
    pub operator: LinearOperator,
    pub spectral: bool,
}

impl Projection {
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        self.operator.apply(f)
    }
}

fn check_piece(r: usize, s: usize, k: usize, m: usize, n: usize) -> Result<usize> {
    precondition(m >= 1, || "projections need m >= 1".into())?;
    precondition(2 * r + s <= k && s <= n && r <= n - s, || {
        format!("no piece (l={r}, q={s}) in H_{k} for n = {n}")
    })?;
    Ok(k - 2 * r - s)
}

fn compose(factors: Vec<LinearOperator>) -> LinearOperator {
    factors.into_iter().fold(LinearOperator::identity(), |acc, f| acc * f)
}

/// `Q^k_{r,s} = Π_{i≠p} (Δ_{LB,b} + i(m-2+i)) / ((i-p)(i+p+m-2))
/// · Π_{j≠s} (Δ_{LB,f} + j(j-2n-2)) / ((j-s)(j+s-2n-2))` with `p = k-2r-s`.
pub fn projection_q(r: usize, s: usize, k: usize, m: usize, n: usize) -> Result<Projection> {
    let p = check_piece(r, s, k, m, n)? as i64;
    let (mi, ni) = (m as i64, n as i64);
    let cb = laplace_beltrami_bosonic(m);
    let cf = laplace_beltrami_fermionic(n);
    let mut factors = Vec::new();
    for i in (0..=k as i64).filter(|&i| i != p) {
        let den = (i - p) * (i + p + mi - 2);
        if den == 0 {
            return spectral_projector(r, s, k, m, n);
        }
        let shift = cb.clone() + LinearOperator::scalar(i * (mi - 2 + i));
        factors.push(shift.scaled(Rational::new(1, den)));
    }
    let s = s as i64;
    for j in (0..=ni.min(k as i64)).filter(|&j| j != s) {
        let den = (j - s) * (j + s - 2 * ni - 2);
        let shift = cf.clone() + LinearOperator::scalar(j * (j - 2 * ni - 2));
        factors.push(shift.scaled(Rational::new(1, den)));
    }
    Ok(Projection { operator: compose(factors), spectral: false })
}

/// Lagrange interpolation projector onto the joint eigenspace of piece
/// `(r, s)`, over the eigenvalues that actually occur in `H_k`.
pub fn spectral_projector(r: usize, s: usize, k: usize, m: usize, n: usize) -> Result<Projection> {
    let p = check_piece(r, s, k, m, n)?;
    let pieces = harmonic_pieces(m, n, k)?;
    let bos: BTreeSet<Rational> = pieces.iter().map(|pc| bosonic_eigenvalue(m, pc.p)).collect();
    let ferm: BTreeSet<Rational> = pieces.iter().map(|pc| fermionic_eigenvalue(n, pc.q)).collect();
    let mut factors = interpolation(&laplace_beltrami_bosonic(m), &bosonic_eigenvalue(m, p), &bos);
    factors.extend(interpolation(&laplace_beltrami_fermionic(n), &fermionic_eigenvalue(n, s), &ferm));
    Ok(Projection { operator: compose(factors), spectral: true })
}

fn interpolation(op: &LinearOperator, target: &Rational, occurring: &BTreeSet<Rational>) -> Vec<LinearOperator> {
    occurring
        .iter()
        .filter(|&l| l != target)
        .map(|l| (op.clone() - LinearOperator::scalar(l.clone())).scaled((target - l).recip()))
        .collect()
}

/// `Q_{r,s}` applied to a random combination of each piece is the identity
/// on piece `(r, s)` and zero on the others. Pieces are joint eigenspaces,
/// so one nonzero vector per piece decides the action on the whole piece.
pub fn check_projections(m: usize, n: usize, k: usize, seed: u64) -> Result<Outcome> {
    let pieces = harmonic_pieces(m, n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((m as u64) << 40 | (n as u64) << 20 | k as u64));
    let samples: Vec<SuperPolynomial> = pieces
        .iter()
        .map(|pc| {
            let coeffs: Vec<Rational> =
                (0..pc.dim()).map(|_| Rational::from(rng.random_range(1..=9i64))).collect();
            pc.combination(&coeffs)
        })
        .collect();
    let results: Vec<Result<(Record, Option<String>)>> = pieces
        .par_iter()
        .map(|target| {
            let q = projection_q(target.l, target.q, k, m, n)?;
            let mut bad = None;
            for (pc, v) in pieces.iter().zip(&samples) {
                let w = q.apply(v);
                let same = pc.l == target.l && pc.q == target.q;
                let ok = if same { &w == v } else { w.is_zero() };
                if !ok && bad.is_none() {
                    bad = Some(format!(
                        "Q^{k}_{{{},{}}} on piece (l={}, q={}) at (m={m}, n={n}): image {w}",
                        target.l, target.q, pc.l, pc.q
                    ));
                }
            }
            let rec = Record::new()
                .with("k", k)
                .with("r", target.l)
                .with("s", target.q)
                .with("spectral", q.spectral)
                .with("holds", bad.is_none());
            Ok((rec, bad))
        })
        .collect();
    let mut out = Outcome::new();
    for r in results {
        let (rec, bad) = r?;
        out.row(rec);
        if let Some(b) = bad {
            out.fail(b);
        }
    }
    Ok(out)
}
