//! `osp(m|2n)`-modules built from harmonic polynomials: generator matrices,
//! submodule closures, irreducibility, the simple modules `L_(k,0,...,0)` and
//! branching to `osp(m-1|2n)`.

mod branching;
mod graph;
mod simple;

pub use branching::{branching, in_one_minus_two_n, normal_form, not_completely_reducible, rule as branch_rule, BranchRule, Branching};
pub use graph::{is_irreducible, is_irreducible_by_closures, PieceGraph};
pub use simple::{
    decompose_simple, in_minus_two_n, inclusion_obstruction, is_window, radial_submodule, simple_dim,
    window_submodule_check, SimplePiece,
};

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diffops::{commutator, generators, laplace_beltrami, nabla2, r2, LinearOperator};
use crate::error::{precondition, Error, Result};
use crate::harmonic::{bosonic_harmonics, harmonic_basis, shared_basis};
use crate::linalg::{kernel, residues, Echelon, ModEchelon, ModMatrix, SparseMatrix, SparseVec, Subspace};
use crate::report::{Outcome, Record};
use crate::superalgebra::{MonomialBasis, Rational, SuperMonomial, SuperPolynomial, Superspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `P_k`.
    Pk,
    /// `H_k`.
    Hk,
    /// `P_k / R² P_{k-2}`.
    PkModR2,
    /// `H_k / (H_k ∩ R² P_{k-2})`.
    HkModSub,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Pk => "P_k",
            SpaceKind::Hk => "H_k",
            SpaceKind::PkModR2 => "P_k/R^2P_{k-2}",
            SpaceKind::HkModSub => "H_k/(H_k∩R^2P_{k-2})",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, m: usize, n: usize, k: usize) -> Self {
        SpaceSpec { kind, m, n, k }
    }
}

/// One generator acting on a representation space.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    /// 0-based unified indices of `L_ij`.
    pub indices: (usize, usize),
    pub odd: bool,
    pub operator: LinearOperator,
    pub matrix: SparseMatrix,
}

/// A representation space with exact generator matrices in the induced basis.
///
/// Vectors of the space are coordinates with respect to `basis`; for
/// quotients the basis rows are reduced modulo `divisor`, so they represent
/// the classes of a complement chosen from the canonical divisor pivots.
#[derive(Debug, Clone)]
pub struct RepSpace {
    pub spec: SpaceSpec,
    pub monomials: Arc<MonomialBasis>,
    pub basis: Subspace,
    pub divisor: Subspace,
    pub generators: Vec<GeneratorMatrix>,
}

/// `H_k ∩ R²P_{k-2} = R² ker(∇²R² on P_{k-2})`, in `P_k` coordinates.
pub fn harmonic_radial_intersection(m: usize, n: usize, k: usize) -> Subspace {
    let target = shared_basis(m, n, k);
    if k < 2 {
        return Subspace::zero(target.len());
    }
    let source = shared_basis(m, n, k - 2);
    let rr = r2(m, n);
    let op = nabla2(m, n) * LinearOperator::mul_by(rr.clone());
    let ker = kernel(&op.matrix(&source).cols);
    let vectors: Vec<SparseVec> =
        ker.basis().iter().map(|v| target.coords(&(&rr * &source.polynomial(v)))).collect();
    Subspace::span(target.len(), &vectors)
}

/// `R² P_{k-2}` in `P_k` coordinates.
pub fn radial_multiples(m: usize, n: usize, k: usize) -> Subspace {
    let target = shared_basis(m, n, k);
    if k < 2 {
        return Subspace::zero(target.len());
    }
    let rr = r2(m, n);
    let source = shared_basis(m, n, k - 2);
    let vectors: Vec<SparseVec> =
        source.monomials().iter().map(|mo| target.coords(&rr.mul_monomial(mo, &Rational::from(1)))).collect();
    Subspace::span(target.len(), &vectors)
}

impl RepSpace {
    pub fn new(spec: SpaceSpec) -> Result<Self> {
        let SpaceSpec { kind, m, n, k } = spec;
        precondition(m + n >= 1, || "a representation space needs m + n >= 1".into())?;
        let monomials = shared_basis(m, n, k);
        let dim_p = monomials.len();
        let (space, divisor) = match kind {
            SpaceKind::Pk => (Subspace::full(dim_p), Subspace::zero(dim_p)),
            SpaceKind::Hk => (harmonic_basis(m, n, k).space, Subspace::zero(dim_p)),
            SpaceKind::PkModR2 => (Subspace::full(dim_p), radial_multiples(m, n, k)),
            SpaceKind::HkModSub => (harmonic_basis(m, n, k).space, harmonic_radial_intersection(m, n, k)),
        };
        let basis = space.complement_mod(&divisor);
        let whole = basis.sum(&divisor);
        let ops = generators(&Superspace::new(m, n));
        let built: Vec<Result<GeneratorMatrix>> = ops
            .into_par_iter()
            .map(|(indices, operator, odd)| {
                let ambient = operator.matrix(&monomials);
                for d in divisor.basis() {
                    if !divisor.contains(&ambient.apply(d)) {
                        return Err(Error::Inconsistent(format!(
                            "L_{:?} does not preserve the divisor of {kind} at ({m},{n},{k})",
                            indices
                        )));
                    }
                }
                let mut cols = Vec::with_capacity(basis.dim());
                for b in basis.basis() {
                    let image = ambient.apply(b);
                    if !whole.contains(&image) {
                        return Err(Error::Inconsistent(format!(
                            "L_{:?} leaves {kind} at ({m},{n},{k})",
                            indices
                        )));
                    }
                    cols.push(basis.coords(&divisor.reduce(&image)));
                }
                let matrix = SparseMatrix::from_cols(basis.dim(), cols);
                Ok(GeneratorMatrix { indices, odd, operator, matrix })
            })
            .collect();
        let generators = built.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(RepSpace { spec, monomials, basis, divisor, generators })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Coordinates of (the class of) a polynomial of the space.
    pub fn vector_of(&self, p: &SuperPolynomial) -> Option<SparseVec> {
        let reduced = self.divisor.reduce(&self.monomials.coords(p));
        self.basis.contains(&reduced).then(|| self.basis.coords(&reduced))
    }

    /// A representative polynomial of a vector.
    pub fn polynomial_of(&self, v: &SparseVec) -> SuperPolynomial {
        let mut ambient = SparseVec::zero();
        for (i, c) in v.iter() {
            ambient = ambient.axpy(c, &self.basis.basis()[i]);
        }
        self.monomials.polynomial(&ambient)
    }

    /// Matrix of an arbitrary degree-preserving operator that maps the space
    /// (and the divisor) into itself.
    pub fn operator_matrix(&self, op: &LinearOperator) -> SparseMatrix {
        let cols = self
            .basis
            .basis()
            .par_iter()
            .map(|b| {
                let image = self.monomials.coords(&op.apply(&self.monomials.polynomial(b)));
                self.basis.coords(&self.divisor.reduce(&image))
            })
            .collect();
        SparseMatrix::from_cols(self.dim(), cols)
    }

    fn mod_generators(&self) -> Option<Vec<ModMatrix>> {
        self.generators.iter().map(|g| ModMatrix::from_matrix(&g.matrix)).collect()
    }
}

/// Smallest generator-invariant subspace containing the seeds (exact).
pub fn submodule_closure(rep: &RepSpace, seeds: &[SparseVec]) -> Subspace {
    let mut e = Echelon::new();
    let mut queue: VecDeque<SparseVec> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if e.rank() == rep.dim() {
            break;
        }
        let r = e.reduce(&v);
        if r.is_zero() {
            continue;
        }
        e.insert(&r);
        for g in &rep.generators {
            let w = g.matrix.apply(&r);
            if !w.is_zero() {
                queue.push_back(w);
            }
        }
    }
    Subspace::from_echelon(rep.dim(), e)
}

/// Whether the closure of the seeds is the whole space. A modular closure
/// that is already everything certifies the answer (its dimension bounds the
/// rational one from below); otherwise the exact closure decides.
pub fn generates_everything(rep: &RepSpace, seeds: &[SparseVec]) -> bool {
    let dim = rep.dim();
    if dim == 0 {
        return true;
    }
    if let Some(mods) = rep.mod_generators() {
        let mut e = ModEchelon::new(dim);
        let mut queue: VecDeque<Vec<u64>> = VecDeque::new();
        let mut ok = true;
        for s in seeds {
            match residues(s, dim) {
                Some(r) => queue.push_back(r),
                None => ok = false,
            }
        }
        while ok && e.rank() < dim {
            let Some(v) = queue.pop_front() else { break };
            if let Some(row) = e.insert(v) {
                let row = row.to_vec();
                for g in &mods {
                    queue.push_back(g.apply(&row));
                }
            }
        }
        if ok && e.rank() == dim {
            return true;
        }
    }
    submodule_closure(rep, seeds).dim() == dim
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A cyclic vector: the space is indecomposable.
    Verified(String),
    Inconclusive,
}

impl Witness {
    pub fn is_verified(&self) -> bool {
        matches!(self, Witness::Verified(_))
    }
}

/// Look for a cyclic vector. Default candidates are the bosonic harmonics
/// `H_k^b` followed by a few random combinations.
pub fn indecomposability_witness(rep: &RepSpace, candidates: Option<Vec<SparseVec>>, seed: u64) -> Witness {
    if rep.dim() == 0 {
        return Witness::Inconclusive;
    }
    let candidates = candidates.unwrap_or_else(|| default_candidates(rep, seed));
    for c in candidates {
        if !c.is_zero() && generates_everything(rep, std::slice::from_ref(&c)) {
            return Witness::Verified(rep.polynomial_of(&c).to_string());
        }
    }
    Witness::Inconclusive
}

fn default_candidates(rep: &RepSpace, seed: u64) -> Vec<SparseVec> {
    let SpaceSpec { m, k, .. } = rep.spec;
    let mut out: Vec<SparseVec> = Vec::new();
    if m >= 1 {
        for h in bosonic_harmonics(m, k).polynomials() {
            if let Some(v) = rep.vector_of(&h) {
                out.push(v);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        out.push(
            (0..rep.dim())
                .map(|i| (i, Rational::from(rng.random_range(-9i64..=9))))
                .collect(),
        );
    }
    out
}

/// Graded commutators of generator matrices match the matrices of the
/// operator commutators, and those lie in the span of the generators.
pub fn check_commutators(rep: &RepSpace) -> Outcome {
    let mut out = Outcome::new();
    let flat: Vec<SparseVec> = rep.generators.iter().map(|g| g.matrix.flatten()).collect();
    let span = Subspace::span(rep.dim() * rep.dim(), &flat);
    let gens = &rep.generators;
    let pairs: Vec<(usize, usize)> =
        (0..gens.len()).flat_map(|a| (a..gens.len()).map(move |b| (a, b))).collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let (ga, gb) = (&gens[a], &gens[b]);
            let both_odd = ga.odd && gb.odd;
            let ab = ga.matrix.compose(&gb.matrix);
            let ba = gb.matrix.compose(&ga.matrix);
            let bracket = if both_odd {
                SparseMatrix::from_cols(ab.nrows, ab.cols.iter().zip(&ba.cols).map(|(x, y)| x.add(y)).collect())
            } else {
                ab.sub(&ba)
            };
            let expected = rep.operator_matrix(&commutator(&ga.operator, &gb.operator, both_odd));
            if bracket != expected {
                return Some(format!("[L_{:?}, L_{:?}] differs from the operator bracket", ga.indices, gb.indices));
            }
            (!span.contains(&bracket.flatten()))
                .then(|| format!("[L_{:?}, L_{:?}] is not a combination of generators", ga.indices, gb.indices))
        })
        .collect();
    for f in &failures {
        out.fail(f.clone());
    }
    out.row(
        Record::new()
            .with("space", rep.spec.kind.to_string())
            .with("dim", rep.dim())
            .with("pairs", pairs.len())
            .with("closed", failures.is_empty()),
    );
    out
}

/// The Laplace–Beltrami matrix commutes with every generator matrix.
pub fn check_casimir_central(rep: &RepSpace) -> Outcome {
    let mut out = Outcome::new();
    let lb = rep.operator_matrix(&laplace_beltrami(rep.spec.m, rep.spec.n));
    for g in &rep.generators {
        let ok = lb.compose(&g.matrix) == g.matrix.compose(&lb);
        out.require(ok, || format!("Laplace-Beltrami does not commute with L_{:?}", g.indices));
    }
    out.row(Record::new().with("space", rep.spec.kind.to_string()).with("dim", rep.dim()).with("central", out.passed()));
    out
}

/// A bosonic monomial of `P_k`, handy as a test seed.
pub fn bosonic_seed(k: usize) -> SuperPolynomial {
    SuperPolynomial::term(SuperMonomial::bosonic(&[k as u16]), Rational::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(kind: SpaceKind, m: usize, n: usize, k: usize) -> RepSpace {
        RepSpace::new(SpaceSpec::new(kind, m, n, k)).unwrap()
    }

    #[test]
    fn rep_space_examples() {
        let h = rep(SpaceKind::Hk, 3, 1, 2);
        assert_eq!(h.dim(), 12);
        assert!(check_casimir_central(&h).passed());
        assert_eq!(rep(SpaceKind::PkModR2, 2, 1, 2).dim(), 7);
        assert_eq!(rep(SpaceKind::HkModSub, 2, 1, 2).dim(), 6);
    }

    #[test]
    fn closure_examples() {
        let h = rep(SpaceKind::Hk, 2, 1, 2);
        let full: Vec<SparseVec> = (0..h.dim()).map(SparseVec::unit).collect();
        assert_eq!(submodule_closure(&h, &full).dim(), h.dim());
        let seed = h.vector_of(&r2(2, 1)).unwrap();
        assert_eq!(submodule_closure(&h, &[seed]).dim(), 1);
        let h3 = rep(SpaceKind::Hk, 3, 1, 2);
        let v = h3.vector_of(&crate::superalgebra::parse_polynomial("x1*xg1").unwrap()).unwrap();
        assert_eq!(submodule_closure(&h3, &[v]).dim(), 12);
    }

    #[test]
    fn irreducible_examples() {
        for (m, n, k, expected) in [(3, 1, 2, true), (2, 1, 2, false), (2, 1, 3, true)] {
            let r = rep(SpaceKind::Hk, m, n, k);
            assert_eq!(is_irreducible_by_closures(&r).unwrap(), expected);
            assert_eq!(is_irreducible(&r).unwrap(), expected);
        }
        // every basis vector of H_2(2,1) is cyclic, yet R² spans a submodule
        let r = rep(SpaceKind::Hk, 2, 1, 2);
        assert!((0..r.dim()).all(|i| generates_everything(&r, &[SparseVec::unit(i)])));
    }

    #[test]
    fn witnesses() {
        assert!(indecomposability_witness(&rep(SpaceKind::Hk, 2, 1, 2), None, 1).is_verified());
        assert!(indecomposability_witness(&rep(SpaceKind::PkModR2, 2, 1, 2), None, 1).is_verified());
        assert!(indecomposability_witness(&rep(SpaceKind::Hk, 3, 1, 2), None, 1).is_verified());
    }

    #[test]
    fn commutators_close() {
        for (kind, m, n, k) in [(SpaceKind::Hk, 2, 1, 2), (SpaceKind::HkModSub, 2, 1, 2), (SpaceKind::PkModR2, 1, 1, 3)] {
            let r = rep(kind, m, n, k);
            assert!(check_commutators(&r).passed());
            assert!(check_casimir_central(&r).passed());
        }
    }
}
