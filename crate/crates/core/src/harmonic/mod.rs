//! Spherical harmonics, the Fischer decomposition and the `so(m) ⊕ sp(2n)`
//! pieces of `H_k`.

mod projection;

pub use projection::{check_projections, projection_q, spectral_projector, Projection};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use rayon::prelude::*;

use crate::diffops::{
    laplace_beltrami_bosonic, laplace_beltrami_fermionic, nabla2, osp_generator,
    r2, r2_bosonic, theta2, LinearOperator,
};
use crate::error::{precondition, Error, Result};
use crate::linalg::{kernel, rank, Subspace};
use crate::report::{Outcome, Record};
use crate::superalgebra::rational::{binomial, factorial};
use crate::superalgebra::{MonomialBasis, Rational, SuperPolynomial};

/// A subspace of homogeneous polynomials, in coordinates of a monomial basis.
#[derive(Debug, Clone)]
pub struct PolySubspace {
    pub monomials: Arc<MonomialBasis>,
    pub space: Subspace,
}

impl PolySubspace {
    pub fn new(monomials: Arc<MonomialBasis>, space: Subspace) -> Self {
        PolySubspace { monomials, space }
    }

    pub fn from_polynomials(monomials: Arc<MonomialBasis>, polys: &[SuperPolynomial]) -> Self {
        let coords: Vec<_> = polys.iter().map(|p| monomials.coords(p)).collect();
        let space = Subspace::span(monomials.len(), &coords);
        PolySubspace { monomials, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The canonical basis as polynomials.
    pub fn polynomials(&self) -> Vec<SuperPolynomial> {
        self.space.basis().iter().map(|v| self.monomials.polynomial(v)).collect()
    }

    pub fn contains(&self, p: &SuperPolynomial) -> bool {
        self.space.contains(&self.monomials.coords(p))
    }
}

impl PartialEq for PolySubspace {
    fn eq(&self, other: &Self) -> bool {
        self.monomials.monomials() == other.monomials.monomials() && self.space == other.space
    }
}

type Cache<T> = Mutex<HashMap<(usize, usize, usize), T>>;

fn basis_cache() -> &'static Cache<Arc<MonomialBasis>> {
    static CACHE: OnceLock<Cache<Arc<MonomialBasis>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared monomial basis of `P_k(m, n)`.
pub fn shared_basis(m: usize, n: usize, k: usize) -> Arc<MonomialBasis> {
    if let Some(b) = basis_cache().lock().expect("cache lock").get(&(m, n, k)) {
        return b.clone();
    }
    let b = Arc::new(MonomialBasis::new(m, n, k));
    basis_cache().lock().expect("cache lock").entry((m, n, k)).or_insert(b).clone()
}

fn kernel_of(op: &LinearOperator, monomials: Arc<MonomialBasis>) -> PolySubspace {
    let matrix = op.matrix(&monomials);
    let space = kernel(&matrix.cols);
    PolySubspace::new(monomials, space)
}

fn harmonic_cache() -> &'static Cache<PolySubspace> {
    static CACHE: OnceLock<Cache<PolySubspace>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `H_k`: the kernel of `∇²` on `P_k`.
pub fn harmonic_basis(m: usize, n: usize, k: usize) -> PolySubspace {
    if let Some(h) = harmonic_cache().lock().expect("cache lock").get(&(m, n, k)) {
        return h.clone();
    }
    let monomials = shared_basis(m, n, k);
    let h = if k < 2 {
        let len = monomials.len();
        PolySubspace::new(monomials, Subspace::full(len))
    } else {
        kernel_of(&nabla2(m, n), monomials)
    };
    harmonic_cache().lock().expect("cache lock").insert((m, n, k), h.clone());
    h
}

/// Closed-form `dim H_k` for `m ≥ 1`, with `C(a, b) = 0` for `a < b` or `a < 0`.
pub fn dim_hk(m: usize, n: usize, k: usize) -> Result<i64> {
    precondition(m >= 1, || "the dimension formula needs m >= 1".into())?;
    let (m, n, k) = (m as i64, n as i64, k as i64);
    let first: i64 = (0..=k.min(2 * n)).map(|i| binomial(2 * n, i) * binomial(k - i + m - 1, m - 1)).sum();
    let second: i64 = (0..=(k - 2).min(2 * n)).map(|i| binomial(2 * n, i) * binomial(k - i + m - 3, m - 1)).sum();
    Ok(first - second)
}

/// `H_p^b`: purely bosonic harmonics of degree `p` in `m` variables.
pub fn bosonic_harmonics(m: usize, p: usize) -> PolySubspace {
    harmonic_basis(m, 0, p)
}

/// `H_q^f`: kernel of the fermionic Laplacian on Grassmann polynomials of
/// degree `q` (zero for `q > 2n`).
pub fn fermionic_harmonics(n: usize, q: usize) -> PolySubspace {
    harmonic_basis(0, n, q)
}

/// One summand `R^{2j} H_{k-2j}` of a Fischer decomposition.
#[derive(Debug, Clone)]
pub struct FischerPiece {
    pub j: usize,
    pub vectors: Vec<SuperPolynomial>,
}

#[derive(Debug, Clone)]
pub struct FischerDecomposition {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub pieces: Vec<FischerPiece>,
    /// The sum is direct and spans `P_k`.
    pub direct_sum: bool,
}

impl FischerDecomposition {
    pub fn subspace(&self, j: usize) -> Option<PolySubspace> {
        let piece = self.pieces.iter().find(|p| p.j == j)?;
        Some(PolySubspace::from_polynomials(shared_basis(self.m, self.n, self.k), &piece.vectors))
    }
}

/// `P_k = ⊕_j R^{2j} H_{k-2j}`, or its truncated form `⊕_{j ≤ n-(k-2j)}
/// θ^{2j} H^f_{k-2j}` when `m = 0`.
///
/// For `m ≥ 1` the flag is decided by: the dimensions add up to `dim P_k`
/// and `∇²R²` is injective on `P_{d-2}` for every `d ≡ k (mod 2)`,
/// `2 ≤ d ≤ k` (equivalently `H_d ∩ R²P_{d-2} = 0`).
pub fn fischer(m: usize, n: usize, k: usize) -> FischerDecomposition {
    let rr = r2(m, n);
    let mut pieces = Vec::new();
    for j in 0..=k / 2 {
        let d = k - 2 * j;
        if m == 0 && (d > n || j > n - d) {
            continue;
        }
        let power = rr.pow(j as u32);
        let vectors = harmonic_basis(m, n, d).polynomials().iter().map(|h| &power * h).collect();
        pieces.push(FischerPiece { j, vectors });
    }
    let total: usize = pieces.iter().map(|p| p.vectors.len()).sum();
    let dim_pk = shared_basis(m, n, k).len();
    let direct_sum = if m == 0 {
        total == dim_pk && concatenated_rank(m, n, k, &pieces) == dim_pk
    } else {
        total == dim_pk
            && (2..=k).rev().step_by(2).all(|d| {
                let source = shared_basis(m, n, d - 2);
                let op = nabla2(m, n) * LinearOperator::mul_by(rr.clone());
                rank(&op.matrix(&source).cols, source.len()) == source.len()
            })
    };
    FischerDecomposition { m, n, k, pieces, direct_sum }
}

fn concatenated_rank(m: usize, n: usize, k: usize, pieces: &[FischerPiece]) -> usize {
    let monomials = shared_basis(m, n, k);
    let coords: Vec<_> = pieces.iter().flat_map(|p| p.vectors.iter().map(|v| monomials.coords(v))).collect();
    rank(&coords, monomials.len())
}

/// Direct-sum-and-span of the Fischer pieces by the rank of their
/// concatenated bases.
pub fn fischer_by_rank(m: usize, n: usize, k: usize) -> bool {
    let d = fischer(m, n, k);
    let dim_pk = shared_basis(m, n, k).len();
    let total: usize = d.pieces.iter().map(|p| p.vectors.len()).sum();
    total == dim_pk && concatenated_rank(m, n, k, &d.pieces) == dim_pk
}

/// `Λ_{2n} = ⊕_k ⊕_{j ≤ n-k} θ^{2j} H^f_k`, by a rank computation on all of `Λ_{2n}`.
pub fn fermionic_fischer(n: usize) -> bool {
    let t2 = theta2(n);
    let mut vectors: Vec<(usize, SuperPolynomial)> = Vec::new();
    for k in 0..=n {
        for h in fermionic_harmonics(n, k).polynomials() {
            for j in 0..=n - k {
                vectors.push((k + 2 * j, &t2.pow(j as u32) * &h));
            }
        }
    }
    if vectors.len() != 1 << (2 * n) {
        return false;
    }
    (0..=2 * n).all(|d| {
        let monomials = shared_basis(0, n, d);
        let coords: Vec<_> = vectors.iter().filter(|(e, _)| *e == d).map(|(_, v)| monomials.coords(v)).collect();
        coords.len() == monomials.len() && rank(&coords, monomials.len()) == monomials.len()
    })
}

/// `f_{k,p,q} = Σ_s a_s r^{2k-2s} θ^{2s}` with
/// `a_s = C(k,s) (n-q-s)!/(n-q-k)! Γ(m/2+p+k)/Γ(m/2+p+k-s)`.
pub fn f_poly(k: usize, p: usize, q: usize, m: usize, n: usize) -> Result<SuperPolynomial> {
    precondition(m >= 1, || "f_{k,p,q} needs m >= 1".into())?;
    precondition(q <= n && k <= n - q, || format!("f_{{{k},{p},{q}}} needs q <= n and k <= n - q (n = {n})"))?;
    let rr = r2_bosonic(m);
    let t2 = theta2(n);
    let top = Rational::new(m as i64, 2) + Rational::from((p + k) as i64);
    let mut out = SuperPolynomial::zero();
    let mut falling = Rational::one();
    for s in 0..=k {
        if s > 0 {
            falling *= &top - Rational::from(s as i64);
        }
        let a = Rational::from(binomial(k as i64, s as i64)) * factorial((n - q - s) as u32)
            / factorial((n - q - k) as u32)
            * &falling;
        out = out + (&rr.pow((k - s) as u32) * &t2.pow(s as u32)).scale(&a);
    }
    Ok(out)
}

/// Eigenvalue of `Δ_{LB,b}` on `H_p^b`.
pub fn bosonic_eigenvalue(m: usize, p: usize) -> Rational {
    Rational::from(-(p as i64) * (m as i64 - 2 + p as i64))
}

/// Eigenvalue of `Δ_{LB,f}` on `H_q^f`.
pub fn fermionic_eigenvalue(n: usize, q: usize) -> Rational {
    Rational::from(-(q as i64) * (q as i64 - 2 * n as i64 - 2))
}

/// `f_{l,p,q} H_p^b ⊗ H_q^f ⊂ H_{2l+p+q}`.
#[derive(Debug, Clone)]
pub struct HarmonicPiece {
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub vectors: Vec<SuperPolynomial>,
}

impl HarmonicPiece {
    pub fn k(&self) -> usize {
        2 * self.l + self.p + self.q
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn subspace(&self, m: usize, n: usize) -> PolySubspace {
        PolySubspace::from_polynomials(shared_basis(m, n, self.k()), &self.vectors)
    }

    /// A combination of the spanning vectors with the given coefficients.
    pub fn combination(&self, coeffs: &[Rational]) -> SuperPolynomial {
        self.vectors.iter().zip(coeffs).map(|(v, c)| v.scale(c)).sum()
    }
}

/// The nonzero pieces `f_{l,k-2l-j,j} H^b ⊗ H^f` of `H_k`, unverified.
pub fn harmonic_pieces(m: usize, n: usize, k: usize) -> Result<Vec<HarmonicPiece>> {
    precondition(m >= 1, || "the decomposition of H_k needs m >= 1".into())?;
    let mut out = Vec::new();
    for q in 0..=n.min(k) {
        for l in 0..=(n - q).min((k - q) / 2) {
            let p = k - 2 * l - q;
            let f = f_poly(l, p, q, m, n)?;
            let hb = bosonic_harmonics(m, p).polynomials();
            let hf = fermionic_harmonics(n, q).polynomials();
            if hb.is_empty() || hf.is_empty() {
                continue;
            }
            let vectors = hb
                .iter()
                .flat_map(|b| {
                    let fb = &f * b;
                    hf.iter().map(move |g| &fb * g).collect::<Vec<_>>()
                })
                .collect();
            out.push(HarmonicPiece { l, p, q, vectors });
        }
    }
    Ok(out)
}

/// Pieces of `H_k`, after checking that they form a direct sum equal to `H_k`.
pub fn decompose_hk(m: usize, n: usize, k: usize) -> Result<Vec<HarmonicPiece>> {
    let pieces = harmonic_pieces(m, n, k)?;
    let outcome = verify_decomposition(m, n, k, &pieces);
    match outcome.counterexample {
        None => Ok(pieces),
        Some(c) => Err(Error::Inconsistent(c)),
    }
}

/// Every piece vector is harmonic and a joint eigenvector of the two
/// Laplace–Beltrami operators; pieces have pairwise distinct joint
/// eigenvalues or distinct `q`; the concatenated vectors have full rank equal
/// to `dim H_k`.
pub fn verify_decomposition(m: usize, n: usize, k: usize, pieces: &[HarmonicPiece]) -> Outcome {
    let mut out = Outcome::new();
    let lap = nabla2(m, n);
    let cb = laplace_beltrami_bosonic(m);
    let cf = laplace_beltrami_fermionic(n);
    for piece in pieces {
        let lb = bosonic_eigenvalue(m, piece.p);
        let lf = fermionic_eigenvalue(n, piece.q);
        let bad = piece.vectors.par_iter().find_any(|v| {
            !lap.apply(v).is_zero() || cb.apply(v) != v.scale(&lb) || cf.apply(v) != v.scale(&lf)
        });
        if let Some(v) = bad {
            out.fail(format!("piece (l={}, p={}, q={}) vector {v} is not a joint harmonic eigenvector", piece.l, piece.p, piece.q));
        }
        out.row(
            Record::new()
                .with("k", k)
                .with("l", piece.l)
                .with("p", piece.p)
                .with("q", piece.q)
                .with("dim", piece.dim())
                .with("eigen", bad.is_none()),
        );
    }
    for (a, pa) in pieces.iter().enumerate() {
        for pb in &pieces[a + 1..] {
            let same = bosonic_eigenvalue(m, pa.p) == bosonic_eigenvalue(m, pb.p) && pa.q == pb.q;
            out.require(!same, || format!("pieces ({},{},{}) and ({},{},{}) share eigenvalues", pa.l, pa.p, pa.q, pb.l, pb.p, pb.q));
        }
    }
    let monomials = shared_basis(m, n, k);
    let coords: Vec<_> = pieces.iter().flat_map(|p| p.vectors.iter().map(|v| monomials.coords(v))).collect();
    let total = coords.len();
    let r = rank(&coords, monomials.len());
    let dim_h = harmonic_basis(m, n, k).dim();
    out.require(r == total, || format!("piece vectors in H_{k} are dependent: rank {r} < {total}"));
    out.require(total == dim_h, || format!("piece dimensions sum to {total}, dim H_{k} = {dim_h}"));
    out
}

/// `L_{1,1+m} f_{k,p,q} = 2k(M/2+p+q+k-1) f_{k-1,p+1,q+1} x_1 xg_1`.
pub fn verify_lemma_lf(k: usize, p: usize, q: usize, m: usize, n: usize) -> Result<bool> {
    precondition(n >= 1 && q < n, || "the identity needs n >= 1 and q < n".into())?;
    let lhs = osp_generator(0, m, m, n)?.apply(&f_poly(k, p, q, m, n)?);
    if k == 0 {
        return Ok(lhs.is_zero());
    }
    let big_m = Rational::new(m as i64 - 2 * n as i64, 2);
    let c = Rational::from(2 * k as i64) * (big_m + Rational::from((p + q + k) as i64 - 1));
    let rhs = (&f_poly(k - 1, p + 1, q + 1, m, n)? * &(&SuperPolynomial::x(0) * &SuperPolynomial::xg(0))).scale(&c);
    Ok(lhs == rhs)
}

/// `∇²` of `f_{k,p,q} h_b h_f` for given harmonic factors.
pub fn laplacian_of_product(
    k: usize,
    p: usize,
    q: usize,
    m: usize,
    n: usize,
    hb: &SuperPolynomial,
    hf: &SuperPolynomial,
) -> Result<SuperPolynomial> {
    let f = f_poly(k, p, q, m, n)?;
    Ok(nabla2(m, n).apply(&(&(&f * hb) * hf)))
}
