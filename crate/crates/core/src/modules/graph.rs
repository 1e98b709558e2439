//! Irreducibility through the graph of `so(m) ⊕ sp(2n)` pieces.
//!
//! The pieces of `H_k` are pairwise non-isomorphic irreducible modules for the
//! even subalgebra, so every submodule of `H_k` (or of a quotient by a
//! submodule) is a sum of pieces. Draw an edge `P → P'` when some generator
//! moves a vector of `P` to something with a nonzero `P'` component; whether
//! that happens does not depend on the chosen nonzero vector of `P`, because
//! the vectors that fail form an even-subalgebra submodule of `P`. A sum of
//! pieces is a submodule iff it is closed under edges, so the space is
//! irreducible iff the graph is strongly connected.

use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;

use super::{harmonic_radial_intersection, generates_everything, radial_multiples, RepSpace, SpaceKind, SpaceSpec};
use crate::diffops::generators;
use crate::error::{precondition, Error, Result};
use crate::harmonic::{harmonic_basis, harmonic_pieces, shared_basis, HarmonicPiece};
use crate::linalg::{SparseVec, Subspace};
use crate::superalgebra::{SuperPolynomial, Superspace};

#[derive(Debug, Clone)]
pub struct PieceGraph {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// `(l, p, q)` labels and dimensions of the pieces.
    pub labels: Vec<(usize, usize, usize)>,
    pub dims: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Pieces lying in `H_k ∩ R² P_{k-2}`.
    pub in_radial: Vec<bool>,
    /// Spanning vectors of each piece.
    pub pieces: Vec<Vec<SuperPolynomial>>,
}

impl PieceGraph {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        precondition(m >= 1, || "the piece graph needs m >= 1".into())?;
        let pieces = harmonic_pieces(m, n, k)?;
        let basis = shared_basis(m, n, k);
        let width = basis.len();
        let total: usize = pieces.iter().map(HarmonicPiece::dim).sum();

        // rows v ⊕ e_i: reducing w ⊕ 0 leaves -coordinates of w in the tail
        let mut owner = Vec::with_capacity(total);
        let mut augmented = Vec::with_capacity(total);
        for (a, pc) in pieces.iter().enumerate() {
            for v in &pc.vectors {
                let idx = owner.len();
                owner.push(a);
                let mut entries: Vec<_> = basis.coords(v).iter().map(|(i, c)| (i, c.clone())).collect();
                entries.push((width + idx, 1.into()));
                augmented.push(SparseVec::from_sorted(entries));
            }
        }
        let solver = Subspace::span(width + total, &augmented);
        if solver.pivots().iter().any(|&p| p >= width) {
            return Err(Error::Inconsistent(format!("pieces of H_{k} at ({m},{n}) are dependent")));
        }

        let gens = generators(&Superspace::new(m, n));
        let edge_lists: Vec<Result<Vec<(usize, usize)>>> = pieces
            .par_iter()
            .enumerate()
            .map(|(a, pc)| {
                let v0 = &pc.vectors[0];
                let mut targets = vec![false; pieces.len()];
                for (_, op, _) in &gens {
                    let w = basis.coords(&op.apply(v0));
                    let (head, tail) = solver.reduce(&w).split(width);
                    if !head.is_zero() {
                        return Err(Error::Inconsistent(format!("a generator leaves H_{k} at ({m},{n})")));
                    }
                    for (i, _) in tail.iter() {
                        targets[owner[i]] = true;
                    }
                }
                Ok(targets.iter().enumerate().filter(|(b, &t)| t && *b != a).map(|(b, _)| (a, b)).collect())
            })
            .collect();
        let mut edges = Vec::new();
        for e in edge_lists {
            edges.extend(e?);
        }

        let radial = harmonic_radial_intersection(m, n, k);
        let in_radial: Vec<bool> = pieces.iter().map(|pc| radial.contains(&basis.coords(&pc.vectors[0]))).collect();
        let radial_dim: usize = pieces.iter().zip(&in_radial).filter(|(_, &r)| r).map(|(pc, _)| pc.dim()).sum();
        if radial_dim != radial.dim() {
            return Err(Error::Inconsistent(format!(
                "H_{k} ∩ R²P_{{k-2}} at ({m},{n}) is not a sum of pieces"
            )));
        }

        Ok(PieceGraph {
            m,
            n,
            k,
            labels: pieces.iter().map(|pc| (pc.l, pc.p, pc.q)).collect(),
            dims: pieces.iter().map(HarmonicPiece::dim).collect(),
            edges,
            in_radial,
            pieces: pieces.into_iter().map(|pc| pc.vectors).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Whether the pieces selected by `keep` span an irreducible
    /// subquotient: nonempty and strongly connected on the induced graph.
    pub fn strongly_connected(&self, keep: impl Fn(usize) -> bool) -> bool {
        let mut graph: DiGraph<usize, ()> = DiGraph::new();
        let mut index = vec![None; self.len()];
        for a in (0..self.len()).filter(|&a| keep(a)) {
            index[a] = Some(graph.add_node(a));
        }
        for &(a, b) in &self.edges {
            if let (Some(x), Some(y)) = (index[a], index[b]) {
                graph.add_edge(x, y, ());
            }
        }
        graph.node_count() > 0 && kosaraju_scc(&graph).len() == 1
    }

    /// `H_k` is irreducible.
    pub fn hk_irreducible(&self) -> bool {
        self.strongly_connected(|_| true)
    }

    /// `H_k ∩ R²P_{k-2}` is an irreducible submodule.
    pub fn radial_irreducible(&self) -> bool {
        self.strongly_connected(|a| self.in_radial[a])
    }

    /// `H_k / (H_k ∩ R²P_{k-2})` is irreducible.
    pub fn quotient_irreducible(&self) -> bool {
        self.strongly_connected(|a| !self.in_radial[a])
    }
}

/// Irreducibility of a representation space. Harmonic spaces and their
/// quotients are decided on the piece graph; `P_k` and `P_k / R²P_{k-2}`
/// reduce to those.
pub fn is_irreducible(rep: &RepSpace) -> Result<bool> {
    decide(rep.spec, &|graph: &PieceGraph, keep: &dyn Fn(usize) -> bool| Ok(graph.strongly_connected(keep)))
}

/// The same verdict reached through exact closures instead of the graph: a
/// sum of pieces is irreducible iff the closure of one vector from each of
/// its pieces is everything.
pub fn is_irreducible_by_closures(rep: &RepSpace) -> Result<bool> {
    decide(rep.spec, &|graph: &PieceGraph, keep: &dyn Fn(usize) -> bool| {
        let (m, n, k) = (graph.m, graph.n, graph.k);
        let selected: Vec<usize> = (0..graph.len()).filter(|&a| keep(a)).collect();
        let kind = if selected.len() == graph.len() { SpaceKind::Hk } else { SpaceKind::HkModSub };
        let space = RepSpace::new(SpaceSpec::new(kind, m, n, k))?;
        Ok(!selected.is_empty()
            && selected.iter().all(|&a| {
                space.vector_of(&graph.pieces[a][0]).is_some_and(|v| generates_everything(&space, &[v]))
            }))
    })
}

type Verdict<'a> = dyn Fn(&PieceGraph, &dyn Fn(usize) -> bool) -> Result<bool> + 'a;

fn decide(spec: SpaceSpec, verdict: &Verdict) -> Result<bool> {
    let SpaceSpec { kind, m, n, k } = spec;
    precondition(m >= 1, || "irreducibility needs m >= 1".into())?;
    let graph = PieceGraph::new(m, n, k)?;
    match kind {
        SpaceKind::Hk => verdict(&graph, &|_| true),
        SpaceKind::HkModSub => verdict(&graph, &|a| !graph.in_radial[a]),
        SpaceKind::Pk => {
            let dim_p = shared_basis(m, n, k).len();
            let radial = radial_multiples(m, n, k).dim();
            if radial == 0 {
                verdict(&graph, &|_| true)
            } else if radial < dim_p {
                Ok(false)
            } else {
                // P_k = R²P_{k-2} ≅ P_{k-2}
                decide(SpaceSpec::new(SpaceKind::Pk, m, n, k - 2), verdict)
            }
        }
        SpaceKind::PkModR2 => {
            // H_k maps onto the submodule H_k / (H_k ∩ R²P_{k-2})
            let image = harmonic_basis(m, n, k).dim() - harmonic_radial_intersection(m, n, k).dim();
            let quotient = shared_basis(m, n, k).len() - radial_multiples(m, n, k).dim();
            if quotient == 0 {
                Ok(false)
            } else if image == 0 {
                Err(Error::Inconsistent(format!("harmonics of degree {k} at ({m},{n}) vanish modulo R²")))
            } else if image < quotient {
                Ok(false)
            } else {
                verdict(&graph, &|a| !graph.in_radial[a])
            }
        }
    }
}
