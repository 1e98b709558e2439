//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::superalgebra::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    /// From entries sorted by index; zeros are dropped.
    pub fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.axpy(&-Rational::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Shift all indices by `offset` (for block constructions).
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect(),
        }
    }

    /// Split at `at` into the parts with index `< at` and `>= at` (the
    /// latter re-based to 0).
    pub fn split(&self, at: usize) -> (SparseVec, SparseVec) {
        let pos = self.entries.partition_point(|e| e.0 < at);
        let lo = self.entries[..pos].to_vec();
        let hi = self.entries[pos..].iter().map(|(i, c)| (i - at, c.clone())).collect();
        (SparseVec { entries: lo }, SparseVec { entries: hi })
    }

    /// Restrict to the given indices, re-indexed by position in `indices`.
    pub fn gather(&self, indices: &[usize]) -> SparseVec {
        SparseVec::from_sorted(indices.iter().enumerate().map(|(k, &i)| (k, self.get(i))).collect())
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in iter {
            *map.entry(i).or_insert_with(Rational::zero) += c;
        }
        SparseVec::from_sorted(map.into_iter().collect())
    }
}

/// Row echelon form built one vector at a time.
///
/// Every stored row has leading coefficient 1 at a distinct pivot column and
/// no entries to the left of it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Rational> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .map(|(i, _)| *i)
                .find(|i| self.pivot_row.contains_key(i));
            let Some(p) = next else { break };
            let c = work.remove(&p).expect("entry present");
            let row = &self.rows[self.pivot_row[&p]];
            for (j, a) in row.iter().skip(1) {
                let e = work.entry(j).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    work.remove(&j);
                }
            }
            cursor = p + 1;
        }
        SparseVec::from_sorted(work.into_iter().collect())
    }

    /// Add `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((p, c)) => {
                let inv = c.recip();
                let row = r.scale(&inv);
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut by_pivot: Vec<(usize, SparseVec)> = self
            .pivot_row
            .iter()
            .map(|(&p, &r)| (p, self.rows[r].clone()))
            .collect();
        // back-substitute from the last pivot upwards
        for idx in (0..by_pivot.len()).rev() {
            let mut row = by_pivot[idx].1.clone();
            for (q, lrow) in &by_pivot[idx + 1..] {
                let c = row.get(*q);
                if !c.is_zero() {
                    row = row.axpy(&-c, lrow);
                }
            }
            by_pivot[idx].1 = row;
        }
        by_pivot.into_iter().map(|(_, r)| r).collect()
    }
}

/// A subspace of `Q^ambient` stored in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows: Vec<SparseVec> = (0..ambient).map(SparseVec::unit).collect();
        Subspace { ambient, pivots: (0..ambient).collect(), rows }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vectors: I) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            debug_assert!(v.max_index().is_none_or(|i| i < ambient));
            e.insert(v);
        }
        Self::from_echelon(ambient, e)
    }

    pub fn from_echelon(ambient: usize, e: Echelon) -> Self {
        let rows = e.into_rref();
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            rows: self.rows.clone(),
            pivot_row: self.pivots.iter().enumerate().map(|(r, &p)| (p, r)).collect(),
        }
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out.get(p);
            if !c.is_zero() {
                out = out.axpy(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` with respect to the RREF basis (`v` must lie in the span).
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        v.gather(&self.pivots)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r);
        }
        Subspace::from_echelon(self.ambient, e)
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(&r.add(&r.shifted(n)));
        }
        for r in &other.rows {
            e.insert(r);
        }
        let rows = e.into_rref();
        let inter: Vec<SparseVec> = rows
            .iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= n))
            .map(|r| r.split(n).1)
            .collect();
        Subspace::span(n, &inter)
    }

    /// Rows of `self` reduced modulo `divisor`, in echelon form: a basis of a
    /// complement of `divisor ∩ self` in `self` chosen from the canonical
    /// divisor pivots.
    pub fn complement_mod(&self, divisor: &Subspace) -> Subspace {
        let reduced: Vec<SparseVec> = self.rows.iter().map(|r| divisor.reduce(r)).collect();
        Subspace::span(self.ambient, &reduced)
    }
}

/// Kernel of the linear map whose `j`-th column is `cols[j]`.
pub fn kernel(cols: &[SparseVec]) -> Subspace {
    let ncols = cols.len();
    let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (i, a) in c.iter() {
            rows.entry(i).or_default().push((j, a.clone()));
        }
    }
    let mut e = Echelon::new();
    for (_, r) in rows {
        e.insert(&SparseVec::from_sorted(r));
    }
    let rref = e.into_rref();
    let pivots: Vec<usize> = rref.iter().map(|r| r.leading().unwrap().0).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&f| !is_pivot[f]) {
        let mut entries: Vec<(usize, Rational)> = rref
            .iter()
            .zip(&pivots)
            .filter_map(|(r, &p)| {
                let c = r.get(f);
                (!c.is_zero()).then(|| (p, -c))
            })
            .collect();
        entries.push((f, Rational::one()));
        entries.sort_by_key(|e| e.0);
        basis.push(SparseVec::from_sorted(entries));
    }
    Subspace::span(ncols, &basis)
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn to_mod(c: &Rational) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let p = BigInt::from(PRIME);
    let reduce = |x: BigInt| -> u64 {
        let r = ((x % &p) + &p) % &p;
        u64::try_from(r).expect("reduced below the prime")
    };
    if let (Some(n), Some(d)) = (c.numer().to_i64(), c.denom().to_i64()) {
        let n = n.rem_euclid(PRIME as i64) as u64;
        let d = (d as u64) % PRIME;
        return (d != 0).then(|| mul_mod(n, pow_mod(d, PRIME - 2)));
    }
    let n = reduce(c.numer());
    let d = reduce(c.denom());
    (d != 0).then(|| mul_mod(n, pow_mod(d, PRIME - 2)))
}

/// Residue of a rational modulo the certificate prime, if its denominator
/// is invertible.
pub fn residue(c: &Rational) -> Option<u64> {
    to_mod(c)
}

/// Dense residues of a sparse vector.
pub fn residues(v: &SparseVec, width: usize) -> Option<Vec<u64>> {
    let mut row = vec![0u64; width];
    for (i, c) in v.iter() {
        row[i] = to_mod(c)?;
    }
    Some(row)
}

/// Row echelon form over `Z/p` for the certificate prime `p = 2^61 - 1`.
#[derive(Debug, Clone)]
pub struct ModEchelon {
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(width: usize) -> Self {
        ModEchelon { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; returns the normalized new row if it was independent.
    pub fn insert(&mut self, mut row: Vec<u64>) -> Option<&[u64]> {
        debug_assert_eq!(row.len(), self.width);
        for (p, prow) in &self.rows {
            let c = row[*p];
            if c != 0 {
                for j in *p..self.width {
                    if prow[j] != 0 {
                        row[j] = (row[j] + PRIME - mul_mod(c, prow[j])) % PRIME;
                    }
                }
            }
        }
        let lead = row.iter().position(|&x| x != 0)?;
        let inv = pow_mod(row[lead], PRIME - 2);
        for x in row.iter_mut().skip(lead) {
            *x = mul_mod(*x, inv);
        }
        self.rows.push((lead, row));
        self.rows.last().map(|r| r.1.as_slice())
    }
}

/// A sparse matrix with entries reduced modulo the certificate prime.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, u64)>>,
}

impl ModMatrix {
    pub fn from_matrix(m: &SparseMatrix) -> Option<Self> {
        let cols = m
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, a)| Some((i, to_mod(a)?))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(ModMatrix { nrows: m.nrows, cols })
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.nrows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, a) in &self.cols[j] {
                out[i] = (out[i] + mul_mod(a, x)) % PRIME;
            }
        }
        out
    }
}

/// Rank of the span of `vectors` modulo a large prime: a lower bound for the
/// rational rank. `None` if some denominator vanishes modulo the prime.
pub fn rank_mod_p(vectors: &[SparseVec]) -> Option<usize> {
    let width = vectors.iter().filter_map(|v| v.max_index()).max().map_or(0, |i| i + 1);
    let mut e = ModEchelon::new(width);
    for v in vectors {
        e.insert(residues(v, width)?);
    }
    Some(e.rank())
}

/// Exact rank, using the modular rank as a certificate when it is maximal.
pub fn rank(vectors: &[SparseVec], ambient: usize) -> usize {
    let bound = vectors.len().min(ambient);
    if rank_mod_p(vectors) == Some(bound) {
        return bound;
    }
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Coefficients `c` with `Σ c_j vectors[j] = target`, if any.
pub fn express(vectors: &[SparseVec], target: &SparseVec, ambient: usize) -> Option<Vec<Rational>> {
    let k = vectors.len();
    let mut e = Echelon::new();
    for (j, v) in vectors.iter().enumerate() {
        e.insert(&v.add(&SparseVec::unit(ambient + j)));
    }
    let r = e.reduce(target);
    let (lhs, rhs) = r.split(ambient);
    if !lhs.is_zero() {
        return None;
    }
    Some((0..k).map(|j| -rhs.get(j)).collect())
}

/// Sparse matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (j, c) in v.iter() {
            acc = acc.axpy(c, &self.cols[j]);
        }
        acc
    }

    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Entries in column-major order, for use as a vector of `Q^{r*c}`.
    pub fn flatten(&self) -> SparseVec {
        let mut entries = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c.iter() {
                entries.push((j * self.nrows + i, a.clone()));
            }
        }
        SparseVec::from_sorted(entries)
    }
}
