use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Parity;

/// A generator of the superalgebra, 0-based.
///
/// `Bos(i)` is `x_{i+1}`; `Ferm(j)` is the Grassmann variable `xg_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Bos(usize),
    Ferm(usize),
}

impl Var {
    pub fn parity(self) -> Parity {
        match self {
            Var::Bos(_) => Parity::Even,
            Var::Ferm(_) => Parity::Odd,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Bos(i) => write!(f, "x{}", i + 1),
            Var::Ferm(j) => write!(f, "xg{}", j + 1),
        }
    }
}

/// Maximum number of Grassmann generators (bits of the mask).
pub const MAX_FERMIONS: usize = 32;

/// `x^alpha * xg_{j1} ... xg_{js}` with `j1 < ... < js`.
///
/// Trailing zero exponents are trimmed, so a monomial does not remember the
/// number of bosonic variables of the ring it was built in.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperMonomial {
    bos: SmallVec<[u16; 4]>,
    ferm: u32,
}

impl SuperMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(bos: &[u16], ferm: u32) -> Self {
        let mut bos: SmallVec<[u16; 4]> = bos.iter().copied().collect();
        while bos.last() == Some(&0) {
            bos.pop();
        }
        SuperMonomial { bos, ferm }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Bos(i) => {
                let mut bos = SmallVec::from_elem(0, i + 1);
                bos[i] = 1;
                SuperMonomial { bos, ferm: 0 }
            }
            Var::Ferm(j) => {
                assert!(j < MAX_FERMIONS, "too many Grassmann variables");
                SuperMonomial {
                    bos: SmallVec::new(),
                    ferm: 1 << j,
                }
            }
        }
    }

    pub fn bosonic(bos: &[u16]) -> Self {
        Self::new(bos, 0)
    }

    pub fn fermionic(mask: u32) -> Self {
        Self::new(&[], mask)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.bos.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.bos
    }

    pub fn mask(&self) -> u32 {
        self.ferm
    }

    pub fn has_fermion(&self, j: usize) -> bool {
        self.ferm >> j & 1 == 1
    }

    pub fn bosonic_degree(&self) -> usize {
        self.bos.iter().map(|&e| e as usize).sum()
    }

    pub fn fermionic_degree(&self) -> usize {
        self.ferm.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.bosonic_degree() + self.fermionic_degree()
    }

    pub fn parity(&self) -> Parity {
        Parity::from(self.fermionic_degree())
    }

    /// Number of bosonic slots actually used (index of last nonzero + 1).
    pub fn bosonic_len(&self) -> usize {
        self.bos.len()
    }

    pub fn bosonic_part(&self) -> SuperMonomial {
        SuperMonomial {
            bos: self.bos.clone(),
            ferm: 0,
        }
    }

    pub fn fermionic_part(&self) -> SuperMonomial {
        SuperMonomial::fermionic(self.ferm)
    }

    /// Product `self * other` as `(sign, monomial)`, or `None` if a
    /// Grassmann generator repeats.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
        if self.ferm & other.ferm != 0 {
            return None;
        }
        let neg = merge_sign(self.ferm, other.ferm);
        let len = self.bos.len().max(other.bos.len());
        let mut bos = SmallVec::<[u16; 4]>::from_elem(0, len);
        for (i, slot) in bos.iter_mut().enumerate() {
            *slot = self.exponent(i) + other.exponent(i);
        }
        Some((
            neg,
            SuperMonomial {
                bos,
                ferm: self.ferm | other.ferm,
            },
        ))
    }

    /// Left derivative: `(coefficient, monomial)` or `None` if the result is zero.
    pub fn partial(&self, v: Var) -> Option<(i64, SuperMonomial)> {
        match v {
            Var::Bos(i) => {
                let e = self.exponent(i);
                if e == 0 {
                    return None;
                }
                let mut out = self.clone();
                out.bos[i] -= 1;
                while out.bos.last() == Some(&0) {
                    out.bos.pop();
                }
                Some((e as i64, out))
            }
            Var::Ferm(j) => {
                if !self.has_fermion(j) {
                    return None;
                }
                let before = (self.ferm & ((1u32 << j) - 1)).count_ones();
                let sign = if before.is_multiple_of(2) { 1 } else { -1 };
                Some((
                    sign,
                    SuperMonomial {
                        bos: self.bos.clone(),
                        ferm: self.ferm & !(1 << j),
                    },
                ))
            }
        }
    }
}

/// Sign of `xg_a * xg_b` reordered into ascending order: true if negative.
fn merge_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // generators of `a` standing to the right of position j
        let above = if j == 31 { 0 } else { a >> (j + 1) };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}

impl Ord for SuperMonomial {
    /// Basis order: total degree, then number of Grassmann factors, then
    /// bosonic exponents in descending lexicographic order, then Grassmann
    /// masks lexicographically on their sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.fermionic_degree().cmp(&other.fermionic_degree()))
            .then_with(|| {
                let len = self.bos.len().max(other.bos.len());
                for i in 0..len {
                    let c = other.exponent(i).cmp(&self.exponent(i));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
            .then_with(|| {
                let d = self.ferm ^ other.ferm;
                if d == 0 {
                    Ordering::Equal
                } else if self.ferm & d & d.wrapping_neg() != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            Ok(())
        };
        for (i, &e) in self.bos.iter().enumerate() {
            if e == 0 {
                continue;
            }
            sep(f)?;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        let mut rest = self.ferm;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            sep(f)?;
            write!(f, "xg{}", j + 1)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of total degree `k` in `m` bosonic and `2n` Grassmann
/// variables, in basis order.
pub fn monomial_basis(m: usize, n: usize, k: usize) -> Vec<SuperMonomial> {
    let nf = 2 * n;
    assert!(nf <= MAX_FERMIONS, "too many Grassmann variables");
    let mut out = Vec::new();
    for f in 0..=k.min(nf) {
        let bos = bosonic_exponents(m, k - f);
        let masks = masks_of_size(nf, f);
        for b in &bos {
            for &mask in &masks {
                out.push(SuperMonomial::new(b, mask));
            }
        }
    }
    out.sort();
    out
}

/// Exponent vectors of degree `d` in `m` variables, descending lexicographic.
pub fn bosonic_exponents(m: usize, d: usize) -> Vec<Vec<u16>> {
    fn rec(m: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() + 1 == m {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(m, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, d, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Subsets of `{0..nf}` of the given size as bit masks, lexicographic.
pub fn masks_of_size(nf: usize, size: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0..(1u64 << nf))
        .map(|x| x as u32)
        .filter(|x| x.count_ones() as usize == size)
        .collect();
    out.sort_by(|a, b| SuperMonomial::fermionic(*a).cmp(&SuperMonomial::fermionic(*b)));
    out
}
