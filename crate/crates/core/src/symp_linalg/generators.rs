//! Elementary symplectic transvections and their root-vector logarithms.

use std::fmt;

use num_traits::{One, Zero};

use super::{a_idx, b_idx, omega_basis};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, q, SparseVec, Q};
use crate::rep_core::Weight;

/// Linear endomorphism of `H`, stored by the images of basis vectors.
/// Basis vectors beyond the stored columns are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMap {
    cols: Vec<SparseVec<u16>>,
}

impl HMap {
    pub fn identity(g: usize) -> Self {
        Self {
            cols: (0..2 * g as u16).map(|i| [(i, Q::one())].into_iter().collect()).collect(),
        }
    }

    pub fn zero(g: usize) -> Self {
        Self {
            cols: vec![SparseVec::new(); 2 * g],
        }
    }

    pub fn from_columns(cols: Vec<SparseVec<u16>>) -> Self {
        Self { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn image(&self, i: u16) -> Vec<(u16, Q)> {
        match self.cols.get(i as usize) {
            Some(c) => c.iter().map(|(j, x)| (*j, x.clone())).collect(),
            None => vec![(i, Q::one())],
        }
    }

    /// Matrix entry in row `i`, column `j`.
    pub fn entry(&self, i: u16, j: u16) -> Q {
        self.cols[j as usize].get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_scaled(&self, c: &Q, o: &HMap) -> HMap {
        let mut cols = self.cols.clone();
        for (j, col) in o.cols.iter().enumerate() {
            for (i, x) in col {
                add_entry(&mut cols[j], *i, c * x);
            }
        }
        HMap { cols }
    }

    /// `self ∘ o`
    pub fn compose(&self, o: &HMap) -> HMap {
        let cols = o
            .cols
            .iter()
            .map(|col| {
                let mut out = SparseVec::new();
                for (k, x) in col {
                    for (i, y) in self.image(*k) {
                        add_entry(&mut out, i, x * &y);
                    }
                }
                out
            })
            .collect();
        HMap { cols }
    }

    /// `M^T J M = J` for the standard form.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim() as u16;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = Q::zero();
                for (k, x) in &self.cols[i as usize] {
                    for (l, y) in &self.cols[j as usize] {
                        let w = omega_basis(*k, *l);
                        if w != 0 {
                            s += x * y * q(w);
                        }
                    }
                }
                s == q(omega_basis(i, j))
            })
        })
    }

    /// `M^T J + J M = 0`, the symplectic Lie algebra condition.
    pub fn is_sp_derivation(&self) -> bool {
        let n = self.dim() as u16;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = Q::zero();
                for (k, x) in &self.cols[i as usize] {
                    s += x * q(omega_basis(*k, j));
                }
                for (l, y) in &self.cols[j as usize] {
                    s += y * q(omega_basis(i, *l));
                }
                s.is_zero()
            })
        })
    }
}

/// Elementary generator type; indices are 1-based with `i < j` for the
/// two-index kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `a_j -> a_j + a_i`, `b_i -> b_i - b_j`
    X(usize, usize),
    /// `b_i -> b_i + a_i`
    Y(usize),
    /// `b_i -> b_i + a_j`, `b_j -> b_j + a_i`
    Z(usize, usize),
    /// `a_i -> a_i + a_j`, `b_j -> b_j - b_i`
    XLow(usize, usize),
    /// `a_i -> a_i + b_i`
    YLow(usize),
    /// `a_i -> a_i + b_j`, `a_j -> a_j + b_i`
    ZLow(usize, usize),
}

impl GenKind {
    pub fn is_upper(&self) -> bool {
        matches!(self, GenKind::X(..) | GenKind::Y(_) | GenKind::Z(..))
    }

    /// Root carried by the logarithm of this generator.
    pub fn root(&self, g: usize) -> Weight {
        let mut c = vec![0i32; g];
        match *self {
            GenKind::X(i, j) => {
                c[i - 1] += 1;
                c[j - 1] -= 1;
            }
            GenKind::XLow(i, j) => {
                c[i - 1] -= 1;
                c[j - 1] += 1;
            }
            GenKind::Y(i) => c[i - 1] = 2,
            GenKind::YLow(i) => c[i - 1] = -2,
            GenKind::Z(i, j) => {
                c[i - 1] += 1;
                c[j - 1] += 1;
            }
            GenKind::ZLow(i, j) => {
                c[i - 1] -= 1;
                c[j - 1] -= 1;
            }
        }
        Weight(c)
    }

    /// Every elementary generator in genus `g`.
    pub fn all(g: usize) -> Vec<GenKind> {
        let mut out = Vec::new();
        for i in 1..=g {
            out.push(GenKind::Y(i));
            out.push(GenKind::YLow(i));
            for j in i + 1..=g {
                out.extend([GenKind::X(i, j), GenKind::XLow(i, j), GenKind::Z(i, j), GenKind::ZLow(i, j)]);
            }
        }
        out
    }

    pub fn upper(g: usize) -> Vec<GenKind> {
        Self::all(g).into_iter().filter(|k| k.is_upper()).collect()
    }

    /// Raising operators of the simple roots.
    pub fn simple_raising(g: usize) -> Vec<GenKind> {
        let mut out: Vec<GenKind> = (1..g).map(|i| GenKind::X(i, i + 1)).collect();
        out.push(GenKind::Y(g));
        out
    }

    pub fn simple_lowering(g: usize) -> Vec<GenKind> {
        let mut out: Vec<GenKind> = (1..g).map(|i| GenKind::XLow(i, i + 1)).collect();
        out.push(GenKind::YLow(g));
        out
    }

    fn check(&self, g: usize) -> Result<()> {
        let ok = match *self {
            GenKind::X(i, j) | GenKind::Z(i, j) | GenKind::XLow(i, j) | GenKind::ZLow(i, j) => {
                1 <= i && i < j && j <= g
            }
            GenKind::Y(i) | GenKind::YLow(i) => 1 <= i && i <= g,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("generator {self} out of range for g={g}")))
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::X(i, j) => write!(f, "X{i}{j}"),
            GenKind::Y(i) => write!(f, "Y{i}"),
            GenKind::Z(i, j) => write!(f, "Z{i}{j}"),
            GenKind::XLow(i, j) => write!(f, "X'{i}{j}"),
            GenKind::YLow(i) => write!(f, "Y'{i}"),
            GenKind::ZLow(i, j) => write!(f, "Z'{i}{j}"),
        }
    }
}

/// A unipotent elementary generator `I + N` of `Sp_{2g}(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGenerator {
    pub kind: GenKind,
    pub g: usize,
}

impl GroupGenerator {
    pub fn new(kind: GenKind, g: usize) -> Result<Self> {
        kind.check(g)?;
        Ok(Self { kind, g })
    }

    /// The nilpotent part `N` (with `N² = 0`), a root vector of `sp_{2g}`.
    pub fn derivation(&self) -> HMap {
        let mut m = HMap::zero(self.g);
        let mut set = |src: u16, dst: u16, c: i64| {
            m.cols[src as usize].insert(dst, q(c));
        };
        match self.kind {
            GenKind::X(i, j) => {
                set(a_idx(j), a_idx(i), 1);
                set(b_idx(i), b_idx(j), -1);
            }
            GenKind::Y(i) => set(b_idx(i), a_idx(i), 1),
            GenKind::Z(i, j) => {
                set(b_idx(i), a_idx(j), 1);
                set(b_idx(j), a_idx(i), 1);
            }
            GenKind::XLow(i, j) => {
                set(a_idx(i), a_idx(j), 1);
                set(b_idx(j), b_idx(i), -1);
            }
            GenKind::YLow(i) => set(a_idx(i), b_idx(i), 1),
            GenKind::ZLow(i, j) => {
                set(a_idx(i), b_idx(j), 1);
                set(a_idx(j), b_idx(i), 1);
            }
        }
        m
    }

    pub fn matrix(&self) -> HMap {
        HMap::identity(self.g).add_scaled(&Q::one(), &self.derivation())
    }

    pub fn inverse_matrix(&self) -> HMap {
        HMap::identity(self.g).add_scaled(&q(-1), &self.derivation())
    }
}
