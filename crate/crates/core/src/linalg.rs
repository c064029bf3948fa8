//! Sparse exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Sparse vector keyed by an ordered basis; zero entries absent.
pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `acc += c * v`
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Q, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        add_entry(acc, k.clone(), c * x);
    }
}

pub fn add_entry<K: Ord>(acc: &mut SparseVec<K>, k: K, x: Q) {
    if x.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(k) {
        Entry::Vacant(e) => {
            e.insert(x);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &SparseVec<K>, c: &Q) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

/// Row space kept in reduced row echelon form. The pivot of a row is its
/// smallest key and carries coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(K, Q)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, x)| (k.clone(), x.clone()))
            .collect();
        let mut out = v.clone();
        for (k, x) in hits {
            axpy(&mut out, &-x, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new reduced row if the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<K>> {
        let r = self.reduce(v);
        let (pivot, lead) = r.iter().next().map(|(k, x)| (k.clone(), x.clone()))?;
        let row = scale(&r, &(Q::one() / lead));
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                axpy(other, &-c, &row);
            }
        }
        self.rows.insert(pivot, row.clone());
        Some(row)
    }
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Aug<K> {
    Main(K),
    Tag(usize),
}

/// Basis of `{c : sum_i c_i images[i] = 0}` in reduced echelon form
/// (pivot = smallest index).
pub fn kernel_basis<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut e: Echelon<Aug<K>> = Echelon::new();
    for (i, v) in images.iter().enumerate() {
        let mut row: SparseVec<Aug<K>> = v.iter().map(|(k, x)| (Aug::Main(k.clone()), x.clone())).collect();
        row.insert(Aug::Tag(i), Q::one());
        e.insert(&row);
    }
    let mut out: Vec<SparseVec<usize>> = e
        .rows
        .iter()
        .filter(|(p, _)| matches!(p, Aug::Tag(_)))
        .map(|(_, row)| {
            row.iter()
                .map(|(k, x)| match k {
                    Aug::Tag(i) => (*i, x.clone()),
                    Aug::Main(_) => unreachable!("kernel row with image part"),
                })
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, x)| (k, q(x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 2)])).is_some());
        assert!(e.insert(&v(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(&v(&[(0, 1), (1, 3), (2, 1)])).is_none());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 5), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
        // reduced: no row has a nonzero entry at another row's pivot
        let pivots: Vec<u32> = e.pivots().cloned().collect();
        for row in e.rows() {
            let p = *row.keys().next().unwrap();
            assert!(row[&p].is_one());
            for other in &pivots {
                if *other != p {
                    assert!(!row.contains_key(other));
                }
            }
        }
    }

    #[test]
    fn kernel_small() {
        let imgs = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)])];
        let k = kernel_basis(&imgs);
        assert_eq!(k.len(), 2);
        for c in &k {
            let mut s = SparseVec::new();
            for (i, x) in c {
                axpy(&mut s, x, &imgs[*i]);
            }
            assert!(s.is_empty());
        }
        assert_eq!(k[0], [(0usize, q(1)), (2, q(1)), (3, q(-1))].into_iter().collect::<SparseVec<usize>>());
        assert_eq!(k[1], [(1usize, q(1)), (2, q(2)), (3, q(-2))].into_iter().collect::<SparseVec<usize>>());
    }

    #[test]
    fn rationals_stay_exact() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 3), (1, 1)]));
        let r = e.rows().next().unwrap();
        assert_eq!(r[&1], q_frac(1, 3));
        assert_eq!(rank(&[v(&[(0, 3)]), v(&[(0, 7)])]), 1);
    }
}
