//! Weighted partitions, Kawazumi's free-basis counts for
//! `H²(Mod_g^1; H^{⊗d})`, and the dimension tables built on them.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::char_ring::{tensor_power_decomposition, Decomposition};
use crate::error::{Error, Result};
use crate::rep_core::{GroupFamily, Partition};
use crate::SCHEMA;

/// Set partition of `{1..d}` with a weight per block; singleton blocks have
/// weight at least 1. Blocks are sorted by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedPartition {
    blocks: Vec<Vec<usize>>,
    weights: Vec<u32>,
}

impl WeightedPartition {
    pub fn new(blocks: Vec<Vec<usize>>, weights: Vec<u32>) -> Result<Self> {
        if blocks.len() != weights.len() || blocks.is_empty() {
            return Err(Error::InvalidSpec("one weight per block, at least one block".into()));
        }
        let mut pairs: Vec<(Vec<usize>, u32)> = blocks
            .into_iter()
            .zip(weights)
            .map(|(mut b, w)| {
                b.sort_unstable();
                (b, w)
            })
            .collect();
        if pairs.iter().any(|(b, _)| b.is_empty()) {
            return Err(Error::InvalidSpec("empty block".into()));
        }
        pairs.sort();
        let mut all: Vec<usize> = pairs.iter().flat_map(|(b, _)| b.iter().copied()).collect();
        all.sort_unstable();
        if all != (1..=all.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidSpec("blocks must partition {1..d}".into()));
        }
        if pairs.iter().any(|(b, w)| b.len() == 1 && *w == 0) {
            return Err(Error::InvalidSpec("singleton blocks need weight at least 1".into()));
        }
        let (blocks, weights) = pairs.into_iter().unzip();
        Ok(Self { blocks, weights })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn d(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, w)) in self.blocks.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}^{w}", s.join(","))?;
        }
        Ok(())
    }
}

/// `k(P) = d + 2 Σ (w_i - 1)`.
pub fn k_of(p: &WeightedPartition) -> i64 {
    p.d() as i64 + 2 * p.weights.iter().map(|&w| w as i64 - 1).sum::<i64>()
}

/// Set partitions of `{1..d}` as restricted-growth strings.
fn set_partitions(d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn rec(i: usize, d: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == d {
            let mut blocks = vec![Vec::new(); max];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            rec(i + 1, d, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    if d > 0 {
        rec(0, d, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// All weighted partitions of `{1..d}` with `k(P) = k`, in a fixed order.
pub fn enumerate(d: usize, k: usize) -> Vec<WeightedPartition> {
    if d == 0 || !(k + d).is_multiple_of(2) {
        return Vec::new();
    }
    // Σ (w_i - 1) = (k - d)/2 with w_i - 1 ≥ -1, or ≥ 0 on singletons
    let budget = (k as i64 - d as i64) / 2;
    let mut out: Vec<WeightedPartition> = set_partitions(d)
        .into_par_iter()
        .flat_map_iter(|blocks| {
            let lows: Vec<i64> = blocks.iter().map(|b| if b.len() == 1 { 0 } else { -1 }).collect();
            let slack = budget - lows.iter().sum::<i64>();
            let mut found = Vec::new();
            if slack >= 0 {
                let mut extra = vec![0i64; blocks.len()];
                distribute(slack, 0, &mut extra, &mut |e| {
                    let weights = e.iter().zip(&lows).map(|(x, l)| (x + l + 1) as u32).collect();
                    found.push(WeightedPartition::new(blocks.clone(), weights).expect("valid by construction"));
                });
            }
            found
        })
        .collect();
    out.sort();
    out
}

fn distribute(left: i64, i: usize, cur: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if i + 1 == cur.len() {
        cur[i] = left;
        emit(cur);
        return;
    }
    for x in 0..=left {
        cur[i] = x;
        distribute(left - x, i + 1, cur, emit);
    }
}

/// `dim H²(Mod_g^1; H^{⊗d})` from Kawazumi's free basis: classes `m_P` with
/// `k(P) = 2` and `κ_1 m_P` with `k(P) = 0`.
pub fn kawazumi_h2_dim(d: usize) -> usize {
    enumerate(d, 0).len() + enumerate(d, 2).len()
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d: usize,
    pub t_d: i128,
    pub hom: i128,
    pub sum: i128,
    pub kawazumi: i128,
}

/// Moves a stable decomposition to another rank.
pub fn rerank(dec: &Decomposition, g: usize) -> Result<Decomposition> {
    let group = dec.group.with_rank(g)?;
    for (p, _) in &dec.terms {
        p.check_fits(group)?;
    }
    Ok(Decomposition::from_terms(group, dec.terms.clone()))
}

/// Rows `(d, t_d, dim Hom(V_cp, H^{⊗d}), sum, Kawazumi count)` for
/// `1 ≤ d ≤ d_max`, with `V_cp` given by its decomposition. Fails with
/// `TableMismatch` when the two right-hand columns differ.
pub fn comparison_table(g: usize, d_max: usize, cup: &Decomposition) -> Result<Vec<TableRow>> {
    if g < d_max {
        return Err(Error::GenusTooSmall { g, min: d_max });
    }
    let cup = rerank(cup, g)?;
    let rows: Vec<TableRow> = (1..=d_max)
        .into_par_iter()
        .map(|d| -> Result<TableRow> {
            let power = tensor_power_decomposition(d, g)?;
            let t_d = power.mult(&Partition::empty());
            let hom = cup.inner(&power);
            Ok(TableRow { d, t_d, hom, sum: t_d + hom, kawazumi: kawazumi_h2_dim(d) as i128 })
        })
        .collect::<Result<_>>()?;
    for r in &rows {
        if r.sum != r.kawazumi {
            return Err(Error::TableMismatch {
                d: r.d,
                detail: format!("t_d + hom = {} but Kawazumi count = {}", r.sum, r.kawazumi),
            });
        }
    }
    Ok(rows)
}

pub fn table_text(rows: &[TableRow]) -> String {
    let mut s = format!("{:>2} {:>5} {:>5} {:>5} {:>9}\n", "d", "t_d", "hom", "sum", "kawazumi");
    for r in rows {
        s.push_str(&format!("{:>2} {:>5} {:>5} {:>5} {:>9}\n", r.d, r.t_d, r.hom, r.sum, r.kawazumi));
    }
    s
}

pub fn table_json(g: usize, rows: &[TableRow]) -> Value {
    json!({
        "schema": SCHEMA,
        "g": g,
        "rows": rows.iter().map(|r| json!({
            "d": r.d, "t_d": r.t_d.to_string(), "hom": r.hom.to_string(),
            "sum": r.sum.to_string(), "kawazumi": r.kawazumi.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Dimension totals for the three surface cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bookkeeping {
    pub g: usize,
    pub boundary: BigInt,
    pub punctured: BigInt,
    pub closed: BigInt,
    /// `dim H⊗(∧³H)/H`
    pub correction: BigInt,
    pub punctured_identity: bool,
    pub closed_identity: bool,
}

/// Checks `punctured = boundary + 1` (the extra trivial class) and
/// `closed + 1 + dim H⊗(∧³H)/H = punctured`.
pub fn bookkeeping_identities(g: usize, boundary: &Decomposition, closed: &Decomposition) -> Result<Bookkeeping> {
    let group = GroupFamily::sp(g)?;
    let boundary = rerank(boundary, g)?;
    let closed = rerank(closed, g)?;
    let b = boundary.total_dim();
    let punctured_dec = Decomposition::from_terms(
        group,
        boundary.terms.iter().cloned().chain([(Partition::empty(), 1)]),
    );
    let p = punctured_dec.total_dim();
    let c = closed.total_dim();
    let n = 2 * g as i64;
    let wedge3 = n * (n - 1) * (n - 2) / 6;
    let correction = BigInt::from(n * (wedge3 - n));
    Ok(Bookkeeping {
        g,
        punctured_identity: p == &b + 1,
        closed_identity: &c + 1 + &correction == p,
        boundary: b,
        punctured: p,
        closed: c,
        correction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n || n < 0 {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Count via block-size types: `d!/(Π s! Π mult!)` set partitions of
    /// each type, times the number of weight solutions.
    fn count_by_types(d: usize, k: usize) -> i64 {
        if (k + d) % 2 != 0 {
            return 0;
        }
        let m = (k as i64 - d as i64) / 2;
        let fact = |n: usize| (1..=n as i64).product::<i64>();
        let mut total = 0;
        for lam in Partition::of_degree(d as u32) {
            let sizes = lam.parts();
            let n = sizes.len() as i64;
            let nns = sizes.iter().filter(|&&s| s >= 2).count() as i64;
            let mut denom: i64 = sizes.iter().map(|&s| fact(s as usize)).product();
            let mut i = 0;
            while i < sizes.len() {
                let j = sizes[i..].iter().take_while(|&&s| s == sizes[i]).count();
                denom *= fact(j);
                i += j;
            }
            let sols = binom(m + nns + n - 1, n - 1);
            total += fact(d) / denom * sols;
        }
        total
    }

    /// Partitions of `{1..n}` with no singleton block.
    fn associated_bell(n: usize) -> i64 {
        let mut a = vec![1i64, 0];
        for m in 1..n {
            let v = (1..=m).map(|k| binom(m as i64, k as i64) * a[m - k]).sum();
            a.push(v);
        }
        a[n]
    }

    #[test]
    fn k_examples() {
        let p = WeightedPartition::new(vec![vec![1, 2]], vec![0]).unwrap();
        assert_eq!(k_of(&p), 0);
        let p = WeightedPartition::new(vec![vec![1], vec![2]], vec![1, 1]).unwrap();
        assert_eq!(k_of(&p), 2);
        assert!(enumerate(2, 2).contains(&p));
        let p = WeightedPartition::new(vec![vec![1]], vec![1]).unwrap();
        assert_eq!(k_of(&p), 1);
    }

    #[test]
    fn validation() {
        assert!(WeightedPartition::new(vec![vec![1]], vec![0]).is_err());
        assert!(WeightedPartition::new(vec![vec![1], vec![3]], vec![1, 1]).is_err());
        assert!(WeightedPartition::new(vec![vec![1, 2], vec![2]], vec![0, 1]).is_err());
        let a = WeightedPartition::new(vec![vec![3], vec![1, 2]], vec![2, 0]).unwrap();
        let b = WeightedPartition::new(vec![vec![2, 1], vec![3]], vec![0, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(k_of(&a), k_of(&b));
    }

    #[test]
    fn small_degree_counts() {
        let z: Vec<usize> = (1..=6).map(|d| enumerate(d, 0).len()).collect();
        let t: Vec<usize> = (1..=6).map(|d| enumerate(d, 2).len()).collect();
        assert_eq!(z, [0, 1, 0, 3, 0, 15]);
        assert_eq!(t, [0, 2, 0, 17, 0, 175]);
        let k: Vec<usize> = (1..=6).map(kawazumi_h2_dim).collect();
        assert_eq!(k, [0, 3, 0, 20, 0, 190]);
    }

    #[test]
    fn counts_match_type_formula() {
        for d in 1..=7 {
            for k in 0..=6 {
                assert_eq!(enumerate(d, k).len() as i64, count_by_types(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn k_zero_is_perfect_matchings() {
        for d in (2..=8).step_by(2) {
            let dfact: i64 = (1..d as i64).step_by(2).product();
            assert_eq!(enumerate(d, 0).len() as i64, dfact);
        }
    }

    #[test]
    fn all_weight_zero_blocks_are_singleton_free_partitions() {
        for d in 1..=7 {
            let n: usize = (0..=d)
                .map(|k| enumerate(d, k).into_iter().filter(|p| p.weights().iter().all(|&w| w == 0)).count())
                .sum();
            assert_eq!(n as i64, associated_bell(d), "d={d}");
        }
    }

    #[test]
    fn set_partition_counts_are_bell() {
        let bell = [1, 2, 5, 15, 52, 203, 877];
        for d in 1..=7 {
            assert_eq!(set_partitions(d).len(), bell[d - 1]);
        }
    }

    #[test]
    fn table_mismatch_detected() {
        let cup = Decomposition::from_terms(GroupFamily::sp(6).unwrap(), [(crate::part(&[1, 1]), 1)]);
        let err = comparison_table(6, 2, &cup).unwrap_err();
        assert!(matches!(err, Error::TableMismatch { d: 2, .. }));
    }

    proptest! {
        #[test]
        fn k_is_even_shift_of_d(d in 1usize..6, k in 0usize..5) {
            for p in enumerate(d, k) {
                prop_assert_eq!(k_of(&p), k as i64);
                prop_assert_eq!(p.d(), d);
            }
        }
    }
}
