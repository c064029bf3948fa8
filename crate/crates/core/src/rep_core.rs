//! Root data, partitions, weights, Weyl dimensions and Freudenthal
//! multiplicities for `SL_n` (type A_{n-1}) and `Sp_2g` (type C_g).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::char_ring::FormalCharacter;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SL,
    Sp,
}

/// A group together with its rank: `n` for `SL_n`, `g` for `Sp_2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupFamily {
    family: Family,
    rank: usize,
}

impl GroupFamily {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        match family {
            Family::Sp if rank >= 1 => Ok(Self { family, rank }),
            Family::SL if rank >= 2 => Ok(Self { family, rank }),
            Family::Sp => Err(Error::InvalidGroup("Sp_2g needs g >= 1".into())),
            Family::SL => Err(Error::InvalidGroup("SL_n needs n >= 2".into())),
        }
    }

    pub fn sp(g: usize) -> Result<Self> {
        Self::new(Family::Sp, g)
    }

    pub fn sl(n: usize) -> Result<Self> {
        Self::new(Family::SL, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_sp(&self) -> bool {
        self.family == Family::Sp
    }

    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::new(self.family, rank)
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::SL => "SL",
            Family::Sp => "Sp",
        }
    }

    /// Longest partition that indexes an irreducible.
    pub fn max_parts(&self) -> usize {
        match self.family {
            Family::SL => self.rank - 1,
            Family::Sp => self.rank,
        }
    }

    /// Number of basis vectors of the standard representation.
    pub fn std_dim(&self) -> usize {
        match self.family {
            Family::SL => self.rank,
            Family::Sp => 2 * self.rank,
        }
    }

    /// Whether an expression of total degree `d` is in the stable range.
    pub fn is_stable_for(&self, d: usize) -> bool {
        match self.family {
            Family::SL => self.rank > d,
            Family::Sp => self.rank >= d,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::SL => write!(f, "SL_{}", self.rank),
            Family::Sp => write!(f, "Sp_{}", 2 * self.rank),
        }
    }
}

/// Weakly decreasing list of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Malformed(format!("{parts:?} is not a partition")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `1^k`
    pub fn column(k: usize) -> Self {
        Self(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The i-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn check_fits(&self, group: GroupFamily) -> Result<()> {
        if self.len() > group.max_parts() {
            return Err(Error::PartitionTooLong {
                partition: self.to_string(),
                max: group.max_parts(),
            });
        }
        Ok(())
    }

    pub fn to_weight(&self, group: GroupFamily) -> Result<Weight> {
        self.check_fits(group)?;
        let mut c = vec![0i32; group.rank()];
        for (i, &p) in self.0.iter().enumerate() {
            c[i] = p as i32;
        }
        Ok(Weight(c))
    }

    /// Reads a dominant weight back as a partition.
    pub fn from_dominant(w: &Weight) -> Self {
        Self(w.0.iter().take_while(|&&x| x > 0).map(|&x| x as u32).collect())
    }

    /// All partitions of `d`, in decreasing lex order.
    pub fn of_degree(d: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of degree at most `d` with at most `max_parts` parts.
    pub fn up_to_degree(d: u32, max_parts: usize) -> Vec<Partition> {
        (0..=d)
            .flat_map(Self::of_degree)
            .filter(|p| p.len() <= max_parts)
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Convenience constructor for literal partitions; panics on bad input.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("literal partition")
}

/// Torus weight in e-coordinates. The derived order is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Subtract the last coordinate from every coordinate.
    pub fn normalized_sl(mut self) -> Weight {
        if let Some(&last) = self.0.last() {
            for x in &mut self.0 {
                *x -= last;
            }
        }
        self
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub group: GroupFamily,
    /// Positive roots in raw e-coordinates, sorted lexicographically (descending).
    pub positive_roots: Vec<Weight>,
    /// Half the sum of the positive roots; for SL stored normalized.
    pub rho: Weight,
}

pub fn root_datum(group: GroupFamily) -> RootDatum {
    let r = group.rank();
    let unit = |i: usize, s: i32| {
        let mut c = vec![0; r];
        c[i] = s;
        c
    };
    let mut roots = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut d = unit(i, 1);
            d[j] = -1;
            roots.push(Weight(d));
            if group.is_sp() {
                let mut s = unit(i, 1);
                s[j] = 1;
                roots.push(Weight(s));
            }
        }
        if group.is_sp() {
            roots.push(Weight(unit(i, 2)));
        }
    }
    roots.sort_by(|a, b| b.cmp(a));
    let rho = match group.family() {
        Family::Sp => Weight((1..=r as i32).rev().collect()),
        // (n-1)/2, (n-3)/2, ... shifted to integers and normalized.
        Family::SL => Weight((0..r as i32).rev().collect()),
    };
    RootDatum {
        group,
        positive_roots: roots,
        rho,
    }
}

impl RootDatum {
    /// Invariant bilinear form. For SL this is `n` times the form induced on
    /// the quotient by `(1,...,1)`, so it is independent of normalization.
    pub fn pairing(&self, x: &Weight, y: &Weight) -> i64 {
        let dot: i64 = x.0.iter().zip(&y.0).map(|(a, b)| *a as i64 * *b as i64).sum();
        match self.group.family() {
            Family::Sp => dot,
            Family::SL => {
                let sx: i64 = x.0.iter().map(|&a| a as i64).sum();
                let sy: i64 = y.0.iter().map(|&a| a as i64).sum();
                self.group.rank() as i64 * dot - sx * sy
            }
        }
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        let r = self.group.rank();
        let mut out = Vec::new();
        for i in 0..r - 1 {
            let mut c = vec![0; r];
            c[i] = 1;
            c[i + 1] = -1;
            out.push(Weight(c));
        }
        if self.group.is_sp() {
            let mut c = vec![0; r];
            c[r - 1] = 2;
            out.push(Weight(c));
        }
        out
    }

    /// Canonical stored form of a weight.
    pub fn normalize(&self, w: Weight) -> Weight {
        match self.group.family() {
            Family::Sp => w,
            Family::SL => w.normalized_sl(),
        }
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        let c = &w.0;
        let decreasing = c.windows(2).all(|p| p[0] >= p[1]);
        match self.group.family() {
            Family::Sp => decreasing && c.last().is_none_or(|&x| x >= 0),
            Family::SL => decreasing,
        }
    }

    /// The dominant weight in the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        let mut c = w.0.clone();
        if self.group.is_sp() {
            for x in &mut c {
                *x = x.abs();
            }
        }
        c.sort_unstable_by(|a, b| b.cmp(a));
        self.normalize(Weight(c))
    }

    /// Whether `d` is a nonnegative integer combination of positive roots.
    pub fn in_positive_cone(&self, d: &Weight) -> bool {
        let c = &d.0;
        match self.group.family() {
            Family::Sp => {
                let mut s = 0i64;
                for &x in c {
                    s += x as i64;
                    if s < 0 {
                        return false;
                    }
                }
                s % 2 == 0
            }
            Family::SL => {
                let n = c.len() as i64;
                let total: i64 = c.iter().map(|&x| x as i64).sum();
                if total.rem_euclid(n) != 0 {
                    return false;
                }
                let mut s = 0i64;
                for (k, &x) in c.iter().enumerate() {
                    s += x as i64;
                    if n * s < (k as i64 + 1) * total {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Whether `mu <= lambda` in dominance order.
    pub fn dominated_by(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.in_positive_cone(&lambda.sub(mu))
    }

    /// All weights in the Weyl orbit of `w`.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let dom = self.dominant_rep(w);
        let mut out = Vec::new();
        let mut c = dom.0.clone();
        c.sort_unstable();
        loop {
            match self.group.family() {
                Family::SL => out.push(Weight(c.clone()).normalized_sl()),
                Family::Sp => {
                    let nz: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
                    for mask in 0u64..(1u64 << nz.len()) {
                        let mut v = c.clone();
                        for (b, &i) in nz.iter().enumerate() {
                            if mask >> b & 1 == 1 {
                                v[i] = -v[i];
                            }
                        }
                        out.push(Weight(v));
                    }
                }
            }
            if !next_permutation(&mut c) {
                break;
            }
        }
        out
    }

    /// Dominant weights of the irreducible with highest weight `lambda`,
    /// i.e. all dominant weights below `lambda` in dominance order.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![lambda.clone()];
        seen.insert(lambda.clone());
        while let Some(nu) = stack.pop() {
            for a in &self.positive_roots {
                let mu = self.normalize(nu.sub(a));
                if self.is_dominant(&mu) && !seen.contains(&mu) {
                    seen.insert(mu.clone());
                    stack.push(mu);
                }
            }
        }
        seen
    }
}

/// Rearranges to the next permutation in lex order; false when wrapped.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Weyl dimension formula, evaluated exactly.
pub fn weyl_dim(group: GroupFamily, lambda: &Partition) -> Result<BigInt> {
    let rd = root_datum(group);
    let lw = lambda.to_weight(group)?;
    let lr = lw.add(&rd.rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in &rd.positive_roots {
        num *= rd.pairing(&lr, a);
        den *= rd.pairing(&rd.rho, a);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Multiplicities of the dominant weights of `V_lambda`, by Freudenthal's
/// recursion run in decreasing lex order.
pub fn dominant_multiplicities(
    group: GroupFamily,
    lambda: &Partition,
) -> Result<BTreeMap<Weight, i128>> {
    let rd = root_datum(group);
    let lw = lambda.to_weight(group)?;
    let dominant = rd.dominant_weights_below(&lw);
    let lr = lw.add(&rd.rho);
    let top = rd.pairing(&lr, &lr);
    let mut mult: BTreeMap<Weight, i128> = BTreeMap::new();
    for nu in dominant.iter().rev() {
        if *nu == lw {
            mult.insert(nu.clone(), 1);
            continue;
        }
        let mut acc: i128 = 0;
        for a in &rd.positive_roots {
            let mut k = 1;
            loop {
                let shifted = nu.add(&a.scale(k));
                let key = rd.dominant_rep(&shifted);
                let Some(&m) = mult.get(&key) else {
                    // Strings are unbroken, so the first gap ends it.
                    if !dominant.contains(&key) {
                        break;
                    }
                    unreachable!("weight {key} visited out of order");
                };
                acc += m * rd.pairing(&shifted, a) as i128;
                k += 1;
            }
        }
        let nr = nu.add(&rd.rho);
        let den = (top - rd.pairing(&nr, &nr)) as i128;
        assert!(den > 0, "Freudenthal denominator vanished at {nu}");
        assert!((2 * acc) % den == 0, "non-integral multiplicity at {nu}");
        let m = 2 * acc / den;
        if m != 0 {
            mult.insert(nu.clone(), m);
        }
    }
    Ok(mult)
}

/// Full formal character of the irreducible with highest weight `lambda`.
pub fn freudenthal_char(group: GroupFamily, lambda: &Partition) -> Result<FormalCharacter> {
    let rd = root_datum(group);
    let mut table = BTreeMap::new();
    for (nu, m) in dominant_multiplicities(group, lambda)? {
        for w in rd.orbit(&nu) {
            table.insert(w, m);
        }
    }
    Ok(FormalCharacter::from_table(group, table))
}
