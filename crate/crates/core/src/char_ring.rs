//! Formal characters: tensor/exterior/symmetric powers, duals, virtual
//! differences, decomposition by peeling, hom dimensions and branching.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rep_core::{
    dominant_multiplicities, freudenthal_char, root_datum, weyl_dim, Family, GroupFamily,
    Partition, Weight,
};
use crate::SCHEMA;

/// Finite map weight -> multiplicity, zero entries absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    group: GroupFamily,
    table: BTreeMap<Weight, i128>,
}

impl FormalCharacter {
    pub fn zero(group: GroupFamily) -> Self {
        Self {
            group,
            table: BTreeMap::new(),
        }
    }

    pub fn trivial(group: GroupFamily) -> Self {
        let mut c = Self::zero(group);
        c.add_weight(Weight::zero(group.rank()), 1);
        c
    }

    /// Weights must already be in canonical (normalized) form.
    pub fn from_table(group: GroupFamily, mut table: BTreeMap<Weight, i128>) -> Self {
        table.retain(|_, m| *m != 0);
        Self { group, table }
    }

    pub fn group(&self) -> GroupFamily {
        self.group
    }

    pub fn table(&self) -> &BTreeMap<Weight, i128> {
        &self.table
    }

    pub fn get(&self, w: &Weight) -> i128 {
        self.table.get(w).copied().unwrap_or(0)
    }

    pub fn add_weight(&mut self, w: Weight, m: i128) {
        if m == 0 {
            return;
        }
        match self.table.entry(w) {
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(m).expect("multiplicity overflow");
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(m);
            }
        }
    }

    pub fn dimension(&self) -> BigInt {
        self.table.values().map(|&m| BigInt::from(m)).sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.table.values().all(|&m| m > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    fn check_group(&self, o: &Self) -> Result<()> {
        if self.group != o.group {
            return Err(Error::GroupMismatch(self.group.to_string(), o.group.to_string()));
        }
        Ok(())
    }

    pub fn plus(&self, o: &Self) -> Result<Self> {
        self.check_group(o)?;
        let mut out = self.table.clone();
        for (w, &m) in &o.table {
            *out.entry(w.clone()).or_insert(0) += m;
        }
        Ok(Self::from_table(self.group, out))
    }

    /// Virtual difference, used for quotient representations.
    pub fn minus(&self, o: &Self) -> Result<Self> {
        self.plus(&o.scaled(-1))
    }

    pub fn scaled(&self, k: i128) -> Self {
        let table = self
            .table
            .iter()
            .map(|(w, &m)| (w.clone(), m.checked_mul(k).expect("multiplicity overflow")))
            .collect();
        Self::from_table(self.group, table)
    }

    pub fn tensor(&self, o: &Self) -> Result<Self> {
        self.check_group(o)?;
        let mut acc: HashMap<Weight, i128> = HashMap::with_capacity(self.table.len() * 4);
        for (w1, &m1) in &self.table {
            for (w2, &m2) in &o.table {
                let m = m1.checked_mul(m2).expect("multiplicity overflow");
                *acc.entry(w1.add(w2)).or_insert(0) += m;
            }
        }
        Ok(Self::from_table(self.group, acc.into_iter().collect()))
    }

    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::trivial(self.group);
        for _ in 0..k {
            out = out.tensor(self).expect("same group");
        }
        out
    }

    /// Adams operation: every weight scaled by `k`.
    pub fn adams(&self, k: i32) -> Self {
        let table = self.table.iter().map(|(w, &m)| (w.scale(k), m)).collect();
        Self::from_table(self.group, table)
    }

    pub fn dual(&self) -> Self {
        match self.group.family() {
            Family::Sp => self.clone(),
            Family::SL => {
                let table = self
                    .table
                    .iter()
                    .map(|(w, &m)| (w.neg().normalized_sl(), m))
                    .collect();
                Self::from_table(self.group, table)
            }
        }
    }

    fn newton(&self, k: usize, alternating: bool) -> Result<Self> {
        if !self.is_genuine() {
            return Err(Error::NonGenuineCharacter);
        }
        let adams: Vec<Self> = (0..=k).map(|i| self.adams(i as i32)).collect();
        let mut powers = vec![Self::trivial(self.group)];
        for j in 1..=k {
            let mut acc = Self::zero(self.group);
            for i in 1..=j {
                let term = adams[i].tensor(&powers[j - i])?;
                let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
                acc = acc.plus(&term.scaled(sign))?;
            }
            let j = j as i128;
            let table = acc
                .table
                .into_iter()
                .map(|(w, m)| {
                    assert!(m % j == 0, "Newton identity left a remainder");
                    (w, m / j)
                })
                .collect();
            powers.push(Self::from_table(self.group, table));
        }
        Ok(powers.pop().unwrap())
    }

    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        self.newton(k, true)
    }

    pub fn sym_power(&self, k: usize) -> Result<Self> {
        self.newton(k, false)
    }

    /// Restriction `Sp_2g -> Sp_2(g-1)`: forget the last coordinate.
    pub fn restrict_sp(&self) -> Result<Self> {
        if !self.group.is_sp() || self.group.rank() < 2 {
            return Err(Error::Unsupported("restriction needs Sp_2g with g >= 2".into()));
        }
        let small = self.group.with_rank(self.group.rank() - 1)?;
        let mut out: BTreeMap<Weight, i128> = BTreeMap::new();
        for (w, &m) in &self.table {
            *out.entry(Weight(w.0[..w.0.len() - 1].to_vec())).or_insert(0) += m;
        }
        Ok(Self::from_table(small, out))
    }

    pub fn is_weyl_invariant(&self) -> bool {
        let rd = root_datum(self.group);
        self.table
            .iter()
            .all(|(w, &m)| rd.orbit(w).iter().all(|o| self.get(o) == m))
    }
}

/// Standard representation: `e_i` for SL_n, `±e_i` for Sp_2g.
pub fn std_char(group: GroupFamily) -> FormalCharacter {
    let r = group.rank();
    let mut c = FormalCharacter::zero(group);
    for i in 0..r {
        let mut v = vec![0; r];
        v[i] = 1;
        let w = Weight(v);
        if group.is_sp() {
            c.add_weight(w.neg(), 1);
            c.add_weight(w, 1);
        } else {
            c.add_weight(w.normalized_sl(), 1);
        }
    }
    c
}

/// A representation as a list of irreducibles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub group: GroupFamily,
    /// Sorted by lex order of the partition; multiplicities positive.
    pub terms: Vec<(Partition, i128)>,
    /// False when the rank is below the degree of the decomposed expression.
    pub stable: bool,
}

impl Decomposition {
    pub fn from_terms(group: GroupFamily, terms: impl IntoIterator<Item = (Partition, i128)>) -> Self {
        let mut map: BTreeMap<Partition, i128> = BTreeMap::new();
        for (p, m) in terms {
            *map.entry(p).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        let max_deg = map.keys().map(|p| p.degree() as usize).max().unwrap_or(0);
        Self {
            group,
            terms: map.into_iter().collect(),
            stable: group.is_stable_for(max_deg),
        }
    }

    pub fn mult(&self, p: &Partition) -> i128 {
        self.terms
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn total_dim(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(p, m)| weyl_dim(self.group, p).expect("partition fits") * BigInt::from(*m))
            .sum()
    }

    /// Multiset difference; fails if the result has a negative entry.
    pub fn minus(&self, o: &Self) -> Result<Self> {
        let neg = o.terms.iter().map(|(p, m)| (p.clone(), -m));
        let d = Self::from_terms(self.group, self.terms.iter().cloned().chain(neg));
        if let Some((p, m)) = d.terms.iter().find(|(_, m)| *m < 0) {
            return Err(Error::NotARepresentation {
                weight: p.to_string(),
                mult: *m,
            });
        }
        Ok(Self { stable: self.stable && o.stable, ..d })
    }

    /// `sum_lambda m_self(lambda) m_other(lambda)`.
    pub fn inner(&self, o: &Self) -> i128 {
        self.terms.iter().map(|(p, m)| m * o.mult(p)).sum()
    }

    pub fn partitions(&self) -> BTreeSet<Partition> {
        self.terms.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Rebuild the full character.
    pub fn character(&self) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero(self.group);
        for (p, m) in &self.terms {
            out = out.plus(&freudenthal_char(self.group, p)?.scaled(*m))?;
        }
        Ok(out)
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.stable = self.group.is_stable_for(degree);
        self
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(p, m)| {
                json!({
                    "partition": p.parts(),
                    "mult": *m as i64,
                    "dim": weyl_dim(self.group, p).expect("fits").to_string(),
                })
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "group": self.group.name(),
            "rank": self.group.rank(),
            "terms": terms,
            "total_dim": self.total_dim().to_string(),
            "stable": self.stable,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |s: &str| Error::Malformed(format!("decomposition JSON: {s}"));
        let family = match v["group"].as_str() {
            Some("Sp") => Family::Sp,
            Some("SL") => Family::SL,
            _ => return Err(bad("group")),
        };
        let rank = v["rank"].as_u64().ok_or_else(|| bad("rank"))? as usize;
        let group = GroupFamily::new(family, rank)?;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let parts: Vec<u32> = serde_json::from_value(t["partition"].clone())
                .map_err(|_| bad("partition"))?;
            let m = t["mult"].as_i64().ok_or_else(|| bad("mult"))?;
            terms.push((Partition::new(parts)?, m as i128));
        }
        let stable = v["stable"].as_bool().ok_or_else(|| bad("stable"))?;
        Ok(Self {
            stable,
            ..Self::from_terms(group, terms)
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.group.is_sp() { "V" } else { "W" };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{letter}{p}")?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Peels irreducibles off the lex-maximal remaining dominant weight.
///
/// Accepts virtual characters of the form genuine-minus-subrepresentation;
/// the dominant part carries all the information for Weyl-invariant input.
pub fn decompose(chr: &FormalCharacter) -> Result<Decomposition> {
    let group = chr.group();
    let rd = root_datum(group);
    let mut dom: BTreeMap<Weight, i128> = chr
        .table()
        .iter()
        .filter(|(w, _)| rd.is_dominant(w))
        .map(|(w, &m)| (w.clone(), m))
        .collect();
    let mut terms = Vec::new();
    while let Some((top, &m)) = dom.last_key_value() {
        if m < 0 {
            return Err(Error::NotARepresentation {
                weight: top.to_string(),
                mult: m,
            });
        }
        let lam = Partition::from_dominant(top);
        for (w, k) in dominant_multiplicities(group, &lam)? {
            let e = dom.entry(w.clone()).or_insert(0);
            *e -= m * k;
            if *e == 0 {
                dom.remove(&w);
            }
        }
        terms.push((lam, m));
    }
    let d = Decomposition::from_terms(group, terms);
    let (want, got) = (chr.dimension(), d.total_dim());
    if want != got {
        return Err(Error::DimensionMismatch {
            expected: want.to_string(),
            found: got.to_string(),
        });
    }
    Ok(d)
}

/// `dim Hom_G(A, B)` for genuine characters.
pub fn hom_dim(a: &FormalCharacter, b: &FormalCharacter) -> Result<i128> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(a.group().to_string(), b.group().to_string()));
    }
    if !a.is_genuine() || !b.is_genuine() {
        return Err(Error::NonGenuineCharacter);
    }
    Ok(decompose(a)?.inner(&decompose(b)?))
}

/// Decomposition of `H^{⊗d}` for `Sp_2g`.
pub fn tensor_power_decomposition(d: usize, g: usize) -> Result<Decomposition> {
    let group = GroupFamily::sp(g)?;
    Ok(decompose(&std_char(group).power(d))?.with_degree(d))
}

/// Multiplicity of the trivial representation in `H^{⊗d}` for `Sp_2g`.
/// Meaningful as a stable value only when `g >= d`.
pub fn trivial_multiplicity(d: usize, g: usize) -> Result<i128> {
    Ok(tensor_power_decomposition(d, g)?.mult(&Partition::empty()))
}

/// Restriction of `V_lambda(g)` to `Sp_2(g-1)`, decomposed.
pub fn branch_sp(lambda: &Partition, g: usize) -> Result<Decomposition> {
    let group = GroupFamily::sp(g)?;
    lambda.check_fits(group)?;
    if g < 2 {
        return Err(Error::GroupMismatch(group.to_string(), "Sp_2".into()));
    }
    decompose(&freudenthal_char(group, lambda)?.restrict_sp()?)
}

/// Partitions `k'` with at most `g-1` parts and `k_{i+2} <= k'_i <= k_i`.
pub fn interlacing_factors(lambda: &Partition, g: usize) -> BTreeSet<Partition> {
    let rows = g - 1;
    let mut out = BTreeSet::new();
    fn rec(i: usize, rows: usize, lam: &Partition, cur: &mut Vec<u32>, out: &mut BTreeSet<Partition>) {
        if i == rows {
            out.insert(Partition::new(cur.clone()).expect("interlacing keeps order"));
            return;
        }
        let hi = lam.part(i).min(cur.last().copied().unwrap_or(u32::MAX));
        for k in lam.part(i + 2)..=hi {
            cur.push(k);
            rec(i + 1, rows, lam, cur, out);
            cur.pop();
        }
    }
    rec(0, rows, lambda, &mut Vec::new(), &mut out);
    out
}
