//! The free Lie algebra on `n` letters inside the tensor algebra: Lyndon
//! bases, bracket expansion, the bracket map `k^n ⊗ FLie_d -> FLie_{d+1}`
//! and Lie characters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::char_ring::{std_char, FormalCharacter};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, kernel_basis, q, Echelon, SparseVec, Q};
use crate::rep_core::{root_datum, GroupFamily, Weight};

/// Letters are 0-based internally; `Display` prints them 1-based.
pub type Word = Vec<usize>;

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of `FLie_d(k^n)`: `(1/d) sum_{e|d} mu(d/e) n^e`.
pub fn witt_dim(n: u64, d: u64) -> u128 {
    assert!(n >= 1 && d >= 1);
    let mut acc: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            acc += mobius(d / e) as i128 * (n as i128).pow(e as u32);
        }
    }
    assert!(acc % d as i128 == 0);
    (acc / d as i128) as u128
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracket {
    Leaf(usize),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn node(a: Bracket, b: Bracket) -> Self {
        Bracket::Node(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Bracket::Leaf(_) => 1,
            Bracket::Node(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn word(&self) -> Word {
        match self {
            Bracket::Leaf(i) => vec![*i],
            Bracket::Node(a, b) => {
                let mut w = a.word();
                w.extend(b.word());
                w
            }
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Leaf(i) => write!(f, "{}", i + 1),
            Bracket::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonBracket {
    pub word: Word,
    pub bracketing: Bracket,
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard bracketing: split off the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[usize]) -> Bracket {
    if w.len() == 1 {
        return Bracket::Leaf(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length >= 2");
    Bracket::node(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}

/// Lyndon words of length `d` over `n` letters, in lex order (Duval).
pub fn lyndon_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(x) => *x += 1,
        }
    }
    out
}

pub fn lyndon_basis(n: usize, d: usize) -> Vec<LyndonBracket> {
    lyndon_words(n, d)
        .into_iter()
        .map(|w| LyndonBracket {
            bracketing: standard_bracketing(&w),
            word: w,
        })
        .collect()
}

/// Homogeneous element of the tensor algebra with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorVector {
    pub coeffs: SparseVec<Word>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(i: usize) -> Self {
        Self::word(vec![i])
    }

    pub fn word(w: Word) -> Self {
        let mut coeffs = SparseVec::new();
        coeffs.insert(w, Q::one());
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next().map(|w| w.len())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.coeffs.clone();
        axpy(&mut c, &Q::one(), &o.coeffs);
        Self { coeffs: c }
    }

    pub fn scaled(&self, k: &Q) -> Self {
        let mut c = SparseVec::new();
        axpy(&mut c, k, &self.coeffs);
        Self { coeffs: c }
    }

    pub fn add_scaled(&mut self, k: &Q, o: &Self) {
        axpy(&mut self.coeffs, k, &o.coeffs);
    }

    /// Concatenation product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut c = SparseVec::new();
        for (u, x) in &self.coeffs {
            for (v, y) in &o.coeffs {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_entry(&mut c, w, x * y);
            }
        }
        Self { coeffs: c }
    }

    /// `[s, t] = st - ts`
    pub fn bracket(&self, o: &Self) -> Self {
        let mut c = self.mul(o);
        c.add_scaled(&q(-1), &o.mul(self));
        c
    }

    /// Extends a linear endomorphism of the letters as a derivation.
    pub fn derive(&self, f: impl Fn(usize) -> Vec<(usize, Q)>) -> Self {
        let mut c = SparseVec::new();
        for (w, x) in &self.coeffs {
            for pos in 0..w.len() {
                for (l, y) in f(w[pos]) {
                    let mut nw = w.clone();
                    nw[pos] = l;
                    add_entry(&mut c, nw, x * &y);
                }
            }
        }
        Self { coeffs: c }
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, x)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !x.is_one() {
                write!(f, "({x})")?;
            }
            let letters: Vec<String> = w.iter().map(|l| format!("e{}", l + 1)).collect();
            write!(f, "{}", letters.join(""))?;
        }
        Ok(())
    }
}

pub fn expand_bracket(b: &Bracket) -> TensorVector {
    match b {
        Bracket::Leaf(i) => TensorVector::letter(*i),
        Bracket::Node(x, y) => expand_bracket(x).bracket(&expand_bracket(y)),
    }
}

/// Lyndon basis of one graded piece, with expansions for coordinate changes.
#[derive(Clone, Debug)]
pub struct LieBasis {
    pub n: usize,
    pub d: usize,
    pub basis: Vec<LyndonBracket>,
    expansions: BTreeMap<Word, (usize, TensorVector)>,
}

impl LieBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let basis = lyndon_basis(n, d);
        let expansions = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.word.clone(), (i, expand_bracket(&b.bracketing))))
            .collect();
        Self { n, d, basis, expansions }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of a Lie element. The smallest word of each Lyndon
    /// expansion is the Lyndon word itself with coefficient one, so the
    /// basis is triangular.
    pub fn coordinates(&self, t: &TensorVector) -> Result<SparseVec<usize>> {
        let mut rest = t.clone();
        let mut out = SparseVec::new();
        while let Some((w, x)) = rest.coeffs.iter().next().map(|(w, x)| (w.clone(), x.clone())) {
            let Some((i, exp)) = self.expansions.get(&w) else {
                return Err(Error::Malformed(format!(
                    "not a Lie element: leading word {w:?} is not Lyndon"
                )));
            };
            rest.add_scaled(&-x.clone(), exp);
            out.insert(*i, x);
        }
        Ok(out)
    }

    pub fn element(&self, coords: &SparseVec<usize>) -> TensorVector {
        let mut t = TensorVector::zero();
        for (i, x) in coords {
            t.add_scaled(x, &self.expansions[&self.basis[*i].word].1);
        }
        t
    }
}

/// Matrix of `k^n ⊗ FLie_d -> FLie_{d+1}`, `x ⊗ y -> [x, y]`, in Lyndon
/// coordinates, with its kernel.
#[derive(Clone, Debug)]
pub struct BracketMap {
    pub source: LieBasis,
    pub target: LieBasis,
    /// Domain basis `(letter, index into source)`, in lex order.
    pub domain: Vec<(usize, usize)>,
    pub columns: Vec<SparseVec<usize>>,
    pub kernel: Vec<SparseVec<usize>>,
}

impl BracketMap {
    pub fn rank(&self) -> usize {
        self.domain.len() - self.kernel.len()
    }
}

pub fn bracket_map(n: usize, d: usize) -> BracketMap {
    let source = LieBasis::new(n, d);
    let target = LieBasis::new(n, d + 1);
    let mut domain = Vec::new();
    let mut columns = Vec::new();
    for i in 0..n {
        for j in 0..source.len() {
            let img = TensorVector::letter(i).bracket(&source.element(&[(j, Q::one())].into()));
            columns.push(target.coordinates(&img).expect("brackets are Lie elements"));
            domain.push((i, j));
        }
    }
    let kernel = kernel_basis(&columns);
    BracketMap {
        source,
        target,
        domain,
        columns,
        kernel,
    }
}

/// Character of `FLie_d` of the standard representation:
/// `(1/d) sum_{e|d} mu(e) psi^e(chi)^{d/e}`.
pub fn lie_character(group: GroupFamily, d: usize) -> FormalCharacter {
    let chi = std_char(group);
    let mut acc = FormalCharacter::zero(group);
    for e in 1..=d {
        if d.is_multiple_of(e) {
            let mu = mobius(e as u64) as i128;
            if mu != 0 {
                let term = chi.adams(e as i32).power(d / e);
                acc = acc.plus(&term.scaled(mu)).expect("same group");
            }
        }
    }
    let d = d as i128;
    let table = acc
        .table()
        .iter()
        .map(|(w, &m)| {
            assert!(m % d == 0);
            (w.clone(), m / d)
        })
        .collect();
    FormalCharacter::from_table(group, table)
}

/// Weights of the standard basis letters, in the letter order used here:
/// `e_1..e_n` for SL; `a_1, b_1, ..., a_g, b_g` (weights `±e_i`) for Sp.
pub fn letter_weights(group: GroupFamily) -> Vec<Weight> {
    let r = group.rank();
    let unit = |i: usize, s: i32| {
        let mut c = vec![0; r];
        c[i] = s;
        Weight(c)
    };
    if group.is_sp() {
        (0..r).flat_map(|i| [unit(i, 1), unit(i, -1)]).collect()
    } else {
        (0..r).map(|i| unit(i, 1).normalized_sl()).collect()
    }
}

/// Same character, read off the Lyndon words' letter contents.
pub fn lie_character_lyndon(group: GroupFamily, d: usize) -> FormalCharacter {
    let letters = letter_weights(group);
    let rd = root_datum(group);
    let mut c = FormalCharacter::zero(group);
    for w in lyndon_words(letters.len(), d) {
        let mut wt = Weight::zero(group.rank());
        for l in w {
            wt = wt.add(&letters[l]);
        }
        c.add_weight(rd.normalize(wt), 1);
    }
    c
}

/// Highest weight vector test for `SL_n` on tensors: killed by every
/// raising derivation `E_ij` (`e_j -> e_i`, `i < j`), and homogeneous for
/// the torus. Returns the letter content.
pub fn sl_highest_weight(t: &TensorVector, n: usize) -> Option<Vec<usize>> {
    let content = |w: &Word| {
        let mut c = vec![0usize; n];
        for &l in w {
            c[l] += 1;
        }
        c
    };
    let first = content(t.coeffs.keys().next()?);
    if t.coeffs.keys().any(|w| content(w) != first) {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            let e = t.derive(|l| if l == j { vec![(i, Q::one())] } else { vec![] });
            if !e.is_zero() {
                return None;
            }
        }
    }
    Some(first)
}

/// Rank of a set of tensors.
pub fn tensor_rank(ts: &[TensorVector]) -> usize {
    let mut e = Echelon::new();
    for t in ts {
        e.insert(&t.coeffs);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_ring::decompose;
    use crate::rep_core::part;
    use crate::Decomposition;

    fn binom(n: u128, k: u128) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn tv(entries: &[(&[usize], i64)]) -> TensorVector {
        let mut t = TensorVector::zero();
        for (w, x) in entries {
            t.add_scaled(&q(*x), &TensorVector::word(w.to_vec()));
        }
        t
    }

    /// Oracle: count Lyndon words by brute force over all words.
    fn brute_lyndon(n: usize, d: usize) -> usize {
        let total = n.pow(d as u32);
        (0..total)
            .filter(|&idx| {
                let mut x = idx;
                let w: Vec<usize> = (0..d).map(|_| { let l = x % n; x /= n; l }).collect();
                is_lyndon(&w)
            })
            .count()
    }

    #[test]
    fn witt_examples() {
        for n in 1..6 {
            assert_eq!(witt_dim(n, 1), n as u128);
        }
        assert_eq!(witt_dim(4, 2), 6);
        assert_eq!(witt_dim(2, 3), 2);
        assert_eq!(witt_dim(5, 3), 40);
        assert_eq!(witt_dim(5, 4), 150);
    }

    #[test]
    fn lyndon_counts() {
        for n in 1..=6 {
            for d in 1..=7 {
                let words = lyndon_words(n, d);
                assert_eq!(words.len() as u128, witt_dim(n as u64, d as u64), "n={n} d={d}");
                assert!(words.iter().all(|w| is_lyndon(w)));
                assert!(words.windows(2).all(|p| p[0] < p[1]));
                if n.pow(d as u32) <= 50_000 {
                    assert_eq!(words.len(), brute_lyndon(n, d));
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let b = lyndon_basis(2, 2);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].bracketing.to_string(), "[1,2]");
        let b = lyndon_basis(2, 3);
        let shown: Vec<String> = b.iter().map(|x| x.bracketing.to_string()).collect();
        assert_eq!(shown, vec!["[1,[1,2]]", "[[1,2],2]"]);
        assert_eq!(lyndon_basis(3, 1).len(), 3);
    }

    #[test]
    fn expansion_examples() {
        let e12 = expand_bracket(&Bracket::node(Bracket::Leaf(0), Bracket::Leaf(1)));
        assert_eq!(e12, tv(&[(&[0, 1], 1), (&[1, 0], -1)]));
        let e112 = expand_bracket(&standard_bracketing(&[0, 0, 1]));
        assert_eq!(e112, tv(&[(&[0, 0, 1], 1), (&[0, 1, 0], -2), (&[1, 0, 0], 1)]));
        assert!(expand_bracket(&Bracket::node(Bracket::Leaf(0), Bracket::Leaf(0))).is_zero());
    }

    #[test]
    fn lyndon_expansions_are_triangular_and_independent() {
        for (n, d) in [(2, 6), (3, 5), (4, 4)] {
            let basis = LieBasis::new(n, d);
            let exps: Vec<TensorVector> = basis.basis.iter().map(|b| expand_bracket(&b.bracketing)).collect();
            for (b, e) in basis.basis.iter().zip(&exps) {
                let (w, x) = e.coeffs.iter().next().unwrap();
                assert_eq!(w, &b.word);
                assert!(x.is_one());
            }
            assert_eq!(tensor_rank(&exps), basis.len());
        }
    }

    #[test]
    fn jacobi_vanishes() {
        for n in [2usize, 3] {
            let max = if n == 2 { 6 } else { 5 };
            let mut elems = Vec::new();
            for d in 1..max {
                for b in lyndon_basis(n, d) {
                    elems.push((d, expand_bracket(&b.bracketing)));
                }
            }
            for (dx, x) in &elems {
                for (dy, y) in &elems {
                    for (dz, z) in &elems {
                        if dx + dy + dz > max {
                            continue;
                        }
                        let j = x
                            .bracket(&y.bracket(z))
                            .add(&y.bracket(&z.bracket(x)))
                            .add(&z.bracket(&x.bracket(y)));
                        assert!(j.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_map_kernels() {
        for n in 2..=6usize {
            let m = bracket_map(n, 2);
            assert_eq!(m.rank() as u128, witt_dim(n as u64, 3));
            assert_eq!(m.kernel.len() as u128, binom(n as u128, 3), "n={n}");
        }
        for n in 2..=6usize {
            let m = bracket_map(n, 3);
            assert_eq!(m.rank() as u128, witt_dim(n as u64, 4));
            let n2 = binom(n as u128, 2);
            let want = n2 * (n2 + 1) / 2 - binom(n as u128, 4);
            assert_eq!(m.kernel.len() as u128, want, "n={n}");
            assert_eq!(m.kernel.len() as u128, n as u128 * witt_dim(n as u64, 3) - witt_dim(n as u64, 4));
        }
        assert_eq!(bracket_map(2, 1).kernel.len(), 3);
        assert_eq!(bracket_map(5, 3).kernel.len(), 50);
    }

    #[test]
    fn kernel_vectors_really_vanish() {
        let m = bracket_map(4, 2);
        for k in &m.kernel {
            let mut acc = SparseVec::new();
            for (col, x) in k {
                axpy(&mut acc, x, &m.columns[*col]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn lie_characters() {
        let dec = |g: GroupFamily, t: &[(&[u32], i128)]| {
            Decomposition::from_terms(g, t.iter().map(|(p, m)| (part(p), *m)))
        };
        for n in 2..=6 {
            let g = GroupFamily::sl(n).unwrap();
            let c1 = decompose(&lie_character(g, 1)).unwrap();
            assert_eq!(c1.terms, dec(g, &[(&[1], 1)]).terms);
            // for n = 2 the column [1,1] is the trivial representation
            let want: &[u32] = if n == 2 { &[] } else { &[1, 1] };
            let c2 = decompose(&lie_character(g, 2)).unwrap();
            assert_eq!(c2.terms, dec(g, &[(want, 1)]).terms);
        }
        let g4 = GroupFamily::sl(4).unwrap();
        assert_eq!(decompose(&lie_character(g4, 3)).unwrap().terms, dec(g4, &[(&[2, 1], 1)]).terms);
        let g5 = GroupFamily::sl(5).unwrap();
        assert_eq!(
            decompose(&lie_character(g5, 4)).unwrap().terms,
            dec(g5, &[(&[3, 1], 1), (&[2, 1, 1], 1)]).terms
        );
        let s3 = GroupFamily::sp(3).unwrap();
        assert_eq!(decompose(&lie_character(s3, 2)).unwrap().terms, dec(s3, &[(&[], 1), (&[1, 1], 1)]).terms);
    }

    #[test]
    fn lie_character_two_routes_agree() {
        for group in [GroupFamily::sl(3).unwrap(), GroupFamily::sl(4).unwrap(), GroupFamily::sp(2).unwrap()] {
            for d in 1..=5 {
                let a = lie_character(group, d);
                assert_eq!(a, lie_character_lyndon(group, d), "{group} d={d}");
                assert_eq!(
                    a.dimension(),
                    num_bigint::BigInt::from(witt_dim(group.std_dim() as u64, d as u64))
                );
            }
        }
    }

    #[test]
    fn highest_weight_vectors_in_lie() {
        // [e1,[e1,e2]] generates FLie_3 = W_{2,1}
        let v = expand_bracket(&standard_bracketing(&[0, 0, 1]));
        assert_eq!(sl_highest_weight(&v, 4), Some(vec![2, 1, 0, 0]));
        // the two highest weight vectors of FLie_4
        let v31 = expand_bracket(&standard_bracketing(&[0, 0, 0, 1]));
        assert_eq!(sl_highest_weight(&v31, 5), Some(vec![3, 1, 0, 0, 0]));
        let e = |i| Bracket::Leaf(i);
        let v211 = expand_bracket(&Bracket::node(
            Bracket::node(e(0), e(1)),
            Bracket::node(e(0), e(2)),
        ));
        assert_eq!(sl_highest_weight(&v211, 5), Some(vec![2, 1, 1, 0, 0]));
        assert_eq!(sl_highest_weight(&TensorVector::letter(1), 3), None);
    }

    #[test]
    fn coordinates_reject_non_lie() {
        let b = LieBasis::new(2, 2);
        assert!(b.coordinates(&TensorVector::word(vec![1, 0])).is_err());
    }
}
