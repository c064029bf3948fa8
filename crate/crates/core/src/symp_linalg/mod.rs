//! Exact multilinear algebra on spaces built from `H = Q^{2g}` with its
//! symplectic basis `a_1, b_1, ..., a_g, b_g`.
//!
//! Basis vectors are numbered in the canonical order `a_1 < b_1 < a_2 < ...`
//! (`a_i = 2(i-1)`, `b_i = 2(i-1)+1`), which fixes every exterior sign.

pub mod closure;
pub mod generators;
pub mod maps;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, q, q_frac, SparseVec, Q};
use crate::rep_core::Weight;
use crate::SCHEMA;

pub use closure::{
    fixed_by_upper_generators, highest_weight_profile, is_highest_weight_vector, raising_closure,
    sp_span_closure, Subspace,
};
pub use generators::{GenKind, GroupGenerator, HMap};
pub use maps::*;

/// Index of `a_i` (1-based `i`).
pub fn a_idx(i: usize) -> u16 {
    (2 * (i - 1)) as u16
}

/// Index of `b_i` (1-based `i`).
pub fn b_idx(i: usize) -> u16 {
    (2 * (i - 1) + 1) as u16
}

pub fn label(i: u16) -> String {
    let c = if i.is_multiple_of(2) { 'a' } else { 'b' };
    format!("{c}{}", i / 2 + 1)
}

pub fn parse_label(s: &str, g: usize) -> Result<u16> {
    let bad = || Error::Malformed(format!("bad basis label {s:?}"));
    let (c, n) = s.split_at(1.min(s.len()));
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || n > g {
        return Err(bad());
    }
    match c {
        "a" => Ok(a_idx(n)),
        "b" => Ok(b_idx(n)),
        _ => Err(bad()),
    }
}

/// `ω(e_i, e_j)` on basis vectors.
pub fn omega_basis(i: u16, j: u16) -> i64 {
    if i / 2 != j / 2 || i == j {
        0
    } else if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The three subspaces quotiented out in the constructions we need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Embedding {
    /// `H -> ∧³H`, `h -> h∧ω`.
    HInWedge3,
    /// `∧⁴H -> Sym²(∧²H)`.
    Wedge4InSym2Wedge2,
    /// `H⊗∧³H -> H⊗H⊗∧²H`.
    HxWedge3InHHxWedge2,
}

impl Embedding {
    pub const ALL: [Embedding; 3] = [
        Embedding::HInWedge3,
        Embedding::Wedge4InSym2Wedge2,
        Embedding::HxWedge3InHHxWedge2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Embedding::HInWedge3 => "H-in-wedge3",
            Embedding::Wedge4InSym2Wedge2 => "wedge4-in-sym2wedge2",
            Embedding::HxWedge3InHHxWedge2 => "HxWedge3-in-HHxWedge2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }

    pub fn ambient(&self) -> Shape {
        use Shape::*;
        match self {
            Embedding::HInWedge3 => Shape::wedge(3, H),
            Embedding::Wedge4InSym2Wedge2 => Shape::sym(2, Shape::wedge(2, H)),
            Embedding::HxWedge3InHHxWedge2 => {
                Shape::tensor(H, Shape::tensor(H, Shape::wedge(2, H)))
            }
        }
    }

    pub fn sub(&self) -> Shape {
        use Shape::*;
        match self {
            Embedding::HInWedge3 => H,
            Embedding::Wedge4InSym2Wedge2 => Shape::wedge(4, H),
            Embedding::HxWedge3InHHxWedge2 => Shape::tensor(H, Shape::wedge(3, H)),
        }
    }
}

/// Formal tensor shape over `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    H,
    Tensor(Box<Shape>, Box<Shape>),
    Wedge(usize, Box<Shape>),
    Sym(usize, Box<Shape>),
    /// Ambient of the embedding modulo its image.
    Quot(Embedding),
}

impl Shape {
    pub fn tensor(a: Shape, b: Shape) -> Shape {
        Shape::Tensor(Box::new(a), Box::new(b))
    }

    pub fn wedge(k: usize, a: Shape) -> Shape {
        Shape::Wedge(k, Box::new(a))
    }

    pub fn sym(k: usize, a: Shape) -> Shape {
        Shape::Sym(k, Box::new(a))
    }

    pub fn has_quot(&self) -> bool {
        match self {
            Shape::H => false,
            Shape::Tensor(a, b) => a.has_quot() || b.has_quot(),
            Shape::Wedge(_, a) | Shape::Sym(_, a) => a.has_quot(),
            Shape::Quot(_) => true,
        }
    }

    /// Number of `H` leaves in a key of this shape.
    pub fn leaves(&self) -> usize {
        match self {
            Shape::H => 1,
            Shape::Tensor(a, b) => a.leaves() + b.leaves(),
            Shape::Wedge(k, a) | Shape::Sym(k, a) => k * a.leaves(),
            Shape::Quot(e) => e.ambient().leaves(),
        }
    }

    /// Shape of the stored representative.
    pub fn storage(&self) -> Shape {
        match self {
            Shape::H => Shape::H,
            Shape::Tensor(a, b) => Shape::tensor(a.storage(), b.storage()),
            Shape::Wedge(k, a) => Shape::wedge(*k, a.storage()),
            Shape::Sym(k, a) => Shape::sym(*k, a.storage()),
            Shape::Quot(e) => e.ambient(),
        }
    }

    fn expect(&self, want: &Shape) -> Result<()> {
        if self != want {
            return Err(Error::ShapeMismatch {
                expected: want.to_string(),
                found: self.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::H => write!(f, "H"),
            Shape::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Shape::Wedge(k, a) => write!(f, "wedge({k}, {a})"),
            Shape::Sym(k, a) => write!(f, "sym({k}, {a})"),
            Shape::Quot(e) => write!(f, "quot({}, {})", e.ambient(), e.name()),
        }
    }
}

/// Canonical index of a basis element of a shape. Exterior sequences are
/// strictly increasing, symmetric ones weakly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    B(u16),
    Pair(Box<Key>, Box<Key>),
    Seq(Vec<Key>),
}

impl Key {
    pub fn pair(a: Key, b: Key) -> Key {
        Key::Pair(Box::new(a), Box::new(b))
    }

    fn leaves_into(&self, out: &mut Vec<u16>) {
        match self {
            Key::B(i) => out.push(*i),
            Key::Pair(a, b) => {
                a.leaves_into(out);
                b.leaves_into(out);
            }
            Key::Seq(v) => v.iter().for_each(|k| k.leaves_into(out)),
        }
    }

    pub fn leaves(&self) -> Vec<u16> {
        let mut out = Vec::new();
        self.leaves_into(&mut out);
        out
    }

    fn from_leaves(shape: &Shape, leaves: &[u16]) -> Key {
        match shape {
            Shape::H => Key::B(leaves[0]),
            Shape::Tensor(a, b) => {
                let n = a.leaves();
                Key::pair(Key::from_leaves(a, &leaves[..n]), Key::from_leaves(b, &leaves[n..]))
            }
            Shape::Wedge(_, a) | Shape::Sym(_, a) => {
                Key::Seq(leaves.chunks(a.leaves()).map(|c| Key::from_leaves(a, c)).collect())
            }
            Shape::Quot(e) => Key::from_leaves(&e.ambient(), leaves),
        }
    }

    /// Torus weight: `a_i -> e_i`, `b_i -> -e_i`.
    pub fn weight(&self, g: usize) -> Weight {
        let mut c = vec![0i32; g];
        for l in self.leaves() {
            c[(l / 2) as usize] += if l % 2 == 0 { 1 } else { -1 };
        }
        Weight(c)
    }

    fn fmt_in(&self, shape: &Shape, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        match (shape, self) {
            (Shape::H, Key::B(i)) => write!(f, "{}", label(*i)),
            (Shape::Tensor(a, b), Key::Pair(x, y)) => {
                if nested {
                    write!(f, "(")?;
                }
                x.fmt_in(a, f, true)?;
                write!(f, "⊗")?;
                y.fmt_in(b, f, true)?;
                if nested {
                    write!(f, ")")?;
                }
                Ok(())
            }
            (Shape::Wedge(_, a), Key::Seq(v)) | (Shape::Sym(_, a), Key::Seq(v)) => {
                let sep = if matches!(shape, Shape::Wedge(..)) { "∧" } else { "·" };
                if nested {
                    write!(f, "(")?;
                }
                for (i, k) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    k.fmt_in(a, f, true)?;
                }
                if nested {
                    write!(f, ")")?;
                }
                Ok(())
            }
            (Shape::Quot(e), k) => k.fmt_in(&e.ambient(), f, nested),
            _ => write!(f, "?"),
        }
    }
}

/// Sorts into canonical order. `None` for a repeated exterior factor;
/// otherwise the sign of the permutation (always `+1` for symmetric).
fn normalize_seq(mut v: Vec<Key>, exterior: bool) -> Option<(bool, Vec<Key>)> {
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if exterior {
        if v.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some((negative, v))
    } else {
        Some((false, v))
    }
}

/// Expands `f_1 * ... * f_k` for the exterior/symmetric product.
fn multilinear(parts: &[SparseVec<Key>], exterior: bool) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    fn rec(parts: &[SparseVec<Key>], cur: &mut Vec<Key>, c: Q, exterior: bool, out: &mut SparseVec<Key>) {
        if cur.len() == parts.len() {
            if let Some((neg, v)) = normalize_seq(cur.clone(), exterior) {
                add_entry(out, Key::Seq(v), if neg { -c } else { c });
            }
            return;
        }
        for (k, x) in &parts[cur.len()] {
            if exterior && cur.contains(k) {
                continue;
            }
            cur.push(k.clone());
            rec(parts, cur, &c * x, exterior, out);
            cur.pop();
        }
    }
    rec(parts, &mut Vec::new(), Q::one(), exterior, &mut out);
    out
}

fn tensor_product(a: &SparseVec<Key>, b: &SparseVec<Key>) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for (x, c) in a {
        for (y, d) in b {
            add_entry(&mut out, Key::pair(x.clone(), y.clone()), c * d);
        }
    }
    out
}

fn single(k: Key) -> SparseVec<Key> {
    let mut v = SparseVec::new();
    v.insert(k, Q::one());
    v
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Group,
    Derivation,
}

/// Action of an endomorphism of `H` on one basis key, either functorially
/// (group elements) or as a derivation (Lie algebra elements).
pub(crate) fn act_key(shape: &Shape, key: &Key, m: &HMap, mode: Mode) -> SparseVec<Key> {
    match (shape, key) {
        (Shape::H, Key::B(i)) => m.image(*i).iter().map(|(j, x)| (Key::B(*j), x.clone())).collect(),
        (Shape::Tensor(a, b), Key::Pair(x, y)) => {
            let ax = act_key(a, x, m, mode);
            let by = act_key(b, y, m, mode);
            match mode {
                Mode::Group => tensor_product(&ax, &by),
                Mode::Derivation => {
                    let mut out = tensor_product(&ax, &single((**y).clone()));
                    let rhs = tensor_product(&single((**x).clone()), &by);
                    axpy(&mut out, &Q::one(), &rhs);
                    out
                }
            }
        }
        (Shape::Wedge(_, a), Key::Seq(v)) | (Shape::Sym(_, a), Key::Seq(v)) => {
            let exterior = matches!(shape, Shape::Wedge(..));
            let images: Vec<SparseVec<Key>> = v.iter().map(|k| act_key(a, k, m, mode)).collect();
            match mode {
                Mode::Group => multilinear(&images, exterior),
                Mode::Derivation => {
                    let mut out = SparseVec::new();
                    for j in 0..v.len() {
                        let parts: Vec<SparseVec<Key>> = (0..v.len())
                            .map(|i| if i == j { images[i].clone() } else { single(v[i].clone()) })
                            .collect();
                        axpy(&mut out, &Q::one(), &multilinear(&parts, exterior));
                    }
                    out
                }
            }
        }
        // The projections are equivariant, so canonical representatives
        // stay canonical.
        (Shape::Quot(e), k) => act_key(&e.ambient(), k, m, mode),
        _ => panic!("key {key:?} does not match shape {shape}"),
    }
}

pub(crate) fn act_vec(shape: &Shape, v: &SparseVec<Key>, m: &HMap, mode: Mode) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for (k, x) in v {
        axpy(&mut out, x, &act_key(shape, k, m, mode));
    }
    out
}

/// Representative of a key's class, taken in the equivariant complement of
/// each quotiented subspace.
fn canonical_key(shape: &Shape, key: &Key, g: usize) -> SparseVec<Key> {
    if !shape.has_quot() {
        return single(key.clone());
    }
    match (shape, key) {
        (Shape::Tensor(a, b), Key::Pair(x, y)) => {
            tensor_product(&canonical_key(a, x, g), &canonical_key(b, y, g))
        }
        (Shape::Wedge(_, a), Key::Seq(v)) | (Shape::Sym(_, a), Key::Seq(v)) => {
            let parts: Vec<_> = v.iter().map(|k| canonical_key(a, k, g)).collect();
            multilinear(&parts, matches!(shape, Shape::Wedge(..)))
        }
        (Shape::Quot(e), k) => {
            let mut out = single(k.clone());
            axpy(&mut out, &q(-1), &maps::sub_projection(*e, k, g));
            out
        }
        _ => panic!("key {key:?} does not match shape {shape}"),
    }
}

pub(crate) fn canonical_vec(shape: &Shape, v: &SparseVec<Key>, g: usize) -> SparseVec<Key> {
    if !shape.has_quot() {
        return v.clone();
    }
    let mut out = SparseVec::new();
    for (k, x) in v {
        axpy(&mut out, x, &canonical_key(shape, k, g));
    }
    out
}

/// All basis keys of the stored representative space.
pub fn basis_keys(shape: &Shape, g: usize) -> Vec<Key> {
    match shape {
        Shape::H => (0..2 * g as u16).map(Key::B).collect(),
        Shape::Tensor(a, b) => {
            let ka = basis_keys(a, g);
            let kb = basis_keys(b, g);
            ka.iter()
                .flat_map(|x| kb.iter().map(move |y| Key::pair(x.clone(), y.clone())))
                .collect()
        }
        Shape::Wedge(k, a) | Shape::Sym(k, a) => {
            let inner = basis_keys(a, g);
            let exterior = matches!(shape, Shape::Wedge(..));
            let mut out = Vec::new();
            fn rec(inner: &[Key], start: usize, k: usize, exterior: bool, cur: &mut Vec<Key>, out: &mut Vec<Key>) {
                if cur.len() == k {
                    out.push(Key::Seq(cur.clone()));
                    return;
                }
                for i in start..inner.len() {
                    cur.push(inner[i].clone());
                    rec(inner, if exterior { i + 1 } else { i }, k, exterior, cur, out);
                    cur.pop();
                }
            }
            rec(&inner, 0, *k, exterior, &mut Vec::new(), &mut out);
            out
        }
        Shape::Quot(e) => basis_keys(&e.ambient(), g),
    }
}

/// Exact vector in a space built from `H`. Quotient components always hold
/// their canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    shape: Shape,
    g: usize,
    coeffs: SparseVec<Key>,
}

impl MultiVector {
    pub fn zero(shape: Shape, g: usize) -> Self {
        Self {
            shape,
            g,
            coeffs: SparseVec::new(),
        }
    }

    /// Builds a vector from coefficients on representative keys, reducing
    /// every quotient component.
    pub fn from_coeffs(shape: Shape, g: usize, coeffs: SparseVec<Key>) -> Self {
        let coeffs = canonical_vec(&shape, &coeffs, g);
        Self { shape, g, coeffs }
    }

    /// Trusted constructor for coefficients already in canonical form.
    pub(crate) fn raw(shape: Shape, g: usize, coeffs: SparseVec<Key>) -> Self {
        Self { shape, g, coeffs }
    }

    pub fn basis(shape: Shape, g: usize, key: Key) -> Self {
        Self::from_coeffs(shape, g, single(key))
    }

    pub fn a(g: usize, i: usize) -> Self {
        Self::raw(Shape::H, g, single(Key::B(a_idx(i))))
    }

    pub fn b(g: usize, i: usize) -> Self {
        Self::raw(Shape::H, g, single(Key::B(b_idx(i))))
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &SparseVec<Key> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: &Key) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        self.shape.expect(&o.shape)?;
        if self.g != o.g {
            return Err(Error::ShapeMismatch {
                expected: format!("g={}", self.g),
                found: format!("g={}", o.g),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut c = self.coeffs.clone();
        axpy(&mut c, &Q::one(), &o.coeffs);
        Ok(Self::raw(self.shape.clone(), self.g, c))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scaled(&q(-1)))
    }

    pub fn scaled(&self, k: &Q) -> Self {
        let mut c = SparseVec::new();
        axpy(&mut c, k, &self.coeffs);
        Self::raw(self.shape.clone(), self.g, c)
    }

    pub fn scaled_int(&self, k: i64) -> Self {
        self.scaled(&q(k))
    }

    /// Sum of vectors of one shape; `None` for an empty slice.
    pub fn sum(vs: &[MultiVector]) -> Option<Result<MultiVector>> {
        let (first, rest) = vs.split_first()?;
        Some(rest.iter().try_fold(first.clone(), |acc, v| acc.add(v)))
    }

    /// `v_1 ∧ ... ∧ v_k` as an element of `∧^k S`.
    pub fn wedge(vs: &[&MultiVector]) -> Result<Self> {
        Self::product(vs, true)
    }

    /// `v_1 · ... · v_k` as an element of `Sym^k S`.
    pub fn sym_product(vs: &[&MultiVector]) -> Result<Self> {
        Self::product(vs, false)
    }

    fn product(vs: &[&MultiVector], exterior: bool) -> Result<Self> {
        let first = vs.first().ok_or_else(|| Error::Malformed("empty product".into()))?;
        for v in vs {
            first.check_same(v)?;
        }
        let parts: Vec<SparseVec<Key>> = vs.iter().map(|v| v.coeffs.clone()).collect();
        let shape = if exterior {
            Shape::wedge(vs.len(), first.shape.clone())
        } else {
            Shape::sym(vs.len(), first.shape.clone())
        };
        Ok(Self::raw(shape, first.g, multilinear(&parts, exterior)))
    }

    pub fn tensor(&self, o: &Self) -> Result<Self> {
        if self.g != o.g {
            return Err(Error::ShapeMismatch {
                expected: format!("g={}", self.g),
                found: format!("g={}", o.g),
            });
        }
        Ok(Self::raw(
            Shape::tensor(self.shape.clone(), o.shape.clone()),
            self.g,
            tensor_product(&self.coeffs, &o.coeffs),
        ))
    }

    /// Class in the quotient by `e`; `self` must live in its ambient.
    pub fn project(&self, e: Embedding) -> Result<Self> {
        self.shape.expect(&e.ambient())?;
        Ok(Self::from_coeffs(Shape::Quot(e), self.g, self.coeffs.clone()))
    }

    /// Canonical representative of every quotient component, as a vector of
    /// the storage shape.
    pub fn representative(&self) -> Self {
        Self::raw(self.shape.storage(), self.g, self.coeffs.clone())
    }

    /// Reinterprets the stored coefficients under another shape with the
    /// same storage (e.g. `∧²∧³H` vs `∧²((∧³H)/H)`), reducing as needed.
    pub fn reshaped(&self, shape: Shape) -> Result<Self> {
        self.shape.storage().expect(&shape.storage())?;
        Ok(Self::from_coeffs(shape, self.g, self.coeffs.clone()))
    }

    pub fn weight_components(&self) -> BTreeMap<Weight, SparseVec<Key>> {
        let mut out: BTreeMap<Weight, SparseVec<Key>> = BTreeMap::new();
        for (k, x) in &self.coeffs {
            out.entry(k.weight(self.g)).or_default().insert(k.clone(), x.clone());
        }
        out
    }

    /// The weight, if this is a nonzero torus weight vector.
    pub fn weight(&self) -> Option<Weight> {
        let comps = self.weight_components();
        if comps.len() == 1 {
            comps.into_keys().next()
        } else {
            None
        }
    }

    /// Functorial action of an endomorphism of `H`. Quotient components are
    /// reduced again, since only symplectic maps preserve the complements.
    pub fn act(&self, m: &HMap) -> Self {
        Self::from_coeffs(self.shape.clone(), self.g, act_vec(&self.shape, &self.coeffs, m, Mode::Group))
    }

    /// Action of an endomorphism of `H` extended as a derivation.
    pub fn derive(&self, m: &HMap) -> Self {
        Self::from_coeffs(
            self.shape.clone(),
            self.g,
            act_vec(&self.shape, &self.coeffs, m, Mode::Derivation),
        )
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, x)| {
                let idx: Vec<String> = k.leaves().into_iter().map(label).collect();
                json!({"index": idx, "coeff": x.to_string()})
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "shape": self.shape.to_string(),
            "g": self.g,
            "entries": entries,
        })
    }

    /// Inverse of [`MultiVector::to_json`]; the shape string is resolved by
    /// `parse_shape`.
    pub fn from_json(v: &Value, parse_shape: impl Fn(&str) -> Result<Shape>) -> Result<Self> {
        let bad = |s: &str| Error::Malformed(format!("multivector JSON: {s}"));
        let shape = parse_shape(v["shape"].as_str().ok_or_else(|| bad("shape"))?)?;
        let g = v["g"].as_u64().ok_or_else(|| bad("g"))? as usize;
        let storage = shape.storage();
        let mut coeffs = SparseVec::new();
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            let idx = e["index"].as_array().ok_or_else(|| bad("index"))?;
            let leaves: Vec<u16> = idx
                .iter()
                .map(|l| parse_label(l.as_str().unwrap_or(""), g))
                .collect::<Result<_>>()?;
            if leaves.len() != storage.leaves() {
                return Err(bad("index length"));
            }
            let x: Q = e["coeff"].as_str().ok_or_else(|| bad("coeff"))?.parse().map_err(|_| bad("coeff"))?;
            let key = Key::from_leaves(&storage, &leaves);
            // re-sort sequences; the stored order is canonical anyway
            let mut one = SparseVec::new();
            one.insert(key, x);
            let normalized = renormalize(&storage, &one);
            axpy(&mut coeffs, &Q::one(), &normalized);
        }
        Ok(Self::from_coeffs(shape, g, coeffs))
    }
}

/// Re-sorts sequence keys into canonical order (with signs).
fn renormalize(shape: &Shape, v: &SparseVec<Key>) -> SparseVec<Key> {
    let id = HMap::identity(0);
    let mut out = SparseVec::new();
    for (k, x) in v {
        axpy(&mut out, x, &act_key(shape, k, &id, Mode::Group));
    }
    out
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        struct K<'a>(&'a Key, &'a Shape);
        impl fmt::Display for K<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(self.1, f, false)
            }
        }
        for (i, (k, x)) in self.coeffs.iter().enumerate() {
            let neg = x < &Q::zero();
            let mag = if neg { -x.clone() } else { x.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", K(k, &self.shape))?;
        }
        Ok(())
    }
}

/// Action of a group generator on any shape.
pub fn apply_generator(gen: &GroupGenerator, v: &MultiVector) -> Result<MultiVector> {
    if gen.g != v.g() {
        return Err(Error::ShapeMismatch {
            expected: format!("g={}", gen.g),
            found: format!("g={}", v.g()),
        });
    }
    Ok(v.act(&gen.matrix()))
}

/// `1/(g-1)` as a rational.
pub(crate) fn inv_g_minus_1(g: usize) -> Q {
    q_frac(1, g as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(g: usize) -> (impl Fn(usize) -> MultiVector, impl Fn(usize) -> MultiVector) {
        (move |i| MultiVector::a(g, i), move |i| MultiVector::b(g, i))
    }

    #[test]
    fn labels_round_trip() {
        for i in 0..12u16 {
            assert_eq!(parse_label(&label(i), 6).unwrap(), i);
        }
        assert_eq!(label(a_idx(3)), "a3");
        assert_eq!(label(b_idx(2)), "b2");
        assert!(parse_label("c1", 3).is_err());
        assert!(parse_label("a4", 3).is_err());
    }

    #[test]
    fn form_is_standard() {
        let g = 3;
        for i in 1..=g {
            for j in 1..=g {
                assert_eq!(omega_basis(a_idx(i), b_idx(j)), (i == j) as i64);
                assert_eq!(omega_basis(b_idx(j), a_idx(i)), -((i == j) as i64));
                assert_eq!(omega_basis(a_idx(i), a_idx(j)), 0);
                assert_eq!(omega_basis(b_idx(i), b_idx(j)), 0);
            }
        }
    }

    #[test]
    fn wedge_signs_and_vanishing() {
        let (a, b) = h(3);
        let x = MultiVector::wedge(&[&a(2), &a(1)]).unwrap();
        let y = MultiVector::wedge(&[&a(1), &a(2)]).unwrap();
        assert_eq!(x, y.scaled_int(-1));
        assert!(MultiVector::wedge(&[&a(1), &a(1)]).unwrap().is_zero());
        let s = MultiVector::sym_product(&[&b(1), &a(1)]).unwrap();
        assert_eq!(s, MultiVector::sym_product(&[&a(1), &b(1)]).unwrap());
        // nested exterior powers
        let t1 = MultiVector::wedge(&[&a(1), &a(2), &a(3)]).unwrap();
        let t2 = MultiVector::wedge(&[&a(1), &b(1), &a(2)]).unwrap();
        let w = MultiVector::wedge(&[&t1, &t2]).unwrap();
        let w2 = MultiVector::wedge(&[&t2, &t1]).unwrap();
        assert_eq!(w, w2.scaled_int(-1));
        assert_eq!(w.shape().to_string(), "wedge(2, wedge(3, H))");
    }

    #[test]
    fn basis_key_counts() {
        let g = 3;
        assert_eq!(basis_keys(&Shape::wedge(3, Shape::H), g).len(), 20);
        assert_eq!(basis_keys(&Shape::sym(2, Shape::wedge(2, Shape::H)), g).len(), 120);
        assert_eq!(basis_keys(&Shape::wedge(2, Shape::wedge(3, Shape::H)), g).len(), 190);
        assert_eq!(basis_keys(&Embedding::HxWedge3InHHxWedge2.ambient(), g).len(), 6 * 6 * 15);
    }

    #[test]
    fn json_round_trip() {
        let (a, b) = h(4);
        let t1 = MultiVector::wedge(&[&a(1), &a(2), &a(3)]).unwrap();
        let t2 = MultiVector::wedge(&[&a(4), &a(2), &b(2)]).unwrap();
        let v = MultiVector::wedge(&[&t1, &t2]).unwrap().scaled(&q_frac(-3, 2));
        let j = v.to_json();
        assert_eq!(j["schema"], SCHEMA);
        let parse = |s: &str| {
            assert_eq!(s, "wedge(2, wedge(3, H))");
            Ok(Shape::wedge(2, Shape::wedge(3, Shape::H)))
        };
        assert_eq!(MultiVector::from_json(&j, parse).unwrap(), v);
    }

    #[test]
    fn generator_examples() {
        let g = 3;
        let y1 = GroupGenerator::new(GenKind::Y(1), g).unwrap();
        let img = apply_generator(&y1, &MultiVector::b(g, 1)).unwrap();
        assert_eq!(img, MultiVector::b(g, 1).add(&MultiVector::a(g, 1)).unwrap());
        let x12 = GroupGenerator::new(GenKind::X(1, 2), g).unwrap();
        assert_eq!(apply_generator(&x12, &MultiVector::a(g, 1)).unwrap(), MultiVector::a(g, 1));
        assert_eq!(
            apply_generator(&x12, &MultiVector::a(g, 2)).unwrap(),
            MultiVector::a(g, 2).add(&MultiVector::a(g, 1)).unwrap()
        );
        let w = maps::omega(g);
        for k in GenKind::all(g) {
            let gen = GroupGenerator::new(k, g).unwrap();
            assert_eq!(apply_generator(&gen, &w).unwrap(), w, "{k}");
            assert!(w.derive(&gen.derivation()).is_zero());
        }
        assert!(apply_generator(&y1, &MultiVector::a(4, 1)).is_err());
    }

    #[test]
    fn display_is_readable() {
        let (a, b) = h(2);
        let w = MultiVector::wedge(&[&a(1), &b(1)]).unwrap().add(&MultiVector::wedge(&[&a(2), &b(2)]).unwrap()).unwrap();
        assert_eq!(w.to_string(), "a1∧b1 + a2∧b2");
        assert_eq!(w.scaled_int(-3).to_string(), "-3 a1∧b1 - 3 a2∧b2");
    }
}
