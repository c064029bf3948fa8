//! Subrepresentations generated by vectors, tracked weight space by weight
//! space under the root vectors of `sp_{2g}`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;

use super::{act_key, act_vec, basis_keys, canonical_vec, GenKind, GroupGenerator, HMap, Key, Mode, MultiVector, Shape};
use crate::char_ring::{decompose, Decomposition, FormalCharacter};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rep_core::{root_datum, GroupFamily, Partition, Weight};

/// Subspace of a shape, stored as one reduced echelon basis per weight.
#[derive(Clone, Debug)]
pub struct Subspace {
    shape: Shape,
    g: usize,
    spaces: BTreeMap<Weight, Echelon<Key>>,
}

impl Subspace {
    pub fn new(shape: Shape, g: usize) -> Self {
        Self { shape, g, spaces: BTreeMap::new() }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(|e| e.rank()).sum()
    }

    pub fn weight_dim(&self, w: &Weight) -> usize {
        self.spaces.get(w).map_or(0, |e| e.rank())
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, usize)> {
        self.spaces.iter().map(|(w, e)| (w, e.rank()))
    }

    fn insert_component(&mut self, w: Weight, c: &SparseVec<Key>) -> Option<SparseVec<Key>> {
        self.spaces.entry(w).or_default().insert(c)
    }

    /// Adds the weight components of `v`; returns those that enlarged the span.
    pub fn insert(&mut self, v: &MultiVector) -> Result<Vec<(Weight, SparseVec<Key>)>> {
        self.check(v)?;
        let mut new = Vec::new();
        for (w, c) in v.weight_components() {
            if self.insert_component(w.clone(), &c).is_some() {
                new.push((w, c));
            }
        }
        Ok(new)
    }

    fn check(&self, v: &MultiVector) -> Result<()> {
        if v.shape() != &self.shape || v.g() != self.g {
            return Err(Error::ShapeMismatch {
                expected: format!("{} at g={}", self.shape, self.g),
                found: format!("{} at g={}", v.shape(), v.g()),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &MultiVector) -> bool {
        v.weight_components()
            .iter()
            .all(|(w, c)| self.spaces.get(w).is_some_and(|e| e.contains(c)))
    }

    pub fn basis(&self) -> Vec<MultiVector> {
        self.spaces
            .values()
            .flat_map(|e| e.rows().map(|r| MultiVector::raw(self.shape.clone(), self.g, r.clone())))
            .collect()
    }

    pub fn character(&self) -> Result<FormalCharacter> {
        let group = GroupFamily::sp(self.g)?;
        let table = self.spaces.iter().map(|(w, e)| (w.clone(), e.rank() as i128)).collect();
        Ok(FormalCharacter::from_table(group, table))
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        decompose(&self.character()?)
    }

    /// Whether every root vector maps the subspace into itself.
    pub fn is_invariant(&self) -> bool {
        let ops = derivations(&GenKind::all(self.g), self.g);
        self.basis().iter().all(|v| ops.iter().all(|m| self.contains(&v.derive(m))))
    }
}

fn derivations(kinds: &[GenKind], g: usize) -> Vec<HMap> {
    kinds
        .iter()
        .map(|k| GroupGenerator::new(*k, g).expect("generator in range").derivation())
        .collect()
}

fn seeds_shape(seeds: &[MultiVector]) -> Result<(Shape, usize)> {
    let first = seeds.first().ok_or_else(|| Error::Malformed("no seed vectors".into()))?;
    Ok((first.shape().clone(), first.g()))
}

/// Closure of the seeds under the given root vectors. Each derivation maps a
/// weight vector to a weight vector, so the search runs per weight space.
fn closure_under(seeds: &[MultiVector], kinds: &[GenKind]) -> Result<Subspace> {
    let (shape, g) = seeds_shape(seeds)?;
    let ops = derivations(kinds, g);
    let mut space = Subspace::new(shape.clone(), g);
    let mut queue = VecDeque::new();
    for s in seeds {
        queue.extend(space.insert(s)?);
    }
    while let Some((_, v)) = queue.pop_front() {
        for m in &ops {
            let img = act_vec(&shape, &v, m, Mode::Derivation);
            let Some(k) = img.keys().next() else { continue };
            let w = k.weight(g);
            if space.insert_component(w.clone(), &img).is_some() {
                queue.push_back((w, img));
            }
        }
    }
    Ok(space)
}

/// The `Sp_{2g}` subrepresentation generated by the seeds. The Lie algebra
/// spanned by the logarithms of the elementary generators is all of
/// `sp_{2g}`, so this equals the span of the group orbit.
pub fn sp_span_closure(seeds: &[MultiVector]) -> Result<Subspace> {
    let g = seeds_shape(seeds)?.1;
    closure_under(seeds, &GenKind::all(g))
}

/// The `U(n⁺)`-module generated by the seeds.
pub fn raising_closure(seeds: &[MultiVector]) -> Result<Subspace> {
    let g = seeds_shape(seeds)?.1;
    closure_under(seeds, &GenKind::upper(g))
}

/// Decomposition of the subrepresentation `M` generated by the seeds,
/// without building `M`. With `N = U(n⁺)·seeds` and `A` the ambient space,
/// `M_λ = N_λ + (n⁻M)_λ` and `M ∩ n⁻A = n⁻M`, so the multiplicity of
/// `V_λ` in `M` is `rank(N_λ + (n⁻A)_λ) - rank((n⁻A)_λ)`.
pub fn highest_weight_profile(seeds: &[MultiVector]) -> Result<Decomposition> {
    let (shape, g) = seeds_shape(seeds)?;
    let group = GroupFamily::sp(g)?;
    let rd = root_datum(group);
    let n = raising_closure(seeds)?;
    let lowering = derivations(&GenKind::simple_lowering(g), g);
    let roots: Vec<Weight> = GenKind::simple_raising(g).iter().map(|k| k.root(g)).collect();

    let targets: Vec<(Weight, Vec<SparseVec<Key>>)> = n
        .spaces
        .iter()
        .filter(|(w, e)| e.rank() > 0 && rd.is_dominant(w))
        .map(|(w, e)| (w.clone(), e.rows().cloned().collect()))
        .collect();
    if targets.is_empty() {
        return Ok(Decomposition::from_terms(group, []));
    }

    let mut buckets: HashMap<Weight, Vec<Key>> = HashMap::new();
    let wanted: std::collections::HashSet<Weight> =
        targets.iter().flat_map(|(w, _)| roots.iter().map(move |r| w.add(r))).collect();
    for k in basis_keys(&shape.storage(), g) {
        let w = k.weight(g);
        if wanted.contains(&w) {
            buckets.entry(w).or_default().push(k);
        }
    }

    let terms: Vec<(Partition, i128)> = targets
        .par_iter()
        .map(|(w, rows)| {
            let mut low = Echelon::new();
            for (r, m) in roots.iter().zip(&lowering) {
                for k in buckets.get(&w.add(r)).map(|v| v.as_slice()).unwrap_or(&[]) {
                    let img = canonical_vec(&shape, &act_key(&shape, k, m, Mode::Derivation), g);
                    if !img.is_empty() {
                        low.insert(&img);
                    }
                }
            }
            let base = low.rank();
            for row in rows {
                low.insert(row);
            }
            (Partition::from_dominant(w), (low.rank() - base) as i128)
        })
        .filter(|(_, m)| *m > 0)
        .collect();
    Ok(Decomposition::from_terms(group, terms))
}

/// `Some(weight)` when `v` is a weight vector killed by every raising
/// operator (equivalently, fixed by every upper generator).
pub fn is_highest_weight_vector(v: &MultiVector) -> Result<Option<Weight>> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let Some(w) = v.weight() else { return Ok(None) };
    let ok = GenKind::upper(v.g()).into_iter().all(|k| {
        let gen = GroupGenerator::new(k, v.g()).expect("in range");
        v.derive(&gen.derivation()).is_zero()
    });
    Ok(ok.then_some(w))
}

/// Fixed by all upper generators acting as group elements.
pub fn fixed_by_upper_generators(v: &MultiVector) -> bool {
    GenKind::upper(v.g()).into_iter().all(|k| {
        let gen = GroupGenerator::new(k, v.g()).expect("in range");
        v.act(&gen.matrix()) == *v
    })
}
