//! Johnson homomorphism values of standard Torelli elements, the bracket
//! vanishing check, image spans and the cup-product image in `∧²∧³H`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::char_ring::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::free_lie::TensorVector;
use crate::linalg::{add_entry, q, SparseVec};
use crate::rep_core::GroupFamily;
use crate::std_char;
use crate::symp_linalg::{
    highest_weight_profile, omega_form, omega_of, sp_span_closure, Embedding, GenKind,
    GroupGenerator, HMap, Key, MultiVector, Shape,
};

fn h3() -> Shape {
    Shape::wedge(3, Shape::H)
}

fn tau2_shape() -> Shape {
    Shape::Quot(Embedding::HxWedge3InHHxWedge2)
}

/// Torelli elements whose Johnson images have closed forms. Classes are
/// vectors of `H` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Bounding pair map with class `x` and symplectic basis `{u_i, v_i}` of
    /// the homology of the side away from the boundary.
    BoundingPair { x: MultiVector, pairs: Vec<(MultiVector, MultiVector)> },
    /// Simply intersecting pair map with boundary classes `∂1, ∂2, ∂3`.
    Sip(MultiVector, MultiVector, MultiVector),
    /// Twist about a separating curve cutting off a subsurface with the
    /// given symplectic basis.
    SepTwist { g: usize, pairs: Vec<(MultiVector, MultiVector)> },
    /// Separating twist cutting off the standard genus `h` subsurface.
    SepTwistGenus { g: usize, h: usize },
}

fn is_h(v: &MultiVector) -> bool {
    v.shape() == &Shape::H
}

impl GeneratorSpec {
    /// Bounding pair with `[x] = a_k` and the standard pairs `(a_i, b_i)`.
    pub fn standard_bp(g: usize, k: usize, others: impl IntoIterator<Item = usize>) -> Self {
        GeneratorSpec::BoundingPair {
            x: MultiVector::a(g, k),
            pairs: others.into_iter().map(|i| (MultiVector::a(g, i), MultiVector::b(g, i))).collect(),
        }
    }

    pub fn g(&self) -> usize {
        match self {
            GeneratorSpec::BoundingPair { x, .. } => x.g(),
            GeneratorSpec::Sip(d, _, _) => d.g(),
            GeneratorSpec::SepTwist { g, .. } | GeneratorSpec::SepTwistGenus { g, .. } => *g,
        }
    }

    /// The symplectic set of a separating twist.
    pub fn twist_pairs(&self) -> Option<Vec<(MultiVector, MultiVector)>> {
        match self {
            GeneratorSpec::SepTwist { pairs, .. } => Some(pairs.clone()),
            GeneratorSpec::SepTwistGenus { g, h } => {
                Some((1..=*h).map(|i| (MultiVector::a(*g, i), MultiVector::b(*g, i))).collect())
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidSpec(s.into()));
        match self {
            GeneratorSpec::BoundingPair { x, pairs } => {
                if !is_h(x) || x.is_zero() {
                    return bad("bounding pair class must be a nonzero vector of H");
                }
                if pairs.iter().any(|(u, v)| !is_h(u) || !is_h(v) || u.g() != x.g() || v.g() != x.g()) {
                    return bad("bounding pair basis must lie in H");
                }
                if !pairs.is_empty() {
                    omega_of(pairs)?;
                }
                for (u, v) in pairs {
                    if !omega_form(x, u)?.is_zero() || !omega_form(x, v)?.is_zero() {
                        return bad("bounding pair class is not orthogonal to its subsurface");
                    }
                }
                Ok(())
            }
            GeneratorSpec::Sip(a, b, c) => {
                let ds = [a, b, c];
                if ds.iter().any(|d| !is_h(d) || d.is_zero() || d.g() != a.g()) {
                    return bad("boundary classes must be nonzero vectors of H");
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        if !omega_form(ds[i], ds[j])?.is_zero() {
                            return bad("classes of disjoint curves must be ω-orthogonal");
                        }
                    }
                }
                Ok(())
            }
            GeneratorSpec::SepTwist { g, pairs } => {
                if pairs.iter().any(|(u, v)| !is_h(u) || !is_h(v) || u.g() != *g || v.g() != *g) {
                    return bad("twist basis must lie in H");
                }
                if !pairs.is_empty() {
                    omega_of(pairs)?;
                }
                Ok(())
            }
            GeneratorSpec::SepTwistGenus { g, h } => {
                if h > g {
                    return bad("subsurface genus exceeds g");
                }
                Ok(())
            }
        }
    }

    /// Image of the homology data under a linear map of `H`.
    pub fn transformed(&self, m: &HMap) -> GeneratorSpec {
        let t = |v: &MultiVector| v.act(m);
        let tp = |ps: &[(MultiVector, MultiVector)]| ps.iter().map(|(u, v)| (t(u), t(v))).collect();
        match self {
            GeneratorSpec::BoundingPair { x, pairs } => GeneratorSpec::BoundingPair { x: t(x), pairs: tp(pairs) },
            GeneratorSpec::Sip(a, b, c) => GeneratorSpec::Sip(t(a), t(b), t(c)),
            GeneratorSpec::SepTwist { g, pairs } => GeneratorSpec::SepTwist { g: *g, pairs: tp(pairs) },
            s @ GeneratorSpec::SepTwistGenus { .. } => GeneratorSpec::SepTwist {
                g: s.g(),
                pairs: tp(&s.twist_pairs().expect("twist")),
            },
        }
    }
}

/// A value of `τ_1` (in `∧³H`) or `τ_2` (in `(H⊗H⊗∧²H)/(H⊗∧³H)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonValue {
    pub level: u8,
    pub value: MultiVector,
}

/// `τ_1` of a generator: `[x]∧ω_U` for a bounding pair, `∂1∧∂2∧∂3` for a
/// simply intersecting pair (sign fixed to plus), zero for separating twists.
pub fn tau1(spec: &GeneratorSpec) -> Result<JohnsonValue> {
    spec.validate()?;
    let g = spec.g();
    let value = match spec {
        GeneratorSpec::BoundingPair { x, pairs } => {
            if pairs.is_empty() {
                MultiVector::zero(h3(), g)
            } else {
                let w = omega_of(pairs)?;
                wedge_h_w2(x, &w)?
            }
        }
        GeneratorSpec::Sip(a, b, c) => MultiVector::wedge(&[a, b, c])?,
        _ => MultiVector::zero(h3(), g),
    };
    Ok(JohnsonValue { level: 1, value })
}

/// `h ∧ w` for `h ∈ H`, `w ∈ ∧²H`.
fn wedge_h_w2(h: &MultiVector, w: &MultiVector) -> Result<MultiVector> {
    let mut acc = MultiVector::zero(h3(), h.g());
    for (k, c) in w.coeffs() {
        let Key::Seq(s) = k else { unreachable!() };
        let (Key::B(i), Key::B(j)) = (&s[0], &s[1]) else { unreachable!() };
        let hi = basis_h(h.g(), *i);
        let hj = basis_h(h.g(), *j);
        acc = acc.add(&MultiVector::wedge(&[h, &hi, &hj])?.scaled(c))?;
    }
    Ok(acc)
}

fn basis_h(g: usize, i: u16) -> MultiVector {
    MultiVector::from_coeffs(Shape::H, g, [(Key::B(i), q(1))].into_iter().collect())
}

/// Regards `t ∈ H⊗∧²H` as the map `y -> Σ ω(h, y) w` over terms `h⊗w`.
pub fn contract_to_map(t: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    let want = Shape::tensor(Shape::H, Shape::wedge(2, Shape::H));
    if t.shape() != &want {
        return Err(Error::ShapeMismatch { expected: want.to_string(), found: t.shape().to_string() });
    }
    let mut out = SparseVec::new();
    for (k, c) in t.coeffs() {
        let Key::Pair(h, w) = k else { unreachable!() };
        let f = omega_form(&basis_h(t.g(), h.leaves()[0]), y)?;
        if !f.is_zero() {
            add_entry(&mut out, (**w).clone(), c * f);
        }
    }
    Ok(MultiVector::from_coeffs(Shape::wedge(2, Shape::H), t.g(), out))
}

/// `∧³H -> H⊗∧²H`, `h1∧h2∧h3 -> h1⊗(h2∧h3) - h2⊗(h1∧h3) + h3⊗(h1∧h2)`.
pub fn wedge3_in_tensor(v: &MultiVector) -> Result<MultiVector> {
    let want = h3();
    if v.shape() != &want {
        return Err(Error::ShapeMismatch { expected: want.to_string(), found: v.shape().to_string() });
    }
    let mut out = SparseVec::new();
    for (k, c) in v.coeffs() {
        let h = k.leaves();
        for (t, sign) in [([0, 1, 2], 1), ([1, 0, 2], -1), ([2, 0, 1], 1)] {
            let key = Key::pair(
                Key::B(h[t[0]]),
                Key::Seq(vec![Key::B(h[t[1]]), Key::B(h[t[2]])]),
            );
            add_entry(&mut out, key, c * q(sign));
        }
    }
    Ok(MultiVector::from_coeffs(Shape::tensor(Shape::H, Shape::wedge(2, Shape::H)), v.g(), out))
}

/// The map `H -> ∧²H` of a bounding pair built from three
/// rules: `u -> -[x]∧u` on the subsurface side, zero on the far side, and
/// `h -> -ω_V` for an integral dual `h` of `[x]` orthogonal to the pairs.
/// Returns the images of the standard basis vectors.
pub fn tau1_as_map(spec: &GeneratorSpec, dual: &MultiVector) -> Result<Vec<MultiVector>> {
    spec.validate()?;
    let GeneratorSpec::BoundingPair { x, pairs } = spec else {
        return Err(Error::InvalidSpec("tau1_as_map needs a bounding pair".into()));
    };
    let g = x.g();
    if !is_h(dual) || omega_form(dual, x)? != q(1) {
        return Err(Error::InvalidSpec("dual must satisfy ω(h, [x]) = 1".into()));
    }
    if dual.coeffs().values().any(|c| !c.is_integer()) {
        return Err(Error::InvalidSpec("dual must be integral".into()));
    }
    for (u, v) in pairs {
        if !omega_form(dual, u)?.is_zero() || !omega_form(dual, v)?.is_zero() {
            return Err(Error::InvalidSpec("dual must be orthogonal to the pairs".into()));
        }
    }
    let omega_v = if pairs.is_empty() { MultiVector::zero(Shape::wedge(2, Shape::H), g) } else { omega_of(pairs)? };
    let mut out = Vec::new();
    for i in 0..2 * g as u16 {
        let e = basis_h(g, i);
        // component in V
        let mut ev = MultiVector::zero(Shape::H, g);
        for (u, v) in pairs {
            ev = ev.add(&u.scaled(&omega_form(&e, v)?))?.sub(&v.scaled(&omega_form(&e, u)?))?;
        }
        let mut img = MultiVector::wedge(&[x, &ev])?.scaled_int(-1);
        // the dual direction has coefficient ω(e, [x])
        img = img.sub(&omega_v.scaled(&omega_form(&e, x)?))?;
        out.push(img);
    }
    Ok(out)
}

/// `τ_2` of a separating twist: the class of `-ω_V⊗ω_V`, with the first
/// factor read in `H⊗H` as `Σ u_i⊗v_i - v_i⊗u_i`.
pub fn tau2_septwist(g: usize, pairs: &[(MultiVector, MultiVector)]) -> Result<JohnsonValue> {
    if pairs.is_empty() {
        return Ok(JohnsonValue { level: 2, value: MultiVector::zero(tau2_shape(), g) });
    }
    let w = omega_of(pairs)?;
    let mut hh = MultiVector::zero(Shape::tensor(Shape::H, Shape::H), g);
    for (u, v) in pairs {
        hh = hh.add(&u.tensor(v)?)?.sub(&v.tensor(u)?)?;
    }
    let t = hh.tensor(&w)?;
    let mut out = SparseVec::new();
    for (k, c) in t.coeffs() {
        let Key::Pair(xy, z) = k else { unreachable!() };
        let Key::Pair(x, y) = xy.as_ref() else { unreachable!() };
        add_entry(&mut out, Key::pair((**x).clone(), Key::pair((**y).clone(), (**z).clone())), -c.clone());
    }
    let value = MultiVector::from_coeffs(tau2_shape(), g, out);
    Ok(JohnsonValue { level: 2, value })
}

/// `τ_2` of a spec; only separating twists lie in the domain.
pub fn tau2(spec: &GeneratorSpec) -> Result<JohnsonValue> {
    spec.validate()?;
    let pairs = spec
        .twist_pairs()
        .ok_or_else(|| Error::InvalidSpec("τ_2 is defined here on separating twists only".into()))?;
    tau2_septwist(spec.g(), &pairs)
}

fn nested_bracket(letters: &[u16]) -> TensorVector {
    let (last, init) = letters.split_last().expect("nonempty");
    init.iter()
        .rev()
        .fold(TensorVector::letter(*last as usize), |acc, l| TensorVector::letter(*l as usize).bracket(&acc))
}

/// Image under the iterated bracket `H⊗FLie_{d+1}(H) -> FLie_{d+2}(H)`.
/// Accepts `∧³H`, `H⊗∧²H`, `H⊗H⊗∧²H` and its quotient by `H⊗∧³H`.
pub fn bracket_image(v: &MultiVector) -> Result<TensorVector> {
    let v = if v.shape() == &h3() { wedge3_in_tensor(v)? } else { v.clone() };
    let ok = [
        Shape::tensor(Shape::H, Shape::wedge(2, Shape::H)),
        Embedding::HxWedge3InHHxWedge2.ambient(),
        tau2_shape(),
    ];
    if !ok.contains(v.shape()) {
        return Err(Error::ShapeMismatch {
            expected: "H⊗∧²H or H⊗H⊗∧²H (or quotient)".into(),
            found: v.shape().to_string(),
        });
    }
    let mut out = TensorVector::zero();
    for (k, c) in v.coeffs() {
        out.add_scaled(c, &nested_bracket(&k.leaves()));
    }
    Ok(out)
}

/// Whether the value lies in the kernel of the bracket map.
pub fn check_bracket(v: &JohnsonValue) -> bool {
    bracket_image(&v.value).map(|t| t.is_zero()).unwrap_or(false)
}

/// `τ_1(f) ∧ τ_1(h) ∈ ∧²∧³H`.
pub fn abelian_cycle(f: &GeneratorSpec, h: &GeneratorSpec) -> Result<MultiVector> {
    let a = tau1(f)?.value;
    let b = tau1(h)?.value;
    MultiVector::wedge(&[&a, &b])
}

/// Span of the `τ_1` values of the bounding pair with image `a1∧ω` and the
/// simply intersecting pair with image `a1∧a2∧a3`.
pub fn tau1_image_span(g: usize) -> Result<usize> {
    if g < 3 {
        return Err(Error::GenusTooSmall { g, min: 3 });
    }
    let seeds = [
        tau1(&GeneratorSpec::standard_bp(g, 1, 2..=g))?.value,
        tau1(&GeneratorSpec::Sip(MultiVector::a(g, 1), MultiVector::a(g, 2), MultiVector::a(g, 3)))?.value,
    ];
    Ok(sp_span_closure(&seeds)?.dim())
}

/// Span of `τ_2` of the separating twists around the genus `h` prefix
/// subsurfaces, `1 ≤ h ≤ g`.
pub fn tau2_image_span(g: usize) -> Result<usize> {
    if g < 4 {
        return Err(Error::GenusTooSmall { g, min: 4 });
    }
    let seeds: Vec<MultiVector> = (1..=g)
        .map(|h| tau2(&GeneratorSpec::SepTwistGenus { g, h }).map(|v| v.value))
        .collect::<Result<_>>()?;
    Ok(sp_span_closure(&seeds)?.dim())
}

/// The seven abelian cycles exhibited for the cup-product image.
pub fn cup_seed_specs(g: usize) -> Vec<(GeneratorSpec, GeneratorSpec)> {
    let a = |i| MultiVector::a(g, i);
    let sip = |i, j, k| GeneratorSpec::Sip(a(i), a(j), a(k));
    let bp = |k: usize, others: Vec<usize>| GeneratorSpec::standard_bp(g, k, others);
    let all_but = |k: usize| (1..=g).filter(|&i| i != k).collect::<Vec<_>>();
    vec![
        (sip(1, 2, 3), sip(1, 2, 4)),
        (sip(1, 2, 3), bp(1, all_but(1))),
        (sip(1, 2, 3), sip(4, 5, 6)),
        (sip(1, 2, 3), bp(4, all_but(4))),
        (sip(1, 2, 3), bp(4, vec![5])),
        (bp(1, all_but(1)), bp(2, vec![3])),
        (bp(1, vec![4]), bp(2, vec![3])),
    ]
}

pub fn cup_seeds(g: usize) -> Result<Vec<MultiVector>> {
    cup_seed_specs(g).iter().map(|(f, h)| abelian_cycle(f, h)).collect()
}

fn check_cup_genus(g: usize) -> Result<()> {
    if g < 6 {
        return Err(Error::GenusTooSmall { g, min: 6 });
    }
    Ok(())
}

/// Decomposition of the subrepresentation of `∧²∧³H` generated by the
/// abelian cycles.
pub fn cup_image_boundary(g: usize) -> Result<Decomposition> {
    check_cup_genus(g)?;
    highest_weight_profile(&cup_seeds(g)?)
}

/// Its image in `∧²((∧³H)/H)`.
pub fn cup_image_closed(g: usize) -> Result<Decomposition> {
    check_cup_genus(g)?;
    let target = Shape::wedge(2, Shape::Quot(Embedding::HInWedge3));
    let seeds: Vec<MultiVector> =
        cup_seeds(g)?.iter().map(|s| s.reshaped(target.clone())).collect::<Result<_>>()?;
    highest_weight_profile(&seeds)
}

/// `∧²∧³H` minus the boundary cup image.
pub fn coinvariant_complement(g: usize) -> Result<Decomposition> {
    let group = GroupFamily::sp(g)?;
    let full = decompose(&std_char(group).wedge_power(3)?.wedge_power(2)?)?;
    full.minus(&cup_image_boundary(g)?)
}

/// Morita's core of the Casson invariant on a separating twist of genus `h`.
pub fn morita_core(h: i64) -> i64 {
    4 * h * (h - 1)
}

/// A random symplectic matrix: a product of elementary generators and
/// their inverses.
pub fn random_symplectic(rng: &mut impl Rng, g: usize, len: usize) -> HMap {
    let kinds = GenKind::all(g);
    let mut m = HMap::identity(g);
    for _ in 0..len {
        let gen = GroupGenerator::new(kinds[rng.gen_range(0..kinds.len())], g).expect("in range");
        let step = if rng.gen_bool(0.5) { gen.matrix() } else { gen.inverse_matrix() };
        m = step.compose(&m);
    }
    m
}

/// A random valid spec in the image of a random symplectic change of basis.
pub fn random_spec(rng: &mut impl Rng, g: usize) -> GeneratorSpec {
    let m = random_symplectic(rng, g, 6);
    let mut idx: Vec<usize> = (1..=g).collect();
    for i in (1..idx.len()).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    let spec = match rng.gen_range(0..3) {
        0 => GeneratorSpec::Sip(MultiVector::a(g, idx[0]), MultiVector::a(g, idx[1]), MultiVector::b(g, idx[2])),
        1 => {
            let n = rng.gen_range(1..g);
            GeneratorSpec::standard_bp(g, idx[0], idx[1..=n].to_vec())
        }
        _ => {
            let n = rng.gen_range(1..=g);
            GeneratorSpec::SepTwist {
                g,
                pairs: idx[..n].iter().map(|&i| (MultiVector::a(g, i), MultiVector::b(g, i))).collect(),
            }
        }
    };
    spec.transformed(&m)
}

/// Johnson value of a spec: `τ_2` for separating twists, `τ_1` otherwise.
pub fn johnson_value(spec: &GeneratorSpec) -> Result<JohnsonValue> {
    match spec {
        GeneratorSpec::SepTwist { .. } | GeneratorSpec::SepTwistGenus { .. } => tau2(spec),
        _ => tau1(spec),
    }
}

/// Outcome of the randomized bracket check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    pub checked: usize,
    pub passed: usize,
}

/// Checks bracket vanishing on `count` random values with `3 ≤ g ≤ 6`.
pub fn bracket_check_random(seed: u64, count: usize) -> Result<BracketReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<GeneratorSpec> = (0..count)
        .map(|_| {
            let g = rng.gen_range(3..=6);
            random_spec(&mut rng, g)
        })
        .collect();
    use rayon::prelude::*;
    let results: Vec<bool> = specs
        .par_iter()
        .map(|s| johnson_value(s).map(|v| check_bracket(&v)))
        .collect::<Result<_>>()?;
    Ok(BracketReport { checked: count, passed: results.iter().filter(|&&b| b).count() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symp_linalg::{a_block, omega};

    fn a(g: usize, i: usize) -> MultiVector {
        MultiVector::a(g, i)
    }
    fn b(g: usize, i: usize) -> MultiVector {
        MultiVector::b(g, i)
    }

    #[test]
    fn tau1_examples() {
        let g = 5;
        let bp = GeneratorSpec::standard_bp(g, 1, 2..=g);
        let expect = wedge_h_w2(&a(g, 1), &omega(g)).unwrap();
        assert_eq!(tau1(&bp).unwrap().value, expect);
        let sip = GeneratorSpec::Sip(a(g, 1), a(g, 2), a(g, 3));
        assert_eq!(tau1(&sip).unwrap().value, a_block(g, 3));
        let tw = GeneratorSpec::SepTwistGenus { g, h: 2 };
        assert!(tau1(&tw).unwrap().value.is_zero());
    }

    #[test]
    fn invalid_specs() {
        let g = 3;
        let bad_bp = GeneratorSpec::standard_bp(g, 1, [1]);
        assert!(matches!(tau1(&bad_bp), Err(Error::InvalidSpec(_))));
        let bad_sip = GeneratorSpec::Sip(a(g, 1), b(g, 1), a(g, 2));
        assert!(tau1(&bad_sip).is_err());
        let bad_tw = GeneratorSpec::SepTwist { g, pairs: vec![(a(g, 1), a(g, 2))] };
        assert!(matches!(tau2(&bad_tw), Err(Error::NotSymplecticSet(_))));
    }

    #[test]
    fn bp_map_matches_contraction() {
        let g = 4;
        let spec = GeneratorSpec::standard_bp(g, 1, [2, 3]);
        let dual = b(g, 1).scaled_int(-1);
        let images = tau1_as_map(&spec, &dual).unwrap();
        let t = wedge3_in_tensor(&tau1(&spec).unwrap().value).unwrap();
        for (i, img) in images.iter().enumerate() {
            let e = basis_h(g, i as u16);
            assert_eq!(&contract_to_map(&t, &e).unwrap(), img, "basis {i}");
        }
        // the three defining rules
        assert_eq!(images[2], MultiVector::wedge(&[&a(g, 1), &a(g, 2)]).unwrap().scaled_int(-1));
        assert!(images[6].is_zero()); // a4 lies on the far side
        let omega_v = omega_of(&[(a(g, 2), b(g, 2)), (a(g, 3), b(g, 3))]).unwrap();
        // e = b1: ω(b1, a1) = -1, so the image is +ω_V; the dual -b1 maps to -ω_V
        assert_eq!(images[1], omega_v);
        assert!(tau1_as_map(&spec, &a(g, 2)).is_err());
    }

    #[test]
    fn tau2_examples() {
        let g = 4;
        let v = tau2(&GeneratorSpec::SepTwistGenus { g, h: 1 }).unwrap();
        assert_eq!(v.level, 2);
        assert!(!v.value.is_zero());
        assert!(check_bracket(&v));
        assert!(tau2(&GeneratorSpec::SepTwistGenus { g, h: 0 }).unwrap().value.is_zero());
        let full = tau2(&GeneratorSpec::SepTwistGenus { g, h: g }).unwrap();
        assert!(check_bracket(&full));
    }

    #[test]
    fn bracket_detects_non_kernel() {
        let g = 2;
        let t = a(g, 1).tensor(&MultiVector::wedge(&[&a(g, 1), &a(g, 2)]).unwrap()).unwrap();
        let v = JohnsonValue { level: 1, value: t };
        assert!(!check_bracket(&v));
        let sip = tau1(&GeneratorSpec::Sip(a(3, 1), a(3, 2), a(3, 3))).unwrap();
        assert!(check_bracket(&sip));
    }

    #[test]
    fn random_values_satisfy_bracket_condition() {
        let r = bracket_check_random(7, 24).unwrap();
        assert_eq!(r.passed, r.checked);
    }

    #[test]
    fn tau1_is_equivariant() {
        let g = 4;
        let specs = [
            GeneratorSpec::standard_bp(g, 1, [2, 3]),
            GeneratorSpec::Sip(a(g, 1), a(g, 2), b(g, 3)),
        ];
        for k in GenKind::all(g) {
            let m = GroupGenerator::new(k, g).unwrap().matrix();
            for s in &specs {
                let lhs = tau1(s).unwrap().value.act(&m);
                let rhs = tau1(&s.transformed(&m)).unwrap().value;
                assert_eq!(lhs, rhs, "{k}");
            }
        }
        let m = random_symplectic(&mut ChaCha8Rng::seed_from_u64(3), g, 8);
        let tw = GeneratorSpec::SepTwistGenus { g, h: 2 };
        assert_eq!(tau2(&tw).unwrap().value.act(&m), tau2(&tw.transformed(&m)).unwrap().value);
    }

    #[test]
    fn image_spans_small() {
        assert_eq!(tau1_image_span(3).unwrap(), 20);
        assert_eq!(tau1_image_span(4).unwrap(), 56);
        assert!(matches!(tau1_image_span(2), Err(Error::GenusTooSmall { .. })));
        assert_eq!(tau2_image_span(4).unwrap(), 336);
    }

    #[test]
    fn abelian_cycles() {
        let g = 6;
        let specs = cup_seed_specs(g);
        let c = abelian_cycle(&specs[0].0, &specs[0].1).unwrap();
        let t1 = a_block(g, 3);
        let mut t2 = MultiVector::wedge(&[&a(g, 1), &a(g, 2), &a(g, 4)]).unwrap();
        assert_eq!(c, MultiVector::wedge(&[&t1, &t2]).unwrap());
        t2 = tau1(&specs[1].1).unwrap().value;
        assert_eq!(t2, wedge_h_w2(&a(g, 1), &omega(g)).unwrap());
        assert!(abelian_cycle(&specs[0].0, &specs[0].0).unwrap().is_zero());
    }

    #[test]
    fn morita_core_values() {
        assert_eq!(morita_core(0), 0);
        assert_eq!(morita_core(1), 0);
        assert_eq!(morita_core(3), 24);
    }

    #[test]
    fn cup_genus_guard() {
        assert!(matches!(cup_image_boundary(5), Err(Error::GenusTooSmall { .. })));
    }
}
