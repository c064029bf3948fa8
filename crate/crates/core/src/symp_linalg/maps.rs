//! The form, contractions, the splitting of `(∧³H)/H`, and the auxiliary
//! maps used to certify irreducible factors.

use num_traits::{One, Zero};

use super::{
    a_idx, b_idx, inv_g_minus_1, multilinear, normalize_seq, omega_basis, single, Embedding,
    Key, MultiVector, Shape,
};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, q, q_frac, SparseVec, Q};

fn hw(k: usize) -> Shape {
    Shape::wedge(k, Shape::H)
}

fn seq_of(leaves: &[u16]) -> Key {
    Key::Seq(leaves.iter().map(|&l| Key::B(l)).collect())
}

fn leaves_of(k: &Key) -> Vec<u16> {
    k.leaves()
}

/// `ω = Σ a_i ∧ b_i` in `∧²H`.
pub fn omega(g: usize) -> MultiVector {
    let c = (1..=g).map(|i| (seq_of(&[a_idx(i), b_idx(i)]), Q::one())).collect();
    MultiVector::raw(hw(2), g, c)
}

/// The symplectic form on two vectors of `H`.
pub fn omega_form(x: &MultiVector, y: &MultiVector) -> Result<Q> {
    x.shape().expect(&Shape::H)?;
    y.shape().expect(&Shape::H)?;
    let mut s = Q::zero();
    for (i, u) in x.coeffs() {
        for (j, v) in y.coeffs() {
            if let (Key::B(i), Key::B(j)) = (i, j) {
                let w = omega_basis(*i, *j);
                if w != 0 {
                    s += u * v * q(w);
                }
            }
        }
    }
    Ok(s)
}

/// `Σ u_i ∧ v_i` for a symplectic set `{u_i, v_i}`.
pub fn omega_of(pairs: &[(MultiVector, MultiVector)]) -> Result<MultiVector> {
    let g = pairs.first().map(|p| p.0.g()).ok_or_else(|| Error::NotSymplecticSet("empty".into()))?;
    for (i, (ui, vi)) in pairs.iter().enumerate() {
        for (j, (uj, vj)) in pairs.iter().enumerate() {
            let want = if i == j { Q::one() } else { Q::zero() };
            if omega_form(ui, vj)? != want || omega_form(ui, uj)? != Q::zero() || omega_form(vi, vj)? != Q::zero() {
                return Err(Error::NotSymplecticSet(format!("pair {} against pair {}", i + 1, j + 1)));
            }
        }
    }
    let mut acc = MultiVector::zero(hw(2), g);
    for (u, v) in pairs {
        acc = acc.add(&MultiVector::wedge(&[u, v])?)?;
    }
    Ok(acc)
}

fn exterior_degree(v: &MultiVector) -> Result<usize> {
    match v.shape() {
        Shape::Wedge(k, inner) if **inner == Shape::H => Ok(*k),
        s => Err(Error::ShapeMismatch {
            expected: "wedge(k, H)".into(),
            found: s.to_string(),
        }),
    }
}

/// Contraction on one sorted basis key. In the canonical basis order only
/// adjacent `a_i, b_i` pairs pair nontrivially, each with sign `+1`.
fn contract_key(leaves: &[u16]) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for p in 0..leaves.len().saturating_sub(1) {
        if leaves[p].is_multiple_of(2) && leaves[p + 1] == leaves[p] + 1 {
            let rest: Vec<u16> = leaves.iter().enumerate().filter(|(i, _)| *i != p && *i != p + 1).map(|(_, &l)| l).collect();
            add_entry(&mut out, seq_of(&rest), Q::one());
        }
    }
    out
}

fn contract_general(leaves: &[u16]) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            let w = omega_basis(leaves[i], leaves[j]);
            if w == 0 {
                continue;
            }
            // (-1)^{i+j+1} with 1-based positions equals (-1)^{i+j+1} 0-based
            let sign = if (i + j + 1) % 2 == 0 { 1 } else { -1 };
            let rest: Vec<u16> = leaves.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, &l)| l).collect();
            add_entry(&mut out, seq_of(&rest), q(sign * w));
        }
    }
    out
}

/// `q_k : ∧^{k+2}H -> ∧^k H`,
/// `h_1∧...∧h_{k+2} -> Σ_{i<j} (-1)^{i+j+1} ω(h_i,h_j) h_1∧..ĥ_i..ĥ_j..∧h_{k+2}`.
pub fn q_contract(v: &MultiVector) -> Result<MultiVector> {
    let d = exterior_degree(v)?;
    if d < 2 {
        return Err(Error::ShapeMismatch {
            expected: "wedge(k+2, H)".into(),
            found: v.shape().to_string(),
        });
    }
    let mut out = SparseVec::new();
    for (k, x) in v.coeffs() {
        axpy(&mut out, x, &contract_key(&leaves_of(k)));
    }
    Ok(MultiVector::raw(hw(d - 2), v.g(), out))
}

/// Same contraction evaluated from the defining double sum, used to test
/// the fast path.
pub fn q_contract_reference(v: &MultiVector) -> Result<MultiVector> {
    let d = exterior_degree(v)?;
    let mut out = SparseVec::new();
    for (k, x) in v.coeffs() {
        axpy(&mut out, x, &contract_general(&leaves_of(k)));
    }
    Ok(MultiVector::raw(hw(d.saturating_sub(2)), v.g(), out))
}

/// `q : ∧³H -> H`, `h_1∧h_2∧h_3 -> ω(h_1,h_2)h_3 - ω(h_1,h_3)h_2 + ω(h_2,h_3)h_1`.
pub fn q3(v: &MultiVector) -> Result<MultiVector> {
    v.shape().expect(&hw(3))?;
    let c = q_contract(v)?;
    let coeffs = c
        .coeffs()
        .iter()
        .map(|(k, x)| match k {
            Key::Seq(s) => (s[0].clone(), x.clone()),
            _ => unreachable!(),
        })
        .collect();
    Ok(MultiVector::raw(Shape::H, v.g(), coeffs))
}

/// `ι(h) = h ∧ ω`.
pub fn iota(h: &MultiVector) -> Result<MultiVector> {
    h.shape().expect(&Shape::H)?;
    let w = omega(h.g());
    wedge_concat(&h.tensor(&w)?)
}

/// `x ∧ y` for `x ∈ ∧^p H`, `y ∈ ∧^q H` given as `x ⊗ y` (an `H` factor
/// counts as `∧¹`).
fn wedge_concat(t: &MultiVector) -> Result<MultiVector> {
    let (sa, sb) = match t.shape() {
        Shape::Tensor(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
        s => return Err(Error::ShapeMismatch { expected: "tensor".into(), found: s.to_string() }),
    };
    let deg = |s: &Shape| match s {
        Shape::H => Ok(1),
        Shape::Wedge(k, i) if **i == Shape::H => Ok(*k),
        s => Err(Error::ShapeMismatch { expected: "wedge(k, H)".into(), found: s.to_string() }),
    };
    let d = deg(&sa)? + deg(&sb)?;
    let mut out = SparseVec::new();
    for (k, x) in t.coeffs() {
        if let Some((neg, v)) = normalize_seq(k.leaves().into_iter().map(Key::B).collect(), true) {
            add_entry(&mut out, Key::Seq(v), if neg { -x.clone() } else { x.clone() });
        }
    }
    Ok(MultiVector::raw(hw(d), t.g(), out))
}

/// `p : ∧³H -> (∧³H)/H`.
pub fn proj_p(v: &MultiVector) -> Result<MultiVector> {
    v.project(Embedding::HInWedge3)
}

/// The section `σ` of `p` with image `ker q_1`.
pub fn sigma(k: &MultiVector) -> Result<MultiVector> {
    k.shape().expect(&Shape::Quot(Embedding::HInWedge3))?;
    Ok(k.representative())
}

fn wedge_inner_degree(v: &MultiVector) -> Result<(usize, usize)> {
    let err = || Error::ShapeMismatch {
        expected: "wedge(k, wedge(m, H)) or wedge(k, quot(wedge(3, H), H-in-wedge3))".into(),
        found: v.shape().to_string(),
    };
    match v.shape() {
        Shape::Wedge(k, inner) => match inner.as_ref() {
            Shape::Wedge(m, h) if **h == Shape::H => Ok((*k, *m)),
            Shape::Quot(Embedding::HInWedge3) => Ok((*k, 3)),
            _ => Err(err()),
        },
        _ => Err(err()),
    }
}

/// `φ : ∧^k ∧^m H -> ∧^{km} H`, concatenating the factors. On the quotient
/// `∧²((∧³H)/H)` it is applied to the representative `∧²σ`.
pub fn phi(v: &MultiVector) -> Result<MultiVector> {
    let (k, m) = wedge_inner_degree(v)?;
    let mut out = SparseVec::new();
    for (key, x) in v.coeffs() {
        if let Some((neg, s)) = normalize_seq(key.leaves().into_iter().map(Key::B).collect(), true) {
            add_entry(&mut out, Key::Seq(s), if neg { -x.clone() } else { x.clone() });
        }
    }
    Ok(MultiVector::raw(hw(k * m), v.g(), out))
}

/// `ψ = ∧²q : ∧²∧³H -> ∧²H` (representatives for the quotient).
pub fn psi(v: &MultiVector) -> Result<MultiVector> {
    let (k, m) = wedge_inner_degree(v)?;
    if k != 2 || m != 3 {
        return Err(Error::ShapeMismatch { expected: "wedge(2, wedge(3, H))".into(), found: v.shape().to_string() });
    }
    let mut out = SparseVec::new();
    for (key, x) in v.coeffs() {
        let Key::Seq(parts) = key else { unreachable!() };
        let images: Vec<SparseVec<Key>> = parts
            .iter()
            .map(|p| {
                contract_key(&p.leaves())
                    .into_iter()
                    .map(|(k, c)| match k {
                        Key::Seq(s) => (s[0].clone(), c),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        axpy(&mut out, x, &multilinear(&images, true));
    }
    Ok(MultiVector::raw(hw(2), v.g(), out))
}

/// Projection of an ambient basis key onto the embedded subspace, along the
/// invariant complement that holds canonical representatives.
pub(crate) fn sub_projection(e: Embedding, key: &Key, g: usize) -> SparseVec<Key> {
    match e {
        Embedding::HInWedge3 => {
            // (1/(g-1)) q_1(x) ∧ ω
            let mut out = SparseVec::new();
            if g < 2 {
                return out;
            }
            let c = inv_g_minus_1(g);
            for (h, x) in contract_key(&key.leaves()) {
                let h = h.leaves()[0];
                for i in 1..=g {
                    if let Some((neg, s)) = normalize_seq(vec![Key::B(h), Key::B(a_idx(i)), Key::B(b_idx(i))], true) {
                        let y = &x * &c;
                        add_entry(&mut out, Key::Seq(s), if neg { -y } else { y });
                    }
                }
            }
            out
        }
        Embedding::Wedge4InSym2Wedge2 => {
            // ι(B(x))/3 with B the multiplication into ∧⁴H
            let mut out = SparseVec::new();
            let Some((neg, s)) = normalize_seq(key.leaves().into_iter().map(Key::B).collect(), true) else {
                return out;
            };
            let c = if neg { q_frac(-1, 3) } else { q_frac(1, 3) };
            let h: Vec<u16> = s.iter().flat_map(|k| k.leaves()).collect();
            for (pair, sign) in [([0, 1, 2, 3], 1), ([0, 2, 1, 3], -1), ([0, 3, 1, 2], 1)] {
                let l = Key::Seq(vec![Key::B(h[pair[0]]), Key::B(h[pair[1]])]);
                let r = Key::Seq(vec![Key::B(h[pair[2]]), Key::B(h[pair[3]])]);
                let (_, s) = normalize_seq(vec![l, r], false).unwrap();
                add_entry(&mut out, Key::Seq(s), &c * q(sign));
            }
            out
        }
        Embedding::HxWedge3InHHxWedge2 => {
            // id ⊗ emb(A(·))/3
            let mut out = SparseVec::new();
            let Key::Pair(x, rest) = key else { unreachable!() };
            let Some((neg, s)) = normalize_seq(rest.leaves().into_iter().map(Key::B).collect(), true) else {
                return out;
            };
            let c = if neg { q_frac(-1, 3) } else { q_frac(1, 3) };
            let h: Vec<u16> = s.iter().flat_map(|k| k.leaves()).collect();
            for (t, sign) in [([0, 1, 2], 1), ([1, 0, 2], -1), ([2, 0, 1], 1)] {
                let inner = Key::pair(Key::B(h[t[0]]), seq_of(&[h[t[1]], h[t[2]]]));
                add_entry(&mut out, Key::pair((**x).clone(), inner), &c * q(sign));
            }
            out
        }
    }
}

/// Image of the embedded subspace, for tests and checks: `h -> h∧ω`,
/// `∧⁴H -> Sym²∧²H`, `H⊗∧³H -> H⊗H⊗∧²H`.
pub fn embed(e: Embedding, v: &MultiVector) -> Result<MultiVector> {
    v.shape().expect(&e.sub())?;
    let g = v.g();
    let mut out = SparseVec::new();
    for (k, x) in v.coeffs() {
        let img = match e {
            Embedding::HInWedge3 => iota(&MultiVector::raw(Shape::H, g, single(k.clone())))?.coeffs().clone(),
            Embedding::Wedge4InSym2Wedge2 => {
                let h = k.leaves();
                let mut o = SparseVec::new();
                for (pair, sign) in [([0, 1, 2, 3], 1), ([0, 2, 1, 3], -1), ([0, 3, 1, 2], 1)] {
                    let l = seq_of(&[h[pair[0]], h[pair[1]]]);
                    let r = seq_of(&[h[pair[2]], h[pair[3]]]);
                    let (_, s) = normalize_seq(vec![l, r], false).unwrap();
                    add_entry(&mut o, Key::Seq(s), q(sign));
                }
                o
            }
            Embedding::HxWedge3InHHxWedge2 => {
                let Key::Pair(x, t) = k else { unreachable!() };
                let h = t.leaves();
                let mut o = SparseVec::new();
                for (t, sign) in [([0, 1, 2], 1), ([1, 0, 2], -1), ([2, 0, 1], 1)] {
                    let inner = Key::pair(Key::B(h[t[0]]), seq_of(&[h[t[1]], h[t[2]]]));
                    add_entry(&mut o, Key::pair((**x).clone(), inner), q(sign));
                }
                o
            }
        };
        axpy(&mut out, x, &img);
    }
    Ok(MultiVector::raw(e.ambient(), g, out))
}

fn wedge3(g: usize, ls: [u16; 3]) -> MultiVector {
    let hs: Vec<MultiVector> = ls.iter().map(|&l| MultiVector::raw(Shape::H, g, single(Key::B(l)))).collect();
    MultiVector::wedge(&[&hs[0], &hs[1], &hs[2]]).expect("same shape")
}

/// Class of `x ∧ y` in `∧²((∧³H)/H)` for `x, y ∈ ∧³H`.
pub fn quotient_pair(x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    let w = MultiVector::wedge(&[x, y])?;
    w.reshaped(Shape::wedge(2, Shape::Quot(Embedding::HInWedge3)))
}

fn check_genus(g: usize) -> Result<()> {
    if g < 6 {
        return Err(Error::GenusTooSmall { g, min: 6 });
    }
    Ok(())
}

/// `q_4∘φ∘∧²σ` applied to `(1-g)·[a1∧a2∧a3] ∧ [a4∧a5∧b5]`.
pub fn certify1(g: usize) -> Result<MultiVector> {
    check_genus(g)?;
    let theta = quotient_pair(
        &wedge3(g, [a_idx(1), a_idx(2), a_idx(3)]),
        &wedge3(g, [a_idx(4), a_idx(5), b_idx(5)]),
    )?;
    q_contract(&phi(&theta.scaled_int(1 - g as i64))?)
}

/// `q_2∘q_4∘φ∘∧²σ` applied to `(1-g)²·[a1∧a4∧b4] ∧ [a2∧a3∧b3]`.
pub fn certify2(g: usize) -> Result<MultiVector> {
    check_genus(g)?;
    let theta = quotient_pair(
        &wedge3(g, [a_idx(1), a_idx(4), b_idx(4)]),
        &wedge3(g, [a_idx(2), a_idx(3), b_idx(3)]),
    )?;
    let s = (1 - g as i64).pow(2);
    q_contract(&q_contract(&phi(&theta.scaled_int(s))?)?)
}

/// `a_1 ∧ ... ∧ a_k` in `∧^k H`.
pub fn a_block(g: usize, k: usize) -> MultiVector {
    MultiVector::raw(hw(k), g, single(seq_of(&(1..=k).map(a_idx).collect::<Vec<_>>())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symp_linalg::basis_keys;
    use proptest::prelude::*;

    #[test]
    fn contraction_matches_definition() {
        for g in 2..=4 {
            for k in 2..=5.min(2 * g) {
                for key in basis_keys(&hw(k), g) {
                    let v = MultiVector::raw(hw(k), g, single(key));
                    assert_eq!(q_contract(&v).unwrap(), q_contract_reference(&v).unwrap());
                }
            }
        }
    }

    #[test]
    fn contraction_is_equivariant() {
        use crate::symp_linalg::generators::{GenKind, GroupGenerator};
        for g in 2..=6 {
            for k in 0..=2.min(2 * g - 2) {
                for gk in GenKind::all(g) {
                    let m = GroupGenerator::new(gk, g).unwrap().matrix();
                    for key in basis_keys(&hw(k + 2), g) {
                        let v = MultiVector::raw(hw(k + 2), g, single(key));
                        assert_eq!(q_contract(&v.act(&m)).unwrap(), q_contract(&v).unwrap().act(&m), "g={g} k={k} {gk}");
                    }
                }
            }
        }
    }

    #[test]
    fn q1_iota_is_g_minus_1() {
        for g in 3..=8 {
            for i in 0..2 * g as u16 {
                let h = MultiVector::raw(Shape::H, g, single(Key::B(i)));
                assert_eq!(q3(&iota(&h).unwrap()).unwrap(), h.scaled_int(g as i64 - 1));
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let g = 6;
        let x = wedge3(g, [a_idx(1), a_idx(2), a_idx(3)]);
        assert_eq!(sigma(&proj_p(&x).unwrap()).unwrap(), x);
        let y = wedge3(g, [a_idx(1), a_idx(2), b_idx(2)]);
        let a1 = MultiVector::a(g, 1);
        let expect = y.sub(&iota(&a1).unwrap().scaled(&q_frac(1, 5))).unwrap();
        assert_eq!(sigma(&proj_p(&y).unwrap()).unwrap(), expect);
    }

    #[test]
    fn sigma_is_a_section_into_kernel() {
        for g in 3..=8 {
            let keys = basis_keys(&hw(3), g);
            for k in keys.iter().step_by(7) {
                let x = MultiVector::raw(hw(3), g, single(k.clone()));
                let s = sigma(&proj_p(&x).unwrap()).unwrap();
                assert!(q3(&s).unwrap().is_zero());
                // σ(p(x)) - x lies in the image of ι
                let d = x.sub(&s).unwrap();
                let h = q3(&d).unwrap().scaled(&inv_g_minus_1(g));
                assert_eq!(iota(&h).unwrap(), d);
                // p(ι(h)) = 0
                assert!(proj_p(&iota(&h).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn projectors_fix_the_subspace() {
        let g = 3;
        for e in Embedding::ALL {
            for k in basis_keys(&e.sub(), g).iter().step_by(5) {
                let v = MultiVector::raw(e.sub(), g, single(k.clone()));
                let img = embed(e, &v).unwrap();
                assert!(img.project(e).unwrap().is_zero(), "{}", e.name());
            }
        }
    }

    #[test]
    fn projectors_are_idempotent() {
        let g = 3;
        for e in Embedding::ALL {
            for k in basis_keys(&e.ambient(), g).iter().step_by(11) {
                let v = MultiVector::raw(e.ambient(), g, single(k.clone()));
                let once = v.project(e).unwrap();
                let twice = once.representative().project(e).unwrap();
                assert_eq!(once, twice, "{}", e.name());
            }
        }
    }

    #[test]
    fn omega_of_checks_symplectic_set() {
        let g = 2;
        let (a1, b1, a2, b2) = (MultiVector::a(g, 1), MultiVector::b(g, 1), MultiVector::a(g, 2), MultiVector::b(g, 2));
        let w = omega_of(&[(a1.clone(), b1.clone()), (a2.clone(), b2.clone())]).unwrap();
        assert_eq!(w, omega(g));
        assert!(matches!(omega_of(&[(a1.clone(), a2.clone())]), Err(Error::NotSymplecticSet(_))));
        // a symplectic set in another basis gives the same ω
        let u2 = a2.add(&a1).unwrap();
        let v1 = b1.sub(&b2).unwrap();
        assert_eq!(omega_of(&[(a1, v1), (u2, b2)]).unwrap(), omega(g));
    }

    #[test]
    fn certify1_values() {
        for g in 6..=8 {
            assert_eq!(certify1(g).unwrap(), a_block(g, 4).scaled_int(-3));
        }
        assert!(matches!(certify1(5), Err(Error::GenusTooSmall { .. })));
    }

    #[test]
    fn certify2_computed_value() {
        // Direct expansion gives (2g+2) a1∧a2; the class is nonzero for all g.
        for g in 6..=8 {
            assert_eq!(certify2(g).unwrap(), a_block(g, 2).scaled_int(2 * g as i64 + 2));
        }
    }

    #[test]
    fn psi_and_phi_shapes() {
        let g = 4;
        let x = wedge3(g, [a_idx(1), a_idx(2), b_idx(2)]);
        let y = wedge3(g, [a_idx(3), a_idx(4), b_idx(4)]);
        let w = MultiVector::wedge(&[&x, &y]).unwrap();
        assert_eq!(psi(&w).unwrap(), MultiVector::wedge(&[&MultiVector::a(g, 1), &MultiVector::a(g, 3)]).unwrap());
        assert_eq!(phi(&w).unwrap().shape(), &hw(6));
    }

    proptest! {
        #[test]
        fn contraction_is_linear(c1 in -5i64..5, c2 in -5i64..5, i in 0usize..56, j in 0usize..56) {
            let g = 4;
            let keys = basis_keys(&hw(3), g);
            let x = MultiVector::raw(hw(3), g, single(keys[i % keys.len()].clone()));
            let y = MultiVector::raw(hw(3), g, single(keys[j % keys.len()].clone()));
            let lhs = q3(&x.scaled_int(c1).add(&y.scaled_int(c2)).unwrap()).unwrap();
            let rhs = q3(&x).unwrap().scaled_int(c1).add(&q3(&y).unwrap().scaled_int(c2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
