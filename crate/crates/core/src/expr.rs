//! Representation expressions:
//!
//! ```text
//! expr := "H" | "V[" partition "]" | "lie(" int ")"
//!       | "wedge(" int "," expr ")" | "sym(" int "," expr ")"
//!       | "tensor(" expr "," expr ")" | "quot(" expr "," embed-name ")"
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use crate::char_ring::{decompose, std_char, Decomposition, FormalCharacter};
use crate::error::{Error, Result};
use crate::free_lie::lie_character;
use crate::rep_core::{freudenthal_char, GroupFamily, Partition};
use crate::symp_linalg::{Embedding, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RepExpr {
    H,
    V(Partition),
    Lie(usize),
    Wedge(usize, Box<RepExpr>),
    Sym(usize, Box<RepExpr>),
    Tensor(Box<RepExpr>, Box<RepExpr>),
    Quot(Box<RepExpr>, Embedding),
}

impl fmt::Display for RepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepExpr::H => write!(f, "H"),
            RepExpr::V(p) => write!(f, "V{p}"),
            RepExpr::Lie(d) => write!(f, "lie({d})"),
            RepExpr::Wedge(k, e) => write!(f, "wedge({k}, {e})"),
            RepExpr::Sym(k, e) => write!(f, "sym({k}, {e})"),
            RepExpr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            RepExpr::Quot(e, m) => write!(f, "quot({e}, {})", m.name()),
        }
    }
}

impl std::str::FromStr for RepExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(input: &str) -> Result<RepExpr> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const EXPR_START: [&str; 7] = ["H", "V[", "lie(", "wedge(", "sym(", "tensor(", "quot("];

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[tok]))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'-') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().map_err(|_| {
            self.pos = start;
            self.error(&["integer"])
        })
    }

    fn expr(&mut self) -> Result<RepExpr> {
        self.skip_ws();
        let start = self.pos;
        let head = self.word().to_string();
        let fail = |p: &mut Self| {
            p.pos = start;
            Err(p.error(&EXPR_START))
        };
        match head.as_str() {
            "H" => Ok(RepExpr::H),
            "V" => {
                self.expect("[")?;
                let mut parts = Vec::new();
                if !self.eat("]") {
                    loop {
                        parts.push(self.int()? as u32);
                        if self.eat("]") {
                            break;
                        }
                        if !self.eat(",") {
                            return Err(self.error(&[",", "]"]));
                        }
                    }
                }
                let p = Partition::new(parts).map_err(|_| Error::Syntax {
                    offset: start,
                    expected: vec!["weakly decreasing partition".into()],
                })?;
                Ok(RepExpr::V(p))
            }
            "lie" => {
                self.expect("(")?;
                let d = self.int()?;
                self.expect(")")?;
                Ok(RepExpr::Lie(d))
            }
            "wedge" | "sym" => {
                self.expect("(")?;
                let k = self.int()?;
                self.expect(",")?;
                let e = Box::new(self.expr()?);
                self.expect(")")?;
                Ok(if head == "wedge" { RepExpr::Wedge(k, e) } else { RepExpr::Sym(k, e) })
            }
            "tensor" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(RepExpr::Tensor(Box::new(a), Box::new(b)))
            }
            "quot" => {
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(",")?;
                self.skip_ws();
                let at = self.pos;
                let name = self.word().to_string();
                let Some(m) = Embedding::from_name(&name) else {
                    self.pos = at;
                    let names: Vec<&str> = Embedding::ALL.iter().map(|e| e.name()).collect();
                    return Err(self.error(&names));
                };
                self.expect(")")?;
                Ok(RepExpr::Quot(Box::new(e), m))
            }
            _ => fail(self),
        }
    }
}

impl RepExpr {
    pub fn tensor(a: RepExpr, b: RepExpr) -> RepExpr {
        RepExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn wedge(k: usize, a: RepExpr) -> RepExpr {
        RepExpr::Wedge(k, Box::new(a))
    }

    pub fn sym(k: usize, a: RepExpr) -> RepExpr {
        RepExpr::Sym(k, Box::new(a))
    }

    pub fn quot(a: RepExpr, e: Embedding) -> RepExpr {
        RepExpr::Quot(Box::new(a), e)
    }

    /// Polynomial degree in the standard representation.
    pub fn degree(&self) -> usize {
        match self {
            RepExpr::H => 1,
            RepExpr::V(p) => p.degree() as usize,
            RepExpr::Lie(d) => *d,
            RepExpr::Wedge(k, e) | RepExpr::Sym(k, e) => k * e.degree(),
            RepExpr::Tensor(a, b) => a.degree() + b.degree(),
            RepExpr::Quot(e, _) => e.degree(),
        }
    }

    pub fn from_shape(s: &Shape) -> RepExpr {
        match s {
            Shape::H => RepExpr::H,
            Shape::Tensor(a, b) => RepExpr::tensor(Self::from_shape(a), Self::from_shape(b)),
            Shape::Wedge(k, a) => RepExpr::wedge(*k, Self::from_shape(a)),
            Shape::Sym(k, a) => RepExpr::sym(*k, Self::from_shape(a)),
            Shape::Quot(e) => RepExpr::quot(Self::from_shape(&e.ambient()), *e),
        }
    }

    /// Shape of explicit vectors in this representation. Irreducibles and
    /// free Lie pieces have no tensor model here.
    pub fn to_shape(&self) -> Result<Shape> {
        Ok(match self {
            RepExpr::H => Shape::H,
            RepExpr::V(_) | RepExpr::Lie(_) => {
                return Err(Error::Unsupported(format!("no vector model for {self}")))
            }
            RepExpr::Wedge(k, e) => Shape::wedge(*k, e.to_shape()?),
            RepExpr::Sym(k, e) => Shape::sym(*k, e.to_shape()?),
            RepExpr::Tensor(a, b) => Shape::tensor(a.to_shape()?, b.to_shape()?),
            RepExpr::Quot(a, e) => {
                let s = a.to_shape()?;
                if s != e.ambient() {
                    return Err(Error::ShapeMismatch { expected: e.ambient().to_string(), found: s.to_string() });
                }
                Shape::Quot(*e)
            }
        })
    }

    pub fn character(&self, group: GroupFamily) -> Result<FormalCharacter> {
        match self {
            RepExpr::H => Ok(std_char(group)),
            RepExpr::V(p) => freudenthal_char(group, p),
            RepExpr::Lie(d) => Ok(lie_character(group, *d)),
            RepExpr::Wedge(k, e) => e.character(group)?.wedge_power(*k),
            RepExpr::Sym(k, e) => e.character(group)?.sym_power(*k),
            RepExpr::Tensor(a, b) => a.character(group)?.tensor(&b.character(group)?),
            RepExpr::Quot(a, e) => {
                if *e == Embedding::HInWedge3 && !group.is_sp() {
                    return Err(Error::Unsupported(format!("{} needs the symplectic form", e.name())));
                }
                let amb = a.character(group)?;
                let want = RepExpr::from_shape(&e.ambient()).character(group)?;
                if amb != want {
                    return Err(Error::ShapeMismatch { expected: e.ambient().to_string(), found: a.to_string() });
                }
                let q = amb.minus(&RepExpr::from_shape(&e.sub()).character(group)?)?;
                if !q.is_genuine() {
                    return Err(Error::NonGenuineCharacter);
                }
                Ok(q)
            }
        }
    }

    pub fn dimension(&self, group: GroupFamily) -> Result<num_bigint::BigInt> {
        Ok(self.character(group)?.dimension())
    }

    pub fn decompose(&self, group: GroupFamily) -> Result<Decomposition> {
        Ok(decompose(&self.character(group)?)?.with_degree(self.degree()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("wedge(2, wedge(3, H))").unwrap(),
            RepExpr::wedge(2, RepExpr::wedge(3, RepExpr::H))
        );
        assert_eq!(
            parse("quot(wedge(3,H), H-in-wedge3)").unwrap(),
            RepExpr::quot(RepExpr::wedge(3, RepExpr::H), Embedding::HInWedge3)
        );
        assert_eq!(parse(" V[ 2 , 1 ] ").unwrap(), RepExpr::V(part(&[2, 1])));
        assert_eq!(parse("V[]").unwrap(), RepExpr::V(Partition::empty()));
        assert_eq!(parse("tensor(H,lie(3))").unwrap(), RepExpr::tensor(RepExpr::H, RepExpr::Lie(3)));
    }

    #[test]
    fn syntax_errors() {
        let err = parse("wedge(2 H)").unwrap_err();
        assert_eq!(err, Error::Syntax { offset: 8, expected: vec![",".into()] });
        assert!(matches!(parse("").unwrap_err(), Error::Syntax { offset: 0, .. }));
        assert!(matches!(parse("H H").unwrap_err(), Error::Syntax { offset: 2, .. }));
        assert!(matches!(parse("V[1,2]").unwrap_err(), Error::Syntax { offset: 0, .. }));
        assert!(matches!(parse("quot(H, nope)").unwrap_err(), Error::Syntax { offset: 8, .. }));
        assert!(matches!(parse("wedge(x, H)").unwrap_err(), Error::Syntax { offset: 6, .. }));
    }

    #[test]
    fn quotient_dimensions() {
        let g = GroupFamily::sp(6).unwrap();
        let e = parse("quot(wedge(3, H), H-in-wedge3)").unwrap();
        assert_eq!(e.character(g).unwrap().dimension(), num_bigint::BigInt::from(220 - 12));
        let bad = parse("quot(wedge(2, H), H-in-wedge3)").unwrap();
        assert!(matches!(bad.character(g), Err(Error::ShapeMismatch { .. })));
        let sl = GroupFamily::sl(4).unwrap();
        assert!(matches!(e.character(sl), Err(Error::Unsupported(_))));
        let s = parse("quot(sym(2, wedge(2, H)), wedge4-in-sym2wedge2)").unwrap();
        assert_eq!(s.to_shape().unwrap(), Shape::Quot(Embedding::Wedge4InSym2Wedge2));
        assert_eq!(s.character(sl).unwrap().dimension(), num_bigint::BigInt::from(21 - 1));
    }

    #[test]
    fn degree_and_shape() {
        let e = parse("tensor(H, wedge(2, quot(wedge(3, H), H-in-wedge3)))").unwrap();
        assert_eq!(e.degree(), 7);
        assert_eq!(RepExpr::from_shape(&e.to_shape().unwrap()), e);
        assert!(parse("V[1]").unwrap().to_shape().is_err());
    }

    fn arb_expr() -> impl Strategy<Value = RepExpr> {
        let leaf = prop_oneof![
            Just(RepExpr::H),
            proptest::collection::vec(1u32..4, 0..4).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                RepExpr::V(Partition::new(v).unwrap())
            }),
            (1usize..6).prop_map(RepExpr::Lie),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (0usize..5, inner.clone()).prop_map(|(k, e)| RepExpr::wedge(k, e)),
                (0usize..5, inner.clone()).prop_map(|(k, e)| RepExpr::sym(k, e)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RepExpr::tensor(a, b)),
                (inner, proptest::sample::select(Embedding::ALL.to_vec())).prop_map(|(a, e)| RepExpr::quot(a, e)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let s = e.to_string();
            prop_assert_eq!(parse(&s).unwrap(), e.clone());
            let squeezed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(parse(&squeezed).unwrap(), e);
        }
    }
}
