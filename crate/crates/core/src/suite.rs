//! Reproduction suite: every published decomposition, coefficient, span
//! and table, checked exactly.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::char_ring::{branch_sp, decompose, interlacing_factors, trivial_multiplicity, Decomposition};
use crate::error::Result;
use crate::expr::parse;
use crate::free_lie::{bracket_map, expand_bracket, lie_character, lyndon_basis};
use crate::johnson::{
    bracket_check_random, coinvariant_complement, cup_image_boundary, cup_image_closed, tau1_image_span,
    tau2_image_span,
};
use crate::linalg::q;
use crate::mmclasses::{bookkeeping_identities, comparison_table, enumerate};
use crate::rep_core::{freudenthal_char, weyl_dim, GroupFamily, Partition};
use crate::symp_linalg::maps::{a_block, certify1, certify2, iota, q3};
use crate::symp_linalg::{Key, MultiVector, Shape};
use crate::SCHEMA;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    /// Expected and found values when they differ.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed(),
            "checks": self.checks.len(),
            "failures": self.failures().map(|c| json!({"label": c.label, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:>2} {} ({} checks)", self.id, self.title, self.checks.len())?;
        for c in self.failures() {
            write!(f, "\n       {}: {}", c.label, c.detail.as_deref().unwrap_or("failed"))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + fmt::Display>(&mut self, label: impl Into<String>, found: T, want: T) {
        let passed = found == want;
        let detail = (!passed).then(|| format!("expected {want}, found {found}"));
        self.0.push(Check { label: label.into(), passed, detail });
    }

    fn truth(&mut self, label: impl Into<String>, ok: bool) {
        self.0.push(Check { label: label.into(), passed: ok, detail: None });
    }

    /// Records an error as a failed check.
    fn run<T>(&mut self, label: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.0.push(Check { label: label.into(), passed: false, detail: Some(e.to_string()) });
                None
            }
        }
    }

    fn dec(&mut self, label: impl Into<String>, expr: &str, group: GroupFamily, want: &[(&[u32], i128)]) {
        let label = label.into();
        let found = parse(expr).and_then(|e| e.decompose(group));
        if let Some(found) = self.run(&label, found) {
            self.eq(label, found, expected(group, want));
        }
    }
}

fn expected(group: GroupFamily, terms: &[(&[u32], i128)]) -> Decomposition {
    Decomposition::from_terms(
        group,
        terms.iter().map(|(p, m)| (Partition::new(p.to_vec()).expect("literal partition"), *m)),
    )
}

fn sp(g: usize) -> GroupFamily {
    GroupFamily::sp(g).expect("g >= 1")
}

fn sl(n: usize) -> GroupFamily {
    GroupFamily::sl(n).expect("n >= 2")
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub const TITLES: [&str; 10] = [
    "symplectic decompositions at g = 6, 7",
    "SL tensor powers including unstable ranks",
    "free Lie algebra pieces, bracket kernels, Jacobi",
    "symplectic coefficients q1 iota, certify1, certify2",
    "Johnson image spans and the bracket condition",
    "cup product images and coinvariant complement",
    "Morita-Mumford comparison table",
    "Sp branching interval rule",
    "character property suites",
    "boundary, punctured and closed bookkeeping",
];

pub fn run_criterion(id: usize) -> CriterionReport {
    let mut c = Checks::default();
    match id {
        1 => decompositions(&mut c),
        2 => sl_examples(&mut c),
        3 => free_lie_checks(&mut c),
        4 => coefficients(&mut c),
        5 => spans(&mut c),
        6 => cup_images(&mut c),
        7 => tables(&mut c),
        8 => branching(&mut c),
        9 => properties(&mut c),
        10 => bookkeeping(&mut c),
        _ => panic!("criteria are numbered 1 to 10"),
    }
    CriterionReport { id, title: TITLES[id - 1], checks: c.0 }
}

/// All criteria, in order.
pub fn run_all() -> Vec<CriterionReport> {
    (1..=10).into_par_iter().map(run_criterion).collect()
}

pub fn suite_json(reports: &[CriterionReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "passed": reports.iter().all(|r| r.passed()),
        "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    })
}

fn decompositions(c: &mut Checks) {
    for g in [6, 7] {
        let grp = sp(g);
        c.dec(
            format!("wedge2 wedge3 H, g={g}"),
            "wedge(2, wedge(3, H))",
            grp,
            &[(&[], 2), (&[1, 1], 3), (&[2, 2], 1), (&[2, 1, 1], 1), (&[1, 1, 1, 1], 2), (&[2, 2, 1, 1], 1), (&[1; 6], 1)],
        );
        c.dec(
            format!("wedge2 of wedge3 H mod H, g={g}"),
            "wedge(2, quot(wedge(3, H), H-in-wedge3))",
            grp,
            &[(&[], 1), (&[1, 1], 1), (&[2, 2], 1), (&[1, 1, 1, 1], 1), (&[2, 2, 1, 1], 1), (&[1; 6], 1)],
        );
        c.dec(
            format!("sym2 wedge2 H, g={g}"),
            "sym(2, wedge(2, H))",
            grp,
            &[(&[1, 1, 1, 1], 1), (&[1, 1], 2), (&[], 2), (&[2, 2], 1)],
        );
        c.dec(format!("wedge4 H, g={g}"), "wedge(4, H)", grp, &[(&[1, 1, 1, 1], 1), (&[1, 1], 1), (&[], 1)]);
        c.dec(
            format!("sym2 wedge2 H mod wedge4 H, g={g}"),
            "quot(sym(2, wedge(2, H)), wedge4-in-sym2wedge2)",
            grp,
            &[(&[], 1), (&[1, 1], 1), (&[2, 2], 1)],
        );
        c.dec(
            format!("H tensor wedge2 H, g={g}"),
            "tensor(H, wedge(2, H))",
            grp,
            &[(&[1, 1, 1], 1), (&[1], 2), (&[2, 1], 1)],
        );
        c.dec(
            format!("H tensor FLie3, g={g}"),
            "tensor(H, lie(3))",
            grp,
            &[(&[], 1), (&[1, 1], 2), (&[2, 2], 1), (&[2, 1, 1], 1), (&[2], 2), (&[3, 1], 1)],
        );
        for k in 1..=6usize {
            let terms: Vec<(Vec<u32>, i128)> = (0..=k / 2).map(|j| (vec![1; k - 2 * j], 1)).collect();
            let want: Vec<(&[u32], i128)> = terms.iter().map(|(p, m)| (p.as_slice(), *m)).collect();
            c.dec(format!("wedge{k} H, g={g}"), &format!("wedge({k}, H)"), grp, &want);
        }
    }
}

fn sl_examples(c: &mut Checks) {
    c.dec("(k^2)^2", "tensor(H, H)", sl(2), &[(&[], 1), (&[2], 1)]);
    for n in 3..=8 {
        c.dec(format!("(k^{n})^2"), "tensor(H, H)", sl(n), &[(&[1, 1], 1), (&[2], 1)]);
    }
    c.dec("(k^2)^3", "tensor(H, tensor(H, H))", sl(2), &[(&[1], 2), (&[3], 1)]);
    c.dec("(k^3)^3", "tensor(H, tensor(H, H))", sl(3), &[(&[], 1), (&[2, 1], 2), (&[3], 1)]);
    for n in 4..=8 {
        c.dec(format!("(k^{n})^3"), "tensor(H, tensor(H, H))", sl(n), &[(&[1, 1, 1], 1), (&[2, 1], 2), (&[3], 1)]);
    }
}

fn free_lie_checks(c: &mut Checks) {
    let lie: [(usize, usize, &[(&[u32], i128)]); 4] = [
        (1, 2, &[(&[1], 1)]),
        (2, 3, &[(&[1, 1], 1)]),
        (3, 4, &[(&[2, 1], 1)]),
        (4, 5, &[(&[3, 1], 1), (&[2, 1, 1], 1)]),
    ];
    for (d, n0, want) in lie {
        for n in n0..=n0 + 2 {
            if let Some(found) = c.run("lie character", decompose(&lie_character(sl(n), d))) {
                c.eq(format!("FLie_{d}(k^{n})"), found, expected(sl(n), want));
            }
        }
    }
    for n in 2..=6u64 {
        c.eq(format!("bracket kernel d=2, n={n}"), bracket_map(n as usize, 2).kernel.len() as u64, binom(n, 3));
        let n2 = binom(n, 2);
        let want = n2 * (n2 + 1) / 2 - binom(n, 4);
        c.eq(format!("bracket kernel d=3, n={n}"), bracket_map(n as usize, 3).kernel.len() as u64, want);
    }
    for n in [2usize, 3] {
        let max = 6;
        let elems: Vec<_> = (1..max)
            .flat_map(|d| lyndon_basis(n, d).into_iter().map(move |b| (d, expand_bracket(&b.bracketing))))
            .collect();
        let bad = elems
            .par_iter()
            .map(|(dx, x)| {
                let mut bad = 0usize;
                for (dy, y) in &elems {
                    for (dz, z) in &elems {
                        if dx + dy + dz > max {
                            continue;
                        }
                        let j = x.bracket(&y.bracket(z)).add(&y.bracket(&z.bracket(x))).add(&z.bracket(&x.bracket(y)));
                        bad += usize::from(!j.is_zero());
                    }
                }
                bad
            })
            .sum::<usize>();
        c.eq(format!("Jacobi violations up to degree {max}, n={n}"), bad, 0);
    }
}

fn coefficients(c: &mut Checks) {
    for g in 3..=8 {
        let ok = (0..2 * g as u16).all(|i| {
            let h = MultiVector::basis(Shape::H, g, Key::B(i));
            matches!(iota(&h).and_then(|w| q3(&w)), Ok(v) if v == h.scaled_int(g as i64 - 1))
        });
        c.truth(format!("q1 iota = (g-1) id, g={g}"), ok);
    }
    for g in 6..=8 {
        if let Some(v) = c.run("certify1", certify1(g)) {
            c.eq(format!("certify1, g={g}"), v, a_block(g, 4).scaled_int(-3));
        }
        if let Some(v) = c.run("certify2", certify2(g)) {
            c.eq(format!("certify2, g={g}"), v, a_block(g, 2).scaled(&q(6 * g as i64 - 2)));
        }
    }
}

fn spans(c: &mut Checks) {
    for g in 3..=5 {
        if let Some(n) = c.run("tau1 span", tau1_image_span(g)) {
            c.eq(format!("tau1 span, g={g}"), n as u64, binom(2 * g as u64, 3));
        }
    }
    if let Some(n) = c.run("tau2 span", tau2_image_span(4)) {
        c.eq("tau2 span, g=4", n, 336);
    }
    let want = parse("quot(sym(2, wedge(2, H)), wedge4-in-sym2wedge2)")
        .and_then(|e| e.character(sp(5)))
        .map(|ch| ch.dimension());
    if let (Some(want), Some(n)) = (c.run("dimension", want), c.run("tau2 span", tau2_image_span(5))) {
        c.eq("tau2 span, g=5", BigInt::from(n), want);
    }
    if let Some(r) = c.run("bracket check", bracket_check_random(1, 100)) {
        c.eq("bracket condition on 100 random values", r.passed, 100);
        c.eq("bracket values checked", r.checked, 100);
    }
}

const BOUNDARY: [(&[u32], i128); 5] =
    [(&[1, 1], 2), (&[2, 1, 1], 1), (&[1, 1, 1, 1], 2), (&[2, 2, 1, 1], 1), (&[1, 1, 1, 1, 1, 1], 1)];
const CLOSED: [(&[u32], i128); 4] = [(&[1, 1], 1), (&[1, 1, 1, 1], 1), (&[2, 2, 1, 1], 1), (&[1, 1, 1, 1, 1, 1], 1)];

fn cup_images(c: &mut Checks) {
    for g in [6, 7] {
        if let Some(d) = c.run("boundary cup image", cup_image_boundary(g)) {
            c.eq(format!("boundary cup image, g={g}"), d, expected(sp(g), &BOUNDARY));
        }
        if let Some(d) = c.run("closed cup image", cup_image_closed(g)) {
            c.eq(format!("closed cup image, g={g}"), d, expected(sp(g), &CLOSED));
        }
        if let Some(d) = c.run("coinvariant complement", coinvariant_complement(g)) {
            c.eq(format!("coinvariant complement, g={g}"), d, expected(sp(g), &[(&[], 2), (&[1, 1], 1), (&[2, 2], 1)]));
        }
    }
}

fn tables(c: &mut Checks) {
    let Some(cup) = c.run("boundary cup image", cup_image_boundary(6)) else { return };
    let Some(rows) = c.run("comparison table", comparison_table(12, 6, &cup)) else { return };
    let col = |f: fn(&crate::mmclasses::TableRow) -> i128| rows.iter().map(f).collect::<Vec<_>>();
    let show = |v: Vec<i128>| format!("{v:?}");
    c.eq("t_d", show(col(|r| r.t_d)), show(vec![0, 1, 0, 3, 0, 15]));
    c.eq("hom", show(col(|r| r.hom)), show(vec![0, 2, 0, 17, 0, 175]));
    c.eq("sums", show(col(|r| r.sum)), show(vec![0, 3, 0, 20, 0, 190]));
    c.eq("Kawazumi counts", show(col(|r| r.kawazumi)), show(vec![0, 3, 0, 20, 0, 190]));
    c.truth("right hand columns agree", rows.iter().all(|r| r.sum == r.kawazumi));
}

fn branching(c: &mut Checks) {
    for g in 4..=7 {
        for lam in Partition::up_to_degree(4, g) {
            let Some(b) = c.run("branch", branch_sp(&lam, g)) else { continue };
            c.truth(format!("interval rule, {lam} at g={g}"), b.partitions() == interlacing_factors(&lam, g));
            if lam.degree() >= 1 && lam.len() < g {
                let parts = b.partitions();
                let ok = parts.contains(&lam) && parts.iter().any(|p| p.degree() + 1 == lam.degree());
                c.truth(format!("restriction keeps {lam} and drops a box, g={g}"), ok);
            }
        }
    }
}

const STABILITY_EXPRS: [&str; 10] = [
    "tensor(H, H)",
    "wedge(3, H)",
    "sym(3, H)",
    "tensor(H, wedge(2, H))",
    "sym(2, wedge(2, H))",
    "wedge(2, wedge(2, H))",
    "tensor(H, lie(3))",
    "lie(5)",
    "wedge(2, wedge(3, H))",
    "tensor(V[2,1], wedge(3, H))",
];

fn properties(c: &mut Checks) {
    let fw: Vec<(String, bool)> = (1..=7usize)
        .flat_map(|r| [(sp(r), r), (sl(r + 1), r)])
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(grp, r)| {
            Partition::up_to_degree(6, grp.max_parts()).into_iter().map(move |lam| {
                let ok = matches!(
                    (freudenthal_char(grp, &lam), weyl_dim(grp, &lam)),
                    (Ok(ch), Ok(d)) if ch.dimension() == d
                );
                (format!("Freudenthal vs Weyl, {grp} {lam} rank {r}"), ok)
            })
        })
        .collect();
    let total = fw.len();
    let bad: Vec<&String> = fw.iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    c.eq(format!("Freudenthal vs Weyl mismatches among {total}"), bad.len(), 0);

    for (grp, e) in [(sp(3), "wedge(2, wedge(3, H))"), (sp(4), "tensor(H, lie(3))"), (sl(5), "sym(2, wedge(2, H))"), (sl(4), "tensor(V[2,1], V[1,1])")] {
        let round = parse(e).and_then(|x| x.character(grp)).and_then(|ch| Ok((decompose(&ch)?.character()?, ch)));
        if let Some((back, ch)) = c.run("peeling", round) {
            c.truth(format!("peeling round trip, {e} for {grp}"), back == ch);
        }
    }

    for e in STABILITY_EXPRS {
        let Some(x) = c.run("parse", parse(e)) else { continue };
        let d = x.degree();
        for (a, b) in [(sp(d), sp(d + 1)), (sl(d + 1), sl(d + 2))] {
            let pair = x.decompose(a).and_then(|p| Ok((p, x.decompose(b)?)));
            if let Some((p, q)) = c.run("stability", pair) {
                c.truth(format!("stable from {a} to {b}: {e}"), p.terms == q.terms);
            }
        }
    }

    for d in (2..=8usize).step_by(2) {
        let dfact: i128 = (1..d as i128).step_by(2).product();
        if let Some(t) = c.run("trivial multiplicity", trivial_multiplicity(d, d)) {
            c.eq(format!("t_{d} = (d-1)!!"), t, dfact);
        }
        c.eq(format!("|enumerate({d}, 0)| = (d-1)!!"), enumerate(d, 0).len() as i128, dfact);
    }
}

fn bookkeeping(c: &mut Checks) {
    for g in [6, 7] {
        let (Some(b), Some(cl)) = (c.run("boundary", cup_image_boundary(g)), c.run("closed", cup_image_closed(g))) else {
            continue;
        };
        if let Some(r) = c.run("bookkeeping", bookkeeping_identities(g, &b, &cl)) {
            c.eq(format!("punctured = boundary + 1, g={g}"), r.punctured.clone(), r.boundary.clone() + 1);
            c.eq(format!("closed + 1 + dim H(wedge3 H/H) = punctured, g={g}"), r.closed + 1 + r.correction, r.punctured);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered() {
        assert_eq!(TITLES.len(), 10);
        let r = run_criterion(2);
        assert_eq!(r.id, 2);
        assert!(r.passed(), "{r}");
        assert!(r.to_string().starts_with("PASS  2"));
    }

    #[test]
    fn failures_are_reported() {
        let mut c = Checks::default();
        c.eq("x", 1, 2);
        let r = CriterionReport { id: 1, title: TITLES[0], checks: c.0 };
        assert!(!r.passed());
        assert!(r.to_string().contains("expected 2, found 1"));
        assert_eq!(r.to_json()["passed"], false);
    }
}
