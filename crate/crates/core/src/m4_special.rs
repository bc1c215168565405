//! Minimal resolutions of `k` over `k[S]` for multiplicity 4, one per face
//! of the Kunz cone that contains semigroups.
//!
//! Each construction is built symbolically for a representative face and
//! relabeled by the unit `u = 3` for the mirror face. Concrete matrices come
//! from [`substitute`], which also rejects semigroups from other faces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::apery_resolution::{apery_complex, boundary_terms, Coeff};
use crate::complex::{BasisLabel, ChainComplex};
use crate::error::{Error, Result};
use crate::kunz::{face_signature, FaceSignature};
use crate::semigroup::NumericalSemigroup;
use crate::symbolic::{substitute, SymEntry, SymMonomial, SymbolicMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceTag {
    Interior,
    Ray,
    CiFacet,
    NonCiFacet,
}

impl FaceTag {
    pub fn name(self) -> &'static str {
        match self {
            FaceTag::Interior => "interior",
            FaceTag::Ray => "ray",
            FaceTag::CiFacet => "CI facet",
            FaceTag::NonCiFacet => "non-CI facet",
        }
    }
}

impl fmt::Display for FaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Face of `C_4` plus the unit `u` with `i -> u i` carrying the face to its
/// representative (`a_2 = 2a_1`, `a_3 = a_1 + a_2`, or both).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceClassM4 {
    pub tag: FaceTag,
    pub unit: usize,
}

pub fn classify_face_m4(s: &NumericalSemigroup) -> Result<FaceClassM4> {
    if s.m() != 4 {
        return Err(Error::NotMultiplicityFour(s.m()));
    }
    let sig = face_signature(s)?;
    if sig.is_interior() {
        return Ok(FaceClassM4 {
            tag: FaceTag::Interior,
            unit: 1,
        });
    }
    let reps = [
        (FaceTag::NonCiFacet, vec![(1, 1)]),
        (FaceTag::CiFacet, vec![(1, 2)]),
        (FaceTag::Ray, vec![(1, 1), (1, 2)]),
    ];
    for (tag, pairs) in reps {
        let rep = FaceSignature::from_pairs(4, pairs);
        for u in [1, 3] {
            if sig.relabel(u) == rep {
                return Ok(FaceClassM4 { tag, unit: u });
            }
        }
    }
    Err(Error::UnclassifiedFace(sig.to_string()))
}

fn require(s: &NumericalSemigroup, tag: FaceTag) -> Result<usize> {
    let class = classify_face_m4(s)?;
    if class.tag != tag {
        return Err(Error::WrongFace {
            expected: tag.name(),
            found: class.tag.name(),
        });
    }
    Ok(class.unit)
}

fn specialize(mats: &[SymbolicMatrix], u: usize, s: &NumericalSemigroup) -> Result<ChainComplex> {
    let diffs = mats
        .iter()
        .map(|m| substitute(&if u == 1 { m.clone() } else { m.relabel(u) }, s))
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(s.clone(), diffs)
}

fn x(i: usize, e: u32) -> SymMonomial {
    SymMonomial::var(4, i, e)
}

fn yb(i: usize, j: usize) -> SymMonomial {
    SymMonomial::y_b(4, i, j)
}

// ---------------------------------------------------------------- ray

fn alternating(start: u8, len: usize) -> Vec<u8> {
    (0..len)
        .map(|k| if (k % 2 == 0) == (start == 1) { 1 } else { 3 })
        .collect()
}

/// Basis of `F_d` for the ray: `0` followed by `1313...`, then `1313...`.
pub fn ray_labels(d: usize) -> Vec<BasisLabel> {
    if d == 0 {
        return vec![BasisLabel::Word(Vec::new())];
    }
    let mut a = vec![0];
    a.extend(alternating(1, d - 1));
    vec![BasisLabel::Word(a), BasisLabel::Word(alternating(1, d))]
}

/// Differentials of the 2-periodic resolution on the ray `a_2 = 2a_1`,
/// `a_3 = 3a_1`.
pub fn ray_symbolic(d: usize) -> SymbolicMatrix {
    let e = SymEntry::single;
    let columns = match d {
        0 => panic!("differentials start at d = 1"),
        1 => vec![vec![(0, e(1, yb(0, 1)))], vec![(0, e(1, x(1, 1)))]],
        d if d % 2 == 0 => vec![
            vec![(0, e(1, x(1, 1))), (1, e(-1, yb(0, 1)))],
            vec![(0, e(-1, yb(1, 3))), (1, e(1, x(1, 3)))],
        ],
        _ => vec![
            vec![(0, e(1, x(1, 3))), (1, e(1, yb(0, 1)))],
            vec![(0, e(1, yb(1, 3))), (1, e(1, x(1, 1)))],
        ],
    };
    SymbolicMatrix {
        m: 4,
        source: ray_labels(d),
        target: ray_labels(d - 1),
        columns,
    }
}

pub fn ray_resolution(s: &NumericalSemigroup, max_d: usize) -> Result<ChainComplex> {
    let u = require(s, FaceTag::Ray)?;
    let mats: Vec<_> = (1..=max_d).map(ray_symbolic).collect();
    specialize(&mats, u, s)
}

// ---------------------------------------------------------------- CI facet

/// Multisets over `{0, 1, 2}` of size `d` with at most one `0`, ordered as
/// sorted strings (`01, 02, 11, 12, 22`).
pub fn ci_multisets(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for c0 in (0..=1.min(d)).rev() {
        for c1 in (0..=d - c0).rev() {
            out.push([c0, c1, d - c0 - c1]);
        }
    }
    out
}

fn multiset_label(c: &[usize; 3]) -> BasisLabel {
    let mut v = Vec::new();
    for (letter, &n) in c.iter().enumerate() {
        v.extend(std::iter::repeat_n(letter as u8, n));
    }
    BasisLabel::Multiset(v)
}

/// `d_d` on the facet `a_3 = a_1 + a_2`, where `F_d` has rank `2d + 1`.
pub fn ci_symbolic(d: usize) -> SymbolicMatrix {
    assert!(d >= 1, "differentials start at d = 1");
    let rows = ci_multisets(d - 1);
    let index: HashMap<[usize; 3], usize> = rows.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let s = if d % 2 == 1 { 1 } else { -1 };
    let cols = ci_multisets(d);
    let columns = cols
        .iter()
        .map(|c| {
            let mut col: BTreeMap<usize, SymEntry> = BTreeMap::new();
            let mut push = |delta: [i64; 3], coeff: i64, mon: SymMonomial| {
                let t: Vec<i64> = (0..3).map(|k| c[k] as i64 + delta[k]).collect();
                if t.iter().any(|&v| v < 0) || t[0] > 1 {
                    return;
                }
                let t = [t[0] as usize, t[1] as usize, t[2] as usize];
                col.entry(index[&t]).or_default().push(coeff, mon);
            };
            let even = c[2] % 2 == 0;
            push([0, 0, -1], 1, x(2, 1));
            push([0, -1, 0], if even { 1 } else { -1 }, x(1, 1));
            if even {
                push([0, -2, 1], -1, yb(1, 1));
            }
            push([-1, 0, 0], s, yb(0, 1));
            push([1, 0, -2], s, yb(2, 2));
            col.into_iter().filter(|(_, e)| !e.is_zero()).collect()
        })
        .collect();
    SymbolicMatrix {
        m: 4,
        source: cols.iter().map(multiset_label).collect(),
        target: rows.iter().map(multiset_label).collect(),
        columns,
    }
}

pub fn ci_differential(s: &NumericalSemigroup, d: usize) -> Result<crate::complex::DifferentialMatrix> {
    let u = require(s, FaceTag::CiFacet)?;
    let m = ci_symbolic(d);
    substitute(&if u == 1 { m } else { m.relabel(u) }, s)
}

pub fn ci_resolution(s: &NumericalSemigroup, max_d: usize) -> Result<ChainComplex> {
    let u = require(s, FaceTag::CiFacet)?;
    let mats: Vec<_> = (1..=max_d).map(ci_symbolic).collect();
    specialize(&mats, u, s)
}

// ---------------------------------------------------------------- non-CI facet

/// Whether `w` lies in `W_d`: `w_1` in `{0,1,3}`, then letters in `{2,3}`
/// after a 1 and in `{1,3}` otherwise.
pub fn in_language(w: &[u8]) -> bool {
    w.iter().enumerate().all(|(i, &l)| match i {
        0 => matches!(l, 0 | 1 | 3),
        _ if w[i - 1] == 1 => matches!(l, 2 | 3),
        _ => matches!(l, 1 | 3),
    })
}

/// `W_d` in lexicographic order; it has `3 * 2^{d-1}` words.
pub fn language_words(d: usize) -> Vec<Vec<u8>> {
    let mut words = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(words.len() * 2);
        for w in &words {
            for l in 0..4u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(l);
                if in_language(&v) {
                    next.push(v);
                }
            }
        }
        words = next;
    }
    words
}

/// Degree on the facet `a_2 = 2a_1` as `k_0 + k_1 a_1 + k_3 a_3`.
type Key = [i64; 3];

fn letter_key(l: usize) -> Key {
    match l % 4 {
        0 => [4, 0, 0],
        1 => [0, 1, 0],
        2 => [0, 2, 0],
        _ => [0, 0, 1],
    }
}

fn add_keys(a: Key, b: Key) -> Key {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn key_of(mon: &SymMonomial) -> Key {
    let mut k = [0; 3];
    for (i, &e) in mon.x.iter().enumerate() {
        let lk = letter_key(i);
        for t in 0..3 {
            k[t] += e as i64 * lk[t];
        }
    }
    for (&(i, j), &e) in &mon.b {
        let (i, j) = (i as usize, j as usize);
        let (a, b, c) = (letter_key(i), letter_key(j), letter_key(i + j));
        for t in 0..3 {
            k[t] += e as i64 * (a[t] + b[t] - c[t]);
        }
    }
    k
}

/// Rewrites `x_2 = x_1^2` and drops `b_11 = 0`.
fn normalize(mut mon: SymMonomial) -> SymMonomial {
    mon.x[1] += 2 * mon.x[2];
    mon.x[2] = 0;
    mon.b.remove(&(1, 1));
    mon
}

/// Residue mod 4 of the degree of a normalized monomial.
fn class(mon: &SymMonomial) -> usize {
    (mon.x[1] as usize + 3 * mon.x[3] as usize) % 4
}

fn is_reduced(word: &[u8], mon: &SymMonomial) -> bool {
    match class(mon) {
        0 => true,
        1 => word.last() == Some(&1),
        _ => false,
    }
}

/// A monomial `M'` with `M' x_letter = M` in `R`, using the facet relations
/// `x_1^3 = y^{b_12} x_3`, `x_1 x_3 = y^{b_13 + 1}`, `x_3^2 = y^{b_33} x_1^2`.
fn divide(mon: &SymMonomial, letter: usize) -> Option<SymMonomial> {
    let mut out = mon.clone();
    let (p, q) = (mon.x[1], mon.x[3]);
    match letter {
        3 if q >= 1 => out.x[3] -= 1,
        3 if p >= 3 => {
            out.x[1] -= 3;
            out.add_b(1, 2, 1);
        }
        2 if p >= 2 => out.x[1] -= 2,
        2 if p == 1 && q >= 3 => {
            out.x[1] = 0;
            out.x[3] -= 3;
            out.add_b(1, 3, 1);
            out.add_b(3, 3, 1);
            out.x[0] += 1;
        }
        2 if p == 0 && q >= 2 => {
            out.x[3] -= 2;
            out.add_b(3, 3, 1);
        }
        1 if p >= 1 => out.x[1] -= 1,
        1 if q >= 2 => {
            out.x[3] -= 2;
            out.x[1] += 1;
            out.add_b(3, 3, 1);
        }
        _ => return None,
    }
    Some(out)
}

/// An element of a free module, keyed by basis word and degree. Terms of
/// equal degree on the same word are equal in `R`, so they merge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Elem(BTreeMap<(Vec<u8>, Key), (i64, SymMonomial)>);

impl Elem {
    fn basis(word: Vec<u8>) -> Elem {
        let mut e = Elem::default();
        e.add(word, 1, SymMonomial::one(4));
        e
    }

    fn add(&mut self, word: Vec<u8>, c: i64, mon: SymMonomial) {
        if c == 0 {
            return;
        }
        let mon = normalize(mon);
        let key = (word, key_of(&mon));
        match self.0.get_mut(&key) {
            Some(slot) => {
                slot.0 += c;
                if slot.0 == 0 {
                    self.0.remove(&key);
                }
            }
            None => {
                self.0.insert(key, (c, mon));
            }
        }
    }

    fn add_scaled(&mut self, c: i64, mon: &SymMonomial, other: &Elem) {
        for ((w, _), (d, m)) in &other.0 {
            self.add(w.clone(), c * d, mon.times(m));
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// The inductive construction of the resolution on the facet `a_2 = 2a_1`:
/// maps `p_d : F_d -> F'_d` from the infinite Apéry resolution onto the span
/// of `W_d`, and `d'_d = p_{d-1} d_d` on `W_d`.
///
/// For a word outside `W_d`, `p_d e_w` is the reduced preimage of
/// `p_{d-1}(d e_w)`, found by peeling off class 3, class 2 and unreduced
/// class 1 terms through the columns of `d'_d`.
#[derive(Debug, Default)]
pub struct NonCiBuilder {
    p: Vec<HashMap<Vec<u8>, Elem>>,
    cols: Vec<HashMap<Vec<u8>, Elem>>,
}

const LIFT_CAP: usize = 100_000;

impl NonCiBuilder {
    pub fn new() -> Self {
        NonCiBuilder::default()
    }

    fn grow(&mut self, level: usize) {
        while self.p.len() <= level {
            self.p.push(HashMap::new());
            self.cols.push(HashMap::new());
        }
    }

    /// `p_{level-1}(d_level e_v)`.
    fn image(&mut self, level: usize, v: &[u8]) -> Result<Elem> {
        let mut out = Elem::default();
        for (t, sign, c) in boundary_terms(4, v) {
            let mon = match c {
                Coeff::X(l) => x(l as usize, 1),
                Coeff::YB(i, j) => yb(i as usize, j as usize),
            };
            if level == 1 {
                out.add(t, sign, mon);
            } else {
                let pt = self.p_elem(level - 1, &t)?;
                out.add_scaled(sign, &mon, &pt);
            }
        }
        Ok(out)
    }

    fn column(&mut self, level: usize, u: &[u8]) -> Result<Elem> {
        self.grow(level);
        if let Some(c) = self.cols[level].get(u) {
            return Ok(c.clone());
        }
        let c = self.image(level, u)?;
        self.cols[level].insert(u.to_vec(), c.clone());
        Ok(c)
    }

    fn p_elem(&mut self, level: usize, v: &[u8]) -> Result<Elem> {
        if in_language(v) {
            return Ok(Elem::basis(v.to_vec()));
        }
        if level == 1 {
            // only e_2 lies outside W_1
            let mut e = Elem::default();
            e.add(vec![1], 1, x(1, 1));
            return Ok(e);
        }
        self.grow(level);
        if let Some(e) = self.p[level].get(v) {
            return Ok(e.clone());
        }
        let g = self.image(level, v)?;
        let lift = self.lift(level, g, v)?;
        self.p[level].insert(v.to_vec(), lift.clone());
        Ok(lift)
    }

    /// A reduced `a` in `F'_level` with `d'_level a = g`.
    fn lift(&mut self, level: usize, mut f: Elem, origin: &[u8]) -> Result<Elem> {
        let mut lift = Elem::default();
        for _ in 0..LIFT_CAP {
            let next = f
                .0
                .iter()
                .filter(|((w, _), (_, m))| !is_reduced(w, m))
                .min_by_key(|((w, k), (_, m))| (4 - class(m), w.clone(), *k))
                .map(|((w, k), (c, m))| (w.clone(), *k, *c, m.clone()));
            let Some((u, key, c, mon)) = next else { break };
            let letter = match class(&mon) {
                3 => 3,
                2 if u.last() == Some(&1) => 2,
                _ => 1,
            };
            let q = divide(&mon, letter).ok_or_else(|| {
                Error::ReductionFailure(format!("{mon} is not divisible by x_{letter}"))
            })?;
            if add_keys(key_of(&q), letter_key(letter)) != key {
                return Err(Error::ReductionFailure(format!(
                    "{q} x_{letter} and {mon} have different degrees"
                )));
            }
            let mut uk = u.clone();
            uk.push(letter as u8);
            if !is_reduced(&uk, &normalize(q.clone())) {
                return Err(Error::ReductionFailure(format!("lift term {q} e_{uk:?} is not reduced")));
            }
            let col = self.column(level, &uk)?;
            f.add_scaled(-c, &q, &col);
            lift.add(uk, c, q);
        }
        if !f.is_zero() {
            return Err(Error::ReductionFailure(format!(
                "p_{level} e_{origin:?}: remainder with {} terms",
                f.0.len()
            )));
        }
        Ok(lift)
    }

    /// `p_level e_v` as `(word, coefficient)` pairs sorted by word.
    pub fn p(&mut self, level: usize, v: &[u8]) -> Result<Vec<(Vec<u8>, SymEntry)>> {
        Ok(group(&self.p_elem(level, v)?).into_iter().collect())
    }

    /// `d'_d` between the spans of `W_d` and `W_{d-1}`.
    pub fn differential(&mut self, d: usize) -> Result<SymbolicMatrix> {
        if d == 0 {
            return Err(Error::InvalidArgument("differentials start at d = 1".into()));
        }
        let rows = language_words(d - 1);
        let index: HashMap<&Vec<u8>, usize> = rows.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let srcs = language_words(d);
        let mut columns = Vec::with_capacity(srcs.len());
        for w in &srcs {
            let col = self.column(d, w)?;
            let mut out = Vec::new();
            for (t, entry) in group(&col) {
                let r = *index.get(&t).ok_or_else(|| {
                    Error::InternalInvariant(format!("d' e_{w:?} leaves the span of W: {t:?}"))
                })?;
                out.push((r, entry));
            }
            out.sort_by_key(|(r, _)| *r);
            columns.push(out);
        }
        Ok(SymbolicMatrix {
            m: 4,
            source: srcs.into_iter().map(BasisLabel::Word).collect(),
            target: rows.into_iter().map(BasisLabel::Word).collect(),
            columns,
        })
    }
}

fn group(e: &Elem) -> BTreeMap<Vec<u8>, SymEntry> {
    let mut out: BTreeMap<Vec<u8>, SymEntry> = BTreeMap::new();
    for ((w, _), (c, m)) in &e.0 {
        out.entry(w.clone()).or_default().push(*c, m.clone());
    }
    out
}

/// `d'_1, ..., d'_D` on the facet `a_2 = 2a_1`.
pub fn nonci_symbolic(max_d: usize) -> Result<Vec<SymbolicMatrix>> {
    let mut b = NonCiBuilder::new();
    (1..=max_d).map(|d| b.differential(d)).collect()
}

pub fn nonci_resolution(s: &NumericalSemigroup, max_d: usize) -> Result<ChainComplex> {
    let u = require(s, FaceTag::NonCiFacet)?;
    specialize(&nonci_symbolic(max_d)?, u, s)
}

/// The symbolic matrices for the face of `s`, relabeled to match it.
pub fn face_symbolic(s: &NumericalSemigroup, max_d: usize) -> Result<Vec<SymbolicMatrix>> {
    let class = classify_face_m4(s)?;
    let mats = match class.tag {
        FaceTag::Interior => (1..=max_d)
            .map(|d| crate::apery_resolution::symbolic_differential(4, d))
            .collect::<Result<Vec<_>>>()?,
        FaceTag::Ray => (1..=max_d).map(ray_symbolic).collect(),
        FaceTag::CiFacet => (1..=max_d).map(ci_symbolic).collect(),
        FaceTag::NonCiFacet => nonci_symbolic(max_d)?,
    };
    Ok(mats
        .into_iter()
        .map(|m| if class.unit == 1 { m } else { m.relabel(class.unit) })
        .collect())
}

/// The minimal resolution for any multiplicity 4 semigroup (the infinite
/// Apéry resolution in the interior).
pub fn minimal_resolution_m4(s: &NumericalSemigroup, max_d: usize) -> Result<ChainComplex> {
    let class = classify_face_m4(s)?;
    match class.tag {
        FaceTag::Interior => apery_complex(s, max_d),
        FaceTag::Ray => ray_resolution(s, max_d),
        FaceTag::CiFacet => ci_resolution(s, max_d),
        FaceTag::NonCiFacet => nonci_resolution(s, max_d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn classification() {
        let c = |g: &[u64]| classify_face_m4(&ns(g)).unwrap();
        assert_eq!(c(&[4, 5, 7]), FaceClassM4 { tag: FaceTag::NonCiFacet, unit: 1 });
        assert_eq!(c(&[4, 5, 6]), FaceClassM4 { tag: FaceTag::CiFacet, unit: 1 });
        assert_eq!(c(&[4, 5]), FaceClassM4 { tag: FaceTag::Ray, unit: 1 });
        assert_eq!(c(&[4, 7]), FaceClassM4 { tag: FaceTag::Ray, unit: 3 });
        assert_eq!(c(&[4, 5, 6, 7]).tag, FaceTag::Interior);
        // a_2 = 14 = 2 a_3 and a_1 = 13 = a_2 + a_3 are the mirror faces
        assert_eq!(c(&[4, 7, 9]), FaceClassM4 { tag: FaceTag::NonCiFacet, unit: 3 });
        assert_eq!(c(&[4, 6, 7]), FaceClassM4 { tag: FaceTag::CiFacet, unit: 3 });
        assert!(matches!(classify_face_m4(&ns(&[3, 4])), Err(Error::NotMultiplicityFour(3))));
        assert!(matches!(
            ray_resolution(&ns(&[4, 5, 7]), 2),
            Err(Error::WrongFace { expected: "ray", .. })
        ));
    }

    #[test]
    fn words() {
        assert_eq!(language_words(1), vec![vec![0], vec![1], vec![3]]);
        let w2: Vec<String> = language_words(2)
            .iter()
            .map(|w| w.iter().map(|l| l.to_string()).collect())
            .collect();
        assert_eq!(w2, ["01", "03", "12", "13", "31", "33"]);
        for d in 1..8 {
            assert_eq!(language_words(d).len(), 3 << (d - 1));
        }
    }

    #[test]
    fn ray_matrices() {
        let m = ray_symbolic(2);
        assert_eq!(m.entry(0, 1).unwrap().to_string(), "-y^b_13");
        assert_eq!(m.entry(1, 1).unwrap().to_string(), "x_1^3");
        let c = ray_resolution(&ns(&[4, 9]), 4).unwrap();
        assert!(c.is_complex().unwrap());
        // b_13 = a_1 - 1 = 8
        assert_eq!(c.differential(2).entry(0, 1).homogeneous_degree(), Some(32));
    }

    #[test]
    fn ci_matrices() {
        let ranks: Vec<usize> = (1..=4).map(|d| ci_symbolic(d).source.len()).collect();
        assert_eq!(ranks, vec![3, 5, 7, 9]);
        for g in [&[4, 5, 6][..], &[4, 6, 7]] {
            let c = ci_resolution(&ns(g), 6).unwrap();
            assert!(c.is_complex().unwrap());
            assert!(c.is_minimal());
        }
    }

    #[test]
    fn p2_values() {
        let mut b = NonCiBuilder::new();
        let show = |v: Vec<(Vec<u8>, SymEntry)>| -> Vec<String> {
            v.into_iter()
                .map(|(w, e)| format!("{}:{}", w.iter().map(|l| l.to_string()).collect::<String>(), e))
                .collect()
        };
        assert_eq!(show(b.p(2, &[2, 1]).unwrap()), ["12:1"]);
        assert!(b.p(2, &[1, 1]).unwrap().is_empty());
        assert!(b.p(2, &[2, 3]).unwrap().is_empty());
        assert_eq!(show(b.p(2, &[2, 2]).unwrap()), ["13:y^b_12"]);
        assert_eq!(show(b.p(2, &[0, 2]).unwrap()), ["01:x_1"]);
        // x_1(e_31 - e_13) also lifts, but x_1 e_13 is not reduced; the two
        // differ by the cycle y^{b_13} e_01 + x_1 e_13
        assert_eq!(show(b.p(2, &[3, 2]).unwrap()), ["01:y^b_13", "31:x_1"]);
        let s = ns(&[4, 5, 7]);
        let d2 = substitute(&b.differential(2).unwrap(), &s).unwrap();
        let (c01, c13) = (0, 3);
        for row in 0..3 {
            let v = d2.entry(row, c01).mul(&crate::ring::RingElement::monomial(8))
                .add(&d2.entry(row, c13).mul(&crate::ring::RingElement::monomial(5)));
            assert!(v.is_zero());
        }
    }

    #[test]
    fn nonci_second_matrix() {
        let m = NonCiBuilder::new().differential(2).unwrap();
        let col = 2; // e_12
        assert_eq!(m.entry(1, col).unwrap().to_string(), "x_1^2");
        assert_eq!(m.entry(2, col).unwrap().to_string(), "-y^b_12");
        // e_33 -> -x_1 y^{b_33} e_1 + x_3 e_3
        assert_eq!(m.entry(1, 5).unwrap().to_string(), "-x_1y^b_33");
    }

    #[test]
    fn nonci_resolutions() {
        for g in [&[4, 5, 7][..], &[4, 13, 31], &[4, 7, 9]] {
            let c = nonci_resolution(&ns(g), 5).unwrap();
            assert!(c.is_complex().unwrap(), "{g:?}");
            assert_eq!(
                c.betti_via_tensor(&Rationals).unwrap().values,
                vec![1, 3, 6, 12, 24],
                "{g:?}"
            );
        }
        assert!(matches!(
            specialize(&nonci_symbolic(2).unwrap(), 1, &ns(&[4, 5, 6])),
            Err(Error::FaceMismatch { .. })
        ));
    }
}
