//! Matrices whose entries keep the `b_ij` as formal exponents of `y`, so one
//! matrix describes a whole face of the Kunz cone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{BasisElement, BasisLabel, DifferentialMatrix};
use crate::error::{Error, Result};
use crate::kunz::{b_matrix, BMatrix};
use crate::ring::{rat, RingElement};
use crate::semigroup::NumericalSemigroup;

/// `y^{c + sum b_ij} prod x_i^{e_i}`. `x[0]` holds the constant part `c` of
/// the `y` exponent; `b` is a multiset of unordered pairs `i <= j` with both
/// indices nonzero (`b_0j = 1` is folded into `c`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymMonomial {
    pub x: Vec<u32>,
    #[serde(with = "pair_map")]
    pub b: BTreeMap<(u8, u8), u32>,
}

/// JSON object keys must be strings, so `b` travels as `[i, j, e]` triples.
mod pair_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<(u8, u8), u32>, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(u8, u8, u32)> = map.iter().map(|(&(i, j), &e)| (i, j, e)).collect();
        v.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<(u8, u8), u32>, D::Error> {
        let v: Vec<(u8, u8, u32)> = Vec::deserialize(de)?;
        Ok(v.into_iter().map(|(i, j, e)| ((i, j), e)).collect())
    }
}

impl SymMonomial {
    pub fn one(m: usize) -> Self {
        SymMonomial {
            x: vec![0; m],
            b: BTreeMap::new(),
        }
    }

    /// `x_i^e`, with `x_0 = y`.
    pub fn var(m: usize, i: usize, e: u32) -> Self {
        let mut s = SymMonomial::one(m);
        s.x[i % m] += e;
        s
    }

    /// `y^{b_ij}`; a pair with a zero index gives `y`.
    pub fn y_b(m: usize, i: usize, j: usize) -> Self {
        let mut s = SymMonomial::one(m);
        s.add_b(i % m, j % m, 1);
        s
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn add_b(&mut self, i: usize, j: usize, e: u32) {
        if e == 0 {
            return;
        }
        if i == 0 || j == 0 {
            self.x[0] += e;
        } else {
            let key = (i.min(j) as u8, i.max(j) as u8);
            *self.b.entry(key).or_insert(0) += e;
        }
    }

    pub fn times(&self, other: &SymMonomial) -> SymMonomial {
        let mut out = self.clone();
        for (a, b) in out.x.iter_mut().zip(&other.x) {
            *a += b;
        }
        for (&(i, j), &e) in &other.b {
            *out.b.entry((i, j)).or_insert(0) += e;
        }
        out
    }

    /// Degree after substituting the Apéry set and `b` values of `s`.
    pub fn degree(&self, s: &NumericalSemigroup, b: &BMatrix) -> u64 {
        let m = s.multiplicity();
        let xs: u64 = self
            .x
            .iter()
            .enumerate()
            .map(|(i, &e)| e as u64 * s.variable_degree(i))
            .sum();
        let bs: u64 = self
            .b
            .iter()
            .map(|(&(i, j), &e)| e as u64 * b.get(i as usize, j as usize))
            .sum();
        xs + m * bs
    }

    /// Applies the unit relabeling `i -> u i mod m` to every index.
    pub fn relabel(&self, u: usize) -> SymMonomial {
        let m = self.m();
        let mut out = SymMonomial::one(m);
        out.x[0] = self.x[0];
        for i in 1..m {
            out.x[(u * i) % m] += self.x[i];
        }
        for (&(i, j), &e) in &self.b {
            out.add_b((u * i as usize) % m, (u * j as usize) % m, e);
        }
        out
    }

    fn y_exponent(&self, latex: bool) -> Option<String> {
        let mut parts: Vec<String> = Vec::new();
        for (&(i, j), &e) in &self.b {
            let sym = if latex {
                format!("b_{{{i}{j}}}")
            } else {
                format!("b_{i}{j}")
            };
            parts.push(if e == 1 { sym } else { format!("{e}{sym}") });
        }
        if self.x[0] > 0 {
            parts.push(self.x[0].to_string());
        }
        match parts.len() {
            0 => None,
            1 if self.b.is_empty() && self.x[0] == 1 => Some(String::new()),
            _ => Some(parts.join("+")),
        }
    }

    fn render(&self, latex: bool) -> String {
        let mut out = String::new();
        for i in 1..self.m() {
            match self.x[i] {
                0 => {}
                1 => out.push_str(&format!("x_{i}")),
                e if e < 10 || !latex => out.push_str(&format!("x_{i}^{e}")),
                e => out.push_str(&format!("x_{i}^{{{e}}}")),
            }
        }
        match self.y_exponent(latex) {
            None => {}
            Some(e) if e.is_empty() => out.push('y'),
            Some(e) if latex && (e.len() > 1) => out.push_str(&format!("y^{{{e}}}")),
            Some(e) => out.push_str(&format!("y^{e}")),
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    /// Folds every `b_ij` into the numeric `y` exponent.
    pub fn evaluate(&self, b: &BMatrix) -> SymMonomial {
        let mut out = SymMonomial {
            x: self.x.clone(),
            b: BTreeMap::new(),
        };
        for (&(i, j), &e) in &self.b {
            out.x[0] += e * b.get(i as usize, j as usize) as u32;
        }
        out
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// A signed sum of symbolic monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymEntry {
    pub terms: Vec<(i64, SymMonomial)>,
}

impl SymEntry {
    pub fn single(c: i64, mon: SymMonomial) -> Self {
        SymEntry {
            terms: vec![(c, mon)],
        }
    }

    /// Merges equal monomials and drops zero coefficients.
    pub fn push(&mut self, c: i64, mon: SymMonomial) {
        if let Some(slot) = self.terms.iter_mut().find(|(_, t)| *t == mon) {
            slot.0 += c;
        } else {
            self.terms.push((c, mon));
        }
        self.terms.retain(|(c, _)| *c != 0);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn render(&self, latex: bool) -> String {
        let mut out = String::new();
        for (k, (c, mon)) in self.terms.iter().enumerate() {
            let sign = match (k, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(sign);
            let body = mon.render(latex);
            let a = c.unsigned_abs();
            if a != 1 {
                out.push_str(&a.to_string());
                if body != "1" {
                    out.push_str(&body);
                }
            } else {
                out.push_str(&body);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for SymEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// A matrix of [`SymEntry`] values between labeled bases, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicMatrix {
    pub m: usize,
    pub source: Vec<BasisLabel>,
    pub target: Vec<BasisLabel>,
    pub columns: Vec<Vec<(usize, SymEntry)>>,
}

impl SymbolicMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Option<&SymEntry> {
        self.columns[col].iter().find(|(r, _)| *r == row).map(|(_, e)| e)
    }

    /// The same matrix with numeric `y` exponents for one semigroup.
    pub fn evaluate(&self, b: &BMatrix) -> SymbolicMatrix {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, e)| {
                        let mut out = SymEntry::default();
                        for (c, t) in &e.terms {
                            out.push(*c, t.evaluate(b));
                        }
                        (*r, out)
                    })
                    .filter(|(_, e)| !e.is_zero())
                    .collect()
            })
            .collect();
        SymbolicMatrix {
            m: self.m,
            source: self.source.clone(),
            target: self.target.clone(),
            columns,
        }
    }

    pub fn relabel(&self, u: usize) -> SymbolicMatrix {
        SymbolicMatrix {
            m: self.m,
            source: self.source.iter().map(|l| l.relabel(u, self.m)).collect(),
            target: self.target.iter().map(|l| l.relabel(u, self.m)).collect(),
            columns: self
                .columns
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, e)| {
                            let terms = e.terms.iter().map(|(c, t)| (*c, t.relabel(u))).collect();
                            (*r, SymEntry { terms })
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Replaces every `b_ij` and `x_i` by its value for `s`. Every term must
/// land in degree `deg(column) - deg(row)`.
pub fn substitute(mat: &SymbolicMatrix, s: &NumericalSemigroup) -> Result<DifferentialMatrix> {
    if mat.m != s.m() {
        return Err(Error::MultiplicityMismatch {
            expected: mat.m,
            got: s.m(),
        });
    }
    let b = b_matrix(s)?;
    let element = |l: &BasisLabel| -> Result<BasisElement> {
        let degree = l
            .degree(s)
            .ok_or_else(|| Error::InvalidArgument("symbolic basis labels need a degree".into()))?;
        Ok(BasisElement {
            label: l.clone(),
            degree,
        })
    };
    let source = mat.source.iter().map(element).collect::<Result<Vec<_>>>()?;
    let target = mat.target.iter().map(element).collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(mat.columns.len());
    for (c, col) in mat.columns.iter().enumerate() {
        let mut out = Vec::with_capacity(col.len());
        for (r, e) in col {
            let want = source[c].degree.checked_sub(target[*r].degree);
            for (coeff, mon) in &e.terms {
                let got = mon.degree(s, &b);
                if Some(got) != want {
                    return Err(Error::FaceMismatch {
                        row: *r,
                        col: c,
                        detail: format!(
                            "{mon} has degree {got} for {s}, expected {}",
                            source[c].degree as i128 - target[*r].degree as i128
                        ),
                    });
                }
                out.push((*r, RingElement::term(got, rat(*coeff))));
            }
        }
        columns.push(out);
    }
    DifferentialMatrix::new(source, target, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut mon = SymMonomial::y_b(4, 1, 3);
        mon.add_b(3, 3, 1);
        assert_eq!(mon.to_latex(), "y^{b_{13}+b_{33}}");
        assert_eq!(mon.to_string(), "y^b_13+b_33");
        let mon = SymMonomial::var(4, 1, 1).times(&SymMonomial::y_b(4, 3, 3));
        assert_eq!(mon.to_latex(), "x_1y^{b_{33}}");
        assert_eq!(SymMonomial::y_b(4, 0, 2).to_latex(), "y");
        assert_eq!(SymMonomial::var(4, 1, 2).to_latex(), "x_1^2");
        let e = SymEntry {
            terms: vec![(1, SymMonomial::var(4, 1, 3)), (-1, SymMonomial::var(4, 3, 1).times(&SymMonomial::y_b(4, 1, 2)))],
        };
        assert_eq!(e.to_latex(), "x_1^3 - x_3y^{b_{12}}");
    }

    #[test]
    fn relabel_swaps_one_and_three() {
        let mon = SymMonomial::var(4, 1, 2).times(&SymMonomial::y_b(4, 1, 2));
        let r = mon.relabel(3);
        assert_eq!(r.x, vec![0, 0, 0, 2]);
        assert_eq!(r.b.get(&(2, 3)), Some(&1));
        assert_eq!(r.relabel(3), mon);
    }

    #[test]
    fn substitution_checks_degrees() {
        let s = NumericalSemigroup::from_generators(&[4, 5, 7]).unwrap();
        // e_13 -> x_3 e_1 - y^{b_13} e_0
        let mat = SymbolicMatrix {
            m: 4,
            source: vec![BasisLabel::Word(vec![1, 3])],
            target: vec![BasisLabel::Word(vec![0]), BasisLabel::Word(vec![1])],
            columns: vec![vec![
                (0, SymEntry::single(-1, SymMonomial::y_b(4, 1, 3))),
                (1, SymEntry::single(1, SymMonomial::var(4, 3, 1))),
            ]],
        };
        let d = substitute(&mat, &s).unwrap();
        assert_eq!(d.entry(0, 0), RingElement::term(8, rat(-1)));
        assert_eq!(d.entry(1, 0), RingElement::term(7, rat(1)));
        let mut bad = mat.clone();
        bad.columns[0][1].1 = SymEntry::single(1, SymMonomial::var(4, 1, 1));
        assert!(matches!(substitute(&bad, &s), Err(Error::FaceMismatch { .. })));
        let t = NumericalSemigroup::from_generators(&[3, 4, 5]).unwrap();
        assert!(matches!(substitute(&mat, &t), Err(Error::MultiplicityMismatch { .. })));
    }
}
