//! S-graded free modules over `R = k[S]`, differentials between them, and
//! the checks run on every constructed resolution: `d^2 = 0`, Betti numbers
//! of the complex tensored with `k`, and homology in bounded degrees.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, SparseVec};
use crate::ring::RingElement;
use crate::semigroup::NumericalSemigroup;

/// Label of a free-module basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    /// A word over `Z_m`; the empty word labels the generator of `F_0 = R`.
    Word(Vec<u8>),
    /// A multiset of residues, stored sorted.
    Multiset(Vec<u8>),
    /// An anonymous generator (used by the brute-force resolutions).
    Generator(usize),
}

impl BasisLabel {
    /// S-degree: the sum of the variable degrees of the letters. Anonymous
    /// generators have no intrinsic degree.
    pub fn degree(&self, s: &NumericalSemigroup) -> Option<u64> {
        match self {
            BasisLabel::Word(w) | BasisLabel::Multiset(w) => {
                Some(w.iter().map(|&l| s.variable_degree(l as usize)).sum())
            }
            BasisLabel::Generator(_) => None,
        }
    }

    /// Applies `letter -> u * letter mod m`.
    pub fn relabel(&self, u: usize, m: usize) -> BasisLabel {
        let map = |w: &[u8]| -> Vec<u8> { w.iter().map(|&l| ((l as usize * u) % m) as u8).collect() };
        match self {
            BasisLabel::Word(w) => BasisLabel::Word(map(w)),
            BasisLabel::Multiset(w) => {
                let mut v = map(w);
                v.sort_unstable();
                BasisLabel::Multiset(v)
            }
            BasisLabel::Generator(g) => BasisLabel::Generator(*g),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Word(w) | BasisLabel::Multiset(w) if w.is_empty() => f.write_str("()"),
            BasisLabel::Word(w) | BasisLabel::Multiset(w) => {
                for l in w {
                    write!(f, "{l}")?;
                }
                Ok(())
            }
            BasisLabel::Generator(g) => write!(f, "g{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: BasisLabel,
    pub degree: u64,
}

/// A map `F_d -> F_{d-1}` of free S-graded `R`-modules, stored by columns.
///
/// Every nonzero entry is a single term `c t^n` with `n = deg(column) -
/// deg(row)`; this is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialMatrix {
    source: Vec<BasisElement>,
    target: Vec<BasisElement>,
    columns: Vec<Vec<(usize, RingElement)>>,
}

impl DifferentialMatrix {
    /// Entries of a column may repeat a row; repeated entries are summed.
    pub fn new(
        source: Vec<BasisElement>,
        target: Vec<BasisElement>,
        columns: Vec<Vec<(usize, RingElement)>>,
    ) -> Result<Self> {
        if columns.len() != source.len() {
            return Err(Error::InternalInvariant(format!(
                "{} columns for {} source basis elements",
                columns.len(),
                source.len()
            )));
        }
        let mut merged = Vec::with_capacity(columns.len());
        for (c, col) in columns.into_iter().enumerate() {
            let mut cells: BTreeMap<usize, RingElement> = BTreeMap::new();
            for (r, e) in col {
                if r >= target.len() {
                    return Err(Error::InternalInvariant(format!("row {r} out of range")));
                }
                let slot = cells.entry(r).or_default();
                *slot = slot.add(&e);
            }
            let mut out = Vec::with_capacity(cells.len());
            for (r, e) in cells {
                if e.is_zero() {
                    continue;
                }
                let expected = source[c].degree.checked_sub(target[r].degree);
                if expected.is_none() || e.homogeneous_degree() != expected {
                    return Err(Error::FaceMismatch {
                        row: r,
                        col: c,
                        detail: format!(
                            "entry {e} between degrees {} and {}",
                            source[c].degree, target[r].degree
                        ),
                    });
                }
                out.push((r, e));
            }
            merged.push(out);
        }
        Ok(DifferentialMatrix {
            source,
            target,
            columns: merged,
        })
    }

    pub fn source(&self) -> &[BasisElement] {
        &self.source
    }

    pub fn target(&self) -> &[BasisElement] {
        &self.target
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, RingElement)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, RingElement)>] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> RingElement {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, e)| e.clone())
            .unwrap_or_default()
    }

    /// Scalar coefficient of a (homogeneous) entry.
    fn coeff(e: &RingElement) -> &BigRational {
        &e.terms()[0].1
    }

    /// Entries of degree zero, i.e. nonzero constants.
    pub fn unit_entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| {
            col.iter()
                .filter(|(_, e)| e.homogeneous_degree() == Some(0))
                .map(move |(r, e)| (*r, c, Self::coeff(e)))
        })
    }

    pub fn has_unit_entries(&self) -> bool {
        self.unit_entries().next().is_some()
    }

    /// Rank of the matrix tensored with `k` (only constant entries survive).
    pub fn rank_mod_maximal_ideal<F: Field>(&self, field: &F) -> Result<usize> {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.ncols()];
        for (r, c, v) in self.unit_entries() {
            cols[c].push((r, field.from_rational(v)?));
        }
        let cols = cols.into_iter().map(|v| linalg::normalize(field, v));
        Ok(linalg::rank(field, cols))
    }

    /// `self * rhs` in `R` (apply `rhs` first). Fails if the bases do not match.
    pub fn compose(&self, rhs: &DifferentialMatrix) -> Result<DifferentialMatrix> {
        if rhs.target != self.source {
            return Err(Error::InternalInvariant(
                "composed matrices have different middle bases".into(),
            ));
        }
        let mut cols = Vec::with_capacity(rhs.ncols());
        for col in &rhs.columns {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            let mut deg: BTreeMap<usize, u64> = BTreeMap::new();
            for (mid, e) in col {
                let (ne, ce) = &e.terms()[0];
                for (r, f) in &self.columns[*mid] {
                    let (nf, cf) = &f.terms()[0];
                    *acc.entry(*r).or_insert_with(BigRational::zero) += ce * cf;
                    deg.insert(*r, ne + nf);
                }
            }
            cols.push(
                acc.into_iter()
                    .map(|(r, c)| (r, RingElement::term(deg[&r], c)))
                    .collect(),
            );
        }
        DifferentialMatrix::new(rhs.source.clone(), self.target.clone(), cols)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

/// The differentials `d_1, ..., d_D` of a complex of free modules over
/// `k[S]`, ending in `F_0 = R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub semigroup: NumericalSemigroup,
    /// `differentials[d - 1]` is `d_d : F_d -> F_{d-1}`.
    pub differentials: Vec<DifferentialMatrix>,
}

impl ChainComplex {
    pub fn new(semigroup: NumericalSemigroup, differentials: Vec<DifferentialMatrix>) -> Result<Self> {
        for w in differentials.windows(2) {
            if w[0].source != w[1].target {
                return Err(Error::InternalInvariant(
                    "consecutive differentials do not share a basis".into(),
                ));
            }
        }
        Ok(ChainComplex {
            semigroup,
            differentials,
        })
    }

    /// Highest `d` with `d_d` available.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn differential(&self, d: usize) -> &DifferentialMatrix {
        &self.differentials[d - 1]
    }

    pub fn rank(&self, d: usize) -> usize {
        if d == 0 {
            self.differentials.first().map_or(1, |m| m.nrows())
        } else {
            self.differentials[d - 1].ncols()
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.length()).map(|d| self.rank(d)).collect()
    }

    /// Whether `d_{d-1} d_d = 0` for every `2 <= d <= length`.
    pub fn is_complex(&self) -> Result<bool> {
        for d in 2..=self.length() {
            if !self.differential(d - 1).compose(self.differential(d))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|m| !m.has_unit_entries())
    }

    /// `beta_d = rank F_d - rank(d_d (x) k) - rank(d_{d+1} (x) k)` for
    /// `0 <= d < length`.
    pub fn betti_via_tensor<F: Field>(&self, field: &F) -> Result<BettiTable> {
        let unit_ranks: Vec<usize> = self
            .differentials
            .iter()
            .map(|m| m.rank_mod_maximal_ideal(field))
            .collect::<Result<_>>()?;
        let ur = |d: usize| if d == 0 { 0 } else { unit_ranks[d - 1] };
        let values = (0..self.length())
            .map(|d| (self.rank(d) - ur(d) - ur(d + 1)) as u64)
            .collect::<Vec<_>>();
        Ok(BettiTable {
            values,
            homological_bound: self.length().saturating_sub(1),
            degree_bound: None,
        })
    }

    /// Per-degree homology at `F_d` for degrees `0..=bound`; at `d = 0` this
    /// is the cokernel of `d_1`. Needs `d_{d+1}` in the complex.
    pub fn truncated_homology<F: Field>(&self, field: &F, d: usize, bound: u64) -> Result<Vec<usize>> {
        if d + 1 > self.length() {
            return Err(Error::InvalidArgument(format!(
                "homology at F_{d} needs the differential d_{}",
                d + 1
            )));
        }
        let s = &self.semigroup;
        let degrees_at = |k: usize| -> Vec<u64> {
            if k == 0 {
                vec![0]
            } else {
                self.differential(k).source.iter().map(|b| b.degree).collect()
            }
        };
        let (lower, here, upper) = (
            if d == 0 { Vec::new() } else { degrees_at(d - 1) },
            degrees_at(d),
            degrees_at(d + 1),
        );
        (0..=bound)
            .into_par_iter()
            .map(|n| {
                let piece = |degs: &[u64]| -> Vec<Option<usize>> {
                    let mut k = 0;
                    degs.iter()
                        .map(|&g| {
                            (g <= n && s.contains_u64(n - g)).then(|| {
                                k += 1;
                                k - 1
                            })
                        })
                        .collect()
                };
                let (lo, mid, hi) = (piece(&lower), piece(&here), piece(&upper));
                let dim = mid.iter().flatten().count();
                let rank_down = if d == 0 {
                    0
                } else {
                    restricted_rank(field, self.differential(d), &mid, &lo)?
                };
                let rank_up = restricted_rank(field, self.differential(d + 1), &hi, &mid)?;
                Ok(dim - rank_down - rank_up)
            })
            .collect()
    }
}

/// Rank of a differential restricted to one graded piece; `src` / `tgt` map
/// basis positions to positions inside the piece.
fn restricted_rank<F: Field>(
    field: &F,
    m: &DifferentialMatrix,
    src: &[Option<usize>],
    tgt: &[Option<usize>],
) -> Result<usize> {
    let mut cols = Vec::new();
    for (c, slot) in src.iter().enumerate() {
        if slot.is_none() {
            continue;
        }
        let mut v = Vec::new();
        for (r, e) in m.column(c) {
            let Some(i) = tgt[*r] else {
                return Err(Error::InternalInvariant(
                    "image leaves the graded piece".into(),
                ));
            };
            v.push((i, field.from_rational(DifferentialMatrix::coeff(e))?));
        }
        cols.push(linalg::normalize(field, v));
    }
    Ok(linalg::rank(field, cols))
}

/// Betti numbers `beta_0, ..., beta_D` with the bounds they were computed
/// under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub values: Vec<u64>,
    pub homological_bound: usize,
    /// Degree bound of a brute-force computation, if any.
    pub degree_bound: Option<u64>,
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(u64::to_string).collect();
        f.write_str(&v.join(" "))
    }
}
