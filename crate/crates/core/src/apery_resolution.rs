//! The infinite Apéry resolution of `k` over `k[S]`.
//!
//! `F_d` has basis `e_w` for words `w = (w_1, ..., w_d)` over `Z_m` with
//! `w_i != 0` for `i > 1`, and
//!
//! ```text
//! d(e_w) = x_{w_d} e_{w_1..w_{d-1}} + sum_{i<d} (-1)^{d-i} y^{b_{w_i w_{i+1}}} e_{tau_i w}
//! ```
//!
//! where `tau_i` adds letters `i` and `i+1`. A merged letter equal to 0 past
//! the first position kills the term.

use rayon::prelude::*;

use crate::complex::{BasisElement, BasisLabel, BettiTable, ChainComplex, DifferentialMatrix};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kunz::{b_matrix, BMatrix};
use crate::linalg;
use crate::ring::{rat, RingElement};
use crate::semigroup::NumericalSemigroup;
use crate::symbolic::{SymEntry, SymMonomial, SymbolicMatrix};

/// `m (m-1)^{d-1}` for `d >= 1`, and 1 for `d = 0`.
pub fn rank(m: usize, d: usize) -> usize {
    if d == 0 {
        1
    } else {
        m * (m - 1).pow(d as u32 - 1)
    }
}

/// Basis words of `F_d` in lexicographic order.
pub fn word_basis(m: usize, d: usize) -> Vec<Vec<u8>> {
    (0..rank(m, d)).map(|k| word_at(m, d, k)).collect()
}

/// The `k`-th word of `word_basis(m, d)`.
pub fn word_at(m: usize, d: usize, mut k: usize) -> Vec<u8> {
    let mut w = vec![0u8; d];
    for i in (1..d).rev() {
        w[i] = (k % (m - 1) + 1) as u8;
        k /= m - 1;
    }
    if d > 0 {
        w[0] = k as u8;
    }
    w
}

/// Position of a basis word in `word_basis(m, w.len())`.
pub fn word_index(m: usize, w: &[u8]) -> usize {
    let mut k = 0;
    for (i, &l) in w.iter().enumerate() {
        if i == 0 {
            k = l as usize;
        } else {
            debug_assert!(l != 0);
            k = k * (m - 1) + (l as usize - 1);
        }
    }
    k
}

/// The terms of `d(e_w)`: `(target word, sign, x letter or y^{b_ij} pair)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coeff {
    X(u8),
    YB(u8, u8),
}

pub(crate) fn boundary_terms(m: usize, w: &[u8]) -> Vec<(Vec<u8>, i64, Coeff)> {
    let d = w.len();
    let mut out = Vec::with_capacity(d);
    out.push((w[..d - 1].to_vec(), 1, Coeff::X(w[d - 1])));
    for i in 0..d.saturating_sub(1) {
        let merged = ((w[i] as usize + w[i + 1] as usize) % m) as u8;
        if merged == 0 && i > 0 {
            continue;
        }
        let mut t = Vec::with_capacity(d - 1);
        t.extend_from_slice(&w[..i]);
        t.push(merged);
        t.extend_from_slice(&w[i + 2..]);
        // (-1)^{d-i} with 1-based position i+1
        let sign = if (d - i - 1).is_multiple_of(2) { 1 } else { -1 };
        out.push((t, sign, Coeff::YB(w[i], w[i + 1])));
    }
    out
}

fn word_degree(s: &NumericalSemigroup, w: &[u8]) -> u64 {
    w.iter().map(|&l| s.variable_degree(l as usize)).sum()
}

fn coeff_degree(s: &NumericalSemigroup, b: &BMatrix, c: Coeff) -> u64 {
    match c {
        Coeff::X(l) => s.variable_degree(l as usize),
        Coeff::YB(i, j) => s.multiplicity() * b.get(i as usize, j as usize),
    }
}

fn basis(s: &NumericalSemigroup, d: usize) -> Vec<BasisElement> {
    word_basis(s.m(), d)
        .into_iter()
        .map(|w| BasisElement {
            degree: word_degree(s, &w),
            label: BasisLabel::Word(w),
        })
        .collect()
}

/// `d_d : F_d -> F_{d-1}`.
pub fn differential(s: &NumericalSemigroup, d: usize) -> Result<DifferentialMatrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("differentials start at d = 1".into()));
    }
    let m = s.m();
    let b = b_matrix(s)?;
    let columns = (0..rank(m, d))
        .into_par_iter()
        .map(|k| {
            let w = word_at(m, d, k);
            boundary_terms(m, &w)
                .into_iter()
                .map(|(t, sign, c)| {
                    (
                        word_index(m, &t),
                        RingElement::term(coeff_degree(s, &b, c), rat(sign)),
                    )
                })
                .collect()
        })
        .collect();
    DifferentialMatrix::new(basis(s, d), basis(s, d - 1), columns)
}

fn sym_coeff(m: usize, c: Coeff) -> SymMonomial {
    match c {
        Coeff::X(l) => SymMonomial::var(m, l as usize, 1),
        Coeff::YB(i, j) => SymMonomial::y_b(m, i as usize, j as usize),
    }
}

/// The same matrix with `b_ij` kept as symbols; valid for every semigroup of
/// multiplicity `m`.
pub fn symbolic_differential(m: usize, d: usize) -> Result<SymbolicMatrix> {
    if d == 0 || m < 2 {
        return Err(Error::InvalidArgument("need m >= 2 and d >= 1".into()));
    }
    let labels = |d: usize| word_basis(m, d).into_iter().map(BasisLabel::Word).collect();
    let columns = word_basis(m, d)
        .iter()
        .map(|w| {
            boundary_terms(m, w)
                .into_iter()
                .map(|(t, sign, c)| (word_index(m, &t), SymEntry::single(sign, sym_coeff(m, c))))
                .collect()
        })
        .collect();
    Ok(SymbolicMatrix {
        m,
        source: labels(d),
        target: labels(d - 1),
        columns,
    })
}

/// `d_1, ..., d_D` as a complex.
pub fn apery_complex(s: &NumericalSemigroup, max_d: usize) -> Result<ChainComplex> {
    let diffs = (1..=max_d)
        .into_par_iter()
        .map(|d| differential(s, d))
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(s.clone(), diffs)
}

/// Whether `d_{d-1} d_d = 0` in `R` for `2 <= d <= D`.
pub fn check_complex(s: &NumericalSemigroup, max_d: usize) -> Result<bool> {
    apery_complex(s, max_d)?.is_complex()
}

/// Constant (`b = 0`) entries of `d_d` as `(row, col, sign)`.
fn unit_entries(m: usize, b: &BMatrix, d: usize) -> Vec<(usize, usize, i64)> {
    (0..rank(m, d))
        .into_par_iter()
        .flat_map_iter(|k| {
            let w = word_at(m, d, k);
            boundary_terms(m, &w)
                .into_iter()
                .filter_map(|(t, sign, c)| match c {
                    Coeff::YB(i, j) if b.get(i as usize, j as usize) == 0 => {
                        Some((word_index(m, &t), k, sign))
                    }
                    _ => None,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Rank of `d_d (x) k`.
pub fn unit_rank<F: Field>(field: &F, s: &NumericalSemigroup, d: usize) -> Result<usize> {
    if d == 0 {
        return Ok(0);
    }
    let m = s.m();
    let b = b_matrix(s)?;
    let mut cols: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); rank(m, d)];
    for (r, c, v) in unit_entries(m, &b, d) {
        cols[c].push((r, field.from_i64(v)));
    }
    Ok(linalg::rank(
        field,
        cols.into_iter()
            .filter(|c| !c.is_empty())
            .map(|c| linalg::normalize(field, c)),
    ))
}

/// `beta_0, ..., beta_D` of `k` over `R`, read off the infinite Apéry
/// resolution tensored with `k`.
pub fn betti_via_tensor<F: Field>(field: &F, s: &NumericalSemigroup, max_d: usize) -> Result<BettiTable> {
    let m = s.m();
    let ranks = (1..=max_d + 1)
        .into_par_iter()
        .map(|d| unit_rank(field, s, d))
        .collect::<Result<Vec<_>>>()?;
    let ur = |d: usize| if d == 0 { 0 } else { ranks[d - 1] };
    let values = (0..=max_d)
        .map(|d| (rank(m, d) - ur(d) - ur(d + 1)) as u64)
        .collect();
    Ok(BettiTable {
        values,
        homological_bound: max_d,
        degree_bound: None,
    })
}

/// Default degree bound `(d+2) max Ap(S)`.
pub fn default_homology_bound(s: &NumericalSemigroup, d: usize) -> u64 {
    (d as u64 + 2) * s.max_apery()
}

/// Homology at `F_d` in each degree `0..=bound` (cokernel of `d_1` when
/// `d = 0`).
pub fn truncated_homology<F: Field>(
    field: &F,
    s: &NumericalSemigroup,
    d: usize,
    bound: u64,
) -> Result<Vec<usize>> {
    apery_complex(s, d + 1)?.truncated_homology(field, d, bound)
}
