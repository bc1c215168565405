//! Sparse exact Gaussian elimination.
//!
//! Vectors are sorted `(index, value)` lists without zero values. An
//! [`Echelon`] keeps a row-echelon basis of a subspace keyed by the pivot
//! (leading index) of each row, with the pivot entry normalised to one.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c * b` for sorted sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Sorts by index and merges duplicate indices, dropping zeros.
pub fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates leading entries until the leading index is not a pivot.
    /// The result is zero iff `v` lies in the span.
    pub fn reduce_leading(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        while let Some((lead, c)) = v.first() {
            let Some(row) = self.rows.get(lead) else { break };
            let c = self.field.neg(c);
            v = axpy(&self.field, &v, &c, row);
        }
        v
    }

    /// Full reduction: no entry of the result sits on a pivot.
    pub fn normal_form(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut from = 0usize;
        loop {
            let hit = v
                .iter()
                .find(|(i, _)| *i >= from && self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((i, c)) = hit else { break };
            let c = self.field.neg(&c);
            v = axpy(&self.field, &v, &c, &self.rows[&i]);
            from = i + 1;
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.reduce_leading(v);
        match v.first() {
            None => false,
            Some((lead, c)) => {
                let inv = self.field.inv(c);
                let lead = *lead;
                self.rows.insert(lead, scale(&self.field, &inv, &v));
                true
            }
        }
    }

    /// Rows in pivot order, fully inter-reduced.
    pub fn reduced_rows(&self) -> Vec<SparseVec<F::Elem>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (pivot, row) in &self.rows {
            let mut tail = row.clone();
            let head = tail.remove(0);
            let mut tail = self.normal_form(tail);
            tail.insert(0, head);
            debug_assert_eq!(tail[0].0, *pivot);
            out.push(tail);
        }
        out
    }
}

/// Rank of the span of the given vectors.
pub fn rank<F: Field>(field: &F, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut ech = Echelon::new(field.clone());
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, as sparse
/// vectors indexed by column.
pub fn kernel<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    // Each row carries the combination of columns that produced it.
    let mut rows: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut hist: SparseVec<F::Elem> = vec![(j, field.one())];
        while let Some((lead, c)) = v.first() {
            let Some((row, row_hist)) = rows.get(lead) else { break };
            let c = field.neg(c);
            v = axpy(field, &v, &c, row);
            hist = axpy(field, &hist, &c, row_hist);
        }
        match v.first() {
            None => out.push(hist),
            Some((lead, c)) => {
                let inv = field.inv(c);
                let lead = *lead;
                rows.insert(lead, (scale(field, &inv, &v), scale(field, &inv, &hist)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn dense_rank_oracle(rows: &[Vec<i64>], p: i64) -> usize {
        // plain dense elimination mod p, written independently
        let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, piv);
            let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c] * inv % p;
                    for k in 0..ncols {
                        m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_sparse<F: Field>(f: &F, row: &[i64]) -> SparseVec<F::Elem> {
        row.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, f.from_i64(*x)))
            .collect()
    }

    #[test]
    fn rank_matches_dense_oracle() {
        let rows = vec![
            vec![1, 2, 0, -1],
            vec![2, 4, 0, -2],
            vec![0, 1, 1, 0],
            vec![1, 3, 1, -1],
            vec![0, 0, 0, 5],
        ];
        let f = PrimeField::new(101).unwrap();
        let r = rank(&f, rows.iter().map(|r| to_sparse(&f, r)));
        assert_eq!(r, dense_rank_oracle(&rows, 101));
        assert_eq!(rank(&Rationals, rows.iter().map(|r| to_sparse(&Rationals, r))), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        // columns of a 2x4 matrix
        let cols: Vec<SparseVec<BigRational>> = vec![
            vec![(0, q(1))],
            vec![(0, q(1)), (1, q(1))],
            vec![(1, q(2))],
            vec![(0, q(3)), (1, q(-1))],
        ];
        let ker = kernel(&Rationals, &cols);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut acc: SparseVec<BigRational> = Vec::new();
            for (j, c) in k {
                acc = axpy(&Rationals, &acc, c, &cols[*j]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn normal_form_is_canonical() {
        let mut ech = Echelon::new(Rationals);
        ech.insert(vec![(0, q(1)), (2, q(1))]);
        ech.insert(vec![(1, q(1)), (2, q(-1))]);
        let a = ech.normal_form(vec![(0, q(1)), (1, q(1))]);
        let b = ech.normal_form(vec![(2, q(0) + q(0))].into_iter().filter(|_| false).collect());
        assert!(b.is_empty());
        assert!(a.is_empty());
        let c = ech.normal_form(vec![(0, q(2)), (3, q(1))]);
        assert_eq!(c, vec![(2, q(-2)), (3, q(1))]);
    }
}
