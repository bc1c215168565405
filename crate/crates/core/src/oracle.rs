//! Brute-force minimal graded free resolutions by linear algebra in each
//! degree. Slow, but independent of every closed-form construction, which
//! makes it the reference the other modules are tested against.
//!
//! Rings are monomial algebras: every graded piece has a basis of monomials
//! and the product of two basis elements is a basis element or zero.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};
use crate::ring::{apery_weights, monomials_of_weight};
use crate::semigroup::{FactorizationLengths, NumericalSemigroup};

pub trait GradedAlgebra: Send + Sync {
    fn dim(&self, n: u64) -> usize;
    /// Index in degree `n1 + n2` of the product of basis elements, or `None`
    /// if the product is zero.
    fn mul(&self, n1: u64, i: usize, n2: u64, j: usize) -> Option<usize>;
    /// `(degree, index)` of algebra generators of the maximal ideal.
    fn generators(&self) -> Vec<(u64, usize)>;
}

/// `k[S]` in the basis `t^n`, generated by the minimal generators.
#[derive(Clone, Debug)]
pub struct SemigroupAlgebra {
    s: NumericalSemigroup,
}

impl SemigroupAlgebra {
    pub fn new(s: &NumericalSemigroup) -> Self {
        SemigroupAlgebra { s: s.clone() }
    }
}

impl GradedAlgebra for SemigroupAlgebra {
    fn dim(&self, n: u64) -> usize {
        self.s.contains_u64(n) as usize
    }
    fn mul(&self, _: u64, _: usize, _: u64, _: usize) -> Option<usize> {
        Some(0)
    }
    fn generators(&self) -> Vec<(u64, usize)> {
        self.s.minimal_generators().iter().map(|&g| (g, 0)).collect()
    }
}

/// A polynomial ring with positive variable weights, tabulated up to a
/// degree bound.
#[derive(Clone, Debug)]
pub struct PolynomialRing {
    weights: Vec<u64>,
    pieces: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl PolynomialRing {
    pub fn new(weights: Vec<u64>, bound: u64) -> Self {
        let pieces: Vec<Vec<Vec<u32>>> = (0..=bound)
            .into_par_iter()
            .map(|n| monomials_of_weight(&weights, n))
            .collect();
        let index = pieces
            .iter()
            .map(|p| p.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect())
            .collect();
        PolynomialRing {
            weights,
            pieces,
            index,
        }
    }

    pub fn monomials(&self, n: u64) -> &[Vec<u32>] {
        self.pieces.get(n as usize).map_or(&[], |p| p.as_slice())
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

impl GradedAlgebra for PolynomialRing {
    fn dim(&self, n: u64) -> usize {
        self.monomials(n).len()
    }
    fn mul(&self, n1: u64, i: usize, n2: u64, j: usize) -> Option<usize> {
        let a = &self.pieces[n1 as usize][i];
        let b = &self.pieces[n2 as usize][j];
        let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.index.get((n1 + n2) as usize)?.get(&e).copied()
    }
    fn generators(&self) -> Vec<(u64, usize)> {
        (0..self.weights.len())
            .map(|v| {
                let mut e = vec![0; self.weights.len()];
                e[v] = 1;
                let w = self.weights[v];
                (w, self.index[w as usize][&e])
            })
            .collect()
    }
}

/// `gr_m(k[S])` with `gr_d` spanned by the `t^n` with `L_max(n) = d`; the
/// product of `t^a` and `t^b` is `t^{a+b}` when the lengths add up and zero
/// otherwise.
#[derive(Clone, Debug)]
pub struct AssociatedGraded {
    lengths: FactorizationLengths,
    by_degree: Vec<Vec<u64>>,
    position: HashMap<u64, usize>,
    gens: Vec<u64>,
}

impl AssociatedGraded {
    pub fn new(s: &NumericalSemigroup, max_degree: u64) -> Self {
        let gens = s.minimal_generators().to_vec();
        let top = max_degree * gens.iter().max().copied().unwrap_or(1);
        let lengths = FactorizationLengths::new(s, top);
        let mut by_degree = vec![Vec::new(); max_degree as usize + 1];
        let mut position = HashMap::new();
        for n in 0..=top {
            if let Some(l) = lengths.get(n) {
                if l <= max_degree {
                    position.insert(n, by_degree[l as usize].len());
                    by_degree[l as usize].push(n);
                }
            }
        }
        AssociatedGraded {
            lengths,
            by_degree,
            position,
            gens,
        }
    }

    /// Semigroup elements spanning `gr_d`.
    pub fn piece(&self, d: u64) -> &[u64] {
        self.by_degree.get(d as usize).map_or(&[], |p| p.as_slice())
    }
}

impl GradedAlgebra for AssociatedGraded {
    fn dim(&self, d: u64) -> usize {
        self.piece(d).len()
    }
    fn mul(&self, d1: u64, i: usize, d2: u64, j: usize) -> Option<usize> {
        let n = self.by_degree[d1 as usize][i] + self.by_degree[d2 as usize][j];
        (self.lengths.get(n)? == d1 + d2).then(|| self.position[&n])
    }
    fn generators(&self) -> Vec<(u64, usize)> {
        self.gens.iter().map(|g| (1, self.position[g])).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    /// `k[S]`, S-graded.
    R,
    /// `k[y, x_1, ..., x_{m-1}]` with Apéry degrees.
    Q,
    /// One variable per minimal generator, S-graded.
    Qmin,
    /// One variable per minimal generator, every variable of degree 1.
    QminStd,
    /// `gr_m(k[S])`, standard graded.
    Gr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    ResidueField,
    /// `Q / I_S` over `Q` or `Qmin`.
    ToricQuotient,
    /// `Q / I*` over `QminStd`.
    InitialQuotient,
}

/// Betti numbers of a module, total and split by internal degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBetti {
    pub values: Vec<u64>,
    pub by_degree: Vec<BTreeMap<u64, u64>>,
    /// Every piece of degree at most this bound was computed.
    pub degree_bound: u64,
}

impl GradedBetti {
    pub fn to_table(&self) -> crate::complex::BettiTable {
        crate::complex::BettiTable {
            values: self.values.clone(),
            homological_bound: self.values.len() - 1,
            degree_bound: Some(self.degree_bound),
        }
    }

    /// `beta_{i,j}`.
    pub fn get(&self, i: usize, j: u64) -> u64 {
        self.by_degree.get(i).and_then(|m| m.get(&j)).copied().unwrap_or(0)
    }
}

/// A generator of a free module together with its image one step down:
/// `(generator index, basis index in A_{deg - deg gen}, coefficient)`.
#[derive(Clone, Debug)]
pub struct Generator<E> {
    pub degree: u64,
    pub image: Vec<(usize, usize, E)>,
}

/// Generators of `F_1, F_2, ...`; `levels[i]` maps into `F_i`.
#[derive(Clone, Debug)]
pub struct Resolution<E> {
    pub levels: Vec<Vec<Generator<E>>>,
    pub betti: GradedBetti,
    /// A generator was found in degree `bound`, so higher ones may be missing.
    pub hit_bound: Option<u64>,
}

impl<E> Resolution<E> {
    /// Whether some differential has a nonzero entry of degree 0.
    pub fn has_unit_entries(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            for g in level {
                for (k, _, _) in &g.image {
                    let below = if i == 0 { 0 } else { self.levels[i - 1][*k].degree };
                    if below == g.degree {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Position of each generator's block inside `(F)_n`.
struct Layout {
    offset: Vec<Option<usize>>,
    blocks: Vec<(usize, usize, usize)>,
}

fn layout<A: GradedAlgebra + ?Sized>(ring: &A, degs: &[u64], n: u64) -> Layout {
    let mut offset = vec![None; degs.len()];
    let mut blocks = Vec::new();
    let mut total = 0usize;
    for (k, &d) in degs.iter().enumerate() {
        if d > n {
            continue;
        }
        let dim = ring.dim(n - d);
        if dim > 0 {
            offset[k] = Some(total);
            blocks.push((k, total, dim));
            total += dim;
        }
    }
    Layout { offset, blocks }
}

impl Layout {
    fn decode(&self, pos: usize) -> (usize, usize) {
        let i = self.blocks.partition_point(|&(_, off, _)| off <= pos) - 1;
        let (k, off, _) = self.blocks[i];
        (k, pos - off)
    }
}

/// `basis element (a, i) * v` for `v` in `(F)_n`.
fn multiply<F: Field, A: GradedAlgebra + ?Sized>(
    field: &F,
    ring: &A,
    degs: &[u64],
    from: &Layout,
    to: &Layout,
    a: u64,
    i: usize,
    n: u64,
    v: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(v.len());
    for (pos, c) in v {
        let (k, b) = from.decode(*pos);
        if let Some(p) = ring.mul(a, i, n - degs[k], b) {
            out.push((to.offset[k].unwrap() + p, c.clone()));
        }
    }
    linalg::normalize(field, out)
}

/// Builds a minimal resolution of `A / K` where `kernel0(n)` spans the
/// degree-`n` part of `K` inside `A_n`, through homological degree `i_max`.
///
/// Only degrees `0..=bound` are examined. A generator in degree `bound`
/// itself is taken as evidence that the bound is too low and recorded in
/// `hit_bound`; generators beyond the bound cannot be detected, so callers
/// pick bounds from known degree estimates.
pub fn minimal_graded_resolution<F, A>(
    field: &F,
    ring: &A,
    kernel0: impl Fn(u64) -> Vec<SparseVec<F::Elem>> + Sync,
    i_max: usize,
    bound: u64,
) -> Result<Resolution<F::Elem>>
where
    F: Field,
    A: GradedAlgebra + ?Sized,
{
    let ring_gens = ring.generators();
    let mut degs: Vec<u64> = vec![0];
    let mut prev_degs: Vec<u64> = Vec::new();
    let mut hit_bound = None;
    let mut images: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new()];
    let mut levels = Vec::new();
    let mut values = vec![1u64];
    let mut by_degree = vec![BTreeMap::from([(0u64, 1u64)])];

    for level in 0..i_max {
        let layouts: Vec<Layout> = (0..=bound).map(|n| layout(ring, &degs, n)).collect();
        // kernel of the current map in each degree
        let kernels: Vec<Vec<SparseVec<F::Elem>>> = (0..=bound)
            .into_par_iter()
            .map(|n| {
                if level == 0 {
                    return kernel0(n);
                }
                let lay = &layouts[n as usize];
                let below = layout(ring, &prev_degs, n);
                let cols: Vec<SparseVec<F::Elem>> = lay
                    .blocks
                    .iter()
                    .flat_map(|&(k, _, dim)| (0..dim).map(move |b| (k, b)))
                    .map(|(k, b)| {
                        let a = n - degs[k];
                        let mut v = Vec::new();
                        for (k2, b2, c) in &images[k] {
                            if let Some(p) = ring.mul(a, b, degs[k] - prev_degs[*k2], *b2) {
                                v.push((below.offset[*k2].unwrap() + p, c.clone()));
                            }
                        }
                        linalg::normalize(field, v)
                    })
                    .collect();
                linalg::kernel(field, &cols)
            })
            .collect();

        // kernel elements not in m * kernel are new generators
        let found: Vec<Vec<SparseVec<F::Elem>>> = (0..=bound)
            .into_par_iter()
            .map(|n| {
                let here = &layouts[n as usize];
                let mut ech = Echelon::new(field.clone());
                for &(gd, gi) in &ring_gens {
                    if gd > n || gd == 0 {
                        continue;
                    }
                    let low = n - gd;
                    for v in &kernels[low as usize] {
                        ech.insert(multiply(field, ring, &degs, &layouts[low as usize], here, gd, gi, low, v));
                    }
                }
                kernels[n as usize]
                    .iter()
                    .filter(|v| ech.insert((*v).clone()))
                    .cloned()
                    .collect()
            })
            .collect();

        let mut new_gens = Vec::new();
        let mut counts = BTreeMap::new();
        for (n, vs) in found.into_iter().enumerate() {
            let n = n as u64;
            if !vs.is_empty() && n >= bound {
                hit_bound = Some(n);
            }
            for v in vs {
                *counts.entry(n).or_insert(0) += 1;
                let lay = &layouts[n as usize];
                let image = v
                    .into_iter()
                    .map(|(pos, c)| {
                        let (k, b) = lay.decode(pos);
                        (k, b, c)
                    })
                    .collect();
                new_gens.push(Generator { degree: n, image });
            }
        }
        values.push(new_gens.len() as u64);
        by_degree.push(counts);
        prev_degs = std::mem::replace(&mut degs, new_gens.iter().map(|g| g.degree).collect());
        images = new_gens.iter().map(|g| g.image.clone()).collect();
        levels.push(new_gens);
    }
    Ok(Resolution {
        hit_bound,
        levels,
        betti: GradedBetti {
            values,
            by_degree,
            degree_bound: bound,
        },
    })
}

/// Degree bound that covers the first `i_max` steps of the resolution of `k`
/// over `k[S]`: `i_max * max Ap(S) + 1`.
pub fn default_bound_r(s: &NumericalSemigroup, i_max: usize) -> u64 {
    i_max as u64 * s.max_apery() + 1
}

fn unit_vectors<F: Field>(field: &F, dim: usize) -> Vec<SparseVec<F::Elem>> {
    (0..dim).map(|b| vec![(b, field.one())]).collect()
}

/// Differences `e_first - e_b` inside each group of basis indices.
fn differences<F: Field>(field: &F, groups: impl IntoIterator<Item = Vec<usize>>) -> Vec<SparseVec<F::Elem>> {
    let mut out = Vec::new();
    for g in groups {
        for &b in g.iter().skip(1) {
            out.push(vec![(g[0], field.one()), (b, field.neg(&field.one()))]);
        }
    }
    out
}

/// Like [`resolve`], but a generator at the degree bound is reported in
/// `hit_bound` instead of failing.
pub fn resolve_partial<F: Field>(
    field: &F,
    s: &NumericalSemigroup,
    ring: RingKind,
    module: ModuleKind,
    i_max: usize,
    bound: u64,
) -> Result<Resolution<F::Elem>> {
    use ModuleKind::*;
    use RingKind::*;
    let residue = |dim: usize, n: u64| if n == 0 { Vec::new() } else { unit_vectors(field, dim) };
    match (ring, module) {
        (R, ResidueField) => {
            let a = SemigroupAlgebra::new(s);
            minimal_graded_resolution(field, &a, |n| residue(a.dim(n), n), i_max, bound)
        }
        (Gr, ResidueField) => {
            let a = AssociatedGraded::new(s, bound);
            minimal_graded_resolution(field, &a, |n| residue(a.dim(n), n), i_max, bound)
        }
        (Q | Qmin | QminStd, ResidueField) => {
            let a = polynomial_ring(s, ring, bound);
            minimal_graded_resolution(field, &a, |n| residue(a.dim(n), n), i_max, bound)
        }
        (Q | Qmin, ToricQuotient) => {
            let a = polynomial_ring(s, ring, bound);
            // every monomial of degree n maps to t^n
            minimal_graded_resolution(field, &a, |n| differences(field, [(0..a.dim(n)).collect()]), i_max, bound)
        }
        (QminStd, InitialQuotient) => {
            let a = polynomial_ring(s, ring, bound);
            let gens = s.minimal_generators().to_vec();
            let top = bound * gens.iter().max().copied().unwrap_or(1);
            let lengths = FactorizationLengths::new(s, top);
            let kernel = |d: u64| {
                let mut out = Vec::new();
                let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
                for (b, e) in a.monomials(d).iter().enumerate() {
                    let n: u64 = e.iter().zip(&gens).map(|(&k, &g)| k as u64 * g).sum();
                    if lengths.get(n) == Some(d) {
                        groups.entry(n).or_default().push(b);
                    } else {
                        out.push(vec![(b, field.one())]);
                    }
                }
                out.extend(differences(field, groups.into_values()));
                out
            };
            minimal_graded_resolution(field, &a, kernel, i_max, bound)
        }
        _ => Err(Error::InvalidArgument(format!(
            "no oracle for module {module:?} over ring {ring:?}"
        ))),
    }
}

/// Full resolution data for one of the supported ring / module pairs.
pub fn resolve<F: Field>(
    field: &F,
    s: &NumericalSemigroup,
    ring: RingKind,
    module: ModuleKind,
    i_max: usize,
    bound: u64,
) -> Result<Resolution<F::Elem>> {
    let r = resolve_partial(field, s, ring, module, i_max, bound)?;
    match r.hit_bound {
        Some(degree) => Err(Error::DegreeBoundTooLow { degree, bound }),
        None => Ok(r),
    }
}

fn polynomial_ring(s: &NumericalSemigroup, ring: RingKind, bound: u64) -> PolynomialRing {
    let weights = match ring {
        RingKind::Q => apery_weights(s),
        RingKind::Qmin => s.minimal_generators().to_vec(),
        _ => vec![1; s.embedding_dimension()],
    };
    PolynomialRing::new(weights, bound)
}

pub fn betti_table<F: Field>(
    field: &F,
    s: &NumericalSemigroup,
    ring: RingKind,
    module: ModuleKind,
    i_max: usize,
    bound: u64,
) -> Result<GradedBetti> {
    Ok(resolve(field, s, ring, module, i_max, bound)?.betti)
}
