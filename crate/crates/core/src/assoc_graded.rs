//! The associated graded ring `gr_m(k[S]) = Q/I*`, where `Q` is the standard
//! graded polynomial ring on one variable per minimal generator.
//!
//! `I*_d` is computed as the kernel of `Q_d -> m^d/m^{d+1}`, which sends a
//! monomial of S-degree `n` to `t^n` when `L_max(n) = d` and to zero when
//! `L_max(n) > d`. No standard bases are involved.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, rational_is_negative, Field, Rationals};
use crate::linalg::{Echelon, SparseVec};
use crate::oracle::{self, GradedBetti, ModuleKind, RingKind};
use crate::ring::{monomials_of_total_degree, render_monomial, variable_name, Polynomial};
use crate::semigroup::{FactorizationLengths, NumericalSemigroup};

/// Lowest standard-degree component of a nonzero polynomial.
pub fn initial_form(poly: &Polynomial) -> Result<Polynomial> {
    let low = poly
        .terms
        .keys()
        .map(|e| e.iter().sum::<u32>())
        .min()
        .ok_or(Error::ZeroPolynomial)?;
    Ok(Polynomial::from_terms(
        poly.nvars,
        poly.terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == low)
            .map(|(e, c)| (c.clone(), e.clone())),
    ))
}

/// Names of the minimal-generator variables: the generator `g` is called
/// after its residue mod `m`, with `y` for `m` itself.
pub fn variable_names(s: &NumericalSemigroup) -> Vec<String> {
    let m = s.multiplicity();
    s.minimal_generators()
        .iter()
        .map(|&g| variable_name((g % m) as usize))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrPresentation {
    /// Minimal generators of `S`, one variable each.
    pub generators: Vec<u64>,
    pub names: Vec<String>,
    pub degree_bound: u64,
    /// A basis of `I*_d` for `d = 0..=degree_bound`, in reduced echelon form.
    pub pieces: Vec<Vec<Polynomial>>,
    /// Minimal generators of `I*` of degree at most `degree_bound`, as
    /// `(degree, polynomial)`.
    pub minimal_generators: Vec<(u64, Polynomial)>,
}

impl GrPresentation {
    /// Renders with the echelon leading term first.
    pub fn render(&self, p: &Polynomial) -> String {
        let order: Vec<usize> = (0..self.names.len()).collect();
        let mut out = String::new();
        for (k, (e, c)) in p.terms.iter().enumerate() {
            let neg = rational_is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mon = render_monomial(e, &self.names, &order);
            if !abs.is_one() || mon == "1" {
                out.push_str(&format_rational(&abs));
            }
            if mon != "1" {
                out.push_str(&mon);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Minimal generators of `I*` as sorted strings.
    pub fn generator_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.minimal_generators.iter().map(|(_, p)| self.render(p)).collect();
        v.sort();
        v
    }

    /// Whether a homogeneous polynomial lies in `I*` (within the bound).
    pub fn contains(&self, p: &Polynomial) -> bool {
        let Some(e) = p.terms.keys().next() else { return true };
        let d: u32 = e.iter().sum();
        if d as u64 > self.degree_bound {
            return false;
        }
        let monos = monomials_of_total_degree(self.generators.len(), d);
        let mut ech = Echelon::new(Rationals);
        for q in &self.pieces[d as usize] {
            ech.insert(to_vector(q, &monos));
        }
        ech.contains(to_vector(p, &monos))
    }
}

fn to_vector(p: &Polynomial, monos: &[Vec<u32>]) -> SparseVec<BigRational> {
    let mut v: Vec<(usize, BigRational)> = p
        .terms
        .iter()
        .map(|(e, c)| (monos.binary_search(e).expect("monomial of the right degree"), c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn to_polynomial(v: &[(usize, BigRational)], monos: &[Vec<u32>], nvars: usize) -> Polynomial {
    Polynomial::from_terms(nvars, v.iter().map(|(i, c)| (c.clone(), monos[*i].clone())))
}

fn lengths_for(s: &NumericalSemigroup, bound: u64) -> FactorizationLengths {
    let top = (bound + 1) * s.minimal_generators().iter().max().copied().unwrap_or(1);
    FactorizationLengths::new(s, top)
}

/// Reduced echelon basis of `I*_d` over the monomials of degree `d`.
fn piece(s: &NumericalSemigroup, lengths: &FactorizationLengths, d: u64) -> Vec<SparseVec<BigRational>> {
    let gens = s.minimal_generators();
    let monos = monomials_of_total_degree(gens.len(), d as u32);
    let mut ech = Echelon::new(Rationals);
    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (b, e) in monos.iter().enumerate() {
        let n: u64 = e.iter().zip(gens).map(|(&k, &g)| k as u64 * g).sum();
        if lengths.get(n) == Some(d) {
            groups.entry(n).or_default().push(b);
        } else {
            ech.insert(vec![(b, BigRational::one())]);
        }
    }
    for g in groups.values() {
        for &b in &g[1..] {
            ech.insert(vec![(g[0], BigRational::one()), (b, -BigRational::one())]);
        }
    }
    ech.reduced_rows()
}

/// `I*` through standard degree `bound`, with minimal generators chosen
/// greedily among the reduced echelon rows of each piece.
pub fn initial_ideal_truncated(s: &NumericalSemigroup, bound: u64) -> GrPresentation {
    let nvars = s.embedding_dimension();
    let lengths = lengths_for(s, bound);
    let rows: Vec<Vec<SparseVec<BigRational>>> =
        (0..=bound).into_par_iter().map(|d| piece(s, &lengths, d)).collect();
    let monos: Vec<Vec<Vec<u32>>> = (0..=bound).map(|d| monomials_of_total_degree(nvars, d as u32)).collect();

    let mut minimal_generators = Vec::new();
    for d in 1..=bound as usize {
        let mut ech = Echelon::new(Rationals);
        for v in &rows[d - 1] {
            let p = to_polynomial(v, &monos[d - 1], nvars);
            for k in 0..nvars {
                let mut e = vec![0; nvars];
                e[k] = 1;
                ech.insert(to_vector(&p.mul(&Polynomial::monomial(e)), &monos[d]));
            }
        }
        for v in &rows[d] {
            if ech.insert(v.clone()) {
                minimal_generators.push((d as u64, to_polynomial(v, &monos[d], nvars)));
            }
        }
    }
    GrPresentation {
        generators: s.minimal_generators().to_vec(),
        names: variable_names(s),
        degree_bound: bound,
        pieces: rows
            .iter()
            .zip(&monos)
            .map(|(r, m)| r.iter().map(|v| to_polynomial(v, m, nvars)).collect())
            .collect(),
        minimal_generators,
    }
}

/// Hilbert function `H(d) = #{n in S : L_max(n) = d}` for `d = 0..=bound`.
pub fn gr_hilbert(s: &NumericalSemigroup, bound: u64) -> Vec<u64> {
    let lengths = lengths_for(s, bound);
    let mut h = vec![0u64; bound as usize + 1];
    for n in 0..=lengths.bound() {
        if let Some(l) = lengths.get(n) {
            if l <= bound {
                h[l as usize] += 1;
            }
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticReport {
    pub quadratic: bool,
    pub degree_bound: u64,
    /// Minimal generators of `I*` of degree at least 3.
    pub offending: Vec<(u64, Polynomial)>,
}

/// Whether `I*` has no minimal generators in degrees `3..=bound`.
pub fn is_quadratic(s: &NumericalSemigroup, bound: u64) -> QuadraticReport {
    let gr = initial_ideal_truncated(s, bound);
    let offending: Vec<(u64, Polynomial)> =
        gr.minimal_generators.into_iter().filter(|(d, _)| *d >= 3).collect();
    QuadraticReport {
        quadratic: offending.is_empty(),
        degree_bound: bound,
        offending,
    }
}

/// `beta_{i,j}` of `k` over `gr_m(k[S])` for `i <= i_max`, `j <= bound`.
pub fn gr_betti_k<F: Field>(field: &F, s: &NumericalSemigroup, i_max: usize, bound: u64) -> Result<GradedBetti> {
    oracle::betti_table(field, s, RingKind::Gr, ModuleKind::ResidueField, i_max, bound)
}

/// `true` iff `beta_{i,j} = 0` for `j != i` in the range `i <= i_max`,
/// `j <= bound`. A bounded certificate, not a proof of Koszulness.
///
/// A nonlinear syzygy found inside the range settles the answer even if the
/// bound was hit; a linear answer is only returned for a complete range.
pub fn koszul_up_to<F: Field>(field: &F, s: &NumericalSemigroup, i_max: usize, bound: u64) -> Result<bool> {
    let r = oracle::resolve_partial(field, s, RingKind::Gr, ModuleKind::ResidueField, i_max, bound)?;
    let nonlinear = r
        .betti
        .by_degree
        .iter()
        .enumerate()
        .any(|(i, row)| row.keys().any(|&j| j != i as u64));
    if nonlinear {
        return Ok(false);
    }
    match r.hit_bound {
        Some(degree) => Err(Error::DegreeBoundTooLow { degree, bound }),
        None => Ok(true),
    }
}

/// Number of minimal generators of `I*` of degree at most `bound`.
pub fn betti1_q_gr(s: &NumericalSemigroup, bound: u64) -> usize {
    initial_ideal_truncated(s, bound).minimal_generators.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_PRIME};
    use crate::ring::{rat, toric_generators};

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn poly(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(terms[0].1.len(), terms.iter().map(|(c, e)| (rat(*c), e.to_vec())))
    }

    #[test]
    fn initial_forms() {
        let p = poly(&[(1, &[0, 4, 0]), (-1, &[1, 0, 1])]);
        assert_eq!(initial_form(&p).unwrap(), poly(&[(-1, &[1, 0, 1])]));
        let p = poly(&[(1, &[0, 1, 1]), (-1, &[5, 0, 0])]);
        assert_eq!(initial_form(&p).unwrap(), poly(&[(1, &[0, 1, 1])]));
        let p = poly(&[(3, &[2, 1, 0])]);
        assert_eq!(initial_form(&p).unwrap(), p);
        assert_eq!(initial_form(&Polynomial::zero(3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn initial_ideal_fixtures() {
        let gr = initial_ideal_truncated(&ns(&[5, 6, 19]), 6);
        assert_eq!(gr.names, ["y", "x_1", "x_4"]);
        assert_eq!(gr.generator_strings(), ["x_1^5", "x_1x_4", "x_4^2", "yx_4"]);
        let gr = initial_ideal_truncated(&ns(&[5, 31, 99]), 6);
        assert_eq!(gr.generator_strings(), ["x_1^4", "x_1x_4", "x_4^2"]);
        let gr = initial_ideal_truncated(&ns(&[5, 21, 69]), 6);
        assert_eq!(gr.generator_strings(), ["x_1^4 - y^3x_4", "x_1x_4", "x_4^2"]);
    }

    #[test]
    fn hilbert_function() {
        assert_eq!(gr_hilbert(&ns(&[5, 6, 19]), 5), [1, 3, 3, 4, 5, 5]);
        assert_eq!(gr_hilbert(&ns(&[2, 3]), 3), [1, 2, 2, 2]);
        assert_eq!(gr_hilbert(&ns(&[7, 9, 11]), 0), [1]);
        for g in [&[5u64, 6, 19][..], &[4, 5, 7], &[8, 9, 10, 12, 23]] {
            let s = ns(g);
            let gr = initial_ideal_truncated(&s, 5);
            let h = gr_hilbert(&s, 5);
            for d in 0..=5u32 {
                let ambient = monomials_of_total_degree(s.embedding_dimension(), d).len();
                assert_eq!(ambient, gr.pieces[d as usize].len() + h[d as usize] as usize);
            }
        }
    }

    #[test]
    fn toric_initial_forms_lie_in_istar() {
        // Q here uses the minimal generators; embed the MED binomials directly
        let s = ns(&[4, 5, 6, 7]);
        let gr = initial_ideal_truncated(&s, 4);
        for b in toric_generators(&s).unwrap() {
            let f = initial_form(&b.to_polynomial()).unwrap();
            assert!(gr.contains(&f), "{f:?}");
        }
        assert_eq!(betti1_q_gr(&s, 4), 6);
    }

    #[test]
    fn quadratic_and_koszul() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let r = is_quadratic(&ns(&[5, 6, 19]), 6);
        assert!(!r.quadratic);
        assert_eq!(r.offending.len(), 1);
        assert_eq!(betti1_q_gr(&ns(&[5, 6, 19]), 6), 4);
        assert_eq!(betti1_q_gr(&ns(&[5, 31, 99]), 6), 3);
        let b = gr_betti_k(&f, &ns(&[5, 6, 19]), 2, 6).unwrap();
        assert_eq!(b.values[1..], [3, 7]);
        let b = gr_betti_k(&f, &ns(&[5, 31, 99]), 2, 6).unwrap();
        assert_eq!(b.values[1..], [3, 6]);
        assert!(koszul_up_to(&f, &ns(&[4, 5, 6, 7]), 3, 6).unwrap());
    }

    #[test]
    fn five_generated_pair() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let bad = ns(&[8, 81, 90, 108, 207]);
        let good = ns(&[8, 9, 10, 12, 23]);
        let r = is_quadratic(&bad, 6);
        assert!(!r.quadratic);
        let gr = initial_ideal_truncated(&bad, 6);
        let cert: Vec<String> = r.offending.iter().map(|(_, p)| gr.render(p)).collect();
        assert!(cert.contains(&"x_1x_2x_4".to_string()), "{cert:?}");
        assert!(is_quadratic(&good, 6).quadratic);
        assert!(!koszul_up_to(&f, &bad, 3, 6).unwrap());
        assert!(koszul_up_to(&f, &good, 3, 6).unwrap());
    }

    #[test]
    fn istar_is_not_face_uniform() {
        let a = ns(&[5, 6, 19]);
        let b = ns(&[5, 31, 99]);
        assert!(crate::kunz::same_face(&a, &b).unwrap());
        assert_ne!(betti1_q_gr(&a, 6), betti1_q_gr(&b, 6));
    }
}
