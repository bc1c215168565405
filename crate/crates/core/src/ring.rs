//! Arithmetic in the S-graded polynomial ring `Q = k[y, x_1, ..., x_{m-1}]`
//! and in `R = Q / I_S`, which is stored as `k[S]` in the basis `t^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, rational_is_negative};
use crate::kunz::b_matrix;
use crate::semigroup::NumericalSemigroup;

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Name of the variable attached to residue `i` (`x_0` is written `y`).
pub fn variable_name(i: usize) -> String {
    if i == 0 {
        "y".to_string()
    } else {
        format!("x_{i}")
    }
}

fn power(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        e if e < 10 => format!("{base}^{e}"),
        e => format!("{base}^{{{e}}}"),
    }
}

/// Renders an exponent vector over named variables in the order given by
/// `order` (indices into `names`); the empty monomial renders as `1`.
pub fn render_monomial(exps: &[u32], names: &[String], order: &[usize]) -> String {
    let s: String = order.iter().map(|&k| power(&names[k], exps[k])).collect();
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

/// A monomial in `y, x_1, ..., x_{m-1}`; index 0 is `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial {
            exponents: vec![0; m],
        }
    }

    /// The variable `x_i` (`i = 0` for `y`) raised to `e`.
    pub fn var(m: usize, i: usize, e: u32) -> Self {
        let mut mon = Monomial::one(m);
        mon.exponents[i % m] += e;
        mon
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

impl fmt::Display for Monomial {
    /// `y` first, then `x_1, x_2, ...`, as in `y^2x_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.exponents.len()).map(variable_name).collect();
        let order: Vec<usize> = (0..self.exponents.len()).collect();
        f.write_str(&render_monomial(&self.exponents, &names, &order))
    }
}

pub fn s_degree(mon: &Monomial, s: &NumericalSemigroup) -> Result<u64> {
    if mon.exponents.len() != s.m() {
        return Err(Error::LengthMismatch {
            expected: s.m(),
            got: mon.exponents.len(),
        });
    }
    Ok(mon
        .exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| e as u64 * s.variable_degree(i))
        .sum())
}

/// An element of `R = k[S]`: a finite sum `sum c_n t^n` with every `n` in
/// the semigroup. Terms are sorted by degree and no coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    terms: Vec<(u64, BigRational)>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn term(degree: u64, coeff: BigRational) -> Self {
        if coeff.is_zero() {
            RingElement::zero()
        } else {
            RingElement {
                terms: vec![(degree, coeff)],
            }
        }
    }

    /// `t^n`.
    pub fn monomial(degree: u64) -> Self {
        RingElement::term(degree, BigRational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, BigRational)>) -> Self {
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (n, c) in terms {
            *map.entry(n).or_insert_with(BigRational::zero) += c;
        }
        RingElement {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if the element is a nonzero single term.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [(n, _)] => Some(*n),
            _ => None,
        }
    }

    pub fn coefficient(&self, degree: u64) -> BigRational {
        self.terms
            .iter()
            .find(|(n, _)| *n == degree)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        RingElement::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        RingElement::from_terms(
            self.terms
                .iter()
                .flat_map(|(a, c)| other.terms.iter().map(move |(b, d)| (a + b, c * d))),
        )
    }

    pub fn scale(&self, c: &BigRational) -> RingElement {
        RingElement::from_terms(self.terms.iter().map(|(n, d)| (*n, c * d)))
    }
}

impl fmt::Display for RingElement {
    /// Signed sum of `t^n`, e.g. `t^15 - t^11`; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first
        for (k, (n, c)) in self.terms.iter().rev().enumerate() {
            let neg = rational_is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = match (*n, abs.is_one()) {
                (0, _) => format_rational(&abs),
                (n, true) => format!("t^{n}"),
                (n, false) => format!("{}t^{n}", format_rational(&abs)),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients over an arbitrary list of
/// variables, stored as exponent vector -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    pub nvars: usize,
    #[serde(with = "term_list")]
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

/// Exponent vectors cannot be JSON object keys; terms travel as a list.
mod term_list {
    use std::collections::BTreeMap;

    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<Vec<u32>, BigRational>, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<u32>, &BigRational)> = map.iter().collect();
        v.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<Vec<u32>, BigRational>, D::Error> {
        let v: Vec<(Vec<u32>, BigRational)> = Vec::deserialize(de)?;
        Ok(v.into_iter().collect())
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (BigRational, Vec<u32>)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (c, e) in terms {
            debug_assert_eq!(e.len(), nvars);
            let slot = p.terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn monomial(exps: Vec<u32>) -> Self {
        let n = exps.len();
        Polynomial::from_terms(n, [(BigRational::one(), exps)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(e, c)| (c.clone(), e.clone())),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (c.clone(), e.clone()))
                .chain(other.terms.iter().map(|(e, c)| (-c, e.clone()))),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let exps = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.push((c * d, exps));
            }
        }
        Polynomial::from_terms(self.nvars, out)
    }

    /// Renders with the given variable names; variables are written in
    /// `order` inside each monomial and terms in decreasing total degree,
    /// then decreasing exponent vector.
    pub fn render(&self, names: &[String], order: &[usize]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = rational_is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mon = render_monomial(e, names, order);
            if abs.is_one() {
                out.push_str(&mon);
            } else if mon == "1" {
                out.push_str(&format_rational(&abs));
            } else {
                out.push_str(&format_rational(&abs));
                out.push_str(&mon);
            }
        }
        out
    }
}

/// Maps every monomial to `t^{weighted degree}` and collects coefficients.
pub fn normal_form_weighted(poly: &Polynomial, weights: &[u64]) -> RingElement {
    RingElement::from_terms(poly.terms.iter().map(|(e, c)| {
        let n: u64 = e.iter().zip(weights).map(|(&k, &w)| k as u64 * w).sum();
        (n, c.clone())
    }))
}

/// Image in `R = k[S]` of a polynomial in `y, x_1, ..., x_{m-1}`.
pub fn normal_form(poly: &Polynomial, s: &NumericalSemigroup) -> Result<RingElement> {
    if poly.nvars != s.m() {
        return Err(Error::LengthMismatch {
            expected: s.m(),
            got: poly.nvars,
        });
    }
    Ok(normal_form_weighted(poly, &apery_weights(s)))
}

/// Degrees of `y, x_1, ..., x_{m-1}`.
pub fn apery_weights(s: &NumericalSemigroup) -> Vec<u64> {
    (0..s.m()).map(|i| s.variable_degree(i)).collect()
}

/// A binomial `lead - trail` of the toric ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl Binomial {
    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.lead.exponents.len();
        Polynomial::from_terms(
            n,
            [
                (rat(1), self.lead.exponents.clone()),
                (rat(-1), self.trail.exponents.clone()),
            ],
        )
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

/// `x_i x_j - y^{b_ij} x_{i+j}` for `1 <= i <= j <= m-1`, with `x_0 = y`.
pub fn toric_generators(s: &NumericalSemigroup) -> Result<Vec<Binomial>> {
    let m = s.m();
    let b = b_matrix(s)?;
    let mut out = Vec::new();
    for i in 1..m {
        for j in i..m {
            let lead = Monomial::var(m, i, 1).times(&Monomial::var(m, j, 1));
            let trail = Monomial::var(m, 0, b.get(i, j) as u32).times(&Monomial::var(m, i + j, 1));
            out.push(Binomial { lead, trail });
        }
    }
    Ok(out)
}

/// Which ring a graded piece is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    /// `k[S]`: basis `{t^n}` if `n` is in the semigroup.
    R,
    /// `k[y, x_1, ..., x_{m-1}]` with Apéry degrees.
    Q,
    /// One variable per minimal generator, S-graded.
    Qmin,
}

/// A k-basis of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradedBasis {
    /// The single basis vector `t^n` when `present`.
    R { degree: u64, present: bool },
    Monomials {
        weights: Vec<u64>,
        exponents: Vec<Vec<u32>>,
    },
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        match self {
            GradedBasis::R { present, .. } => *present as usize,
            GradedBasis::Monomials { exponents, .. } => exponents.len(),
        }
    }
}

pub fn graded_basis(kind: BasisKind, s: &NumericalSemigroup, n: u64) -> GradedBasis {
    match kind {
        BasisKind::R => GradedBasis::R {
            degree: n,
            present: s.contains_u64(n),
        },
        BasisKind::Q => {
            let weights = apery_weights(s);
            let exponents = monomials_of_weight(&weights, n);
            GradedBasis::Monomials { weights, exponents }
        }
        BasisKind::Qmin => {
            let weights = s.minimal_generators().to_vec();
            let exponents = monomials_of_weight(&weights, n);
            GradedBasis::Monomials { weights, exponents }
        }
    }
}

/// All exponent vectors `e` with `sum e_i w_i = target`, in lexicographic
/// order. Every weight must be positive.
pub fn monomials_of_weight(weights: &[u64], target: u64) -> Vec<Vec<u32>> {
    fn go(weights: &[u64], k: usize, rest: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[k];
        let max = rest / w;
        for e in 0..=max {
            cur[k] = e as u32;
            go(weights, k + 1, rest - e * w, cur, out);
        }
        cur[k] = 0;
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    go(weights, 0, target, &mut cur, &mut out);
    out
}

/// All exponent vectors in `nvars` variables of total degree `d`, in
/// lexicographic order.
pub fn monomials_of_total_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    monomials_of_weight(&vec![1; nvars], d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial {
            exponents: e.to_vec(),
        }
    }

    #[test]
    fn degrees() {
        let s = ns(&[4, 5, 7]);
        assert_eq!(s_degree(&mono(&[2, 0, 0, 1]), &s).unwrap(), 15);
        assert_eq!(s_degree(&mono(&[0, 1, 1, 0]), &s).unwrap(), 15);
        assert_eq!(s_degree(&Monomial::one(4), &s).unwrap(), 0);
        assert_eq!(
            s_degree(&mono(&[1, 1]), &s),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn toric_generators_of_4_5_7() {
        let s = ns(&[4, 5, 7]);
        let gens: Vec<String> = toric_generators(&s).unwrap().iter().map(|b| b.to_string()).collect();
        // listed as i <= j: 11, 12, 13, 22, 23, 33
        assert_eq!(
            gens,
            vec![
                "x_1^2 - x_2",
                "x_1x_2 - y^2x_3",
                "x_1x_3 - y^3",
                "x_2^2 - y^5",
                "x_2x_3 - y^3x_1",
                "x_3^2 - yx_2",
            ]
        );
    }

    #[test]
    fn toric_generators_small_cases() {
        let s = ns(&[2, 3]);
        let g = toric_generators(&s).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "x_1^2 - y^3");
        let med = toric_generators(&ns(&[4, 5, 6, 7])).unwrap();
        assert_eq!(med.len(), 6);
        assert!(med.iter().all(|b| b.trail.exponents[0] >= 1));
    }

    #[test]
    fn normal_forms() {
        let s = ns(&[4, 5, 7]);
        let p = Polynomial::from_terms(4, [(rat(1), vec![0, 2, 0, 0]), (rat(-1), vec![0, 0, 1, 0])]);
        assert!(normal_form(&p, &s).unwrap().is_zero());
        let p = Polynomial::from_terms(4, [(rat(1), vec![0, 1, 1, 0]), (rat(-1), vec![1, 0, 0, 1])]);
        let nf = normal_form(&p, &s).unwrap();
        assert_eq!(nf, RingElement::from_terms([(15, rat(1)), (11, rat(-1))]));
        assert_eq!(nf.to_string(), "t^15 - t^11");
        assert!(normal_form(&Polynomial::zero(4), &s).unwrap().is_zero());
    }

    #[test]
    fn graded_pieces() {
        let s = ns(&[4, 5, 7]);
        assert_eq!(graded_basis(BasisKind::R, &s, 6).dim(), 0);
        match graded_basis(BasisKind::Q, &s, 10) {
            GradedBasis::Monomials { exponents, .. } => {
                assert_eq!(exponents, vec![vec![0, 0, 1, 0], vec![0, 2, 0, 0]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(graded_basis(BasisKind::Q, &s, 0).dim(), 1);
        assert_eq!(graded_basis(BasisKind::Qmin, &s, 10).dim(), 1);
    }

    #[test]
    fn total_degree_monomials() {
        assert_eq!(monomials_of_total_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_total_degree(5, 0), vec![vec![0; 5]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
            (2u64..=8)
                .prop_flat_map(|m| (Just(m), proptest::collection::vec(m + 1..=150, 1..6)))
                .prop_filter_map("gcd 1", |(m, mut gens)| {
                    gens.push(m);
                    NumericalSemigroup::from_generators(&gens).ok()
                })
        }

        fn poly(m: usize) -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec(
                (-5i64..=5, proptest::collection::vec(0u32..3, m)),
                0..5,
            )
            .prop_map(move |ts| Polynomial::from_terms(m, ts.into_iter().map(|(c, e)| (rat(c), e))))
        }

        proptest! {
            #[test]
            fn binomials_vanish_in_r(s in semigroup()) {
                for b in toric_generators(&s).unwrap() {
                    prop_assert_eq!(s_degree(&b.lead, &s).unwrap(), s_degree(&b.trail, &s).unwrap());
                    prop_assert!(normal_form(&b.to_polynomial(), &s).unwrap().is_zero());
                }
            }

            #[test]
            fn normal_form_is_a_ring_map(
                (s, f, g) in semigroup().prop_flat_map(|s| { let m = s.m(); (Just(s), poly(m), poly(m)) })
            ) {
                let nf = |p: &Polynomial| normal_form(p, &s).unwrap();
                prop_assert_eq!(nf(&f.mul(&g)), nf(&f).mul(&nf(&g)));
                prop_assert_eq!(nf(&f.add(&g)), nf(&f).add(&nf(&g)));
            }

            #[test]
            fn r_pieces_are_at_most_one_dimensional(s in semigroup(), n in 0u64..200) {
                let dim = graded_basis(BasisKind::R, &s, n).dim();
                prop_assert_eq!(dim == 1, s.contains_u64(n));
            }
        }
    }
}
