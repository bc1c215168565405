//! Exact power series arithmetic for Poincaré series and the Golod bound
//! `P(z) = (1+z)^n / (1 - z^2 P_I(z))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apery_resolution;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::m4_special::{classify_face_m4, FaceTag};
use crate::oracle::{self, ModuleKind, RingKind};
use crate::semigroup::NumericalSemigroup;

/// Coefficients `c_0..c_D` of a power series known modulo `z^{D+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// A polynomial, padded with zeros or cut to precision `bound`.
    pub fn polynomial(coeffs: &[BigInt], bound: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs.iter().take(bound + 1).cloned().collect();
        c.resize(bound + 1, BigInt::zero());
        TruncatedSeries::new(c)
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, bound: usize) -> Self {
        TruncatedSeries::polynomial(&self.coeffs, bound.min(self.bound()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = self.bound().min(other.bound());
        TruncatedSeries::new((0..=b).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let b = self.bound().min(other.bound());
        TruncatedSeries::new((0..=b).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let b = self.bound().min(other.bound());
        let mut out = vec![BigInt::zero(); b + 1];
        for (i, x) in self.coeffs.iter().enumerate().take(b + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(b + 1 - i) {
                out[i + j] += x * y;
            }
        }
        TruncatedSeries::new(out)
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "series with constant term {c0} has no integral inverse"
            )));
        }
        let b = self.bound();
        let mut inv = vec![BigInt::zero(); b + 1];
        inv[0] = c0.clone();
        for k in 1..=b {
            let s: BigInt = (1..=k).map(|i| &self.coeffs[i] * &inv[k - i]).sum();
            inv[k] = -(s * c0);
        }
        Ok(TruncatedSeries::new(inv))
    }

    /// Multiplies by `z^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let b = self.bound();
        let mut out = vec![BigInt::zero(); b + 1];
        if k <= b {
            out[k..].clone_from_slice(&self.coeffs[..=b - k]);
        }
        TruncatedSeries::new(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `numerator / denominator` with integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        match denominator.first() {
            Some(c) if c.abs() == BigInt::one() => Ok(RationalSeries { numerator, denominator }),
            _ => Err(Error::InvalidArgument(
                "denominator must have constant term 1 or -1".into(),
            )),
        }
    }

    pub fn expand(&self, bound: usize) -> TruncatedSeries {
        let num = TruncatedSeries::polynomial(&self.numerator, bound);
        let den = TruncatedSeries::polynomial(&self.denominator, bound);
        num.mul(&den.inverse().expect("denominator checked on construction"))
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `(1+z) / (1-(m-1)z)`, the Poincaré series of `k` over an MED ring.
pub fn med_poincare(m: usize) -> RationalSeries {
    assert!(m >= 2, "multiplicity is at least 2");
    RationalSeries::new(ints(&[1, 1]), ints(&[1, -(m as i64 - 1)])).unwrap()
}

/// `sum_{i=0}^{m-2} (i+1) C(m, i+2) z^i`, the Betti series of `I_S` for MED `S`.
pub fn med_piq(m: usize) -> TruncatedSeries {
    assert!(m >= 2, "multiplicity is at least 2");
    let m = m as u64;
    TruncatedSeries::new(
        (0..=m - 2)
            .map(|i| BigInt::from(i + 1) * binomial(m, i + 2))
            .collect(),
    )
}

/// `(1+z)^n` to precision `bound`.
pub fn one_plus_z_pow(n: usize, bound: usize) -> TruncatedSeries {
    TruncatedSeries::polynomial(
        &(0..=n as u64).map(|k| binomial(n as u64, k)).collect::<Vec<_>>(),
        bound,
    )
}

/// Closed form of `P^R_k` when one is known: MED semigroups and every face
/// of the multiplicity 4 cone.
pub fn closed_form_poincare(s: &NumericalSemigroup, bound: usize) -> Option<TruncatedSeries> {
    if s.is_med() {
        return Some(med_poincare(s.m()).expand(bound));
    }
    let class = classify_face_m4(s).ok()?;
    let beta = |d: usize| -> i64 {
        match (class.tag, d) {
            (_, 0) => 1,
            (FaceTag::Ray, _) => 2,
            (FaceTag::CiFacet, d) => 2 * d as i64 + 1,
            (FaceTag::NonCiFacet, d) => 3 << (d - 1),
            (FaceTag::Interior, d) => 4 * 3i64.pow(d as u32 - 1),
        }
    };
    Some(TruncatedSeries::new((0..=bound).map(|d| BigInt::from(beta(d))).collect()))
}

/// `P^R_k` through `z^bound`: a closed form if one is known, otherwise the
/// Betti numbers of the Apéry resolution tensored with `k`.
pub fn poincare_truncated<F: Field>(field: &F, s: &NumericalSemigroup, bound: usize) -> Result<TruncatedSeries> {
    match closed_form_poincare(s, bound) {
        Some(p) => Ok(p),
        None => poincare_computed(field, s, bound),
    }
}

/// `P^R_k` through `z^bound` from the Apéry resolution, ignoring closed forms.
pub fn poincare_computed<F: Field>(field: &F, s: &NumericalSemigroup, bound: usize) -> Result<TruncatedSeries> {
    let betti = apery_resolution::betti_via_tensor(field, s, bound)?;
    Ok(TruncatedSeries::from_u64(&betti.values))
}

/// Where the Betti series of the defining ideal comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PiqSource {
    Supplied(TruncatedSeries),
    /// MED formula or the multiplicity 4 non-CI facet value `3 + 2z`.
    Builtin,
    /// Builtin if available, else a minimal resolution of `I_S` over the
    /// polynomial ring on the minimal generators.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolodReport {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub piq: TruncatedSeries,
    /// Both sides were compared through `z^equal_through`.
    pub equal_through: usize,
    pub golod: bool,
    pub first_difference: Option<usize>,
}

impl fmt::Display for GolodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Golod through degree {}: {}", self.equal_through, self.golod)
    }
}

fn builtin_piq(s: &NumericalSemigroup) -> Option<TruncatedSeries> {
    if s.is_med() {
        return Some(med_piq(s.m()));
    }
    match classify_face_m4(s) {
        Ok(c) if c.tag == FaceTag::NonCiFacet => Some(TruncatedSeries::from_i64(&[3, 2])),
        _ => None,
    }
}

/// Degree bound for the resolution of `Q/I_S` over the minimal-generator
/// ring: the last syzygies sit in degree at most `F + sum of generators`.
pub fn toric_degree_bound(s: &NumericalSemigroup) -> u64 {
    let f = s.frobenius().max(0) as u64;
    f + s.minimal_generators().iter().sum::<u64>() + 1
}

/// Betti series of `I_S` over the minimal-generator ring, by the oracle.
pub fn oracle_piq<F: Field>(field: &F, s: &NumericalSemigroup) -> Result<TruncatedSeries> {
    let n = s.embedding_dimension();
    let b = oracle::betti_table(field, s, RingKind::Qmin, ModuleKind::ToricQuotient, n, toric_degree_bound(s))?;
    let coeffs: Vec<u64> = b.values[1..].to_vec();
    Ok(TruncatedSeries::from_u64(&coeffs))
}

/// Compares `P^R_k` with `(1+z)^n / (1 - z^2 P_I)` through `z^bound`.
/// Agreement is only a statement about that range.
pub fn golod_check<F: Field>(
    field: &F,
    s: &NumericalSemigroup,
    bound: usize,
    piq: PiqSource,
) -> Result<GolodReport> {
    let piq = match piq {
        PiqSource::Supplied(p) => p,
        PiqSource::Builtin => builtin_piq(s).ok_or(Error::MissingPiq)?,
        PiqSource::Auto => match builtin_piq(s) {
            Some(p) => p,
            None => oracle_piq(field, s)?,
        },
    };
    let n = s.embedding_dimension();
    let lhs = poincare_truncated(field, s, bound)?;
    let p = TruncatedSeries::polynomial(&piq.coeffs, bound);
    let one = TruncatedSeries::polynomial(&[BigInt::one()], bound);
    let den = one.sub(&p.shift(2));
    let rhs = one_plus_z_pow(n, bound).mul(&den.inverse()?);
    let first_difference = (0..=bound).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    Ok(GolodReport {
        lhs,
        rhs,
        piq,
        equal_through: bound,
        golod: first_difference.is_none(),
        first_difference,
    })
}
