//! Numerical semigroups: membership, Apéry sets, minimal generators and
//! factorization lengths.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A numerical semigroup given by generators, with its Apéry set with respect
/// to the multiplicity precomputed.
///
/// `apery[i]` is the least element of the semigroup congruent to `i` modulo
/// the multiplicity `m`, for `1 <= i < m`. Index 0 is stored as `m` itself,
/// so `apery_element(0) == m` (the convention `a_0 = m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    minimal_generators: Vec<u64>,
    multiplicity: u64,
    apery: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let m = generators[0];
        let m_usize = usize::try_from(m).map_err(|_| Error::Overflow("multiplicity"))?;
        let apery = apery_by_shortest_paths(m_usize, &generators)?;

        // a_i is a minimal generator iff it is not a sum of two nonzero Apéry elements
        let mut minimal_generators = vec![m];
        for i in 1..m_usize {
            let decomposable = (1..m_usize).any(|j| {
                let k = (i + m_usize - j) % m_usize;
                k != 0 && apery[j] + apery[k] == apery[i]
            });
            if !decomposable {
                minimal_generators.push(apery[i]);
            }
        }
        minimal_generators.sort_unstable();

        Ok(NumericalSemigroup {
            generators,
            minimal_generators,
            multiplicity: m,
            apery,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// The multiplicity as an index bound (the size of `Z_m`).
    pub fn m(&self) -> usize {
        self.multiplicity as usize
    }

    /// `(a_1, ..., a_{m-1})`.
    pub fn apery_set(&self) -> &[u64] {
        &self.apery[1..]
    }

    /// `a_i` for `i` taken modulo `m`, with `a_0 = m`.
    pub fn apery_element(&self, i: usize) -> u64 {
        self.apery[i % self.m()]
    }

    /// Degree of the variable `x_i` (`x_0 = y` has degree `m`).
    pub fn variable_degree(&self, i: usize) -> u64 {
        self.apery_element(i)
    }

    pub fn max_apery(&self) -> u64 {
        self.apery.iter().copied().max().unwrap_or(self.multiplicity)
    }

    /// `max(Ap(S)) - m`; `-1` for the semigroup of all nonnegative integers.
    pub fn frobenius(&self) -> i64 {
        if self.multiplicity == 1 {
            return -1;
        }
        self.apery[1..].iter().copied().max().unwrap() as i64 - self.multiplicity as i64
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        self.contains_u64(n as u64)
    }

    pub fn contains_u64(&self, n: u64) -> bool {
        let r = (n % self.multiplicity) as usize;
        r == 0 || n >= self.apery[r]
    }

    pub fn is_med(&self) -> bool {
        self.minimal_generators.len() as u64 == self.multiplicity
    }

    /// Maximum number of minimal generators summing to `n`; `None` if `n` is
    /// not in the semigroup.
    pub fn max_factorization_length(&self, n: i64) -> Option<u64> {
        if !self.contains(n) {
            return None;
        }
        let table = FactorizationLengths::new(self, n as u64);
        table.get(n as u64)
    }

    /// Elements of the semigroup in increasing order up to `bound`.
    pub fn elements_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=bound).filter(move |&n| self.contains_u64(n))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

/// Least element of each residue class modulo `m`, by Bellman-Ford style
/// relaxation over the residues (each generator is an edge `r -> r + g`).
fn apery_by_shortest_paths(m: usize, gens: &[u64]) -> Result<Vec<u64>> {
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let steps: Vec<(usize, u64)> = gens
        .iter()
        .filter(|&&g| g % m as u64 != 0)
        .map(|&g| ((g % m as u64) as usize, g))
        .collect();
    // each pass relaxes every edge from every residue; m passes suffice
    for _ in 0..m {
        let mut changed = false;
        for r in 0..m {
            if dist[r] == u64::MAX {
                continue;
            }
            for &(step, g) in &steps {
                let t = (r + step) % m;
                let cand = dist[r].checked_add(g).ok_or(Error::Overflow("Apéry set"))?;
                if cand < dist[t] {
                    dist[t] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if dist.contains(&u64::MAX) {
        return Err(Error::InternalInvariant(
            "residue class unreachable although gcd is 1".into(),
        ));
    }
    dist[0] = m as u64;
    Ok(dist)
}

/// Table of maximal factorization lengths `L_max(n)` for `0 <= n <= bound`,
/// by dynamic programming over the minimal generators.
#[derive(Clone, Debug)]
pub struct FactorizationLengths {
    lengths: Vec<Option<u64>>,
}

impl FactorizationLengths {
    pub fn new(s: &NumericalSemigroup, bound: u64) -> Self {
        let bound = bound as usize;
        let mut lengths: Vec<Option<u64>> = vec![None; bound + 1];
        lengths[0] = Some(0);
        let gens: Vec<usize> = s.minimal_generators().iter().map(|&g| g as usize).collect();
        for n in 1..=bound {
            lengths[n] = gens
                .iter()
                .filter(|&&g| g <= n)
                .filter_map(|&g| lengths[n - g].map(|l| l + 1))
                .max();
        }
        FactorizationLengths { lengths }
    }

    pub fn bound(&self) -> u64 {
        self.lengths.len() as u64 - 1
    }

    /// `None` outside the semigroup or beyond the table.
    pub fn get(&self, n: u64) -> Option<u64> {
        self.lengths.get(n as usize).copied().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    /// Membership by brute force over combinations.
    fn brute_contains(gens: &[u64], n: u64) -> bool {
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        for k in 1..=n as usize {
            reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
        }
        reach[n as usize]
    }

    /// Longest factorization by exhaustive enumeration of exponent vectors.
    fn brute_lmax(gens: &[u64], n: u64) -> Option<u64> {
        fn go(gens: &[u64], n: u64, len: u64, best: &mut Option<u64>) {
            if n == 0 {
                *best = Some(best.map_or(len, |b| b.max(len)));
                return;
            }
            let Some((&g, rest)) = gens.split_first() else { return };
            let mut k = 0;
            while k * g <= n {
                go(rest, n - k * g, len + k, best);
                k += 1;
            }
        }
        let mut best = None;
        go(gens, n, 0, &mut best);
        best
    }

    #[test]
    fn apery_fixtures() {
        let s = ns(&[4, 5, 7]);
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.apery_set(), &[5, 10, 7]);
        assert_eq!(ns(&[4, 13, 31]).apery_set(), &[13, 26, 31]);
        assert_eq!(ns(&[2, 3]).apery_set(), &[3]);
    }

    #[test]
    fn apery_matches_brute_force_minimum() {
        let gens = [5, 6, 19];
        let s = ns(&gens);
        for r in 1..5u64 {
            let least = (0..5 * 19)
                .filter(|n| n % 5 == r && brute_contains(&gens, *n))
                .min()
                .unwrap();
            assert_eq!(s.apery_element(r as usize), least);
        }
        assert_eq!(s.apery_set(), &[6, 12, 18, 19]);
    }

    #[test]
    fn gcd_must_be_one() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 4]),
            Err(Error::GcdNotOne(2))
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]),
            Err(Error::EmptyGenerators)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[0, 3, 4]),
            Err(Error::ZeroGenerator)
        );
    }

    #[test]
    fn generators_are_sorted_and_deduplicated() {
        let s = ns(&[7, 5, 4, 5, 9]);
        assert_eq!(s.generators(), &[4, 5, 7, 9]);
        assert_eq!(s.minimal_generators(), &[4, 5, 7]);
    }

    #[test]
    fn membership() {
        let s = ns(&[4, 5, 7]);
        assert!(s.contains(9));
        assert!(!s.contains(6));
        assert!(s.contains(0));
        assert!(!s.contains(-3));
        for n in 0..30 {
            assert_eq!(s.contains(n), brute_contains(&[4, 5, 7], n as u64), "n = {n}");
        }
    }

    #[test]
    fn med_detection() {
        assert!(ns(&[4, 5, 6, 7]).is_med());
        assert!(!ns(&[4, 5, 7]).is_med());
        assert!(ns(&[2, 3]).is_med());
        assert_eq!(ns(&[4, 5, 7]).frobenius(), 6);
        assert_eq!(ns(&[1]).frobenius(), -1);
    }

    #[test]
    fn factorization_lengths() {
        let s = ns(&[5, 6, 19]);
        assert_eq!(s.max_factorization_length(24), Some(4));
        assert_eq!(s.max_factorization_length(19), Some(1));
        assert_eq!(s.max_factorization_length(25), Some(5));
        assert_eq!(s.max_factorization_length(0), Some(0));
        assert_eq!(s.max_factorization_length(7), None);
        for n in 0..80 {
            assert_eq!(s.max_factorization_length(n), brute_lmax(&[5, 6, 19], n as u64));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
            (2u64..=8)
                .prop_flat_map(|m| (Just(m), proptest::collection::vec(m + 1..=200, 1..6)))
                .prop_filter_map("gcd 1", |(m, mut gens)| {
                    gens.push(m);
                    NumericalSemigroup::from_generators(&gens).ok()
                })
        }

        proptest! {
            #[test]
            fn apery_elements_are_least_in_class(s in semigroup()) {
                let m = s.multiplicity();
                for (i, &a) in s.apery_set().iter().enumerate() {
                    prop_assert_eq!(a % m, i as u64 + 1);
                    prop_assert!(s.contains(a as i64));
                    prop_assert!(!s.contains(a as i64 - m as i64));
                }
            }

            #[test]
            fn membership_agrees_with_brute_force(s in semigroup()) {
                let bound = (s.frobenius() + s.multiplicity() as i64) as u64;
                for n in 0..=bound {
                    prop_assert_eq!(s.contains_u64(n), brute_contains(s.generators(), n));
                }
            }

            #[test]
            fn minimal_generators_are_minimal(s in semigroup()) {
                let mins = s.minimal_generators();
                for &g in s.generators() {
                    prop_assert!(brute_contains(mins, g));
                }
                for (k, &g) in mins.iter().enumerate() {
                    let others: Vec<u64> = mins.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect();
                    prop_assert!(!brute_contains(&others, g));
                }
                prop_assert_eq!(s.is_med(), mins.len() as u64 == s.multiplicity());
            }

            #[test]
            fn lmax_is_superadditive(s in semigroup(), a in 0u64..120, b in 0u64..120) {
                let table = FactorizationLengths::new(&s, a + b);
                if let (Some(la), Some(lb)) = (table.get(a), table.get(b)) {
                    prop_assert!(table.get(a + b).unwrap() >= la + lb);
                }
            }
        }
    }
}
