//! Kunz cone coordinates: the `b_ij` matrix, face signatures and Kunz posets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// `b_ij = (a_i + a_j - a_{i+j}) / m` for all `i, j` in `Z_m`, with `a_0 = m`.
///
/// Entries with an index 0 are stored too (`b_0j = 1`), which lets the
/// differentials use the same lookup for every letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMatrix {
    m: usize,
    entries: Vec<u64>,
}

impl BMatrix {
    pub fn new(s: &NumericalSemigroup) -> Result<Self> {
        let m = s.m();
        let mut entries = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                let lhs = s.apery_element(i) + s.apery_element(j);
                let rhs = s.apery_element(i + j);
                if lhs < rhs || !(lhs - rhs).is_multiple_of(m as u64) {
                    return Err(Error::InternalInvariant(format!(
                        "b_{i}{j} = ({lhs} - {rhs})/{m} is not a nonnegative integer"
                    )));
                }
                entries[i * m + j] = (lhs - rhs) / m as u64;
            }
        }
        Ok(BMatrix { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Indices are taken modulo `m`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[(i % self.m) * self.m + (j % self.m)]
    }

    /// Entries for `1 <= i <= j <= m-1`.
    pub fn upper(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        (1..self.m).flat_map(move |i| (i..self.m).map(move |j| ((i, j), self.get(i, j))))
    }
}

pub fn b_matrix(s: &NumericalSemigroup) -> Result<BMatrix> {
    BMatrix::new(s)
}

/// The set of tight Kunz inequalities `a_i + a_j = a_{i+j}` (pairs `i <= j`,
/// `i + j` nonzero mod `m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceSignature {
    pub m: usize,
    pub tight_pairs: BTreeSet<(usize, usize)>,
}

impl FaceSignature {
    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let tight_pairs = pairs
            .into_iter()
            .map(|(i, j)| (i.min(j) % m, i.max(j) % m))
            .collect();
        FaceSignature { m, tight_pairs }
    }

    pub fn is_interior(&self) -> bool {
        self.tight_pairs.is_empty()
    }

    /// Relabels every index by `i -> u*i mod m` for a unit `u`.
    pub fn relabel(&self, u: usize) -> FaceSignature {
        FaceSignature::from_pairs(
            self.m,
            self.tight_pairs
                .iter()
                .map(|&(i, j)| ((u * i) % self.m, (u * j) % self.m)),
        )
    }
}

impl fmt::Display for FaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tight_pairs
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn face_signature(s: &NumericalSemigroup) -> Result<FaceSignature> {
    let b = b_matrix(s)?;
    let m = s.m();
    Ok(FaceSignature::from_pairs(
        m,
        b.upper()
            .filter(|&((i, j), v)| v == 0 && (i + j) % m != 0)
            .map(|(p, _)| p),
    ))
}

/// The Kunz poset on `Z_m`: `i < j` for distinct nonzero `i, j` when
/// `a_j - a_i` lies in the Apéry set, and `0` below everything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunzPoset {
    pub m: usize,
    /// Strict relation `(i, j)` meaning `i < j`; transitively closed.
    pub relation: BTreeSet<(usize, usize)>,
}

impl KunzPoset {
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.relation.contains(&(i, j))
    }

    /// Cover relations of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relation
            .iter()
            .copied()
            .filter(|&(i, j)| !(0..self.m).any(|k| self.less(i, k) && self.less(k, j)))
            .collect()
    }

    /// Graphviz rendering, one node per residue and one edge per cover.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph kunz_poset {\n  rankdir=BT;\n");
        for i in 0..self.m {
            out.push_str(&format!("  {i};\n"));
        }
        for (i, j) in self.covers() {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn kunz_poset(s: &NumericalSemigroup) -> Result<KunzPoset> {
    let b = b_matrix(s)?;
    let m = s.m();
    let mut relation = BTreeSet::new();
    for i in 1..m {
        relation.insert((0, i));
        for j in 1..m {
            // a_j - a_i = a_{j-i} exactly when b_{i, j-i} = 0
            if i != j && b.get(i, (j + m - i) % m) == 0 {
                relation.insert((i, j));
            }
        }
    }
    Ok(KunzPoset { m, relation })
}

pub fn same_face(s: &NumericalSemigroup, t: &NumericalSemigroup) -> Result<bool> {
    Ok(s.multiplicity() == t.multiplicity() && face_signature(s)? == face_signature(t)?)
}

/// Whether `point = (x_1, ..., x_{m-1})` is the Apéry tuple of a numerical
/// semigroup of multiplicity `m = point.len() + 1`.
pub fn in_cone(point: &[u64]) -> bool {
    let m = point.len() + 1;
    let x = |i: usize| point[i - 1];
    for i in 1..m {
        if x(i) % m as u64 != i as u64 || x(i) < m as u64 {
            return false;
        }
    }
    for i in 1..m {
        for j in i..m {
            let k = (i + j) % m;
            if k != 0 && x(i) + x(j) < x(k) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn b_values() {
        let b = b_matrix(&ns(&[4, 5, 7])).unwrap();
        assert_eq!(b.get(1, 1), 0);
        assert_eq!(b.get(1, 2), 2);
        assert_eq!(b.get(3, 3), 1);
        assert_eq!(b.get(1, 3), 2);
        let b = b_matrix(&ns(&[4, 13, 31])).unwrap();
        assert_eq!(
            (b.get(1, 1), b.get(1, 2), b.get(3, 3), b.get(1, 3)),
            (0, 2, 9, 10)
        );
        // letter 0 always contributes a single y
        assert_eq!(b.get(0, 3), 1);
    }

    #[test]
    fn b_is_homogeneous_with_apery_degrees() {
        let s = ns(&[4, 13, 31]);
        let b = b_matrix(&s).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    s.apery_element(i) + s.apery_element(j),
                    4 * b.get(i, j) + s.apery_element(i + j)
                );
            }
        }
    }

    #[test]
    fn signatures() {
        let sig = |g: &[u64]| face_signature(&ns(g)).unwrap();
        assert_eq!(sig(&[4, 5, 7]), FaceSignature::from_pairs(4, [(1, 1)]));
        assert!(sig(&[4, 5, 6, 7]).is_interior());
        assert_eq!(sig(&[4, 5, 6]), FaceSignature::from_pairs(4, [(1, 2)]));
        assert_eq!(sig(&[4, 5, 6]).relabel(3), FaceSignature::from_pairs(4, [(2, 3)]));
    }

    #[test]
    fn posets() {
        let p = kunz_poset(&ns(&[4, 5, 7])).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (0, 3), (1, 2)]);
        assert!(p.less(0, 2));
        let p = kunz_poset(&ns(&[4, 5, 6, 7])).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (0, 2), (0, 3)]);
        let p = kunz_poset(&ns(&[2, 3])).unwrap();
        assert_eq!(p.covers(), vec![(0, 1)]);
        assert!(p.to_dot().contains("0 -> 1;"));
    }

    #[test]
    fn same_face_examples() {
        let s = ns(&[4, 5, 7]);
        assert!(same_face(&s, &ns(&[4, 13, 31])).unwrap());
        assert!(!same_face(&s, &ns(&[4, 5, 6])).unwrap());
        assert!(same_face(&s, &s).unwrap());
        assert!(!same_face(&ns(&[3, 4, 5]), &ns(&[4, 5, 6, 7])).unwrap());
    }

    #[test]
    fn cone_membership() {
        assert!(in_cone(&[5, 10, 7]));
        // all four Kunz inequalities hold: 10 >= 6, 11 >= 7, 13 >= 5, 14 >= 6
        assert!(in_cone(&[5, 6, 7]));
        assert!(!in_cone(&[6, 10, 7]));
        // 2*5 < 14 violates 2 a_1 >= a_2
        assert!(!in_cone(&[5, 14, 7]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
            (2u64..=8)
                .prop_flat_map(|m| (Just(m), proptest::collection::vec(m + 1..=120, 1..6)))
                .prop_filter_map("gcd 1", |(m, mut gens)| {
                    gens.push(m);
                    NumericalSemigroup::from_generators(&gens).ok()
                })
        }

        /// Multiplies every Apéry generator by `u = 1 + k m`, which keeps the
        /// additive relations among Apéry elements.
        fn scaled(s: &NumericalSemigroup, k: u64) -> NumericalSemigroup {
            let m = s.multiplicity();
            let u = 1 + k * m;
            let mut gens: Vec<u64> = s.apery_set().iter().map(|a| a * u).collect();
            gens.push(m);
            NumericalSemigroup::from_generators(&gens).unwrap()
        }

        proptest! {
            #[test]
            fn apery_tuple_in_cone(s in semigroup()) {
                prop_assert!(in_cone(s.apery_set()));
            }

            #[test]
            fn interior_iff_med(s in semigroup()) {
                prop_assert_eq!(face_signature(&s).unwrap().is_interior(), s.is_med());
            }

            #[test]
            fn scaling_preserves_face_and_poset(s in semigroup(), k in 1u64..4) {
                let t = scaled(&s, k);
                prop_assert!(same_face(&s, &t).unwrap());
                prop_assert_eq!(kunz_poset(&s).unwrap(), kunz_poset(&t).unwrap());
            }

            #[test]
            fn poset_determines_face(s in semigroup(), t in semigroup()) {
                if s.multiplicity() == t.multiplicity() {
                    prop_assert_eq!(
                        same_face(&s, &t).unwrap(),
                        kunz_poset(&s).unwrap() == kunz_poset(&t).unwrap()
                    );
                }
            }
        }
    }
}
