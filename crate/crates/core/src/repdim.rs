//! Dimension bounds for representations of the Heisenberg group scheme on
//! which the centre acts by scalars.
//!
//! Such a representation restricted to `L` is a multiset of characters
//! supported on `S`, invariant under the acting elementary 2-group. The
//! minimum and gcd of the possible dimensions follow from the orbit
//! decomposition; [`exhaustive_min_dim`] re-derives the minimum by direct
//! search for small ranks.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::GroupElement;
use crate::error::{arg, Result};
use crate::spinlat::{Parity, SpinCharData};

/// Characters of `X*(L)` with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharMultiset {
    mult: BTreeMap<GroupElement, u64>,
}

impl CharMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_orbit(orbit: &[GroupElement], multiplicity: u64) -> Self {
        let mut m = Self::new();
        for c in orbit {
            m.insert(c.clone(), multiplicity);
        }
        m
    }

    /// Adds `k` copies of `c`.
    pub fn insert(&mut self, c: GroupElement, k: u64) {
        if k > 0 {
            *self.mult.entry(c).or_insert(0) += k;
        }
    }

    pub fn multiplicity(&self, c: &GroupElement) -> u64 {
        self.mult.get(c).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> {
        self.mult.iter().map(|(c, &k)| (c, k))
    }

    pub fn union(&self, other: &CharMultiset) -> CharMultiset {
        let mut out = self.clone();
        for (c, k) in other.iter() {
            out.insert(c.clone(), k);
        }
        out
    }
}

/// Orbit decomposition summary for one rank and parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub r: usize,
    pub parity: Parity,
    pub orbit_sizes: Vec<usize>,
    pub min_dim: u64,
    pub gcd_dim: u64,
    #[serde(skip)]
    pub achieving_multiset: CharMultiset,
}

/// True iff every acting-group element preserves the multiplicities.
///
/// Checking a generating set of the acting group suffices.
pub fn is_invariant(d: &SpinCharData, m: &CharMultiset) -> Result<bool> {
    for (c, _) in m.iter() {
        if !d.x_l().contains(c) {
            return arg(format!("{c} is not a character of X*(L)"));
        }
    }
    for e in d.acting_generators() {
        for (c, k) in m.iter() {
            if m.multiplicity(&d.act_subset(e, c)?) != k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn orbits_on_s(d: &SpinCharData) -> Result<Vec<Vec<GroupElement>>> {
    d.orbits_on_faithful_set()
}

/// Least dimension of a nonempty invariant multiset supported on `S`.
///
/// Such a multiset is constant on each orbit, so it is a nonnegative
/// combination of orbit indicator multisets; the least dimension is the
/// least orbit size.
pub fn min_faithful_dim(d: &SpinCharData) -> Result<u64> {
    Ok(orbits_on_s(d)?
        .iter()
        .map(|o| o.len() as u64)
        .min()
        .expect("S is nonempty"))
}

/// Gcd of the dimensions of all nonempty invariant multisets on `S`, i.e.
/// the gcd of the orbit sizes.
pub fn merkurjev_index_bound(d: &SpinCharData) -> Result<u64> {
    Ok(orbits_on_s(d)?
        .iter()
        .fold(0u64, |g, o| g.gcd(&(o.len() as u64))))
}

pub fn divisibility_report(d: &SpinCharData) -> Result<DivisibilityReport> {
    let orbits = orbits_on_s(d)?;
    let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let smallest = orbits
        .iter()
        .min_by_key(|o| o.len())
        .expect("S is nonempty");
    Ok(DivisibilityReport {
        r: d.r(),
        parity: d.parity(),
        min_dim: smallest.len() as u64,
        gcd_dim: orbit_sizes.iter().fold(0u64, |g, &n| g.gcd(&(n as u64))),
        achieving_multiset: CharMultiset::from_orbit(smallest, 1),
        orbit_sizes,
    })
}

/// Direct search for the least dimension of a nonempty invariant
/// multiset supported on `S`, among dimensions `1..=max_dim`.
///
/// Enumerates multiplicity vectors point by point, pruning a branch as soon
/// as an assigned point and its image under an acting generator disagree.
/// Does not use the orbit decomposition. Returns `None` if no such
/// multiset has dimension at most `max_dim`.
pub fn exhaustive_min_dim(d: &SpinCharData, max_dim: u64) -> Result<Option<(u64, CharMultiset)>> {
    let points: Vec<GroupElement> = d.faithful_set()?.into_iter().collect();
    let index: BTreeMap<&GroupElement, usize> =
        points.iter().enumerate().map(|(i, c)| (c, i)).collect();
    // partner[g][i] = index of generator g applied to point i
    let mut partners = Vec::new();
    for e in d.acting_generators() {
        let row = points
            .iter()
            .map(|c| {
                let img = d.act_subset(e, c)?;
                index
                    .get(&img)
                    .copied()
                    .ok_or_else(|| crate::Error::Verification(format!("{img} left S")))
            })
            .collect::<Result<Vec<usize>>>()?;
        partners.push(row);
    }
    for target in 1..=max_dim {
        let mut mult = vec![0u64; points.len()];
        if search(0, target, &mut mult, &partners) {
            let mut m = CharMultiset::new();
            for (c, &k) in points.iter().zip(&mult) {
                m.insert(c.clone(), k);
            }
            return Ok(Some((target, m)));
        }
    }
    Ok(None)
}

/// Assigns multiplicities to points `i..` with exactly `remaining` left.
fn search(i: usize, remaining: u64, mult: &mut [u64], partners: &[Vec<usize>]) -> bool {
    if i == mult.len() {
        return remaining == 0;
    }
    for k in 0..=remaining {
        mult[i] = k;
        // acting generators are involutions, so checking images of `i`
        // also covers preimages
        let consistent = partners.iter().all(|row| {
            let j = row[i];
            j > i || mult[j] == k
        });
        if consistent && search(i + 1, remaining - k, mult, partners) {
            return true;
        }
    }
    mult[i] = 0;
    false
}

/// The invariant multisets on `S` generated by orbit indicators, used by
/// tests to sample invariant representations.
pub fn orbit_combination(orbits: &[Vec<GroupElement>], weights: &[u64]) -> CharMultiset {
    let mut m = CharMultiset::new();
    for (o, &w) in orbits.iter().zip(weights) {
        m = m.union(&CharMultiset::from_orbit(o, w));
    }
    m
}

/// Support of a multiset, for checking it lies in `S`.
pub fn support(m: &CharMultiset) -> BTreeSet<GroupElement> {
    m.iter().map(|(c, _)| c.clone()).collect()
}

/// Largest rank for which [`verify_heisenberg`] runs the direct search.
pub const EXHAUSTIVE_RANK_MAX: usize = 4;

/// Outcome of the dimension checks for one rank and parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergCheck {
    pub r: usize,
    pub parity: Parity,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    pub min_dim: u64,
    pub gcd_dim: u64,
    pub expected: u64,
    /// Least dimension found by direct search, for small ranks.
    pub exhaustive_min_dim: Option<u64>,
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks that the least dimension and the gcd of dimensions of invariant
/// multisets on `S` are `2^r` (`Odd`) or `2^{r-1}` (`Even`), confirming the
/// minimum by direct search when `r <= EXHAUSTIVE_RANK_MAX`.
pub fn verify_heisenberg(r: usize, parity: Parity) -> Result<HeisenbergCheck> {
    let d = crate::spinlat::build_char_data(r, parity)?;
    let rep = divisibility_report(&d)?;
    let expected: u64 = match parity {
        Parity::Odd => 1 << r,
        Parity::Even => 1 << (r - 1),
    };
    let mut violations = Vec::new();
    if rep.min_dim != expected {
        violations.push(format!("least dimension {} != {expected}", rep.min_dim));
    }
    if rep.gcd_dim != expected {
        violations.push(format!("gcd of dimensions {} != {expected}", rep.gcd_dim));
    }
    if !is_invariant(&d, &rep.achieving_multiset)? {
        violations.push("orbit multiset is not invariant".to_string());
    }
    let exhaustive = if r <= EXHAUSTIVE_RANK_MAX {
        let found = exhaustive_min_dim(&d, expected)?.map(|(k, _)| k);
        if found != Some(expected) {
            violations.push(format!("direct search found {found:?}, expected {expected}"));
        }
        found
    } else {
        None
    };
    Ok(HeisenbergCheck {
        r,
        parity,
        orbit_count: rep.orbit_sizes.len(),
        orbit_sizes: rep.orbit_sizes,
        min_dim: rep.min_dim,
        gcd_dim: rep.gcd_dim,
        expected,
        exhaustive_min_dim: exhaustive,
        ok: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinlat::build_char_data;

    #[test]
    fn orbit_is_invariant_single_point_is_not() {
        let d = build_char_data(2, Parity::Odd).unwrap();
        let orbits = orbits_on_s(&d).unwrap();
        assert!(is_invariant(&d, &CharMultiset::from_orbit(&orbits[0], 1)).unwrap());
        let mut lone = CharMultiset::new();
        lone.insert(d.a().clone(), 1);
        assert!(!is_invariant(&d, &lone).unwrap());
        assert!(is_invariant(&d, &CharMultiset::new()).unwrap());
    }

    #[test]
    fn foreign_key_rejected() {
        let d = build_char_data(2, Parity::Odd).unwrap();
        let other = build_char_data(3, Parity::Odd).unwrap();
        let mut m = CharMultiset::new();
        m.insert(other.a().clone(), 1);
        assert!(is_invariant(&d, &m).is_err());
    }

    #[test]
    fn orbit_sizes_rank_three() {
        let odd = build_char_data(3, Parity::Odd).unwrap();
        let sizes: Vec<_> = orbits_on_s(&odd).unwrap().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![8]);
        let even = build_char_data(3, Parity::Even).unwrap();
        let sizes: Vec<_> = orbits_on_s(&even).unwrap().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 4]);
        let one = build_char_data(1, Parity::Odd).unwrap();
        assert_eq!(orbits_on_s(&one).unwrap().len(), 1);
        assert_eq!(orbits_on_s(&one).unwrap()[0].len(), 2);
    }

    #[test]
    fn dimension_values() {
        assert_eq!(min_faithful_dim(&build_char_data(3, Parity::Odd).unwrap()).unwrap(), 8);
        assert_eq!(min_faithful_dim(&build_char_data(3, Parity::Even).unwrap()).unwrap(), 4);
        assert_eq!(min_faithful_dim(&build_char_data(1, Parity::Odd).unwrap()).unwrap(), 2);
        assert_eq!(merkurjev_index_bound(&build_char_data(2, Parity::Even).unwrap()).unwrap(), 2);
        assert_eq!(merkurjev_index_bound(&build_char_data(1, Parity::Odd).unwrap()).unwrap(), 2);
    }

    #[test]
    fn rank_one_brute_force() {
        let d = build_char_data(1, Parity::Odd).unwrap();
        let (dim, m) = exhaustive_min_dim(&d, 2).unwrap().unwrap();
        assert_eq!(dim, 2);
        assert!(is_invariant(&d, &m).unwrap());
        assert_eq!(exhaustive_min_dim(&d, 1).unwrap(), None);
    }

    #[test]
    fn report_achieves_minimum() {
        let d = build_char_data(4, Parity::Even).unwrap();
        let rep = divisibility_report(&d).unwrap();
        assert_eq!(rep.min_dim, 8);
        assert_eq!(rep.gcd_dim, 8);
        assert_eq!(rep.achieving_multiset.dimension(), 8);
        assert!(is_invariant(&d, &rep.achieving_multiset).unwrap());
        let s = d.faithful_set().unwrap();
        assert!(support(&rep.achieving_multiset).is_subset(&s));
    }
}
