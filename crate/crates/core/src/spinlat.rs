//! Character lattices of the spin-group torus `T` and of its finite
//! subgroup scheme `L` (the inverse image of the 2-torsion of the
//! orthogonal torus), the signed-permutation Weyl action on them, and the
//! set `S` of characters that are nontrivial on the central `mu_2`.
//!
//! Generators are ordered `x_1, ..., x_r, A` throughout.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{subgroup_span, FgAbGroup, GroupElement, Presentation, Subgroup};
use crate::error::{arg, Result};
use crate::Error;

pub const MAX_RANK: usize = 16;

/// `Odd` is `Spin(2r+1)` (type B_r), `Even` is `Spin(2r)` (type D_r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn spin_n(self, r: usize) -> usize {
        match self {
            Parity::Odd => 2 * r + 1,
            Parity::Even => 2 * r,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            _ => arg(format!("parity must be `odd` or `even`, got `{s}`")),
        }
    }
}

/// Which lattice a character lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// `X*(T)`, free of rank r.
    Torus,
    /// `X*(L)`, of order `2^{r+1}`.
    Finite,
}

/// A subset of `{1..r}` stored as a bitmask; bit `i` is index `i+1`.
pub type Subset = u32;

/// Signed permutation `x_i -> ±x_{perm(i)}`, sign negative on `signs`.
///
/// As a composite it is "flip the signs in `signs`, then permute".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    perm: Vec<usize>,
    signs: Subset,
}

impl WeylElt {
    /// `perm` is zero-based: `perm[i]` is the image of index `i`.
    pub fn new(perm: Vec<usize>, signs: Subset) -> Result<Self> {
        let r = perm.len();
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return arg(format!("{perm:?} is not a permutation of 0..{r}"));
            }
        }
        if r < 32 && signs >> r != 0 {
            return arg(format!("sign mask {signs:#b} exceeds rank {r}"));
        }
        Ok(WeylElt { perm, signs })
    }

    pub fn identity(r: usize) -> Self {
        WeylElt {
            perm: (0..r).collect(),
            signs: 0,
        }
    }

    /// The product of sign changes `prod_{i in I} eps_i`.
    pub fn sign_change(r: usize, subset: Subset) -> Self {
        WeylElt {
            perm: (0..r).collect(),
            signs: subset,
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> Subset {
        self.signs
    }

    /// `self * other`: act by `other` first.
    pub fn compose(&self, other: &WeylElt) -> Result<WeylElt> {
        if self.rank() != other.rank() {
            return arg("composing Weyl elements of different rank");
        }
        // (p1 e_S1)(p2 e_S2) = p1 p2 e_{p2^{-1}(S1) xor S2}
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let mut pulled: Subset = 0;
        for (i, &j) in other.perm.iter().enumerate() {
            if self.signs >> j & 1 == 1 {
                pulled |= 1 << i;
            }
        }
        Ok(WeylElt {
            perm,
            signs: pulled ^ other.signs,
        })
    }
}

/// Character data of `Spin(2r+1)` or `Spin(2r)` at rank `r`.
#[derive(Clone, Debug)]
pub struct SpinCharData {
    r: usize,
    parity: Parity,
    x_t: FgAbGroup,
    x_l: FgAbGroup,
    x_k_sub: Subgroup,
    x_l_gens: Vec<GroupElement>,
    a_l: GroupElement,
    acting_group: Vec<Subset>,
}

/// Orbit report of the acting elementary 2-group on `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeTransitiveReport {
    pub is_free: bool,
    pub is_transitive: bool,
    pub orbit_sizes: Vec<usize>,
    /// Image of `A` under each acting subset, keyed by the subset mask.
    pub witness: BTreeMap<Subset, String>,
    /// The map from acting subsets to images of `A` is injective with image `S`.
    pub witness_is_bijection: bool,
}

fn torus_relation(r: usize) -> Vec<i64> {
    let mut row = vec![-1i64; r + 1];
    row[r] = 2;
    row
}

fn unit(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[i] = BigInt::one();
    v
}

/// Builds the lattices, distinguished characters and acting group.
pub fn build_char_data(r: usize, parity: Parity) -> Result<SpinCharData> {
    if !(1..=MAX_RANK).contains(&r) {
        return Err(Error::Resource(format!("rank {r} outside 1..={MAX_RANK}")));
    }
    let x_t = FgAbGroup::new(Presentation::from_i64(r + 1, &[torus_relation(r)])?);
    let mut rels: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row = vec![0i64; r + 1];
            row[i] = 2;
            row
        })
        .collect();
    rels.push(torus_relation(r));
    let x_l = FgAbGroup::new(Presentation::from_i64(r + 1, &rels)?);

    let x_l_gens: Vec<GroupElement> = (0..r)
        .map(|i| x_l.reduce(&unit(r + 1, i)))
        .collect::<Result<_>>()?;
    let a_l = x_l.reduce(&unit(r + 1, r))?;
    let x_k_sub = subgroup_span(&x_l, &x_l_gens)?;

    let full: Subset = (1u32 << r) - 1;
    let acting_group = (0..=full)
        .filter(|s| parity == Parity::Odd || s.count_ones() % 2 == 0)
        .collect();

    Ok(SpinCharData {
        r,
        parity,
        x_t,
        x_l,
        x_k_sub,
        x_l_gens,
        a_l,
        acting_group,
    })
}

impl SpinCharData {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `X*(T)`.
    pub fn x_t(&self) -> &FgAbGroup {
        &self.x_t
    }

    /// `X*(L)`.
    pub fn x_l(&self) -> &FgAbGroup {
        &self.x_l
    }

    /// The span of `x_1..x_r` in `X*(L)`, i.e. `X*(K)`.
    pub fn x_k_sub(&self) -> &Subgroup {
        &self.x_k_sub
    }

    /// `x_i` in `X*(L)`, zero-based.
    pub fn x(&self, i: usize) -> &GroupElement {
        &self.x_l_gens[i]
    }

    pub fn xs(&self) -> &[GroupElement] {
        &self.x_l_gens
    }

    /// `A` in `X*(L)`.
    pub fn a(&self) -> &GroupElement {
        &self.a_l
    }

    /// Elementary 2-group acting on `S`: every subset for `Odd`, the
    /// even-size subsets (kernel of the sum map) for `Even`.
    pub fn acting_group(&self) -> &[Subset] {
        &self.acting_group
    }

    /// A generating set of the acting group.
    pub fn acting_generators(&self) -> Vec<Subset> {
        match self.parity {
            Parity::Odd => (0..self.r).map(|i| 1 << i).collect(),
            Parity::Even => (1..self.r).map(|i| 1 | 1 << i).collect(),
        }
    }

    pub fn lattice(&self, which: Lattice) -> &FgAbGroup {
        match which {
            Lattice::Torus => &self.x_t,
            Lattice::Finite => &self.x_l,
        }
    }

    /// `A - sum_{i in I} x_i` in `X*(L)`.
    pub fn a_minus(&self, subset: Subset) -> GroupElement {
        let g = &self.x_l;
        let s = g.sum((0..self.r).filter(|i| subset >> i & 1 == 1).map(|i| &self.x_l_gens[i]));
        g.sub(&self.a_l, &s)
    }

    /// Applies a signed permutation to a character of `X*(T)` or `X*(L)`.
    ///
    /// On generators: `x_i -> ±x_{perm(i)}` and
    /// `A -> A - sum_{i in signs} x_{perm(i)}`.
    pub fn weyl_act(&self, w: &WeylElt, which: Lattice, c: &GroupElement) -> Result<GroupElement> {
        if w.rank() != self.r {
            return arg(format!("Weyl element of rank {} acting at rank {}", w.rank(), self.r));
        }
        let g = self.lattice(which);
        g.check_member(c)?;
        let word = g.lift(c);
        let mut image = vec![BigInt::zero(); self.r + 1];
        for (i, coeff) in word[..self.r].iter().enumerate() {
            let target = w.perm[i];
            if w.signs >> i & 1 == 1 {
                image[target] -= coeff;
            } else {
                image[target] += coeff;
            }
        }
        let a_coeff = &word[self.r];
        image[self.r] += a_coeff;
        for i in 0..self.r {
            if w.signs >> i & 1 == 1 {
                image[w.perm[i]] -= a_coeff;
            }
        }
        g.reduce(&image)
    }

    /// Action of a sign-change subset on `X*(L)`.
    pub fn act_subset(&self, subset: Subset, c: &GroupElement) -> Result<GroupElement> {
        self.weyl_act(&WeylElt::sign_change(self.r, subset), Lattice::Finite, c)
    }

    /// `true` when `c` is nontrivial on the central `mu_2`.
    pub fn center_restriction(&self, c: &GroupElement) -> Result<CenterRestriction> {
        self.x_l.check_member(c)?;
        Ok(if self.x_k_sub.contains(c) {
            CenterRestriction::Trivial
        } else {
            CenterRestriction::Faithful
        })
    }

    /// `S`: the complement of `X*(K)` in `X*(L)`.
    pub fn faithful_set(&self) -> Result<BTreeSet<GroupElement>> {
        Ok(self
            .x_l
            .elements()?
            .into_iter()
            .filter(|c| !self.x_k_sub.contains(c))
            .collect())
    }

    /// Orbits of the acting group on `S`, each sorted, listed by least element.
    pub fn orbits_on_faithful_set(&self) -> Result<Vec<Vec<GroupElement>>> {
        let s = self.faithful_set()?;
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for c in &s {
            if seen.contains(c) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for &e in &self.acting_group {
                orbit.insert(self.act_subset(e, c)?);
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit.into_iter().collect::<Vec<_>>());
        }
        Ok(orbits)
    }

    /// Orbit and freeness report. Freeness follows from orbit-stabilizer:
    /// every orbit has the size of the acting group exactly when all
    /// stabilizers are trivial.
    pub fn free_transitive_check(&self) -> Result<FreeTransitiveReport> {
        let s = self.faithful_set()?;
        let orbits = self.orbits_on_faithful_set()?;
        let group_order = self.acting_group.len();
        let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let mut witness = BTreeMap::new();
        let mut images = BTreeSet::new();
        for &e in &self.acting_group {
            let img = self.act_subset(e, &self.a_l)?;
            witness.insert(e, img.to_string());
            images.insert(img);
        }
        let injective = images.len() == self.acting_group.len();
        let witness_is_bijection = injective && images == s;
        Ok(FreeTransitiveReport {
            is_free: orbit_sizes.iter().all(|&n| n == group_order),
            is_transitive: orbits.len() == 1,
            orbit_sizes,
            witness,
            witness_is_bijection,
        })
    }
}

/// Restriction of a character of `L` to the central `mu_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterRestriction {
    Trivial,
    Faithful,
}

/// Outcome of the lattice checks for one rank and parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub r: usize,
    pub parity: Parity,
    pub n: usize,
    pub x_t: String,
    pub x_l: String,
    pub s_size: usize,
    pub orbit_sizes: Vec<usize>,
    pub is_free: bool,
    pub is_transitive: bool,
    pub witness_is_bijection: bool,
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks `X*(T) = Z^r`, `X*(L) = Z/4 x (Z/2)^{r-1}`, `|S| = 2^r`, and the
/// orbit structure on `S`: one free orbit for `Odd`, two free orbits of
/// size `2^{r-1}` for `Even`.
pub fn verify_lattice(r: usize, parity: Parity) -> Result<LatticeCheck> {
    let d = build_char_data(r, parity)?;
    let mut violations = Vec::new();
    if !(d.x_t.free_rank() == r && d.x_t.invariant_factors().is_empty()) {
        violations.push(format!("X*(T) is {}, expected Z^{r}", d.x_t.describe()));
    }
    let mut expect_factors = vec![2u64; r - 1];
    expect_factors.push(4);
    if d.x_l.free_rank() != 0 || d.x_l.invariant_factors_u64() != expect_factors {
        violations.push(format!("X*(L) is {}", d.x_l.describe()));
    }
    let s_size = d.faithful_set()?.len();
    if s_size != 1 << r {
        violations.push(format!("|S| = {s_size}, expected {}", 1u64 << r));
    }
    let ft = d.free_transitive_check()?;
    match parity {
        Parity::Odd => {
            if !(ft.is_free && ft.is_transitive && ft.witness_is_bijection) {
                violations.push(format!("action on S is not simply transitive: orbits {:?}", ft.orbit_sizes));
            }
        }
        Parity::Even => {
            if !(ft.is_free && ft.orbit_sizes == vec![1 << (r - 1); 2]) {
                violations.push(format!("expected two free orbits, got {:?}", ft.orbit_sizes));
            }
        }
    }
    Ok(LatticeCheck {
        r,
        parity,
        n: parity.spin_n(r),
        x_t: d.x_t.describe(),
        x_l: d.x_l.describe(),
        s_size,
        orbit_sizes: ft.orbit_sizes,
        is_free: ft.is_free,
        is_transitive: ft.is_transitive,
        witness_is_bijection: ft.witness_is_bijection,
        ok: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(ixs: &[usize]) -> Subset {
        ixs.iter().fold(0, |m, i| m | 1 << i)
    }

    #[test]
    fn rank_one_odd() {
        let d = build_char_data(1, Parity::Odd).unwrap();
        assert_eq!(d.x_l().describe(), "Z/4");
        assert_eq!(d.acting_group(), &[0, 1]);
        // x_1 = 2A
        let two_a = d.x_l().add(d.a(), d.a());
        assert_eq!(d.x(0), &two_a);
        let s = d.faithful_set().unwrap();
        let expected: BTreeSet<_> = [d.a().clone(), d.a_minus(1)].into();
        assert_eq!(s, expected);
        let moved = d.act_subset(1, d.a()).unwrap();
        assert_eq!(moved, d.a_minus(1));
        assert_ne!(moved, *d.a());
    }

    #[test]
    fn rank_two_sizes() {
        let d = build_char_data(2, Parity::Odd).unwrap();
        assert_eq!(d.x_l().order(), Some(BigInt::from(8)));
        let s = d.faithful_set().unwrap();
        let expected: BTreeSet<_> = (0..4).map(|m| d.a_minus(m)).collect();
        assert_eq!(s, expected);
        let e = build_char_data(2, Parity::Even).unwrap();
        assert_eq!(e.acting_group(), &[0, 3]);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(matches!(build_char_data(0, Parity::Odd), Err(Error::Resource(_))));
        assert!(matches!(build_char_data(17, Parity::Even), Err(Error::Resource(_))));
    }

    #[test]
    fn sign_change_on_torus() {
        let d = build_char_data(2, Parity::Odd).unwrap();
        let t = d.x_t();
        let x1 = t.reduce_i64(&[1, 0, 0]).unwrap();
        let x2 = t.reduce_i64(&[0, 1, 0]).unwrap();
        let a = t.reduce_i64(&[0, 0, 1]).unwrap();
        let eps1 = WeylElt::sign_change(2, 1);
        assert_eq!(d.weyl_act(&eps1, Lattice::Torus, &x1).unwrap(), t.neg(&x1));
        assert_eq!(d.weyl_act(&eps1, Lattice::Torus, &x2).unwrap(), x2);
        assert_eq!(d.weyl_act(&eps1, Lattice::Torus, &a).unwrap(), t.sub(&a, &x1));
        let eps12 = WeylElt::sign_change(2, subset(&[0, 1]));
        let expected = t.sub(&t.sub(&a, &x1), &x2);
        assert_eq!(d.weyl_act(&eps12, Lattice::Torus, &a).unwrap(), expected);
    }

    #[test]
    fn malformed_permutations_rejected() {
        assert!(WeylElt::new(vec![0, 0], 0).is_err());
        assert!(WeylElt::new(vec![0, 2], 0).is_err());
        assert!(WeylElt::new(vec![1, 0], 0b100).is_err());
        let d = build_char_data(3, Parity::Odd).unwrap();
        let w = WeylElt::identity(2);
        assert!(d.weyl_act(&w, Lattice::Finite, d.a()).is_err());
    }

    #[test]
    fn center_restriction_examples() {
        let d = build_char_data(3, Parity::Odd).unwrap();
        assert_eq!(d.center_restriction(d.a()).unwrap(), CenterRestriction::Faithful);
        for x in d.xs() {
            assert_eq!(d.center_restriction(x).unwrap(), CenterRestriction::Trivial);
        }
        let two_a = d.x_l().add(d.a(), d.a());
        assert_eq!(d.center_restriction(&two_a).unwrap(), CenterRestriction::Trivial);
    }

    #[test]
    fn even_rank_two_orbits() {
        let d = build_char_data(2, Parity::Even).unwrap();
        let orbits = d.orbits_on_faithful_set().unwrap();
        let mut as_sets: Vec<BTreeSet<GroupElement>> =
            orbits.into_iter().map(|o| o.into_iter().collect()).collect();
        as_sets.sort();
        let mut expected = vec![
            BTreeSet::from([d.a().clone(), d.a_minus(3)]),
            BTreeSet::from([d.a_minus(1), d.a_minus(2)]),
        ];
        expected.sort();
        assert_eq!(as_sets, expected);
        let rep = d.free_transitive_check().unwrap();
        assert!(rep.is_free);
        assert!(!rep.is_transitive);
        assert_eq!(rep.orbit_sizes, vec![2, 2]);
    }

    #[test]
    fn odd_witness_is_bijection() {
        for r in 1..=6 {
            let d = build_char_data(r, Parity::Odd).unwrap();
            let rep = d.free_transitive_check().unwrap();
            assert!(rep.is_free && rep.is_transitive && rep.witness_is_bijection);
            assert_eq!(rep.orbit_sizes, vec![1 << r]);
        }
    }
}
