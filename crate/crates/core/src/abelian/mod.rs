//! Finitely generated abelian groups given by integer presentations.
//!
//! A [`Presentation`] lists generators and integer relations; [`FgAbGroup`]
//! classifies the quotient through its Smith normal form and reduces words
//! to canonical [`GroupElement`]s in normal-form coordinates.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{arg, unsupported, Result};
use crate::Error;

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};

/// Largest finite group [`FgAbGroup::elements`] will enumerate.
pub const MAX_ENUMERATION: u64 = 1 << 20;

/// Generators `g_1..g_n` and relation rows `r` meaning `sum r_j g_j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    num_generators: usize,
    relations: Vec<Vec<BigInt>>,
}

impl Presentation {
    pub fn new(num_generators: usize, relations: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some((i, r)) = relations
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != num_generators)
        {
            return arg(format!(
                "relation {i} has {} entries but there are {num_generators} generators",
                r.len()
            ));
        }
        Ok(Presentation {
            num_generators,
            relations,
        })
    }

    pub fn from_i64(num_generators: usize, relations: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            num_generators,
            relations
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.num_generators, &self.relations)
    }
}

/// An element in normal-form coordinates: torsion coordinates first (each
/// reduced into `0..d_i`), then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The quotient `Z^n / (relations)` classified up to isomorphism.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    presentation: Presentation,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// `v` from the SNF: a generator-coordinate row vector `x` has
    /// normal-form coordinates `x * v`.
    basis_transform: IntMatrix,
    basis_inverse: IntMatrix,
    torsion_cols: Vec<usize>,
    free_cols: Vec<usize>,
}

/// Classifies the group presented by `p`.
pub fn iso_type(p: &Presentation) -> FgAbGroup {
    FgAbGroup::new(p.clone())
}

impl FgAbGroup {
    pub fn new(presentation: Presentation) -> Self {
        let snf = smith_normal_form(&presentation.relation_matrix());
        let n = presentation.num_generators;
        let diag = snf.diagonal();
        let mut invariant_factors = Vec::new();
        let mut torsion_cols = Vec::new();
        let mut free_cols = Vec::new();
        for col in 0..n {
            match diag.get(col) {
                Some(d) if d.is_zero() => free_cols.push(col),
                None => free_cols.push(col),
                Some(d) if d.is_one() => {}
                Some(d) => {
                    invariant_factors.push(d.clone());
                    torsion_cols.push(col);
                }
            }
        }
        FgAbGroup {
            presentation,
            free_rank: free_cols.len(),
            invariant_factors,
            basis_transform: snf.v,
            basis_inverse: snf.v_inv,
            torsion_cols,
            free_cols,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Torsion invariant factors `d_1 | d_2 | ...`, all at least 2.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn basis_transform(&self) -> &IntMatrix {
        &self.basis_transform
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    fn dim(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Invariant factors as machine integers, for display and bookkeeping.
    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }

    /// Canonical normal form of a word given in generator coordinates.
    pub fn reduce(&self, raw: &[BigInt]) -> Result<GroupElement> {
        if raw.len() != self.presentation.num_generators {
            return arg(format!(
                "word has {} coordinates, group has {} generators",
                raw.len(),
                self.presentation.num_generators
            ));
        }
        let y = self.basis_transform.left_apply(raw);
        let mut coords = Vec::with_capacity(self.dim());
        for (d, &col) in self.invariant_factors.iter().zip(&self.torsion_cols) {
            coords.push(y[col].mod_floor(d));
        }
        for &col in &self.free_cols {
            coords.push(y[col].clone());
        }
        Ok(GroupElement { coords })
    }

    pub fn reduce_i64(&self, raw: &[i64]) -> Result<GroupElement> {
        let raw: Vec<BigInt> = raw.iter().map(|&x| BigInt::from(x)).collect();
        self.reduce(&raw)
    }

    /// A word in generator coordinates representing `e`.
    pub fn lift(&self, e: &GroupElement) -> Vec<BigInt> {
        let n = self.presentation.num_generators;
        let mut y = vec![BigInt::zero(); n];
        let cols = self.torsion_cols.iter().chain(&self.free_cols);
        for (c, &col) in e.coords.iter().zip(cols) {
            y[col] = c.clone();
        }
        self.basis_inverse.left_apply(&y)
    }

    /// Builds an element directly from normal-form coordinates, reducing
    /// torsion coordinates.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return arg(format!(
                "element has {} coordinates, normal form has {}",
                coords.len(),
                self.dim()
            ));
        }
        let mut e = GroupElement { coords };
        self.normalize(&mut e);
        Ok(e)
    }

    /// True when `e` is a reduced element of this group.
    pub fn contains(&self, e: &GroupElement) -> bool {
        e.coords.len() == self.dim()
            && e.coords
                .iter()
                .zip(&self.invariant_factors)
                .all(|(c, d)| !c.is_negative() && c < d)
    }

    pub fn check_member(&self, e: &GroupElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            arg(format!("{e} is not a reduced element of this group"))
        }
    }

    fn normalize(&self, e: &mut GroupElement) {
        for (c, d) in e.coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.dim()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut e = GroupElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        };
        self.normalize(&mut e);
        e
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let mut e = GroupElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        };
        self.normalize(&mut e);
        e
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        let mut e = GroupElement {
            coords: a.coords.iter().map(|x| x * k).collect(),
        };
        self.normalize(&mut e);
        e
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, e: &GroupElement) -> bool {
        e.coords.iter().all(Zero::is_zero)
    }

    /// Order of an element; `None` if it has infinite order.
    pub fn element_order(&self, e: &GroupElement) -> Option<BigInt> {
        let free_part = &e.coords[self.invariant_factors.len()..];
        if free_part.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(
            e.coords
                .iter()
                .zip(&self.invariant_factors)
                .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d)))),
        )
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Unsupported("cannot enumerate an infinite group".into()))?;
        if order > BigInt::from(MAX_ENUMERATION) {
            return Err(Error::Resource(format!(
                "group of order {order} exceeds the enumeration limit {MAX_ENUMERATION}"
            )));
        }
        let radices = self.invariant_factors_u64();
        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        let mut digits = vec![0u64; radices.len()];
        loop {
            out.push(GroupElement {
                coords: digits.iter().map(|&d| BigInt::from(d)).collect(),
            });
            // odometer, last coordinate fastest
            let mut i = radices.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// Human-readable isomorphism type, e.g. `Z/4 x (Z/2)^2` or `Z^3`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut factors = self.invariant_factors.clone();
        factors.sort_by(|a, b| b.cmp(a));
        let mut i = 0;
        while i < factors.len() {
            let d = &factors[i];
            let run = factors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// The subgroup generated by a list of elements of a finite group.
///
/// Membership and order come from the quotient group `G / H`, which is
/// classified by a second Smith normal form; no enumeration is needed.
#[derive(Clone, Debug)]
pub struct Subgroup {
    order: BigInt,
    generators: Vec<GroupElement>,
    quotient: FgAbGroup,
}

impl Subgroup {
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Index of the subgroup in its ambient group.
    pub fn index(&self) -> BigInt {
        self.quotient.order().expect("quotient of a finite group")
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        // the quotient is presented on the ambient normal-form coordinates
        self.quotient
            .reduce(e.coords())
            .map(|q| self.quotient.is_zero(&q))
            .unwrap_or(false)
    }
}

/// Order of and membership in the subgroup generated by `gens`.
pub fn subgroup_span(g: &FgAbGroup, gens: &[GroupElement]) -> Result<Subgroup> {
    if !g.is_finite() {
        return unsupported("subgroup spans are only computed in finite groups");
    }
    for e in gens {
        g.check_member(e)?;
    }
    let k = g.invariant_factors.len();
    let mut relations = Vec::with_capacity(k + gens.len());
    for (i, d) in g.invariant_factors.iter().enumerate() {
        let mut row = vec![BigInt::zero(); k];
        row[i] = d.clone();
        relations.push(row);
    }
    relations.extend(gens.iter().map(|e| e.coords.clone()));
    let quotient = FgAbGroup::new(Presentation::new(k, relations)?);
    let order = g.order().expect("finite") / quotient.order().expect("finite quotient");
    Ok(Subgroup {
        order,
        generators: gens.to_vec(),
        quotient,
    })
}
