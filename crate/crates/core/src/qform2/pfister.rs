//! Quadratic Pfister forms `<<a_1, ..., a_{m-1}, b]] = <1,a_1> (x) ... (x) [1,b]`
//! and their expansion into scaled copies of a smaller Pfister form.

use std::fmt;

use super::field::{Field2, Scalar};
use super::form::{tensor_bilinear, BilinDiag, QForm};
use crate::error::{arg, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PfisterForm {
    pub a_slots: Vec<Scalar>,
    pub b: Scalar,
}

impl PfisterForm {
    pub fn new(field: &Field2, a_slots: Vec<Scalar>, b: Scalar) -> Result<Self> {
        for a in &a_slots {
            field.check(a)?;
            if field.is_zero(a) {
                return arg("Pfister slots must be nonzero");
            }
        }
        field.check(&b)?;
        Ok(PfisterForm { a_slots, b })
    }

    /// `m` for an `m`-fold form; the dimension is `2^m`.
    pub fn fold(&self) -> usize {
        self.a_slots.len() + 1
    }

    pub fn dim(&self) -> usize {
        1 << self.fold()
    }

    pub fn build(&self, field: &Field2) -> Result<QForm> {
        let base = QForm::new(field, vec![(field.one(), self.b.clone())], vec![])?;
        let mut bil = BilinDiag::new(field, vec![field.one()])?;
        for a in &self.a_slots {
            bil = bil.tensor(&BilinDiag::pfister_factor(field, a.clone())?)?;
        }
        tensor_bilinear(&bil, &base)
    }
}

impl fmt::Display for PfisterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<<")?;
        for a in &self.a_slots {
            write!(f, "{a},")?;
        }
        write!(f, "{}]]", self.b)
    }
}

/// `scalar * base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScaledPfister {
    pub scalar: Scalar,
    pub base: PfisterForm,
}

impl ScaledPfister {
    pub fn build(&self, field: &Field2) -> Result<QForm> {
        self.base.build(field)?.scale(&self.scalar)
    }
}

impl fmt::Display for ScaledPfister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.scalar, self.base)
    }
}

pub fn pfister_build(field: &Field2, a_slots: &[Scalar], b: &Scalar) -> Result<QForm> {
    PfisterForm::new(field, a_slots.to_vec(), b.clone())?.build(field)
}

/// Splits off the first `j` slots: `<<c_1..c_j, rest]]` is the sum of
/// `lambda * <<rest]]` over all products `lambda` of subsets of the `c_i`.
/// The result is sorted so that equal multisets compare equal.
pub fn pfister_expand(field: &Field2, pf: &PfisterForm, j: usize) -> Result<Vec<ScaledPfister>> {
    if j > pf.a_slots.len() {
        return arg(format!(
            "cannot split {j} slots off a {}-fold Pfister form",
            pf.fold()
        ));
    }
    let (head, rest) = pf.a_slots.split_at(j);
    let base = PfisterForm::new(field, rest.to_vec(), pf.b.clone())?;
    let mut scalars = vec![field.one()];
    for c in head {
        let mut next = Vec::with_capacity(2 * scalars.len());
        for s in &scalars {
            next.push(s.clone());
            next.push(field.mul(s, c)?);
        }
        scalars = next;
    }
    let mut out: Vec<ScaledPfister> = scalars
        .into_iter()
        .map(|scalar| ScaledPfister {
            scalar,
            base: base.clone(),
        })
        .collect();
    out.sort();
    Ok(out)
}
