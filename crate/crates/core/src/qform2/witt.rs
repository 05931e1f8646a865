//! Classification, Arf invariant, isotropy and Witt decomposition of
//! forms over finite fields of characteristic 2.

use std::sync::Arc;

use serde::Serialize;

use super::field::{Field2, Gf2k};
use super::form::QForm;
use super::normal::{axpy, block_normalize, independent_subset, scaled, unit_vector, UtMatrix};
use crate::error::{arg, unsupported, Result};

/// Classification by the radical of the polar form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum FormClass {
    /// Radical is zero.
    Nondegenerate,
    /// Radical is a line on which `q` does not vanish.
    NonsingularRadical1,
    /// Anything else; `defect` is the dimension of the zero set of `q` on
    /// the radical.
    Singular { radical_dim: usize, defect: usize },
}

impl FormClass {
    pub fn is_nonsingular(self) -> bool {
        !matches!(self, FormClass::Singular { .. })
    }
}

/// The block presentation makes the radical the span of the diagonal
/// coordinates; `q` there is the square of a linear form.
pub fn classify_form(q: &QForm) -> Result<FormClass> {
    let (_, _, diag) = q.concrete_parts()?;
    let nonzero = diag.iter().filter(|&&c| c != 0).count();
    Ok(match (diag.len(), nonzero) {
        (0, _) => FormClass::Nondegenerate,
        (1, 1) => FormClass::NonsingularRadical1,
        (s, nz) => FormClass::Singular {
            radical_dim: s,
            defect: if nz > 0 { s - 1 } else { s },
        },
    })
}

/// Arf invariant as the absolute trace of `sum a_i b_i`, i.e. its class in
/// `F / {c^2 + c}`, which is 0 or 1 for a finite field.
pub fn arf(q: &QForm) -> Result<u32> {
    let (f, blocks, diag) = q.concrete_parts()?;
    if !diag.is_empty() {
        return arg("Arf invariant needs a nondegenerate even-dimensional form");
    }
    let s = blocks.iter().fold(0, |acc, &(a, b)| acc ^ f.mul(a, b));
    Ok(f.trace(s))
}

/// Largest `order^dim` for which [`find_isotropic_exhaustive`] is used.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Scans all nonzero vectors for a zero of `q`.
pub fn find_isotropic_exhaustive(q: &QForm) -> Result<Option<Vec<u32>>> {
    for v in q.all_vectors()? {
        if v.iter().any(|&x| x != 0) && q.evaluate(&v)? == 0 {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Constructs a nonzero isotropic vector directly from the block data.
///
/// Any form of dimension at least 3 in block presentation contains a
/// subform `[a,b] + <c>` (or a zero coefficient), which has the zero
/// `(0, 1, sqrt(b/c))`; a single block `[a,b]` is settled by scanning
/// `a x^2 + x + b` over the field.
pub fn find_isotropic_constructive(q: &QForm) -> Result<Option<Vec<u32>>> {
    let (f, blocks, diag) = q.concrete_parts()?;
    let n = q.dim();
    let off = 2 * blocks.len();
    if let Some(j) = diag.iter().position(|&c| c == 0) {
        return Ok(Some(unit_vector(n, off + j)));
    }
    if diag.len() >= 2 {
        let (c1, c2) = (diag[0], diag[1]);
        let mut v = vec![0; n];
        v[off] = f.sqrt(f.div(c2, c1)?);
        v[off + 1] = 1;
        return Ok(Some(v));
    }
    for (i, &(a, b)) in blocks.iter().enumerate() {
        if a == 0 {
            return Ok(Some(unit_vector(n, 2 * i)));
        }
        if b == 0 {
            return Ok(Some(unit_vector(n, 2 * i + 1)));
        }
    }
    // all block coefficients are nonzero from here on
    let third = if let Some(&c) = diag.first() {
        Some((off, c))
    } else if blocks.len() >= 2 {
        Some((2, blocks[1].0))
    } else {
        None
    };
    if let (Some((idx, c)), Some(&(_, b))) = (third, blocks.first()) {
        let mut v = vec![0; n];
        v[1] = 1;
        v[idx] = f.sqrt(f.div(b, c)?);
        return Ok(Some(v));
    }
    if let Some(&(a, b)) = blocks.first() {
        for x in f.elements() {
            if f.mul(a, f.square(x)) ^ x ^ b == 0 {
                let mut v = vec![0; n];
                v[0] = x;
                v[1] = 1;
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Finds a nonzero isotropic vector if one exists: exhaustively for small
/// forms, constructively otherwise.
pub fn find_isotropic(q: &QForm) -> Result<Option<Vec<u32>>> {
    let f = q.field().concrete()?;
    let small = (f.order() as u64)
        .checked_pow(q.dim() as u32)
        .is_some_and(|t| q.dim() <= 4 && t <= EXHAUSTIVE_LIMIT);
    let v = if small {
        find_isotropic_exhaustive(q)?
    } else {
        find_isotropic_constructive(q)?
    };
    if let Some(v) = &v {
        debug_assert_eq!(q.evaluate(v)?, 0);
    }
    Ok(v)
}

pub fn is_isotropic(q: &QForm) -> Result<bool> {
    Ok(find_isotropic(q)?.is_some())
}

/// `q = witt_index * H + anisotropic_kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub kernel: QForm,
}

/// Splits off a hyperbolic plane through the isotropic vector `v` and
/// returns the orthogonal complement in block presentation.
fn split_hyperbolic(field: &Arc<Gf2k>, q: &QForm, v: &[u32]) -> Result<QForm> {
    let f: &Gf2k = field;
    let m: UtMatrix = q.coeff_matrix()?;
    let n = m.dim();
    let Some((w, b)) = (0..n)
        .map(|i| unit_vector(n, i))
        .map(|w| {
            let b = m.polar(f, v, &w);
            (w, b)
        })
        .find(|(_, b)| *b != 0)
    else {
        return arg("isotropic vector lies in the radical; form is singular");
    };
    let w = scaled(f, f.inv(b)?, &w);
    let mut partner = w.clone();
    axpy(f, &mut partner, m.evaluate(f, &w), v);
    debug_assert_eq!(m.evaluate(f, &partner), 0);
    debug_assert_eq!(m.polar(f, v, &partner), 1);
    let projected: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = unit_vector(n, i);
            let bef = m.polar(f, &e, &partner);
            let bev = m.polar(f, &e, v);
            axpy(f, &mut e, bef, v);
            axpy(f, &mut e, bev, &partner);
            e
        })
        .collect();
    let complement = independent_subset(f, &projected);
    debug_assert_eq!(complement.len(), n - 2);
    block_normalize(field, &m.restrict(f, &complement))
}

pub fn witt_decompose(q: &QForm) -> Result<WittDecomposition> {
    let Field2::Concrete(field) = q.field() else {
        return unsupported("Witt decomposition needs a concrete field");
    };
    if !classify_form(q)?.is_nonsingular() {
        return arg("Witt decomposition of a singular form");
    }
    let mut kernel = q.clone();
    let mut witt_index = 0;
    while let Some(v) = find_isotropic(&kernel)? {
        kernel = split_hyperbolic(field, &kernel, &v)?;
        witt_index += 1;
    }
    Ok(WittDecomposition { witt_index, kernel })
}

/// Complete isometry invariants of a nonsingular form over a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub dim: usize,
    pub radical_dim: usize,
    pub witt_index: usize,
    /// Arf class, for even-dimensional forms.
    pub arf: Option<u32>,
}

pub fn invariants(q: &QForm) -> Result<FormInvariants> {
    let class = classify_form(q)?;
    if !class.is_nonsingular() {
        return unsupported("invariants are only complete for nonsingular forms");
    }
    let radical_dim = usize::from(class == FormClass::NonsingularRadical1);
    Ok(FormInvariants {
        dim: q.dim(),
        radical_dim,
        witt_index: witt_decompose(q)?.witt_index,
        arf: if radical_dim == 0 { Some(arf(q)?) } else { None },
    })
}

/// Isometry of nonsingular forms over the same finite field, decided by
/// dimension, radical, Witt index and Arf class.
pub fn equivalent_ff(q1: &QForm, q2: &QForm) -> Result<bool> {
    if q1.field() != q2.field() {
        return arg("forms over different fields");
    }
    Ok(invariants(q1)? == invariants(q2)?)
}
