//! Symplectic reduction of a quadratic form given by coefficients to the
//! block-plus-diagonal presentation.

use std::sync::Arc;

use super::field::{Field2, Gf2k};
use super::form::QForm;
use crate::error::{arg, Result};

/// Coefficients `m_ij` (`i <= j`) of `q(x) = sum_{i<=j} m_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtMatrix {
    n: usize,
    m: Vec<u32>,
}

impl UtMatrix {
    pub fn zeros(n: usize) -> Self {
        UtMatrix { n, m: vec![0; n * n] }
    }

    /// Reads a square matrix as the form `sum_{i,j} m_ij x_i x_j`; entries
    /// below the diagonal are folded onto their mirror.
    pub fn from_square(f: &Gf2k, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut out = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return arg("coefficient matrix must be square");
            }
            for (j, &x) in row.iter().enumerate() {
                f.check(x)?;
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                out.m[a * n + b] ^= x;
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.m[a * self.n + b]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.m[a * self.n + b] = x;
    }

    pub fn evaluate(&self, f: &Gf2k, v: &[u32]) -> u32 {
        let mut acc = 0;
        for i in 0..self.n {
            if v[i] == 0 {
                continue;
            }
            for j in i..self.n {
                let c = self.m[i * self.n + j];
                if c != 0 && v[j] != 0 {
                    acc ^= f.mul(c, f.mul(v[i], v[j]));
                }
            }
        }
        acc
    }

    /// Polar form `b(u, v) = q(u + v) - q(u) - q(v)`.
    pub fn polar(&self, f: &Gf2k, u: &[u32], v: &[u32]) -> u32 {
        let mut acc = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = self.m[i * self.n + j];
                if c != 0 {
                    let t = f.mul(u[i], v[j]) ^ f.mul(u[j], v[i]);
                    acc ^= f.mul(c, t);
                }
            }
        }
        acc
    }

    /// The form restricted to the span of `basis`, in that basis.
    pub fn restrict(&self, f: &Gf2k, basis: &[Vec<u32>]) -> UtMatrix {
        let k = basis.len();
        let mut out = UtMatrix::zeros(k);
        for i in 0..k {
            out.set(i, i, self.evaluate(f, &basis[i]));
            for j in i + 1..k {
                out.set(i, j, self.polar(f, &basis[i], &basis[j]));
            }
        }
        out
    }
}

pub(crate) fn axpy(f: &Gf2k, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi ^= f.mul(a, xi);
    }
}

pub(crate) fn scaled(f: &Gf2k, a: u32, x: &[u32]) -> Vec<u32> {
    x.iter().map(|&xi| f.mul(a, xi)).collect()
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// A maximal linearly independent subset of `vectors`, in order.
pub(crate) fn independent_subset(f: &Gf2k, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // echelon rows with their pivot columns
    let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut chosen = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (p, row) in &echelon {
            if w[*p] != 0 {
                let c = w[*p];
                axpy(f, &mut w, c, row);
            }
        }
        if let Some(p) = w.iter().position(|&x| x != 0) {
            let inv = f.inv(w[p]).expect("nonzero pivot");
            let w = scaled(f, inv, &w);
            // keep the echelon reduced so later eliminations stay valid
            for (_, row) in echelon.iter_mut() {
                if row[p] != 0 {
                    let c = row[p];
                    axpy(f, row, c, &w);
                }
            }
            echelon.push((p, w));
            chosen.push(v.clone());
        }
    }
    chosen
}

/// Block form together with the basis (in original coordinates) that
/// realizes it: `e_1, f_1, e_2, f_2, ..., r_1, r_2, ...`.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub form: QForm,
    pub basis: Vec<Vec<u32>>,
}

/// Reduces a coefficient matrix to an equivalent block-plus-diagonal form.
pub fn block_normalize(field: &Arc<Gf2k>, m: &UtMatrix) -> Result<QForm> {
    Ok(block_normalize_with_basis(field, m)?.form)
}

pub fn block_normalize_with_basis(field: &Arc<Gf2k>, m: &UtMatrix) -> Result<Normalization> {
    let f: &Gf2k = field;
    let n = m.dim();
    let mut pool: Vec<Vec<u32>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();

    // symplectic Gram-Schmidt on the polar form
    loop {
        let mut found = None;
        'search: for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let b = m.polar(f, &pool[i], &pool[j]);
                if b != 0 {
                    found = Some((i, j, b));
                    break 'search;
                }
            }
        }
        let Some((i, j, b)) = found else { break };
        let e = pool[i].clone();
        let w = scaled(f, f.inv(b)?, &pool[j]);
        pool.remove(j);
        pool.remove(i);
        for v in pool.iter_mut() {
            let bvf = m.polar(f, v, &w);
            let bve = m.polar(f, v, &e);
            axpy(f, v, bvf, &e);
            axpy(f, v, bve, &w);
        }
        pairs.push((e, w));
    }

    // the rest spans the radical; q is additive there, q = (sum sqrt(c_i) z_i)^2
    let mut radical = pool;
    if let Some(p) = radical.iter().position(|v| m.evaluate(f, v) != 0) {
        radical.swap(0, p);
        let c0 = m.evaluate(f, &radical[0]);
        let head = radical[0].clone();
        for v in radical.iter_mut().skip(1) {
            let c = m.evaluate(f, v);
            if c != 0 {
                let t = f.sqrt(f.div(c, c0)?);
                axpy(f, v, t, &head);
            }
        }
    }

    let blocks: Vec<(u32, u32)> = pairs
        .iter()
        .map(|(e, w)| (m.evaluate(f, e), m.evaluate(f, w)))
        .collect();
    let diag: Vec<u32> = radical.iter().map(|v| m.evaluate(f, v)).collect();
    let mut basis = Vec::with_capacity(n);
    for (e, w) in pairs {
        basis.push(e);
        basis.push(w);
    }
    basis.extend(radical);
    Ok(Normalization {
        form: QForm::concrete(field, &blocks, &diag)?,
        basis,
    })
}

/// Normal form of a concrete `QForm` through its coefficient matrix.
pub fn renormalize(q: &QForm) -> Result<QForm> {
    let Field2::Concrete(f) = q.field() else {
        return crate::error::unsupported("normalization needs a concrete field");
    };
    block_normalize(f, &q.coeff_matrix()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform2::form::VectorIter;

    fn gf(k: u32) -> Arc<Gf2k> {
        Arc::new(Gf2k::new(k).unwrap())
    }

    fn round_trip(f: &Arc<Gf2k>, m: &UtMatrix) {
        let norm = block_normalize_with_basis(f, m).unwrap();
        assert_eq!(norm.form.dim(), m.dim());
        for w in VectorIter::new(f.order(), m.dim()) {
            let mut v = vec![0; m.dim()];
            for (wi, b) in w.iter().zip(&norm.basis) {
                axpy(f, &mut v, *wi, b);
            }
            assert_eq!(norm.form.evaluate(&w).unwrap(), m.evaluate(f, &v));
        }
        assert_eq!(independent_subset(f, &norm.basis).len(), m.dim());
    }

    #[test]
    fn binary_block_is_already_normal() {
        let f = gf(1);
        let m = UtMatrix::from_square(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(block_normalize(&f, &m).unwrap(), QForm::concrete(&f, &[(1, 1)], &[]).unwrap());
        round_trip(&f, &m);
    }

    #[test]
    fn odd_split_form() {
        // x1 x2 + x3^2
        let f = gf(1);
        let mut m = UtMatrix::zeros(3);
        m.set(0, 1, 1);
        m.set(2, 2, 1);
        let q = block_normalize(&f, &m).unwrap();
        assert_eq!(q, QForm::concrete(&f, &[(0, 0)], &[1]).unwrap());
        round_trip(&f, &m);
    }

    #[test]
    fn square_on_two_variables() {
        // q = x^2 on two variables: radical is everything
        let f = gf(2);
        let mut m = UtMatrix::zeros(2);
        m.set(0, 0, 1);
        let q = block_normalize(&f, &m).unwrap();
        assert_eq!(q, QForm::concrete(&f, &[], &[1, 0]).unwrap());
        round_trip(&f, &m);
        // (x + y)^2 also collapses to one nonzero square
        let mut m = UtMatrix::zeros(2);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        assert_eq!(block_normalize(&f, &m).unwrap(), QForm::concrete(&f, &[], &[1, 0]).unwrap());
        round_trip(&f, &m);
    }

    #[test]
    fn independent_subset_rank() {
        let f = gf(2);
        let vs = vec![vec![1, 2, 0], vec![2, 3, 0], vec![0, 0, 1], vec![1, 2, 1]];
        // second is 2 * first over F4 (2*1=2, 2*2=3)
        assert_eq!(independent_subset(&f, &vs).len(), 2);
    }
}
