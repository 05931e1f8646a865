use std::fmt;
use std::sync::Arc;

use super::field::{Field2, Gf2k, Scalar};
use crate::error::{arg, unsupported, Result};

/// The binary form `tag * (a x^2 + xy + b y^2)`.
///
/// Over concrete fields scalars are folded into `a` and `b` and `tag` is
/// always `1`; over formal fields a scalar multiple is recorded in `tag`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryBlock {
    pub a: Scalar,
    pub b: Scalar,
    pub tag: Scalar,
}

/// Field, `(a, b)` blocks and diagonal of a concrete form.
pub type ConcreteParts<'a> = (&'a Gf2k, Vec<(u32, u32)>, Vec<u32>);

/// Orthogonal sum of binary blocks and diagonal squares `c z^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm {
    field: Field2,
    blocks: Vec<BinaryBlock>,
    diag: Vec<Scalar>,
}

/// Diagonal symmetric bilinear form `<a_1, ..., a_n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinDiag {
    field: Field2,
    entries: Vec<Scalar>,
}

impl BilinDiag {
    pub fn new(field: &Field2, entries: Vec<Scalar>) -> Result<Self> {
        for e in &entries {
            field.check(e)?;
            if field.is_zero(e) {
                return arg("bilinear diagonal entries must be nonzero");
            }
        }
        Ok(BilinDiag {
            field: field.clone(),
            entries,
        })
    }

    /// `<1, a>`.
    pub fn pfister_factor(field: &Field2, a: Scalar) -> Result<Self> {
        Self::new(field, vec![field.one(), a])
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn tensor(&self, other: &BilinDiag) -> Result<BilinDiag> {
        if self.field != other.field {
            return arg("bilinear forms over different fields");
        }
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for x in &self.entries {
            for y in &other.entries {
                entries.push(self.field.mul(x, y)?);
            }
        }
        Ok(BilinDiag {
            field: self.field.clone(),
            entries,
        })
    }
}

impl QForm {
    pub fn new(field: &Field2, blocks: Vec<(Scalar, Scalar)>, diag: Vec<Scalar>) -> Result<Self> {
        for (a, b) in &blocks {
            field.check(a)?;
            field.check(b)?;
        }
        for c in &diag {
            field.check(c)?;
        }
        let one = field.one();
        Ok(QForm {
            field: field.clone(),
            blocks: blocks
                .into_iter()
                .map(|(a, b)| BinaryBlock {
                    a,
                    b,
                    tag: one.clone(),
                })
                .collect(),
            diag,
        })
    }

    /// Convenience constructor over a concrete field.
    pub fn concrete(field: &Arc<Gf2k>, blocks: &[(u32, u32)], diag: &[u32]) -> Result<Self> {
        Self::new(
            &Field2::Concrete(field.clone()),
            blocks
                .iter()
                .map(|&(a, b)| (Scalar::Gf(a), Scalar::Gf(b)))
                .collect(),
            diag.iter().map(|&c| Scalar::Gf(c)).collect(),
        )
    }

    pub fn zero(field: &Field2) -> Self {
        QForm {
            field: field.clone(),
            blocks: Vec::new(),
            diag: Vec::new(),
        }
    }

    /// `n` copies of the hyperbolic plane `[0,0] = xy`.
    pub fn hyperbolic(field: &Arc<Gf2k>, n: usize) -> Self {
        Self::concrete(field, &vec![(0, 0); n], &[]).expect("0 is in every field")
    }

    pub fn field(&self) -> &Field2 {
        &self.field
    }

    pub fn blocks(&self) -> &[BinaryBlock] {
        &self.blocks
    }

    pub fn diag(&self) -> &[Scalar] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len() + self.diag.len()
    }

    pub(crate) fn gf(&self) -> Result<&Gf2k> {
        self.field.concrete()
    }

    /// Blocks as `(a, b)` pairs and the diagonal, over a concrete field.
    pub fn concrete_parts(&self) -> Result<ConcreteParts<'_>> {
        let f = self.gf()?;
        let blocks = self
            .blocks
            .iter()
            .map(|blk| Ok((blk.a.gf()?, blk.b.gf()?)))
            .collect::<Result<_>>()?;
        let diag = self.diag.iter().map(Scalar::gf).collect::<Result<_>>()?;
        Ok((f, blocks, diag))
    }

    /// Value at `v`; coordinates are `x_1, y_1, x_2, y_2, ..., z_1, ...`.
    pub fn evaluate(&self, v: &[u32]) -> Result<u32> {
        let (f, blocks, diag) = self.concrete_parts()?;
        if v.len() != self.dim() {
            return arg(format!("vector of length {} for a form of dimension {}", v.len(), self.dim()));
        }
        if let Some(x) = v.iter().find(|&&x| !f.is_element(x)) {
            return arg(format!("{x:#x} is not a field element"));
        }
        let mut acc = 0;
        for (i, &(a, b)) in blocks.iter().enumerate() {
            let (x, y) = (v[2 * i], v[2 * i + 1]);
            acc ^= f.mul(a, f.square(x)) ^ f.mul(x, y) ^ f.mul(b, f.square(y));
        }
        let off = 2 * blocks.len();
        for (j, &c) in diag.iter().enumerate() {
            acc ^= f.mul(c, f.square(v[off + j]));
        }
        Ok(acc)
    }

    pub fn orth_sum(&self, other: &QForm) -> Result<QForm> {
        if self.field != other.field {
            return arg("orthogonal sum of forms over different fields");
        }
        let mut out = self.clone();
        out.blocks.extend(other.blocks.iter().cloned());
        out.diag.extend(other.diag.iter().cloned());
        Ok(out)
    }

    /// `a * q`. Concrete blocks use `a [c, d] = [ac, d/a]`, from the
    /// substitution `y -> y/a`; formal blocks record `a` in the tag.
    pub fn scale(&self, a: &Scalar) -> Result<QForm> {
        self.field.check(a)?;
        if self.field.is_zero(a) {
            return arg("cannot scale a form by zero");
        }
        let mut out = self.clone();
        match &self.field {
            Field2::Concrete(f) => {
                let s = a.gf()?;
                let s_inv = f.inv(s)?;
                for blk in &mut out.blocks {
                    blk.a = Scalar::Gf(f.mul(s, blk.a.gf()?));
                    blk.b = Scalar::Gf(f.mul(s_inv, blk.b.gf()?));
                }
            }
            Field2::Formal(_) => {
                for blk in &mut out.blocks {
                    blk.tag = self.field.mul(a, &blk.tag)?;
                }
            }
        }
        for c in &mut out.diag {
            *c = self.field.mul(a, c)?;
        }
        Ok(out)
    }

    /// Upper-triangular coefficient matrix of a concrete form.
    pub fn coeff_matrix(&self) -> Result<super::normal::UtMatrix> {
        let (_, blocks, diag) = self.concrete_parts()?;
        let n = self.dim();
        let mut m = super::normal::UtMatrix::zeros(n);
        for (i, &(a, b)) in blocks.iter().enumerate() {
            m.set(2 * i, 2 * i, a);
            m.set(2 * i, 2 * i + 1, 1);
            m.set(2 * i + 1, 2 * i + 1, b);
        }
        let off = 2 * blocks.len();
        for (j, &c) in diag.iter().enumerate() {
            m.set(off + j, off + j, c);
        }
        Ok(m)
    }

    /// Every value `q(v)` with its vector, for small concrete forms.
    pub fn all_vectors(&self) -> Result<VectorIter> {
        let f = self.gf()?;
        let total = (f.order() as u64).checked_pow(self.dim() as u32);
        match total {
            Some(t) if t <= 1 << 24 => Ok(VectorIter::new(f.order(), self.dim())),
            _ => Err(crate::Error::Resource(format!(
                "exhaustive scan of a {}-dimensional form over a field of order {} is too large",
                self.dim(),
                f.order()
            ))),
        }
    }
}

/// Odometer over all vectors of `F^n`.
pub struct VectorIter {
    order: u32,
    cur: Option<Vec<u32>>,
}

impl VectorIter {
    pub fn new(order: u32, n: usize) -> Self {
        VectorIter {
            order,
            cur: Some(vec![0; n]),
        }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.clone()?;
        let v = self.cur.as_mut().expect("checked");
        let mut i = v.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < self.order {
                break;
            }
            v[i] = 0;
        }
        Some(out)
    }
}

/// `<a_1,...,a_n> (x) q = a_1 q + ... + a_n q`; `q` must have no diagonal part.
pub fn tensor_bilinear(b: &BilinDiag, q: &QForm) -> Result<QForm> {
    if b.field != q.field {
        return arg("tensor product of forms over different fields");
    }
    if !q.diag.is_empty() {
        return unsupported("tensor product needs an even form with no diagonal part");
    }
    let mut out = QForm::zero(&q.field);
    for a in &b.entries {
        out = out.orth_sum(&q.scale(a)?)?;
    }
    Ok(out)
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .blocks
            .iter()
            .map(|blk| {
                let is_one = blk.tag == self.field.one();
                if is_one {
                    format!("[{},{}]", blk.a, blk.b)
                } else {
                    format!("{}*[{},{}]", blk.tag, blk.a, blk.b)
                }
            })
            .collect();
        parts.extend(self.diag.iter().map(|c| format!("<{c}>")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;

    fn gf(k: u32) -> Arc<Gf2k> {
        Arc::new(Gf2k::new(k).unwrap())
    }

    #[test]
    fn evaluate_examples() {
        let f2 = gf(1);
        let q = QForm::concrete(&f2, &[(1, 1)], &[]).unwrap();
        assert_eq!(q.evaluate(&[1, 1]).unwrap(), 1);
        let h = QForm::hyperbolic(&f2, 1);
        assert_eq!(h.evaluate(&[1, 0]).unwrap(), 0);
        let f4 = gf(2);
        let w = 2;
        let q = QForm::concrete(&f4, &[(1, w)], &[]).unwrap();
        // w^2 + w + w = w^2 = w + 1
        assert_eq!(q.evaluate(&[w, 1]).unwrap(), f4.square(w));
        assert_eq!(f4.square(w), 3);
    }

    #[test]
    fn evaluate_errors() {
        let q = QForm::concrete(&gf(1), &[(1, 1)], &[]).unwrap();
        assert!(matches!(q.evaluate(&[1]), Err(crate::Error::Argument(_))));
        let formal = Field2::formal(["a"]);
        let fq = QForm::new(&formal, vec![(Scalar::Label(Label::one()), Scalar::Label(Label::var("a")))], vec![]).unwrap();
        assert!(matches!(fq.evaluate(&[0, 0]), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn scaling_by_substitution_oracle() {
        let f4 = gf(2);
        let w = 2;
        let q = QForm::concrete(&f4, &[(1, 1)], &[]).unwrap();
        let scaled = q.scale(&Scalar::Gf(w)).unwrap();
        assert_eq!(scaled, QForm::concrete(&f4, &[(w, f4.square(w))], &[]).unwrap());
        // w * q(x, y) == scaled(x, w y) for all 16 vectors
        for x in 0..4 {
            for y in 0..4 {
                let lhs = f4.mul(w, q.evaluate(&[x, y]).unwrap());
                let rhs = scaled.evaluate(&[x, f4.mul(w, y)]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(q.scale(&Scalar::Gf(1)).unwrap(), q);
        assert!(q.scale(&Scalar::Gf(0)).is_err());
    }

    #[test]
    fn orth_sum_dimensions() {
        let f = gf(2);
        let q = QForm::concrete(&f, &[(1, 2)], &[3]).unwrap();
        let e = QForm::zero(&Field2::Concrete(f.clone()));
        assert_eq!(q.orth_sum(&e).unwrap(), q);
        assert_eq!(q.orth_sum(&q).unwrap().dim(), 6);
        let other = QForm::hyperbolic(&gf(1), 1);
        assert!(q.orth_sum(&other).is_err());
    }

    #[test]
    fn tensor_examples() {
        let f = gf(2);
        let field = Field2::Concrete(f.clone());
        let q = QForm::concrete(&f, &[(1, 3)], &[]).unwrap();
        let one = BilinDiag::new(&field, vec![Scalar::Gf(1)]).unwrap();
        assert_eq!(tensor_bilinear(&one, &q).unwrap(), q);
        let a = Scalar::Gf(2);
        let b = BilinDiag::pfister_factor(&field, a.clone()).unwrap();
        let t = tensor_bilinear(&b, &q).unwrap();
        assert_eq!(t, q.orth_sum(&q.scale(&a).unwrap()).unwrap());
        assert_eq!(t.dim(), 4);
        let with_diag = QForm::concrete(&f, &[], &[1]).unwrap();
        assert!(matches!(tensor_bilinear(&one, &with_diag), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn formal_scale_records_tag() {
        let field = Field2::formal(["b", "d"]);
        let q = QForm::new(&field, vec![(Scalar::Label(Label::one()), Scalar::Label(Label::var("b")))], vec![]).unwrap();
        let d = Scalar::Label(Label::var("d"));
        let s = q.scale(&d).unwrap();
        assert_eq!(s.blocks()[0].tag, d);
        assert_eq!(s.blocks()[0].a, Scalar::Label(Label::one()));
        assert_eq!(s.to_string(), "d*[1,b]");
    }
}
