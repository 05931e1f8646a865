use std::fmt;
use std::sync::Arc;

use crate::error::{arg, unsupported, Result};
use crate::label::Label;
use crate::Error;

/// Conway polynomials over the 2-element field, degrees 1 through 16, as
/// bit patterns including the leading term.
pub const CONWAY_POLYNOMIALS: [u32; 16] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x5b, 0x83, 0x11d, 0x211, 0x46f, 0x805, 0x10eb, 0x201b, 0x40a9,
    0x8035, 0x1002d,
];

pub const MAX_DEGREE: u32 = 16;

/// The field with `2^k` elements as `F_2[t]/(p(t))`, `p` primitive.
///
/// Elements are polynomial bit patterns `0..2^k`; multiplication goes
/// through discrete log tables built from the primitive root `t`.
#[derive(Clone)]
pub struct Gf2k {
    k: u32,
    poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Gf2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2k(2^{}, poly={:#x})", self.k, self.poly)
    }
}

impl PartialEq for Gf2k {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.poly == other.poly
    }
}

impl Eq for Gf2k {}

/// Carry-less multiplication reduced mod `poly` (degree `k`).
pub(crate) fn clmul_mod(mut a: u32, mut b: u32, poly: u32, k: u32) -> u32 {
    let mut r = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= poly;
        }
    }
    r
}

impl Gf2k {
    /// The field of order `2^k` defined by the Conway polynomial.
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::Resource(format!(
                "field degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::with_poly(k, CONWAY_POLYNOMIALS[k as usize - 1])
    }

    /// Builds the field from a primitive polynomial of degree `k`.
    pub fn with_poly(k: u32, poly: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&k) || poly >> k != 1 || poly & 1 == 0 {
            return arg(format!("{poly:#x} is not a polynomial of degree {k}"));
        }
        let order = 1usize << k;
        let root = if k == 1 { 1 } else { 2 };
        let mut exp = vec![0u32; order - 1];
        let mut log = vec![u32::MAX; order];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            if log[x as usize] != u32::MAX {
                return arg(format!("{poly:#x} is not primitive of degree {k}"));
            }
            *slot = x;
            log[x as usize] = i as u32;
            x = clmul_mod(x, root, poly, k);
        }
        if x != 1 {
            return arg(format!("{poly:#x} is not primitive of degree {k}"));
        }
        Ok(Gf2k { k, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        0..self.order()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u32> + Clone {
        1..self.order()
    }

    pub fn is_element(&self, x: u32) -> bool {
        x < self.order()
    }

    pub fn check(&self, x: u32) -> Result<u32> {
        if self.is_element(x) {
            Ok(x)
        } else {
            arg(format!("{x:#x} is not an element of the field of order {}", self.order()))
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len() as u32;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return arg("zero has no inverse");
        }
        let n = self.exp.len() as u32;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// The unique square root (Frobenius is bijective).
    pub fn sqrt(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let l = self.log[a as usize] as u64;
        // sqrt(t^l) = t^{l * 2^{-1} mod n}, n odd
        let half = n.div_ceil(2);
        self.exp[((l * half) % n) as usize]
    }

    /// Absolute trace to the prime field, `a + a^2 + ... + a^{2^{k-1}}`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.k {
            t ^= x;
            x = self.square(x);
        }
        debug_assert!(t <= 1);
        t
    }

    /// Artin-Schreier map `c -> c^2 + c`.
    pub fn wp(&self, c: u32) -> u32 {
        self.square(c) ^ c
    }
}

/// Formal indeterminates; only multiplication of labels is meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalField {
    variables: Vec<String>,
}

impl FormalField {
    pub fn new(variables: Vec<String>) -> Self {
        FormalField { variables }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn check(&self, l: &Label) -> Result<()> {
        for (v, _) in l.factors() {
            if !self.variables.iter().any(|x| x == v) {
                return arg(format!("`{v}` is not a variable of the formal field"));
            }
        }
        Ok(())
    }
}

/// A ground field: a concrete finite field or a field of formal labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field2 {
    Concrete(Arc<Gf2k>),
    Formal(Arc<FormalField>),
}

/// An element of a [`Field2`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Gf(u32),
    Label(Label),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gf(x) => write!(f, "{x:x}"),
            Scalar::Label(l) => write!(f, "{l}"),
        }
    }
}

impl Scalar {
    pub fn gf(&self) -> Result<u32> {
        match self {
            Scalar::Gf(x) => Ok(*x),
            Scalar::Label(l) => unsupported(format!("formal label `{l}` has no concrete value")),
        }
    }
}

/// Builds the concrete field of order `2^k`.
pub fn field_build(k: u32) -> Result<Field2> {
    Ok(Field2::Concrete(Arc::new(Gf2k::new(k)?)))
}

impl Field2 {
    pub fn formal<'a>(vars: impl IntoIterator<Item = &'a str>) -> Field2 {
        Field2::Formal(Arc::new(FormalField::new(
            vars.into_iter().map(String::from).collect(),
        )))
    }

    pub fn concrete(&self) -> Result<&Gf2k> {
        match self {
            Field2::Concrete(f) => Ok(f),
            Field2::Formal(_) => unsupported("operation needs a concrete finite field"),
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, Field2::Formal(_))
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field2::Concrete(_) => Scalar::Gf(1),
            Field2::Formal(_) => Scalar::Label(Label::one()),
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        match (self, s) {
            (Field2::Concrete(f), Scalar::Gf(x)) => f.check(*x).map(|_| ()),
            (Field2::Formal(f), Scalar::Label(l)) => f.check(l),
            _ => arg(format!("scalar {s} does not belong to this field")),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        matches!(s, Scalar::Gf(0))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Field2::Concrete(f), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(f.mul(*x, *y)),
            (Field2::Formal(_), Scalar::Label(x), Scalar::Label(y)) => Scalar::Label(x.mul(y)),
            _ => unreachable!("checked above"),
        })
    }

    /// Addition; formal labels cannot be added.
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let f = self
            .concrete()
            .map_err(|_| Error::Unsupported("formal labels cannot be added".into()))?;
        Ok(Scalar::Gf(f.add(a.gf()?, b.gf()?)))
    }

    pub fn describe(&self) -> String {
        match self {
            Field2::Concrete(f) => format!("F_{} (poly {:#x})", f.order(), f.poly()),
            Field2::Formal(f) => format!("formal({})", f.variables().join(",")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_primitive_by_order(f: &Gf2k) -> bool {
        // t generates the multiplicative group iff its order is 2^k - 1
        let n = f.order() - 1;
        let root = if f.degree() == 1 { 1 } else { 2 };
        let mut x = 1u32;
        for i in 1..=n {
            x = clmul_mod(x, root, f.poly(), f.degree());
            if x == 1 {
                return i == n;
            }
        }
        false
    }

    /// Conway polynomials by definition: the least primitive polynomial
    /// compatible with all proper-divisor subfields.
    fn conway_by_definition() -> Vec<u32> {
        let mut found: Vec<u32> = Vec::new();
        for n in 1..=MAX_DEGREE {
            let mut chosen = None;
            for low in 0..(1u32 << n) {
                let p = 1 << n | low;
                let Ok(f) = Gf2k::with_poly(n, p) else { continue };
                let compatible = (1..n).filter(|m| n % m == 0).all(|m| {
                    let e = ((1u64 << n) - 1) / ((1u64 << m) - 1);
                    let root = if n == 1 { 1 } else { 2 };
                    let mut x = 1u32;
                    let mut base = root;
                    let mut e = e;
                    while e > 0 {
                        if e & 1 == 1 {
                            x = f.mul(x, base);
                        }
                        base = f.mul(base, base);
                        e >>= 1;
                    }
                    // evaluate the degree-m Conway polynomial at x (Horner)
                    let c = found[m as usize - 1];
                    let mut acc = 0u32;
                    for i in (0..=m).rev() {
                        acc = f.mul(acc, x) ^ (c >> i & 1);
                    }
                    acc == 0
                });
                if compatible {
                    chosen = Some(p);
                    break;
                }
            }
            found.push(chosen.unwrap_or_else(|| panic!("no Conway polynomial of degree {n}; so far {found:x?}")));
        }
        found
    }

    #[test]
    fn table_matches_definition() {
        assert_eq!(conway_by_definition(), CONWAY_POLYNOMIALS.to_vec());
    }

    #[test]
    fn every_tabled_poly_is_primitive() {
        for k in 1..=MAX_DEGREE {
            assert!(is_primitive_by_order(&Gf2k::new(k).unwrap()), "degree {k}");
        }
    }

    #[test]
    fn out_of_range_degree() {
        assert!(matches!(Gf2k::new(0), Err(Error::Resource(_))));
        assert!(matches!(Gf2k::new(17), Err(Error::Resource(_))));
        assert!(Gf2k::with_poly(2, 0b101).is_err()); // t^2 + 1 = (t+1)^2
    }

    #[test]
    fn small_fields() {
        let f2 = Gf2k::new(1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.mul(1, 1), 1);
        let f4 = Gf2k::new(2).unwrap();
        let w = 2;
        assert_eq!(f4.mul(w, w ^ 1), 1);
        assert_eq!(f4.wp(w), 1);
    }

    #[test]
    fn f8_associativity_exhaustive() {
        let f = Gf2k::new(3).unwrap();
        let mut count = 0;
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    count += 1;
                }
            }
        }
        assert_eq!(count, 512);
    }

    #[test]
    fn table_multiplication_matches_carryless() {
        for k in [4, 8, 11] {
            let f = Gf2k::new(k).unwrap();
            for a in (0..f.order()).step_by(7) {
                for b in (0..f.order()).step_by(13) {
                    assert_eq!(f.mul(a, b), clmul_mod(a, b, f.poly(), k));
                }
            }
        }
    }

    #[test]
    fn inverse_sqrt_trace() {
        for k in 1..=8 {
            let f = Gf2k::new(k).unwrap();
            let mut wp_image = std::collections::BTreeSet::new();
            for a in f.elements() {
                wp_image.insert(f.wp(a));
                assert_eq!(f.square(f.sqrt(a)), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            // image of c^2 + c is exactly the trace-zero hyperplane
            for a in f.elements() {
                assert_eq!(wp_image.contains(&a), f.trace(a) == 0, "k={k} a={a}");
            }
        }
    }

    #[test]
    fn formal_labels_cannot_be_added() {
        let f = Field2::formal(["a", "b"]);
        let a = Scalar::Label(Label::var("a"));
        let b = Scalar::Label(Label::var("b"));
        assert!(matches!(f.add(&a, &b), Err(Error::Unsupported(_))));
        assert_eq!(f.mul(&a, &b).unwrap(), Scalar::Label(Label::product(["a", "b"])));
        assert!(f.mul(&a, &Scalar::Label(Label::var("z"))).is_err());
    }
}
