//! Multiplicative labels: formal monomials in named indeterminates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::Error;

/// A monomial in named variables with positive exponents; the empty
/// monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    factors: BTreeMap<String, u32>,
}

/// Structural view of a [`Label`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind<'a> {
    One,
    Var(&'a str),
    Product,
}

impl Label {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Label {
            factors: BTreeMap::from([(name.to_string(), 1)]),
        }
    }

    pub fn product<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        names
            .into_iter()
            .fold(Self::one(), |acc, n| acc.mul(&Self::var(n)))
    }

    pub fn kind(&self) -> LabelKind<'_> {
        match self.as_var() {
            Some(v) => LabelKind::Var(v),
            None if self.is_one() => LabelKind::One,
            None => LabelKind::Product,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The variable name if this label is a single variable.
    pub fn as_var(&self) -> Option<&str> {
        match self.factors.iter().next() {
            Some((name, 1)) if self.factors.len() == 1 => Some(name),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Label) -> Label {
        let mut factors = self.factors.clone();
        for (v, e) in &other.factors {
            *factors.entry(v.clone()).or_insert(0) += e;
        }
        Label { factors }
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.values().all(|&e| e == 1)
    }

    /// Variables with their exponents, in name order.
    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.factors.iter().map(|(v, &e)| (v.as_str(), e))
    }

    /// Each variable repeated by its exponent.
    pub fn expanded_vars(&self) -> Vec<&str> {
        self.factors
            .iter()
            .flat_map(|(v, &e)| std::iter::repeat_n(v.as_str(), e as usize))
            .collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        f.write_str(&self.expanded_vars().join("*"))
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl FromStr for Label {
    type Err = Error;

    /// Parses `1`, `a`, or `a*b*...`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Label::one();
        for part in s.split('*') {
            let part = part.trim();
            if part == "1" {
                continue;
            }
            if !valid_name(part) {
                return Err(Error::Parse(format!("bad label factor `{part}` in `{s}`")));
            }
            out = out.mul(&Label::var(part));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let l: Label = "d*e".parse().unwrap();
        assert_eq!(l.to_string(), "d*e");
        assert_eq!(l.kind(), LabelKind::Product);
        assert_eq!("1".parse::<Label>().unwrap().kind(), LabelKind::One);
        assert_eq!("a".parse::<Label>().unwrap().kind(), LabelKind::Var("a"));
        let sq: Label = "a*a".parse().unwrap();
        assert!(!sq.is_square_free());
        assert_eq!(sq.to_string(), "a*a");
        assert!("a+b".parse::<Label>().is_err());
        assert!("".parse::<Label>().is_err());
    }

    #[test]
    fn multiplication_is_commutative() {
        let a = Label::var("a");
        let b = Label::var("b");
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&Label::one()), a);
    }
}
