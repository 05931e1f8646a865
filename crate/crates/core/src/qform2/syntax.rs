//! Text syntax for concrete forms:
//! `[a,b]`, `<c>`, `pf(a1,...,am-1; b)`, optional `s*` prefixes, joined by `+`.
//! Field elements are hex bit patterns with an optional `0x` prefix; `0`
//! alone is the zero-dimensional form.

use std::sync::Arc;

use super::field::{Field2, Gf2k, Scalar};
use super::form::QForm;
use super::pfister::pfister_build;
use crate::error::{Error, Result};

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn parse_element(f: &Gf2k, s: &str) -> Result<u32> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if digits.is_empty() {
        return perr("empty field element");
    }
    let x = u32::from_str_radix(digits, 16)
        .or_else(|_| perr(format!("`{t}` is not a hex field element")))?;
    if !f.is_element(x) {
        return perr(format!(
            "{x:#x} is not an element of the field of order {}",
            f.order()
        ));
    }
    Ok(x)
}

/// Splits on `sep` at bracket depth zero.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '<' | '(' => depth += 1,
            ']' | '>' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return perr(format!("unbalanced `{ch}` in `{s}`"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return perr(format!("unbalanced brackets in `{s}`"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_atom(field: &Arc<Gf2k>, s: &str) -> Result<QForm> {
    let f: &Gf2k = field;
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let xs: Vec<&str> = inner.split(',').collect();
        if xs.len() != 2 {
            return perr(format!("binary block `{s}` needs two entries"));
        }
        return QForm::concrete(field, &[(parse_element(f, xs[0])?, parse_element(f, xs[1])?)], &[]);
    }
    if let Some(inner) = s.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return QForm::concrete(field, &[], &[parse_element(f, inner)?]);
    }
    if let Some(inner) = s.strip_prefix("pf(").and_then(|t| t.strip_suffix(')')) {
        let Some((slots, b)) = inner.split_once(';') else {
            return perr(format!("Pfister form `{s}` needs `;` before the last entry"));
        };
        let a_slots = if slots.trim().is_empty() {
            Vec::new()
        } else {
            slots
                .split(',')
                .map(|x| parse_element(f, x).map(Scalar::Gf))
                .collect::<Result<Vec<_>>>()?
        };
        let b = Scalar::Gf(parse_element(f, b)?);
        return pfister_build(&Field2::Concrete(field.clone()), &a_slots, &b);
    }
    perr(format!("cannot parse form term `{s}`"))
}

pub fn parse_form(field: &Arc<Gf2k>, text: &str) -> Result<QForm> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let zero = QForm::zero(&Field2::Concrete(field.clone()));
    if compact == "0" {
        return Ok(zero);
    }
    if compact.is_empty() {
        return perr("empty form expression");
    }
    let mut out = zero;
    for term in split_top(&compact, '+')? {
        let pieces = split_top(term, '*')?;
        let q = match pieces.as_slice() {
            [atom] => parse_atom(field, atom)?,
            [s, atom] => {
                let s = parse_element(field, s)?;
                if s == 0 {
                    return perr("scalar prefix must be nonzero");
                }
                parse_atom(field, atom)?.scale(&Scalar::Gf(s))?
            }
            _ => return perr(format!("cannot parse form term `{term}`")),
        };
        out = out.orth_sum(&q)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(k: u32) -> Arc<Gf2k> {
        Arc::new(Gf2k::new(k).unwrap())
    }

    #[test]
    fn parses_and_prints() {
        let f = gf(2);
        let q = parse_form(&f, "[1, 3] + <2>").unwrap();
        assert_eq!(q, QForm::concrete(&f, &[(1, 3)], &[2]).unwrap());
        assert_eq!(parse_form(&f, &q.to_string()).unwrap(), q);
        assert_eq!(parse_form(&f, "0").unwrap().dim(), 0);
        assert_eq!(parse_form(&f, "2*[1,1]").unwrap().to_string(), "[2,3]");
        assert_eq!(parse_form(&f, "pf(2;3)").unwrap().to_string(), "[1,3] + [2,2]");
        assert_eq!(parse_form(&f, "pf(;0x1)").unwrap().to_string(), "[1,1]");
    }

    #[test]
    fn rejects_bad_input() {
        let f = gf(1);
        for bad in ["", "[1]", "[1,2]", "<1", "pf(1)", "foo", "0*[1,1]", "[1,1]+"] {
            assert!(matches!(parse_form(&f, bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
