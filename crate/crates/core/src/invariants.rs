//! Formal symbols `{a_1, ..., a_{n-1}, b]` with mod 2 coefficients, and the
//! degree 4 and 5 invariants of torsors for `Spin(7)` through `Spin(10)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{arg, unsupported, Result};
use crate::label::Label;
use crate::qform2::{pfister_expand, Field2, PfisterForm, QForm, Scalar, ScaledPfister};
use crate::Error;

/// `{a_slots..., b_slot]`; the last slot is a formal sum of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolTerm {
    pub a_slots: Vec<Label>,
    pub b_slot: Vec<Label>,
}

impl SymbolTerm {
    pub fn new(a_slots: Vec<Label>, b_slot: Vec<Label>) -> Result<Self> {
        if a_slots.is_empty() {
            return arg("a symbol needs at least one multiplicative slot");
        }
        Ok(SymbolTerm { a_slots, b_slot })
    }

    /// `{v_1, ..., v_{n-1}, v_n]` for single variables.
    pub fn from_vars(vars: &[&str]) -> Result<Self> {
        let Some((b, a)) = vars.split_last() else {
            return arg("empty symbol");
        };
        Self::new(a.iter().map(|v| Label::var(v)).collect(), vec![Label::var(b)])
    }

    /// The degree `n`: number of slots.
    pub fn degree(&self) -> usize {
        self.a_slots.len() + 1
    }
}

impl fmt::Display for SymbolTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for a in &self.a_slots {
            write!(f, "{a},")?;
        }
        if self.b_slot.is_empty() {
            f.write_str("0")?;
        } else {
            let b: Vec<String> = self.b_slot.iter().map(Label::to_string).collect();
            f.write_str(&b.join("+"))?;
        }
        f.write_str("]")
    }
}

/// A sum of symbols with coefficients in `Z/2`, stored as a list of terms
/// (repeats allowed until normalization).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolSum {
    pub terms: Vec<SymbolTerm>,
}

impl SymbolSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: SymbolTerm) -> Self {
        SymbolSum { terms: vec![t] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymbolSum) -> SymbolSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SymbolSum { terms }
    }
}

impl fmt::Display for SymbolSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(SymbolTerm::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Splits on `+` outside of `{...]`.
fn split_terms(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if !(0..=1).contains(&depth) {
            return Err(Error::Parse(format!("unbalanced braces in `{s}`")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced braces in `{s}`")));
    }
    out.push(&s[start..]);
    Ok(out)
}

impl FromStr for SymbolTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(inner) = t.strip_prefix('{').and_then(|x| x.strip_suffix(']')) else {
            return Err(Error::Parse(format!("symbol `{t}` must look like {{a,...,b]")));
        };
        let slots: Vec<&str> = inner.split(',').collect();
        let Some((b, a)) = slots.split_last() else {
            unreachable!("split yields at least one piece")
        };
        if a.is_empty() {
            return Err(Error::Parse(format!("symbol `{t}` needs at least two slots")));
        }
        let a_slots = a.iter().map(|x| x.parse()).collect::<Result<Vec<Label>>>()?;
        let b_slot = if b.trim() == "0" {
            Vec::new()
        } else {
            b.split('+').map(|x| x.parse()).collect::<Result<Vec<Label>>>()?
        };
        SymbolTerm::new(a_slots, b_slot).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl FromStr for SymbolSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(SymbolSum::zero());
        }
        let terms = split_terms(&compact)?
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolSum { terms })
    }
}

/// One rewrite step of the normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `{.., xy, ..] = {.., x, ..] + {.., y, ..]`, also for powers.
    ExpandProducts,
    /// `{.., 1, ..] = 0`.
    DropOne,
    /// `{.., x, .., x, ..] = 0`.
    DropRepeated,
    /// `{.., b + b'] = {.., b] + {.., b']`, and an empty last slot is 0.
    SplitB,
    /// Reorders the multiplicative slots and then the terms.
    Sort,
    /// Removes pairs of equal terms.
    Cancel,
}

pub const RULES: [Rule; 6] = [
    Rule::ExpandProducts,
    Rule::DropOne,
    Rule::DropRepeated,
    Rule::SplitB,
    Rule::Sort,
    Rule::Cancel,
];

fn expand_term(t: &SymbolTerm) -> Vec<SymbolTerm> {
    let Some(pos) = t.a_slots.iter().position(|l| l.expanded_vars().len() > 1) else {
        return vec![t.clone()];
    };
    t.a_slots[pos]
        .expanded_vars()
        .into_iter()
        .map(|v| {
            let mut u = t.clone();
            u.a_slots[pos] = Label::var(v);
            u
        })
        .collect()
}

pub fn apply_rule(rule: Rule, s: &SymbolSum) -> SymbolSum {
    let terms = match rule {
        Rule::ExpandProducts => s.terms.iter().flat_map(expand_term).collect(),
        Rule::DropOne => s
            .terms
            .iter()
            .filter(|t| !t.a_slots.iter().any(Label::is_one))
            .cloned()
            .collect(),
        Rule::DropRepeated => s
            .terms
            .iter()
            .filter(|t| {
                let distinct: BTreeSet<&Label> = t.a_slots.iter().collect();
                distinct.len() == t.a_slots.len()
            })
            .cloned()
            .collect(),
        Rule::SplitB => s
            .terms
            .iter()
            .flat_map(|t| {
                t.b_slot.iter().map(|b| SymbolTerm {
                    a_slots: t.a_slots.clone(),
                    b_slot: vec![b.clone()],
                })
            })
            .collect(),
        Rule::Sort => {
            let mut terms: Vec<SymbolTerm> = s
                .terms
                .iter()
                .map(|t| {
                    let mut u = t.clone();
                    u.a_slots.sort();
                    u
                })
                .collect();
            terms.sort();
            terms
        }
        Rule::Cancel => {
            let mut out: Vec<SymbolTerm> = Vec::new();
            for t in &s.terms {
                match out.iter().position(|u| u == t) {
                    Some(i) => {
                        out.remove(i);
                    }
                    None => out.push(t.clone()),
                }
            }
            out
        }
    };
    SymbolSum { terms }
}

/// Applies the rules in the given cyclic order until none changes the sum.
pub fn normalize_with_order(s: &SymbolSum, order: &[Rule]) -> SymbolSum {
    let mut cur = s.clone();
    loop {
        let mut changed = false;
        for &r in order {
            let next = apply_rule(r, &cur);
            if next != cur {
                changed = true;
                cur = next;
            }
        }
        if !changed {
            return cur;
        }
    }
}

pub fn symbol_normalize(s: &SymbolSum) -> SymbolSum {
    normalize_with_order(s, &RULES)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    /// Nonzero by the known computation of these groups for rational
    /// function fields; an imported fact, not computed here.
    CertifiedNonzero,
    Unknown,
}

impl Verdict {
    pub fn describe(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::CertifiedNonzero => "nonzero (certified by citation)",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Sound but incomplete nonvanishing test over a rational function field in
/// `indeterminates`: a single symbol in pairwise distinct indeterminates is
/// certified nonzero.
pub fn symbol_generic_nonzero(s: &SymbolSum, indeterminates: &BTreeSet<String>) -> Verdict {
    let n = symbol_normalize(s);
    match n.terms.as_slice() {
        [] => Verdict::Zero,
        [t] => {
            let slots = t.a_slots.iter().chain(&t.b_slot);
            let vars: Option<Vec<&str>> = slots.map(Label::as_var).collect();
            let generic = vars.is_some_and(|vs| {
                let set: BTreeSet<&str> = vs.iter().copied().collect();
                set.len() == vs.len() && vs.iter().all(|v| indeterminates.contains(*v))
            });
            if generic {
                Verdict::CertifiedNonzero
            } else {
                Verdict::Unknown
            }
        }
        _ => Verdict::Unknown,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupId {
    Spin7,
    Spin8,
    Spin9,
    Spin10,
}

impl GroupId {
    pub const ALL: [GroupId; 4] = [GroupId::Spin7, GroupId::Spin8, GroupId::Spin9, GroupId::Spin10];

    /// Number of torsor parameters: `a,b,c,d` or `a,b,c,d,e`.
    pub fn arity(self) -> usize {
        match self {
            GroupId::Spin7 | GroupId::Spin10 => 4,
            GroupId::Spin8 | GroupId::Spin9 => 5,
        }
    }

    pub fn n(self) -> u32 {
        match self {
            GroupId::Spin7 => 7,
            GroupId::Spin8 => 8,
            GroupId::Spin9 => 9,
            GroupId::Spin10 => 10,
        }
    }

    /// Degree of the invariant.
    pub fn degree(self) -> usize {
        self.arity()
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spin7" => Ok(GroupId::Spin7),
            "spin8" => Ok(GroupId::Spin8),
            "spin9" => Ok(GroupId::Spin9),
            "spin10" => Ok(GroupId::Spin10),
            _ => Err(Error::Parse(format!("unknown group `{s}`"))),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spin{}", self.n())
    }
}

/// Parameters of a torsor: the base Pfister form `<<a,b,c]]` and the
/// scalars `d` (and `e`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorData {
    group: GroupId,
    labels: Vec<Label>,
}

impl TorsorData {
    pub fn new(group: GroupId, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != group.arity() {
            return arg(format!(
                "{group} needs {} labels, got {}",
                group.arity(),
                labels.len()
            ));
        }
        Ok(TorsorData { group, labels })
    }

    pub fn from_names(group: GroupId, names: &[&str]) -> Result<Self> {
        let labels = names
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Label>>>()?;
        Self::new(group, labels)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    fn a(&self) -> &Label {
        &self.labels[0]
    }
    fn b(&self) -> &Label {
        &self.labels[1]
    }
    fn c(&self) -> &Label {
        &self.labels[2]
    }
    fn d(&self) -> &Label {
        &self.labels[3]
    }
    fn e(&self) -> Option<&Label> {
        self.labels.get(4)
    }

    /// The formal field in all variables that occur in the labels.
    pub fn field(&self) -> Field2 {
        let vars: BTreeSet<&str> = self
            .labels
            .iter()
            .flat_map(|l| l.factors().map(|(v, _)| v))
            .collect();
        Field2::formal(vars)
    }

    pub fn indeterminates(&self) -> BTreeSet<String> {
        self.labels
            .iter()
            .flat_map(|l| l.factors().map(|(v, _)| v.to_string()))
            .collect()
    }

    /// `<<a,b,c]]`.
    pub fn base(&self) -> PfisterForm {
        PfisterForm {
            a_slots: vec![Scalar::Label(self.a().clone()), Scalar::Label(self.b().clone())],
            b: Scalar::Label(self.c().clone()),
        }
    }

    /// `<<d,a,b,c]]` or `<<d,e,a,b,c]]`, and the number of leading slots
    /// that the torsor forms split off.
    pub fn target(&self) -> (PfisterForm, usize) {
        let mut a_slots = vec![Scalar::Label(self.d().clone())];
        if let (GroupId::Spin8 | GroupId::Spin9, Some(e)) = (self.group, self.e()) {
            a_slots.push(Scalar::Label(e.clone()));
        }
        let j = a_slots.len();
        a_slots.extend(self.base().a_slots);
        (
            PfisterForm {
                a_slots,
                b: Scalar::Label(self.c().clone()),
            },
            j,
        )
    }
}

/// `hyperbolic * H + sum of scaled Pfister pieces`, all over one base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedForm {
    pub name: String,
    pub hyperbolic: usize,
    #[serde(serialize_with = "ser_pieces")]
    pub pieces: Vec<ScaledPfister>,
}

fn ser_pieces<S: serde::Serializer>(p: &[ScaledPfister], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(ScaledPfister::to_string))
}

impl fmt::Display for TaggedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["H".to_string(); self.hyperbolic];
        parts.extend(self.pieces.iter().map(ScaledPfister::to_string));
        write!(f, "{} = {}", self.name, parts.join(" + "))
    }
}

/// Input to [`pfister_recover`].
#[derive(Clone, Debug)]
pub enum FormData {
    Tagged(TaggedForm),
    Raw(QForm),
}

pub fn torsor_forms(t: &TorsorData) -> Result<Vec<TaggedForm>> {
    let base = t.base();
    let scaled = |s: &Label| ScaledPfister {
        scalar: Scalar::Label(s.clone()),
        base: base.clone(),
    };
    let form = |name: &str, hyperbolic, pieces| TaggedForm {
        name: name.to_string(),
        hyperbolic,
        pieces,
    };
    let d = t.d();
    let e = || t.e().ok_or_else(|| Error::Argument(format!("{} needs e", t.group)));
    let one = Label::one();
    Ok(match t.group {
        GroupId::Spin7 => vec![form("q1", 0, vec![scaled(&one)]), form("q2", 0, vec![scaled(d)])],
        GroupId::Spin8 => {
            let e = e()?;
            vec![
                form("q1", 0, vec![scaled(d)]),
                form("q2", 0, vec![scaled(e)]),
                form("q3", 0, vec![scaled(&d.mul(e))]),
            ]
        }
        GroupId::Spin9 => {
            let e = e()?;
            vec![
                form("r", 1, vec![scaled(d)]),
                form("s", 0, vec![scaled(e), scaled(&d.mul(e))]),
            ]
        }
        GroupId::Spin10 => vec![form("q", 1, vec![scaled(d)])],
    })
}

/// Drops hyperbolic summands and the scalar of a single scaled Pfister
/// form, leaving the base form.
pub fn pfister_recover(f: &FormData) -> Result<PfisterForm> {
    match f {
        FormData::Raw(_) => unsupported("recognizing Pfister forms from coefficients"),
        FormData::Tagged(t) => match t.pieces.as_slice() {
            [one] => Ok(one.base.clone()),
            _ => unsupported(format!(
                "{} is not a single scaled Pfister form plus hyperbolic planes",
                t.name
            )),
        },
    }
}

/// The Witt-cancelled part of a tagged form: its pieces, without `H`.
pub fn anisotropic_part(f: &TaggedForm) -> Vec<ScaledPfister> {
    f.pieces.clone()
}

/// The pieces whose sum should be the target Pfister form: the torsor forms
/// with hyperbolic planes cancelled, plus the base form `q0` where the
/// torsor forms leave it out.
pub fn assembled_pieces(t: &TorsorData) -> Result<Vec<ScaledPfister>> {
    let forms = torsor_forms(t)?;
    let mut pieces = Vec::new();
    if t.group != GroupId::Spin7 {
        pieces.push(ScaledPfister {
            scalar: Scalar::Label(Label::one()),
            base: pfister_recover(&FormData::Tagged(forms[0].clone()))?,
        });
    }
    for f in &forms {
        pieces.extend(anisotropic_part(f));
    }
    pieces.sort();
    Ok(pieces)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub group: GroupId,
    pub forms: Vec<TaggedForm>,
    pub assembled: Vec<String>,
    pub target: String,
    pub expansion_matches: bool,
    /// The symbol read off the target, before normalization.
    pub raw_symbol: String,
    pub symbol: String,
    pub verdict: Verdict,
}

/// Checks the expansion identity and returns the invariant with its
/// supporting data.
pub fn invariant_report(t: &TorsorData) -> Result<InvariantReport> {
    let field = t.field();
    let pieces = assembled_pieces(t)?;
    let (target, j) = t.target();
    let expansion = pfister_expand(&field, &target, j)?;
    let expansion_matches = pieces == expansion;
    if !expansion_matches {
        return Err(Error::Verification(format!(
            "torsor forms of {} do not add up to {target}",
            t.group
        )));
    }
    let labels = |ss: &[Scalar]| -> Vec<Label> {
        ss.iter()
            .map(|s| match s {
                Scalar::Label(l) => l.clone(),
                Scalar::Gf(_) => unreachable!("formal field"),
            })
            .collect()
    };
    let Scalar::Label(c) = &target.b else {
        unreachable!("formal field")
    };
    let term = SymbolTerm::new(labels(&target.a_slots), vec![c.clone()])?;
    let raw_symbol = term.to_string();
    let symbol = symbol_normalize(&SymbolSum::single(term));
    let verdict = symbol_generic_nonzero(&symbol, &t.indeterminates());
    Ok(InvariantReport {
        group: t.group,
        forms: torsor_forms(t)?,
        assembled: pieces.iter().map(ScaledPfister::to_string).collect(),
        target: target.to_string(),
        expansion_matches,
        raw_symbol,
        symbol: symbol.to_string(),
        verdict,
    })
}

/// `{d,a,b,c]` for `Spin(7)`, `Spin(10)`; `{d,e,a,b,c]` for `Spin(8)`,
/// `Spin(9)`; normalized.
pub fn invariant_f(t: &TorsorData) -> Result<SymbolSum> {
    let report = invariant_report(t)?;
    report.symbol.parse()
}
