//! Legality rules `f: ℕ₀ → ℕ₀`.
//!
//! Choosing `a_n` in a decomposition forbids the `f(n)` terms directly below
//! it. Rules are finitely described so they can be parsed, serialized and
//! analysed: constant, periodic, factorial bins, or a finite table with an
//! extension policy.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::RuleError;

/// What a table rule returns past its last entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    #[default]
    RepeatLast,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Constant(usize),
    Periodic(Vec<usize>),
    FactorialBins,
    Table(Vec<usize>, Extension),
}

/// A finitely described legality function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FRule {
    repr: Repr,
}

/// Discriminant of an [`FRule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Constant,
    Periodic,
    FactorialBins,
    Table,
}

impl FRule {
    pub fn constant(c: usize) -> Self {
        Self {
            repr: Repr::Constant(c),
        }
    }

    pub fn periodic(pattern: Vec<usize>) -> Result<Self, RuleError> {
        if pattern.is_empty() {
            return Err(RuleError::EmptyPattern);
        }
        Ok(Self {
            repr: Repr::Periodic(pattern),
        })
    }

    pub fn factorial_bins() -> Self {
        Self {
            repr: Repr::FactorialBins,
        }
    }

    /// A table rule. An empty table is only meaningful with [`Extension::Zero`].
    pub fn table(values: Vec<usize>, extension: Extension) -> Result<Self, RuleError> {
        if values.is_empty() && extension == Extension::RepeatLast {
            return Err(RuleError::EmptyTable);
        }
        Ok(Self {
            repr: Repr::Table(values, extension),
        })
    }

    /// Base-`b` digits as a rule: bins of `b − 1` indices with `f` running
    /// `0, 1, …, b − 2` inside each bin.
    pub fn base(b: usize) -> Result<Self, RuleError> {
        if b < 2 {
            return Err(RuleError::BaseTooSmall(b));
        }
        Self::periodic((0..b - 1).collect())
    }

    pub fn kind(&self) -> RuleKind {
        match self.repr {
            Repr::Constant(_) => RuleKind::Constant,
            Repr::Periodic(_) => RuleKind::Periodic,
            Repr::FactorialBins => RuleKind::FactorialBins,
            Repr::Table(..) => RuleKind::Table,
        }
    }

    /// `f(n)`.
    pub fn eval(&self, n: usize) -> usize {
        match &self.repr {
            Repr::Constant(c) => *c,
            Repr::Periodic(p) => p[n % p.len()],
            Repr::FactorialBins => factorial_bin_offset(n),
            Repr::Table(t, ext) => match t.get(n) {
                Some(v) => *v,
                None => match ext {
                    Extension::RepeatLast => *t.last().expect("nonempty when repeating"),
                    Extension::Zero => 0,
                },
            },
        }
    }

    /// One full period of `f`, for constant and periodic rules.
    pub fn period_pattern(&self) -> Option<&[usize]> {
        match &self.repr {
            Repr::Constant(c) => Some(std::slice::from_ref(c)),
            Repr::Periodic(p) => Some(p),
            _ => None,
        }
    }

    /// Serializes to the rule-file document.
    pub fn to_json(&self) -> Value {
        let doc = match &self.repr {
            Repr::Constant(c) => RuleDoc {
                kind: "constant".into(),
                value: Some(*c as i64),
                ..RuleDoc::default()
            },
            Repr::Periodic(p) => RuleDoc {
                kind: "periodic".into(),
                pattern: Some(p.iter().map(|&v| v as i64).collect()),
                ..RuleDoc::default()
            },
            Repr::FactorialBins => RuleDoc {
                kind: "factorial_bins".into(),
                ..RuleDoc::default()
            },
            Repr::Table(t, ext) => RuleDoc {
                kind: "table".into(),
                table: Some(t.iter().map(|&v| v as i64).collect()),
                extension: Some(*ext),
                ..RuleDoc::default()
            },
        };
        serde_json::to_value(doc).expect("rule documents always serialize")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}

/// Offset of `n` inside its bin, for bins of widths 1, 2, 3, ….
fn factorial_bin_offset(n: usize) -> usize {
    // largest m with m(m+1)/2 <= n
    let n128 = n as u128;
    let mut m = ((8 * n128 + 1).sqrt() - 1) / 2;
    while m * (m + 1) / 2 > n128 {
        m -= 1;
    }
    while (m + 1) * (m + 2) / 2 <= n128 {
        m += 1;
    }
    (n128 - m * (m + 1) / 2) as usize
}

/// The `b`-bin rule `f(n) = max(1, n mod b)`.
pub fn bbin_rule(b: usize) -> Result<FRule, RuleError> {
    if b < 3 {
        return Err(RuleError::BinWidthTooSmall(b));
    }
    FRule::periodic((0..b).map(|r| r.max(1)).collect())
}

pub fn eval_f(rule: &FRule, n: usize) -> usize {
    rule.eval(n)
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    extension: Option<Extension>,
}

fn natural(field: &'static str, v: i64) -> Result<usize, RuleError> {
    usize::try_from(v).map_err(|_| RuleError::Negative { field, value: v })
}

fn naturals(field: &'static str, vs: &[i64]) -> Result<Vec<usize>, RuleError> {
    vs.iter().map(|&v| natural(field, v)).collect()
}

fn require<T>(field: &'static str, v: Option<T>) -> Result<T, RuleError> {
    v.ok_or(RuleError::MissingField(field))
}

fn forbid<T>(kind: &str, field: &'static str, v: &Option<T>) -> Result<(), RuleError> {
    match v {
        Some(_) => Err(RuleError::UnexpectedField {
            kind: kind.to_string(),
            field,
        }),
        None => Ok(()),
    }
}

/// Parses a rule-file document (JSON).
pub fn parse_rule(doc: &str) -> Result<FRule, RuleError> {
    let raw: RuleDoc = serde_json::from_str(doc).map_err(|e| RuleError::Malformed(e.to_string()))?;
    let kind = raw.kind.as_str();
    match kind {
        "constant" => {
            forbid(kind, "pattern", &raw.pattern)?;
            forbid(kind, "table", &raw.table)?;
            forbid(kind, "extension", &raw.extension)?;
            Ok(FRule::constant(natural("value", require("value", raw.value)?)?))
        }
        "periodic" => {
            forbid(kind, "value", &raw.value)?;
            forbid(kind, "table", &raw.table)?;
            forbid(kind, "extension", &raw.extension)?;
            FRule::periodic(naturals("pattern", &require("pattern", raw.pattern)?)?)
        }
        "factorial_bins" => {
            forbid(kind, "value", &raw.value)?;
            forbid(kind, "pattern", &raw.pattern)?;
            forbid(kind, "table", &raw.table)?;
            forbid(kind, "extension", &raw.extension)?;
            Ok(FRule::factorial_bins())
        }
        "table" => {
            forbid(kind, "value", &raw.value)?;
            forbid(kind, "pattern", &raw.pattern)?;
            let values = naturals("table", &require("table", raw.table)?)?;
            FRule::table(values, raw.extension.unwrap_or_default())
        }
        other => Err(RuleError::UnknownKind(other.to_string())),
    }
}

fn parse_list(field: &'static str, s: &str) -> Result<Vec<usize>, RuleError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v: i64 = t
                .parse()
                .map_err(|_| RuleError::BadShorthand(format!("{field}: `{t}` is not an integer")))?;
            natural(field, v)
        })
        .collect()
}

fn parse_one(field: &'static str, s: &str) -> Result<usize, RuleError> {
    let mut v = parse_list(field, s)?;
    if v.len() != 1 {
        return Err(RuleError::BadShorthand(format!("{field}: expected one integer")));
    }
    Ok(v.remove(0))
}

/// Inline shorthands: `constant:<c>`, `periodic:<v,…>`, `factorial`,
/// `bbin:<b>`, `base:<b>`.
impl FromStr for FRule {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "factorial" || s == "factorial_bins" {
            return Ok(FRule::factorial_bins());
        }
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| RuleError::BadShorthand(format!("unrecognized rule `{s}`")))?;
        match head {
            "constant" => Ok(FRule::constant(parse_one("value", tail)?)),
            "periodic" => FRule::periodic(parse_list("pattern", tail)?),
            "bbin" => bbin_rule(parse_one("b", tail)?),
            "base" => FRule::base(parse_one("b", tail)?),
            _ => Err(RuleError::BadShorthand(format!("unknown rule kind `{head}`"))),
        }
    }
}

impl fmt::Display for FRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.repr {
            Repr::Constant(c) => write!(f, "constant:{c}"),
            Repr::Periodic(p) => write!(f, "periodic:{}", join(p)),
            Repr::FactorialBins => f.write_str("factorial"),
            Repr::Table(t, ext) => {
                let ext = match ext {
                    Extension::RepeatLast => "repeat_last",
                    Extension::Zero => "zero",
                };
                write!(f, "table:{}/{ext}", join(t))
            }
        }
    }
}
