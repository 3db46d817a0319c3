//! Manifold and bundle descriptors: connected-sum expressions, integer
//! lists, and resolution of source documents into invariant systems.

use conifold::fourfold::Standard;
use conifold::transitions::{conifold_transition_ordered, mk_system};
use conifold::{FourManifold, InvariantSystem, RankTwoBundle};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::schema::{BundleDoc, ManifoldDoc, SystemDoc};

/// A syntax error inside a one-line expression; `column` is 1-based and
/// counts characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl ExprError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        Self {
            column,
            message: message.into(),
        }
    }

    /// As a CLI error for an expression given on its own (line 1).
    pub fn into_cli(self) -> CliError {
        CliError::parse(1, self.column, self.message)
    }

    /// As a validation error for an expression embedded in a document.
    pub fn in_field(self, field: &str, text: &str) -> CliError {
        CliError::Validation(format!(
            "{field} \"{text}\": column {}: {}",
            self.column, self.message
        ))
    }
}

/// Parses `"CP2 # 3 CP2bar"`, `"3CP2bar"`, `"2*S2xS2 # CP2"`. Names are
/// case-insensitive; the empty sum is not allowed (write `S4`).
pub fn parse_expression(text: &str) -> std::result::Result<FourManifold, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut result: Option<FourManifold> = None;
    loop {
        skip_ws(&chars, &mut pos);
        let start = pos;
        let mut count: u32 = 1;
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            let mut n: u32 = 0;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[pos].to_digit(10).unwrap()))
                    .ok_or_else(|| ExprError::new(start + 1, "count too large"))?;
                pos += 1;
            }
            if n == 0 {
                return Err(ExprError::new(start + 1, "count must be positive"));
            }
            count = n;
            skip_ws(&chars, &mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                skip_ws(&chars, &mut pos);
            }
        }
        let name_start = pos;
        while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
            pos += 1;
        }
        if name_start == pos {
            let msg = match chars.get(pos) {
                Some(c) => format!("expected a manifold name, found '{c}'"),
                None => "expected a manifold name".to_string(),
            };
            return Err(ExprError::new(pos + 1, msg));
        }
        let name: String = chars[name_start..pos].iter().collect();
        let piece: Standard = name.parse().map_err(|_| {
            ExprError::new(
                name_start + 1,
                format!("unknown manifold \"{name}\" (expected S4, CP2, CP2bar or S2xS2)"),
            )
        })?;
        let piece = FourManifold::standard(piece);
        for _ in 0..count {
            result = Some(match result {
                None => piece.clone(),
                Some(acc) => acc.connected_sum(&piece),
            });
        }
        skip_ws(&chars, &mut pos);
        match chars.get(pos) {
            None => break,
            Some('#') => pos += 1,
            Some(c) => {
                return Err(ExprError::new(pos + 1, format!("expected '#', found '{c}'")));
            }
        }
    }
    Ok(result.expect("at least one term"))
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

/// Parses an integer list such as `"1,-1"`, `"[1, -1]"`, `"1 -1"` or `""`.
pub fn parse_int_list(text: &str) -> std::result::Result<Vec<i64>, ExprError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let (body, offset) = match trimmed.strip_prefix('[') {
        Some(rest) => match rest.strip_suffix(']') {
            Some(inner) => (inner, offset + 1),
            None => return Err(ExprError::new(text.chars().count() + 1, "missing ']'")),
        },
        None => (trimmed, offset),
    };
    let mut out = Vec::new();
    let mut col = offset;
    for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
        if !token.is_empty() {
            let v = token
                .parse::<i64>()
                .map_err(|_| ExprError::new(col + 1, format!("not an integer: \"{token}\"")))?;
            out.push(v);
        }
        col += token.chars().count() + 1;
    }
    Ok(out)
}

impl ManifoldDoc {
    pub fn resolve(&self) -> Result<FourManifold> {
        match self {
            Self::Expression(text) => parse_expression(text).map_err(|e| e.in_field("base", text)),
            Self::Explicit(m) => m.to_manifold(),
        }
    }
}

impl BundleDoc {
    /// `c1` defaults to zero in every slot.
    pub fn resolve(&self, base: &FourManifold) -> Result<RankTwoBundle> {
        let c1 = self.c1.clone().unwrap_or_else(|| vec![0; base.rank()]);
        Ok(RankTwoBundle::new(base.clone(), c1, self.c2)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Z1,
    Z2,
}

/// Built-in invariant systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    M1,
    M2,
    CP3bar,
    S6,
}

impl Builtin {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "m1" => Some(Self::M1),
            "m2" => Some(Self::M2),
            "cp3bar" => Some(Self::CP3bar),
            "s6" => Some(Self::S6),
            _ => None,
        }
    }

    pub fn system(self) -> InvariantSystem {
        match self {
            Self::M1 => mk_system(1).expect("k = 1"),
            Self::M2 => mk_system(2).expect("k = 2"),
            Self::CP3bar => InvariantSystem::cp3bar(),
            Self::S6 => InvariantSystem::new(
                conifold::CubicForm::zeros(0),
                vec![],
                vec![],
                0,
                Some(vec![]),
                vec![],
            )
            .expect("empty system"),
        }
    }
}

/// Where an invariant system comes from. Exactly one of `system`, `builtin`
/// or `base` must be present; the rest only apply to `base`.
///
/// Unknown keys are ignored, so an `invariants` report can be passed back
/// in as a source through its `system` key.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ManifoldDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleDoc>,
    /// Point blowups applied after projectivizing.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub blowups: u32,
    /// Take one side of the transition of `(base, bundle)` instead of
    /// `P(bundle)` itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

/// A validated source; the invariant system is computed by [`Source::system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    System(InvariantSystem),
    Bundle {
        base: FourManifold,
        bundle: RankTwoBundle,
        blowups: u32,
        side: Option<Side>,
    },
}

impl SourceDoc {
    pub fn resolve(&self) -> Result<Source> {
        let given = [
            self.system.is_some(),
            self.builtin.is_some(),
            self.base.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            0 => {
                return Err(CliError::Validation(
                    "source needs one of \"system\", \"builtin\" or \"base\"".into(),
                ))
            }
            1 => {}
            _ => {
                return Err(CliError::Validation(
                    "source has more than one of \"system\", \"builtin\" and \"base\"".into(),
                ))
            }
        }
        let extras = self.bundle.is_some() || self.blowups > 0 || self.side.is_some();
        if let Some(doc) = &self.system {
            if extras {
                return Err(CliError::Validation(
                    "\"bundle\", \"blowups\" and \"side\" need \"base\"".into(),
                ));
            }
            return Ok(Source::System(doc.to_system()?));
        }
        if let Some(name) = &self.builtin {
            if extras {
                return Err(CliError::Validation(
                    "\"bundle\", \"blowups\" and \"side\" need \"base\"".into(),
                ));
            }
            let b = Builtin::parse(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown builtin \"{name}\" (expected M1, M2, CP3bar or S6)"
                ))
            })?;
            return Ok(Source::System(b.system()));
        }
        let base = self.base.as_ref().expect("checked above").resolve()?;
        let bundle = match &self.bundle {
            Some(b) => b.resolve(&base)?,
            None => RankTwoBundle::trivial(base.clone()),
        };
        Ok(Source::Bundle {
            base,
            bundle,
            blowups: self.blowups,
            side: self.side,
        })
    }
}

impl Source {
    pub fn system(&self) -> Result<InvariantSystem> {
        match self {
            Self::System(s) => Ok(s.clone()),
            Self::Bundle {
                base,
                bundle,
                blowups,
                side,
            } => {
                let mut s = match side {
                    None => InvariantSystem::projectivize(base, bundle)?,
                    Some(side) => {
                        let t = conifold_transition_ordered(base, bundle, false)?;
                        match side {
                            Side::Z1 => t.z1,
                            Side::Z2 => t.z2,
                        }
                    }
                };
                for _ in 0..*blowups {
                    s = s.blowup_point();
                }
                Ok(s)
            }
        }
    }
}
