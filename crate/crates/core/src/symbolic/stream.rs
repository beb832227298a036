use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FiniteWord, Symbol};
use crate::{error::domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Sequences `s_0 s_1 s_2 ...`.
    OneSided,
    /// Sequences `... s_-1 . s_0 s_1 ...`.
    BiInfinite,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::OneSided => "one-sided",
            Kind::BiInfinite => "bi-infinite",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A deterministic, total map from index to symbol.
///
/// One-sided rules are only ever queried at non-negative indices.
pub trait Rule: Send + Sync {
    fn symbol(&self, index: &BigInt) -> Symbol;

    /// Fast path for indices that fit a machine word.
    fn symbol_small(&self, index: i64) -> Symbol {
        self.symbol(&BigInt::from(index))
    }

    /// Identifies rules that denote the same point even across separately
    /// constructed streams.
    fn tag(&self) -> Option<&'static str> {
        None
    }
}

struct FnRule<F>(F);

impl<F> Rule for FnRule<F>
where
    F: Fn(&BigInt) -> Symbol + Send + Sync,
{
    fn symbol(&self, index: &BigInt) -> Symbol {
        (self.0)(index)
    }
}

/// An infinite binary sequence defined by a rule. Cloning shares the rule.
#[derive(Clone)]
pub struct SymbolStream {
    kind: Kind,
    rule: Arc<dyn Rule>,
    description: Arc<str>,
}

impl SymbolStream {
    pub fn new(kind: Kind, description: impl Into<Arc<str>>, rule: Arc<dyn Rule>) -> Self {
        Self {
            kind,
            rule,
            description: description.into(),
        }
    }

    pub fn from_fn<F>(kind: Kind, description: impl Into<Arc<str>>, f: F) -> Self
    where
        F: Fn(&BigInt) -> Symbol + Send + Sync + 'static,
    {
        Self::new(kind, description, Arc::new(FnRule(f)))
    }

    /// The constant stream.
    pub fn constant(kind: Kind, symbol: Symbol) -> Self {
        Self::from_fn(kind, format!("constant {}", symbol.as_char()), move |_| {
            symbol
        })
    }

    /// `word` repeated forever in both directions (index 0 is `word[0]`).
    pub fn periodic(kind: Kind, word: &FiniteWord) -> Result<Self> {
        if word.is_empty() {
            return Err(domain("periodic stream needs a non-empty word"));
        }
        let w = word.clone();
        let q = BigInt::from(w.len());
        Ok(Self::from_fn(
            kind,
            format!("periodic ({w})"),
            move |i: &BigInt| {
                let r = ((i % &q) + &q) % &q;
                w.get(r.to_usize().unwrap_or(0)).unwrap_or(Symbol::Zero)
            },
        ))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// True when both streams are known to denote the same point.
    pub fn same_point(&self, other: &SymbolStream) -> bool {
        if self.kind != other.kind {
            return false;
        }
        if Arc::ptr_eq(&self.rule, &other.rule) {
            return true;
        }
        matches!((self.rule.tag(), other.rule.tag()), (Some(a), Some(b)) if a == b)
    }

    pub fn tag(&self) -> Option<&'static str> {
        self.rule.tag()
    }

    fn check_index(&self, index: &BigInt) -> Result<()> {
        if self.kind == Kind::OneSided && index.is_negative() {
            return Err(domain(format!(
                "negative index {index} on a one-sided stream"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolStream")
            .field("kind", &self.kind)
            .field("description", &self.description)
            .finish()
    }
}

/// `σ^offset` applied to a base stream, formed without copying.
#[derive(Clone, Debug)]
pub struct ShiftedStream {
    base: SymbolStream,
    offset: BigInt,
    small_offset: Option<i64>,
}

impl ShiftedStream {
    fn new(base: SymbolStream, offset: BigInt) -> Result<Self> {
        if base.kind == Kind::OneSided && offset.is_negative() {
            return Err(domain(format!(
                "shift by {offset} leaves the one-sided space"
            )));
        }
        let small_offset = offset.to_i64();
        Ok(Self {
            base,
            offset,
            small_offset,
        })
    }

    pub fn base(&self) -> &SymbolStream {
        &self.base
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }
}

/// Anything that can be read as an infinite symbol sequence.
pub trait Sequence {
    fn kind(&self) -> Kind;

    /// The view `σ^0` of this sequence.
    fn view(&self) -> ShiftedStream;

    fn symbol_at(&self, index: &BigInt) -> Result<Symbol>;

    fn symbol_at_small(&self, index: i64) -> Result<Symbol> {
        self.symbol_at(&BigInt::from(index))
    }

    /// `σ^t`; offsets compose additively.
    fn shift(&self, t: &BigInt) -> Result<ShiftedStream> {
        let v = self.view();
        ShiftedStream::new(v.base, v.offset + t)
    }

    fn shift_by(&self, t: i64) -> Result<ShiftedStream> {
        self.shift(&BigInt::from(t))
    }

    /// Symbols at `start, start+1, ..., start+count-1`.
    fn window(&self, start: i64, count: usize) -> Result<FiniteWord> {
        (0..count as i64)
            .map(|k| self.symbol_at_small(start + k))
            .collect()
    }
}

impl Sequence for SymbolStream {
    fn kind(&self) -> Kind {
        self.kind
    }

    fn view(&self) -> ShiftedStream {
        ShiftedStream {
            base: self.clone(),
            offset: BigInt::zero(),
            small_offset: Some(0),
        }
    }

    fn symbol_at(&self, index: &BigInt) -> Result<Symbol> {
        self.check_index(index)?;
        Ok(match index.to_i64() {
            Some(i) => self.rule.symbol_small(i),
            None => self.rule.symbol(index),
        })
    }

    fn symbol_at_small(&self, index: i64) -> Result<Symbol> {
        if self.kind == Kind::OneSided && index < 0 {
            return Err(domain(format!(
                "negative index {index} on a one-sided stream"
            )));
        }
        Ok(self.rule.symbol_small(index))
    }
}

impl Sequence for ShiftedStream {
    fn kind(&self) -> Kind {
        self.base.kind
    }

    fn view(&self) -> ShiftedStream {
        self.clone()
    }

    fn symbol_at(&self, index: &BigInt) -> Result<Symbol> {
        if self.kind() == Kind::OneSided && index.is_negative() {
            return Err(domain(format!(
                "negative index {index} on a one-sided stream"
            )));
        }
        self.base.symbol_at(&(index + &self.offset))
    }

    fn symbol_at_small(&self, index: i64) -> Result<Symbol> {
        if self.kind() == Kind::OneSided && index < 0 {
            return Err(domain(format!(
                "negative index {index} on a one-sided stream"
            )));
        }
        match self.small_offset.and_then(|o| o.checked_add(index)) {
            Some(i) => self.base.symbol_at_small(i),
            None => self.base.symbol_at(&(BigInt::from(index) + &self.offset)),
        }
    }
}

pub(crate) fn require_same_kind(a: Kind, b: Kind) -> Result<()> {
    if a != b {
        return Err(Error::KindMismatch(a.name(), b.name()));
    }
    Ok(())
}
