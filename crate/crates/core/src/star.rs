//! The two explicit points `s*` built from the ordering of finite words.
//!
//! Words are ordered by length first and then lexicographically with
//! `0 < 1`, which within a fixed length is plain binary counting: the word of
//! rank `j` and length `m` is `j - 1` written in `m` bits.
//!
//! The one-sided `s*` lists every word of length 1, then every word of
//! length 2, and so on. The bi-infinite `s*` places the odd-rank words to the
//! right of the origin and the even-rank words to the left, moving outward:
//!
//! ```text
//! ... s8³ s6³ s4³ s2³ s4² s2² . s1¹ s1² s3² s1³ s3³ s5³ s7³ ...
//! ```
//!
//! Each left-side block keeps its own left-to-right reading. Following the
//! displayed layout, no length-1 block appears on the left.
//!
//! Every symbol is recomputed from closed-form segment offsets, so indices
//! of any magnitude cost `O(log |i|)` big-integer operations.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::domain;
use crate::symbolic::{FiniteWord, Kind, Rule, Symbol, SymbolStream};
use crate::Result;

pub const ONE_SIDED_TAG: &str = "star/one-sided";
pub const BI_INFINITE_TAG: &str = "star/bi-infinite";

/// Position `(m, j)` of a word in the length-then-lexicographic ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedWordIndex {
    length: u64,
    rank: BigUint,
}

impl OrderedWordIndex {
    pub fn new(length: u64, rank: impl Into<BigUint>) -> Result<Self> {
        let rank = rank.into();
        if length == 0 {
            return Err(domain("word length must be positive"));
        }
        if rank.is_zero() || rank > (BigUint::one() << length) {
            return Err(domain(format!("rank {rank} outside [1, 2^{length}]")));
        }
        Ok(Self { length, rank })
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn rank(&self) -> &BigUint {
        &self.rank
    }
}

/// The word with the given position: `j - 1` in `m` binary digits.
pub fn word_of(index: &OrderedWordIndex) -> FiniteWord {
    let value = &index.rank - 1u32;
    (0..index.length)
        .rev()
        .map(|k| {
            if value.bit(k) {
                Symbol::One
            } else {
                Symbol::Zero
            }
        })
        .collect()
}

pub fn rank_of(word: &FiniteWord) -> Result<OrderedWordIndex> {
    if word.is_empty() {
        return Err(domain("the empty word has no rank"));
    }
    Ok(OrderedWordIndex {
        length: word.len() as u64,
        rank: word.value() + 1u32,
    })
}

/// Segment starts for lengths `1..=12`, summed block by block.
const ONE_SIDED_TABLE: [i64; 13] = one_sided_table();

const fn one_sided_table() -> [i64; 13] {
    let mut table = [0i64; 13];
    let mut m = 1;
    while m < 13 {
        table[m] = table[m - 1] + (m as i64 - 1) * (1i64 << (m - 1));
        m += 1;
    }
    // table[m] is the start for length m; slot 0 unused
    table
}

/// Index of the first symbol of the length-`m` segment of one-sided `s*`:
/// `sum_{j<m} j 2^j = (m - 2) 2^m + 2`.
pub fn one_sided_segment_start(m: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(domain("segment length must be at least 1"));
    }
    if m <= 12 {
        return Ok(BigInt::from(ONE_SIDED_TABLE[m as usize]));
    }
    Ok((BigInt::from(m) - 2) * (BigInt::one() << m) + 2)
}

/// First index of the length-`m` odd-rank segment right of the origin:
/// `sum_{k<m} k 2^(k-1) = (m - 2) 2^(m-1) + 1`.
pub fn bi_segment_start_right(m: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(domain("segment length must be at least 1"));
    }
    Ok((BigInt::from(m) - 2) * (BigInt::one() << (m - 1)) + 1)
}

/// Leftmost (negative) index of the length-`m` even-rank segment. The
/// segments of lengths `2..=m` together hold `(m - 1) 2^m` symbols.
pub fn bi_segment_start_left(m: u64) -> Result<BigInt> {
    if m < 2 {
        return Err(domain("left segments start at length 2"));
    }
    Ok(-left_mass(m))
}

/// Symbols occupied by left segments of lengths `2..=m`.
fn left_mass(m: u64) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    (BigInt::from(m) - 1) * (BigInt::one() << m)
}

fn bit_of(value: &BigInt, k: u64) -> Symbol {
    if value.bit(k) {
        Symbol::One
    } else {
        Symbol::Zero
    }
}

/// Symbol `i` of one-sided `s*`.
pub fn symbol_at_one_sided(i: &BigInt) -> Result<Symbol> {
    if i.is_negative() {
        return Err(domain(format!("negative index {i} on one-sided s*")));
    }
    if let Some(small) = i.to_i64() {
        return Ok(one_sided_small(small));
    }
    one_sided_big(i)
}

fn one_sided_big(i: &BigInt) -> Result<Symbol> {
    let mut m = 1u64;
    while one_sided_segment_start(m + 1)? <= *i {
        m += 1;
    }
    let offset = i - one_sided_segment_start(m)?;
    let (block, pos) = offset.div_rem(&BigInt::from(m));
    let pos = pos.to_u64().unwrap_or(0);
    Ok(bit_of(&block, m - 1 - pos))
}

fn one_sided_small(i: i64) -> Symbol {
    debug_assert!(i >= 0);
    let i = i as i128;
    let start = |m: u32| -> i128 {
        if m <= 12 {
            ONE_SIDED_TABLE[m as usize] as i128
        } else {
            (m as i128 - 2) * (1i128 << m) + 2
        }
    };
    let mut m = 1u32;
    while start(m + 1) <= i {
        m += 1;
    }
    let offset = i - start(m);
    let block = offset / m as i128;
    let pos = (offset % m as i128) as u32;
    if (block >> (m - 1 - pos)) & 1 == 1 {
        Symbol::One
    } else {
        Symbol::Zero
    }
}

/// Symbol `i` of bi-infinite `s*`.
pub fn symbol_at_bi_infinite(i: &BigInt) -> Symbol {
    if let Some(small) = i.to_i64() {
        return bi_small(small);
    }
    bi_big(i)
}

fn bi_big(i: &BigInt) -> Symbol {
    if !i.is_negative() {
        let mut m = 1u64;
        while bi_segment_start_right(m + 1).expect("m >= 1") <= *i {
            m += 1;
        }
        let offset = i - bi_segment_start_right(m).expect("m >= 1");
        let (u, pos) = offset.div_rem(&BigInt::from(m));
        // odd rank 2u + 1 spells the value 2u
        let value: BigInt = u << 1;
        bit_of(&value, m - 1 - pos.to_u64().unwrap_or(0))
    } else {
        let d = -i - 1u32;
        let mut m = 2u64;
        while left_mass(m) <= d {
            m += 1;
        }
        let e = d - left_mass(m - 1);
        let (b, r) = e.div_rem(&BigInt::from(m));
        // even rank 2(b + 1) spells the value 2b + 1; r counts from the
        // block's right end
        let value: BigInt = (b << 1) + 1u32;
        bit_of(&value, r.to_u64().unwrap_or(0))
    }
}

fn bi_small(i: i64) -> Symbol {
    let bit = |value: i128, k: u32| {
        if (value >> k) & 1 == 1 {
            Symbol::One
        } else {
            Symbol::Zero
        }
    };
    let i = i as i128;
    if i >= 0 {
        let start = |m: u32| (m as i128 - 2) * (1i128 << (m - 1)) + 1;
        let mut m = 1u32;
        while start(m + 1) <= i {
            m += 1;
        }
        let offset = i - start(m);
        let u = offset / m as i128;
        let pos = (offset % m as i128) as u32;
        bit(2 * u, m - 1 - pos)
    } else {
        let mass = |m: u32| {
            if m == 0 {
                0
            } else {
                (m as i128 - 1) * (1i128 << m)
            }
        };
        let d = -i - 1;
        let mut m = 2u32;
        while mass(m) <= d {
            m += 1;
        }
        let e = d - mass(m - 1);
        let b = e / m as i128;
        let r = (e % m as i128) as u32;
        bit(2 * b + 1, r)
    }
}

struct OneSidedStar;

impl Rule for OneSidedStar {
    fn symbol(&self, index: &BigInt) -> Symbol {
        symbol_at_one_sided(index).expect("one-sided streams never query negative indices")
    }

    fn symbol_small(&self, index: i64) -> Symbol {
        one_sided_small(index)
    }

    fn tag(&self) -> Option<&'static str> {
        Some(ONE_SIDED_TAG)
    }
}

struct BiInfiniteStar;

impl Rule for BiInfiniteStar {
    fn symbol(&self, index: &BigInt) -> Symbol {
        symbol_at_bi_infinite(index)
    }

    fn symbol_small(&self, index: i64) -> Symbol {
        bi_small(index)
    }

    fn tag(&self) -> Option<&'static str> {
        Some(BI_INFINITE_TAG)
    }
}

/// One-sided `s*` as a stream.
pub fn one_sided() -> SymbolStream {
    SymbolStream::new(
        Kind::OneSided,
        "s* (one-sided): all words of length 1, 2, 3, ... in order",
        Arc::new(OneSidedStar),
    )
}

/// Bi-infinite `s*` as a stream.
pub fn bi_infinite() -> SymbolStream {
    SymbolStream::new(
        Kind::BiInfinite,
        "s* (bi-infinite): odd ranks to the right, even ranks to the left",
        Arc::new(BiInfiniteStar),
    )
}

pub fn star(kind: Kind) -> SymbolStream {
    match kind {
        Kind::OneSided => one_sided(),
        Kind::BiInfinite => bi_infinite(),
    }
}

/// True when `stream` is one of the two `s*` rules of the given kind.
pub fn is_star(stream: &SymbolStream) -> bool {
    matches!(stream.tag(), Some(ONE_SIDED_TAG | BI_INFINITE_TAG))
}

/// Index where `word` sits as a whole block inside its own length segment
/// of one-sided `s*`.
pub fn one_sided_block_position(word: &FiniteWord) -> Result<BigInt> {
    if word.is_empty() {
        return Err(domain("the empty word has no block position"));
    }
    let m = word.len() as u64;
    Ok(one_sided_segment_start(m)? + BigInt::from(m) * BigInt::from(word.value()))
}

/// Leftmost index of `word` as a whole block of bi-infinite `s*`: odd ranks
/// (even binary value) lie right of the origin, even ranks left of it.
/// Length-1 words of even rank have no block, so `"1"` yields `None`.
pub fn bi_block_position(word: &FiniteWord) -> Result<Option<BigInt>> {
    if word.is_empty() {
        return Err(domain("the empty word has no block position"));
    }
    let m = word.len() as u64;
    let value = BigInt::from(word.value());
    if value.is_even() {
        let u = value >> 1;
        return Ok(Some(bi_segment_start_right(m)? + BigInt::from(m) * u));
    }
    if m == 1 {
        return Ok(None);
    }
    let b: BigInt = (value - 1u32) >> 1;
    // block b counted outward from the segment's right end at -mass(m-1) - 1
    Ok(Some(-left_mass(m - 1) - (b + 1u32) * BigInt::from(m)))
}
