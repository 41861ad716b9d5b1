//! Signed permutations (the hyperoctahedral group) and their block normal
//! form, which indexes the word basis of the algebra.
//!
//! A signed permutation on `n` strands maps `i` to `w(i)` with the absolute
//! values a permutation of `1..=n`. The one-line text form lists
//! `w(1) .. w(n)`, e.g. `-2 -1`.
//!
//! Every element factors uniquely as a product of at most one block per
//! level: the level-`r` block `(r, m)` is
//!
//! * `s_r s_{r-1} .. s_m`            for `1 <= m <= r`,
//! * `s_r .. s_1 x`                  for `m = 0`,
//! * `s_r .. s_1 x s_1 .. s_{-m}`    for `-r <= m <= -1`,
//!
//! where `x` negates the first strand. Blocks are stored in ascending level
//! order; a level with no block is simply absent. Letters append on the
//! right: pushing `g` onto a word `w` yields the composite `w . g`
//! (apply `g` first, then `w`).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A single generator letter: `S(p)` swaps strands `p`, `p+1` (1-based);
/// `X` negates strand 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    S(u8),
    X,
}

/// The letter sequence of the level-`r` block `(r, m)`.
pub fn block_letters(r: u8, m: i8) -> Vec<Letter> {
    let mut out = Vec::new();
    if m >= 1 {
        for i in ((m as u8)..=r).rev() {
            out.push(Letter::S(i));
        }
    } else {
        for i in (1..=r).rev() {
            out.push(Letter::S(i));
        }
        out.push(Letter::X);
        for i in 1..=(-(m as i32)) as u8 {
            out.push(Letter::S(i));
        }
    }
    out
}

/// Letter count of the block `(r, m)`.
pub fn block_length(r: u8, m: i8) -> u32 {
    if m >= 1 {
        (r as u32) - (m as u32) + 1
    } else {
        (r as u32) + 1 + (-(m as i32)) as u32
    }
}

// ---------------------------------------------------------------------------
// Signed permutations
// ---------------------------------------------------------------------------

/// A signed permutation in one-line form: entry `i-1` holds `w(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedWord {
    w: Vec<i32>,
}

impl SignedWord {
    pub fn identity(n: usize) -> Self {
        SignedWord { w: (1..=n as i32).collect() }
    }

    /// Validates that the absolute values are a permutation of `1..=n`.
    pub fn from_values(w: Vec<i32>) -> Result<Self> {
        let n = w.len();
        let mut seen = alloc::vec![false; n];
        for &v in &w {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a - 1] {
                return Err(Error::Parse(alloc::format!("not a signed permutation: {w:?}")));
            }
            seen[a - 1] = true;
        }
        Ok(SignedWord { w })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn values(&self) -> &[i32] {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        self.w.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// `w(i)` extended to negative arguments by `w(-i) = -w(i)`.
    pub fn image(&self, i: i32) -> i32 {
        if i < 0 {
            -self.w[(-i) as usize - 1]
        } else {
            self.w[i as usize - 1]
        }
    }

    /// Right action `w . g`: apply the letter first, then `w`.
    pub fn apply_right(&mut self, g: Letter) {
        match g {
            Letter::S(p) => self.w.swap(p as usize - 1, p as usize),
            Letter::X => self.w[0] = -self.w[0],
        }
    }

    pub fn with_right(&self, g: Letter) -> Self {
        let mut out = self.clone();
        out.apply_right(g);
        out
    }

    /// Left action `g . w`: `S(p)` exchanges the values `p` and `p+1`
    /// (with signs); `X` flips the sign of the value `1` wherever it sits.
    pub fn apply_left(&mut self, g: Letter) {
        match g {
            Letter::S(p) => {
                let p = p as i32;
                for v in &mut self.w {
                    if v.abs() == p {
                        *v = v.signum() * (p + 1);
                    } else if v.abs() == p + 1 {
                        *v = v.signum() * p;
                    }
                }
            }
            Letter::X => {
                for v in &mut self.w {
                    if v.abs() == 1 {
                        *v = -*v;
                    }
                }
            }
        }
    }

    pub fn with_left(&self, g: Letter) -> Self {
        let mut out = self.clone();
        out.apply_left(g);
        out
    }

    /// Composition `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        SignedWord { w: (1..=self.n() as i32).map(|i| self.image(other.image(i))).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut w = alloc::vec![0i32; self.n()];
        for (i, &v) in self.w.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            w[a - 1] = if v < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
        }
        SignedWord { w }
    }

    /// Number of negative entries.
    pub fn bar_count(&self) -> u32 {
        self.w.iter().filter(|&&v| v < 0).count() as u32
    }

    /// The barred absolute values, in order of appearance, must be strictly
    /// decreasing.
    pub fn is_avoiding(&self) -> bool {
        let mut last: Option<i32> = None;
        for &v in &self.w {
            if v < 0 {
                if let Some(prev) = last {
                    if -v >= prev {
                        return false;
                    }
                }
                last = Some(-v);
            }
        }
        true
    }

    /// Block normal form.
    pub fn to_blocks(&self) -> BlockWord {
        let mut w = self.w.clone();
        let mut blocks: Vec<(u8, i8)> = Vec::new();
        for r in (1..=w.len()).rev() {
            let p = w
                .iter()
                .position(|v| v.unsigned_abs() as usize == r)
                .expect("value present in a permutation")
                + 1;
            let val = w[p - 1];
            let block = if val > 0 {
                if p == r {
                    None
                } else {
                    Some(((r - 1) as u8, p as i8))
                }
            } else {
                Some(((r - 1) as u8, 1 - p as i8))
            };
            if let Some((lvl, m)) = block {
                for g in block_letters(lvl, m).into_iter().rev() {
                    match g {
                        Letter::S(q) => w.swap(q as usize - 1, q as usize),
                        Letter::X => w[0] = -w[0],
                    }
                }
                blocks.push((lvl, m));
            }
            debug_assert_eq!(w[r - 1], r as i32);
            w.truncate(r - 1);
        }
        blocks.reverse();
        BlockWord { blocks }
    }

    /// Minimal letter count (the type-B Coxeter length with the sign flip
    /// counted as one letter).
    pub fn length(&self) -> u32 {
        self.to_blocks().length()
    }

    /// One-line text form, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.w.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let vals: Result<Vec<i32>> = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(alloc::format!("bad entry {t:?}"))))
            .collect();
        Self::from_values(vals?)
    }

    /// Lexicographic key with entry order `1 < -1 < 2 < -2 < ..`.
    pub fn lex_key(&self) -> Vec<(u32, bool)> {
        self.w.iter().map(|&v| (v.unsigned_abs(), v < 0)).collect()
    }

    /// Grading used wherever words are ordered for display or elimination:
    /// bar count, then length, then the lexicographic key.
    pub fn graded_key(&self) -> (u32, u32, Vec<(u32, bool)>) {
        (self.bar_count(), self.length(), self.lex_key())
    }
}

// ---------------------------------------------------------------------------
// Block normal form
// ---------------------------------------------------------------------------

/// Block factorization of a signed permutation: at most one block per level,
/// ascending. Valid on any strand count exceeding the top level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BlockWord {
    blocks: Vec<(u8, i8)>,
}

impl BlockWord {
    pub fn identity() -> Self {
        BlockWord { blocks: Vec::new() }
    }

    /// Validates ascending levels and `-r <= m <= r` per block `(r, m)`.
    pub fn new(blocks: Vec<(u8, i8)>) -> Result<Self> {
        let mut prev: Option<u8> = None;
        for &(r, m) in &blocks {
            let ok_level = prev.map(|q| q < r).unwrap_or(true);
            let ok_m = (m as i32).abs() <= r as i32;
            if !ok_level || !ok_m {
                return Err(Error::Parse(alloc::format!("invalid block word: {blocks:?}")));
            }
            prev = Some(r);
        }
        Ok(BlockWord { blocks })
    }

    pub fn blocks(&self) -> &[(u8, i8)] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Top level occupied by a block, if any.
    pub fn top_level(&self) -> Option<u8> {
        self.blocks.last().map(|&(r, _)| r)
    }

    pub fn last(&self) -> Option<(u8, i8)> {
        self.blocks.last().copied()
    }

    pub(crate) fn pop(&mut self) -> Option<(u8, i8)> {
        self.blocks.pop()
    }

    pub(crate) fn push(&mut self, r: u8, m: i8) {
        debug_assert!(self.top_level().map(|q| q < r).unwrap_or(true));
        debug_assert!((m as i32).abs() <= r as i32);
        self.blocks.push((r, m));
    }

    pub fn length(&self) -> u32 {
        self.blocks.iter().map(|&(r, m)| block_length(r, m)).sum()
    }

    /// Number of blocks containing the sign-flip letter (`m <= 0`); equals
    /// the bar count of the underlying signed permutation.
    pub fn bar_count(&self) -> u32 {
        self.blocks.iter().filter(|&&(_, m)| m <= 0).count() as u32
    }

    /// Letter sequence, blocks in ascending level order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for &(r, m) in &self.blocks {
            out.extend(block_letters(r, m));
        }
        out
    }

    /// The signed permutation on `n` strands (requires `n > top level`).
    pub fn to_signed(&self, n: usize) -> SignedWord {
        debug_assert!(self.top_level().map(|r| (r as usize) < n).unwrap_or(true));
        let mut w = SignedWord::identity(n);
        for g in self.letters() {
            w.apply_right(g);
        }
        w
    }

    /// Minimal strand count on which this word lives.
    pub fn min_strands(&self) -> usize {
        self.top_level().map(|r| r as usize + 1).unwrap_or(0)
    }

    pub fn graded_key(&self, n: usize) -> (u32, u32, Vec<(u32, bool)>) {
        (self.bar_count(), self.length(), self.to_signed(n).lex_key())
    }
}

// ---------------------------------------------------------------------------
// Filters and enumeration
// ---------------------------------------------------------------------------

/// Word subsets used to designate spanning sets in the quotients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WordFilter {
    /// Every signed permutation.
    All,
    /// Barred absolute values strictly decreasing in order of appearance.
    Avoiding,
    /// Avoiding with at most `k` bars.
    AvoidingCap(usize),
}

impl WordFilter {
    pub fn admits(&self, w: &SignedWord) -> bool {
        match *self {
            WordFilter::All => true,
            WordFilter::Avoiding => w.is_avoiding(),
            WordFilter::AvoidingCap(k) => w.is_avoiding() && w.bar_count() as usize <= k,
        }
    }
}

/// All signed permutations on `n` strands admitted by the filter, in
/// lexicographic order (`1 < -1 < 2 < -2 < ..` per entry).
pub fn enumerate_words(n: usize, filter: WordFilter) -> Vec<SignedWord> {
    let mut out = Vec::new();
    let mut current: Vec<i32> = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n];
    enumerate_rec(n, &mut current, &mut used, filter, &mut out);
    out
}

fn enumerate_rec(
    n: usize,
    current: &mut Vec<i32>,
    used: &mut [bool],
    filter: WordFilter,
    out: &mut Vec<SignedWord>,
) {
    if current.len() == n {
        let w = SignedWord { w: current.clone() };
        if filter.admits(&w) {
            out.push(w);
        }
        return;
    }
    // Entry order 1 < -1 < 2 < -2 < .. keeps the output lexicographic.
    for a in 1..=n {
        if used[a - 1] {
            continue;
        }
        for v in [a as i32, -(a as i32)] {
            used[a - 1] = true;
            current.push(v);
            enumerate_rec(n, current, used, filter, out);
            current.pop();
            used[a - 1] = false;
        }
    }
}
