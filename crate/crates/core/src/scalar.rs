//! Exact scalars: rationals, polynomials in the two parameters `k1`, `k2`,
//! reduced rational functions, and the mode that selects between them.
//!
//! Coefficients are arbitrary-precision throughout; products like
//! `(k+1)!` and `prod_i (i + k1 - k2)` overflow machine words quickly.
//!
//! Canonical forms make equality decidable by plain structural comparison:
//! polynomials store no zero terms, and a rational function is always
//! gcd-reduced with an integer-primitive denominator whose leading
//! coefficient (graded-lex, `k1 < k2`) is positive.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational number.
pub type Rational = num_rational::Ratio<Int>;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Monomial exponents `(a, b)` for `k1^a * k2^b`.
type Mono = (u32, u32);

/// Graded-lex key with `k1 < k2`: compare total degree, then the `k2` power.
fn grlex(m: Mono) -> (u32, u32) {
    (m.0 + m.1, m.1)
}

// ---------------------------------------------------------------------------
// Polynomials in k1, k2 over the rationals
// ---------------------------------------------------------------------------

/// A polynomial in `k1`, `k2` with rational coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default, PartialOrd, Ord)]
pub struct Poly2 {
    terms: BTreeMap<Mono, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Poly2 { terms }
    }

    /// The variable `k1`.
    pub fn k1() -> Self {
        Self::monomial((1, 0), Rational::one())
    }

    /// The variable `k2`.
    pub fn k2() -> Self {
        Self::monomial((0, 1), Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    /// `Some(c)` when the polynomial is the constant `c` (or zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    fn insert_add(terms: &mut BTreeMap<Mono, Rational>, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, c) in &other.terms {
            Self::insert_add(&mut terms, m, c.clone());
        }
        Poly2 { terms }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&m, c) in &other.terms {
            Self::insert_add(&mut self.terms, m, c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        Poly2 { terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, c) in &other.terms {
            Self::insert_add(&mut terms, m, -c.clone());
        }
        Poly2 { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                Self::insert_add(&mut terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Poly2 { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at `(k1, k2)`.
    pub fn eval(&self, k1: &Rational, k2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t *= k1;
            }
            for _ in 0..b {
                t *= k2;
            }
            acc += t;
        }
        acc
    }

    /// Leading monomial and coefficient under graded-lex (`k1 < k2`).
    pub fn leading(&self) -> Option<(Mono, &Rational)> {
        self.terms.iter().max_by_key(|(&m, _)| grlex(m)).map(|(&m, c)| (m, c))
    }

    /// Splits into `content * primitive` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    /// The zero polynomial yields `(0, 0)`.
    pub fn content_primitive(&self) -> (Rational, Poly2) {
        if self.is_zero() {
            return (Rational::zero(), Poly2::zero());
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        let prim = self.scale(&content.recip());
        // Positive leading coefficient.
        let (_, lc) = prim.leading().expect("nonzero");
        if lc.is_negative() {
            content = -content;
            return (content, prim.neg());
        }
        (content, prim)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quo = Poly2::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero");
            if rm.0 < dm.0 || rm.1 < dm.1 {
                return None;
            }
            let m = (rm.0 - dm.0, rm.1 - dm.1);
            let c = rc / dc;
            let t = Poly2::monomial(m, c);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Polynomial gcd, normalized to be integer-primitive with positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.content_primitive().1;
        }
        if b.is_zero() {
            return a.content_primitive().1;
        }
        let pa = BPoly::from_poly(&a.content_primitive().1);
        let pb = BPoly::from_poly(&b.content_primitive().1);
        let g = BPoly::gcd(&pa, &pb);
        g.to_poly().content_primitive().1
    }

    /// Least common multiple, normalized like [`Poly2::gcd`].
    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Poly2::zero();
        }
        let g = Self::gcd(a, b);
        let q = a.div_exact(&g).expect("gcd divides");
        q.mul(b).content_primitive().1
    }

    /// Canonical text form: terms in descending graded-lex order, like
    /// `2*k1^2*k2 - k1 + 3/2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<Mono> = self.terms.keys().copied().collect();
        monos.sort_by_key(|&m| core::cmp::Reverse(grlex(m)));
        let mut out = String::new();
        for (i, m) in monos.iter().enumerate() {
            let c = &self.terms[m];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&Self::term_text(*m, &mag));
        }
        out
    }

    fn term_text(m: Mono, mag: &Rational) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || m == (0, 0) {
            parts.push(mag.to_string());
        }
        if m.0 > 0 {
            parts.push(if m.0 == 1 { "k1".to_string() } else { alloc::format!("k1^{}", m.0) });
        }
        if m.1 > 0 {
            parts.push(if m.1 == 1 { "k2".to_string() } else { alloc::format!("k2^{}", m.1) });
        }
        parts.join("*")
    }

    /// Parses the canonical text form (whitespace is ignored).
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly2::zero();
        let mut term = String::new();
        let mut chars = compact.chars().peekable();
        let mut sign = 1i32;
        // Leading sign.
        if let Some(&c) = chars.peek() {
            if c == '-' {
                sign = -1;
                chars.next();
            } else if c == '+' {
                chars.next();
            }
        }
        loop {
            match chars.next() {
                Some(c) if c == '+' || c == '-' => {
                    acc = acc.add(&Self::parse_term(&term, sign)?);
                    term.clear();
                    sign = if c == '-' { -1 } else { 1 };
                }
                Some(c) => term.push(c),
                None => {
                    acc = acc.add(&Self::parse_term(&term, sign)?);
                    break;
                }
            }
        }
        Ok(acc)
    }

    fn parse_term(term: &str, sign: i32) -> Result<Self> {
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut coeff = if sign < 0 { -Rational::one() } else { Rational::one() };
        let mut mono: Mono = (0, 0);
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse("empty factor".into()));
            }
            if let Some(rest) = factor.strip_prefix("k1") {
                mono.0 += parse_exponent(rest)?;
            } else if let Some(rest) = factor.strip_prefix("k2") {
                mono.1 += parse_exponent(rest)?;
            } else {
                let r: Rational = factor
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad coefficient {factor:?}")))?;
                coeff *= r;
            }
        }
        Ok(Poly2::monomial(mono, coeff))
    }
}

fn parse_exponent(rest: &str) -> Result<u32> {
    if rest.is_empty() {
        return Ok(1);
    }
    let digits = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(alloc::format!("bad exponent {rest:?}")))?;
    digits.parse().map_err(|_| Error::Parse(alloc::format!("bad exponent {rest:?}")))
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Integer polynomial arithmetic backing the gcd
// ---------------------------------------------------------------------------

/// Univariate integer polynomial in `k1`, little-endian coefficients.
type UPoly = Vec<Int>;

fn u_trim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn u_is_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn u_content(p: &UPoly) -> Int {
    let mut g = Int::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn u_scale(p: &UPoly, c: &Int) -> UPoly {
    p.iter().map(|x| x * c).collect()
}

fn u_div_exact_int(p: &UPoly, c: &Int) -> UPoly {
    p.iter()
        .map(|x| {
            let (q, r) = x.div_rem(c);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) || u_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Int::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    u_trim(&mut out);
    out
}

/// Pseudo-remainder variant: repeatedly scales by the leading coefficient of
/// `b` before each cancellation step. The result differs from the exact
/// remainder by a unit times a power of `lc(b)`, which the primitive PRS
/// normalizes away.
fn u_pseudo_rem(a: &UPoly, b: &UPoly) -> UPoly {
    debug_assert!(!u_is_zero(b));
    let db = b.len() - 1;
    let lc = b.last().expect("nonzero").clone();
    let mut r = a.clone();
    while !u_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        // lead coefficient before scaling; after scaling the top term is
        // lc * c and the subtraction cancels it exactly
        let c = r[dr].clone();
        r = u_scale(&r, &lc);
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        u_trim(&mut r);
    }
    r
}

fn u_primitive(p: &UPoly) -> UPoly {
    if u_is_zero(p) {
        return Vec::new();
    }
    let mut c = u_content(p);
    if p.last().expect("nonzero").is_negative() {
        c = -c;
    }
    u_div_exact_int(p, &c)
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) {
        return u_primitive(b);
    }
    if u_is_zero(b) {
        return u_primitive(a);
    }
    let ca = u_content(a);
    let cb = u_content(b);
    let cg = ca.gcd(&cb);
    let mut r0 = u_primitive(a);
    let mut r1 = u_primitive(b);
    if r0.len() < r1.len() {
        core::mem::swap(&mut r0, &mut r1);
    }
    while !u_is_zero(&r1) {
        let r2 = u_primitive(&u_pseudo_rem(&r0, &r1));
        r0 = r1;
        r1 = r2;
    }
    u_scale(&r0, &cg)
}

/// Bivariate integer polynomial: coefficient polynomials in `k1` for each
/// power of `k2`, little-endian in `k2`.
struct BPoly(Vec<UPoly>);

impl BPoly {
    fn trim(&mut self) {
        while self.0.last().map(u_is_zero).unwrap_or(false) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Requires an integer-primitive input (as produced by
    /// `content_primitive`), so coefficient denominators are all 1.
    fn from_poly(p: &Poly2) -> Self {
        let mut rows: Vec<UPoly> = Vec::new();
        for (&(a, b), c) in &p.terms {
            debug_assert!(c.denom().is_one());
            if rows.len() <= b as usize {
                rows.resize(b as usize + 1, Vec::new());
            }
            let row = &mut rows[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, Int::zero());
            }
            row[a as usize] += c.numer();
        }
        let mut out = BPoly(rows);
        for row in &mut out.0 {
            u_trim(row);
        }
        out.trim();
        out
    }

    fn to_poly(&self) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (b, row) in self.0.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((a as u32, b as u32), Rational::from_integer(c.clone()));
                }
            }
        }
        Poly2 { terms }
    }

    /// Content as a polynomial in `k1`.
    fn content(&self) -> UPoly {
        let mut g: UPoly = Vec::new();
        for row in &self.0 {
            g = u_gcd(&g, row);
        }
        g
    }

    fn div_coeff_exact(&self, d: &UPoly) -> BPoly {
        // Exact univariate division of every k2-coefficient by d.
        let mut rows = Vec::with_capacity(self.0.len());
        for row in &self.0 {
            rows.push(u_div_row_exact(row, d));
        }
        let mut out = BPoly(rows);
        out.trim();
        out
    }

    fn mul_coeff(&self, c: &UPoly) -> BPoly {
        let mut out = BPoly(self.0.iter().map(|row| u_mul(row, c)).collect());
        out.trim();
        out
    }

    fn pseudo_rem(a: &BPoly, b: &BPoly) -> BPoly {
        debug_assert!(!b.is_zero());
        let db = b.0.len() - 1;
        let lc = b.0.last().expect("nonzero").clone();
        let mut r = BPoly(a.0.clone());
        while !r.is_zero() && r.0.len() - 1 >= db {
            let dr = r.0.len() - 1;
            let c = r.0[dr].clone();
            r = r.mul_coeff(&lc);
            let shift = dr - db;
            for (j, y) in b.0.iter().enumerate() {
                let prod = u_mul(&c, y);
                r.0[shift + j] = u_sub(&r.0[shift + j], &prod);
            }
            r.trim();
        }
        r
    }

    fn primitive(&self) -> BPoly {
        if self.is_zero() {
            return BPoly(Vec::new());
        }
        let c = self.content();
        self.div_coeff_exact(&c)
    }

    fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let cg = u_gcd(&a.content(), &b.content());
        let mut r0 = a.primitive();
        let mut r1 = b.primitive();
        if r0.0.len() < r1.0.len() {
            core::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_zero() {
            let r2 = BPoly::pseudo_rem(&r0, &r1).primitive();
            r0 = r1;
            r1 = r2;
        }
        r0.mul_coeff(&cg)
    }
}

/// Exact division of univariate integer polynomials (panics in debug builds
/// when not exact; used only where exactness is guaranteed).
fn u_div_row_exact(p: &UPoly, d: &UPoly) -> UPoly {
    if u_is_zero(p) {
        return Vec::new();
    }
    debug_assert!(!u_is_zero(d));
    let dd = d.len() - 1;
    let lc = d.last().expect("nonzero");
    let mut rem = p.clone();
    let mut quo = vec![Int::zero(); p.len().saturating_sub(dd)];
    while !u_is_zero(&rem) && rem.len() - 1 >= dd {
        let dr = rem.len() - 1;
        let (q, r) = rem[dr].div_rem(lc);
        debug_assert!(r.is_zero());
        let shift = dr - dd;
        quo[shift] += &q;
        for (j, y) in d.iter().enumerate() {
            rem[shift + j] -= &q * y;
        }
        u_trim(&mut rem);
    }
    debug_assert!(u_is_zero(&rem));
    let mut out = quo;
    u_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// A reduced rational function `num / den` in `k1`, `k2`.
///
/// Invariants: `gcd(num, den) = 1`; `den` has coprime integer coefficients
/// and positive leading coefficient (graded-lex, `k1 < k2`); zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    /// Builds and canonicalizes `num / den`.
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: Poly2::zero(), den: Poly2::one() });
        }
        let g = Poly2::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (dc, dp) = den.content_primitive();
        num = num.scale(&dc.recip());
        Ok(RatFunc { num, den: dp })
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc { num: p, den: Poly2::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-reduce; both operands are already reduced, so the result of
        // multiplying the cross-reduced parts needs no further gcd.
        let g1 = Poly2::gcd(&self.num, &other.den);
        let g2 = Poly2::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let (dc, dp) = den.content_primitive();
        RatFunc { num: num.scale(&dc.recip()), den: dp }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (nc, np) = self.num.content_primitive();
        Ok(RatFunc { num: self.den.scale(&nc.recip()), den: np })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact evaluation; errors when the denominator vanishes at the point.
    pub fn eval(&self, k1: &Rational, k2: &Rational) -> Result<Rational> {
        let d = self.den.eval(k1, k2);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Ok(self.num.eval(k1, k2) / d)
    }

    /// Text form `num / den`; multi-term parts are parenthesized and a
    /// denominator of 1 is omitted.
    pub fn to_text(&self) -> String {
        let wrap = |p: &Poly2| {
            let t = p.to_text();
            if p.terms.len() > 1 {
                alloc::format!("({t})")
            } else {
                t
            }
        };
        if self.den.is_one() {
            self.num.to_text()
        } else {
            alloc::format!("{} / {}", wrap(&self.num), wrap(&self.den))
        }
    }

    /// Parses `num / den` (or a bare polynomial); parentheses optional.
    pub fn parse(s: &str) -> Result<Self> {
        let strip = |t: &str| -> String {
            let t = t.trim();
            let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
            t.to_string()
        };
        match s.split_once(" / ") {
            Some((l, r)) => Self::new(Poly2::parse(&strip(l))?, Poly2::parse(&strip(r))?),
            None => Ok(Self::from_poly(Poly2::parse(&strip(s))?)),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Scalars and modes
// ---------------------------------------------------------------------------

/// Parameter mode: generic (rational functions in `k1`, `k2`) or specialized
/// at an exact rational point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScalarMode {
    Generic,
    Specialized(Rational, Rational),
}

impl ScalarMode {
    pub fn specialized_int(k1: i64, k2: i64) -> Self {
        ScalarMode::Specialized(rat_int(k1), rat_int(k2))
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, ScalarMode::Generic)
    }

    /// The parameter `k1` (b = 1) or `k2` (b = 2) as a scalar.
    pub fn kappa(&self, b: usize) -> Scalar {
        debug_assert!(b == 1 || b == 2);
        match self {
            ScalarMode::Generic => Scalar::Fun(RatFunc::from_poly(if b == 1 {
                Poly2::k1()
            } else {
                Poly2::k2()
            })),
            ScalarMode::Specialized(k1, k2) => {
                Scalar::Rat(if b == 1 { k1.clone() } else { k2.clone() })
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> Scalar {
        match self {
            ScalarMode::Generic => Scalar::Fun(RatFunc::from_poly(Poly2::constant(r))),
            ScalarMode::Specialized(..) => Scalar::Rat(r),
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(rat_int(n))
    }

    /// Semisimplicity condition at rank `n`: `k1 - k2` is not an integer of
    /// absolute value `< n`. Generic parameters always satisfy it.
    pub fn semisimple(&self, n: usize) -> bool {
        match self {
            ScalarMode::Generic => true,
            ScalarMode::Specialized(k1, k2) => {
                let d = k1 - k2;
                if !d.denom().is_one() {
                    return true;
                }
                let v = d.numer().magnitude();
                *v >= num_bigint::BigUint::from(n as u64)
            }
        }
    }

    /// Parses a scalar in this mode's text form.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match self {
            ScalarMode::Generic => Ok(Scalar::Fun(RatFunc::parse(s)?)),
            ScalarMode::Specialized(..) => {
                let r: Rational = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))?;
                Ok(Scalar::Rat(r))
            }
        }
    }

    /// Mode text form used by the CLI: `generic` or `k1=p/q,k2=p/q`.
    pub fn to_text(&self) -> String {
        match self {
            ScalarMode::Generic => "generic".to_string(),
            ScalarMode::Specialized(k1, k2) => alloc::format!("k1={k1},k2={k2}"),
        }
    }

    pub fn parse_mode(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "generic" {
            return Ok(ScalarMode::Generic);
        }
        let body = t;
        let mut k1 = None;
        let mut k2 = None;
        for part in body.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(alloc::format!("bad mode component {part:?}")))?;
            let r: Rational = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad rational {val:?}")))?;
            match key.trim() {
                "k1" => k1 = Some(r),
                "k2" => k2 = Some(r),
                other => return Err(Error::Parse(alloc::format!("unknown parameter {other:?}"))),
            }
        }
        match (k1, k2) {
            (Some(a), Some(b)) => Ok(ScalarMode::Specialized(a, b)),
            _ => Err(Error::Parse("mode needs both k1 and k2".into())),
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An exact scalar: a rational (specialized mode) or a reduced rational
/// function (generic mode). Arithmetic never mixes the two; element-level
/// operations check modes before descending to scalars.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Rat(Rational),
    Fun(RatFunc),
}

macro_rules! scalar_binop {
    ($name:ident) => {
        pub fn $name(&self, other: &Self) -> Self {
            match (self, other) {
                (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rational_op!($name, a, b)),
                (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.$name(b)),
                _ => panic!("scalar mode mismatch"),
            }
        }
    };
}

macro_rules! rational_op {
    (add, $a:ident, $b:ident) => {
        $a + $b
    };
    (sub, $a:ident, $b:ident) => {
        $a - $b
    };
    (mul, $a:ident, $b:ident) => {
        $a * $b
    };
}

impl Scalar {
    scalar_binop!(add);
    scalar_binop!(sub);
    scalar_binop!(mul);

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a.clone()),
            Scalar::Fun(a) => Scalar::Fun(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fun(a) => Ok(Scalar::Fun(a.inv()?)),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Fun(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_one(),
            Scalar::Fun(a) => a.is_one(),
        }
    }

    /// Exact evaluation at `(k1, k2)`; the identity on rationals.
    pub fn specialize(&self, k1: &Rational, k2: &Rational) -> Result<Rational> {
        match self {
            Scalar::Rat(a) => Ok(a.clone()),
            Scalar::Fun(f) => f.eval(k1, k2),
        }
    }

    /// `Some` when the scalar is a constant (always for rationals).
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(a) => Some(a.clone()),
            Scalar::Fun(f) => {
                if f.den().is_one() {
                    f.num().as_constant()
                } else {
                    None
                }
            }
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rat(a) => a.to_string(),
            Scalar::Fun(f) => f.to_text(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        Poly2::parse(s).unwrap()
    }

    #[test]
    fn poly_text_round_trip() {
        for s in ["0", "1", "-1", "k1", "2*k1^2*k2 - k1 + 3/2", "-k2^3 + k1*k2"] {
            let q = p(s);
            assert_eq!(q.to_text(), s);
            assert_eq!(Poly2::parse(&q.to_text()).unwrap(), q);
        }
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p("k1 - k2").mul(&p("k1 + 1"));
        let b = p("k1 - k2").mul(&p("k2 + 3"));
        let g = Poly2::gcd(&a, &b);
        // Canonical: integer-primitive, positive leading coefficient (k2 leads).
        assert_eq!(g, p("k2 - k1"));
        assert_eq!(g.to_text(), "k2 - k1");
    }

    #[test]
    fn gcd_with_non_unit_leading_coefficients() {
        // exercises the pseudo-remainder scaling when lc is not +-1
        let f = p("2*k1 + 3");
        let g = Poly2::gcd(&f.mul(&p("k2 + 5")), &f.mul(&p("k2 - 1")));
        assert_eq!(g, f);
        let h = p("2*k2 + k1");
        let g2 = Poly2::gcd(&h.mul(&p("3*k1 + 2")), &h.mul(&p("k1 + 7")));
        assert_eq!(g2, h);
        let u = p("3*k1 + 1");
        let g3 = Poly2::gcd(&u.mul(&p("2*k1 + 5")), &u.mul(&p("5*k1 - 2")));
        assert_eq!(g3, u);
    }

    #[test]
    fn ratfunc_cancellation() {
        let f = RatFunc::new(p("k1^2 - k2^2"), p("k1 - k2")).unwrap();
        assert_eq!(f, RatFunc::from_poly(p("k1 + k2")));
    }

    #[test]
    fn ratfunc_eval_and_pole() {
        let f = RatFunc::new(Poly2::one(), p("k1 - k2")).unwrap();
        assert_eq!(f.eval(&rat_int(0), &rat_int(3)).unwrap(), rat(-1, 3));
        let g = RatFunc::new(Poly2::one(), p("1 + k1 - k2")).unwrap();
        assert_eq!(g.eval(&rat_int(0), &rat_int(1)), Err(Error::PoleAtSpecialization));
    }

    #[test]
    fn denominator_normalization() {
        // 1 / (2*k2 - 2*k1) has primitive denominator k2 - k1 (positive lead).
        let f = RatFunc::new(Poly2::one(), p("2*k2 - 2*k1")).unwrap();
        assert_eq!(f.den().to_text(), "k2 - k1");
        assert_eq!(f.num().to_text(), "1/2");
    }

    #[test]
    fn mode_text() {
        assert_eq!(ScalarMode::parse_mode("generic").unwrap(), ScalarMode::Generic);
        let m = ScalarMode::parse_mode("k1=0,k2=7/2").unwrap();
        assert_eq!(m, ScalarMode::Specialized(rat_int(0), rat(7, 2)));
        assert_eq!(m.to_text(), "k1=0,k2=7/2");
    }
}
