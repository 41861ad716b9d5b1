//! The fused permutation algebra: one top and one bottom row of points,
//! the first point of each row fused into an ellipse carrying k strands,
//! multiplied by stacking diagrams and averaging over the k! reconnections
//! at the merged ellipse.
//!
//! The same algebra is realized inside the group algebra of the symmetric
//! group on k+n points as the corner P_k C S_{k+n} P_k; `glue` collapses a
//! permutation diagram to a fused diagram, and `sandwich_product_check`
//! verifies that both products agree. `phi` evaluates an element of the
//! rank-n Hecke algebra at the parameter point (0, k+1) by substituting
//! crossing diagrams for the generators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::idempotent::{corner_idempotent, CornerLabel};
use crate::linalg::RatRref;
use crate::scalar::{rat_int, Rational, ScalarMode};
use crate::tableaux::binomial;
use crate::words::{enumerate_words, BlockWord, Letter, WordFilter};

/// A fused permutation on n+1 top and bottom units: the first unit is an
/// ellipse emitting k strands, the others are plain points. `s1` is the
/// multiset of bottom units reached from the top ellipse; `targets[a-2]`
/// is the bottom unit reached from top point a, for a = 2..n+1.
///
/// The label 1 occurs exactly k times across s1 and targets, every other
/// label exactly once.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FusedPerm {
    k: usize,
    /// sorted; k values in 1..=n+1
    s1: Vec<u8>,
    targets: Vec<u8>,
}

impl FusedPerm {
    pub fn new(k: usize, mut s1: Vec<u8>, targets: Vec<u8>) -> Result<Self> {
        if k == 0 || s1.len() != k {
            return Err(Error::SizeMismatch);
        }
        let n = targets.len();
        if n + 1 > u8::MAX as usize {
            return Err(Error::SizeMismatch);
        }
        let mut counts = vec![0usize; n + 2];
        for &v in s1.iter().chain(targets.iter()) {
            if v == 0 || v as usize > n + 1 {
                return Err(Error::IndexOutOfRange);
            }
            counts[v as usize] += 1;
        }
        if counts[1] != k || counts[2..].iter().any(|&c| c != 1) {
            return Err(Error::HypothesisViolated);
        }
        s1.sort_unstable();
        Ok(FusedPerm { k, s1, targets })
    }

    /// k parallel strands on the ellipse, every point joined to itself.
    pub fn identity(k: usize, n: usize) -> Result<Self> {
        let s1 = vec![1u8; k];
        let targets = (2..=(n + 1)).map(|a| a as u8).collect();
        FusedPerm::new(k, s1, targets)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    pub fn s1(&self) -> &[u8] {
        &self.s1
    }

    pub fn targets(&self) -> &[u8] {
        &self.targets
    }

    pub fn is_identity(&self) -> bool {
        self.s1.iter().all(|&v| v == 1)
            && self.targets.iter().enumerate().all(|(i, &v)| v as usize == i + 2)
    }

    /// `{1,1,3} ; 2 -> 1, 3 -> 2` style rendering.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::from("{");
        for (i, v) in self.s1.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push('}');
        for (i, v) in self.targets.iter().enumerate() {
            out.push_str(if i == 0 { " ; " } else { ", " });
            let _ = write!(out, "{} -> {}", i + 2, v);
        }
        out
    }

    /// Multi-line rendering for terminal display: both unit rows with the
    /// ellipse drawn as `(==)`, one line per connection.
    pub fn ascii_diagram(&self) -> String {
        use core::fmt::Write;
        let mut row = String::from("(==)");
        for a in 2..=(self.n() + 1) {
            let _ = write!(row, " {a}");
        }
        let mut out = row.clone();
        out.push('\n');
        let _ = write!(out, "  1 -> {{");
        for (i, v) in self.s1.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push_str("}\n");
        for (i, v) in self.targets.iter().enumerate() {
            let _ = write!(out, "  {} -> {}\n", i + 2, v);
        }
        out.push_str(&row);
        out
    }
}

fn factorial(n: usize) -> u128 {
    (2..=n as u128).product::<u128>().max(1)
}

/// Number of fused diagrams: sum over i of C(n,i)^2 (n-i)!, where i counts
/// the strands the ellipse exchanges with the plain points.
pub fn fused_dim(k: usize, n: usize) -> u128 {
    (0..=k.min(n)).map(|i| binomial(n, i) * binomial(n, i) * factorial(n - i)).sum()
}

/// All fused permutations with k strands on n+1 units, sorted.
pub fn enumerate_fused(k: usize, n: usize) -> Result<Vec<FusedPerm>> {
    if k == 0 {
        return Err(Error::SizeMismatch);
    }
    let labels: Vec<u8> = (2..=(n as u8 + 1)).collect();
    let mut out = Vec::new();
    for i in 0..=k.min(n) {
        for down in subsets(&labels, i) {
            // ellipse reaches `down` plus 1 with multiplicity k - i
            let mut s1 = vec![1u8; k - i];
            s1.extend(down.iter().copied());
            for up in subsets(&labels, i) {
                // points in `up` feed the bottom ellipse; the rest carry a
                // bijection onto the remaining labels
                let rest: Vec<u8> =
                    labels.iter().copied().filter(|v| !down.contains(v)).collect();
                let free: Vec<u8> =
                    labels.iter().copied().filter(|v| !up.contains(v)).collect();
                for assignment in permutations_of(&rest) {
                    let mut targets = vec![0u8; n];
                    for &a in &up {
                        targets[a as usize - 2] = 1;
                    }
                    for (slot, value) in free.iter().zip(assignment.iter()) {
                        targets[*slot as usize - 2] = *value;
                    }
                    out.push(FusedPerm::new(k, s1.clone(), targets)?);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn subsets(items: &[u8], size: usize) -> Vec<Vec<u8>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for sub in subsets(&items[1..], size - 1) {
        let mut with = vec![items[0]];
        with.extend(sub);
        out.push(with);
    }
    out.extend(subsets(&items[1..], size));
    out
}

fn permutations_of(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest: Vec<u8> = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Stacks d above e and resolves the middle row. Identical outcomes of the
/// k! ellipse reconnections are collapsed by orbit counting: an outcome is
/// determined by which values the named points take, with the residual
/// multiset going to the ellipse, and the number of matchings realizing it
/// is A! * prod_v m_v!/(m_v - t_v)! (A ellipse strands arriving, t_v named
/// strands taking value v of multiplicity m_v).
fn multiply_perms(d: &FusedPerm, e: &FusedPerm) -> Vec<(FusedPerm, Rational)> {
    let k = d.k;
    let n = d.n();
    // named top points of d whose strand dives into the middle ellipse
    let named: Vec<usize> =
        (2..=(n + 1)).filter(|&a| d.targets[a - 2] == 1).collect();
    let arriving = k - named.len();
    // value -> multiplicity in the middle ellipse's outgoing strands
    let mut supply: Vec<(u8, usize)> = Vec::new();
    for &v in &e.s1 {
        match supply.iter_mut().find(|(w, _)| *w == v) {
            Some((_, m)) => *m += 1,
            None => supply.push((v, 1)),
        }
    }
    let full_supply = supply.clone();

    let mut out: Vec<(FusedPerm, Rational)> = Vec::new();
    let mut chosen: Vec<u8> = Vec::with_capacity(named.len());
    assign(
        d,
        e,
        &named,
        arriving,
        &mut supply,
        &full_supply,
        &mut chosen,
        0,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn assign(
    d: &FusedPerm,
    e: &FusedPerm,
    named: &[usize],
    arriving: usize,
    supply: &mut Vec<(u8, usize)>,
    full_supply: &[(u8, usize)],
    chosen: &mut Vec<u8>,
    pos: usize,
    out: &mut Vec<(FusedPerm, Rational)>,
) {
    if pos == named.len() {
        // residual supply feeds the ellipse strands
        let mut s1: Vec<u8> = Vec::with_capacity(d.k);
        for &v in &d.s1 {
            if v >= 2 {
                s1.push(e.targets[v as usize - 2]);
            }
        }
        for (v, m) in supply.iter() {
            for _ in 0..*m {
                s1.push(*v);
            }
        }
        let mut targets = vec![0u8; d.n()];
        for (a, t) in d.targets.iter().enumerate() {
            targets[a] = if *t == 1 { 0 } else { e.targets[*t as usize - 2] };
        }
        for (slot, v) in named.iter().zip(chosen.iter()) {
            targets[*slot - 2] = *v;
        }
        // matchings realizing this outcome
        let mut count: u128 = factorial(arriving);
        for ((_, m), (_, rem)) in full_supply.iter().zip(supply.iter()) {
            count *= factorial(*m) / factorial(*rem);
        }
        let weight = Rational::new(
            crate::scalar::Int::from(count as i128),
            crate::scalar::Int::from(factorial(d.k) as i128),
        );
        let perm = FusedPerm::new(d.k, s1, targets).expect("product diagram is valid");
        match out.iter_mut().find(|(p, _)| *p == perm) {
            Some((_, c)) => *c += weight,
            None => out.push((perm, weight)),
        }
        return;
    }
    for i in 0..supply.len() {
        if supply[i].1 == 0 {
            continue;
        }
        supply[i].1 -= 1;
        chosen.push(supply[i].0);
        assign(d, e, named, arriving, supply, full_supply, chosen, pos + 1, out);
        chosen.pop();
        supply[i].1 += 1;
    }
}

/// A rational linear combination of fused permutations with common (k, n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramElement {
    k: usize,
    n: usize,
    terms: BTreeMap<FusedPerm, Rational>,
}

impl DiagramElement {
    pub fn zero(k: usize, n: usize) -> Self {
        DiagramElement { k, n, terms: BTreeMap::new() }
    }

    pub fn one(k: usize, n: usize) -> Result<Self> {
        Ok(Self::from_fused(FusedPerm::identity(k, n)?))
    }

    pub fn from_fused(p: FusedPerm) -> Self {
        let (k, n) = (p.k(), p.n());
        let mut terms = BTreeMap::new();
        terms.insert(p, Rational::one());
        DiagramElement { k, n, terms }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FusedPerm, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &FusedPerm) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, p: &FusedPerm, c: Rational) -> Result<()> {
        if p.k() != self.k || p.n() != self.n {
            return Err(Error::ShapeMismatch);
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(p) {
            Some(prev) => {
                *prev += c;
                if prev.is_zero() {
                    self.terms.remove(p);
                }
            }
            None => {
                self.terms.insert(p.clone(), c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.k, self.n);
        }
        let terms = self.terms.iter().map(|(p, w)| (p.clone(), w * c)).collect();
        DiagramElement { k: self.k, n: self.n, terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Self::zero(self.k, self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let ab = a * b;
                for (r, w) in multiply_perms(p, q) {
                    out.add_term(&r, &ab * &w)?;
                }
            }
        }
        Ok(out)
    }

    /// One `diagram : coeff` line per term, in sorted diagram order.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (p, c) in &self.terms {
            if !out.is_empty() {
                out.push('\n');
            }
            let _ = write!(out, "{} : {}", p.to_text(), c);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Crossing of the ellipse with the first plain point.
pub fn sigma0(k: usize, n: usize) -> Result<DiagramElement> {
    if n < 1 || k == 0 {
        return Err(Error::IndexOutOfRange);
    }
    let mut s1 = vec![1u8; k - 1];
    s1.push(2);
    let mut targets: Vec<u8> = (2..=(n as u8 + 1)).collect();
    targets[0] = 1;
    Ok(DiagramElement::from_fused(FusedPerm::new(k, s1, targets)?))
}

/// Crossing of plain points i and i+1 (1-based among the plain points).
pub fn sigma(k: usize, n: usize, i: usize) -> Result<DiagramElement> {
    if i == 0 {
        return sigma0(k, n);
    }
    if i >= n {
        return Err(Error::IndexOutOfRange);
    }
    let s1 = vec![1u8; k];
    let mut targets: Vec<u8> = (2..=(n as u8 + 1)).collect();
    targets.swap(i - 1, i);
    Ok(DiagramElement::from_fused(FusedPerm::new(k, s1, targets)?))
}

/// The Jucys-Murphy image: t = 1 + k sigma0.
pub fn t_gen(k: usize, n: usize) -> Result<DiagramElement> {
    DiagramElement::one(k, n)?.add(&sigma0(k, n)?.scale(&rat_int(k as i64)))
}

/// The ellipse exchanges i strands with the first i plain points;
/// h(0) = 1 and h(1) = sigma0.
pub fn h_gen(k: usize, n: usize, i: usize) -> Result<DiagramElement> {
    if i > k.min(n) {
        return Err(Error::IndexOutOfRange);
    }
    let mut s1 = vec![1u8; k - i];
    s1.extend(2..=(i as u8 + 1));
    let mut targets: Vec<u8> = (2..=(n as u8 + 1)).collect();
    for slot in targets.iter_mut().take(i) {
        *slot = 1;
    }
    Ok(DiagramElement::from_fused(FusedPerm::new(k, s1, targets)?))
}

// ---------------------------------------------------------------------------
// The symmetric group sandwich model
// ---------------------------------------------------------------------------

/// An element of the group algebra of the symmetric group on m points,
/// permutations stored as image vectors (perm[i-1] = where point i+... goes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymElement {
    m: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

fn validate_perm(perm: &[u8]) -> Result<()> {
    let m = perm.len();
    let mut seen = vec![false; m];
    for &v in perm {
        if v == 0 || v as usize > m || seen[v as usize - 1] {
            return Err(Error::HypothesisViolated);
        }
        seen[v as usize - 1] = true;
    }
    Ok(())
}

impl SymElement {
    pub fn one(m: usize) -> Self {
        let id: Vec<u8> = (1..=(m as u8)).collect();
        let mut terms = BTreeMap::new();
        terms.insert(id, Rational::one());
        SymElement { m, terms }
    }

    pub fn from_perm(perm: Vec<u8>) -> Result<Self> {
        validate_perm(&perm)?;
        let m = perm.len();
        let mut terms = BTreeMap::new();
        terms.insert(perm, Rational::one());
        Ok(SymElement { m, terms })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SymElement { m: self.m, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(p, w)| (p.clone(), w * c)).collect();
        SymElement { m: self.m, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::SizeMismatch);
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            let entry = out.terms.entry(p.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(p);
            }
        }
        Ok(out)
    }

    /// Product in diagram order: self stacked above other, so the
    /// underlying permutations compose as self(other(i)).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::SizeMismatch);
        }
        let mut out = SymElement { m: self.m, terms: BTreeMap::new() };
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let composed: Vec<u8> = q.iter().map(|&i| p[i as usize - 1]).collect();
                let entry = out.terms.entry(composed).or_insert_with(Rational::zero);
                *entry += a * b;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// The averaged sum of all permutations of the first k points inside the
/// group algebra on m points.
pub fn symmetrizer(k: usize, m: usize) -> Result<SymElement> {
    if m < k || k == 0 {
        return Err(Error::SizeMismatch);
    }
    let mut out = SymElement { m, terms: BTreeMap::new() };
    let letters: Vec<u8> = (1..=(k as u8)).collect();
    let weight = Rational::new(
        crate::scalar::Int::from(1),
        crate::scalar::Int::from(factorial(k) as i128),
    );
    for p in permutations_of(&letters) {
        let mut perm = p;
        perm.extend((k as u8 + 1)..=(m as u8));
        out.terms.insert(perm, weight.clone());
    }
    Ok(out)
}

/// Collapses the first k points of each row of a permutation diagram into
/// an ellipse. Bottom point i connects to top point omega(i).
pub fn glue(omega: &[u8], k: usize) -> Result<FusedPerm> {
    validate_perm(omega)?;
    let m = omega.len();
    if k == 0 || k > m {
        return Err(Error::SizeMismatch);
    }
    let n = m - k;
    let mut inv = vec![0u8; m];
    for (i, &v) in omega.iter().enumerate() {
        inv[v as usize - 1] = (i + 1) as u8;
    }
    let label = |b: u8| -> u8 {
        if (b as usize) <= k {
            1
        } else {
            (b as usize - k + 1) as u8
        }
    };
    let s1: Vec<u8> = (0..k).map(|j| label(inv[j])).collect();
    let targets: Vec<u8> = (0..n).map(|a| label(inv[k + a])).collect();
    FusedPerm::new(k, s1, targets)
}

/// Pushes a group algebra element through `glue` term by term.
pub fn glue_element(e: &SymElement, k: usize) -> Result<DiagramElement> {
    if k > e.m() || k == 0 {
        return Err(Error::SizeMismatch);
    }
    let n = e.m() - k;
    let mut out = DiagramElement::zero(k, n);
    for (p, c) in e.terms() {
        out.add_term(&glue(p, k)?, c.clone())?;
    }
    Ok(out)
}

/// Some permutation whose glued diagram is d.
pub fn representative(d: &FusedPerm) -> Vec<u8> {
    let k = d.k();
    let n = d.n();
    let m = k + n;
    // beta[j-1] = bottom dot receiving the strand from top dot j
    let mut beta = vec![0u8; m];
    let mut free = 1u8..=(k as u8);
    for (j, &v) in d.s1.iter().enumerate() {
        beta[j] = if v >= 2 { (k + v as usize - 1) as u8 } else { free.next().expect("k ones") };
    }
    for (a, &v) in d.targets.iter().enumerate() {
        beta[k + a] =
            if v >= 2 { (k + v as usize - 1) as u8 } else { free.next().expect("k ones") };
    }
    let mut omega = vec![0u8; m];
    for (j, &b) in beta.iter().enumerate() {
        omega[b as usize - 1] = (j + 1) as u8;
    }
    omega
}

/// Exhaustive agreement check between diagram multiplication and the
/// sandwiched group algebra product pushed through `glue`.
pub struct SandwichReport {
    pub diagrams: usize,
    pub pairs: usize,
    pub mismatches: Vec<(FusedPerm, FusedPerm)>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn sandwich_product_check(k: usize, n: usize) -> Result<SandwichReport> {
    if k + n > 7 {
        // 8!^2 term pairs per product is past the point of usefulness
        return Err(Error::SizeMismatch);
    }
    let p = symmetrizer(k, k + n)?;
    let fused = enumerate_fused(k, n)?;
    let mut report =
        SandwichReport { diagrams: fused.len(), pairs: 0, mismatches: Vec::new() };
    // P w_a P w_b P, with the outer symmetrizers shared across the loop
    let sandwiched: Vec<(FusedPerm, SymElement)> = fused
        .iter()
        .map(|a| {
            let w = SymElement::from_perm(representative(a))?;
            Ok((a.clone(), p.mul(&w)?.mul(&p)?))
        })
        .collect::<Result<_>>()?;
    for (a, pa) in &sandwiched {
        for (b, pb) in &sandwiched {
            report.pairs += 1;
            let through_groups = glue_element(&pa.mul(pb)?, k)?;
            let direct = DiagramElement::from_fused(a.clone())
                .mul(&DiagramElement::from_fused(b.clone()))?;
            if through_groups != direct {
                report.mismatches.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Evaluation from the Hecke side
// ---------------------------------------------------------------------------

fn letter_diagram(k: usize, n: usize, g: Letter) -> Result<DiagramElement> {
    match g {
        Letter::S(i) => sigma(k, n, i as usize),
        Letter::X => t_gen(k, n),
    }
}

/// Evaluates a Hecke element at the parameter point (0, k+1) inside the
/// fused algebra: s_i goes to the plain crossing, x_1 to 1 + k sigma0.
pub fn phi(e: &HeckeElement, k: usize) -> Result<DiagramElement> {
    if e.mode() != &ScalarMode::specialized_int(0, k as i64 + 1) {
        return Err(Error::ModeMismatch);
    }
    let n = e.n();
    let mut cache: BTreeMap<Vec<u8>, DiagramElement> = BTreeMap::new();
    cache.insert(Vec::new(), DiagramElement::one(k, n)?);
    let mut out = DiagramElement::zero(k, n);
    for (w, c) in e.terms() {
        let letters = w.letters();
        let key: Vec<u8> = letters
            .iter()
            .map(|g| match g {
                Letter::S(i) => *i,
                Letter::X => 0,
            })
            .collect();
        // grow the longest cached prefix letter by letter
        let mut have = key.len();
        while !cache.contains_key(&key[..have]) {
            have -= 1;
        }
        for pos in have..key.len() {
            let prev = cache[&key[..pos]].clone();
            let next = prev.mul(&letter_diagram(k, n, letters[pos])?)?;
            cache.insert(key[..=pos].to_vec(), next);
        }
        let image = cache[&key[..]].clone();
        out = out.add(&image.scale(&c.as_rational().expect("specialized mode")))?;
    }
    Ok(out)
}

/// Relation checks for the generating diagrams, reported as a list of
/// human-readable failures (empty = all pass).
pub fn verify_phi_relations(k: usize, n: usize) -> Result<Vec<String>> {
    if n < 2 {
        return Err(Error::SizeMismatch);
    }
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, lhs: &DiagramElement, rhs: &DiagramElement| {
        if lhs != rhs {
            failures.push(String::from(name));
        }
    };
    let one = DiagramElement::one(k, n)?;
    let s0 = sigma0(k, n)?;
    let t = t_gen(k, n)?;
    let s1 = sigma(k, n, 1)?;

    check(
        "t^2 = (k+1) t",
        &t.mul(&t)?,
        &t.scale(&Rational::from(crate::scalar::Int::from(k as i128 + 1))),
    );
    let ts1 = t.mul(&s1)?;
    let s1t = s1.mul(&t)?;
    check(
        "(t s1)^2 = t(s1 t - s1 + 1)",
        &ts1.mul(&ts1)?,
        &t.mul(&s1t.sub(&s1)?.add(&one)?)?,
    );
    check(
        "(s1 t)^2 = (t s1 - s1 + 1) t",
        &s1t.mul(&s1t)?,
        &ts1.sub(&s1)?.add(&one)?.mul(&t)?,
    );
    check(
        "(s0 - 1)(s0 + 1/k) = 0",
        &s0.sub(&one)?.mul(&s0.add(&one.scale(&Rational::new(
            crate::scalar::Int::from(1),
            crate::scalar::Int::from(k as i128),
        )))?)?,
        &DiagramElement::zero(k, n),
    );
    if k == 1 {
        check("s0 s1 s0 = s1 s0 s1", &s0.mul(&s1)?.mul(&s0)?, &s1.mul(&s0)?.mul(&s1)?);
    }
    for i in 1..n {
        let si = sigma(k, n, i)?;
        check("si^2 = 1", &si.mul(&si)?, &one);
        if i + 1 < n {
            let sj = sigma(k, n, i + 1)?;
            check(
                "si s(i+1) si = s(i+1) si s(i+1)",
                &si.mul(&sj)?.mul(&si)?,
                &sj.mul(&si)?.mul(&sj)?,
            );
        }
        for j in (i + 2)..n {
            let sj = sigma(k, n, j)?;
            check("si sj = sj si (|i-j| > 1)", &si.mul(&sj)?, &sj.mul(&si)?);
        }
        if i >= 2 {
            check("s0 si = si s0 (i >= 2)", &s0.mul(&si)?, &si.mul(&s0)?);
        }
    }
    Ok(failures)
}

/// Kernel and image size report for the evaluation at (0, k+1).
pub struct KernelReport {
    /// image of the normalized rank-2 barred corner (set when n >= 2)
    pub barred_corner_killed: Option<bool>,
    /// image of the unnormalized rank-(k+1) one-row corner (set when n > k)
    pub row_corner_killed: Option<bool>,
    /// rank over the rationals of the images of the designated words
    pub image_rank: usize,
    pub designated: usize,
    pub fused_dim: u128,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.barred_corner_killed != Some(false)
            && self.row_corner_killed != Some(false)
            && self.image_rank == self.designated
            && self.image_rank as u128 == self.fused_dim
    }
}

pub fn kernel_check(k: usize, n: usize) -> Result<KernelReport> {
    let mode = ScalarMode::specialized_int(0, k as i64 + 1);
    let barred_corner_killed = if n >= 2 {
        let f = corner_idempotent(&CornerLabel::new(-1, 2, 2)?, &mode, true)?.embed(n)?;
        Some(phi(&f, k)?.is_zero())
    } else {
        None
    };
    let row_corner_killed = if n > k {
        let f = corner_idempotent(&CornerLabel::new(1, 1, k + 1)?, &mode, false)?.embed(n)?;
        Some(phi(&f, k)?.is_zero())
    } else {
        None
    };

    let basis = enumerate_fused(k, n)?;
    let index: BTreeMap<FusedPerm, usize> =
        basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut designated: Vec<BlockWord> = enumerate_words(n, WordFilter::AvoidingCap(k))
        .iter()
        .map(|w| w.to_blocks())
        .collect();
    designated.sort_by_cached_key(|w| w.graded_key(n));
    let mut rref = RatRref::new(basis.len());
    let mut image_rank = 0;
    for w in &designated {
        let e = HeckeElement::from_word(n, mode.clone(), w)?;
        let img = phi(&e, k)?;
        let mut row = vec![Rational::zero(); basis.len()];
        for (p, c) in img.terms() {
            row[index[p]] = c.clone();
        }
        if rref.insert(row).is_some() {
            image_rank += 1;
        }
    }
    Ok(KernelReport {
        barred_corner_killed,
        row_corner_killed,
        image_rank,
        designated: designated.len(),
        fused_dim: fused_dim(k, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::delta_word;
    use crate::scalar::rat;

    fn d(k: usize, s1: &[u8], targets: &[u8]) -> FusedPerm {
        FusedPerm::new(k, s1.to_vec(), targets.to_vec()).unwrap()
    }

    #[test]
    fn validation_rejects_bad_diagrams() {
        assert!(FusedPerm::new(2, vec![1, 1], vec![1]).is_err()); // 2 missing
        assert!(FusedPerm::new(2, vec![1, 2], vec![2]).is_err()); // 2 twice
        assert!(FusedPerm::new(0, vec![], vec![]).is_err());
        assert!(FusedPerm::new(1, vec![3], vec![1]).is_err()); // out of range
        assert!(FusedPerm::new(2, vec![1, 3], vec![1, 2]).is_ok());
    }

    #[test]
    fn dimension_counts() {
        for k in 1..=4usize {
            for n in 0..=4usize {
                let all = enumerate_fused(k, n).unwrap();
                assert_eq!(all.len() as u128, fused_dim(k, n), "k={k} n={n}");
            }
        }
        assert_eq!(fused_dim(2, 2), 7);
        assert_eq!(fused_dim(1, 3), 24); // permutations of 4 points
        assert_eq!(fused_dim(2, 4), 192);
        assert_eq!(enumerate_fused(3, 0).unwrap().len(), 1);
    }

    #[test]
    fn worked_product_rank_one() {
        // smallest idempotent-like diagram: d^2 = 1/2 (unit) + 1/2 d
        let one = FusedPerm::identity(2, 1).unwrap();
        let x = d(2, &[1, 2], &[1]);
        let e = DiagramElement::from_fused(x.clone());
        let sq = e.mul(&e).unwrap();
        assert_eq!(sq.coeff(&one), rat(1, 2));
        assert_eq!(sq.coeff(&x), rat(1, 2));
        assert_eq!(sq.num_terms(), 2);

        let unit = DiagramElement::one(2, 1).unwrap();
        assert_eq!(unit.mul(&e).unwrap(), e);
        assert_eq!(e.mul(&unit).unwrap(), e);
    }

    #[test]
    fn sigma0_square() {
        for k in 1..=4usize {
            let one = DiagramElement::one(k, 2).unwrap();
            let s0 = sigma0(k, 2).unwrap();
            let sq = s0.mul(&s0).unwrap();
            let want = one
                .scale(&rat(1, k as i64))
                .add(&s0.scale(&rat(k as i64 - 1, k as i64)))
                .unwrap();
            assert_eq!(sq, want, "k={k}");
            // t^2 = (k+1) t
            let t = t_gen(k, 2).unwrap();
            assert_eq!(t.mul(&t).unwrap(), t.scale(&rat_int(k as i64 + 1)));
        }
    }

    #[test]
    fn h_generators() {
        assert_eq!(h_gen(3, 2, 0).unwrap(), DiagramElement::one(3, 2).unwrap());
        assert_eq!(h_gen(3, 2, 1).unwrap(), sigma0(3, 2).unwrap());
        assert!(h_gen(2, 3, 3).is_err());
        // h2 = k/(k-1) s0 s1 s0 - 1/(k-1) s1 s0 s1 for k >= 2
        for k in 2..=3usize {
            let s0 = sigma0(k, 2).unwrap();
            let s1 = sigma(k, 2, 1).unwrap();
            let lhs = h_gen(k, 2, 2).unwrap();
            let rhs = s0
                .mul(&s1)
                .unwrap()
                .mul(&s0)
                .unwrap()
                .scale(&rat(k as i64, k as i64 - 1))
                .sub(&s1.mul(&s0).unwrap().mul(&s1).unwrap().scale(&rat(1, k as i64 - 1)))
                .unwrap();
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn associativity_spot_checks() {
        let all = enumerate_fused(2, 2).unwrap();
        // deterministic triple sample over the 7-diagram basis
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let c = &all[(3 * i + 5 * j) % all.len()];
                let ea = DiagramElement::from_fused(a.clone());
                let eb = DiagramElement::from_fused(b.clone());
                let ec = DiagramElement::from_fused(c.clone());
                assert_eq!(
                    ea.mul(&eb).unwrap().mul(&ec).unwrap(),
                    ea.mul(&eb.mul(&ec).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn glue_worked_example() {
        // bottom i -> top omega(i) for omega = (1)(2 3 4 5), k = 3
        let omega = vec![1u8, 3, 4, 5, 2];
        let glued = glue(&omega, 3).unwrap();
        assert_eq!(glued, d(3, &[1, 1, 3], &[1, 2]));
        assert_eq!(glued.to_text(), "{1,1,3} ; 2 -> 1, 3 -> 2");
        let id: Vec<u8> = (1..=5).collect();
        assert!(glue(&id, 3).unwrap().is_identity());
    }

    #[test]
    fn glue_constant_on_double_cosets() {
        for k in 2..=3usize {
            let m = k + 2;
            let base: Vec<u8> = {
                // an arbitrary permutation mixing both sides
                let mut p: Vec<u8> = (1..=(m as u8)).collect();
                p.swap(0, m - 1);
                p.swap(1, 2);
                p
            };
            let mut images = alloc::collections::BTreeSet::new();
            let small: Vec<u8> = (1..=(k as u8)).collect();
            for tau1 in permutations_of(&small) {
                for tau2 in permutations_of(&small) {
                    let mut t1: Vec<u8> = tau1.clone();
                    t1.extend((k as u8 + 1)..=(m as u8));
                    let mut t2: Vec<u8> = tau2.clone();
                    t2.extend((k as u8 + 1)..=(m as u8));
                    // t1 . base . t2 as functions
                    let prod: Vec<u8> = (0..m)
                        .map(|i| t1[base[t2[i] as usize - 1] as usize - 1])
                        .collect();
                    images.insert(glue(&prod, k).unwrap());
                }
            }
            assert_eq!(images.len(), 1, "k={k}");
        }
    }

    #[test]
    fn representatives_glue_back() {
        for (k, n) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            for p in enumerate_fused(k, n).unwrap() {
                assert_eq!(glue(&representative(&p), k).unwrap(), p);
            }
        }
    }

    #[test]
    fn symmetrizer_is_idempotent() {
        let p3 = symmetrizer(3, 5).unwrap();
        assert_eq!(p3.mul(&p3).unwrap(), p3);
        assert_eq!(symmetrizer(1, 3).unwrap(), SymElement::one(3));
        // transpositions inside the fused block act trivially
        let delta1 = SymElement::from_perm(vec![2, 1, 3, 4, 5]).unwrap();
        assert_eq!(delta1.mul(&p3).unwrap(), p3);
        assert_eq!(p3.mul(&delta1).unwrap(), p3);
        assert!(symmetrizer(4, 3).is_err());
    }

    #[test]
    fn sandwich_oracle_small() {
        for (k, n) in [(2, 1), (1, 2)] {
            let report = sandwich_product_check(k, n).unwrap();
            assert!(report.passed(), "(k,n)=({k},{n})");
            assert_eq!(report.pairs, report.diagrams * report.diagrams);
        }
        // |S_{2,1}| = 2 by the dimension formula: S2={1} forces S1={{1,2}}
        // and S2={2} forces S1={{1,1}}
        assert_eq!(sandwich_product_check(2, 1).unwrap().diagrams, 2);
    }

    #[test]
    fn phi_generator_images() {
        let mode = ScalarMode::specialized_int(0, 3); // k = 2
        let x = HeckeElement::jucys_murphy(2, mode.clone(), 1).unwrap();
        assert_eq!(phi(&x, 2).unwrap(), t_gen(2, 2).unwrap());
        // t^2 = (k+1) t through the Hecke side
        let xx = x.mul(&x).unwrap();
        assert_eq!(phi(&xx, 2).unwrap(), t_gen(2, 2).unwrap().scale(&rat_int(3)));
        let s = HeckeElement::generator(2, mode.clone(), Letter::S(1)).unwrap();
        assert_eq!(phi(&s, 2).unwrap(), sigma(2, 2, 1).unwrap());
        // wrong parameter point is refused
        let wrong = HeckeElement::jucys_murphy(2, ScalarMode::specialized_int(0, 2), 1).unwrap();
        assert!(matches!(phi(&wrong, 2), Err(Error::ModeMismatch)));
        assert!(matches!(
            phi(&HeckeElement::jucys_murphy(2, ScalarMode::Generic, 1).unwrap(), 2),
            Err(Error::ModeMismatch)
        ));
    }

    #[test]
    fn phi_is_multiplicative() {
        let k = 2;
        let mode = ScalarMode::specialized_int(0, 3);
        let words = enumerate_words(2, WordFilter::All);
        for (i, wa) in words.iter().enumerate() {
            let wb = &words[(i * 5 + 3) % words.len()];
            let a = HeckeElement::from_signed(mode.clone(), wa);
            let b = HeckeElement::from_signed(mode.clone(), wb);
            let lhs = phi(&a.mul(&b).unwrap(), k).unwrap();
            let rhs = phi(&a, k).unwrap().mul(&phi(&b, k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn relation_report_passes() {
        for (k, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let failures = verify_phi_relations(k, n).unwrap();
            assert!(failures.is_empty(), "(k,n)=({k},{n}): {failures:?}");
        }
        assert!(verify_phi_relations(2, 1).is_err());
    }

    #[test]
    fn kernel_small_cases() {
        // (1,2): images of the six detached words are independent and span
        let report = kernel_check(1, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.image_rank, 6);
        assert_eq!(report.barred_corner_killed, Some(true));
        assert_eq!(report.row_corner_killed, Some(true));

        // the word dropped by the cap has a dependent image
        let mode = ScalarMode::specialized_int(0, 2);
        let dropped = HeckeElement::from_word(2, mode, &delta_word(1)).unwrap();
        let img = phi(&dropped, 1).unwrap();
        let basis = enumerate_fused(1, 2).unwrap();
        let index: BTreeMap<FusedPerm, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut rref = RatRref::new(basis.len());
        for w in enumerate_words(2, WordFilter::AvoidingCap(1)) {
            let e = HeckeElement::from_signed(ScalarMode::specialized_int(0, 2), &w);
            let mut row = vec![Rational::zero(); basis.len()];
            for (p, c) in phi(&e, 1).unwrap().terms() {
                row[index[p]] = c.clone();
            }
            rref.insert(row);
        }
        let mut row = vec![Rational::zero(); basis.len()];
        for (p, c) in img.terms() {
            row[index[p]] = c.clone();
        }
        assert!(rref.insert(row).is_none(), "dropped word image must be dependent");
    }

    #[test]
    fn generation_by_crossings_and_hooks() {
        // closure of {1, sigma_i, h_i} under products spans the algebra
        for (k, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let basis = enumerate_fused(k, n).unwrap();
            let index: BTreeMap<FusedPerm, usize> =
                basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            let mut gens = vec![DiagramElement::one(k, n).unwrap()];
            for i in 0..n {
                gens.push(sigma(k, n, i).unwrap());
            }
            for i in 1..=k.min(n) {
                gens.push(h_gen(k, n, i).unwrap());
            }
            let row_of = |e: &DiagramElement| {
                let mut row = vec![Rational::zero(); basis.len()];
                for (p, c) in e.terms() {
                    row[index[p]] = c.clone();
                }
                row
            };
            let mut rref = RatRref::new(basis.len());
            let mut queue: Vec<DiagramElement> = Vec::new();
            for g in &gens {
                if rref.insert(row_of(g)).is_some() {
                    queue.push(g.clone());
                }
            }
            while let Some(e) = queue.pop() {
                for g in &gens {
                    let next = e.mul(g).unwrap();
                    if rref.insert(row_of(&next)).is_some() {
                        queue.push(next);
                    }
                }
            }
            assert_eq!(rref.rank(), basis.len(), "(k,n)=({k},{n})");
        }
    }

    #[test]
    fn ascii_rendering_is_stable() {
        let p = d(3, &[1, 1, 3], &[1, 2]);
        assert_eq!(p.ascii_diagram(), "(==) 2 3\n  1 -> {1,1,3}\n  2 -> 1\n  3 -> 2\n(==) 2 3");
    }
}
