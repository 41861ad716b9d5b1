//! Primitive idempotents from the Jucys-Murphy spectrum.
//!
//! Every standard bitableau has a primitive idempotent cut out by its
//! content vector. Two constructions are provided and must agree: the
//! direct product over the full content set, and the recursion along the
//! restriction chain using addable-box contents. The four one-dimensional
//! "corner" idempotents additionally have a closed word-by-word formula and
//! a one-step recurrence; all routes are cross-checked by `verify_corner`.

use alloc::format;
use alloc::vec;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::scalar::{Scalar, ScalarMode};
use crate::tableaux::{enumerate_bipartitions, enumerate_std, Bipartition, Partition, StdBiTableau};
use crate::words::{enumerate_words, Letter, WordFilter};

/// All distinct content values occurring in standard bitableaux of size `n`.
///
/// Computed by enumeration and deduplicated by value, so coincidences like
/// k1 + 2 = k2 - 1 at a semisimple specialization collapse to one entry.
pub fn contents_set(n: usize, mode: &ScalarMode) -> Result<Vec<Scalar>> {
    if !mode.semisimple(n) {
        return Err(Error::NotSemisimple);
    }
    let mut out: Vec<Scalar> = Vec::new();
    for shape in enumerate_bipartitions(n) {
        for t in enumerate_std(&shape) {
            for k in 1..=n {
                out.push(t.content(k, mode)?);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn content_factor(
    acc: HeckeElement,
    x: &HeckeElement,
    eigen: &Scalar,
    other: &Scalar,
) -> Result<HeckeElement> {
    // acc * (x - other) / (eigen - other)
    let n = x.n();
    let num = x.sub(&HeckeElement::one(n, x.mode().clone()).scale(other))?;
    let den = eigen.sub(other);
    debug_assert!(!den.is_zero(), "content set entries are pairwise distinct");
    acc.mul(&num).map(|e| e.scale(&den.inv().expect("nonzero")))
}

/// The primitive idempotent of a standard bitableau, as the product of
/// spectral factors over the full content set of its rank.
pub fn f_tableau(t: &StdBiTableau, mode: &ScalarMode) -> Result<HeckeElement> {
    let n = t.n();
    let contents = contents_set(n, mode)?;
    let mut f = HeckeElement::one(n, mode.clone());
    for k in 1..=n {
        let eigen = t.content(k, mode)?;
        let x = HeckeElement::jucys_murphy(n, mode.clone(), k)?;
        for c in &contents {
            if c == &eigen {
                continue;
            }
            f = content_factor(f, &x, &eigen, c)?;
        }
    }
    Ok(f)
}

/// The same idempotent built along the restriction chain: at each step only
/// the contents of the addable boxes of the previous shape are separated.
pub fn f_tableau_recursive(t: &StdBiTableau, mode: &ScalarMode) -> Result<HeckeElement> {
    let n = t.n();
    if !mode.semisimple(n) {
        return Err(Error::NotSemisimple);
    }
    let mut f = HeckeElement::one(0, mode.clone());
    let mut below = Bipartition::empty();
    for k in 1..=n {
        f = f.embed(k)?;
        let cell = t.cell_of(k)?;
        let eigen = t.content(k, mode)?;
        let x = HeckeElement::jucys_murphy(k, mode.clone(), k)?;
        for b in below.addable_cells() {
            if b == cell {
                continue;
            }
            let c = mode.kappa(b.comp as usize + 1).add(&mode.from_int(b.offset()));
            if c == eigen {
                // distinct addable boxes can share a content value at a
                // semisimple specialization; the factor is already applied
                continue;
            }
            f = content_factor(f, &x, &eigen, &c)?;
        }
        below = below.with_box(cell)?;
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Corner idempotents
// ---------------------------------------------------------------------------

/// Label of a one-dimensional representation: the sign `alpha` taken by the
/// transpositions and the eigenvalue kappa_b of x_1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CornerLabel {
    pub alpha: i8,
    pub b: u8,
    pub n: usize,
}

impl CornerLabel {
    pub fn new(alpha: i8, b: u8, n: usize) -> Result<Self> {
        if (alpha != 1 && alpha != -1) || (b != 1 && b != 2) {
            return Err(Error::IndexOutOfRange);
        }
        Ok(CornerLabel { alpha, b, n })
    }

    /// kappa_b.
    pub fn kappa_own(&self, mode: &ScalarMode) -> Scalar {
        mode.kappa(self.b as usize)
    }

    /// kappa_{b+1}, indices mod 2.
    pub fn kappa_other(&self, mode: &ScalarMode) -> Scalar {
        mode.kappa(if self.b == 1 { 2 } else { 1 })
    }

    /// The one-row (alpha = +1) or one-column (alpha = -1) bipartition whose
    /// unique standard tableau this corner projects onto.
    pub fn shape(&self) -> Bipartition {
        let part = if self.alpha == 1 {
            Partition::new(if self.n == 0 { Vec::new() } else { vec![self.n as u32] })
        } else {
            Partition::new(vec![1; self.n])
        }
        .expect("valid partition");
        if self.b == 1 {
            Bipartition::new(part, Partition::empty())
        } else {
            Bipartition::new(Partition::empty(), part)
        }
    }

    pub fn to_text(&self) -> String {
        let a = if self.alpha == 1 { "+1" } else { "-1" };
        format!("F_{}^({},k{})", self.n, a, self.b)
    }
}

fn alpha_pow(alpha: i8, e: u32) -> i64 {
    if alpha == 1 || e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed-formula corner idempotent: a signed sum over all normal-form
/// words, each weighted by the factors (i - alpha*kappa_{b+1}) over the
/// levels whose block carries no bar. `normalized = false` returns the
/// bare sum; `normalized = true` divides by n! times the product of
/// (i + alpha(kappa_b - kappa_{b+1})), which must not vanish.
pub fn corner_idempotent(
    label: &CornerLabel,
    mode: &ScalarMode,
    normalized: bool,
) -> Result<HeckeElement> {
    let n = label.n;
    let alpha = label.alpha;
    let other = label.kappa_other(mode);
    // factor attached to level i when the word has no bar there
    let factors: Vec<Scalar> = (0..n)
        .map(|i| mode.from_int(i as i64).sub(&other.mul(&mode.from_int(alpha as i64))))
        .collect();

    let mut f = HeckeElement::zero(n, mode.clone());
    for w in enumerate_words(n, WordFilter::All) {
        let blocks = w.to_blocks();
        let mut barred = vec![false; n.max(1)];
        for &(r, m) in blocks.blocks() {
            if m <= 0 {
                barred[r as usize] = true;
            }
        }
        let mut coeff = mode.from_int(alpha_pow(alpha, blocks.length()));
        for (i, factor) in factors.iter().enumerate() {
            if !barred[i] {
                coeff = coeff.mul(factor);
            }
        }
        if !coeff.is_zero() {
            f.add_term(&blocks, coeff)?;
        }
    }

    if normalized {
        let own = label.kappa_own(mode);
        let diff = own.sub(&other).mul(&mode.from_int(alpha as i64));
        let mut den = mode.one();
        for i in 0..n {
            den = den.mul(&mode.from_int(i as i64).add(&diff));
            den = den.mul(&mode.from_int(i as i64 + 1));
        }
        let inv = den.inv().map_err(|_| Error::NotSemisimple)?;
        f = f.scale(&inv);
    }
    Ok(f)
}

/// One induction step for the corner idempotents: from the rank-n corner to
/// rank n+1 by right multiplication with a fixed combination of the new
/// top-level blocks. `label` names the target rank n+1 corner.
pub fn corner_recurrence_step(
    f_n: &HeckeElement,
    label: &CornerLabel,
    mode: &ScalarMode,
) -> Result<HeckeElement> {
    let n = f_n.n();
    if label.n != n + 1 {
        return Err(Error::SizeMismatch);
    }
    let alpha = label.alpha;
    let own = label.kappa_own(mode);
    let other = label.kappa_other(mode);

    let prefactor_den = mode
        .from_int((n + 1) as i64)
        .mul(&own.sub(&other).mul(&mode.from_int(alpha as i64)).add(&mode.from_int(n as i64)));
    let prefactor = prefactor_den.inv().map_err(|_| Error::NotSemisimple)?;

    let mut bracket = HeckeElement::zero(n + 1, mode.clone());
    for j in 0..=n {
        // barred blocks [n, -j], weight alpha^(n+j+1)
        let w = crate::words::BlockWord::new(vec![(n as u8, -(j as i8))])?;
        bracket.add_term(&w, mode.from_int(alpha_pow(alpha, (n + j + 1) as u32)))?;
    }
    let unbarred_weight = mode.from_int(n as i64).sub(&other.mul(&mode.from_int(alpha as i64)));
    for j in 1..=n + 1 {
        // plain blocks [n, j] (j = n+1 is the empty block), weight
        // (n - alpha*kappa_{b+1}) * alpha^(n-j+1)
        let w = if j == n + 1 {
            crate::words::BlockWord::identity()
        } else {
            crate::words::BlockWord::new(vec![(n as u8, j as i8)])?
        };
        let c = unbarred_weight.mul(&mode.from_int(alpha_pow(alpha, (n + 1 - j) as u32)));
        bracket.add_term(&w, c)?;
    }

    f_n.embed(n + 1)?.mul(&bracket).map(|e| e.scale(&prefactor))
}

/// Failure list from checking one corner idempotent.
pub struct CornerReport {
    pub failures: Vec<String>,
}

impl CornerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the defining properties of a normalized corner idempotent:
/// idempotence, the sign eigen-relations for every transposition, the x_1
/// eigenvalue, and orthogonality against the other corners of the same rank
/// (skipping corners that are literally the same element, as happens at
/// n = 1 where one-row and one-column shapes coincide).
pub fn verify_corner(f: &HeckeElement, label: &CornerLabel, mode: &ScalarMode) -> CornerReport {
    let mut failures = Vec::new();
    let n = label.n;
    let name = label.to_text();
    let mut check = |cond: bool, what: &str| {
        if !cond {
            failures.push(format!("{name}: {what}"));
        }
    };

    match f.mul(f) {
        Ok(sq) => check(&sq == f, "not idempotent"),
        Err(e) => check(false, &format!("squaring failed: {e}")),
    }

    let alpha = mode.from_int(label.alpha as i64);
    for i in 1..n {
        let g = HeckeElement::generator(n, mode.clone(), Letter::S(i as u8))
            .expect("i < n");
        let want = f.scale(&alpha);
        match (g.mul(f), f.mul(&g)) {
            (Ok(left), Ok(right)) => {
                check(left == want, &format!("s{i} left eigen-relation fails"));
                check(right == want, &format!("s{i} right eigen-relation fails"));
            }
            _ => check(false, "generator product failed"),
        }
    }

    let x = HeckeElement::generator(n, mode.clone(), Letter::X).expect("x generator");
    let want = f.scale(&label.kappa_own(mode));
    match (x.mul(f), f.mul(&x)) {
        (Ok(left), Ok(right)) => {
            check(left == want, "x1 left eigen-relation fails");
            check(right == want, "x1 right eigen-relation fails");
        }
        _ => check(false, "x1 product failed"),
    }

    for alpha2 in [1i8, -1] {
        for b2 in [1u8, 2] {
            let label2 = CornerLabel { alpha: alpha2, b: b2, n };
            if label2 == *label {
                continue;
            }
            let other = match corner_idempotent(&label2, mode, true) {
                Ok(e) => e,
                Err(e) => {
                    check(false, &format!("building {} failed: {e}", label2.to_text()));
                    continue;
                }
            };
            if &other == f {
                // coinciding corners (n <= 1); orthogonality does not apply
                continue;
            }
            match (f.mul(&other), other.mul(f)) {
                (Ok(left), Ok(right)) => {
                    check(
                        left.is_zero() && right.is_zero(),
                        &format!("not orthogonal to {}", label2.to_text()),
                    );
                }
                _ => check(false, "orthogonality product failed"),
            }
        }
    }

    CornerReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use crate::words::BlockWord;

    fn bip(a: &[u32], b: &[u32]) -> Bipartition {
        Bipartition::new(
            Partition::new(a.to_vec()).unwrap(),
            Partition::new(b.to_vec()).unwrap(),
        )
    }

    fn only_tableau(shape: &Bipartition) -> StdBiTableau {
        let mut all = enumerate_std(shape);
        assert_eq!(all.len(), 1);
        all.pop().unwrap()
    }

    #[test]
    fn contents_examples() {
        let generic = ScalarMode::Generic;
        let c1 = contents_set(1, &generic).unwrap();
        let mut texts: Vec<_> = c1.iter().map(|c| c.to_text()).collect();
        texts.sort();
        assert_eq!(texts, ["k1", "k2"]);
        let c2 = contents_set(2, &generic).unwrap();
        assert_eq!(c2.len(), 6);
        assert!(matches!(
            contents_set(2, &ScalarMode::specialized_int(0, 1)),
            Err(Error::NotSemisimple)
        ));
        // value collisions across the two components just collapse:
        // {-2..2} and {2..6} share the single value 2
        let c3 = contents_set(3, &ScalarMode::specialized_int(0, 4)).unwrap();
        assert_eq!(c3.len(), 9);
    }

    #[test]
    fn smallest_idempotent_formula() {
        let mode = ScalarMode::Generic;
        let t = only_tableau(&bip(&[1], &[]));
        let f = f_tableau(&t, &mode).unwrap();
        // (x1 - k2) / (k1 - k2)
        let x = HeckeElement::generator(1, mode.clone(), Letter::X).unwrap();
        let want = x
            .sub(&HeckeElement::one(1, mode.clone()).scale(&mode.kappa(2)))
            .unwrap()
            .scale(&mode.kappa(1).sub(&mode.kappa(2)).inv().unwrap());
        assert_eq!(f, want);
        assert_eq!(f_tableau_recursive(&t, &mode).unwrap(), want);
    }

    #[test]
    fn empty_tableau_gives_one() {
        let mode = ScalarMode::Generic;
        let t = StdBiTableau::new(Bipartition::empty(), Vec::new()).unwrap();
        assert_eq!(f_tableau(&t, &mode).unwrap(), HeckeElement::one(0, mode.clone()));
        assert_eq!(f_tableau_recursive(&t, &mode).unwrap(), HeckeElement::one(0, mode));
    }

    #[test]
    fn routes_agree_and_sum_to_one_at_rank_two() {
        let mode = ScalarMode::Generic;
        let mut sum = HeckeElement::zero(2, mode.clone());
        for shape in enumerate_bipartitions(2) {
            for t in enumerate_std(&shape) {
                let a = f_tableau(&t, &mode).unwrap();
                let b = f_tableau_recursive(&t, &mode).unwrap();
                assert_eq!(a, b, "routes differ on {}", t.to_text());
                sum = sum.add(&a).unwrap();
            }
        }
        assert_eq!(sum, HeckeElement::one(2, mode));
    }

    #[test]
    fn unnormalized_corner_word_coefficients() {
        let mode = ScalarMode::Generic;
        let label = CornerLabel::new(1, 1, 2).unwrap();
        let f = corner_idempotent(&label, &mode, false).unwrap();
        // x1 s1 x1 carries both bars, so its factor product is empty
        let w = BlockWord::new(vec![(0, 0), (1, 0)]).unwrap();
        assert!(f.coeff(&w).is_one());
        // the identity word collects (0 - k2)(1 - k2) = k2^2 - k2
        let id = BlockWord::identity();
        let want = mode.parse_scalar("k2^2 - k2").unwrap();
        assert_eq!(f.coeff(&id), want);
    }

    #[test]
    fn normalized_corner_specialized_coefficients() {
        // kappa = (0, k+1) with k = 3
        let mode = ScalarMode::specialized_int(0, 4);
        let label = CornerLabel::new(1, 1, 2).unwrap();
        let f = corner_idempotent(&label, &mode, true).unwrap();
        let id = BlockWord::identity();
        assert_eq!(f.coeff(&id), mode.from_rational(rat(1, 2)));
        let w = BlockWord::new(vec![(0, 0), (1, -1)]).unwrap();
        // 1/(2k(k+1)) = 1/24
        assert_eq!(f.coeff(&w), mode.from_rational(rat(1, 24)));
    }

    #[test]
    fn corner_equals_superstandard_idempotent() {
        let mode = ScalarMode::Generic;
        for alpha in [1i8, -1] {
            for b in [1u8, 2] {
                let label = CornerLabel::new(alpha, b, 2).unwrap();
                let closed = corner_idempotent(&label, &mode, true).unwrap();
                let t = only_tableau(&label.shape());
                assert_eq!(closed, f_tableau(&t, &mode).unwrap(), "{}", label.to_text());
            }
        }
    }

    #[test]
    fn recurrence_matches_closed_formula() {
        let mode = ScalarMode::Generic;
        for alpha in [1i8, -1] {
            for b in [1u8, 2] {
                let l1 = CornerLabel::new(alpha, b, 1).unwrap();
                let l2 = CornerLabel::new(alpha, b, 2).unwrap();
                let f1 = corner_idempotent(&l1, &mode, true).unwrap();
                let f2 = corner_recurrence_step(&f1, &l2, &mode).unwrap();
                assert_eq!(f2, corner_idempotent(&l2, &mode, true).unwrap());
            }
        }
    }

    #[test]
    fn barred_corner_at_special_point() {
        // F_2^(-1, k+1) at k = 3 is (x1 s1 + (x1 s1)^2 - x1 - x1 s1 x1)/24
        let mode = ScalarMode::specialized_int(0, 4);
        let label = CornerLabel::new(-1, 2, 2).unwrap();
        let f = corner_idempotent(&label, &mode, true).unwrap();
        let c = |blocks: &[(u8, i8)]| f.coeff(&BlockWord::new(blocks.to_vec()).unwrap());
        let q = |num: i64| mode.from_rational(rat(num, 24));
        assert_eq!(c(&[(0, 0), (1, 1)]), q(1)); // x1 s1
        assert_eq!(c(&[(0, 0), (1, -1)]), q(1)); // x1 s1 x1 s1
        assert_eq!(c(&[(0, 0)]), q(-1)); // x1
        assert_eq!(c(&[(0, 0), (1, 0)]), q(-1)); // x1 s1 x1
        assert_eq!(f.num_terms(), 4);
        assert!(verify_corner(&f, &label, &mode).passed());
    }

    #[test]
    fn verify_all_corners_rank_two_generic() {
        let mode = ScalarMode::Generic;
        for alpha in [1i8, -1] {
            for b in [1u8, 2] {
                let label = CornerLabel::new(alpha, b, 2).unwrap();
                let f = corner_idempotent(&label, &mode, true).unwrap();
                let report = verify_corner(&f, &label, &mode);
                assert!(report.passed(), "{:?}", report.failures);
            }
        }
    }

    #[test]
    fn normalization_pole_detected() {
        // alpha = 1, b = 1 at (0, 1): the factor (1 + k1 - k2) vanishes
        let mode = ScalarMode::Specialized(rat_int(0), rat_int(1));
        let label = CornerLabel::new(1, 1, 2).unwrap();
        assert!(matches!(
            corner_idempotent(&label, &mode, true),
            Err(Error::NotSemisimple)
        ));
        assert!(corner_idempotent(&label, &mode, false).is_ok());
    }
}
