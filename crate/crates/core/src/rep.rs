//! Seminormal matrix models of the irreducible modules.
//!
//! For each bipartition shape the module has a basis indexed by standard
//! bitableaux. Jucys-Murphy elements act diagonally by contents; a simple
//! transposition acts on the plane spanned by a tableau and its entry-swap
//! with coefficients built from the axial distance. The construction needs
//! every axial distance to be invertible, which is exactly the semisimple
//! range of the parameters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::linalg::rank_rational;
use crate::scalar::{rat, Rational, Scalar, ScalarMode};
use crate::tableaux::{enumerate_bipartitions, enumerate_std, Bipartition, DomRel, StdBiTableau};
use crate::words::{enumerate_words, Letter, WordFilter};

// ---------------------------------------------------------------------------
// Dense matrices over mode-tagged scalars
// ---------------------------------------------------------------------------

/// Dense row-major matrix whose entries all live in one scalar mode.
#[derive(Clone, PartialEq, Debug)]
pub struct ScalarMatrix {
    mode: ScalarMode,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(mode: &ScalarMode, nrows: usize, ncols: usize) -> Self {
        ScalarMatrix {
            mode: mode.clone(),
            nrows,
            ncols,
            data: vec![mode.zero(); nrows * ncols],
        }
    }

    pub fn identity(mode: &ScalarMode, dim: usize) -> Self {
        let mut m = Self::zero(mode, dim, dim);
        for i in 0..dim {
            m.set(i, i, mode.one());
        }
        m
    }

    pub fn diagonal(mode: &ScalarMode, entries: Vec<Scalar>) -> Self {
        let dim = entries.len();
        let mut m = Self::zero(mode, dim, dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mode(&self) -> &ScalarMode {
        &self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let e = self.get(i, j);
                if i == j && !e.is_one() {
                    return false;
                }
                if i != j && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        assert_eq!(self.mode, other.mode, "matrix mode mismatch");
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        ScalarMatrix { mode: self.mode.clone(), nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.mode.from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        ScalarMatrix { mode: self.mode.clone(), nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        assert_eq!(self.mode, other.mode, "matrix mode mismatch");
        let mut out = Self::zero(&self.mode, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for l in 0..self.ncols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The seminormal representation of one shape
// ---------------------------------------------------------------------------

/// Matrix model of the irreducible module labelled by a bipartition.
///
/// The basis is the canonical standard-tableau order of [`enumerate_std`];
/// generator matrices are precomputed at construction.
pub struct SeminormalRep {
    shape: Bipartition,
    mode: ScalarMode,
    basis: Vec<StdBiTableau>,
    /// s_mats[r-1] is the matrix of the transposition swapping r, r+1.
    s_mats: Vec<ScalarMatrix>,
    x1_mat: ScalarMatrix,
}

impl SeminormalRep {
    pub fn new(shape: &Bipartition, mode: &ScalarMode) -> Result<Self> {
        let n = shape.size();
        if n == 0 {
            return Err(Error::SizeMismatch);
        }
        if !mode.semisimple(n) {
            return Err(Error::NotSemisimple);
        }
        let basis = enumerate_std(shape);
        let dim = basis.len();
        let index: BTreeMap<&StdBiTableau, usize> =
            basis.iter().enumerate().map(|(i, t)| (t, i)).collect();

        let mut s_mats = Vec::with_capacity(n.saturating_sub(1));
        for r in 1..n {
            let mut m = ScalarMatrix::zero(mode, dim, dim);
            for (j, t) in basis.iter().enumerate() {
                let rho = t.axial_distance(r, mode)?;
                // axial distances are nonzero on the whole semisimple range
                let diag = rho.inv().map_err(|_| Error::NotSemisimple)?.neg();
                m.set(j, j, diag);
                if let Some(s) = t.swap_entries(r) {
                    let alpha = if t.dominance(&s)? == DomRel::Greater {
                        mode.one()
                    } else {
                        let rho2 = rho.mul(&rho);
                        rho2.sub(&mode.one()).div(&rho2).map_err(|_| Error::NotSemisimple)?
                    };
                    let i = *index.get(&s).expect("entry swap stays in the same shape");
                    m.set(i, j, alpha);
                }
            }
            s_mats.push(m);
        }

        let mut contents = Vec::with_capacity(dim);
        for t in &basis {
            contents.push(t.content(1, mode)?);
        }
        let x1_mat = ScalarMatrix::diagonal(mode, contents);

        Ok(SeminormalRep { shape: shape.clone(), mode: mode.clone(), basis, s_mats, x1_mat })
    }

    pub fn shape(&self) -> &Bipartition {
        &self.shape
    }

    pub fn mode(&self) -> &ScalarMode {
        &self.mode
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StdBiTableau] {
        &self.basis
    }

    pub fn letter_matrix(&self, g: Letter) -> Result<&ScalarMatrix> {
        match g {
            Letter::X => Ok(&self.x1_mat),
            Letter::S(p) => {
                let p = p as usize;
                if p == 0 || p > self.s_mats.len() {
                    return Err(Error::IndexOutOfRange);
                }
                Ok(&self.s_mats[p - 1])
            }
        }
    }

    /// Product of letter matrices in word order.
    pub fn word_matrix(&self, letters: &[Letter]) -> Result<ScalarMatrix> {
        let mut m = ScalarMatrix::identity(&self.mode, self.dim());
        for &g in letters {
            m = m.mul(self.letter_matrix(g)?);
        }
        Ok(m)
    }

    /// Image of an algebra element; a homomorphism in both arguments of mul.
    pub fn evaluate(&self, e: &HeckeElement) -> Result<ScalarMatrix> {
        if e.n() != self.shape.size() {
            return Err(Error::RankMismatch);
        }
        if e.mode() != &self.mode {
            return Err(Error::ModeMismatch);
        }
        let mut acc = ScalarMatrix::zero(&self.mode, self.dim(), self.dim());
        for (w, c) in e.terms() {
            let m = self.word_matrix(&w.letters())?;
            acc = acc.add(&m.scale(c));
        }
        Ok(acc)
    }

    /// Diagonal matrix of the r-th contents, 1 <= r <= n.
    pub fn jm_matrix(&self, r: usize) -> Result<ScalarMatrix> {
        if r == 0 || r > self.shape.size() {
            return Err(Error::IndexOutOfRange);
        }
        let mut contents = Vec::with_capacity(self.dim());
        for t in &self.basis {
            contents.push(t.content(r, &self.mode)?);
        }
        Ok(ScalarMatrix::diagonal(&self.mode, contents))
    }

    /// Checks every defining relation on the generator matrices, plus the
    /// recursively built Jucys-Murphy tower against the content diagonals.
    /// Returns human-readable descriptions of any failures.
    pub fn verify_relations(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let n = self.shape.size();
        let dim = self.dim();
        let id = ScalarMatrix::identity(&self.mode, dim);
        let x = &self.x1_mat;

        let shift = |m: &ScalarMatrix, c: Scalar| m.sub(&id.scale(&c));
        let quad = shift(x, self.mode.kappa(1)).mul(&shift(x, self.mode.kappa(2)));
        if !quad.is_zero() {
            failures.push(format!("(x1 - k1)(x1 - k2) != 0 on {}", self.shape.to_text()));
        }

        for r in 1..n {
            let s = &self.s_mats[r - 1];
            if !s.mul(s).is_identity() {
                failures.push(format!("s{r}^2 != 1 on {}", self.shape.to_text()));
            }
        }
        for r in 1..n.saturating_sub(1) {
            let a = &self.s_mats[r - 1];
            let b = &self.s_mats[r];
            if a.mul(b).mul(a) != b.mul(a).mul(b) {
                failures.push(format!("braid s{r} s{} fails on {}", r + 1, self.shape.to_text()));
            }
        }
        for r in 1..n {
            for t in (r + 2)..n {
                let a = &self.s_mats[r - 1];
                let b = &self.s_mats[t - 1];
                if a.mul(b) != b.mul(a) {
                    failures.push(format!(
                        "s{r} s{t} do not commute on {}",
                        self.shape.to_text()
                    ));
                }
            }
        }

        // Jucys-Murphy tower: x_{r+1} = s_r x_r s_r + s_r.
        let mut jm = vec![x.clone()];
        for r in 1..n {
            let s = &self.s_mats[r - 1];
            jm.push(s.mul(&jm[r - 1]).mul(s).add(s));
        }
        for (r, m) in jm.iter().enumerate() {
            let want = self.jm_matrix(r + 1).expect("r in range");
            if m != &want {
                failures.push(format!(
                    "x{} is not the content diagonal on {}",
                    r + 1,
                    self.shape.to_text()
                ));
            }
        }
        for r in 0..n {
            for t in (r + 1)..n {
                if jm[r].mul(&jm[t]) != jm[t].mul(&jm[r]) {
                    failures.push(format!(
                        "x{} x{} do not commute on {}",
                        r + 1,
                        t + 1,
                        self.shape.to_text()
                    ));
                }
            }
        }
        for r in 1..=n {
            for l in 1..n {
                if l == r || l == r.wrapping_sub(1) {
                    continue;
                }
                let s = &self.s_mats[l - 1];
                if jm[r - 1].mul(s) != s.mul(&jm[r - 1]) {
                    failures.push(format!(
                        "x{r} s{l} do not commute on {}",
                        self.shape.to_text()
                    ));
                }
            }
        }
        failures
    }
}

// ---------------------------------------------------------------------------
// Wedderburn decomposition check
// ---------------------------------------------------------------------------

/// Result of checking the full decomposition at one rank.
pub struct WedderburnReport {
    pub shapes: Vec<(Bipartition, usize)>,
    pub sum_squares: u64,
    pub expected: u64,
    /// (rank of the joint evaluation on all normal-form words, expected).
    /// Computed for small ranks only.
    pub joint_rank: Option<(usize, usize)>,
    pub passed: bool,
}

/// 2^n n!
pub fn free_dim(n: usize) -> u64 {
    let mut d = 1u64;
    for i in 1..=n {
        d *= 2 * i as u64;
    }
    d
}

/// Verifies that the irreducible dimensions square-sum to 2^n n! and (for
/// n <= 3) that the joint evaluation map on normal-form words is injective.
///
/// In generic mode the rank is certified at a semisimple rational point:
/// specialization can only lower rank, so full rank at the point implies
/// full rank generically.
pub fn wedderburn_check(n: usize, mode: &ScalarMode) -> Result<WedderburnReport> {
    if n == 0 {
        return Err(Error::SizeMismatch);
    }
    if !mode.semisimple(n) {
        return Err(Error::NotSemisimple);
    }
    let bips = enumerate_bipartitions(n);
    let mut shapes = Vec::with_capacity(bips.len());
    let mut sum_squares = 0u64;
    for b in &bips {
        let d = b.std_count() as usize;
        sum_squares += (d * d) as u64;
        shapes.push((b.clone(), d));
    }
    let expected = free_dim(n);

    let joint_rank = if expected <= 48 {
        let probe = match mode {
            ScalarMode::Generic => {
                ScalarMode::Specialized(rat(0, 1), rat(2 * n as i64 + 1, 2))
            }
            m => m.clone(),
        };
        let reps: Vec<SeminormalRep> =
            bips.iter().map(|b| SeminormalRep::new(b, &probe)).collect::<Result<_>>()?;
        let ncols = sum_squares as usize;
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(expected as usize);
        for w in enumerate_words(n, WordFilter::All) {
            let blocks = w.to_blocks();
            let mut row: Vec<Rational> = Vec::with_capacity(ncols);
            for rep in &reps {
                let m = rep.word_matrix(&blocks.letters())?;
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        row.push(m.get(i, j).as_rational().expect("probe mode is specialized"));
                    }
                }
            }
            rows.push(row);
        }
        Some((rank_rational(rows, ncols), expected as usize))
    } else {
        None
    };

    let passed = sum_squares == expected
        && joint_rank.map(|(got, want)| got == want).unwrap_or(true);
    Ok(WedderburnReport { shapes, sum_squares, expected, joint_rank, passed })
}
