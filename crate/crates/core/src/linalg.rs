//! Exact dense row reduction.
//!
//! Two incremental reduced-row-echelon accumulators back the quotient and
//! representation machinery: one over the rationals, one fraction-free over
//! integer-primitive bivariate polynomial rows (so generic-mode elimination
//! never touches rational functions until coefficients are read off at the
//! end). Both keep the invariant that every stored row is fully reduced
//! against every pivot, so membership tests and rewrite extraction are a
//! single elimination pass.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Int, Poly2, Rational};

/// Incremental RREF over the rational field. Pivot entries are normalized
/// to one and pivot columns are cleared in all other rows.
pub(crate) struct RatRref {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    /// pivot column -> row index
    pivots: BTreeMap<usize, usize>,
}

impl RatRref {
    pub fn new(ncols: usize) -> Self {
        RatRref { ncols, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &BTreeMap<usize, usize> {
        &self.pivots
    }

    /// Eliminates all pivot columns from `v` in place.
    pub fn reduce_vec(&self, v: &mut [Rational]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (&col, &ri) in &self.pivots {
            if v[col].is_zero() {
                continue;
            }
            let factor = core::mem::replace(&mut v[col], Rational::zero());
            let row = &self.rows[ri];
            for (dst, src) in v.iter_mut().zip(row.iter()) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
            // reduce_vec zeroed v[col] up front; row[col] == 1 keeps it zero
            v[col] = Rational::zero();
        }
    }

    /// Inserts a row. Returns the new pivot column if the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> Option<usize> {
        self.reduce_vec(&mut v);
        let col = v.iter().position(|c| !c.is_zero())?;
        let lead = v[col].clone();
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c /= &lead;
            }
        }
        for row in self.rows.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = core::mem::replace(&mut row[col], Rational::zero());
            for (dst, src) in row.iter_mut().zip(v.iter()) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
            row[col] = Rational::zero();
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(v);
        Some(col)
    }
}

/// Rank of a dense rational matrix.
pub(crate) fn rank_rational(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    let mut rref = RatRref::new(ncols);
    for row in rows {
        rref.insert(row);
    }
    rref.rank()
}

/// Scales a row of polynomials to integer coefficients with overall content
/// one, leading coefficient of the first nonzero entry positive.
pub(crate) fn row_primitive(v: &mut [Poly2]) {
    // Clear any common polynomial factor first.
    let mut g = Poly2::zero();
    for e in v.iter() {
        if !e.is_zero() {
            g = Poly2::gcd(&g, e);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    if !g.is_one() {
        for e in v.iter_mut() {
            if !e.is_zero() {
                *e = e.div_exact(&g).expect("gcd divides every entry");
            }
        }
    }
    // Then the common rational content across entries.
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::one();
    for e in v.iter() {
        if e.is_zero() {
            continue;
        }
        let (c, _) = e.content_primitive();
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return;
    }
    let mut scale = Rational::new(den_lcm, num_gcd);
    let lead_negative = v
        .iter()
        .find(|e| !e.is_zero())
        .and_then(|e| e.leading().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    if lead_negative != scale.is_negative() {
        scale = -scale;
    }
    if !scale.is_one() {
        for e in v.iter_mut() {
            if !e.is_zero() {
                *e = e.scale(&scale);
            }
        }
    }
}

/// Incremental fraction-free RREF over polynomial rows. Rows stay
/// integer-primitive; pivot entries are not normalized to one, so reading
/// coefficients back off a row means dividing by its pivot entry.
pub(crate) struct PolyRref {
    ncols: usize,
    rows: Vec<Vec<Poly2>>,
    pivots: BTreeMap<usize, usize>,
}

impl PolyRref {
    pub fn new(ncols: usize) -> Self {
        PolyRref { ncols, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Poly2>] {
        &self.rows
    }

    pub fn pivots(&self) -> &BTreeMap<usize, usize> {
        &self.pivots
    }

    /// Eliminates all pivot columns from `v` in place (cross-multiply, then
    /// restore primitivity).
    pub fn reduce_vec(&self, v: &mut Vec<Poly2>) {
        debug_assert_eq!(v.len(), self.ncols);
        let mut touched = false;
        for (&col, &ri) in &self.pivots {
            if v[col].is_zero() {
                continue;
            }
            let row = &self.rows[ri];
            let vc = core::mem::replace(&mut v[col], Poly2::zero());
            let pc = &row[col];
            for (j, dst) in v.iter_mut().enumerate() {
                let a = if dst.is_zero() { Poly2::zero() } else { dst.mul(pc) };
                let b = if row[j].is_zero() { Poly2::zero() } else { row[j].mul(&vc) };
                *dst = a.sub(&b);
            }
            v[col] = Poly2::zero();
            touched = true;
        }
        if touched {
            row_primitive(v);
        }
    }

    /// Inserts a row. Returns the new pivot column if the rank grew.
    pub fn insert(&mut self, mut v: Vec<Poly2>) -> Option<usize> {
        self.reduce_vec(&mut v);
        let col = v.iter().position(|c| !c.is_zero())?;
        row_primitive(&mut v);
        for row in self.rows.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let rc = core::mem::replace(&mut row[col], Poly2::zero());
            let vc = &v[col];
            for (j, dst) in row.iter_mut().enumerate() {
                let a = if dst.is_zero() { Poly2::zero() } else { dst.mul(vc) };
                let b = if v[j].is_zero() { Poly2::zero() } else { v[j].mul(&rc) };
                *dst = a.sub(&b);
            }
            row[col] = Poly2::zero();
            row_primitive(row);
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(v);
        Some(col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn q(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn rational_rref_rank_and_reduction() {
        let mut rref = RatRref::new(3);
        assert_eq!(rref.insert(vec![q(2), q(4), q(6)]), Some(0));
        assert_eq!(rref.insert(vec![q(1), q(2), q(3)]), None);
        assert_eq!(rref.insert(vec![q(0), q(1), q(1)]), Some(1));
        assert_eq!(rref.rank(), 2);
        // back-elimination cleared column 1 of the first row
        assert_eq!(rref.rows()[0], vec![q(1), q(0), q(1)]);
        let mut v = vec![q(3), q(5), q(8)];
        rref.reduce_vec(&mut v);
        assert!(v.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn poly_rref_fraction_free() {
        let k1 = Poly2::k1();
        let k2 = Poly2::k2();
        let one = Poly2::one();
        let mut rref = PolyRref::new(2);
        // rows (k1, 1) and (k2, 1) are independent for generic kappa
        assert_eq!(rref.insert(vec![k1.clone(), one.clone()]), Some(0));
        assert_eq!(rref.insert(vec![k2.clone(), one.clone()]), Some(1));
        assert_eq!(rref.rank(), 2);
        // (k1 + k2, 2) is their sum
        let sum = vec![k1.add(&k2), Poly2::constant(rat_int(2))];
        assert_eq!(rref.insert(sum), None);
        // rows stay primitive with polynomial entries
        for row in rref.rows() {
            let mut r = row.clone();
            row_primitive(&mut r);
            assert_eq!(&r, row);
        }
    }

    #[test]
    fn row_primitive_normalizes_content_and_sign() {
        let mut row = vec![
            Poly2::k1().scale(&crate::scalar::rat(-2, 3)),
            Poly2::constant(crate::scalar::rat(-4, 3)),
        ];
        row_primitive(&mut row);
        assert_eq!(row[0].to_text(), "k1");
        assert_eq!(row[1].to_text(), "2");
    }
}
