//! Independent cross-checks. Each test validates one layer of the algebra
//! against a model computed through entirely different machinery:
//! permutation composition, matrix representations, or the symmetrizer
//! sandwich. The proptests at the bottom pin down the algebraic laws the
//! rest of the crate silently relies on.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use fused_hecke::diagram::{
    enumerate_fused, glue_element, representative, symmetrizer, DiagramElement, SymElement,
};
use fused_hecke::hecke::HeckeElement;
use fused_hecke::quotient::{build_reduction_table, QuotientSpec, ReductionTable};
use fused_hecke::rep::SeminormalRep;
use fused_hecke::scalar::rat;
use fused_hecke::tableaux::enumerate_bipartitions;
use fused_hecke::words::{enumerate_words, BlockWord, Letter, SignedWord, WordFilter};
use fused_hecke::{Scalar, ScalarMode};

// -------------------------------------------------------------------------
// Letter-by-letter products rebuild every normal form
// -------------------------------------------------------------------------

/// The rewrite engine, fed one generator at a time starting from the
/// identity, must land exactly on the basis word it spells. `from_word`
/// inserts basis words directly, so the two sides are computed
/// independently.
#[test]
fn letter_products_rebuild_normal_forms() {
    for n in 1..=3usize {
        let mode = ScalarMode::Generic;
        for w in enumerate_words(n, WordFilter::All) {
            let blocks = w.to_blocks();
            let mut e = HeckeElement::one(n, mode.clone());
            for g in blocks.letters() {
                e = e.right_mul_letter(g).unwrap();
            }
            let direct = HeckeElement::from_word(n, mode.clone(), &blocks).unwrap();
            assert_eq!(e, direct, "letter product of {}", w.to_text());
        }
    }
}

// -------------------------------------------------------------------------
// Unbarred words multiply like the symmetric group
// -------------------------------------------------------------------------

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&j| a[j as usize - 1]).collect()
}

fn perm_of_letters(n: usize, letters: &[Letter]) -> Vec<u8> {
    let mut p: Vec<u8> = (1..=n as u8).collect();
    for &g in letters {
        if let Letter::S(i) = g {
            let mut t: Vec<u8> = (1..=n as u8).collect();
            t.swap(i as usize - 1, i as usize);
            p = compose(&p, &t);
        } else {
            panic!("barred letter in an unbarred word");
        }
    }
    p
}

#[test]
fn unbarred_words_compose_as_permutations() {
    let n = 3usize;
    let mode = ScalarMode::Generic;
    let unbarred: Vec<BlockWord> = enumerate_words(n, WordFilter::All)
        .into_iter()
        .filter(|w| w.bar_count() == 0)
        .map(|w| w.to_blocks())
        .collect();
    assert_eq!(unbarred.len(), 6);

    let mut by_perm: BTreeMap<Vec<u8>, BlockWord> = BTreeMap::new();
    for w in &unbarred {
        let p = perm_of_letters(n, &w.letters());
        assert!(by_perm.insert(p, w.clone()).is_none(), "distinct words, distinct perms");
    }

    for u in &unbarred {
        for v in &unbarred {
            let eu = HeckeElement::from_word(n, mode.clone(), u).unwrap();
            let ev = HeckeElement::from_word(n, mode.clone(), v).unwrap();
            let prod = eu.mul(&ev).unwrap();
            let pu = perm_of_letters(n, &u.letters());
            let pv = perm_of_letters(n, &v.letters());
            let expect = &by_perm[&compose(&pu, &pv)];
            assert_eq!(prod.num_terms(), 1);
            assert_eq!(prod.coeff(expect), mode.from_int(1));
        }
    }
}

// -------------------------------------------------------------------------
// The seminormal representations certify random products
// -------------------------------------------------------------------------

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

fn random_element(
    n: usize,
    mode: &ScalarMode,
    words: &[BlockWord],
    rng: &mut Lcg,
) -> HeckeElement {
    let mut e = HeckeElement::zero(n, mode.clone());
    for _ in 0..4 {
        let w = &words[(rng.next() as usize) % words.len()];
        let c = (rng.next() % 13) as i64 - 6;
        if c != 0 {
            let term = HeckeElement::from_word(n, mode.clone(), w).unwrap().scale(&mode.from_int(c));
            e = e.add(&term).unwrap();
        }
    }
    e
}

/// Multiplicativity of every irreducible evaluation on pseudo-random pairs:
/// the matrices come from tableau contents, the products from the word
/// rewrite engine, so agreement certifies both.
#[test]
fn representations_certify_random_products() {
    let n = 3usize;
    let mode = ScalarMode::Specialized(rat(0, 1), rat(7, 2));
    let words: Vec<BlockWord> =
        enumerate_words(n, WordFilter::All).into_iter().map(|w| w.to_blocks()).collect();
    let reps: Vec<SeminormalRep> = enumerate_bipartitions(n)
        .iter()
        .map(|s| SeminormalRep::new(s, &mode).unwrap())
        .collect();

    let mut rng = Lcg(0x5eed);
    for _ in 0..20 {
        let a = random_element(n, &mode, &words, &mut rng);
        let b = random_element(n, &mode, &words, &mut rng);
        let ab = a.mul(&b).unwrap();
        for rep in &reps {
            let left = rep.evaluate(&ab).unwrap();
            let right = rep.evaluate(&a).unwrap().mul(&rep.evaluate(&b).unwrap());
            assert_eq!(left.sub(&right).is_zero(), true, "rep {}", rep.shape().to_text());
        }
    }
}

// -------------------------------------------------------------------------
// Sandwich model, sampled on the six-box boundary
// -------------------------------------------------------------------------

/// The exhaustive sweep lives in the acceptance suite for k + n <= 5; this
/// samples pairs at every split of six boxes, where full products are still
/// affordable but complete sweeps are not.
#[test]
fn sandwich_agreement_sampled_at_six_boxes() {
    for k in 1..=5usize {
        let n = 6 - k;
        let fused = enumerate_fused(k, n).unwrap();
        let step = (fused.len() / 5).max(1);
        let sample: Vec<_> = fused.iter().step_by(step).take(6).collect();
        let p = symmetrizer(k, k + n).unwrap();
        for da in &sample {
            let wa = SymElement::from_perm(representative(da)).unwrap();
            let left = p.mul(&wa).unwrap().mul(&p).unwrap();
            for db in &sample {
                let wb = SymElement::from_perm(representative(db)).unwrap();
                let sandwich = left.mul(&wb).unwrap().mul(&p).unwrap();
                let model = glue_element(&sandwich, k).unwrap();
                let direct = DiagramElement::from_fused((*da).clone())
                    .mul(&DiagramElement::from_fused((*db).clone()))
                    .unwrap();
                assert_eq!(model, direct, "sandwich at k = {k}, n = {n}");
            }
        }
    }
}

// -------------------------------------------------------------------------
// Distant commutation needs rank 4 to be visible
// -------------------------------------------------------------------------

#[test]
fn rank_four_distant_relations() {
    let n = 4usize;
    let mode = ScalarMode::Generic;
    let s1 = HeckeElement::generator(n, mode.clone(), Letter::S(1)).unwrap();
    let s3 = HeckeElement::generator(n, mode.clone(), Letter::S(3)).unwrap();
    assert_eq!(s1.mul(&s3).unwrap(), s3.mul(&s1).unwrap());

    let x: Vec<HeckeElement> =
        (1..=n).map(|r| HeckeElement::jucys_murphy(n, mode.clone(), r).unwrap()).collect();
    for a in &x {
        for b in &x {
            assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        }
    }
    // x4 s1 = s1 x4 and x1 s3 = s3 x1
    assert_eq!(x[3].mul(&s1).unwrap(), s1.mul(&x[3]).unwrap());
    assert_eq!(x[0].mul(&s3).unwrap(), s3.mul(&x[0]).unwrap());
}

// -------------------------------------------------------------------------
// Property tests
// -------------------------------------------------------------------------

fn all_words(n: usize) -> &'static Vec<SignedWord> {
    static CACHE: OnceLock<BTreeMap<usize, Vec<SignedWord>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        (1..=6).map(|n| (n, enumerate_words(n, WordFilter::All))).collect()
    })[&n]
}

/// Deterministic scalar built from a byte seed; exercises the reduced
/// rational-function arithmetic from many directions.
fn scalar_from_seed(mode: &ScalarMode, seed: &[u8]) -> Scalar {
    let k1 = mode.kappa(1);
    let k2 = mode.kappa(2);
    let mut cur = mode.from_int(1);
    for &b in seed {
        cur = match b % 8 {
            0 => cur.add(&k1),
            1 => cur.mul(&k2),
            2 => cur.sub(&mode.from_int((b / 8) as i64 % 5)),
            3 => cur.mul(&k1).add(&mode.from_int(1)),
            4 => cur.neg(),
            5 => cur.inv().unwrap_or_else(|_| k1.add(&mode.from_int(1))),
            6 => cur.mul(&cur),
            _ => cur.add(&k2.mul(&k2)),
        };
    }
    cur
}

fn fixed_table() -> &'static ReductionTable {
    static TABLE: OnceLock<ReductionTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let spec = QuotientSpec::avoiding(2, ScalarMode::Generic).unwrap();
        build_reduction_table(&spec).unwrap()
    })
}

proptest! {
    /// Signed one-line forms and block normal forms are inverse encodings.
    #[test]
    fn word_encodings_round_trip(n in 1usize..=6, idx in any::<prop::sample::Index>()) {
        let words = all_words(n);
        let w = &words[idx.index(words.len())];
        let blocks = w.to_blocks();
        prop_assert_eq!(&blocks.to_signed(n), w);
        prop_assert_eq!(blocks.bar_count(), w.bar_count());
        let reparsed = SignedWord::parse(&w.to_text()).unwrap();
        prop_assert_eq!(&reparsed, w);
    }

    /// Field laws for the generic coefficient arithmetic.
    #[test]
    fn scalar_field_laws(
        sa in prop::collection::vec(any::<u8>(), 0..10),
        sb in prop::collection::vec(any::<u8>(), 0..10),
        sc in prop::collection::vec(any::<u8>(), 0..10),
    ) {
        let mode = ScalarMode::Generic;
        let a = scalar_from_seed(&mode, &sa);
        let b = scalar_from_seed(&mode, &sb);
        let c = scalar_from_seed(&mode, &sc);

        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), mode.from_int(1));
        }
        let reparsed = mode.parse_scalar(&a.to_text()).unwrap();
        prop_assert_eq!(reparsed, a);
    }

    /// Reduction onto the quotient basis is linear, idempotent, and
    /// compatible with multiplication.
    #[test]
    fn reduction_is_linear(
        sa in prop::collection::vec(any::<u8>(), 4..12),
        sb in prop::collection::vec(any::<u8>(), 4..12),
        coeff in -6i64..=6,
    ) {
        let table = fixed_table();
        let n = table.n();
        let mode = table.mode().clone();
        let words = all_words(n);

        let pick = |seed: &[u8]| {
            let mut e = HeckeElement::zero(n, mode.clone());
            for pair in seed.chunks(2) {
                let w = words[pair[0] as usize % words.len()].to_blocks();
                let c = (pair.get(1).copied().unwrap_or(1) % 9) as i64 - 4;
                let t = HeckeElement::from_word(n, mode.clone(), &w).unwrap()
                    .scale(&mode.from_int(c));
                e = e.add(&t).unwrap();
            }
            e
        };
        let a = pick(&sa);
        let b = pick(&sb);

        let sum = table.reduce(&a.add(&b).unwrap()).unwrap();
        prop_assert_eq!(&sum, &table.reduce(&a).unwrap().add(&table.reduce(&b).unwrap()).unwrap());

        let scaled = table.reduce(&a.scale(&mode.from_int(coeff))).unwrap();
        prop_assert_eq!(&scaled, &table.reduce(&a).unwrap().scale(&mode.from_int(coeff)));

        let ra = table.reduce(&a).unwrap();
        prop_assert_eq!(&table.reduce(&ra).unwrap(), &ra);

        let prod = table.reduce(&a.mul(&b).unwrap()).unwrap();
        let rb = table.reduce(&b).unwrap();
        prop_assert_eq!(&prod, &table.reduce(&ra.mul(&rb).unwrap()).unwrap());
    }
}
