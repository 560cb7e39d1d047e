//! Factorization of isometries of split surfaces into generator words.
//!
//! [`factor_point_image`] writes a word sending the point class `P4` to a
//! given isotropic primitive class of `Δ`, by reducing the class to a
//! fibre-supported one with shifts, twists and `Ψ_B` powers (a Euclidean
//! algorithm on rank and first coordinate) and finishing with a single
//! relative transform. [`decompose`] peels off such a word and a line-bundle
//! twist from any `Δ`-preserving isometry, leaving a block isometry of the
//! divisor lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isometry::{block, is_isometry, preserves_delta, Mat4, NumIsometry, UIsometry};
use crate::lattice::{
    is_isotropic, is_primitive, line_bundle_class, DivisorClass, NumClass, SurfaceType,
};
use crate::letters::{letter_action, GeneratorLetter, GeneratorWord, Sl2, WordLetter};
use crate::special::{default_delta, in_delta};

/// A word and a residual block with `compose(word) · block(residual) = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub word: GeneratorWord,
    pub residual: UIsometry,
}

/// Outcome of an image membership test, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageMembership {
    InImage(GeneratorWord),
    NotInImage(UIsometry),
}

impl ImageMembership {
    pub fn is_in_image(&self) -> bool {
        matches!(self, ImageMembership::InImage(_))
    }
}

/// What a word is checked against in [`verify_word`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Claim {
    Matrix(Mat4),
    Class(NumClass),
}

fn require_split(t: SurfaceType) -> Result<()> {
    if t.is_split() {
        Ok(())
    } else {
        Err(Error::NonSplit(t.id()))
    }
}

fn check_point_image(t: SurfaceType, v: &NumClass) -> Result<()> {
    require_split(t)?;
    if !in_delta(&default_delta(t), v) {
        return Err(Error::NotInDelta);
    }
    if !is_isotropic(v) {
        return Err(Error::NotIsotropic);
    }
    if v.is_zero() || !is_primitive(v)? {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// Builds the word back to front: `prefix` holds inverses of the reductions
/// applied so far, in application order.
struct Reducer {
    surface: SurfaceType,
    n: BigInt,
    current: NumClass,
    prefix: Vec<GeneratorLetter>,
    trace: Vec<NumClass>,
}

impl Reducer {
    fn apply(&mut self, letter: GeneratorLetter) {
        self.current = letter_action(&letter).apply(&self.current);
        self.prefix.push(letter.inverse());
        self.trace.push(self.current.clone());
    }

    fn tensor_e1(&mut self, q: BigInt) {
        let l = GeneratorLetter::tensor(self.surface, DivisorClass::new(q, BigInt::zero()));
        self.apply(l);
    }

    /// `Ψ_B^q`, i.e. the transform along `p_A` with matrix `(1, q; 0, 1)`.
    fn psi_b_power(&mut self, q: BigInt) {
        let m = Sl2::new(BigInt::one(), q, BigInt::zero(), BigInt::one()).expect("unipotent");
        let l = GeneratorLetter::rel_fm_a(self.surface, m).expect("d = 0");
        self.apply(l);
    }

    /// `(c0, a0)` with `r = n·c0`, `x = n·a0`.
    fn rank_and_a(&self) -> (BigInt, BigInt) {
        (&self.current.r / &self.n, &self.current.d.x / &self.n)
    }

    /// The terminal letter for a rank-zero class `(0, x, y, s)` with `x·y = 0`.
    fn fibre_letter(&self) -> GeneratorLetter {
        let NumClass { d, s, .. } = &self.current;
        if d.y.is_zero() {
            // (0, aA, 0, s) = RelFmB(c, a; n·d0, s)(P4) with c·s − a·n·d0 = 1.
            let x = &d.x;
            let c = bezout_coefficient(s, x);
            let d0 = (&c * s - BigInt::one()) / x;
            let m = Sl2::new(c, x / &self.n, &d0 * &self.n, s.clone()).expect("Bezout identity");
            GeneratorLetter::rel_fm_b(self.surface, m).expect("n | d by construction")
        } else {
            // (0, 0, y, s) = RelFmA(c, y; d, s)(P4) with c·s − y·d = 1.
            let y = &d.y;
            let c = bezout_coefficient(s, y);
            let dd = (&c * s - BigInt::one()) / y;
            let m = Sl2::new(c, y.clone(), dd, s.clone()).expect("Bezout identity");
            GeneratorLetter::rel_fm_a(self.surface, m).expect("k = 1 on split types")
        }
    }

    fn finish(self, tail: Option<GeneratorLetter>) -> (GeneratorWord, Vec<NumClass>) {
        let letters = self
            .prefix
            .into_iter()
            .chain(tail)
            .map(WordLetter::plain)
            .collect();
        let word = GeneratorWord::new(self.surface, letters).expect("single surface type");
        (word, self.trace)
    }
}

/// The unique `c` with `0 <= c < |m|` and `c·s ≡ 1 (mod m)`, for coprime
/// `s`, `m` with `m != 0`.
fn bezout_coefficient(s: &BigInt, m: &BigInt) -> BigInt {
    let e = s.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(&m.abs())
}

/// Like [`factor_point_image`], also returning every intermediate class of
/// the reduction (one per applied letter, in order).
pub fn factor_point_image_traced(
    t: SurfaceType,
    v: &NumClass,
) -> Result<(GeneratorWord, Vec<NumClass>)> {
    check_point_image(t, v)?;
    let mut red = Reducer {
        surface: t,
        n: BigInt::from(t.profile().n),
        current: v.clone(),
        prefix: Vec::new(),
        trace: Vec::new(),
    };

    if red.current.r.is_zero() && red.current.d.is_zero() {
        // ±P4
        if red.current.s.is_negative() {
            red.apply(GeneratorLetter::shift(t));
        }
        return Ok(red.finish(None));
    }

    if !red.current.r.is_zero() {
        if red.current.r.is_negative() {
            red.apply(GeneratorLetter::shift(t));
        }
        let (c0, a0) = red.rank_and_a();
        if a0.is_zero() {
            // (n·c0, 0, y, 0) ↦ (0, −c0·A, 0, −y)
            red.apply(GeneratorLetter::psi_hat(t)?);
        } else {
            if !a0.is_positive() {
                // smallest twist making a0 + q·c0 positive
                let q = (-&a0).div_floor(&c0) + BigInt::one();
                red.tensor_e1(q);
            }
            loop {
                let (c0, a0) = red.rank_and_a();
                let q = c0.div_floor(&a0);
                if !q.is_zero() {
                    red.psi_b_power(-q);
                }
                let (c0, a0) = red.rank_and_a();
                if c0.is_zero() {
                    break;
                }
                let (mut q, r) = a0.div_rem(&c0);
                // keep a0 positive so the next step can clear c0
                if r.is_zero() {
                    q -= BigInt::one();
                }
                if !q.is_zero() {
                    red.tensor_e1(-q);
                }
            }
        }
    }

    let tail = red.fibre_letter();
    Ok(red.finish(Some(tail)))
}

/// A word `w` with `compose(w)(P4) = v`, for an isotropic primitive class
/// `v ∈ Δ` of a split surface.
pub fn factor_point_image(t: SurfaceType, v: &NumClass) -> Result<GeneratorWord> {
    factor_point_image_traced(t, v).map(|(w, _)| w)
}

/// Splits a `Δ`-preserving isometry of a split surface as
/// `compose(word) · block(residual)`.
pub fn decompose(t: SurfaceType, m: &Mat4) -> Result<Decomposition> {
    require_split(t)?;
    if !is_isometry(m) {
        return Err(Error::NotAnIsometry);
    }
    if !preserves_delta(m, &default_delta(t))? {
        return Err(Error::DeltaNotPreserved);
    }
    let iso = NumIsometry::new(m.clone())?;
    let point_image = iso.apply(&NumClass::p4());
    let w1 = factor_point_image(t, &point_image)?;
    let fixed_point = w1.compose().inverse().then(&iso);
    debug_assert_eq!(fixed_point.apply(&NumClass::p4()), NumClass::p4());

    let u = fixed_point.apply(&NumClass::p0());
    assert_eq!(
        u,
        line_bundle_class(&u.d),
        "an isometry fixing P4 sends P0 to a line bundle class"
    );
    let twist = GeneratorLetter::tensor(t, u.d.clone());
    let graded = letter_action(&twist.inverse()).then(&fixed_point);
    let residual = UIsometry::from_block(graded.matrix())
        .expect("an isometry fixing P0 and P4 is a block isometry");

    let mut word = w1;
    if !u.d.is_zero() {
        word.push(WordLetter::plain(twist))?;
    }
    debug_assert_eq!(&word.compose().then(&block(residual)), &iso);
    Ok(Decomposition { word, residual })
}

/// Whether `m` is the numerical action of a generator word; the certificate
/// is the word, or the non-trivial residual block otherwise.
pub fn is_in_image(t: SurfaceType, m: &Mat4) -> Result<ImageMembership> {
    let Decomposition { word, residual } = decompose(t, m)?;
    Ok(if residual == UIsometry::Id {
        ImageMembership::InImage(word)
    } else {
        ImageMembership::NotInImage(residual)
    })
}

/// Recomposes `w` and compares exactly with the claim.
pub fn verify_word(w: &GeneratorWord, claim: &Claim) -> bool {
    match claim {
        Claim::Matrix(m) => w.compose().matrix() == m,
        Claim::Class(v) => &w.point_image() == v,
    }
}
