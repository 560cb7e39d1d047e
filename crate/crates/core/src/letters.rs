//! Generator letters (shift, line-bundle twist, relative Fourier–Mukai
//! transforms along either fibration), their numerical actions, and words.
//!
//! A relative transform along `p_A` with matrix `(c, a; d, b) ∈ SL2(Z)`
//! acts on `(rank, fibre degree)` by that matrix, where the fibre degree of
//! a class is `c1 · B = k·x`. The full 4×4 action is the doubled block
//! `N ⊕ N` with `N = [[c, a·k], [d/k, b]]` on the coordinate pairs `(r, x)`
//! and `(y, s)`. Along `p_B` the fibre degree is `c1 · A = n·y`, and
//! `N = [[c, a·n], [d/n, b]]` acts on `(r, y)` and `(x, s)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isometry::{Mat4, NumIsometry};
use crate::lattice::{DivisorClass, NumClass, SurfaceType};

/// `(c, a; d, b)` with `c·b − a·d = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2 {
    pub c: BigInt,
    pub a: BigInt,
    pub d: BigInt,
    pub b: BigInt,
}

impl Sl2 {
    pub fn new(c: BigInt, a: BigInt, d: BigInt, b: BigInt) -> Result<Self> {
        let det = &c * &b - &a * &d;
        if det.is_one() {
            Ok(Sl2 { c, a, d, b })
        } else {
            Err(Error::NotSl2 {
                c: c.to_string(),
                a: a.to_string(),
                d: d.to_string(),
                b: b.to_string(),
                det: det.to_string(),
            })
        }
    }

    pub fn from_i64(c: i64, a: i64, d: i64, b: i64) -> Result<Self> {
        Sl2::new(c.into(), a.into(), d.into(), b.into())
    }

    pub fn inverse(&self) -> Sl2 {
        Sl2 {
            c: self.b.clone(),
            a: -&self.a,
            d: -&self.d,
            b: self.c.clone(),
        }
    }

    /// Applies the matrix to `(rank, degree)`.
    pub fn apply(&self, rank: &BigInt, degree: &BigInt) -> (BigInt, BigInt) {
        (
            &self.c * rank + &self.a * degree,
            &self.d * rank + &self.b * degree,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LetterKind {
    Shift,
    TensorLb(DivisorClass),
    /// Relative transform along `p_A` (fibre class `B`); requires `k | d`.
    RelFmA(Sl2),
    /// Relative transform along `p_B` (fibre class `A`); requires `n | d`.
    RelFmB(Sl2),
}

/// A generator together with the surface type it acts on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorLetter {
    surface: SurfaceType,
    kind: LetterKind,
}

impl GeneratorLetter {
    pub fn new(surface: SurfaceType, kind: LetterKind) -> Result<Self> {
        let p = surface.profile();
        let check = |m: &Sl2, fibration: &'static str, lambda: u32| {
            if m.d.is_multiple_of(&BigInt::from(lambda)) {
                Ok(())
            } else {
                Err(Error::Divisibility {
                    fibration,
                    lambda,
                    d: m.d.to_string(),
                })
            }
        };
        match &kind {
            LetterKind::RelFmA(m) => check(m, "p_A", p.lambda_pa)?,
            LetterKind::RelFmB(m) => check(m, "p_B", p.lambda_pb)?,
            LetterKind::Shift | LetterKind::TensorLb(_) => {}
        }
        Ok(GeneratorLetter { surface, kind })
    }

    pub fn shift(surface: SurfaceType) -> Self {
        GeneratorLetter {
            surface,
            kind: LetterKind::Shift,
        }
    }

    pub fn tensor(surface: SurfaceType, m: DivisorClass) -> Self {
        GeneratorLetter {
            surface,
            kind: LetterKind::TensorLb(m),
        }
    }

    pub fn rel_fm_a(surface: SurfaceType, m: Sl2) -> Result<Self> {
        GeneratorLetter::new(surface, LetterKind::RelFmA(m))
    }

    pub fn rel_fm_b(surface: SurfaceType, m: Sl2) -> Result<Self> {
        GeneratorLetter::new(surface, LetterKind::RelFmB(m))
    }

    /// `Ψ_B`: the transform along `p_A` with matrix `(1, 1; 0, 1)`.
    pub fn psi_b(surface: SurfaceType) -> Self {
        GeneratorLetter::rel_fm_a(surface, Sl2::from_i64(1, 1, 0, 1).unwrap())
            .expect("d = 0 is always divisible")
    }

    /// `Ψ̂`: the transform along `p_A` with matrix `(0, 1; −1, 0)`; needs a
    /// section of `p_A`, i.e. a split type.
    pub fn psi_hat(surface: SurfaceType) -> Result<Self> {
        GeneratorLetter::rel_fm_a(surface, Sl2::from_i64(0, 1, -1, 0).unwrap())
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn kind(&self) -> &LetterKind {
        &self.kind
    }

    /// The letter whose action is the inverse matrix.
    pub fn inverse(&self) -> GeneratorLetter {
        let kind = match &self.kind {
            LetterKind::Shift => LetterKind::Shift,
            LetterKind::TensorLb(m) => LetterKind::TensorLb(-m),
            LetterKind::RelFmA(m) => LetterKind::RelFmA(m.inverse()),
            LetterKind::RelFmB(m) => LetterKind::RelFmB(m.inverse()),
        };
        GeneratorLetter {
            surface: self.surface,
            kind,
        }
    }

    /// Whether the letter is realized directly by an autoequivalence: relative
    /// transforms need `a > 0`. Other letters always are.
    pub fn is_geometric(&self) -> bool {
        match &self.kind {
            LetterKind::RelFmA(m) | LetterKind::RelFmB(m) => m.a.is_positive(),
            LetterKind::Shift | LetterKind::TensorLb(_) => true,
        }
    }
}

impl fmt::Display for GeneratorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LetterKind::Shift => write!(f, "shift"),
            LetterKind::TensorLb(m) => write!(f, "tlb({},{})", m.x, m.y),
            LetterKind::RelFmA(m) => write!(f, "fma({},{},{},{})", m.c, m.a, m.d, m.b),
            LetterKind::RelFmB(m) => write!(f, "fmb({},{},{},{})", m.c, m.a, m.d, m.b),
        }
    }
}

fn doubled_block(
    m: &Sl2,
    scale: u32,
    first: (usize, usize),
    second: (usize, usize),
) -> Mat4 {
    let scale = BigInt::from(scale);
    let upper = &m.a * &scale;
    let lower = &m.d / &scale;
    let mut rows: [[BigInt; 4]; 4] = Mat4::identity().rows().clone();
    for (i, j) in [first, second] {
        rows[i][i] = m.c.clone();
        rows[i][j] = upper.clone();
        rows[j][i] = lower.clone();
        rows[j][j] = m.b.clone();
    }
    Mat4::new(rows)
}

/// The numerical action of a letter on `N(S)`.
pub fn letter_action(l: &GeneratorLetter) -> NumIsometry {
    let p = l.surface.profile();
    let m = match &l.kind {
        LetterKind::Shift => Mat4::identity().neg(),
        LetterKind::TensorLb(d) => {
            let (mx, my) = (d.x.clone(), d.y.clone());
            let z = BigInt::zero;
            let o = BigInt::one;
            Mat4::new([
                [o(), z(), z(), z()],
                [mx.clone(), o(), z(), z()],
                [my.clone(), z(), o(), z()],
                [&mx * &my, my, mx, o()],
            ])
        }
        LetterKind::RelFmA(m) => doubled_block(m, p.k, (0, 1), (2, 3)),
        LetterKind::RelFmB(m) => doubled_block(m, p.n, (0, 2), (1, 3)),
    };
    NumIsometry::new_unchecked(m)
}

/// A letter or its formal inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordLetter {
    pub letter: GeneratorLetter,
    pub inverted: bool,
}

impl WordLetter {
    pub fn plain(letter: GeneratorLetter) -> Self {
        WordLetter {
            letter,
            inverted: false,
        }
    }

    pub fn inverted(letter: GeneratorLetter) -> Self {
        WordLetter {
            letter,
            inverted: true,
        }
    }

    pub fn action(&self) -> NumIsometry {
        let m = letter_action(&self.letter);
        if self.inverted {
            m.inverse()
        } else {
            m
        }
    }
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter)?;
        if self.inverted {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Left-to-right product of the letter actions: the last letter acts first.
pub fn compose(letters: &[WordLetter]) -> Result<NumIsometry> {
    if let Some(first) = letters.first() {
        let s = first.letter.surface;
        if let Some(other) = letters.iter().find(|l| l.letter.surface != s) {
            return Err(Error::MixedSurfaceTypes(s.id(), other.letter.surface.id()));
        }
    }
    Ok(letters
        .iter()
        .fold(NumIsometry::identity(), |acc, l| acc.then(&l.action())))
}

/// A word in the generators of one surface type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    surface: SurfaceType,
    letters: Vec<WordLetter>,
}

impl GeneratorWord {
    pub fn empty(surface: SurfaceType) -> Self {
        GeneratorWord {
            surface,
            letters: Vec::new(),
        }
    }

    pub fn new(surface: SurfaceType, letters: Vec<WordLetter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.letter.surface != surface) {
            return Err(Error::MixedSurfaceTypes(surface.id(), l.letter.surface.id()));
        }
        Ok(GeneratorWord { surface, letters })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn letters(&self) -> &[WordLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: WordLetter) -> Result<()> {
        if letter.letter.surface != self.surface {
            return Err(Error::MixedSurfaceTypes(self.surface.id(), letter.letter.surface.id()));
        }
        self.letters.push(letter);
        Ok(())
    }

    pub fn concat(&self, other: &GeneratorWord) -> Result<GeneratorWord> {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GeneratorWord::new(self.surface, letters)
    }

    /// The word of the inverse isometry.
    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            surface: self.surface,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| WordLetter {
                    letter: l.letter.clone(),
                    inverted: !l.inverted,
                })
                .collect(),
        }
    }

    pub fn compose(&self) -> NumIsometry {
        compose(&self.letters).expect("letters share the word's surface type")
    }

    /// Image of the point class `P4`, applying the letters right to left.
    pub fn point_image(&self) -> NumClass {
        self.letters
            .iter()
            .rev()
            .fold(NumClass::p4(), |v, l| l.action().apply(&v))
    }

    pub fn shift_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| l.letter.kind == LetterKind::Shift)
            .count()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}
