#![allow(dead_code)]

use bielliptic::{DivisorClass, GeneratorLetter, GeneratorWord, Sl2, SurfaceType, WordLetter};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const BOUND: i64 = 10;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn surface(id: i64) -> SurfaceType {
    SurfaceType::new(id).unwrap()
}

pub fn split_types() -> Vec<SurfaceType> {
    SurfaceType::all().filter(|t| t.is_split()).collect()
}

/// All `(c, a, d, b)` with `cb − ad = 1`, entries in `[-bound, bound]` and
/// `lambda | d`.
pub fn sl2_matrices(bound: i64, lambda: i64) -> Vec<(i64, i64, i64, i64)> {
    let r = -bound..=bound;
    let mut out = Vec::new();
    for c in r.clone() {
        for a in r.clone() {
            for d in r.clone().filter(|d| d % lambda == 0) {
                if c == 0 {
                    if a * d == -1 {
                        out.extend(r.clone().map(|b| (c, a, d, b)));
                    }
                } else if (1 + a * d) % c == 0 && ((1 + a * d) / c).abs() <= bound {
                    out.push((c, a, d, (1 + a * d) / c));
                }
            }
        }
    }
    out
}

/// Samples letters with every entry bounded by [`BOUND`].
pub struct LetterSampler {
    surface: SurfaceType,
    fma: Vec<(i64, i64, i64, i64)>,
    fmb: Vec<(i64, i64, i64, i64)>,
}

impl LetterSampler {
    pub fn new(surface: SurfaceType) -> Self {
        let p = surface.profile();
        LetterSampler {
            surface,
            fma: sl2_matrices(BOUND, i64::from(p.lambda_pa)),
            fmb: sl2_matrices(BOUND, i64::from(p.lambda_pb)),
        }
    }

    pub fn letter<R: Rng>(&self, rng: &mut R) -> GeneratorLetter {
        let t = self.surface;
        let sl2 = |m: &(i64, i64, i64, i64)| Sl2::from_i64(m.0, m.1, m.2, m.3).unwrap();
        match rng.gen_range(0..4) {
            0 => GeneratorLetter::shift(t),
            1 => GeneratorLetter::tensor(
                t,
                DivisorClass::from_i64(rng.gen_range(-BOUND..=BOUND), rng.gen_range(-BOUND..=BOUND)),
            ),
            2 => GeneratorLetter::rel_fm_a(t, sl2(self.fma.choose(rng).unwrap())).unwrap(),
            _ => GeneratorLetter::rel_fm_b(t, sl2(self.fmb.choose(rng).unwrap())).unwrap(),
        }
    }

    pub fn word<R: Rng>(&self, rng: &mut R, len: usize) -> GeneratorWord {
        let letters = (0..len)
            .map(|_| {
                let l = self.letter(rng);
                if rng.gen_bool(0.25) {
                    WordLetter::inverted(l)
                } else {
                    WordLetter::plain(l)
                }
            })
            .collect();
        GeneratorWord::new(self.surface, letters).unwrap()
    }
}
