mod common;

use bielliptic::cli::{format_class, parse_class, parse_word};
use bielliptic::*;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn class(r: i64, x: i64, y: i64, s: i64) -> NumClass {
    NumClass::from_i64(r, x, y, s)
}

fn coords() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    let c = -1000i64..=1000;
    (c.clone(), c.clone(), c.clone(), c)
}

fn gram_form(v: &NumClass, w: &NumClass) -> BigInt {
    let g = lattice::EULER_GRAM;
    let (vc, wc) = (v.coords(), w.coords());
    let mut acc = BigInt::from(0);
    for i in 0..4 {
        for j in 0..4 {
            acc += &vc[i] * BigInt::from(g[i][j]) * &wc[j];
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pairing_matches_gram(a in coords(), b in coords()) {
        let (v, w) = (class(a.0, a.1, a.2, a.3), class(b.0, b.1, b.2, b.3));
        prop_assert_eq!(euler_pairing(&v, &w), gram_form(&v, &w));
        prop_assert_eq!(euler_pairing(&v, &w), euler_pairing(&w, &v));
    }

    #[test]
    fn twists_are_delta_preserving_isometries(id in 1i64..=7, mx in -1000i64..=1000, my in -1000i64..=1000) {
        let t = surface(id);
        let m = letter_action(&GeneratorLetter::tensor(t, DivisorClass::from_i64(mx, my)));
        prop_assert!(is_isometry(m.matrix()));
        for model in enumerate_admissible_models(t) {
            prop_assert!(preserves_delta(m.matrix(), &model).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn class_literal_round_trip(a in coords()) {
        let v = class(a.0, a.1, a.2, a.3);
        let text = format_class(&v);
        prop_assert_eq!(parse_class(&text), Some(v));
        prop_assert_eq!(format_class(&parse_class(&text).unwrap()), text);
    }

    #[test]
    fn word_literal_round_trip(seed in any::<u64>(), id in prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 7])) {
        let t = surface(id);
        let w = LetterSampler::new(t).word(&mut rng(seed), 8);
        let text = w.to_string();
        let parsed = parse_word(t, &text).unwrap();
        prop_assert_eq!(&parsed, &w);
        prop_assert_eq!(parsed.to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_a_homomorphism(seed in any::<u64>(), id in 1i64..=7) {
        let t = surface(id);
        let sampler = LetterSampler::new(t);
        let mut r = rng(seed);
        let w1 = sampler.word(&mut r, 6);
        let w2 = sampler.word(&mut r, 6);
        let joined = w1.concat(&w2).unwrap();
        prop_assert_eq!(joined.compose(), w1.compose().then(&w2.compose()));
        prop_assert_eq!(w1.inverse().compose(), w1.compose().inverse());
        prop_assert!(is_isometry(joined.compose().matrix()));
    }

    #[test]
    fn delta_preservation_is_closed_under_products(seed in any::<u64>(), id in 1i64..=7) {
        let t = surface(id);
        let sampler = LetterSampler::new(t);
        let mut r = rng(seed);
        for model in enumerate_admissible_models(t) {
            let candidates: Vec<Mat4> = UIsometry::ALL
                .iter()
                .map(|&psi| sampler.word(&mut r, 3).compose().then(&block(psi)).into_matrix())
                .collect();
            for m1 in &candidates {
                for m2 in &candidates {
                    if preserves_delta(m1, &model).unwrap() && preserves_delta(m2, &model).unwrap() {
                        prop_assert!(preserves_delta(&(m1 * m2), &model).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn delta_is_a_subgroup(id in 1i64..=7, coeffs in prop::collection::vec(-20i64..=20, 8)) {
        let t = surface(id);
        for model in enumerate_admissible_models(t) {
            let basis = delta_basis(&model);
            let combo = |cs: &[i64]| {
                basis.iter().zip(cs).fold(NumClass::zero(), |acc, (b, &c)| &acc + &(&BigInt::from(c) * b))
            };
            let (v, w) = (combo(&coeffs[..4]), combo(&coeffs[4..]));
            prop_assert!(in_delta(&model, &v) && in_delta(&model, &w));
            prop_assert!(in_delta(&model, &(&v + &w)));
            prop_assert!(in_delta(&model, &(&v - &w)));
        }
    }

    #[test]
    fn relative_transforms_act_on_rank_and_fibre_degree(
        id in 1i64..=7,
        pick in any::<prop::sample::Index>(),
        a in coords(),
    ) {
        let t = surface(id);
        let p = t.profile();
        let v = class(a.0, a.1, a.2, a.3);
        let (k, n) = (BigInt::from(p.k), BigInt::from(p.n));
        let fma = sl2_matrices(6, i64::from(p.lambda_pa));
        let fmb = sl2_matrices(6, i64::from(p.lambda_pb));
        let (c, aa, d, b) = fma[pick.index(fma.len())];
        let m = Sl2::from_i64(c, aa, d, b).unwrap();
        let image = letter_action(&GeneratorLetter::rel_fm_a(t, m.clone()).unwrap()).apply(&v);
        prop_assert_eq!((image.r.clone(), &k * &image.d.x), m.apply(&v.r, &(&k * &v.d.x)));
        let (c, aa, d, b) = fmb[pick.index(fmb.len())];
        let m = Sl2::from_i64(c, aa, d, b).unwrap();
        let image = letter_action(&GeneratorLetter::rel_fm_b(t, m.clone()).unwrap()).apply(&v);
        prop_assert_eq!((image.r.clone(), &n * &image.d.y), m.apply(&v.r, &(&n * &v.d.y)));
    }
}

#[test]
fn bounded_letters_are_isometries() {
    for t in SurfaceType::all() {
        let p = t.profile();
        for (lambda, along_a) in [(p.lambda_pa, true), (p.lambda_pb, false)] {
            for (c, a, d, b) in sl2_matrices(10, i64::from(lambda)) {
                let m = Sl2::from_i64(c, a, d, b).unwrap();
                let l = if along_a {
                    GeneratorLetter::rel_fm_a(t, m)
                } else {
                    GeneratorLetter::rel_fm_b(t, m)
                }
                .unwrap();
                assert!(is_isometry(letter_action(&l).matrix()), "{l} on type {t}");
            }
        }
    }
}

#[test]
fn line_bundle_classes_are_isotropic() {
    for x in -50..=50 {
        for y in -50..=50 {
            assert!(is_isotropic(&line_bundle_class(&DivisorClass::from_i64(x, y))));
        }
    }
}
