//! Surface types, the divisor lattice `Num(S)` and the numerical
//! Grothendieck group `N(S) = Z ⊕ Num(S) ⊕ Z` with its Euler pairing.
//!
//! `Num(S)` is a hyperbolic plane. We fix the ordered basis
//! `e1 = A/n`, `e2 = B/k`, where `A` and `B` are the fibre classes of the
//! two elliptic fibrations, so every class has integer coordinates and the
//! intersection form is `[[0,1],[1,0]]`. Classes of `N(S)` are written
//! `(r, x, y, s)` in the ordered basis `(P0, E1, E2, P4)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One of the seven Bagnera–De Franchis families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceType(u8);

impl SurfaceType {
    pub fn new(id: i64) -> Result<Self> {
        if (1..=7).contains(&id) {
            Ok(SurfaceType(id as u8))
        } else {
            Err(Error::InvalidSurfaceType(id))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// Types 1, 3, 5 and 7 are split.
    pub fn is_split(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn all() -> impl Iterator<Item = SurfaceType> {
        (1..=7).map(SurfaceType)
    }

    pub fn profile(self) -> SurfaceProfile {
        surface_profile(self)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Integer data of a surface type.
///
/// `n` is the degree of the canonical cover (the order of the canonical
/// bundle), `k` the order of the translation subgroup, and the two lambdas
/// are the minimal positive fibre degrees of the fibrations `p_A` (fibre
/// class `B`) and `p_B` (fibre class `A`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceProfile {
    pub surface: SurfaceType,
    pub n: u32,
    pub k: u32,
    pub g_order: u32,
    pub lambda_pa: u32,
    pub lambda_pb: u32,
    pub gamma_desc: &'static str,
    pub g_desc: &'static str,
    pub action_desc: &'static str,
}

// (n, k, lambda_pa, lambda_pb, Gamma, G, action of G on B)
const PROFILES: [(u32, u32, u32, u32, &str, &str, &str); 7] = [
    (2, 1, 1, 2, "arbitrary", "Z/2", "b -> -b"),
    (2, 2, 2, 2, "arbitrary", "Z/2 + Z/2", "b -> -b, b -> b + beta (2 beta = 0)"),
    (3, 1, 1, 3, "Z + Z omega", "Z/3", "b -> omega b"),
    (3, 3, 3, 3, "Z + Z omega", "Z/3 + Z/3", "b -> omega b, b -> b + beta (omega beta = beta)"),
    (4, 1, 1, 4, "Z + Z i", "Z/4", "b -> i b"),
    (4, 2, 2, 4, "Z + Z i", "Z/4 + Z/2", "b -> i b, b -> b + beta (i beta = beta)"),
    (6, 1, 1, 6, "Z + Z omega", "Z/6", "b -> -omega b"),
];

pub fn surface_profile(t: SurfaceType) -> SurfaceProfile {
    let (n, k, lambda_pa, lambda_pb, gamma_desc, g_desc, action_desc) =
        PROFILES[usize::from(t.0 - 1)];
    SurfaceProfile {
        surface: t,
        n,
        k,
        g_order: n * k,
        lambda_pa,
        lambda_pb,
        gamma_desc,
        g_desc,
        action_desc,
    }
}

impl SurfaceProfile {
    pub fn is_split(&self) -> bool {
        self.surface.is_split()
    }

    /// Fibre class of `p_B`, `A = n·e1`.
    pub fn class_a(&self) -> DivisorClass {
        DivisorClass::from_i64(i64::from(self.n), 0)
    }

    /// Fibre class of `p_A`, `B = k·e2`.
    pub fn class_b(&self) -> DivisorClass {
        DivisorClass::from_i64(0, i64::from(self.k))
    }
}

/// A divisor class `x·e1 + y·e2` in `Num(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DivisorClass {
    pub x: BigInt,
    pub y: BigInt,
}

impl DivisorClass {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        DivisorClass { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        DivisorClass::new(x.into(), y.into())
    }

    pub fn zero() -> Self {
        DivisorClass::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn self_intersection(&self) -> BigInt {
        intersect(self, self)
    }
}

/// Intersection product on the hyperbolic plane: `x·y' + x'·y`.
pub fn intersect(d: &DivisorClass, d2: &DivisorClass) -> BigInt {
    &d.x * &d2.y + &d2.x * &d.y
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-&self.x, -&self.y)
    }
}

/// A class `(r, D, s)` of `N(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NumClass {
    pub r: BigInt,
    pub d: DivisorClass,
    pub s: BigInt,
}

impl NumClass {
    pub fn new(r: BigInt, d: DivisorClass, s: BigInt) -> Self {
        NumClass { r, d, s }
    }

    pub fn from_coords([r, x, y, s]: [BigInt; 4]) -> Self {
        NumClass::new(r, DivisorClass::new(x, y), s)
    }

    pub fn from_i64(r: i64, x: i64, y: i64, s: i64) -> Self {
        NumClass::from_coords([r.into(), x.into(), y.into(), s.into()])
    }

    pub fn coords(&self) -> [BigInt; 4] {
        [
            self.r.clone(),
            self.d.x.clone(),
            self.d.y.clone(),
            self.s.clone(),
        ]
    }

    pub fn zero() -> Self {
        NumClass::default()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.d.is_zero() && self.s.is_zero()
    }

    /// `(1, 0, 0)`, the class of the structure sheaf.
    pub fn p0() -> Self {
        NumClass::from_i64(1, 0, 0, 0)
    }

    pub fn e1() -> Self {
        NumClass::from_i64(0, 1, 0, 0)
    }

    pub fn e2() -> Self {
        NumClass::from_i64(0, 0, 1, 0)
    }

    /// `(0, 0, 1)`, the class of a point.
    pub fn p4() -> Self {
        NumClass::from_i64(0, 0, 0, 1)
    }

    pub fn basis() -> [NumClass; 4] {
        [Self::p0(), Self::e1(), Self::e2(), Self::p4()]
    }

    /// `(0, D, 0)`.
    pub fn divisor(d: DivisorClass) -> Self {
        NumClass::new(BigInt::zero(), d, BigInt::zero())
    }

    /// gcd of all four coordinates (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.coords()
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.r, self.d.x, self.d.y, self.s)
    }
}

impl Add for &NumClass {
    type Output = NumClass;
    fn add(self, rhs: &NumClass) -> NumClass {
        NumClass::new(&self.r + &rhs.r, &self.d + &rhs.d, &self.s + &rhs.s)
    }
}

impl Sub for &NumClass {
    type Output = NumClass;
    fn sub(self, rhs: &NumClass) -> NumClass {
        NumClass::new(&self.r - &rhs.r, &self.d - &rhs.d, &self.s - &rhs.s)
    }
}

impl Neg for &NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass::new(-&self.r, -&self.d, -&self.s)
    }
}

impl Mul<&NumClass> for &BigInt {
    type Output = NumClass;
    fn mul(self, rhs: &NumClass) -> NumClass {
        NumClass::new(
            self * &rhs.r,
            DivisorClass::new(self * &rhs.d.x, self * &rhs.d.y),
            self * &rhs.s,
        )
    }
}

/// The Euler pairing `χ(v, w) = r·s' + r'·s − D·D'`.
///
/// In the fixed basis the form does not depend on the surface type, so
/// classes carry no type tag.
pub fn euler_pairing(v: &NumClass, w: &NumClass) -> BigInt {
    &v.r * &w.s + &w.r * &v.s - intersect(&v.d, &w.d)
}

/// Gram matrix of the Euler pairing in the basis `(P0, E1, E2, P4)`.
pub const EULER_GRAM: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]];

pub fn is_isotropic(v: &NumClass) -> bool {
    &v.r * &v.s == &v.d.x * &v.d.y
}

/// A nonzero class is primitive when its coordinates are coprime; since the
/// Euler form is unimodular this is the same as having a partner `v'` with
/// `χ(v, v') = 1`.
pub fn is_primitive(v: &NumClass) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(v.content().is_one())
}

/// Returns some `w` with `χ(v, w) = 1` for a primitive class `v`.
pub fn unimodular_partner(v: &NumClass) -> Result<Option<NumClass>> {
    if !is_primitive(v)? {
        return Ok(None);
    }
    // χ(v, ·) has coefficients (s, -y, -x, r) against (r', x', y', s').
    let coeffs = [v.s.clone(), -&v.d.y, -&v.d.x, v.r.clone()];
    let mut acc = BigInt::zero();
    let mut w = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    // Fold Bezout coefficients coordinate by coordinate.
    for (i, c) in coeffs.iter().enumerate() {
        let e = acc.extended_gcd(c);
        for wj in w.iter_mut().take(i) {
            *wj *= &e.x;
        }
        w[i] = e.y;
        acc = e.gcd;
    }
    if acc.is_negative() {
        w.iter_mut().for_each(|wj| *wj = -&*wj);
    }
    Ok(Some(NumClass::from_coords(w)))
}

/// The class `(1, M, M²/2)` of a line bundle with first Chern class `M`.
pub fn line_bundle_class(m: &DivisorClass) -> NumClass {
    NumClass::new(BigInt::one(), m.clone(), &m.x * &m.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(id: i64) -> SurfaceType {
        SurfaceType::new(id).unwrap()
    }

    #[test]
    fn profile_table() {
        let nk: Vec<(u32, u32)> = SurfaceType::all()
            .map(|s| (s.profile().n, s.profile().k))
            .collect();
        assert_eq!(nk, vec![(2, 1), (2, 2), (3, 1), (3, 3), (4, 1), (4, 2), (6, 1)]);
        let p1 = t(1).profile();
        assert_eq!((p1.g_order, p1.is_split()), (2, true));
        let p2 = t(2).profile();
        assert_eq!((p2.n, p2.k, p2.g_order, p2.is_split()), (2, 2, 4, false));
        let p6 = t(6).profile();
        assert_eq!((p6.lambda_pa, p6.lambda_pb), (2, 4));
        for s in SurfaceType::all() {
            let p = s.profile();
            assert_eq!(p.is_split(), p.k == 1);
            assert_eq!(p.g_order, p.n * p.k);
        }
    }

    #[test]
    fn invalid_type() {
        assert_eq!(SurfaceType::new(0), Err(Error::InvalidSurfaceType(0)));
        assert_eq!(SurfaceType::new(8), Err(Error::InvalidSurfaceType(8)));
        assert!(SurfaceType::new(-3).is_err());
    }

    #[test]
    fn lambda_matches_brute_force_minimum() {
        for s in SurfaceType::all() {
            let p = s.profile();
            let (a, b) = (p.class_a(), p.class_b());
            let mut min_b = None::<BigInt>;
            let mut min_a = None::<BigInt>;
            for x in -100i64..=100 {
                for y in -100i64..=100 {
                    let d = DivisorClass::from_i64(x, y);
                    let fb = intersect(&b, &d);
                    if fb.is_positive() && min_b.as_ref().is_none_or(|m| &fb < m) {
                        min_b = Some(fb);
                    }
                    let fa = intersect(&a, &d);
                    if fa.is_positive() && min_a.as_ref().is_none_or(|m| &fa < m) {
                        min_a = Some(fa);
                    }
                }
            }
            assert_eq!(min_b.unwrap(), BigInt::from(p.lambda_pa), "type {s}");
            assert_eq!(min_a.unwrap(), BigInt::from(p.lambda_pb), "type {s}");
            assert_eq!((p.lambda_pa, p.lambda_pb), (p.k, p.n));
        }
    }

    #[test]
    fn intersections() {
        let e1 = DivisorClass::from_i64(1, 0);
        let e2 = DivisorClass::from_i64(0, 1);
        assert_eq!(intersect(&e1, &e2), BigInt::one());
        for s in SurfaceType::all() {
            let p = s.profile();
            assert_eq!(intersect(&p.class_a(), &p.class_b()), BigInt::from(p.n * p.k));
            assert!(intersect(&p.class_a(), &p.class_a()).is_zero());
        }
    }

    #[test]
    fn euler_pairing_examples() {
        assert_eq!(euler_pairing(&NumClass::p0(), &NumClass::p4()), BigInt::one());
        assert_eq!(euler_pairing(&NumClass::e1(), &NumClass::e2()), BigInt::from(-1));
        // (0, A, 1) against (1, 0, 0) on type 1
        assert_eq!(
            euler_pairing(&NumClass::from_i64(0, 2, 0, 1), &NumClass::p0()),
            BigInt::one()
        );
    }

    #[test]
    fn isotropy_and_primitivity() {
        assert!(is_isotropic(&NumClass::p4()));
        assert!(is_isotropic(&NumClass::from_i64(2, 2, 1, 1)));
        assert!(!is_isotropic(&NumClass::from_i64(1, 0, 0, 1)));
        assert!(is_primitive(&NumClass::p4()).unwrap());
        assert!(!is_primitive(&NumClass::from_i64(0, 2, 0, 0)).unwrap());
        assert!(is_primitive(&NumClass::from_i64(2, 2, 1, 1)).unwrap());
        assert_eq!(is_primitive(&NumClass::zero()), Err(Error::ZeroClass));
    }

    #[test]
    fn partner_exists_exactly_for_primitive() {
        for v in [
            NumClass::from_i64(2, 2, 1, 1),
            NumClass::from_i64(6, -4, 9, 15),
            NumClass::from_i64(0, 0, 0, -1),
            NumClass::from_i64(12, 18, 0, 0),
        ] {
            match unimodular_partner(&v).unwrap() {
                Some(w) => assert_eq!(euler_pairing(&v, &w), BigInt::one()),
                None => assert!(v.content() > BigInt::one()),
            }
        }
        assert!(unimodular_partner(&NumClass::from_i64(12, 18, 0, 0)).unwrap().is_none());
    }

    #[test]
    fn line_bundles() {
        assert_eq!(line_bundle_class(&DivisorClass::zero()), NumClass::p0());
        assert_eq!(
            line_bundle_class(&DivisorClass::from_i64(1, 1)),
            NumClass::from_i64(1, 1, 1, 1)
        );
        assert_eq!(
            line_bundle_class(&t(3).profile().class_a()),
            NumClass::from_i64(1, 3, 0, 0)
        );
        for x in -50..=50 {
            for y in -50..=50 {
                let m = DivisorClass::from_i64(x, y);
                assert!(is_isotropic(&line_bundle_class(&m)));
                assert!(m.self_intersection().is_even());
            }
        }
    }
}
