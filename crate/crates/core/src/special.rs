//! The sublattice `Δ ⊆ N(S)` of special classes.
//!
//! `Δ = nZ ⊕ L ⊕ Z`, where the divisor part `L` sits between `⟨A, B⟩` and
//! `Num(S)`. `L` is not pinned down by the surface type alone (types 2 and
//! 4 leave a choice), so a [`DeltaModel`] carries it explicitly as a 2×2
//! Hermite normal form and [`enumerate_admissible_models`] lists every
//! choice compatible with the known membership constraints:
//!
//! * `A, B ∈ L`;
//! * no proper fraction of `A` lies in `L`;
//! * for non-split types, no proper fraction of `B` lies in `L`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, NumClass, SurfaceType};

/// Column Hermite normal form `[[a, b], [0, d]]` with `a, d > 0` and
/// `0 <= b < a`. The columns `(a, 0)` and `(b, d)` generate `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hnf2 {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl Hnf2 {
    pub fn new(a: i64, b: i64, d: i64) -> Option<Self> {
        (a > 0 && d > 0 && (0..a).contains(&b)).then_some(Hnf2 { a, b, d })
    }

    /// HNF of the lattice spanned by `(n, 0)`, `(0, k)` and `extra`.
    pub fn span(n: i64, k: i64, extra: &[(i64, i64)]) -> Self {
        let (mut a, mut b, mut d) = (n, 0i64, k);
        for &(x, y) in extra {
            // Merge (x, y) into the second column by a gcd step on the
            // y-coordinates; the leftover y-free combination joins the first.
            let e = d.extended_gcd(&y);
            let g = e.gcd;
            let new_b = e.x * b + e.y * x;
            let kernel_x = (y / g) * b - (d / g) * x;
            a = a.gcd(&kernel_x);
            b = new_b;
            d = g;
            b = b.mod_floor(&a);
        }
        Hnf2 { a, b, d }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [0, self.d]]
    }

    pub fn columns(&self) -> [DivisorClass; 2] {
        [
            DivisorClass::from_i64(self.a, 0),
            DivisorClass::from_i64(self.b, self.d),
        ]
    }

    /// Index of `L` in `Z²`.
    pub fn index(&self) -> i64 {
        self.a * self.d
    }

    /// Solves `t·(b, d) + u·(a, 0) = (x, y)` over the integers.
    pub fn contains(&self, dc: &DivisorClass) -> bool {
        let (a, b, d) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.d));
        let (t, rem) = dc.y.div_rem(&d);
        if !rem.is_zero() {
            return false;
        }
        (&dc.x - t * b).is_multiple_of(&a)
    }
}

impl fmt::Display for Hnf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[0,{}]]", self.a, self.b, self.d)
    }
}

/// A model of `Δ` for one surface type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeltaModel {
    surface: SurfaceType,
    l_div: Hnf2,
}

impl DeltaModel {
    /// Wraps an arbitrary HNF without checking admissibility; see
    /// [`DeltaModel::check_admissible`].
    pub fn from_hnf(surface: SurfaceType, l_div: Hnf2) -> Self {
        DeltaModel { surface, l_div }
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn l_div(&self) -> Hnf2 {
        self.l_div
    }

    fn n(&self) -> i64 {
        i64::from(self.surface.profile().n)
    }

    fn k(&self) -> i64 {
        i64::from(self.surface.profile().k)
    }

    /// Checks every membership constraint directly against `contains`,
    /// independently of how the model was produced.
    pub fn check_admissible(&self) -> Result<()> {
        let p = self.surface.profile();
        let fail = |why: &str| Err(Error::InadmissibleModel(why.to_string()));
        if !self.l_div.contains(&p.class_a()) {
            return fail("A is not in L");
        }
        if !self.l_div.contains(&p.class_b()) {
            return fail("B is not in L");
        }
        if (1..self.n()).any(|t| self.l_div.contains(&DivisorClass::from_i64(t, 0))) {
            return fail("L contains a proper fraction of A");
        }
        if !p.is_split() && (1..self.k()).any(|t| self.l_div.contains(&DivisorClass::from_i64(0, t))) {
            return fail("L contains a proper fraction of B");
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    /// Index of `Δ` in `N(S)`.
    pub fn index_in_lattice(&self) -> i64 {
        self.n() * self.l_div.index()
    }

    pub fn rank_condition(&self, v: &NumClass) -> bool {
        v.r.is_multiple_of(&BigInt::from(self.n()))
    }

    pub fn divisor_condition(&self, v: &NumClass) -> bool {
        self.l_div.contains(&v.d)
    }
}

/// The minimal model `L = ⟨A, B⟩`.
pub fn default_delta(t: SurfaceType) -> DeltaModel {
    let p = t.profile();
    DeltaModel::from_hnf(t, Hnf2::span(i64::from(p.n), i64::from(p.k), &[]))
}

/// Every admissible model, in canonical order: ascending index of `L` over
/// `⟨A, B⟩` (so the default model comes first), then ascending `b`.
pub fn enumerate_admissible_models(t: SurfaceType) -> Vec<DeltaModel> {
    let p = t.profile();
    let (n, k) = (i64::from(p.n), i64::from(p.k));
    let mut models = Vec::new();
    // Overlattices of ⟨(n,0),(0,k)⟩ have HNF with a | n and d | k; the
    // first admissibility constraint then forces a = n.
    let a = n;
    for d in (1..=k).filter(|d| k % d == 0) {
        for b in 0..a {
            if ((k / d) * b) % a != 0 {
                continue;
            }
            let model = DeltaModel::from_hnf(t, Hnf2 { a, b, d });
            if model.is_admissible() {
                models.push(model);
            }
        }
    }
    models.sort_by_key(|m| (-m.l_div.index(), m.l_div.b));
    models
}

pub fn in_delta(m: &DeltaModel, v: &NumClass) -> bool {
    m.rank_condition(v) && m.divisor_condition(v)
}

/// Free basis `{n·P0, ℓ1, ℓ2, P4}` of `Δ`.
pub fn delta_basis(m: &DeltaModel) -> [NumClass; 4] {
    let [l1, l2] = m.l_div.columns();
    [
        NumClass::from_i64(m.n(), 0, 0, 0),
        NumClass::divisor(l1),
        NumClass::divisor(l2),
        NumClass::p4(),
    ]
}
