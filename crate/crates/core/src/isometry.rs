//! Isometries of `N(S)`, the Klein four-group `O(U)` acting on the divisor
//! part, and the index of the autoequivalence image in `O_Δ(N(S))`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{NumClass, EULER_GRAM};
use crate::special::{delta_basis, in_delta, DeltaModel};

/// A 4×4 integer matrix acting on column vectors `(r, x, y, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat4([[BigInt; 4]; 4]);

impl Mat4 {
    pub fn new(rows: [[BigInt; 4]; 4]) -> Self {
        Mat4(rows)
    }

    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|row| row.map(BigInt::from)))
    }

    /// Row-major entries.
    pub fn from_row_major(entries: &[BigInt]) -> Option<Self> {
        (entries.len() == 16)
            .then(|| Mat4(std::array::from_fn(|i| std::array::from_fn(|j| entries[4 * i + j].clone()))))
    }

    pub fn row_major(&self) -> Vec<BigInt> {
        self.0.iter().flatten().cloned().collect()
    }

    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() })
        }))
    }

    pub fn gram() -> Self {
        Mat4::from_i64(EULER_GRAM)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.0[i][j]
    }

    pub fn rows(&self) -> &[[BigInt; 4]; 4] {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn neg(&self) -> Self {
        Mat4(self.0.clone().map(|row| row.map(|e| -e)))
    }

    pub fn apply(&self, v: &NumClass) -> NumClass {
        let c = v.coords();
        NumClass::from_coords(std::array::from_fn(|i| {
            self.0[i].iter().zip(&c).map(|(m, x)| m * x).sum()
        }))
    }

    /// Image of the `j`-th basis vector.
    pub fn column(&self, j: usize) -> NumClass {
        NumClass::from_coords(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    fn minor3(&self, skip_row: usize, skip_col: usize) -> BigInt {
        let rows: Vec<usize> = (0..4).filter(|&i| i != skip_row).collect();
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip_col).collect();
        let m = |i: usize, j: usize| &self.0[rows[i]][cols[j]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }

    fn cofactor(&self, i: usize, j: usize) -> BigInt {
        let m = self.minor3(i, j);
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }

    pub fn determinant(&self) -> BigInt {
        (0..4).map(|j| &self.0[0][j] * self.cofactor(0, j)).sum()
    }

    /// Exact inverse over the integers, if the determinant is ±1.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return None;
        }
        // adj(M)[i][j] = cofactor(j, i); det = ±1 so dividing is multiplying.
        Some(Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.cofactor(j, i) * &det)
        })))
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|l| &self.0[i][l] * &rhs.0[l][j]).sum())
        }))
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// `mᵀ G m = G` for the Euler Gram matrix `G`.
pub fn is_isometry(m: &Mat4) -> bool {
    let g = Mat4::gram();
    &(&m.transpose() * &g) * m == g
}

/// An isometry of `(N(S), χ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumIsometry(Mat4);

impl NumIsometry {
    pub fn new(m: Mat4) -> Result<Self> {
        if is_isometry(&m) {
            Ok(NumIsometry(m))
        } else {
            Err(Error::NotAnIsometry)
        }
    }

    pub(crate) fn new_unchecked(m: Mat4) -> Self {
        NumIsometry(m)
    }

    pub fn identity() -> Self {
        NumIsometry(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    /// `G⁻¹ mᵀ G`; `G` is its own inverse.
    pub fn inverse(&self) -> Self {
        let g = Mat4::gram();
        NumIsometry(&(&g * &self.0.transpose()) * &g)
    }

    pub fn apply(&self, v: &NumClass) -> NumClass {
        self.0.apply(v)
    }

    pub fn then(&self, rhs: &NumIsometry) -> NumIsometry {
        NumIsometry(&self.0 * &rhs.0)
    }
}

impl Mul for &NumIsometry {
    type Output = NumIsometry;
    fn mul(self, rhs: &NumIsometry) -> NumIsometry {
        self.then(rhs)
    }
}

/// The four isometries of the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UIsometry {
    Id,
    /// `(x, y) ↦ (−x, −y)`
    Iota,
    /// `(x, y) ↦ (y, x)`
    Sigma,
    IotaSigma,
}

impl UIsometry {
    pub const ALL: [UIsometry; 4] = [UIsometry::Id, UIsometry::Iota, UIsometry::Sigma, UIsometry::IotaSigma];

    fn bits(self) -> (bool, bool) {
        match self {
            UIsometry::Id => (false, false),
            UIsometry::Iota => (true, false),
            UIsometry::Sigma => (false, true),
            UIsometry::IotaSigma => (true, true),
        }
    }

    fn from_bits(iota: bool, sigma: bool) -> Self {
        match (iota, sigma) {
            (false, false) => UIsometry::Id,
            (true, false) => UIsometry::Iota,
            (false, true) => UIsometry::Sigma,
            (true, true) => UIsometry::IotaSigma,
        }
    }

    pub fn matrix(self) -> [[i64; 2]; 2] {
        let (iota, sigma) = self.bits();
        let e = if iota { -1 } else { 1 };
        if sigma {
            [[0, e], [e, 0]]
        } else {
            [[e, 0], [0, e]]
        }
    }

    pub fn compose(self, other: UIsometry) -> UIsometry {
        let (i1, s1) = self.bits();
        let (i2, s2) = other.bits();
        UIsometry::from_bits(i1 ^ i2, s1 ^ s2)
    }

    pub fn tag(self) -> &'static str {
        match self {
            UIsometry::Id => "id",
            UIsometry::Iota => "iota",
            UIsometry::Sigma => "sigma",
            UIsometry::IotaSigma => "iota_sigma",
        }
    }

    /// Recovers `psi` from `block(psi)`.
    pub fn from_block(m: &Mat4) -> Option<UIsometry> {
        UIsometry::ALL.into_iter().find(|&psi| block(psi).matrix() == m)
    }
}

impl fmt::Display for UIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `id ⊕ psi ⊕ id` on `N(S)`.
pub fn block(psi: UIsometry) -> NumIsometry {
    let [[p, q], [u, w]] = psi.matrix();
    NumIsometry::new_unchecked(Mat4::from_i64([
        [1, 0, 0, 0],
        [0, p, q, 0],
        [0, u, w, 0],
        [0, 0, 0, 1],
    ]))
}

/// Whether `m(Δ) = Δ`, checked on a basis of `Δ` for both `m` and `m⁻¹`.
pub fn preserves_delta(m: &Mat4, model: &DeltaModel) -> Result<bool> {
    let iso = NumIsometry::new(m.clone())?;
    let inv = iso.inverse();
    let basis = delta_basis(model);
    Ok(basis
        .iter()
        .all(|b| in_delta(model, &iso.apply(b)) && in_delta(model, &inv.apply(b))))
}

/// The block isometries that preserve `Δ`, in `UIsometry::ALL` order.
pub fn delta_preserving_blocks(model: &DeltaModel) -> Vec<UIsometry> {
    UIsometry::ALL
        .into_iter()
        .filter(|&psi| {
            preserves_delta(block(psi).matrix(), model).expect("block isometries are isometries")
        })
        .collect()
}

/// Index of the autoequivalence image inside `O_Δ(N(S))`.
///
/// Every element of `O_Δ` is an image element times a block isometry
/// `id ⊕ psi ⊕ id`, and no non-identity block lies in the image, so the
/// index is the number of `Δ`-preserving blocks.
pub fn image_index(model: &DeltaModel) -> Result<usize> {
    model.check_admissible()?;
    Ok(delta_preserving_blocks(model).len())
}
