//! Exact invariants of the numerical Grothendieck group of bielliptic
//! surfaces: the Euler pairing, the special sublattice `Δ`, the index of the
//! autoequivalence image in `O_Δ(N(S))`, and factorization of isometries of
//! split surfaces into shifts, twists and relative Fourier–Mukai transforms.

pub mod cli;
pub mod error;
pub mod factor;
pub mod isometry;
pub mod lattice;
pub mod letters;
pub mod special;

pub use error::{Error, Result};
pub use factor::{
    decompose, factor_point_image, factor_point_image_traced, is_in_image, verify_word, Claim,
    Decomposition, ImageMembership,
};
pub use isometry::{
    block, delta_preserving_blocks, image_index, is_isometry, preserves_delta, Mat4, NumIsometry,
    UIsometry,
};
pub use lattice::{
    euler_pairing, intersect, is_isotropic, is_primitive, line_bundle_class, surface_profile,
    DivisorClass, NumClass, SurfaceProfile, SurfaceType,
};
pub use letters::{compose, letter_action, GeneratorLetter, GeneratorWord, LetterKind, Sl2, WordLetter};
pub use special::{default_delta, delta_basis, enumerate_admissible_models, in_delta, DeltaModel, Hnf2};
