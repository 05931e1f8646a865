//! Quadratic and bilinear forms over fields of characteristic 2.

pub mod field;
pub mod form;
pub mod normal;
pub mod pfister;
pub mod syntax;
pub mod witt;

pub use field::{field_build, Field2, FormalField, Gf2k, Scalar};
pub use form::{tensor_bilinear, BilinDiag, BinaryBlock, QForm};
pub use normal::{block_normalize, block_normalize_with_basis, renormalize, UtMatrix};
pub use pfister::{pfister_build, pfister_expand, PfisterForm, ScaledPfister};
pub use syntax::{parse_element, parse_form};
pub use witt::{
    arf, classify_form, equivalent_ff, find_isotropic, invariants, is_isotropic, witt_decompose,
    FormClass, FormInvariants, WittDecomposition,
};
