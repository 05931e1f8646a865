//! Exact computations around the essential dimension of spin groups in
//! characteristic 2.
//!
//! - [`abelian`]: finitely generated abelian groups via Smith normal form.
//! - [`spinlat`]: character lattices of spin tori and the sign-change action.
//! - [`repdim`]: dimension bounds for representations by orbit counting.
//! - [`qform2`]: quadratic and Pfister forms over `F_{2^k}`.
//! - [`invariants`]: formal symbols and the degree 4 and 5 invariants.
//! - [`edcalc`]: the essential dimension table with derivation traces.
//! - [`cli`]: the command line front end.

pub mod abelian;
pub mod cli;
pub mod edcalc;
mod error;
pub mod invariants;
pub mod label;
pub mod qform2;
pub mod repdim;
pub mod spinlat;

pub use error::{Error, Result};
