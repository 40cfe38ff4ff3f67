//! Exact computations for shift systems of simple Lie algebras: root data and
//! Weyl groups, the shift maps of the lattice constructions, truncated
//! q-series, multiplet characters and affine alcove reductions.

pub mod alcove;
pub mod characters;
pub mod error;
pub mod liealg;
pub mod qseries;
pub mod rational;
pub mod shift;

pub use error::{Error, Result};
pub use liealg::{RootSystem, Series, SimpleLieType, WeightVec, WeylElement, WeylGroup};
pub use qseries::QSeries;
pub use rational::Q;
pub use shift::{LambdaParam, ShiftCase, Variant};
