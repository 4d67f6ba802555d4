//! Exact computations for the admissible dual of the Drinfeld double of a
//! q-deformed compact Lie group, alongside the classical `q = 1` theory.
//!
//! The crate is organized bottom-up:
//!
//! - [`rootsys`]: Cartan data, the normalized form, positive roots, `ρ`.
//! - [`weyl`]: reflections, words, orbits, the dot action.
//! - [`weights`]: Freudenthal multiplicities, K-types, `sl₂` spin content.
//! - [`params`]: the parameter space `(P × X)/W` and its predicates.
//! - [`qnum`]: q-numbers with exact signs.
//! - [`unitarity`]: intertwiner determinants and unitarity verdicts.

pub mod error;
pub mod number;
pub mod params;
pub mod qnum;
pub mod rootsys;
pub mod unitarity;
pub mod weight;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use number::{ComplexScalar, HalfInt, Rat};
pub use params::{CategoryOParam, EmbeddingDirection, ParamPair};
pub use qnum::{QParam, QValue, Sign};
pub use rootsys::{build_root_system, CartanType, Root, RootSystem, Series};
pub use unitarity::{UnitarityVerdict, VerdictKind};
pub use weight::{ComplexWeight, Weight};
pub use weights::SpinMultiset;
pub use weyl::WeylWord;
