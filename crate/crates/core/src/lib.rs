//! Exact computation of the stratification and zeta function of stacks of
//! `Ĝ`-zips, and of truncated Barsotti–Tate groups through `GL_h`.
//!
//! The pipeline runs bottom-up:
//!
//! - [`rootsystem`]: root systems from Cartan matrices,
//! - [`weyl`]: the Weyl group, lengths and parabolic coset decompositions,
//! - [`extweyl`]: `Ŵ = W ⋊ Ω` and the extended length `ℓ_{I,J}`,
//! - [`zipstrata`]: the orbit set `Ξ`, its Galois orbits and the invariants
//!   `(a, f)`,
//! - [`zetafn`]: the zeta function as an exact product and power series,
//! - [`btgl`]: the specialization to `BT_n^{h,d}`,
//! - [`fforacle`]: an independent brute-force census of level-1 Dieudonné
//!   modules over small finite fields.

pub mod btgl;
pub mod exec;
pub mod extweyl;
pub mod fforacle;
pub mod rootsystem;
pub mod subset;
pub mod weyl;
pub mod zetafn;
pub mod zipstrata;

pub use exec::Execution;
pub use extweyl::{CanonicalDecomposition, ExtWeylElement, ExtWeylGroup, OmegaGroup, OmegaSpec};
pub use rootsystem::{CartanMatrix, Root, RootSystem};
pub use subset::SimpleSet;
pub use weyl::{CosetMode, WeylElement, WeylGroup};
pub use zetafn::{ExactRational, QLaurent, SeriesExpansion, ZetaProduct};
pub use zipstrata::{validate_spec, Stratum, ZipDatum, ZipDatumSpec};
