//! Brute-force census of level-1 Dieudonné modules over small finite
//! fields, used as an independent check of the predicted point counts.
//!
//! A module of height `h` and dimension `d` over `F_q` is a pair of
//! matrices `(A, B)`: `F(x) = A x^{[p]}` and `V(x) = B x^{[1/p]}`, where
//! `x^{[p]}` raises each coordinate to the `p`-th power. Isomorphisms are
//! `g ∈ GL_h(F_q)` with `g F = F' g` and `g V = V' g`.

mod census;
mod field;
mod matrix;

use num_traits::Zero;
use thiserror::Error;

pub use census::{
    enumerate_census, enumerate_objects, general_linear_group, search_space, CensusClass, CensusOptions,
    CensusReport, DieudonneModule1, GroupElement, DEFAULT_SEARCH_BOUND,
};
pub use field::{FieldError, FqField, DEFAULT_FIELD_BOUND};
pub use matrix::Matrix;

use crate::btgl::{bt_strata, BTParams, BtError};
use crate::zetafn::{format_rational, rational_pow, ExactRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Bt(#[from] BtError),
    #[error("need 0 <= d <= h and h >= 1 (got h = {h}, d = {d})")]
    BadDimensions { h: usize, d: usize },
    #[error("search space q^(2h^2) for q = {q}, h = {h} is {size}, above the bound {bound}")]
    SearchSpaceTooLarge { q: usize, h: usize, size: String, bound: u128 },
    #[error("the group action leaves the set of modules")]
    ActionLeaks,
    #[error(
        "orbit-stabilizer failed: |Aut| = {automorphisms}, orbit = {orbit_size}, |GL_h| = {group_order}"
    )]
    OrbitStabilizer { automorphisms: u64, orbit_size: u64, group_order: u64 },
    #[error("census gives {census} but the strata predict {formula}")]
    MismatchDetected { census: String, formula: String },
}

/// Both sides of the comparison for `BT^{h,d}` over `F_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub params: BTParams,
    pub k: u32,
    pub census: CensusReport,
    pub census_value: ExactRational,
    /// `Σ_ξ p^{−a(ξ)k}`.
    pub formula_value: ExactRational,
    /// Number of strata `ξ` with `f(ξ) | k`.
    pub rational_strata: usize,
    pub pass: bool,
}

impl CrosscheckReport {
    pub fn into_result(self) -> Result<CrosscheckReport, OracleError> {
        if self.pass {
            Ok(self)
        } else {
            Err(OracleError::MismatchDetected {
                census: format_rational(&self.census_value),
                formula: format_rational(&self.formula_value),
            })
        }
    }
}

/// Runs the census over `F_{p^k}` and compares it with the strata.
pub fn crosscheck_report(params: &BTParams, k: u32, opts: CensusOptions) -> Result<CrosscheckReport, OracleError> {
    let field = FqField::build_field(params.p, k)?;
    crosscheck_with_field(params, &field, opts)
}

pub fn crosscheck_with_field(
    params: &BTParams,
    field: &FqField,
    opts: CensusOptions,
) -> Result<CrosscheckReport, OracleError> {
    params.validate()?;
    if field.p() != params.p {
        return Err(OracleError::Field(FieldError::NotPrime(params.p)));
    }
    let k = field.k();
    let strata = bt_strata(params)?;
    let p = ExactRational::from_integer(params.p.into());
    let rational: Vec<_> = strata.iter().filter(|s| (k as usize).is_multiple_of(s.f)).collect();
    let formula_value = rational
        .iter()
        .map(|s| ExactRational::from_integer((s.f as u64).into()) * rational_pow(&p, -(s.a as i64) * k as i64))
        .fold(ExactRational::zero(), |acc, x| acc + x);
    let census = enumerate_census(field, params.h, params.d, opts)?;
    let census_value = census.groupoid_cardinality.clone();
    let pass = census_value == formula_value && census.classes.len() >= rational.len();
    Ok(CrosscheckReport {
        params: *params,
        k,
        census,
        census_value,
        formula_value,
        rational_strata: rational.len(),
        pass,
    })
}

/// As [`crosscheck_report`], turning a mismatch into an error.
pub fn crosscheck(params: &BTParams, k: u32, opts: CensusOptions) -> Result<CrosscheckReport, OracleError> {
    crosscheck_report(params, k, opts)?.into_result()
}
