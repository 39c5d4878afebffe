//! Truncated Barsotti–Tate groups of height `h` and dimension `d` through
//! `GL_h`: Weyl group `S_h`, parabolic type `I = S \ {s_d}`, everything split.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsystem::CartanMatrix;
use crate::subset::SimpleSet;
use crate::weyl::CosetMode;
use crate::zetafn::ZetaProduct;
use crate::zipstrata::{Stratum, ZipDatum, ZipDatumSpec, ZipError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BtError {
    #[error("height must be positive")]
    ZeroHeight,
    #[error("dimension {d} exceeds height {h}")]
    DimensionTooLarge { h: usize, d: usize },
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("level must be positive")]
    ZeroLevel,
    #[error(transparent)]
    Zip(#[from] ZipError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BTParams {
    pub h: usize,
    pub d: usize,
    pub p: u64,
    /// The level. The strata do not depend on it; it is only echoed.
    pub n: u32,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl BTParams {
    pub fn new(h: usize, d: usize, p: u64, n: u32) -> Result<BTParams, BtError> {
        let params = BTParams { h, d, p, n };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), BtError> {
        if self.h == 0 {
            return Err(BtError::ZeroHeight);
        }
        if self.d > self.h {
            return Err(BtError::DimensionTooLarge { h: self.h, d: self.d });
        }
        if !is_prime(self.p) {
            return Err(BtError::NotPrime(self.p));
        }
        if self.n == 0 {
            return Err(BtError::ZeroLevel);
        }
        Ok(())
    }

    /// `I = S \ {s_d}` as a 0-based subset of the `h − 1` simple roots, or
    /// all of `S` when `d ∈ {0, h}`.
    pub fn parabolic(&self) -> SimpleSet {
        let mut i = SimpleSet::full(self.h - 1);
        if (1..self.h).contains(&self.d) {
            i.remove(self.d - 1);
        }
        i
    }

    pub fn dimension_of_flag(&self) -> usize {
        self.d * (self.h - self.d)
    }
}

fn gl_cartan(h: usize) -> CartanMatrix {
    CartanMatrix::of_type(&format!("A{}", h - 1)).expect("type A is always valid")
}

pub fn bt_spec(params: &BTParams) -> ZipDatumSpec {
    ZipDatumSpec::split(&gl_cartan(params.h), params.p, params.parabolic())
}

pub fn bt_datum(params: &BTParams) -> Result<ZipDatum, BtError> {
    params.validate()?;
    Ok(ZipDatum::new(bt_spec(params))?)
}

pub fn bt_strata(params: &BTParams) -> Result<Vec<Stratum>, BtError> {
    let strata = bt_datum(params)?.classify()?;
    debug_assert!(strata.iter().all(|s| s.f == 1 && s.a + s.ell == params.dimension_of_flag()));
    Ok(strata)
}

pub fn bt_zeta(params: &BTParams) -> Result<ZetaProduct, BtError> {
    Ok(ZetaProduct::from_strata(&bt_strata(params)?))
}

/// `|^I W|` for `GL_h` and type `d`, counted from the coset table.
pub fn kraft_count(h: usize, d: usize) -> Result<usize, BtError> {
    let datum = bt_datum(&BTParams::new(h, d, 2, 1)?)?;
    let weyl = datum.group().weyl();
    Ok(weyl.coset_min_indices(CosetMode::Left(datum.parabolic())).len())
}
