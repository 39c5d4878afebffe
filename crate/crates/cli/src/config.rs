//! Configuration files: a zip datum, a `BT^{h,d}` parameter set, or a
//! previously written output document whose strata table is reused.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use zipzeta::btgl::BTParams;
use zipzeta::extweyl::OmegaSpec;
use zipzeta::rootsystem::CartanMatrix;
use zipzeta::zipstrata::{FrobeniusSpec, ZipDatumSpec};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Config {
    Zip(ZipDatumSpec),
    Bt(BTParams),
    /// `(a, f)` of each stratum, read back from an output document.
    Strata { invariants: Vec<(u32, u32)>, q: Option<u64> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CartanInput {
    Type(String),
    Rows(Vec<Vec<i32>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZipConfig {
    #[serde(default)]
    schema: Option<u32>,
    #[serde(default)]
    name: Option<String>,
    cartan: CartanInput,
    #[serde(default)]
    omega: Option<OmegaSpec>,
    #[serde(default)]
    phi0: Option<FrobeniusSpec>,
    q0: u64,
    #[serde(default = "one")]
    e: u32,
    #[serde(rename = "I")]
    parabolic: Vec<usize>,
    #[serde(default)]
    theta: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BtConfig {
    #[serde(default)]
    schema: Option<u32>,
    #[serde(default)]
    name: Option<String>,
    h: usize,
    d: usize,
    p: u64,
    #[serde(default = "one")]
    n: u32,
}

#[derive(Deserialize)]
struct StratumFixture {
    a: u32,
    f: u32,
}

#[derive(Deserialize)]
struct ZetaFixture {
    #[serde(default)]
    q: Option<u64>,
}

fn one() -> u32 {
    1
}

fn from_value<T: DeserializeOwned>(value: Value, origin: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn check_schema(schema: Option<u32>) -> Result<(), CliError> {
    match schema {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(CliError::Schema(v)),
    }
}

/// Reads a path, `-` for stdin, or inline JSON text starting with `{`.
pub fn read_source(source: &str) -> Result<(String, String), CliError> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') {
        return Ok((source.to_string(), "<inline>".into()));
    }
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
        return Ok((text, "<stdin>".into()));
    }
    let text = fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io { path: source.into(), source: e })?;
    Ok((text, source.to_string()))
}

pub fn parse_config(source: &str) -> Result<Config, CliError> {
    let (text, origin) = read_source(source)?;
    parse_config_text(&text, &origin)
}

pub fn parse_config_text(text: &str, origin: &str) -> Result<Config, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let Some(obj) = value.as_object() else {
        return Err(CliError::Parse {
            origin: origin.to_string(),
            path: ".".into(),
            message: "expected a JSON object".into(),
        });
    };
    if obj.contains_key("strata") {
        check_schema(obj.get("schema").and_then(Value::as_u64).map(|v| v as u32))?;
        let strata: Vec<StratumFixture> = from_value(obj["strata"].clone(), origin)
            .map_err(|e| e.with_prefix("strata"))?;
        let q = match obj.get("zeta") {
            Some(z) => from_value::<ZetaFixture>(z.clone(), origin).map_err(|e| e.with_prefix("zeta"))?.q,
            None => None,
        };
        return Ok(Config::Strata { invariants: strata.iter().map(|s| (s.a, s.f)).collect(), q });
    }
    if obj.contains_key("h") {
        let c: BtConfig = from_value(value, origin)?;
        check_schema(c.schema)?;
        let _ = c.name;
        let params = BTParams { h: c.h, d: c.d, p: c.p, n: c.n };
        params.validate()?;
        return Ok(Config::Bt(params));
    }
    let c: ZipConfig = from_value(value, origin)?;
    check_schema(c.schema)?;
    let _ = c.name;
    let cartan = match c.cartan {
        CartanInput::Type(name) => CartanMatrix::of_type(&name).map_err(|e| CliError::Validation(e.to_string()))?,
        CartanInput::Rows(rows) => CartanMatrix::new(rows).map_err(|e| CliError::Validation(e.to_string()))?,
    };
    let rank = cartan.rank();
    let omega = c.omega.unwrap_or_else(|| OmegaSpec::trivial(rank));
    let phi0 = c.phi0.unwrap_or_else(|| FrobeniusSpec {
        diagram_perm: (1..=rank).collect(),
        omega_perm: omega.elements.clone(),
    });
    let identity = omega.elements.first().cloned().unwrap_or_else(|| "1".into());
    let spec = ZipDatumSpec {
        cartan: cartan.rows(),
        omega,
        phi0,
        q0: c.q0,
        e: c.e,
        parabolic: c.parabolic,
        theta: c.theta.unwrap_or_else(|| vec![identity]),
    };
    Ok(Config::Zip(spec))
}
