//! Command layer of the `zipzeta` binary: configuration parsing, command
//! dispatch and the JSON output document (with a plain-text view).

pub mod config;
pub mod document;
pub mod error;
pub mod render;

use zipzeta::btgl::{bt_datum, BTParams};
use zipzeta::fforacle::{crosscheck_report, CensusOptions};
use zipzeta::zetafn::ZetaProduct;
use zipzeta::extweyl::ExtWeylGroup;
use zipzeta::rootsystem::{CartanMatrix, RootSystem};
use zipzeta::weyl::WeylGroup;
use zipzeta::zipstrata::{ZipDatum, ZipError};
use zipzeta::Execution;

pub use config::{parse_config, parse_config_text, Config};
pub use document::OutputDocument;
pub use error::{exit, CliError};

#[derive(Clone, Debug)]
pub enum Command {
    Strata { config: Config },
    Zeta { config: Config, q: Option<u64>, series: Option<usize> },
    Count { config: Config, v: u32, q: Option<u64> },
    Bt { params: BTParams, series: Option<usize> },
    Oracle { params: BTParams, k: u32 },
    /// `ℓ_{I,J}` tables; needs only the Cartan matrix and `Ω`.
    Lengths { config: Config },
}

/// Largest rank accepted by `lengths`, which loops over all pairs `(I, J)`.
pub const MAX_LENGTHS_RANK: usize = 6;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub exec: Execution,
}

struct Classified {
    datum: ZipDatum,
    echo: document::InputEcho,
}

fn classify_input(config: &Config) -> Result<Option<Classified>, CliError> {
    match config {
        Config::Zip(spec) => Ok(Some(Classified {
            datum: ZipDatum::new(spec.clone())?,
            echo: document::InputEcho::Zip(spec.clone()),
        })),
        Config::Bt(params) => Ok(Some(Classified { datum: bt_datum(params)?, echo: document::InputEcho::Bt(*params) })),
        Config::Strata { .. } => Ok(None),
    }
}

/// Fills in the datum summary, element and strata tables and the zeta entry.
fn stratify(
    doc_command: &str,
    c: Classified,
    q_override: Option<u64>,
    with_elements: bool,
    opts: RunOptions,
) -> Result<(OutputDocument, ZetaProduct, u64), CliError> {
    let rows = c.datum.element_rows(opts.exec)?;
    let strata = c.datum.classify_with(opts.exec)?;
    let mut doc = OutputDocument::new(doc_command, c.echo);
    doc.datum = Some(document::datum_summary(&c.datum, &rows, &strata));
    if with_elements {
        doc.elements = document::element_entries(&c.datum, &rows);
    }
    doc.strata = document::stratum_entries(&c.datum, &strata);
    let z = ZetaProduct::from_strata(&strata);
    let q = q_override.unwrap_or(c.datum.q());
    doc.zeta = Some(document::zeta_entry(&z, Some(q)));
    Ok((doc, z, q))
}

fn product_of(command: &str, config: &Config, q: Option<u64>, opts: RunOptions) -> Result<(OutputDocument, ZetaProduct, Option<u64>), CliError> {
    match classify_input(config)? {
        Some(c) => {
            let (doc, z, q) = stratify(command, c, q, false, opts)?;
            Ok((doc, z, Some(q)))
        }
        None => {
            let Config::Strata { invariants, q: stored } = config else { unreachable!() };
            let q = q.or(*stored);
            let z = ZetaProduct::from_invariants(invariants.iter().copied());
            let mut doc = OutputDocument::new(command, document::InputEcho::Strata { q });
            doc.zeta = Some(document::zeta_entry(&z, q));
            Ok((doc, z, q))
        }
    }
}

pub fn run(cmd: &Command, opts: RunOptions) -> Result<OutputDocument, CliError> {
    match cmd {
        Command::Strata { config } => {
            let c = classify_input(config)?
                .ok_or_else(|| CliError::Usage("`strata` needs a datum or BT parameters, not a strata table".into()))?;
            Ok(stratify("strata", c, None, true, opts)?.0)
        }
        Command::Zeta { config, q, series } => {
            let (mut doc, z, q) = product_of("zeta", config, *q, opts)?;
            if let Some(order) = series {
                doc.series = document::series_entries(&z, *order, q);
            }
            Ok(doc)
        }
        Command::Count { config, v, q } => {
            if *v == 0 {
                return Err(CliError::Usage("--v must be at least 1".into()));
            }
            let (mut doc, z, q) = product_of("count", config, *q, opts)?;
            doc.counts = document::count_entries(&z, *v, q);
            Ok(doc)
        }
        Command::Bt { params, series } => {
            params.validate()?;
            let c = Classified { datum: bt_datum(params)?, echo: document::InputEcho::Bt(*params) };
            let (mut doc, z, q) = stratify("bt", c, None, false, opts)?;
            if let Some(order) = series {
                doc.series = document::series_entries(&z, *order, Some(q));
            }
            Ok(doc)
        }
        Command::Oracle { params, k } => {
            let report = crosscheck_report(params, *k, CensusOptions { exec: opts.exec, ..Default::default() })?;
            let c = Classified { datum: bt_datum(params)?, echo: document::InputEcho::Bt(*params) };
            let (mut doc, _, _) = stratify("oracle", c, Some(params.p.pow(*k)), false, opts)?;
            doc.oracle = Some(document::oracle_entry(&report));
            Ok(doc)
        }
        Command::Lengths { config } => {
            let Config::Zip(spec) = config else {
                return Err(CliError::Usage("`lengths` needs a config with `cartan` and `omega`".into()));
            };
            let cartan = CartanMatrix::new(spec.cartan.clone()).map_err(ZipError::from)?;
            if cartan.rank() > MAX_LENGTHS_RANK {
                return Err(CliError::Usage(format!("`lengths` supports rank at most {MAX_LENGTHS_RANK}")));
            }
            let rs = RootSystem::with_default_cap(cartan).map_err(ZipError::from)?;
            let weyl = WeylGroup::with_default_cap(rs).map_err(ZipError::from)?;
            let group = ExtWeylGroup::from_spec(weyl, &spec.omega).map_err(ZipError::from)?;
            let mut doc = OutputDocument::new("lengths", document::InputEcho::Zip(spec.clone()));
            doc.lengths = document::length_entries(&group);
            Ok(doc)
        }
    }
}

/// Exit code for a successful run: a failed oracle comparison is reported in
/// the document and signalled through the status.
pub fn status_of(doc: &OutputDocument) -> i32 {
    match &doc.oracle {
        Some(o) if !o.pass => exit::MISMATCH,
        _ => exit::OK,
    }
}
