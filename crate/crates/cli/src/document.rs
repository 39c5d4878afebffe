//! The machine-readable output document. Field order is fixed by the struct
//! definitions, so identical inputs give byte-identical JSON.

use serde::Serialize;

use zipzeta::btgl::BTParams;
use zipzeta::extweyl::{ExtWeylElement, ExtWeylGroup};
use zipzeta::subset::SimpleSet;
use zipzeta::fforacle::{CensusReport, CrosscheckReport};
use zipzeta::weyl::WeylElement;
use zipzeta::zetafn::{format_rational, ZetaProduct};
use zipzeta::zipstrata::{ElementRow, Stratum, ZipDatum, ZipDatumSpec};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum InputEcho {
    Zip(ZipDatumSpec),
    Bt(BTParams),
    Strata { q: Option<u64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct DatumSummary {
    pub q: u64,
    pub p: u64,
    pub rank: usize,
    pub weyl_order: usize,
    pub omega_order: usize,
    #[serde(rename = "I")]
    pub parabolic: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub w1: String,
    pub w2: String,
    pub flag_dimension: usize,
    pub num_elements: usize,
    pub num_theta_orbits: usize,
    pub num_strata: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementEntry {
    pub element: String,
    pub omega: String,
    pub w_double_prime: String,
    pub y: String,
    pub w_j: String,
    pub ell: usize,
    pub double_min: bool,
    pub theta_orbit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumEntry {
    pub representative: String,
    pub word: Vec<usize>,
    pub omega: String,
    pub theta_orbit: Vec<String>,
    pub members: usize,
    pub ell: usize,
    pub a: usize,
    pub f: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub a: u32,
    pub f: u32,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaEntry {
    pub factors: Vec<FactorEntry>,
    pub symbolic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesEntry {
    pub power: usize,
    pub symbolic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountEntry {
    pub v: u32,
    pub symbolic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthEntry {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub element: String,
    pub ell: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClassEntry {
    pub a: Vec<Vec<u8>>,
    pub b: Vec<Vec<u8>>,
    pub automorphisms: u64,
    pub orbit_size: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleEntry {
    pub h: usize,
    pub d: usize,
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Low coefficients of the monic modulus, constant term first.
    pub modulus: Vec<u8>,
    pub num_objects: u64,
    pub group_order: u64,
    pub classes: Vec<CensusClassEntry>,
    pub census: String,
    pub formula: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDocument {
    pub schema: u32,
    pub command: String,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<ElementEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<StratumEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counts: Vec<CountEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lengths: Vec<LengthEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
}

impl OutputDocument {
    pub fn new(command: &str, input: InputEcho) -> OutputDocument {
        OutputDocument {
            schema: crate::config::SCHEMA_VERSION,
            command: command.to_string(),
            input,
            datum: None,
            elements: Vec::new(),
            strata: Vec::new(),
            zeta: None,
            series: Vec::new(),
            counts: Vec::new(),
            lengths: Vec::new(),
            oracle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// `s1s2`, or `e` for the identity; letters are 1-based, separated by dots
/// once the rank reaches 10.
pub fn word_string(word: &[usize], rank: usize) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let sep = if rank >= 10 { "." } else { "" };
    word.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(sep)
}

pub fn weyl_word(group: &ExtWeylGroup, w: &WeylElement) -> String {
    let weyl = group.weyl();
    word_string(&weyl.shortlex_word(w).expect("element of this group"), weyl.rank())
}

/// `w·ω`, dropping `ω` when `Ω` is trivial.
pub fn element_string(group: &ExtWeylGroup, x: &ExtWeylElement) -> String {
    let word = weyl_word(group, &x.w);
    if group.omega().order() == 1 {
        word
    } else {
        format!("{word}·{}", group.omega().label(x.omega))
    }
}

pub fn datum_summary(datum: &ZipDatum, rows: &[ElementRow], strata: &[Stratum]) -> DatumSummary {
    let g = datum.group();
    let twist = datum.compute_twist();
    DatumSummary {
        q: datum.q(),
        p: datum.p(),
        rank: g.root_system().rank(),
        weyl_order: g.weyl().order(),
        omega_order: g.omega().order(),
        parabolic: datum.parabolic().to_one_based(),
        j: twist.j.to_one_based(),
        w1: weyl_word(g, &twist.w1),
        w2: weyl_word(g, &twist.w2),
        flag_dimension: datum.flag_dimension(),
        num_elements: rows.len(),
        num_theta_orbits: rows.iter().map(|r| r.theta_orbit + 1).max().unwrap_or(0),
        num_strata: strata.len(),
    }
}

pub fn element_entries(datum: &ZipDatum, rows: &[ElementRow]) -> Vec<ElementEntry> {
    let g = datum.group();
    rows.iter()
        .map(|r| ElementEntry {
            element: element_string(g, &r.element),
            omega: g.omega().label(r.decomposition.omega).to_string(),
            w_double_prime: weyl_word(g, &r.decomposition.w_double_prime),
            y: weyl_word(g, &r.decomposition.y),
            w_j: weyl_word(g, &r.decomposition.w_j),
            ell: r.ell,
            double_min: r.decomposition.is_double_min,
            theta_orbit: r.theta_orbit + 1,
        })
        .collect()
}

pub fn stratum_entries(datum: &ZipDatum, strata: &[Stratum]) -> Vec<StratumEntry> {
    let g = datum.group();
    strata
        .iter()
        .map(|s| StratumEntry {
            representative: element_string(g, &s.orbit_rep),
            word: g.weyl().shortlex_word(&s.orbit_rep.w).expect("element").iter().map(|i| i + 1).collect(),
            omega: g.omega().label(s.orbit_rep.omega).to_string(),
            theta_orbit: s.theta_orbit.iter().map(|x| element_string(g, x)).collect(),
            members: s.members,
            ell: s.ell,
            a: s.a,
            f: s.f,
        })
        .collect()
}

pub fn zeta_entry(z: &ZetaProduct, q: Option<u64>) -> ZetaEntry {
    ZetaEntry {
        factors: z.factors().map(|((a, f), m)| FactorEntry { a, f, multiplicity: m }).collect(),
        symbolic: z.display_symbolic(),
        q,
        numeric: q.map(|q| z.display_numeric(q)),
    }
}

pub fn series_entries(z: &ZetaProduct, order: usize, q: Option<u64>) -> Vec<SeriesEntry> {
    let series = z.expand_series(order);
    let numeric = q.map(|q| series.specialize(&zipzeta::zetafn::integer(q as i64)));
    series
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| SeriesEntry {
            power: n,
            symbolic: c.to_string(),
            numeric: numeric.as_ref().map(|v| format_rational(&v[n])),
        })
        .collect()
}

pub fn count_entries(z: &ZetaProduct, up_to: u32, q: Option<u64>) -> Vec<CountEntry> {
    (1..=up_to)
        .map(|v| {
            let n = z.point_count(v);
            CountEntry {
                v,
                symbolic: n.to_string(),
                numeric: q.map(|q| format_rational(&n.evaluate(&zipzeta::zetafn::integer(q as i64)))),
            }
        })
        .collect()
}

pub fn oracle_entry(r: &CrosscheckReport) -> OracleEntry {
    let c: &CensusReport = &r.census;
    OracleEntry {
        h: r.params.h,
        d: r.params.d,
        p: r.params.p,
        k: r.k,
        q: r.params.p.pow(r.k),
        modulus: c.modulus.clone(),
        num_objects: c.num_objects,
        group_order: c.group_order,
        classes: c
            .classes
            .iter()
            .map(|cl| CensusClassEntry {
                a: cl.representative.a.to_rows(),
                b: cl.representative.b.to_rows(),
                automorphisms: cl.automorphisms,
                orbit_size: cl.orbit_size,
            })
            .collect(),
        census: format_rational(&r.census_value),
        formula: format_rational(&r.formula_value),
        pass: r.pass,
    }
}

/// `ℓ_{I,J}` on `^I Ŵ` for every pair of subsets.
pub fn length_entries(group: &ExtWeylGroup) -> Vec<LengthEntry> {
    let r = group.root_system().rank();
    let mut out = Vec::new();
    for ib in 0..1u64 << r {
        let i = SimpleSet::from_bits(ib);
        for jb in 0..1u64 << r {
            let j = SimpleSet::from_bits(jb);
            for x in group.ext_min_reps(i) {
                out.push(LengthEntry {
                    i: i.to_one_based(),
                    j: j.to_one_based(),
                    element: element_string(group, &x),
                    ell: group.ell_ij(&x, i, j).expect("x lies in ^I Ŵ"),
                });
            }
        }
    }
    out
}
