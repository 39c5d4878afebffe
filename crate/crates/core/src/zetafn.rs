//! Exact rational functions and power series for zeta functions of the
//! form `∏ 1/(1 - (q^{-a} t)^f)`.
//!
//! `q` stays symbolic (coefficients are Laurent polynomials in `q` with
//! rational coefficients) until a numeric value is substituted. The zeta
//! function is `Z(t) = exp(Σ_{v≥1} N_v t^v / v)` with `N_v` the groupoid
//! point count over `F_{q^v}`; for a product of such factors
//! `N_v = Σ_{f | v} f · q^{-a v}` per factor.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::zipstrata::Stratum;

/// Exact rational in canonical form (reduced, positive denominator).
pub type ExactRational = BigRational;

pub fn rational(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `q^exp` for a rational `q` and any integer exponent.
pub fn rational_pow(q: &ExactRational, exp: i64) -> ExactRational {
    let p = num_traits::pow(q.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// Formats `3/2`, `-4`, `0`.
pub fn format_rational(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("t = {t} is a pole of the zeta function (factor a={a}, f={f})")]
    PoleEvaluation { t: String, a: u32, f: u32 },
    #[error("q must be positive, got {0}")]
    BadQ(String),
}

/// Laurent polynomial in `q` with rational coefficients; zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    terms: BTreeMap<i64, ExactRational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff · q^exp`.
    pub fn monomial(exp: i64, coeff: ExactRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        QLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> ExactRational {
        self.terms.get(&exp).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    fn add_term(&mut self, exp: i64, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(ExactRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &ExactRational) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e, x) in self.terms() {
            out.add_term(e, x * c);
        }
        out
    }

    /// Substitutes a numeric `q`.
    pub fn evaluate(&self, q: &ExactRational) -> ExactRational {
        self.terms().fold(ExactRational::zero(), |acc, (e, c)| acc + c * rational_pow(q, e))
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.scale(&-ExactRational::one())
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for QLaurent {
    /// Highest power of `q` first: `2 + 2q^-1`, `1/2q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let q = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if q.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{q}")?;
            } else {
                write!(f, "{}{q}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// `∏ (1 - (q^{-a} t)^f)^{-m}` over distinct `(a, f)` with multiplicity `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaProduct {
    factors: BTreeMap<(u32, u32), u32>,
}

impl ZetaProduct {
    pub fn from_invariants<I: IntoIterator<Item = (u32, u32)>>(invariants: I) -> ZetaProduct {
        let mut factors = BTreeMap::new();
        for (a, f) in invariants {
            assert!(f >= 1, "Galois orbit sizes are positive");
            *factors.entry((a, f)).or_insert(0) += 1;
        }
        ZetaProduct { factors }
    }

    pub fn from_strata(strata: &[Stratum]) -> ZetaProduct {
        Self::from_invariants(strata.iter().map(|s| (s.a as u32, s.f as u32)))
    }

    /// `((a, f), multiplicity)` sorted by `(a, f)`.
    pub fn factors(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.factors.iter().map(|(&k, &m)| (k, m))
    }

    pub fn num_factors(&self) -> usize {
        self.factors.values().map(|&m| m as usize).sum()
    }

    /// `N_v = Σ_{f | v} m · f · q^{-a v}`.
    pub fn point_count(&self, v: u32) -> QLaurent {
        assert!(v >= 1);
        let mut out = QLaurent::zero();
        for (&(a, f), &m) in &self.factors {
            if v.is_multiple_of(f) {
                out.add_term(-(a as i64) * v as i64, integer((m * f) as i64));
            }
        }
        out
    }

    /// Series coefficients of the product, expanding each factor as a
    /// negative binomial series.
    pub fn expand_product(&self, order: usize) -> SeriesExpansion {
        let mut acc = vec![QLaurent::zero(); order + 1];
        acc[0] = QLaurent::one();
        for (&(a, f), &m) in &self.factors {
            let f = f as usize;
            let mut factor = vec![QLaurent::zero(); order + 1];
            for k in 0..=order / f {
                let binom = binomial((k + m as usize - 1) as u64, (m - 1) as u64);
                factor[k * f] = QLaurent::monomial(
                    -(a as i64) * (f * k) as i64,
                    BigRational::from_integer(binom),
                );
            }
            acc = series_mul(&acc, &factor, order);
        }
        SeriesExpansion { coeffs: acc }
    }

    /// Series coefficients of `exp(Σ_v N_v t^v / v)`, via `Σ_m L^m / m!`.
    pub fn expand_exp_sum(&self, order: usize) -> SeriesExpansion {
        let mut log = vec![QLaurent::zero(); order + 1];
        for v in 1..=order {
            log[v] = self.point_count(v as u32).scale(&rational(1, v as i64));
        }
        let mut acc = vec![QLaurent::zero(); order + 1];
        acc[0] = QLaurent::one();
        let mut power = acc.clone();
        let mut factorial = ExactRational::one();
        for m in 1..=order {
            power = series_mul(&power, &log, order);
            factorial *= integer(m as i64);
            let inv = factorial.recip();
            for (slot, c) in acc.iter_mut().zip(&power) {
                *slot = &*slot + &c.scale(&inv);
            }
        }
        SeriesExpansion { coeffs: acc }
    }

    /// Expands through `t^order` by both routes and checks they agree.
    pub fn expand_series(&self, order: usize) -> SeriesExpansion {
        let product = self.expand_product(order);
        let exp_sum = self.expand_exp_sum(order);
        assert_eq!(product, exp_sum, "product form and exp-sum form disagree");
        product
    }

    /// Exact value at numeric `q` and `t`.
    pub fn evaluate(&self, q: &ExactRational, t: &ExactRational) -> Result<ExactRational, ZetaError> {
        if !q.is_positive() {
            return Err(ZetaError::BadQ(format_rational(q)));
        }
        let mut value = ExactRational::one();
        for (&(a, f), &m) in &self.factors {
            let x = t * rational_pow(q, -(a as i64));
            let denom = ExactRational::one() - rational_pow(&x, f as i64);
            if denom.is_zero() {
                return Err(ZetaError::PoleEvaluation { t: format_rational(t), a, f });
            }
            value *= rational_pow(&denom, -(m as i64));
        }
        Ok(value)
    }

    /// `1/((1-t)^2 (1-q^-1 t)^2)`.
    pub fn display_symbolic(&self) -> String {
        self.render(|a, f| {
            let base = if a == 0 { "t".to_string() } else { format!("q^-{a} t") };
            match (a, f) {
                (_, 1) => format!("1-{base}"),
                (0, f) => format!("1-t^{f}"),
                (_, f) => format!("1-({base})^{f}"),
            }
        })
    }

    /// With `q` substituted: `1/((1-t)(1-t/3))`.
    pub fn display_numeric(&self, q: u64) -> String {
        self.render(|a, f| {
            let t = if f == 1 { "t".to_string() } else { format!("t^{f}") };
            let c = BigInt::from(q).pow(a * f);
            if c.is_one() {
                format!("1-{t}")
            } else {
                format!("1-{t}/{c}")
            }
        })
    }

    fn render(&self, factor: impl Fn(u32, u32) -> String) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&(a, f), &m)| {
                let body = factor(a, f);
                if m == 1 {
                    format!("({body})")
                } else {
                    format!("({body})^{m}")
                }
            })
            .collect();
        if parts.len() == 1 && self.factors.values().all(|&m| m == 1) {
            format!("1/{}", parts[0])
        } else {
            format!("1/({})", parts.join(" "))
        }
    }
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_symbolic())
    }
}

/// Truncated power series in `t` whose coefficients are Laurent polynomials
/// in `q`; index `n` holds the coefficient of `t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExpansion {
    coeffs: Vec<QLaurent>,
}

impl SeriesExpansion {
    pub fn coefficients(&self) -> &[QLaurent] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn specialize(&self, q: &ExactRational) -> Vec<ExactRational> {
        self.coeffs.iter().map(|c| c.evaluate(q)).collect()
    }

    /// Coefficients of `t · d/dt log Z`, which should be `N_1, N_2, ...`
    /// (index 0 is always zero).
    pub fn log_derivative(&self) -> Vec<QLaurent> {
        let z = &self.coeffs;
        let n = self.order();
        let mut c = vec![QLaurent::zero(); n + 1];
        // t Z' = (t L') Z, so n z_n = Σ_{k=1}^{n} c_k z_{n-k} with z_0 = 1.
        for m in 1..=n {
            let mut rhs = z[m].scale(&integer(m as i64));
            for k in 1..m {
                rhs = &rhs - &(&c[k] * &z[m - k]);
            }
            c[m] = rhs;
        }
        c
    }
}

fn series_mul(a: &[QLaurent], b: &[QLaurent], order: usize) -> Vec<QLaurent> {
    let mut out = vec![QLaurent::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
