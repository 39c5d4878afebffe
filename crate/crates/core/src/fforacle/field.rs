//! Small finite fields `F_q = F_p[x]/(f)` with full operation tables.
//!
//! An element is the integer `Σ cᵢ pⁱ` built from its coefficient vector
//! `(c₀, …, c_{k−1})`, so `0` and `1` are the usual constants and the prime
//! field sits in `0..p`.

use thiserror::Error;

use crate::btgl::is_prime;

pub const DEFAULT_FIELD_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the bound {bound}")]
    FieldTooLarge { p: u64, k: u32, bound: usize },
    #[error("modulus {0:?} is not irreducible of the requested degree")]
    Reducible(Vec<u8>),
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u8,
    k: u32,
    q: usize,
    /// Low coefficients of the monic modulus; the leading 1 is implicit.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    frob_inv: Vec<u8>,
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = x;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FqField {
    /// `F_{p^k}` with the irreducible modulus of least encoding.
    pub fn build_field(p: u64, k: u32) -> Result<FqField, FieldError> {
        Self::build_field_bounded(p, k, DEFAULT_FIELD_BOUND)
    }

    pub fn build_field_bounded(p: u64, k: u32, bound: usize) -> Result<FqField, FieldError> {
        let q = Self::check_size(p, k, bound)?;
        for code in 0..q {
            let low: Vec<u8> = digits(code, p as usize, k as usize).into_iter().map(|c| c as u8).collect();
            if let Ok(field) = Self::with_modulus_bounded(p, &low, bound) {
                return Ok(field);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Field defined by the monic modulus `x^k + Σ low[i] xⁱ`.
    pub fn with_modulus(p: u64, low: &[u8]) -> Result<FqField, FieldError> {
        Self::with_modulus_bounded(p, low, DEFAULT_FIELD_BOUND)
    }

    fn check_size(p: u64, k: u32, bound: usize) -> Result<usize, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let too_large = FieldError::FieldTooLarge { p, k, bound };
        let q = p.checked_pow(k).ok_or(too_large.clone())?;
        if q as usize > bound.min(256) {
            return Err(too_large);
        }
        Ok(q as usize)
    }

    fn with_modulus_bounded(p: u64, low: &[u8], bound: usize) -> Result<FqField, FieldError> {
        let k = low.len() as u32;
        let q = Self::check_size(p, k, bound)?;
        if low.iter().any(|&c| c as u64 >= p) {
            return Err(FieldError::Reducible(low.to_vec()));
        }
        let (pu, ku) = (p as usize, k as usize);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, pu, ku);
            for b in 0..q {
                let db = digits(b, pu, ku);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * q + b] = undigits(&sum, pu) as u8;
                // schoolbook product, then reduce from the top using x^k = −low
                let mut prod = vec![0usize; 2 * ku];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                for top in (ku..2 * ku).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, &m) in low.iter().enumerate() {
                        let idx = top - ku + i;
                        prod[idx] = (prod[idx] + pu * pu - c * m as usize) % pu;
                    }
                }
                mul[a * q + b] = undigits(&prod[..ku], pu) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            // no zero divisors iff the modulus is irreducible
            match (1..q).find(|&b| mul[a * q + b] == 1) {
                Some(b) => inv[a] = b as u8,
                None => return Err(FieldError::Reducible(low.to_vec())),
            }
            if (1..q).any(|b| mul[a * q + b] == 0) {
                return Err(FieldError::Reducible(low.to_vec()));
            }
        }
        let neg: Vec<u8> = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let frob: Vec<u8> = (0..q)
            .map(|a| {
                let mut x = 1u8;
                for _ in 0..p {
                    x = mul[x as usize * q + a];
                }
                x
            })
            .collect();
        let mut frob_inv = vec![0u8; q];
        for (a, &b) in frob.iter().enumerate() {
            frob_inv[b as usize] = a as u8;
        }
        Ok(FqField { p: p as u8, k, q, modulus: low.to_vec(), add, mul, neg, inv, frob, frob_inv })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Low coefficients `c₀, …, c_{k−1}` of the monic modulus.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// `x ↦ x^p`.
    #[inline]
    pub fn frob(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// `x ↦ x^{1/p}`.
    #[inline]
    pub fn frob_inv(&self, a: u8) -> u8 {
        self.frob_inv[a as usize]
    }
}
