use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FqField;
use super::matrix::Matrix;
use super::OracleError;
use crate::exec::{filter_map_range, map_range, map_slice, Execution};
use crate::zetafn::ExactRational;

/// Default cap on `q^{2h²}`, a bound for the candidate count times `|GL_h|`.
pub const DEFAULT_SEARCH_BOUND: u128 = 1 << 26;

/// `(F_q^h, F, V)` with `F(x) = A x^{[p]}` and `V(x) = B x^{[1/p]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DieudonneModule1 {
    pub a: Matrix,
    pub b: Matrix,
}

/// An element of `GL_h(F_q)` with the twisted inverses used by the action.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub g: Matrix,
    /// `(g^{[p]})⁻¹`
    inv_frob: Matrix,
    /// `(g^{[1/p]})⁻¹`
    inv_frob_inv: Matrix,
}

impl GroupElement {
    pub fn new(f: &FqField, g: Matrix) -> Option<GroupElement> {
        let inv = g.inverse(f)?;
        Some(GroupElement { inv_frob: inv.frob(f), inv_frob_inv: inv.frob_inv(f), g })
    }
}

impl DieudonneModule1 {
    pub fn h(&self) -> usize {
        self.a.rows()
    }

    /// `FV = VF = 0`, `rank F = d`, `rank V = h − d`, `im F = ker V` and
    /// `im V = ker F`, all checked directly.
    pub fn is_valid(&self, f: &FqField, d: usize) -> bool {
        let h = self.h();
        let (a, b) = (&self.a, &self.b);
        if a.rank(f) != d || b.rank(f) != h - d {
            return false;
        }
        // F∘V has matrix A·B^{[p]}; V∘F has matrix B·A^{[1/p]}.
        if !a.mul(f, &b.frob(f)).is_zero() || !b.mul(f, &a.frob_inv(f)).is_zero() {
            return false;
        }
        // ker V = (ker B)^{[p]}, ker F = (ker A)^{[1/p]}.
        let ker_v = b.kernel(f).frob(f);
        let ker_f = a.kernel(f).frob_inv(f);
        a.same_column_space(f, &ker_v) && b.same_column_space(f, &ker_f)
    }

    /// `g·(A, B) = (g A (g^{[p]})⁻¹, g B (g^{[1/p]})⁻¹)`, transporting the
    /// structure along `x ↦ g x`.
    pub fn act(&self, f: &FqField, g: &GroupElement) -> DieudonneModule1 {
        DieudonneModule1 {
            a: g.g.mul(f, &self.a).mul(f, &g.inv_frob),
            b: g.g.mul(f, &self.b).mul(f, &g.inv_frob_inv),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    /// Lexicographically least `(A, B)` in the orbit.
    pub representative: DieudonneModule1,
    pub automorphisms: u64,
    pub orbit_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u8>,
    pub h: usize,
    pub d: usize,
    pub num_objects: u64,
    pub group_order: u64,
    pub classes: Vec<CensusClass>,
    pub groupoid_cardinality: ExactRational,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub search_bound: u128,
    pub exec: Execution,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { search_bound: DEFAULT_SEARCH_BOUND, exec: Execution::default() }
    }
}

pub fn search_space(q: usize, h: usize) -> Option<u128> {
    (q as u128).checked_pow(u32::try_from(2 * h * h).ok()?)
}

pub fn general_linear_group(f: &FqField, h: usize, exec: Execution) -> Vec<GroupElement> {
    let q = f.order();
    let total = (q as u64).pow((h * h) as u32);
    filter_map_range(exec, total as usize, |i| GroupElement::new(f, Matrix::from_index(i as u64, h, h, q)))
}

/// All `B` completing `A` to a module, in lexicographic order.
///
/// `A·B^{[p]} = 0` and `B^{[p]}·A = 0` force `B^{[p]} = U C Wᵀ` with the
/// columns of `U` spanning `ker A` and those of `W` spanning the left kernel;
/// every such `C` is tried and the result is filtered by [`DieudonneModule1::is_valid`].
fn completions(f: &FqField, a: &Matrix, d: usize) -> Vec<DieudonneModule1> {
    let u = a.kernel(f);
    let w = a.left_kernel(f).transpose();
    let m = u.cols();
    let count = (f.order() as u64).pow((m * m) as u32);
    let mut out: Vec<DieudonneModule1> = (0..count)
        .map(|i| {
            let c = Matrix::from_index(i, m, m, f.order());
            let b = u.mul(f, &c).mul(f, &w).frob_inv(f);
            DieudonneModule1 { a: a.clone(), b }
        })
        .filter(|x| x.is_valid(f, d))
        .collect();
    out.sort();
    out
}

/// Every level-1 module of height `h` and dimension `d` over `f`, sorted.
pub fn enumerate_objects(f: &FqField, h: usize, d: usize, exec: Execution) -> Vec<DieudonneModule1> {
    let q = f.order();
    let total = (q as u64).pow((h * h) as u32);
    let per_a = map_range(exec, total as usize, |i| {
        let a = Matrix::from_index(i as u64, h, h, q);
        if a.rank(f) == d {
            completions(f, &a, d)
        } else {
            Vec::new()
        }
    });
    per_a.into_iter().flatten().collect()
}

pub fn enumerate_census(f: &FqField, h: usize, d: usize, opts: CensusOptions) -> Result<CensusReport, OracleError> {
    if d > h || h == 0 {
        return Err(OracleError::BadDimensions { h, d });
    }
    let size = search_space(f.order(), h);
    match size {
        Some(s) if s <= opts.search_bound => {}
        _ => {
            return Err(OracleError::SearchSpaceTooLarge {
                q: f.order(),
                h,
                size: size.map_or("overflow".into(), |s| s.to_string()),
                bound: opts.search_bound,
            })
        }
    }
    let objects = enumerate_objects(f, h, d, opts.exec);
    let index: HashMap<&DieudonneModule1, usize> = objects.iter().enumerate().map(|(n, x)| (x, n)).collect();
    let group = general_linear_group(f, h, opts.exec);
    let group_order = group.len() as u64;

    let mut visited = vec![false; objects.len()];
    let mut classes = Vec::new();
    for (n, x) in objects.iter().enumerate() {
        if visited[n] {
            continue;
        }
        // Objects are sorted, so the first unvisited one is least in its orbit.
        let images = map_slice(opts.exec, &group, |g| {
            let y = x.act(f, g);
            index.get(&y).copied().ok_or(OracleError::ActionLeaks)
        });
        let mut automorphisms = 0u64;
        let mut orbit_size = 0u64;
        for m in images {
            let m = m?;
            if m == n {
                automorphisms += 1;
            }
            if !visited[m] {
                visited[m] = true;
                orbit_size += 1;
            }
        }
        if automorphisms * orbit_size != group_order {
            return Err(OracleError::OrbitStabilizer { automorphisms, orbit_size, group_order });
        }
        classes.push(CensusClass { representative: x.clone(), automorphisms, orbit_size });
    }

    let groupoid_cardinality: ExactRational = classes
        .iter()
        .map(|c| BigRational::new(BigInt::one(), BigInt::from(c.automorphisms)))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let by_count = BigRational::new(BigInt::from(objects.len()), BigInt::from(group_order));
    if by_count != groupoid_cardinality {
        return Err(OracleError::OrbitStabilizer {
            automorphisms: 0,
            orbit_size: objects.len() as u64,
            group_order,
        });
    }
    Ok(CensusReport {
        p: f.p(),
        k: f.k(),
        modulus: f.modulus().to_vec(),
        h,
        d,
        num_objects: objects.len() as u64,
        group_order,
        classes,
        groupoid_cardinality,
    })
}
