//! Finite crystallographic root systems generated from Cartan matrices.
//!
//! Convention: `c[i][j] = <alpha_j, alpha_i^vee>`, so the simple reflection
//! `s_i` acts on the simple-root basis by `s_i(alpha_j) = alpha_j - c[i][j] alpha_i`.
//! Roots are stored as integer coordinate vectors in that basis and addressed
//! by ordinals: positive roots first (by height, ties broken so that earlier
//! coordinates dominate, which puts the simple roots at ordinals `0..r`), then
//! their negatives in the same order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::subset::SimpleSet;

/// Default bound on the number of positive roots accepted during closure.
pub const DEFAULT_ROOT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("vector {0:?} is not a root of this system")]
    RootNotInSystem(Vec<i32>),
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
}

/// Square integer matrix with `c[i][i] = 2`, non-positive off-diagonal
/// entries and a symmetric zero pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i32>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i32>>) -> Result<Self, RootSystemError> {
        let rank = rows.len();
        if rank > SimpleSet::MAX_RANK {
            return Err(RootSystemError::InvalidCartan(format!(
                "rank {rank} exceeds {}",
                SimpleSet::MAX_RANK
            )));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(RootSystemError::InvalidCartan(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = CartanMatrix { rank, entries };
        for i in 0..rank {
            if m.get(i, i) != 2 {
                return Err(RootSystemError::InvalidCartan(format!(
                    "diagonal entry ({0},{0}) is {1}, expected 2",
                    i + 1,
                    m.get(i, i)
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if m.get(i, j) > 0 {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "off-diagonal entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (m.get(i, j) == 0) != (m.get(j, i) == 0) {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "entries ({0},{1}) and ({1},{0}) disagree on vanishing",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `<alpha_j, alpha_i^vee>` for 0-based `i`, `j`.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.rank.max(1)).take(self.rank).map(<[i32]>::to_vec).collect()
    }

    /// Block-diagonal sum, the Cartan matrix of a product of root systems.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let rank = self.rank + other.rank;
        let mut entries = vec![0; rank * rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                entries[i * rank + j] = self.get(i, j);
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                entries[(self.rank + i) * rank + self.rank + j] = other.get(i, j);
            }
        }
        CartanMatrix { rank, entries }
    }

    /// Cartan matrix of a named finite type in Bourbaki numbering, e.g. `A3`,
    /// `D4`, `G2`. Products are written with `x`: `A1xA1`, `B2xA1`. `A0` is
    /// the empty (rank 0) matrix.
    pub fn of_type(name: &str) -> Result<CartanMatrix, RootSystemError> {
        let mut acc = CartanMatrix { rank: 0, entries: Vec::new() };
        for part in name.split(['x', 'X', '*']) {
            let part = part.trim();
            let unknown = || RootSystemError::UnknownType(name.to_string());
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
            let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
            let block = match (letter, n) {
                ('A', n) => type_a(n),
                ('B', n) if n >= 2 => type_bc(n, false),
                ('C', n) if n >= 2 => type_bc(n, true),
                ('D', n) if n >= 3 => type_d(n),
                ('E', 6..=8) => type_e(n),
                ('F', 4) => type_f4(),
                ('G', 2) => type_g2(),
                _ => return Err(unknown()),
            };
            acc = acc.direct_sum(&block);
        }
        Ok(acc)
    }
}

fn from_edges(rank: usize, edges: &[(usize, usize, i32, i32)]) -> CartanMatrix {
    let mut entries = vec![0; rank * rank];
    for i in 0..rank {
        entries[i * rank + i] = 2;
    }
    for &(i, j, cij, cji) in edges {
        entries[i * rank + j] = cij;
        entries[j * rank + i] = cji;
    }
    CartanMatrix { rank, entries }
}

fn type_a(n: usize) -> CartanMatrix {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, -1, -1)).collect();
    from_edges(n, &edges)
}

// B_n: alpha_n short; C_n is the transpose.
fn type_bc(n: usize, c: bool) -> CartanMatrix {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i, -1, -1)).collect();
    let (x, y) = if c { (-2, -1) } else { (-1, -2) };
    edges.push((n - 2, n - 1, x, y));
    from_edges(n, &edges)
}

fn type_d(n: usize) -> CartanMatrix {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i, -1, -1)).collect();
    edges.push((n - 3, n - 1, -1, -1));
    from_edges(n, &edges)
}

fn type_e(n: usize) -> CartanMatrix {
    // 1-3-4-5-6-7-8 chain with 2 attached to 4.
    let mut edges = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
    edges.extend((3..n).map(|i| (i - 1, i, -1, -1)));
    from_edges(n, &edges)
}

fn type_f4() -> CartanMatrix {
    from_edges(4, &[(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)])
}

fn type_g2() -> CartanMatrix {
    from_edges(2, &[(0, 1, -3, -1)])
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    fn has_mixed_signs(&self) -> bool {
        self.0.iter().any(|&c| c > 0) && self.0.iter().any(|&c| c < 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite root system with its reflection tables.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    supports: Vec<SimpleSet>,
    /// `reflections[i][k]` is the ordinal of `s_i(root k)`.
    reflections: Vec<Box<[u16]>>,
    num_positive: usize,
}

impl RootSystem {
    /// Closes the simple roots under the simple reflections. Fails if more
    /// than `cap` positive roots appear or a vector with mixed signs shows up.
    pub fn build(cartan: CartanMatrix, cap: usize) -> Result<RootSystem, RootSystemError> {
        let r = cartan.rank();
        let cap = cap.min(u16::MAX as usize / 2);
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let a = Root::simple(r, i);
            seen.insert(a.clone(), ());
            queue.push_back(a);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let img = checked_reflect(&cartan, i, &beta).ok_or_else(|| {
                    RootSystemError::NotFiniteType("root coordinates overflow".into())
                })?;
                if img.has_mixed_signs() {
                    return Err(RootSystemError::NotFiniteType(format!(
                        "reflection closure produced mixed-sign vector {:?}",
                        img.0
                    )));
                }
                let pos = if img.is_positive() { img } else { img.neg() };
                if !seen.contains_key(&pos) {
                    if seen.len() >= cap {
                        return Err(RootSystemError::NotFiniteType(format!(
                            "more than {cap} positive roots"
                        )));
                    }
                    seen.insert(pos.clone(), ());
                    queue.push_back(pos);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_keys().collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let num_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(Root::neg));
        let index: HashMap<Root, usize> =
            roots.iter().cloned().enumerate().map(|(k, a)| (a, k)).collect();
        let supports = roots
            .iter()
            .map(|a| SimpleSet::from_indices((0..r).filter(|&i| a.0[i] != 0)))
            .collect();
        let mut reflections = Vec::with_capacity(r);
        for i in 0..r {
            let mut table = Vec::with_capacity(roots.len());
            for a in &roots {
                let img = reflect_coords(&cartan, i, a);
                let k = *index.get(&img).ok_or_else(|| {
                    RootSystemError::NotFiniteType(format!("closure not stable under s{}", i + 1))
                })?;
                table.push(k as u16);
            }
            reflections.push(table.into_boxed_slice());
        }
        Ok(RootSystem { cartan, roots, index, supports, reflections, num_positive })
    }

    pub fn with_default_cap(cartan: CartanMatrix) -> Result<RootSystem, RootSystemError> {
        Self::build(cartan, DEFAULT_ROOT_CAP)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    pub fn root(&self, ordinal: usize) -> &Root {
        &self.roots[ordinal]
    }

    pub fn ordinal(&self, root: &Root) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, ordinal: usize) -> bool {
        ordinal < self.num_positive
    }

    pub fn negate(&self, ordinal: usize) -> usize {
        if ordinal < self.num_positive {
            ordinal + self.num_positive
        } else {
            ordinal - self.num_positive
        }
    }

    /// Ordinal of the simple root `alpha_i` (0-based).
    pub fn simple_ordinal(&self, i: usize) -> usize {
        debug_assert_eq!(self.roots[i], Root::simple(self.rank(), i));
        i
    }

    /// If `ordinal` is `+-alpha_i`, returns `i`.
    pub fn simple_index_up_to_sign(&self, ordinal: usize) -> Option<usize> {
        let k = if self.is_positive(ordinal) { ordinal } else { self.negate(ordinal) };
        (k < self.rank()).then_some(k)
    }

    /// Set of simple roots appearing in the root with this ordinal.
    pub fn support(&self, ordinal: usize) -> SimpleSet {
        self.supports[ordinal]
    }

    /// Reflection table of `s_i` on ordinals.
    pub fn reflection(&self, i: usize) -> &[u16] {
        &self.reflections[i]
    }

    pub fn reflect_ordinal(&self, i: usize, ordinal: usize) -> usize {
        self.reflections[i][ordinal] as usize
    }

    /// `s_i(alpha)` for a root `alpha` of this system.
    pub fn reflect_root(&self, i: usize, alpha: &Root) -> Result<Root, RootSystemError> {
        let k = self
            .ordinal(alpha)
            .ok_or_else(|| RootSystemError::RootNotInSystem(alpha.0.clone()))?;
        Ok(self.roots[self.reflect_ordinal(i, k)].clone())
    }

    /// Whether the root lies in the subsystem `Phi_I`, i.e. its support is
    /// contained in `I`.
    pub fn in_subsystem(&self, ordinal: usize, subset: SimpleSet) -> bool {
        self.supports[ordinal].is_subset(subset)
    }

    /// Ordinals of `Phi_I`, in ordinal order.
    pub fn subsystem_roots(&self, subset: SimpleSet) -> Vec<usize> {
        (0..self.num_roots()).filter(|&k| self.in_subsystem(k, subset)).collect()
    }

    /// `#(Phi^+ \ Phi_I)`, the dimension of the flag variety `G/P_I`.
    pub fn count_outside(&self, subset: SimpleSet) -> usize {
        (0..self.num_positive).filter(|&k| !self.in_subsystem(k, subset)).count()
    }
}

fn reflect_coords(cartan: &CartanMatrix, i: usize, alpha: &Root) -> Root {
    checked_reflect(cartan, i, alpha).expect("coordinates of a finite root system are small")
}

fn checked_reflect(cartan: &CartanMatrix, i: usize, alpha: &Root) -> Option<Root> {
    let mut pairing = 0i32;
    for (j, &a) in alpha.0.iter().enumerate() {
        pairing = pairing.checked_add(a.checked_mul(cartan.get(i, j))?)?;
    }
    let mut out = alpha.0.clone();
    out[i] = out[i].checked_sub(pairing)?;
    Some(Root(out))
}
