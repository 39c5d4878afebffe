//! The finite Weyl group of a root system and its parabolic coset
//! combinatorics.
//!
//! Elements are stored as permutations of root ordinals. Composition is
//! `(a * b)(alpha) = a(b(alpha))`, and the length of an element is its
//! inversion count `#{alpha > 0 : w(alpha) < 0}`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::rootsystem::{Root, RootSystem, RootSystemError};
use crate::subset::SimpleSet;

/// Default bound on `|W|` during enumeration.
pub const DEFAULT_GROUP_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("Weyl group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("operands come from different Weyl groups")]
    MixedGroups,
    #[error("element is not of minimal length in its coset W_I w for I = {0}")]
    NotMinimalRep(SimpleSet),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// An element of `W`, acting on the ordinals of all roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Box<[u16]>,
}

impl WeylElement {
    pub fn identity(num_roots: usize) -> Self {
        WeylElement { perm: (0..num_roots as u16).collect() }
    }

    /// Wraps a permutation of root ordinals. The caller guarantees it comes
    /// from the Weyl group of the matching root system.
    pub fn from_perm(perm: Box<[u16]>) -> Self {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    fn num_positive(&self) -> usize {
        self.perm.len() / 2
    }

    pub fn apply(&self, ordinal: usize) -> usize {
        self.perm[ordinal] as usize
    }

    pub fn length(&self) -> usize {
        let n = self.num_positive();
        self.perm[..n].iter().filter(|&&k| k as usize >= n).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: compose_perms(&self.perm, &other.perm) }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { perm: invert_perm(&self.perm) }
    }

    /// `g * self * g^-1` for an automorphism `g` of the root system given as
    /// a permutation of ordinals together with its inverse.
    pub fn conjugate_by(&self, g: &[u16], g_inv: &[u16]) -> WeylElement {
        let perm = g_inv.iter().map(|&k| g[self.perm[k as usize] as usize]).collect();
        WeylElement { perm }
    }

    /// Simple indices `s` with `l(s w) < l(w)`, i.e. `w^-1(alpha_s) < 0`.
    pub fn left_descents(&self, rank: usize) -> SimpleSet {
        let n = self.num_positive();
        let mut set = SimpleSet::empty();
        for (k, &v) in self.perm.iter().enumerate() {
            if (v as usize) < rank && k >= n {
                set.insert(v as usize);
            }
        }
        set
    }

    /// Simple indices `s` with `l(w s) < l(w)`, i.e. `w(alpha_s) < 0`.
    pub fn right_descents(&self, rank: usize) -> SimpleSet {
        let n = self.num_positive();
        (0..rank).filter(|&i| self.perm[i] as usize >= n).collect()
    }

    fn left_mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let s = rs.reflection(i);
        WeylElement { perm: self.perm.iter().map(|&k| s[k as usize]).collect() }
    }

    fn right_mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let s = rs.reflection(i);
        WeylElement { perm: s.iter().map(|&k| self.perm[k as usize]).collect() }
    }
}

pub(crate) fn compose_perms(a: &[u16], b: &[u16]) -> Box<[u16]> {
    b.iter().map(|&k| a[k as usize]).collect()
}

pub(crate) fn invert_perm(a: &[u16]) -> Box<[u16]> {
    let mut inv = vec![0u16; a.len()];
    for (k, &v) in a.iter().enumerate() {
        inv[v as usize] = k as u16;
    }
    inv.into_boxed_slice()
}

/// `I_x = J ∩ x^-1 I x`: the `s ∈ J` whose conjugate `x s x^-1` is a simple
/// reflection in `I`, i.e. `x(alpha_s) = ±alpha_t` for some `t ∈ I`.
/// `x` is any root-system automorphism given on ordinals.
pub fn conjugate_intersection(rs: &RootSystem, x: &[u16], i: SimpleSet, j: SimpleSet) -> SimpleSet {
    j.iter()
        .filter(|&s| {
            rs.simple_index_up_to_sign(x[rs.simple_ordinal(s)] as usize)
                .is_some_and(|t| i.contains(t))
        })
        .collect()
}

/// Which parabolic cosets to take minimal representatives of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetMode {
    /// `^I W`, minimal in `W_I w`.
    Left(SimpleSet),
    /// `W^J`, minimal in `w W_J`.
    Right(SimpleSet),
    /// `^I W^J`, minimal in `W_I w W_J`.
    Double(SimpleSet, SimpleSet),
}

/// `w = w_I * x * w_J` with `x ∈ ^I W^J`, `w_I ∈ W_I`, `w_J ∈ ^{I_x} W_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleDecomposition {
    pub w_i: WeylElement,
    pub x: WeylElement,
    pub w_j: WeylElement,
}

/// The enumerated Weyl group together with memoized coset tables.
#[derive(Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    words: Vec<Vec<u8>>,
    left_desc: Vec<SimpleSet>,
    right_desc: Vec<SimpleSet>,
    index: HashMap<Box<[u16]>, usize>,
    longest: usize,
    cache: RwLock<HashMap<CosetMode, Arc<[usize]>>>,
}

impl WeylGroup {
    /// Breadth-first closure of the identity under right multiplication by
    /// simple reflections. Elements are ordered by length, then by their
    /// ShortLex reduced word.
    pub fn enumerate(rs: RootSystem, cap: usize) -> Result<WeylGroup, WeylError> {
        let r = rs.rank();
        let id = WeylElement::identity(rs.num_roots());
        let mut seen: HashMap<Box<[u16]>, ()> = HashMap::new();
        seen.insert(id.perm.clone(), ());
        let mut found = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 0..r {
                let ws = w.right_mul_simple(&rs, i);
                if !seen.contains_key(&ws.perm) {
                    if found.len() >= cap {
                        return Err(WeylError::GroupTooLarge(cap));
                    }
                    seen.insert(ws.perm.clone(), ());
                    found.push(ws.clone());
                    queue.push_back(ws);
                }
            }
        }
        drop(seen);
        let mut keyed: Vec<(Vec<u8>, WeylElement)> = found
            .into_iter()
            .map(|w| (shortlex_word_of(&rs, &w), w))
            .collect();
        keyed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let (words, elements): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();
        let index = elements.iter().enumerate().map(|(n, w)| (w.perm.clone(), n)).collect();
        let left_desc = elements.iter().map(|w| w.left_descents(r)).collect();
        let right_desc = elements.iter().map(|w| w.right_descents(r)).collect();
        let longest = elements.len() - 1;
        debug_assert_eq!(elements[longest].length(), rs.num_positive());
        Ok(WeylGroup {
            rs,
            elements,
            words,
            left_desc,
            right_desc,
            index,
            longest,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_default_cap(rs: RootSystem) -> Result<WeylGroup, WeylError> {
        Self::enumerate(rs, DEFAULT_GROUP_CAP)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.perm).copied()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        WeylElement { perm: self.rs.reflection(i).into() }
    }

    /// Product of simple reflections `s_{i_1} ... s_{i_k}` (0-based indices).
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity().clone(), |w, &i| w.right_mul_simple(&self.rs, i))
    }

    /// The unique longest element `w_0`.
    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    fn check(&self, w: &WeylElement) -> Result<usize, WeylError> {
        self.position(w).ok_or(WeylError::MixedGroups)
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.compose(b))
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(w)?;
        Ok(w.inverse())
    }

    pub fn length(&self, w: &WeylElement) -> Result<usize, WeylError> {
        Ok(self.words[self.check(w)?].len())
    }

    pub fn act_on_root(&self, w: &WeylElement, alpha: &Root) -> Result<Root, WeylError> {
        self.check(w)?;
        let k = self
            .rs
            .ordinal(alpha)
            .ok_or_else(|| RootSystemError::RootNotInSystem(alpha.0.clone()))?;
        Ok(self.rs.root(w.apply(k)).clone())
    }

    /// Lexicographically least reduced word, 0-based letters.
    pub fn shortlex_word(&self, w: &WeylElement) -> Result<Vec<usize>, WeylError> {
        let n = self.check(w)?;
        Ok(self.words[n].iter().map(|&i| i as usize).collect())
    }

    pub(crate) fn word_of_index(&self, idx: usize) -> &[u8] {
        &self.words[idx]
    }

    /// Set of simple reflections appearing in a reduced word of `w`.
    pub fn support(&self, w: &WeylElement) -> Result<SimpleSet, WeylError> {
        let n = self.check(w)?;
        Ok(self.words[n].iter().map(|&i| i as usize).collect())
    }

    /// Elements of the parabolic subgroup `W_I`.
    pub fn parabolic(&self, i: SimpleSet) -> Vec<WeylElement> {
        self.elements
            .iter()
            .zip(&self.words)
            .filter(|(_, word)| word.iter().all(|&s| i.contains(s as usize)))
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Indices (into [`WeylGroup::elements`]) of the minimal coset
    /// representatives, memoized per mode.
    pub fn coset_min_indices(&self, mode: CosetMode) -> Arc<[usize]> {
        if let Some(hit) = self.cache.read().expect("coset cache poisoned").get(&mode) {
            return hit.clone();
        }
        let keep = |n: usize| match mode {
            CosetMode::Left(i) => self.left_desc[n].intersection(i).is_empty(),
            CosetMode::Right(j) => self.right_desc[n].intersection(j).is_empty(),
            CosetMode::Double(i, j) => {
                self.left_desc[n].intersection(i).is_empty()
                    && self.right_desc[n].intersection(j).is_empty()
            }
        };
        let list: Arc<[usize]> = (0..self.order()).filter(|&n| keep(n)).collect();
        self.cache
            .write()
            .expect("coset cache poisoned")
            .entry(mode)
            .or_insert(list)
            .clone()
    }

    pub fn coset_min_reps(&self, mode: CosetMode) -> Vec<WeylElement> {
        self.coset_min_indices(mode).iter().map(|&n| self.elements[n].clone()).collect()
    }

    pub fn is_min_left(&self, w: &WeylElement, i: SimpleSet) -> bool {
        w.left_descents(self.rank()).intersection(i).is_empty()
    }

    pub fn is_min_right(&self, w: &WeylElement, j: SimpleSet) -> bool {
        w.right_descents(self.rank()).intersection(j).is_empty()
    }

    /// Writes `w = w_I * x * w_J` with `x ∈ ^I W^J`, `w_I ∈ W_I` and
    /// `w_J ∈ ^{I_x} W_J`; lengths add up.
    pub fn decompose_double(&self, w: &WeylElement, i: SimpleSet, j: SimpleSet) -> DoubleDecomposition {
        let r = self.rank();
        let mut cur = w.clone();
        let mut v = self.identity().clone();
        // Peel left descents in I and right descents in J until none remain.
        loop {
            if let Some(s) = cur.left_descents(r).intersection(i).iter().next() {
                cur = cur.left_mul_simple(&self.rs, s);
                continue;
            }
            if let Some(s) = cur.right_descents(r).intersection(j).iter().next() {
                cur = cur.right_mul_simple(&self.rs, s);
                v = v.left_mul_simple(&self.rs, s);
                continue;
            }
            break;
        }
        let x = cur;
        let i_x = conjugate_intersection(&self.rs, x.perm(), i, j);
        // v = z * w_J with z ∈ W_{I_x}; z is absorbed into w_I.
        let mut w_j = v;
        while let Some(s) = w_j.left_descents(r).intersection(i_x).iter().next() {
            w_j = w_j.left_mul_simple(&self.rs, s);
        }
        let w_i = w.compose(&w_j.inverse()).compose(&x.inverse());
        debug_assert_eq!(w_i.length() + x.length() + w_j.length(), w.length());
        DoubleDecomposition { w_i, x, w_j }
    }

    /// For `w ∈ ^I W`, writes `w = x * w_J` with `x ∈ ^I W^J` and
    /// `w_J ∈ ^{I_x} W_J`.
    pub fn decompose_left(
        &self,
        w: &WeylElement,
        i: SimpleSet,
        j: SimpleSet,
    ) -> Result<(WeylElement, WeylElement), WeylError> {
        if !self.is_min_left(w, i) {
            return Err(WeylError::NotMinimalRep(i));
        }
        let d = self.decompose_double(w, i, j);
        debug_assert!(d.w_i.is_identity());
        Ok((d.x, d.w_j))
    }
}

fn shortlex_word_of(rs: &RootSystem, w: &WeylElement) -> Vec<u8> {
    let r = rs.rank();
    let mut word = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    while let Some(s) = cur.left_descents(r).iter().next() {
        word.push(s as u8);
        cur = cur.left_mul_simple(rs, s);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::CartanMatrix;

    pub(crate) fn group(name: &str) -> WeylGroup {
        let rs = RootSystem::with_default_cap(CartanMatrix::of_type(name).unwrap()).unwrap();
        WeylGroup::with_default_cap(rs).unwrap()
    }

    fn set(one_based: &[usize]) -> SimpleSet {
        one_based.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A1").order(), 2);
        let a2 = group("A2");
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.longest_element().length(), 3);
        assert_eq!(group("A1xA1").order(), 4);
        assert_eq!(group("A0").order(), 1);
        assert_eq!(group("B3").order(), 48);
        assert_eq!(group("D4").order(), 192);
        assert_eq!(group("G2").order(), 12);
    }

    #[test]
    fn cap_enforced() {
        let rs = RootSystem::with_default_cap(CartanMatrix::of_type("A4").unwrap()).unwrap();
        assert_eq!(WeylGroup::enumerate(rs, 100).unwrap_err(), WeylError::GroupTooLarge(100));
    }

    #[test]
    fn element_algebra() {
        let a2 = group("A2");
        let s1 = a2.simple(0);
        let s2 = a2.simple(1);
        assert!(a2.multiply(&s1, &s1).unwrap().is_identity());
        let w0 = a2.from_word(&[0, 1, 0]);
        assert_eq!(a2.length(&w0).unwrap(), 3);
        assert_eq!(a2.shortlex_word(&w0).unwrap(), vec![0, 1, 0]);
        assert_eq!(&w0, a2.longest_element());
        let s1s2 = a2.multiply(&s1, &s2).unwrap();
        let inv = a2.inverse(&s1s2).unwrap();
        assert_eq!(inv, a2.multiply(&s2, &s1).unwrap());
        assert_eq!(a2.length(&inv).unwrap(), a2.length(&s1s2).unwrap());
        // w0 sends alpha1 to -alpha2
        assert_eq!(a2.act_on_root(&w0, &Root(vec![1, 0])).unwrap(), Root(vec![0, -1]));
    }

    #[test]
    fn mixed_groups_rejected() {
        let a2 = group("A2");
        let b2 = group("B2");
        let s = b2.simple(0);
        assert_eq!(a2.multiply(&a2.simple(0), &s), Err(WeylError::MixedGroups));
        assert_eq!(a2.length(&s), Err(WeylError::MixedGroups));
    }

    #[test]
    fn longest_elements() {
        let a1 = group("A1");
        assert_eq!(a1.longest_element(), &a1.simple(0));
        let g = group("A1xA1");
        let w0 = g.longest_element();
        for k in 0..4 {
            assert_eq!(w0.apply(k), g.root_system().negate(k));
        }
        for name in ["A3", "B3", "D4", "G2"] {
            let g = group(name);
            let w0 = g.longest_element();
            assert!(w0.compose(w0).is_identity());
            assert_eq!(w0.length(), g.root_system().num_positive());
        }
    }

    #[test]
    fn min_left_reps() {
        let a2 = group("A2");
        assert_eq!(a2.coset_min_reps(CosetMode::Left(SimpleSet::empty())).len(), 6);
        let reps = a2.coset_min_reps(CosetMode::Left(set(&[2])));
        let words: Vec<_> = reps.iter().map(|w| a2.shortlex_word(w).unwrap()).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![0, 1]]);
        let g = group("A1xA1");
        let reps = g.coset_min_reps(CosetMode::Left(set(&[1])));
        let words: Vec<_> = reps.iter().map(|w| g.shortlex_word(w).unwrap()).collect();
        assert_eq!(words, vec![vec![], vec![1]]);
    }

    #[test]
    fn decompositions() {
        let a2 = group("A2");
        let e = a2.identity().clone();
        let d = a2.decompose_double(&e, set(&[1]), set(&[2]));
        assert!(d.w_i.is_identity() && d.x.is_identity() && d.w_j.is_identity());

        let w0 = a2.longest_element().clone();
        let d = a2.decompose_double(&w0, set(&[1]), set(&[1]));
        assert_eq!(d.w_i, a2.simple(0));
        assert_eq!(d.x, a2.simple(1));
        assert_eq!(d.w_j, a2.simple(0));

        let s2s1 = a2.from_word(&[1, 0]);
        let d = a2.decompose_double(&s2s1, set(&[2]), SimpleSet::empty());
        assert_eq!((d.w_i, d.x, d.w_j.is_identity()), (a2.simple(1), a2.simple(0), true));

        let s1s2 = a2.from_word(&[0, 1]);
        let (x, w_j) = a2.decompose_left(&s1s2, set(&[2]), set(&[1])).unwrap();
        assert_eq!(x.compose(&w_j), s1s2);
        assert_eq!(x.length() + w_j.length(), 2);
        assert_eq!(
            a2.decompose_left(&s2s1, set(&[2]), set(&[1])),
            Err(WeylError::NotMinimalRep(set(&[2])))
        );
    }
}
