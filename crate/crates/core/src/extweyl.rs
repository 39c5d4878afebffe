//! The extended Weyl group `W ⋊ Ω` of a nonconnected reductive group and the
//! extended length function on `^I Ŵ = ^I W · Ω`.
//!
//! `Ω` is given abstractly by a multiplication table together with an action
//! on the root system through signed permutations of the simple roots. The
//! action need not be faithful. Elements of `Ŵ` are pairs `(w, ω)` standing
//! for the product `w·ω`, multiplied by `(w, ω)(w', ω') = (w·ωw'ω⁻¹, ωω')`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsystem::{Root, RootSystem, RootSystemError};
use crate::subset::SimpleSet;
use crate::weyl::{invert_perm, CosetMode, WeylElement, WeylError, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtWeylError {
    #[error("invalid Omega multiplication table: {0}")]
    InvalidOmegaTable(String),
    #[error("invalid Omega action on the root system: {0}")]
    InvalidOmegaAction(String),
    #[error("operands come from different extended Weyl groups")]
    MixedGroups,
    #[error("element is not in ^I Ŵ for I = {0}")]
    NotInExtMinSet(SimpleSet),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Raw description of `Ω` as it appears in configuration files.
///
/// `diagram_action[n][i]` is the signed, 1-based index of the image of the
/// simple root `alpha_{i+1}` under `elements[n]`: `3` means `alpha_3` and
/// `-3` means `-alpha_3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaSpec {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub diagram_action: Vec<Vec<i32>>,
}

impl OmegaSpec {
    pub fn trivial(rank: usize) -> OmegaSpec {
        OmegaSpec {
            elements: vec!["1".into()],
            table: vec![vec!["1".into()]],
            diagram_action: vec![(1..=rank as i32).collect()],
        }
    }
}

/// Validated component group with its action on roots.
#[derive(Clone, Debug)]
pub struct OmegaGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    /// Signed images of simple roots: `(index, negated)`.
    actions: Vec<Vec<(usize, bool)>>,
    root_perms: Vec<Box<[u16]>>,
    root_perms_inv: Vec<Box<[u16]>>,
}

impl OmegaGroup {
    pub fn new(spec: &OmegaSpec, rs: &RootSystem) -> Result<OmegaGroup, ExtWeylError> {
        let table_err = ExtWeylError::InvalidOmegaTable;
        let n = spec.elements.len();
        if n == 0 {
            return Err(table_err("no elements".into()));
        }
        let lookup = |label: &str| spec.elements.iter().position(|l| l == label);
        for (a, label) in spec.elements.iter().enumerate() {
            if lookup(label) != Some(a) {
                return Err(table_err(format!("duplicate label `{label}`")));
            }
        }
        if spec.table.len() != n || spec.table.iter().any(|row| row.len() != n) {
            return Err(table_err(format!("table must be {n}x{n}")));
        }
        let mut table = vec![vec![0; n]; n];
        for (a, row) in spec.table.iter().enumerate() {
            for (b, label) in row.iter().enumerate() {
                table[a][b] = lookup(label)
                    .ok_or_else(|| table_err(format!("unknown label `{label}` in table")))?;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| table_err("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(table_err(format!(
                            "not associative at ({}, {}, {})",
                            spec.elements[a], spec.elements[b], spec.elements[c]
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| table_err(format!("`{}` has no inverse", spec.elements[a])))?;
            inverses.push(inv);
        }

        let act_err = ExtWeylError::InvalidOmegaAction;
        let r = rs.rank();
        if spec.diagram_action.len() != n {
            return Err(act_err(format!("expected {n} actions, got {}", spec.diagram_action.len())));
        }
        let mut actions = Vec::with_capacity(n);
        let mut root_perms = Vec::with_capacity(n);
        for (a, images) in spec.diagram_action.iter().enumerate() {
            let label = &spec.elements[a];
            if images.len() != r {
                return Err(act_err(format!("action of `{label}` must list {r} images")));
            }
            let mut hit = SimpleSet::empty();
            let mut signed = Vec::with_capacity(r);
            for &v in images {
                let idx = v.unsigned_abs() as usize;
                if v == 0 || idx > r || hit.contains(idx - 1) {
                    return Err(act_err(format!(
                        "action of `{label}` is not a signed permutation of 1..{r}"
                    )));
                }
                hit.insert(idx - 1);
                signed.push((idx - 1, v < 0));
            }
            let mut perm = Vec::with_capacity(rs.num_roots());
            for alpha in rs.roots() {
                let img = apply_signed(&signed, alpha);
                let k = rs.ordinal(&img).ok_or_else(|| {
                    act_err(format!("action of `{label}` does not preserve the root system"))
                })?;
                perm.push(k as u16);
            }
            actions.push(signed);
            root_perms.push(perm.into_boxed_slice());
        }
        for a in 0..n {
            for b in 0..n {
                let composed: Box<[u16]> =
                    root_perms[b].iter().map(|&k| root_perms[a][k as usize]).collect();
                if composed != root_perms[table[a][b]] {
                    return Err(act_err(format!(
                        "action is not a homomorphism at ({}, {})",
                        spec.elements[a], spec.elements[b]
                    )));
                }
            }
        }
        let root_perms_inv = root_perms.iter().map(|p| invert_perm(p)).collect();
        Ok(OmegaGroup {
            labels: spec.elements.clone(),
            table,
            identity,
            inverses,
            actions,
            root_perms,
            root_perms_inv,
        })
    }

    pub fn trivial(rs: &RootSystem) -> OmegaGroup {
        Self::new(&OmegaSpec::trivial(rs.rank()), rs).expect("trivial Omega is valid")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn root_perm(&self, a: usize) -> &[u16] {
        &self.root_perms[a]
    }

    /// Image of the simple index `i` under `a`, ignoring sign.
    pub fn simple_image(&self, a: usize, i: usize) -> usize {
        self.actions[a][i].0
    }

    /// Whether every element maps simple roots to simple roots (and hence
    /// preserves `Φ⁺`).
    pub fn is_based(&self) -> bool {
        self.actions.iter().all(|act| act.iter().all(|&(_, neg)| !neg))
    }
}

fn apply_signed(signed: &[(usize, bool)], alpha: &Root) -> Root {
    let mut out = vec![0; alpha.0.len()];
    for (i, &c) in alpha.0.iter().enumerate() {
        let (j, neg) = signed[i];
        out[j] += if neg { -c } else { c };
    }
    Root(out)
}

/// An element `w·ω` of `Ŵ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtWeylElement {
    pub w: WeylElement,
    pub omega: usize,
}

/// `ŵ = ω·w''` with `w'' = y·w_J`, `y ∈ ^{ω⁻¹Iω} W^J`, `w_J ∈ ^{I_{ωy}} W_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pub omega: usize,
    pub w_double_prime: WeylElement,
    pub y: WeylElement,
    pub w_j: WeylElement,
    /// `ŵ ∈ ^I Ŵ^J`.
    pub is_double_min: bool,
}

#[derive(Debug)]
pub struct ExtWeylGroup {
    weyl: WeylGroup,
    omega: OmegaGroup,
}

impl ExtWeylGroup {
    pub fn new(weyl: WeylGroup, omega: OmegaGroup) -> Self {
        ExtWeylGroup { weyl, omega }
    }

    pub fn from_spec(weyl: WeylGroup, spec: &OmegaSpec) -> Result<Self, ExtWeylError> {
        let omega = OmegaGroup::new(spec, weyl.root_system())?;
        Ok(Self::new(weyl, omega))
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn omega(&self) -> &OmegaGroup {
        &self.omega
    }

    pub fn root_system(&self) -> &RootSystem {
        self.weyl.root_system()
    }

    pub fn order(&self) -> usize {
        self.weyl.order() * self.omega.order()
    }

    pub fn identity(&self) -> ExtWeylElement {
        ExtWeylElement { w: self.weyl.identity().clone(), omega: self.omega.identity() }
    }

    pub fn from_weyl(&self, w: WeylElement) -> ExtWeylElement {
        ExtWeylElement { w, omega: self.omega.identity() }
    }

    pub fn from_omega(&self, omega: usize) -> ExtWeylElement {
        ExtWeylElement { w: self.weyl.identity().clone(), omega }
    }

    pub fn elements(&self) -> Vec<ExtWeylElement> {
        self.weyl
            .elements()
            .iter()
            .flat_map(|w| (0..self.omega.order()).map(|o| ExtWeylElement { w: w.clone(), omega: o }))
            .collect()
    }

    fn check(&self, x: &ExtWeylElement) -> Result<(), ExtWeylError> {
        if x.omega >= self.omega.order() || self.weyl.position(&x.w).is_none() {
            return Err(ExtWeylError::MixedGroups);
        }
        Ok(())
    }

    /// `ω w ω⁻¹`.
    pub fn conjugate_weyl(&self, omega: usize, w: &WeylElement) -> WeylElement {
        w.conjugate_by(&self.omega.root_perms[omega], &self.omega.root_perms_inv[omega])
    }

    pub(crate) fn mul_unchecked(&self, a: &ExtWeylElement, b: &ExtWeylElement) -> ExtWeylElement {
        ExtWeylElement {
            w: a.w.compose(&self.conjugate_weyl(a.omega, &b.w)),
            omega: self.omega.mul(a.omega, b.omega),
        }
    }

    pub(crate) fn inv_unchecked(&self, a: &ExtWeylElement) -> ExtWeylElement {
        let oi = self.omega.inv(a.omega);
        ExtWeylElement { w: self.conjugate_weyl(oi, &a.w.inverse()), omega: oi }
    }

    pub fn multiply(&self, a: &ExtWeylElement, b: &ExtWeylElement) -> Result<ExtWeylElement, ExtWeylError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inverse(&self, a: &ExtWeylElement) -> Result<ExtWeylElement, ExtWeylError> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    /// The permutation of root ordinals induced by `w·ω`.
    pub fn root_perm(&self, a: &ExtWeylElement) -> Box<[u16]> {
        let o = &self.omega.root_perms[a.omega];
        o.iter().map(|&k| a.w.perm()[k as usize]).collect()
    }

    /// `w(ω(alpha))`.
    pub fn act_on_root(&self, a: &ExtWeylElement, alpha: &Root) -> Result<Root, ExtWeylError> {
        self.check(a)?;
        let rs = self.root_system();
        let k = rs
            .ordinal(alpha)
            .ok_or_else(|| WeylError::RootSystem(RootSystemError::RootNotInSystem(alpha.0.clone())))?;
        let img = a.w.apply(self.omega.root_perms[a.omega][k] as usize);
        Ok(rs.root(img).clone())
    }

    /// `ωIω⁻¹ = {ω(i) : i ∈ I}`.
    pub fn conjugate_subset(&self, omega: usize, i: SimpleSet) -> SimpleSet {
        i.map(|s| self.omega.simple_image(omega, s))
    }

    pub fn is_in_ext_min_set(&self, a: &ExtWeylElement, i: SimpleSet) -> bool {
        self.weyl.is_min_left(&a.w, i)
    }

    /// `^I Ŵ = {w'·ω : w' ∈ ^I W, ω ∈ Ω}`, ordered by `w'` then `ω`.
    pub fn ext_min_reps(&self, i: SimpleSet) -> Vec<ExtWeylElement> {
        let reps = self.weyl.coset_min_indices(CosetMode::Left(i));
        reps.iter()
            .flat_map(|&n| {
                (0..self.omega.order())
                    .map(move |o| ExtWeylElement { w: self.weyl.element(n).clone(), omega: o })
            })
            .collect()
    }

    /// `^I Ŵ^J` as a filter over `^I Ŵ`.
    pub fn ext_double_min_reps(&self, i: SimpleSet, j: SimpleSet) -> Vec<ExtWeylElement> {
        self.ext_min_reps(i)
            .into_iter()
            .filter(|a| self.canonical_decomposition(a, i, j).is_ok_and(|d| d.is_double_min))
            .collect()
    }

    pub fn canonical_decomposition(
        &self,
        a: &ExtWeylElement,
        i: SimpleSet,
        j: SimpleSet,
    ) -> Result<CanonicalDecomposition, ExtWeylError> {
        self.check(a)?;
        if !self.is_in_ext_min_set(a, i) {
            return Err(ExtWeylError::NotInExtMinSet(i));
        }
        let oi = self.omega.inv(a.omega);
        let w2 = self.conjugate_weyl(oi, &a.w);
        let twisted_i = self.conjugate_subset(oi, i);
        let (y, w_j) = self
            .weyl
            .decompose_left(&w2, twisted_i, j)
            .map_err(|_| ExtWeylError::NotInExtMinSet(i))?;
        let is_double_min = w_j.is_identity();
        Ok(CanonicalDecomposition { omega: a.omega, w_double_prime: w2, y, w_j, is_double_min })
    }

    /// `ℓ_{I,J}(ŵ) = #{α ∈ Φ⁺ \ Φ_J : ωyα ∈ Φ⁻ \ Φ_I} + ℓ(w_J)`, counted
    /// root by root.
    pub fn ell_ij(&self, a: &ExtWeylElement, i: SimpleSet, j: SimpleSet) -> Result<usize, ExtWeylError> {
        let d = self.canonical_decomposition(a, i, j)?;
        Ok(self.ell_from_decomposition(&d, i, j))
    }

    pub fn ell_from_decomposition(&self, d: &CanonicalDecomposition, i: SimpleSet, j: SimpleSet) -> usize {
        let rs = self.root_system();
        let omega_perm = &self.omega.root_perms[d.omega];
        let count = (0..rs.num_positive())
            .filter(|&k| !rs.in_subsystem(k, j))
            .filter(|&k| {
                let img = omega_perm[d.y.apply(k)] as usize;
                !rs.is_positive(img) && !rs.in_subsystem(img, i)
            })
            .count();
        count + d.w_j.length()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::CartanMatrix;

    fn weyl(name: &str) -> WeylGroup {
        let rs = RootSystem::with_default_cap(CartanMatrix::of_type(name).unwrap()).unwrap();
        WeylGroup::with_default_cap(rs).unwrap()
    }

    fn swap_spec() -> OmegaSpec {
        OmegaSpec {
            elements: vec!["1".into(), "sigma".into()],
            table: vec![vec!["1".into(), "sigma".into()], vec!["sigma".into(), "1".into()]],
            diagram_action: vec![vec![1, 2], vec![2, 1]],
        }
    }

    fn o4() -> ExtWeylGroup {
        ExtWeylGroup::from_spec(weyl("A1xA1"), &swap_spec()).unwrap()
    }

    fn sl2_omega() -> ExtWeylGroup {
        let spec = OmegaSpec {
            elements: vec!["1".into(), "omega".into()],
            table: vec![vec!["1".into(), "omega".into()], vec!["omega".into(), "1".into()]],
            diagram_action: vec![vec![1], vec![-1]],
        };
        ExtWeylGroup::from_spec(weyl("A1"), &spec).unwrap()
    }

    #[test]
    fn semidirect_algebra() {
        let g = o4();
        let om = g.from_omega(1);
        assert!(g.multiply(&om, &g.inverse(&om).unwrap()).unwrap() == g.identity());
        assert_eq!(g.act_on_root(&om, &Root(vec![1, 0])).unwrap(), Root(vec![0, 1]));
        let s1 = g.from_weyl(g.weyl().simple(0));
        let s2 = g.from_weyl(g.weyl().simple(1));
        assert_eq!(g.multiply(&s1, &om).unwrap(), g.multiply(&om, &s2).unwrap());
        assert_eq!(g.conjugate_subset(1, SimpleSet::from_indices([0])), SimpleSet::from_indices([1]));
        // group axioms by brute force
        let all = g.elements();
        assert_eq!(all.len(), 8);
        for a in &all {
            for b in &all {
                let ab = g.multiply(a, b).unwrap();
                for c in &all {
                    assert_eq!(
                        g.multiply(&ab, c).unwrap(),
                        g.multiply(a, &g.multiply(b, c).unwrap()).unwrap()
                    );
                }
                // action on roots is compatible with multiplication
                for alpha in g.root_system().roots() {
                    let lhs = g.act_on_root(&ab, alpha).unwrap();
                    let rhs = g.act_on_root(a, &g.act_on_root(b, alpha).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn omega_validation() {
        let w = weyl("A1xA1");
        let mut bad = swap_spec();
        bad.table[1][1] = "sigma".into();
        assert!(matches!(OmegaGroup::new(&bad, w.root_system()), Err(ExtWeylError::InvalidOmegaTable(_))));
        let mut bad = swap_spec();
        bad.diagram_action[1] = vec![1, 1];
        assert!(matches!(OmegaGroup::new(&bad, w.root_system()), Err(ExtWeylError::InvalidOmegaAction(_))));
        // B2 has no diagram automorphism swapping its nodes
        let b2 = weyl("B2");
        let mut bad = swap_spec();
        bad.diagram_action[0] = vec![1, 2];
        assert!(matches!(OmegaGroup::new(&bad, b2.root_system()), Err(ExtWeylError::InvalidOmegaAction(_))));
        // non-faithful action is fine
        let mut nf = swap_spec();
        nf.diagram_action[1] = vec![1, 2];
        assert!(OmegaGroup::new(&nf, w.root_system()).is_ok());
    }

    #[test]
    fn ext_min_reps_sizes() {
        let g = ExtWeylGroup::new(weyl("A2"), OmegaGroup::trivial(weyl("A2").root_system()));
        assert_eq!(g.ext_min_reps(SimpleSet::from_indices([1])).len(), 3);
        let flip = OmegaSpec {
            elements: vec!["1".into(), "f".into()],
            table: vec![vec!["1".into(), "f".into()], vec!["f".into(), "1".into()]],
            diagram_action: vec![vec![1, 2], vec![2, 1]],
        };
        let g = ExtWeylGroup::from_spec(weyl("A2"), &flip).unwrap();
        assert_eq!(g.ext_min_reps(SimpleSet::empty()).len(), 12);
        assert_eq!(o4().ext_min_reps(SimpleSet::from_indices([0])).len(), 4);
    }

    #[test]
    fn o4_table() {
        let g = o4();
        let i = SimpleSet::from_indices([0]);
        let s1 = g.weyl().simple(0);
        let s2 = g.weyl().simple(1);
        let e = g.weyl().identity().clone();

        let row = |w: &WeylElement, o: usize| {
            let a = ExtWeylElement { w: w.clone(), omega: o };
            (g.canonical_decomposition(&a, i, i).unwrap(), g.ell_ij(&a, i, i).unwrap())
        };
        let (d, l) = row(&e, 0);
        assert_eq!((d.omega, &d.w_double_prime, &d.y, &d.w_j, l), (0, &e, &e, &e, 0));
        let (d, l) = row(&s2, 0);
        assert_eq!((d.omega, &d.w_double_prime, &d.y, &d.w_j, l), (0, &s2, &s2, &e, 1));
        let (d, l) = row(&e, 1);
        assert_eq!((d.omega, &d.w_double_prime, &d.y, &d.w_j, l), (1, &e, &e, &e, 0));
        let (d, l) = row(&s2, 1);
        assert_eq!((d.omega, &d.w_double_prime, &d.y, &d.w_j, l), (1, &s1, &e, &s1, 1));
        assert!(!d.is_double_min);

        let s1_hat = ExtWeylElement { w: s1, omega: 0 };
        assert_eq!(g.ell_ij(&s1_hat, i, i), Err(ExtWeylError::NotInExtMinSet(i)));
    }

    #[test]
    fn sl2_remark_lengths() {
        let g = sl2_omega();
        let om = g.from_omega(1);
        let empty = SimpleSet::empty();
        let s = SimpleSet::full(1);
        assert_eq!(g.ell_ij(&om, empty, empty).unwrap(), 1);
        assert_eq!(g.ell_ij(&om, empty, s).unwrap(), 0);
        assert_eq!(g.ell_ij(&om, s, s).unwrap(), 0);
        assert_eq!(g.ell_ij(&om, s, empty).unwrap(), 0);
        assert!(!g.omega().is_based());
    }

    #[test]
    fn restriction_to_weyl() {
        let w = weyl("A3");
        let omega = OmegaGroup::trivial(w.root_system());
        let g = ExtWeylGroup::new(w, omega);
        for bits in 0..8u64 {
            let i = SimpleSet::from_bits(bits);
            for jb in 0..8u64 {
                let j = SimpleSet::from_bits(jb);
                for a in g.ext_min_reps(i) {
                    assert_eq!(g.ell_ij(&a, i, j).unwrap(), a.w.length());
                }
            }
        }
    }
}
