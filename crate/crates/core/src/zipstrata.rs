//! Stratification of the stack of `Ĝ`-zips of type `(χ, Θ)`.
//!
//! From the combinatorial datum (root datum, `Ω`, the `q₀`-Frobenius `σ` on
//! the based root datum, `e` with `q = q₀^e`, the parabolic type `I` of `χ`,
//! and `Θ ⊂ Ω`) this computes the opposite type `J`, the twisting elements
//! `w₁, w₂`, the Θ-orbits `Ξ = Θ \ ^I Ŵ` under `θ·w = θ w ψ̂(θ)⁻¹`, and the
//! Galois orbits of `τ = σ^e` on `Ξ` together with their invariants
//! `a = #(Φ⁺ \ Φ_I) − ℓ_{I,J}` and `f = orbit size`.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_slice, Execution};
use crate::extweyl::{CanonicalDecomposition, ExtWeylElement, ExtWeylError, ExtWeylGroup, OmegaSpec};
use crate::rootsystem::{CartanMatrix, Root, RootSystem, RootSystemError, DEFAULT_ROOT_CAP};
use crate::subset::SimpleSet;
use crate::weyl::{invert_perm, WeylElement, WeylError, WeylGroup, DEFAULT_GROUP_CAP};
use crate::zetafn::{rational_pow, ExactRational, QLaurent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZipError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    ExtWeyl(#[from] ExtWeylError),
    #[error("Omega must act by diagram automorphisms (preserving the positive roots)")]
    OmegaNotBased,
    #[error("invalid Frobenius action phi0: {0}")]
    InvalidFrobenius(String),
    #[error("invalid parabolic type I: {0}")]
    InvalidParabolic(String),
    #[error("theta is not a subgroup of Omega: {0}")]
    ThetaNotSubgroup(String),
    #[error("theta element `{0}` does not preserve I")]
    ThetaDoesNotPreserveI(String),
    #[error("the q-Frobenius phi0^e does not fix I")]
    FrobeniusDoesNotFixI,
    #[error("the q-Frobenius phi0^e does not preserve theta")]
    FrobeniusDoesNotFixTheta,
    #[error("q0 = {0} is not a prime power")]
    BadPrimePower(u64),
    #[error("e must be at least 1")]
    BadExponent,
    #[error("the theta action does not preserve ^I Ŵ")]
    ThetaActionLeaks,
    #[error("the Galois action does not preserve the theta-orbits")]
    GaloisActionLeaks,
    #[error("ℓ_IJ is not constant on an orbit ({0})")]
    LengthNotInvariant(String),
    #[error("stratum with negative automorphism dimension")]
    NegativeDimension,
}

/// The Frobenius action on the based root datum as given in configs:
/// a permutation of the simple roots (1-based) and of the `Ω` labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSpec {
    pub diagram_perm: Vec<usize>,
    /// Image of each `Ω` element, listed in the order of `omega.elements`.
    pub omega_perm: Vec<String>,
}

/// Unvalidated input datum. Simple roots are 1-based; `Ω` and `Θ` elements
/// are referred to by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZipDatumSpec {
    pub cartan: Vec<Vec<i32>>,
    pub omega: OmegaSpec,
    pub phi0: FrobeniusSpec,
    pub q0: u64,
    pub e: u32,
    #[serde(rename = "I")]
    pub parabolic: Vec<usize>,
    pub theta: Vec<String>,
}

impl ZipDatumSpec {
    /// Split group with trivial `Ω` and `Θ`, `q = q₀ = p`.
    pub fn split(cartan: &CartanMatrix, p: u64, parabolic: SimpleSet) -> ZipDatumSpec {
        let r = cartan.rank();
        ZipDatumSpec {
            cartan: cartan.rows(),
            omega: OmegaSpec::trivial(r),
            phi0: FrobeniusSpec { diagram_perm: (1..=r).collect(), omega_perm: vec!["1".into()] },
            q0: p,
            e: 1,
            parabolic: parabolic.to_one_based(),
            theta: vec!["1".into()],
        }
    }
}

/// A diagram automorphism together with an automorphism of `Ω`, acting on
/// `Ŵ` by `(w, ω) ↦ (π w π⁻¹, σ(ω))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frobenius {
    pub diagram: Vec<usize>,
    pub omega: Vec<usize>,
    root_perm: Box<[u16]>,
    root_perm_inv: Box<[u16]>,
}

impl Frobenius {
    fn new(rs: &RootSystem, diagram: Vec<usize>, omega: Vec<usize>) -> Frobenius {
        let perm: Box<[u16]> = rs
            .roots()
            .iter()
            .map(|alpha| {
                let mut img = vec![0; alpha.0.len()];
                for (i, &c) in alpha.0.iter().enumerate() {
                    img[diagram[i]] = c;
                }
                rs.ordinal(&Root(img)).expect("diagram automorphism preserves roots") as u16
            })
            .collect();
        let inv = invert_perm(&perm);
        Frobenius { diagram, omega, root_perm: perm, root_perm_inv: inv }
    }

    fn compose(&self, rs: &RootSystem, other: &Frobenius) -> Frobenius {
        let diagram = other.diagram.iter().map(|&i| self.diagram[i]).collect();
        let omega = other.omega.iter().map(|&o| self.omega[o]).collect();
        Frobenius::new(rs, diagram, omega)
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> WeylElement {
        w.conjugate_by(&self.root_perm, &self.root_perm_inv)
    }

    pub fn apply_inverse_weyl(&self, w: &WeylElement) -> WeylElement {
        w.conjugate_by(&self.root_perm_inv, &self.root_perm)
    }

    pub fn apply(&self, x: &ExtWeylElement) -> ExtWeylElement {
        ExtWeylElement { w: self.apply_weyl(&x.w), omega: self.omega[x.omega] }
    }

    pub fn apply_subset(&self, i: SimpleSet) -> SimpleSet {
        i.map(|s| self.diagram[s])
    }
}

/// `J`, `w₁ ∈ ^J W^{σ(I)}` minimal in `W_J w₀ W_{σ(I)}`, and `w₂ = σ⁻¹(w₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub j: SimpleSet,
    pub w1: WeylElement,
    pub w2: WeylElement,
}

/// One Galois orbit `ξ̄` of `Ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// ShortLex-least element of the whole `Γ × Θ` orbit.
    pub orbit_rep: ExtWeylElement,
    /// The Θ-orbit of the representative.
    pub theta_orbit: Vec<ExtWeylElement>,
    /// Number of elements of `^I Ŵ` in the Galois orbit.
    pub members: usize,
    pub ell: usize,
    pub a: usize,
    pub f: usize,
}

/// One element of `^I Ŵ` with its canonical decomposition.
#[derive(Clone, Debug)]
pub struct ElementRow {
    pub element: ExtWeylElement,
    pub decomposition: CanonicalDecomposition,
    pub ell: usize,
    /// Index of its Θ-orbit, in order of first appearance.
    pub theta_orbit: usize,
}

/// A validated datum.
#[derive(Debug)]
pub struct ZipDatum {
    spec: ZipDatumSpec,
    group: ExtWeylGroup,
    parabolic: SimpleSet,
    theta: Vec<usize>,
    sigma: Frobenius,
    tau: Frobenius,
    p: u64,
}

fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn validate_spec(spec: &ZipDatumSpec) -> Result<ZipDatum, ZipError> {
    ZipDatum::new(spec.clone())
}

impl ZipDatum {
    pub fn new(spec: ZipDatumSpec) -> Result<ZipDatum, ZipError> {
        Self::with_caps(spec, DEFAULT_ROOT_CAP, DEFAULT_GROUP_CAP)
    }

    pub fn with_caps(spec: ZipDatumSpec, root_cap: usize, group_cap: usize) -> Result<ZipDatum, ZipError> {
        let cartan = CartanMatrix::new(spec.cartan.clone())?;
        let r = cartan.rank();
        let rs = RootSystem::build(cartan.clone(), root_cap)?;
        let weyl = WeylGroup::enumerate(rs, group_cap)?;
        let group = ExtWeylGroup::from_spec(weyl, &spec.omega)?;
        let omega = group.omega();
        if !omega.is_based() {
            return Err(ZipError::OmegaNotBased);
        }
        let n = omega.order();

        let frob_err = ZipError::InvalidFrobenius;
        let diagram: Vec<usize> = spec.phi0.diagram_perm.iter().map(|&i| i.wrapping_sub(1)).collect();
        if diagram.len() != r || SimpleSet::from_indices(diagram.iter().copied().filter(|&i| i < r)).len() != r {
            return Err(frob_err(format!("diagram_perm must be a permutation of 1..{r}")));
        }
        for i in 0..r {
            for j in 0..r {
                if cartan.get(diagram[i], diagram[j]) != cartan.get(i, j) {
                    return Err(frob_err("diagram_perm does not preserve the Cartan matrix".into()));
                }
            }
        }
        if spec.phi0.omega_perm.len() != n {
            return Err(frob_err(format!("omega_perm must list {n} labels")));
        }
        let mut omega_map = Vec::with_capacity(n);
        for label in &spec.phi0.omega_perm {
            omega_map.push(
                omega
                    .index_of(label)
                    .ok_or_else(|| frob_err(format!("unknown Omega label `{label}`")))?,
            );
        }
        let mut sorted = omega_map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(frob_err("omega_perm is not a bijection".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if omega_map[omega.mul(a, b)] != omega.mul(omega_map[a], omega_map[b]) {
                    return Err(frob_err("omega_perm is not a group automorphism".into()));
                }
            }
        }
        let sigma = Frobenius::new(group.root_system(), diagram, omega_map);
        // σ ∘ ω = σ(ω) ∘ σ on roots, so σ is an automorphism of Ŵ.
        for a in 0..n {
            let lhs: Vec<u16> = omega.root_perm(a).iter().map(|&k| sigma.root_perm[k as usize]).collect();
            let rhs: Vec<u16> =
                sigma.root_perm.iter().map(|&k| omega.root_perm(sigma.omega[a])[k as usize]).collect();
            if lhs != rhs {
                return Err(frob_err(format!(
                    "phi0 is not compatible with the action of `{}`",
                    omega.label(a)
                )));
            }
        }

        if spec.parabolic.iter().any(|&i| i == 0 || i > r) {
            return Err(ZipError::InvalidParabolic(format!("indices must lie in 1..{r}")));
        }
        let parabolic: SimpleSet = spec.parabolic.iter().map(|i| i - 1).collect();

        let mut theta = Vec::new();
        for label in &spec.theta {
            let t = omega
                .index_of(label)
                .ok_or_else(|| ZipError::ThetaNotSubgroup(format!("unknown label `{label}`")))?;
            if !theta.contains(&t) {
                theta.push(t);
            }
        }
        if !theta.contains(&omega.identity()) {
            return Err(ZipError::ThetaNotSubgroup("missing the identity".into()));
        }
        for &a in &theta {
            for &b in &theta {
                if !theta.contains(&omega.mul(a, b)) {
                    return Err(ZipError::ThetaNotSubgroup(format!(
                        "not closed: {} * {}",
                        omega.label(a),
                        omega.label(b)
                    )));
                }
            }
        }
        theta.sort_unstable();
        for &t in &theta {
            if group.conjugate_subset(t, parabolic) != parabolic {
                return Err(ZipError::ThetaDoesNotPreserveI(omega.label(t).to_string()));
            }
        }

        let p = prime_power_base(spec.q0).ok_or(ZipError::BadPrimePower(spec.q0))?;
        if spec.e == 0 {
            return Err(ZipError::BadExponent);
        }
        let mut tau = Frobenius::new(group.root_system(), (0..r).collect(), (0..n).collect());
        for _ in 0..spec.e {
            tau = sigma.compose(group.root_system(), &tau);
        }
        if tau.apply_subset(parabolic) != parabolic {
            return Err(ZipError::FrobeniusDoesNotFixI);
        }
        let mut image: Vec<usize> = theta.iter().map(|&t| tau.omega[t]).collect();
        image.sort_unstable();
        if image != theta {
            return Err(ZipError::FrobeniusDoesNotFixTheta);
        }

        Ok(ZipDatum { spec, group, parabolic, theta, sigma, tau, p })
    }

    pub fn spec(&self) -> &ZipDatumSpec {
        &self.spec
    }

    pub fn group(&self) -> &ExtWeylGroup {
        &self.group
    }

    pub fn parabolic(&self) -> SimpleSet {
        self.parabolic
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn sigma(&self) -> &Frobenius {
        &self.sigma
    }

    /// The `q`-Frobenius `τ = σ^e` generating the Galois action.
    pub fn tau(&self) -> &Frobenius {
        &self.tau
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.spec.q0.pow(self.spec.e)
    }

    /// `dim(G/P₊) = #(Φ⁺ \ Φ_I)`.
    pub fn flag_dimension(&self) -> usize {
        self.group.root_system().count_outside(self.parabolic)
    }

    pub fn compute_twist(&self) -> Twist {
        let weyl = self.group.weyl();
        let rs = weyl.root_system();
        let w0 = weyl.longest_element();
        let sigma_i = self.sigma.apply_subset(self.parabolic);
        let conj = |w: &WeylElement, i: SimpleSet| -> SimpleSet {
            i.map(|s| rs.simple_index_up_to_sign(w.apply(rs.simple_ordinal(s))).expect("maps simple roots to simple roots"))
        };
        let j = conj(w0, sigma_i);
        let w1 = weyl.decompose_double(w0, j, sigma_i).x;
        let w2 = self.sigma.apply_inverse_weyl(&w1);
        assert_eq!(conj(&w1, sigma_i), j, "w1 σ(I) w1⁻¹ = J");
        // σ ∘ inn(w₂) = inn(w₁) ∘ σ on the simple reflections.
        for s in 0..weyl.rank() {
            let x = weyl.simple(s);
            let lhs = self.sigma.apply_weyl(&w2.compose(&x).compose(&w2.inverse()));
            let rhs = w1.compose(&self.sigma.apply_weyl(&x)).compose(&w1.inverse());
            assert_eq!(lhs, rhs);
        }
        Twist { j, w1, w2 }
    }

    /// `ψ̂(x) = w₁ σ(x) w₁⁻¹`.
    pub fn psi_hat(&self, twist: &Twist, x: &ExtWeylElement) -> ExtWeylElement {
        let g = &self.group;
        let w1 = g.from_weyl(twist.w1.clone());
        g.mul_unchecked(&g.mul_unchecked(&w1, &self.sigma.apply(x)), &g.inv_unchecked(&w1))
    }

    /// `θ·x = θ x ψ̂(θ)⁻¹`.
    pub fn theta_act(&self, twist: &Twist, theta: usize, x: &ExtWeylElement) -> ExtWeylElement {
        let g = &self.group;
        let t = g.from_omega(theta);
        let psi = self.psi_hat(twist, &t);
        g.mul_unchecked(&g.mul_unchecked(&t, x), &g.inv_unchecked(&psi))
    }

    /// ShortLex key of `w'·ω`: word length, word, then `Ω` index.
    pub fn shortlex_key(&self, x: &ExtWeylElement) -> (usize, Vec<u8>, usize) {
        let weyl = self.group.weyl();
        let n = weyl.position(&x.w).expect("element of this group");
        let word = weyl.word_of_index(n).to_vec();
        (word.len(), word, x.omega)
    }

    /// Every element of `^I Ŵ` with its decomposition, `ℓ_{I,J}` and Θ-orbit.
    pub fn element_rows(&self, exec: Execution) -> Result<Vec<ElementRow>, ZipError> {
        let twist = self.compute_twist();
        let (rows, _) = self.element_rows_with(&twist, exec)?;
        Ok(rows)
    }

    fn element_rows_with(
        &self,
        twist: &Twist,
        exec: Execution,
    ) -> Result<(Vec<ElementRow>, HashMap<ExtWeylElement, usize>), ZipError> {
        let (i, j) = (self.parabolic, twist.j);
        let elems = self.group.ext_min_reps(i);
        let index: HashMap<ExtWeylElement, usize> =
            elems.iter().cloned().enumerate().map(|(n, x)| (x, n)).collect();
        let decomps = map_slice(exec, &elems, |x| {
            self.group.canonical_decomposition(x, i, j).map(|d| {
                let ell = self.group.ell_from_decomposition(&d, i, j);
                (d, ell)
            })
        });
        let mut orbit_of = vec![usize::MAX; elems.len()];
        let mut next = 0;
        for n in 0..elems.len() {
            if orbit_of[n] != usize::MAX {
                continue;
            }
            for &t in &self.theta {
                let img = self.theta_act(twist, t, &elems[n]);
                let m = *index.get(&img).ok_or(ZipError::ThetaActionLeaks)?;
                orbit_of[m] = next;
            }
            next += 1;
        }
        let mut rows = Vec::with_capacity(elems.len());
        for ((element, d), theta_orbit) in elems.into_iter().zip(decomps).zip(orbit_of) {
            let (decomposition, ell) = d?;
            rows.push(ElementRow { element, decomposition, ell, theta_orbit });
        }
        Ok((rows, index))
    }

    /// The strata, ordered by `(a, f, ShortLex of representative)`.
    pub fn classify(&self) -> Result<Vec<Stratum>, ZipError> {
        self.classify_with(Execution::default())
    }

    pub fn classify_with(&self, exec: Execution) -> Result<Vec<Stratum>, ZipError> {
        let twist = self.compute_twist();
        let (rows, index) = self.element_rows_with(&twist, exec)?;
        let num_orbits = rows.iter().map(|r| r.theta_orbit + 1).max().unwrap_or(0);
        let mut orbits: Vec<Vec<usize>> = vec![Vec::new(); num_orbits];
        for (n, row) in rows.iter().enumerate() {
            orbits[row.theta_orbit].push(n);
        }
        for orbit in &orbits {
            let ell = rows[orbit[0]].ell;
            if orbit.iter().any(|&n| rows[n].ell != ell) {
                return Err(ZipError::LengthNotInvariant("theta-orbit".into()));
            }
        }
        // τ on Θ-orbits; every member must land in the same orbit.
        let mut tau_of = vec![0; num_orbits];
        for (o, orbit) in orbits.iter().enumerate() {
            let mut target = None;
            for &n in orbit {
                let img = self.tau.apply(&rows[n].element);
                let m = *index.get(&img).ok_or(ZipError::GaloisActionLeaks)?;
                let t = rows[m].theta_orbit;
                if *target.get_or_insert(t) != t {
                    return Err(ZipError::GaloisActionLeaks);
                }
            }
            tau_of[o] = target.expect("orbits are nonempty");
        }
        let dim_flag = self.flag_dimension();
        let mut seen = vec![false; num_orbits];
        let mut strata = Vec::new();
        for start in 0..num_orbits {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut o = tau_of[start];
            while o != start {
                if seen[o] {
                    return Err(ZipError::GaloisActionLeaks);
                }
                seen[o] = true;
                cycle.push(o);
                o = tau_of[o];
            }
            let ell = rows[orbits[start][0]].ell;
            if cycle.iter().any(|&o| rows[orbits[o][0]].ell != ell) {
                return Err(ZipError::LengthNotInvariant("Galois orbit".into()));
            }
            let a = dim_flag.checked_sub(ell).ok_or(ZipError::NegativeDimension)?;
            let (rep_orbit, rep) = cycle
                .iter()
                .flat_map(|&o| orbits[o].iter().map(move |&n| (o, n)))
                .min_by_key(|&(_, n)| self.shortlex_key(&rows[n].element))
                .expect("nonempty");
            let mut theta_orbit: Vec<ExtWeylElement> =
                orbits[rep_orbit].iter().map(|&n| rows[n].element.clone()).collect();
            theta_orbit.sort_by_key(|x| self.shortlex_key(x));
            strata.push(Stratum {
                orbit_rep: rows[rep].element.clone(),
                theta_orbit,
                members: cycle.iter().map(|&o| orbits[o].len()).sum(),
                ell,
                a,
                f: cycle.len(),
            });
        }
        strata.sort_by_cached_key(|s| (s.a, s.f, self.shortlex_key(&s.orbit_rep)));
        Ok(strata)
    }
}

/// `N_v = Σ_{f | v} f · q^{-a v}`, symbolic in `q`.
pub fn point_count_set(strata: &[Stratum], v: u32) -> QLaurent {
    let mut total = QLaurent::zero();
    for s in strata.iter().filter(|s| (v as usize).is_multiple_of(s.f)) {
        let term = QLaurent::monomial(-(s.a as i64) * v as i64, BigRational::from_integer((s.f as i64).into()));
        total = &total + &term;
    }
    total
}

/// `N_v` with a numeric `q`.
pub fn point_count_numeric(strata: &[Stratum], v: u32, q: u64) -> ExactRational {
    let q = BigRational::from_integer(q.into());
    strata
        .iter()
        .filter(|s| (v as usize).is_multiple_of(s.f))
        .map(|s| BigRational::from_integer((s.f as i64).into()) * rational_pow(&q, -(s.a as i64) * v as i64))
        .sum()
}
