//! The alcove order on `Ã₂`, that is `≤_B` for `B = {α, β, α+β}^∧`.
//!
//! Everything here is specific to this one `B`: closed-form cover deltas for
//! the six cosets `xT` of the translation lattice, explicit inversion sets,
//! sphericity of short intervals, the coset decomposition over the infinite
//! dihedral subgroup `U = ⟨s_{δ−α−β}, s_αs_βs_α⟩`, the rotation automorphisms
//! and the Poincaré series of the downsets.
//!
//! Translations are parametrised as `t_{k₁α+k₂β}` with the normalisation
//! `(α, α) = 1`, so `α∨ = 2α` and the coroot lattice is `k₁, k₂` even.

use std::collections::{BTreeSet, HashMap};

use crate::affine_root::AffineRoot;
use crate::affine_weyl::{AffineElement, AffineWeyl};
use crate::biclosed::BiclosedSet;
use crate::error::Error;
use crate::finite::{FinElem, RootId, TypeLabel};
use crate::poset::GradedPoset;
use crate::twisted::{Cover, TwistedOrder};

/// Labels of the published Hasse fragment, in the `a₁a₂⋯a_t` digit convention.
pub const FIGURE_LABELS: [&str; 27] = [
    "2132", "32132", "132", "32", "2", "e", "1", "31", "3", "13", "131", "23", "232", "213", "123", "1213", "2131",
    "32131", "3213", "1232", "12132", "3123", "13123", "231", "213123", "1231", "21231",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SixClass {
    T,
    SaSbT,
    SbSaT,
    SbSaSbT,
    SbT,
    SaT,
}

impl SixClass {
    pub const ALL: [SixClass; 6] =
        [SixClass::T, SixClass::SaSbT, SixClass::SbSaT, SixClass::SbSaSbT, SixClass::SbT, SixClass::SaT];

    pub fn as_str(self) -> &'static str {
        match self {
            SixClass::T => "T",
            SixClass::SaSbT => "sasbT",
            SixClass::SbSaT => "sbsaT",
            SixClass::SbSaSbT => "sbsasbT",
            SixClass::SbT => "sbT",
            SixClass::SaT => "saT",
        }
    }

    /// Word of the finite part over `{s_α, s_β}` (0-based generators).
    pub fn finite_word(self) -> &'static [usize] {
        match self {
            SixClass::T => &[],
            SixClass::SaSbT => &[0, 1],
            SixClass::SbSaT => &[1, 0],
            SixClass::SbSaSbT => &[1, 0, 1],
            SixClass::SbT => &[1],
            SixClass::SaT => &[0],
        }
    }
}

/// The three positive finite roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gamma {
    Alpha,
    Beta,
    AlphaBeta,
}

impl Gamma {
    pub const ALL: [Gamma; 3] = [Gamma::Alpha, Gamma::Beta, Gamma::AlphaBeta];

    pub fn name(self) -> &'static str {
        match self {
            Gamma::Alpha => "a",
            Gamma::Beta => "b",
            Gamma::AlphaBeta => "a+b",
        }
    }
}

/// `l_B(s_{γ+kδ}w) − l_B(w)` for `w` in the given class, as `slope·k + offset`.
pub fn predicted_delta(class: SixClass, gamma: Gamma, k: i64) -> i64 {
    let (a, b) = match (class, gamma) {
        (SixClass::T, Gamma::Alpha | Gamma::Beta) => (-2, -1),
        (SixClass::T, Gamma::AlphaBeta) => (-4, -3),
        (SixClass::SaSbT, Gamma::Alpha) => (4, 1),
        (SixClass::SaSbT, Gamma::Beta) => (-2, -1),
        (SixClass::SaSbT, Gamma::AlphaBeta) => (2, 1),
        (SixClass::SbSaT, Gamma::Alpha) => (-2, -1),
        (SixClass::SbSaT, Gamma::Beta) => (4, 1),
        (SixClass::SbSaT, Gamma::AlphaBeta) => (2, 1),
        (SixClass::SbSaSbT, Gamma::Alpha | Gamma::Beta) => (2, 1),
        (SixClass::SbSaSbT, Gamma::AlphaBeta) => (4, 3),
        (SixClass::SbT, Gamma::Alpha) => (-4, -1),
        (SixClass::SbT, Gamma::Beta) => (2, 1),
        (SixClass::SbT, Gamma::AlphaBeta) => (-2, -1),
        (SixClass::SaT, Gamma::Alpha) => (2, 1),
        (SixClass::SaT, Gamma::Beta) => (-4, -1),
        (SixClass::SaT, Gamma::AlphaBeta) => (-2, -1),
    };
    a * k + b
}

/// One closed-form inversion set, indexed by the element it describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NFormula {
    /// `N(s_{α+kδ})`, `k ≥ 0`.
    SAlphaNonneg,
    /// `N(s_{α+kδ})`, `k < 0`.
    SAlphaNeg,
    SAlphaBetaNonneg,
    SAlphaBetaNeg,
    SBetaNonneg,
    SBetaNeg,
    /// `N(t)`.
    T,
    /// `N(t s_{α+kδ})`.
    TSAlpha,
    TSAlphaBeta,
    /// `N(t s_α)`.
    TSa,
    TSaSAlpha,
    TSaSBeta,
    TSaSAlphaBeta,
    /// `N(t s_αs_β)`.
    TSaSb,
    TSaSbSAlpha,
    TSaSbSBeta,
    TSaSbSAlphaBeta,
    /// `N(t s_αs_βs_α)`.
    TSaSbSa,
    TSaSbSaSAlpha,
    TSaSbSaSAlphaBeta,
}

impl NFormula {
    pub const ALL: [NFormula; 20] = [
        NFormula::SAlphaNonneg,
        NFormula::SAlphaNeg,
        NFormula::SAlphaBetaNonneg,
        NFormula::SAlphaBetaNeg,
        NFormula::SBetaNonneg,
        NFormula::SBetaNeg,
        NFormula::T,
        NFormula::TSAlpha,
        NFormula::TSAlphaBeta,
        NFormula::TSa,
        NFormula::TSaSAlpha,
        NFormula::TSaSBeta,
        NFormula::TSaSAlphaBeta,
        NFormula::TSaSb,
        NFormula::TSaSbSAlpha,
        NFormula::TSaSbSBeta,
        NFormula::TSaSbSAlphaBeta,
        NFormula::TSaSbSa,
        NFormula::TSaSbSaSAlpha,
        NFormula::TSaSbSaSAlphaBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NFormula::SAlphaNonneg => "s_{a+kd}, k>=0",
            NFormula::SAlphaNeg => "s_{a+kd}, k<0",
            NFormula::SAlphaBetaNonneg => "s_{a+b+kd}, k>=0",
            NFormula::SAlphaBetaNeg => "s_{a+b+kd}, k<0",
            NFormula::SBetaNonneg => "s_{b+kd}, k>=0",
            NFormula::SBetaNeg => "s_{b+kd}, k<0",
            NFormula::T => "t",
            NFormula::TSAlpha => "t s_{a+kd}",
            NFormula::TSAlphaBeta => "t s_{a+b+kd}",
            NFormula::TSa => "t s_a",
            NFormula::TSaSAlpha => "t s_a s_{a+kd}",
            NFormula::TSaSBeta => "t s_a s_{b+kd}",
            NFormula::TSaSAlphaBeta => "t s_a s_{a+b+kd}",
            NFormula::TSaSb => "t s_a s_b",
            NFormula::TSaSbSAlpha => "t s_a s_b s_{a+kd}",
            NFormula::TSaSbSBeta => "t s_a s_b s_{b+kd}",
            NFormula::TSaSbSAlphaBeta => "t s_a s_b s_{a+b+kd}",
            NFormula::TSaSbSa => "t s_a s_b s_a",
            NFormula::TSaSbSaSAlpha => "t s_a s_b s_a s_{a+kd}",
            NFormula::TSaSbSaSAlphaBeta => "t s_a s_b s_a s_{a+b+kd}",
        }
    }

    /// Whether the formula involves a translation `t_{k₁α+k₂β}`.
    pub fn uses_translation(self) -> bool {
        !matches!(
            self,
            NFormula::SAlphaNonneg
                | NFormula::SAlphaNeg
                | NFormula::SAlphaBetaNonneg
                | NFormula::SAlphaBetaNeg
                | NFormula::SBetaNonneg
                | NFormula::SBetaNeg
        )
    }

    /// Whether `k` is in the formula's stated range.
    pub fn admits_k(self, k: i64) -> bool {
        match self {
            NFormula::SAlphaNonneg | NFormula::SAlphaBetaNonneg | NFormula::SBetaNonneg => k >= 0,
            NFormula::SAlphaNeg | NFormula::SAlphaBetaNeg | NFormula::SBetaNeg => k < 0,
            _ => true,
        }
    }
}

/// `Ã₂` with `B = Φ⁺^∧` and the named roots.
#[derive(Clone, Debug)]
pub struct Alcove {
    pub g: AffineWeyl,
    pub b: BiclosedSet,
    pub alpha: RootId,
    pub beta: RootId,
    pub alpha_beta: RootId,
    class_fin: [FinElem; 6],
}

/// Coset representative `w(i)⁻¹` and the `U`-part of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralDecomposition {
    pub i: i64,
    pub form: UForm,
    pub k: u32,
}

/// The four shapes of an element of `U = ⟨u, v⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UForm {
    /// `u(vu)^k`
    UVU,
    /// `(vu)^k`
    VU,
    /// `v(uv)^k`
    VUV,
    /// `(uv)^k`
    UV,
}

impl DihedralDecomposition {
    /// The `U`-part as a word in `u` and `v`.
    pub fn u_v_word(&self) -> String {
        let mut s = String::new();
        let (head, pair) = match self.form {
            UForm::UVU => ("u", "vu"),
            UForm::VU => ("", "vu"),
            UForm::VUV => ("v", "uv"),
            UForm::UV => ("", "uv"),
        };
        s.push_str(head);
        for _ in 0..self.k {
            s.push_str(pair);
        }
        if s.is_empty() {
            s.push('e');
        }
        s
    }

    /// `l_B` from the four closed forms.
    pub fn predicted_length(&self) -> i64 {
        let k = self.k as i64;
        let odd = self.i.rem_euclid(2) == 1;
        match (self.form, odd) {
            (UForm::UVU, false) => -4 * k - 3,
            (UForm::UVU, true) => -4 * k - 2,
            (UForm::VU, false) => -4 * k,
            (UForm::VU, true) => -4 * k - 1,
            (UForm::VUV, false) => 4 * k + 1,
            (UForm::VUV, true) => 4 * k + 2,
            (UForm::UV, false) => 4 * k,
            (UForm::UV, true) => 4 * k - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sphericity {
    Spherical,
    NonSpherical,
}

/// Shape of `y x⁻¹` for a length-2 interval `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length2Form {
    /// `s₁s₂` with distinct simple reflections (1-based digits).
    SimplePair(usize, usize),
    /// `s_{δ−γ}s_γ`.
    DeltaPair(AffineRoot),
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Sigma,
    Eta,
    EtaPrime,
    Rho,
}

impl Automorphism {
    pub const ALL: [Automorphism; 4] = [Automorphism::Sigma, Automorphism::Eta, Automorphism::EtaPrime, Automorphism::Rho];

    pub fn as_str(self) -> &'static str {
        match self {
            Automorphism::Sigma => "sigma",
            Automorphism::Eta => "eta",
            Automorphism::EtaPrime => "eta_prime",
            Automorphism::Rho => "rho",
        }
    }
}

impl std::str::FromStr for Automorphism {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Automorphism::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown automorphism {s:?}")))
    }
}

/// Downset sizes by corank for both gradings, next to the closed form.
#[derive(Clone, Debug)]
pub struct PoincareReport {
    pub closed_form: Vec<i64>,
    /// Counts graded by `l_B(w) − l_B(u)`.
    pub twisted: Vec<i64>,
    /// Counts graded by `l(w) − l(u)`, over `u ≤_B w`.
    pub ordinary: Vec<i64>,
}

impl PoincareReport {
    pub fn twisted_matches(&self) -> bool {
        self.twisted == self.closed_form
    }
    pub fn ordinary_matches(&self) -> bool {
        self.ordinary == self.closed_form
    }
}

impl Default for Alcove {
    fn default() -> Self {
        Self::new()
    }
}

impl Alcove {
    pub fn new() -> Self {
        let g = AffineWeyl::new(TypeLabel::A2);
        let b = BiclosedSet::positive_hat(&g, 0);
        let d = &g.datum;
        let alpha = d.parse_root("a").unwrap();
        let beta = d.parse_root("b").unwrap();
        let alpha_beta = d.parse_root("a+b").unwrap();
        let class_fin = SixClass::ALL.map(|c| d.fin_from_word(c.finite_word()).unwrap());
        Alcove { g, b, alpha, beta, alpha_beta, class_fin }
    }

    pub fn order(&self) -> TwistedOrder<'_> {
        TwistedOrder::new(&self.g, self.b.clone())
    }

    pub fn length(&self, w: &AffineElement) -> i64 {
        self.order().length_left(w)
    }

    pub fn root(&self, gamma: Gamma) -> RootId {
        match gamma {
            Gamma::Alpha => self.alpha,
            Gamma::Beta => self.beta,
            Gamma::AlphaBeta => self.alpha_beta,
        }
    }

    pub fn class_of(&self, w: &AffineElement) -> SixClass {
        let i = self.class_fin.iter().position(|&f| f == w.fin).expect("A2 has six finite elements");
        SixClass::ALL[i]
    }

    /// An element `x·t` of the given class.
    pub fn class_element(&self, class: SixClass, coroot: [i64; 2]) -> AffineElement {
        let x = self.g.finite(self.class_fin[class as usize]);
        self.g.mul(&x, &self.g.translation(&coroot))
    }

    /// `t_{k₁α+k₂β}`; `None` unless `k₁, k₂` are even.
    pub fn translation_k(&self, k1: i64, k2: i64) -> Option<AffineElement> {
        (k1 % 2 == 0 && k2 % 2 == 0).then(|| self.g.translation(&[k1 / 2, k2 / 2]))
    }

    /// Engine value of `l_B(s_{γ+kδ}w) − l_B(w)`.
    pub fn engine_delta(&self, w: &AffineElement, gamma: Gamma, k: i64) -> i64 {
        self.order().delta_along(w, self.root(gamma), k)
    }

    /// The element whose inversion set the formula describes.
    pub fn formula_element(&self, f: NFormula, k1: i64, k2: i64, k: i64) -> Option<AffineElement> {
        if !f.admits_k(k) {
            return None;
        }
        let g = &self.g;
        let t = if f.uses_translation() { self.translation_k(k1, k2)? } else { g.identity() };
        let refl = |gamma: RootId| g.reflection(AffineRoot::new(gamma, k));
        let sa = g.simple(0);
        let sb = g.simple(1);
        let sasb = g.mul(&sa, &sb);
        let sasbsa = g.mul(&sasb, &sa);
        let prod = |xs: &[AffineElement]| xs.iter().fold(g.identity(), |acc, x| g.mul(&acc, x));
        let (a, b, ab) = (self.alpha, self.beta, self.alpha_beta);
        Some(match f {
            NFormula::SAlphaNonneg | NFormula::SAlphaNeg => refl(a),
            NFormula::SAlphaBetaNonneg | NFormula::SAlphaBetaNeg => refl(ab),
            NFormula::SBetaNonneg | NFormula::SBetaNeg => refl(b),
            NFormula::T => t,
            NFormula::TSAlpha => prod(&[t, refl(a)]),
            NFormula::TSAlphaBeta => prod(&[t, refl(ab)]),
            NFormula::TSa => prod(&[t, sa]),
            NFormula::TSaSAlpha => prod(&[t, sa, refl(a)]),
            NFormula::TSaSBeta => prod(&[t, sa, refl(b)]),
            NFormula::TSaSAlphaBeta => prod(&[t, sa, refl(ab)]),
            NFormula::TSaSb => prod(&[t, sasb]),
            NFormula::TSaSbSAlpha => prod(&[t, sasb, refl(a)]),
            NFormula::TSaSbSBeta => prod(&[t, sasb, refl(b)]),
            NFormula::TSaSbSAlphaBeta => prod(&[t, sasb, refl(ab)]),
            NFormula::TSaSbSa => prod(&[t, sasbsa]),
            NFormula::TSaSbSaSAlpha => prod(&[t, sasbsa, refl(a)]),
            NFormula::TSaSbSaSAlphaBeta => prod(&[t, sasbsa, refl(ab)]),
        })
    }

    /// The closed-form chains `γ_lo^hi`, one per finite root.
    pub fn formula_chains(&self, f: NFormula, k1: i64, k2: i64, k: i64) -> Vec<(RootId, i64, i64)> {
        let d = &self.g.datum;
        let (a, b, ab) = (self.alpha, self.beta, self.alpha_beta);
        let p = |r: RootId, hi: i64| (r, 0, hi);
        let n = |r: RootId, hi: i64| (d.neg[r], 1, hi);
        // Exponents along α, β, α+β of the translation part.
        let x = k1 - k2 / 2;
        let y = k2 - k1 / 2;
        let z = (k1 + k2) / 2;
        // Chains for a count c of positive roots along γ: γ_0^{c−1} and (−γ)_1^{−c}.
        let pair = |r: RootId, c: i64| [p(r, c - 1), n(r, -c)];
        let six = |ca: i64, cb: i64, cab: i64| {
            let mut v = Vec::with_capacity(6);
            v.extend(pair(a, ca));
            v.extend(pair(b, cb));
            v.extend(pair(ab, cab));
            v
        };
        match f {
            NFormula::SAlphaNonneg => vec![p(a, 2 * k), n(b, k), p(ab, k - 1)],
            NFormula::SAlphaNeg => vec![n(a, -2 * k - 1), p(b, -k - 1), n(ab, -k)],
            NFormula::SAlphaBetaNonneg => vec![p(ab, 2 * k), p(a, k), p(b, k)],
            NFormula::SAlphaBetaNeg => vec![n(ab, -2 * k - 1), n(a, -k - 1), n(b, -k - 1)],
            NFormula::SBetaNonneg => vec![p(b, 2 * k), n(a, k), p(ab, k - 1)],
            NFormula::SBetaNeg => vec![n(b, -2 * k - 1), p(a, -k - 1), n(ab, -k)],
            NFormula::T => six(x, y, z),
            NFormula::TSAlpha => six(x + 2 * k + 1, y - k, z + k),
            NFormula::TSAlphaBeta => six(x + k + 1, y + k + 1, z + 2 * k + 1),
            NFormula::TSa => six(x + 1, y, z),
            NFormula::TSaSAlpha => six(x - 2 * k, y + k, z - k),
            NFormula::TSaSBeta => six(x + k + 1, y + k, z + 2 * k + 1),
            NFormula::TSaSAlphaBeta => six(x - k, y + 2 * k + 1, z + k + 1),
            NFormula::TSaSb => six(x + 1, y, z + 1),
            NFormula::TSaSbSAlpha => six(x - k + 1, y + 2 * k + 1, z + k + 1),
            NFormula::TSaSbSBeta => six(x - k + 1, y - k, z - 2 * k),
            NFormula::TSaSbSAlphaBeta => six(x - 2 * k, y + k + 1, z - k),
            NFormula::TSaSbSa => six(x + 1, y + 1, z + 1),
            NFormula::TSaSbSaSAlpha => six(x + k + 1, y - 2 * k, z - k + 1),
            NFormula::TSaSbSaSAlphaBeta => six(x - k, y - k, z - 2 * k),
        }
    }

    /// The closed-form set, materialized.
    pub fn formula_set(&self, f: NFormula, k1: i64, k2: i64, k: i64) -> BTreeSet<AffineRoot> {
        self.formula_chains(f, k1, k2, k)
            .into_iter()
            .flat_map(|(r, lo, hi)| (lo..=hi).map(move |l| AffineRoot::new(r, l)))
            .collect()
    }

    /// Compare one formula against the engine; `None` when the parameters are outside its domain.
    pub fn check_formula(&self, f: NFormula, k1: i64, k2: i64, k: i64) -> Option<bool> {
        let w = self.formula_element(f, k1, k2, k)?;
        Some(self.g.inversion_set(&w) == self.formula_set(f, k1, k2, k))
    }

    // ---- short intervals ----

    /// Classify `[x, y]` of length 2 by the shape of `y x⁻¹`.
    pub fn length2_form(&self, x: &AffineElement, y: &AffineElement) -> Length2Form {
        let g = &self.g;
        let d = &g.datum;
        let z = g.mul(y, &g.inv(x));
        for i in 0..3 {
            for j in 0..3 {
                if i != j && g.mul(&g.simple(i), &g.simple(j)) == z {
                    return Length2Form::SimplePair(i + 1, j + 1);
                }
            }
        }
        for gamma in d.positive_roots() {
            for gam in [AffineRoot::new(gamma, 0), AffineRoot::new(d.neg[gamma], 1)] {
                let other = AffineRoot::new(d.neg[gam.base], 1 - gam.level);
                if g.mul(&g.reflection(other), &g.reflection(gam)) == z {
                    return Length2Form::DeltaPair(gam);
                }
            }
        }
        Length2Form::Other
    }

    /// Whether `[x, y]` of length 3 is one of the three exceptional shapes.
    pub fn is_exceptional_length3(&self, x: &AffineElement, y: &AffineElement) -> bool {
        let g = &self.g;
        let z = g.mul(y, &g.inv(x));
        let w = |word: &[usize]| g.from_word(word).unwrap();
        let class = self.class_of(x);
        (z == w(&[0, 1, 0]) && class == SixClass::SbSaSbT)
            || (z == w(&[2, 1, 2]) && class == SixClass::SbT)
            || (z == w(&[0, 2, 0]) && class == SixClass::SaT)
    }

    // ---- dihedral decomposition ----

    /// `w(i)`: length-`i` prefix of `(s_βs_{δ−α−β}s_α)^∞`, or of `(s_αs_{δ−α−β}s_β)^∞` for `i < 0`.
    pub fn prefix(&self, i: i64) -> AffineElement {
        let cycle: [usize; 3] = if i >= 0 { [1, 2, 0] } else { [0, 2, 1] };
        let word: Vec<usize> = (0..i.unsigned_abs() as usize).map(|j| cycle[j % 3]).collect();
        self.g.from_word(&word).unwrap()
    }

    pub fn u(&self) -> AffineElement {
        self.g.from_word(&[0, 1, 0]).unwrap()
    }

    pub fn v(&self) -> AffineElement {
        self.g.simple(2)
    }

    /// The element of `U` with the given shape.
    pub fn u_element(&self, form: UForm, k: u32) -> AffineElement {
        let g = &self.g;
        let (u, v) = (self.u(), self.v());
        let (head, pair) = match form {
            UForm::UVU => (u, g.mul(&v, &u)),
            UForm::VU => (g.identity(), g.mul(&v, &u)),
            UForm::VUV => (v, g.mul(&u, &v)),
            UForm::UV => (g.identity(), g.mul(&u, &v)),
        };
        g.mul(&head, &g.pow(&pair, k))
    }

    /// Whether `w(i)⁻¹` is minimal in its `U`-coset: `N(w(i))` meets no `±(α+β)+kδ`.
    pub fn is_minimal_rep(&self, i: i64) -> bool {
        let r = self.g.inversion_profile(&self.prefix(i));
        r[self.alpha_beta].is_empty() && r[self.g.datum.neg[self.alpha_beta]].is_empty()
    }

    /// Find `i` and `z ∈ U` with `w = w(i)⁻¹ z`.
    pub fn dihedral_decompose(&self, w: &AffineElement) -> DihedralDecomposition {
        let g = &self.g;
        let bound = g.length(w) as i64 + 4;
        let kmax = bound as u32 + 1;
        let mut table: HashMap<AffineElement, (UForm, u32)> = HashMap::new();
        for k in (0..=kmax).rev() {
            for form in [UForm::UVU, UForm::VU, UForm::VUV, UForm::UV] {
                table.insert(self.u_element(form, k), (form, k));
            }
        }
        let mut order = vec![0i64];
        for j in 1..=bound {
            order.push(j);
            order.push(-j);
        }
        for i in order {
            let z = g.mul(&self.prefix(i), w);
            if let Some(&(form, k)) = table.get(&z) {
                return DihedralDecomposition { i, form, k };
            }
        }
        unreachable!("every element has a dihedral decomposition")
    }

    /// All `i` in `[-bound, bound]` with `w(i) w ∈ U`.
    pub fn decomposition_indices(&self, w: &AffineElement, bound: i64) -> Vec<i64> {
        let g = &self.g;
        let kmax = (g.length(w) as i64 + bound) as u32 + 1;
        let mut us: BTreeSet<AffineElement> = BTreeSet::new();
        for k in 0..=kmax {
            for form in [UForm::UVU, UForm::VU, UForm::VUV, UForm::UV] {
                us.insert(self.u_element(form, k));
            }
        }
        (-bound..=bound).filter(|&i| us.contains(&g.mul(&self.prefix(i), w))).collect()
    }

    // ---- automorphisms ----

    /// `σ^n`: the rotation `s₃ ↦ s₁, s₂ ↦ s₃, s₁ ↦ s₂` applied `n` times.
    pub fn sigma_pow(&self, w: &AffineElement, n: i64) -> AffineElement {
        let n = n.rem_euclid(3) as usize;
        let word: Vec<usize> = self.g.reduced_word(w).into_iter().map(|s| (s + n) % 3).collect();
        self.g.from_word(&word).unwrap()
    }

    fn times(&self, w: &AffineElement, word: &[usize]) -> AffineElement {
        self.g.mul(w, &self.g.from_word(word).unwrap())
    }

    pub fn apply(&self, kind: Automorphism, w: &AffineElement) -> AffineElement {
        match kind {
            Automorphism::Sigma => self.sigma_pow(w, 1),
            Automorphism::Eta => self.times(&self.sigma_pow(w, 1), &[0, 1]),
            Automorphism::EtaPrime => self.times(&self.sigma_pow(w, -1), &[1, 0]),
            Automorphism::Rho => self.times(&self.sigma_pow(w, 2), &[2, 1]),
        }
    }

    pub fn apply_inverse(&self, kind: Automorphism, w: &AffineElement) -> AffineElement {
        match kind {
            Automorphism::Sigma => self.sigma_pow(w, -1),
            Automorphism::Eta => self.sigma_pow(&self.times(w, &[1, 0]), -1),
            Automorphism::EtaPrime => self.sigma_pow(&self.times(w, &[0, 1]), 1),
            Automorphism::Rho => self.sigma_pow(&self.times(w, &[1, 2]), 1),
        }
    }

    /// `kind^n` for any integer `n`.
    pub fn apply_pow(&self, kind: Automorphism, w: &AffineElement, n: i64) -> AffineElement {
        let mut cur = *w;
        for _ in 0..n.unsigned_abs() {
            cur = if n > 0 { self.apply(kind, &cur) } else { self.apply_inverse(kind, &cur) };
        }
        cur
    }

    /// Elements of `ball` where the map fails to carry lower and upper covers onto covers.
    pub fn automorphism_violations(&self, kind: Automorphism, ball: &[AffineElement]) -> Result<Vec<AffineElement>, Error> {
        let ord = self.order();
        let image = |cs: Vec<Cover>| -> BTreeSet<AffineElement> { cs.iter().map(|c| self.apply(kind, &c.elem)).collect() };
        let elems = |cs: Vec<Cover>| -> BTreeSet<AffineElement> { cs.iter().map(|c| c.elem).collect() };
        let mut bad = vec![];
        for x in ball {
            let cx = ord.covers(x)?;
            let cy = ord.covers(&self.apply(kind, x))?;
            if image(cx.lower) != elems(cy.lower) || image(cx.upper) != elems(cy.upper) {
                bad.push(*x);
            }
        }
        Ok(bad)
    }

    /// `(a, b)` with `ρ^a(η^b(x)) = y`, searching `|a| ≤ a_max` and `b` near `(l_B(x) − l_B(y))/2`.
    pub fn transitivity_witness(&self, x: &AffineElement, y: &AffineElement, a_max: i64) -> Option<(i64, i64)> {
        let (lx, ly) = (self.length(x), self.length(y));
        if (lx - ly).rem_euclid(2) != 0 {
            return None;
        }
        let b = (lx - ly) / 2;
        let xb = self.apply_pow(Automorphism::Eta, x, b);
        let mut up = xb;
        let mut down = xb;
        if xb == *y {
            return Some((0, b));
        }
        for a in 1..=a_max {
            up = self.apply(Automorphism::Rho, &up);
            down = self.apply_inverse(Automorphism::Rho, &down);
            if up == *y {
                return Some((a, b));
            }
            if down == *y {
                return Some((-a, b));
            }
        }
        None
    }

    // ---- Poincaré series ----

    /// Downset sizes by corank for `w`, with both gradings.
    pub fn poincare_report(&self, w: &AffineElement, d_max: usize) -> Result<PoincareReport, Error> {
        let ord = self.order();
        let even = self.g.length(w).is_multiple_of(2);
        let ds = ord.downset_corank(w, d_max)?;
        let twisted = ds.layers.iter().map(|l| l.len() as i64).collect();
        // Ordinary grading: u ≤_B w with l(u) ≤ l(w) has corank at most 2l(w), since |l_B| ≤ l.
        let lw = self.g.length(w) as i64;
        let deep = ord.downset_corank(w, (2 * lw as usize).max(d_max))?;
        let mut ordinary = vec![0i64; d_max + 1];
        for layer in &deep.layers {
            for u in layer {
                let dd = lw - self.g.length(u) as i64;
                if (0..=d_max as i64).contains(&dd) {
                    ordinary[dd as usize] += 1;
                }
            }
        }
        Ok(PoincareReport { closed_form: poincare_series(even, d_max), twisted, ordinary })
    }
}

/// Power-series coefficients of `num / (1 − t²)²` through `t^{d_max}`.
fn over_square(num: &[i64], d_max: usize) -> Vec<i64> {
    (0..=d_max)
        .map(|d| {
            num.iter()
                .enumerate()
                .filter(|&(j, _)| j <= d && (d - j) % 2 == 0)
                .map(|(j, c)| c * ((d - j) / 2 + 1) as i64)
                .sum()
        })
        .collect()
}

/// Coefficients of the closed form for even or odd `l(w)`.
pub fn poincare_series(even: bool, d_max: usize) -> Vec<i64> {
    if even {
        over_square(&[1, 2, 2, 1], d_max)
    } else {
        over_square(&[1, 3, 2], d_max)
    }
}

/// Coefficientwise residuals of `F₁ = 1 + 2tF₂ − 2t²F₁ + t³F₂` and `F₂ = 1 + 3tF₁ − 2t²F₂`.
pub fn poincare_recursion_residual(f1: &[i64], f2: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let n = f1.len().min(f2.len());
    let at = |f: &[i64], i: isize| if i < 0 { 0 } else { f[i as usize] };
    let one = |d: usize| i64::from(d == 0);
    let r1 = (0..n)
        .map(|d| {
            let d_ = d as isize;
            f1[d] - (one(d) + 2 * at(f2, d_ - 1) - 2 * at(f1, d_ - 2) + at(f2, d_ - 3))
        })
        .collect();
    let r2 = (0..n)
        .map(|d| {
            let d_ = d as isize;
            f2[d] - (one(d) + 3 * at(f1, d_ - 1) - 2 * at(f2, d_ - 2))
        })
        .collect();
    (r1, r2)
}

/// The strong-cover Hasse diagram on all elements of length at most `word_length_bound`.
///
/// Nodes are graded by `l_B`; figure labels are used where they name the element.
/// An edge is black (weak) when the upper element is `sᵢ·lower`.
pub fn figure_hasse(al: &Alcove, word_length_bound: usize) -> Result<GradedPoset<AffineElement>, Error> {
    let g = &al.g;
    let ord = al.order();
    let named: HashMap<AffineElement, &str> =
        FIGURE_LABELS.iter().map(|l| (g.parse_element(l).unwrap(), *l)).collect();
    let ball = g.ball(word_length_bound);
    let members: BTreeSet<AffineElement> = ball.iter().copied().collect();
    let mut p = GradedPoset::new();
    for w in &ball {
        let label = named.get(w).map(|s| s.to_string()).unwrap_or_else(|| g.label(w));
        p.add_node(*w, label, ord.length_left(w));
    }
    for w in &ball {
        for c in ord.upper_covers(w)? {
            if members.contains(&c.elem) {
                let lo = p.index_of(w).unwrap();
                let up = p.index_of(&c.elem).unwrap();
                let weak = (0..3).any(|s| g.mul(&g.simple(s), w) == c.elem);
                p.add_edge(lo, up, c.root.name(&g.datum), weak);
            }
        }
    }
    p.canonicalize();
    Ok(p)
}

/// The subposet induced on the figure's 27 labelled elements.
pub fn figure_fragment(al: &Alcove) -> Result<GradedPoset<AffineElement>, Error> {
    let full = figure_hasse(al, 6)?;
    let mut p = GradedPoset::new();
    for l in FIGURE_LABELS {
        let i = full.find_label(l).ok_or_else(|| Error::Invalid(format!("figure label {l} outside the ball")))?;
        let n = &full.nodes[i];
        p.add_node(n.item, n.label.clone(), n.grade);
    }
    for e in &full.edges {
        if let (Some(lo), Some(up)) = (p.index_of(&full.nodes[e.lower].item), p.index_of(&full.nodes[e.upper].item)) {
            p.add_edge(lo, up, e.label.clone(), e.weak);
        }
    }
    p.canonicalize();
    Ok(p)
}

/// Sphericity of an interval of length 2 or 3 from its node and edge structure.
pub fn sphericity<T: Clone + Eq + std::hash::Hash>(p: &GradedPoset<T>) -> Result<Sphericity, Error> {
    let lo = p.nodes.iter().map(|n| n.grade).min().unwrap_or(0);
    let hi = p.nodes.iter().map(|n| n.grade).max().unwrap_or(0);
    let len = hi - lo;
    if len != 2 && len != 3 {
        return Err(Error::UnsupportedLength(len));
    }
    let m = p.order_matrix();
    let n = p.len();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] && p.nodes[j].grade - p.nodes[i].grade == 2 {
                let size = (0..n).filter(|&k| m[i][k] && m[k][j]).count();
                if size != 4 {
                    return Ok(Sphericity::NonSpherical);
                }
            }
        }
    }
    Ok(Sphericity::Spherical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_examples() {
        let al = Alcove::new();
        let g = &al.g;
        assert_eq!(al.class_of(&g.translation(&[1, 0])), SixClass::T);
        assert_eq!(al.class_of(&g.simple(0)), SixClass::SaT);
        let x = g.mul(&g.from_word(&[1, 0]).unwrap(), &g.translation(&[0, 1]));
        assert_eq!(al.class_of(&x), SixClass::SbSaT);
    }

    #[test]
    fn delta_table_matches_engine() {
        let al = Alcove::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for class in SixClass::ALL {
            for _ in 0..8 {
                let c = [rng.gen_range(-4..=4), rng.gen_range(-4..=4)];
                let w = al.class_element(class, c);
                for gamma in Gamma::ALL {
                    for k in -12..=12 {
                        assert_eq!(predicted_delta(class, gamma, k), al.engine_delta(&w, gamma, k), "{class:?} {gamma:?} {k}");
                    }
                }
            }
        }
    }

    use rand::Rng;

    #[test]
    fn formulas_match_inversion_sets() {
        let al = Alcove::new();
        for f in NFormula::ALL {
            for k1 in (-6..=6).step_by(2) {
                for k2 in (-6..=6).step_by(2) {
                    for k in -6..=6 {
                        if let Some(ok) = al.check_formula(f, k1, k2, k) {
                            assert!(ok, "{} k1={k1} k2={k2} k={k}", f.name());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dihedral_forms() {
        let al = Alcove::new();
        for w in al.g.ball(7) {
            let dd = al.dihedral_decompose(&w);
            assert_eq!(dd.predicted_length(), al.length(&w), "{}", al.g.label(&w));
            assert!(al.is_minimal_rep(dd.i));
        }
        let u = DihedralDecomposition { i: 0, form: UForm::UVU, k: 0 };
        assert_eq!(al.length(&al.u()), -3);
        assert_eq!(u.predicted_length(), -3);
    }

    #[test]
    fn eta_lowers_by_two() {
        let al = Alcove::new();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let z = al.g.random_element(&mut rng, 12);
            assert_eq!(al.length(&al.apply(Automorphism::Eta, &z)), al.length(&z) - 2);
        }
        let ta = al.g.translation(&[1, 0]);
        assert_eq!(al.apply(Automorphism::Sigma, &ta), al.g.translation(&[0, 1]));
    }

    #[test]
    fn rho_is_eta_after_eta_prime_inverse() {
        let al = Alcove::new();
        for w in al.g.ball(5) {
            let via = al.apply(Automorphism::Eta, &al.apply_inverse(Automorphism::EtaPrime, &w));
            assert_eq!(al.apply(Automorphism::Rho, &w), via);
            for kind in Automorphism::ALL {
                assert_eq!(al.apply_inverse(kind, &al.apply(kind, &w)), w);
            }
        }
    }

    #[test]
    fn poincare_closed_form() {
        assert_eq!(poincare_series(true, 5), vec![1, 2, 4, 5, 7, 8]);
        let (r1, r2) = poincare_recursion_residual(&poincare_series(true, 10), &poincare_series(false, 10));
        assert!(r1.iter().chain(&r2).all(|&r| r == 0));
    }

    #[test]
    fn short_interval_sphericity() {
        let al = Alcove::new();
        let ord = al.order();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let x = al.g.random_element(&mut rng, 8);
            let mut tops = BTreeSet::new();
            for c in ord.upper_covers(&x).unwrap() {
                for c2 in ord.upper_covers(&c.elem).unwrap() {
                    tops.insert(c2.elem);
                }
            }
            for y in tops {
                let p = ord.interval(&x, &y).unwrap();
                let s = sphericity(&p).unwrap();
                match al.length2_form(&x, &y) {
                    Length2Form::SimplePair(..) => assert_eq!(s, Sphericity::Spherical),
                    Length2Form::DeltaPair(_) => assert_eq!(s, Sphericity::NonSpherical),
                    Length2Form::Other => panic!("unexpected shape"),
                }
            }
        }
    }
}
