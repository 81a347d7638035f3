//! Biclosed sets of positive affine roots, represented as `u·P(Ψ⁺,Δ₁,Δ₂)^∧`.
//!
//! For `B = u·P^∧` and a finite root `β`, write `u⁻¹ = (y, μ)`. The chain of
//! `B` over `β` is a step function of the level: levels up to the top of
//! `N(u)` over `β` are in `B` iff `−yβ ∉ P`, higher levels iff `yβ ∈ P`.
//! Everything below is computed from that profile.

use std::collections::BTreeSet;
use std::fmt;

use crate::affine_root::AffineRoot;
use crate::affine_weyl::{AffineElement, AffineWeyl, ChainRange};
use crate::error::Error;
use crate::finite::{make_p, CartanDatum, FinElem, FiniteBiclosed, RootId, RootMask};

/// Per-root description of a biclosed set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootProfile {
    /// Lowest positive level over this root.
    pub start: i64,
    /// Levels `start..=cut` carry `low`; levels `> cut` carry `high`.
    pub cut: i64,
    pub low: bool,
    pub high: bool,
}

impl RootProfile {
    pub fn contains(&self, level: i64) -> bool {
        if level < self.start {
            false
        } else if level <= self.cut {
            self.low
        } else {
            self.high
        }
    }

    /// Number of levels of `range` lying in the chain.
    pub fn count_in(&self, range: &ChainRange) -> i64 {
        if range.is_empty() {
            return 0;
        }
        let lo = range.lo.max(self.start);
        let mut n = 0;
        if self.low {
            n += overlap(lo, range.hi, self.start, self.cut);
        }
        if self.high {
            n += overlap(lo, range.hi, self.cut + 1, i64::MAX);
        }
        n
    }

    /// Highest level at which the pattern can change.
    pub fn last_break(&self) -> i64 {
        self.cut.max(self.start)
    }
}

fn overlap(a0: i64, a1: i64, b0: i64, b1: i64) -> i64 {
    (a1.min(b1) - a0.max(b0) + 1).max(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BiclosedClass {
    Finite,
    Cofinite,
    InfiniteWordInversion,
    InfiniteWordCoinversion,
    Mixed,
}

impl BiclosedClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BiclosedClass::Finite => "Finite",
            BiclosedClass::Cofinite => "Cofinite",
            BiclosedClass::InfiniteWordInversion => "InfiniteWordInversion",
            BiclosedClass::InfiniteWordCoinversion => "InfiniteWordCoinversion",
            BiclosedClass::Mixed => "Mixed",
        }
    }
}

/// `twist · P(psi Φ⁺, Δ₁, Δ₂)^∧`. Indices in `delta1`, `delta2` refer to the simple system `psi Δ`.
#[derive(Clone, Debug)]
pub struct BiclosedSet {
    pub twist: AffineElement,
    pub psi: FinElem,
    pub delta1: u8,
    pub delta2: u8,
    pub p: RootMask,
    profile: Vec<RootProfile>,
}

impl PartialEq for BiclosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.twist == other.twist && self.psi == other.psi && self.delta1 == other.delta1 && self.delta2 == other.delta2
    }
}
impl Eq for BiclosedSet {}

impl BiclosedSet {
    pub fn new(g: &AffineWeyl, twist: AffineElement, psi: FinElem, delta1: u8, delta2: u8) -> Result<Self, Error> {
        let fp = make_p(&g.datum, psi, delta1, delta2)?;
        let mut b = BiclosedSet { twist, psi, delta1, delta2, p: fp.roots, profile: vec![] };
        b.profile = b.compute_profile(g);
        Ok(b)
    }

    /// The empty set.
    pub fn empty(g: &AffineWeyl) -> Self {
        Self::new(g, g.identity(), 0, g.datum.full_simple_mask(), 0).unwrap()
    }

    /// `N(u)`.
    pub fn from_inversion(g: &AffineWeyl, u: AffineElement) -> Self {
        Self::new(g, u, 0, g.datum.full_simple_mask(), 0).unwrap()
    }

    /// `(psi Φ⁺)^∧`.
    pub fn positive_hat(g: &AffineWeyl, psi: FinElem) -> Self {
        Self::new(g, g.identity(), psi, 0, 0).unwrap()
    }

    fn compute_profile(&self, g: &AffineWeyl) -> Vec<RootProfile> {
        let d = &g.datum;
        let ui = g.inv(&self.twist);
        let y = ui.fin;
        let nu = g.inversion_profile(&self.twist);
        (0..d.num_roots())
            .map(|b| {
                let yb = d.act(y, b);
                RootProfile {
                    start: if d.is_positive(b) { 0 } else { 1 },
                    cut: nu[b].hi,
                    low: self.p & (1 << d.neg[yb]) == 0,
                    high: self.p & (1 << yb) != 0,
                }
            })
            .collect()
    }

    pub fn profile(&self) -> &[RootProfile] {
        &self.profile
    }

    pub fn contains(&self, g: &AffineWeyl, r: AffineRoot) -> bool {
        r.is_positive(&g.datum) && self.profile[r.base].contains(r.level)
    }

    /// Membership straight from the dot-action formula; independent of the profile.
    pub fn contains_by_formula(&self, g: &AffineWeyl, r: AffineRoot) -> bool {
        let d = &g.datum;
        if !r.is_positive(d) {
            return false;
        }
        let in_p = |x: AffineRoot| x.is_positive(d) && self.p & (1 << x.base) != 0;
        let ui = g.inv(&self.twist);
        let pre = g.act(&ui, r);
        (g.in_inversion_set(&self.twist, r) && !in_p(pre.neg(d))) || in_p(pre)
    }

    /// `u·B`.
    pub fn dot_action(&self, g: &AffineWeyl, u: &AffineElement) -> BiclosedSet {
        Self::new(g, g.mul(u, &self.twist), self.psi, self.delta1, self.delta2).unwrap()
    }

    pub fn complement(&self, g: &AffineWeyl) -> BiclosedSet {
        let d = &g.datum;
        let psi = d.fin_mul(self.psi, d.weyl.longest);
        Self::new(g, self.twist, psi, d.opposition(self.delta2), d.opposition(self.delta1)).unwrap()
    }

    /// `I_B`, the roots whose chain meets `B` infinitely often.
    pub fn i_of(&self, g: &AffineWeyl) -> FiniteBiclosed {
        let d = &g.datum;
        let psi = d.fin_mul(self.twist.fin, self.psi);
        let fb = make_p(d, psi, self.delta1, self.delta2).unwrap();
        debug_assert_eq!(fb.roots, self.i_mask());
        fb
    }

    pub fn i_mask(&self) -> RootMask {
        self.profile.iter().enumerate().filter(|(_, p)| p.high).fold(0, |m, (b, _)| m | (1 << b))
    }

    /// Whether the chain of `B` over `beta` is nonempty (the set `A_B`).
    pub fn a_contains(&self, beta: RootId) -> bool {
        let p = &self.profile[beta];
        p.high || (p.low && p.cut >= p.start)
    }

    pub fn a_mask(&self) -> RootMask {
        (0..self.profile.len()).filter(|&b| self.a_contains(b)).fold(0, |m, b| m | (1 << b))
    }

    pub fn classify(&self, d: &CartanDatum) -> BiclosedClass {
        let full = d.full_simple_mask();
        if self.delta1 == full {
            BiclosedClass::Finite
        } else if self.delta2 == full {
            BiclosedClass::Cofinite
        } else if self.delta2 == 0 {
            BiclosedClass::InfiniteWordInversion
        } else if self.delta1 == 0 {
            BiclosedClass::InfiniteWordCoinversion
        } else {
            BiclosedClass::Mixed
        }
    }

    pub fn is_finite(&self) -> bool {
        self.i_mask() == 0
    }

    /// `|N(x) ∩ B|`.
    pub fn count_inversions(&self, g: &AffineWeyl, x: &AffineElement) -> i64 {
        g.inversion_profile(x).iter().zip(&self.profile).map(|(r, p)| p.count_in(r)).sum()
    }

    /// Upper bound on the levels at which two chain patterns can differ.
    fn break_level(&self, other: &BiclosedSet) -> i64 {
        self.profile.iter().chain(&other.profile).map(|p| p.last_break()).max().unwrap_or(0) + 1
    }

    /// Exact equality of the underlying sets.
    pub fn profile_equal(&self, other: &BiclosedSet) -> bool {
        let top = self.break_level(other);
        self.profile.iter().zip(&other.profile).all(|(a, b)| (a.start..=top).all(|k| a.contains(k) == b.contains(k)))
    }

    /// Equality via `I_B` and agreement on levels up to `1 + max level of N(twist₁) ∪ N(twist₂)`.
    pub fn equals(&self, g: &AffineWeyl, other: &BiclosedSet) -> bool {
        if self.i_mask() != other.i_mask() {
            return false;
        }
        let top = 1 + g.max_level(&self.twist).max(g.max_level(&other.twist));
        (0..g.datum.num_roots()).all(|b| {
            (0..=top).all(|k| {
                let r = AffineRoot::new(b, k);
                self.contains(g, r) == other.contains(g, r)
            })
        })
    }

    /// Remove right letters of the twist that fix `P^∧`.
    pub fn canonicalize(&self, g: &AffineWeyl) -> BiclosedSet {
        let base = Self::new(g, g.identity(), self.psi, self.delta1, self.delta2).unwrap();
        let stabilizes: Vec<bool> =
            (0..g.num_generators()).map(|s| base.dot_action(g, &g.simple(s)).profile_equal(&base)).collect();
        let mut twist = self.twist;
        loop {
            let Some(s) = (0..g.num_generators()).find(|&s| stabilizes[s] && g.is_right_descent(&twist, s)) else {
                break;
            };
            twist = g.mul(&twist, &g.simple(s));
        }
        Self::new(g, twist, self.psi, self.delta1, self.delta2).unwrap()
    }

    /// Members with level at most `max_level`.
    pub fn members_upto(&self, g: &AffineWeyl, max_level: i64) -> BTreeSet<AffineRoot> {
        let mut out = BTreeSet::new();
        for (b, p) in self.profile.iter().enumerate() {
            for k in p.start..=max_level {
                if p.contains(k) {
                    out.insert(AffineRoot::new(b, k));
                }
            }
        }
        let _ = g;
        out
    }

    /// The finite set itself; `None` unless `I_B` is empty.
    pub fn materialize(&self, g: &AffineWeyl) -> Option<BTreeSet<AffineRoot>> {
        if !self.is_finite() {
            return None;
        }
        let top = self.profile.iter().map(|p| p.last_break()).max().unwrap_or(0);
        Some(self.members_upto(g, top))
    }

    /// `B Δ other`, when finite.
    pub fn symmetric_difference(&self, g: &AffineWeyl, other: &BiclosedSet) -> Option<BTreeSet<AffineRoot>> {
        if self.i_mask() != other.i_mask() {
            return None;
        }
        let top = self.break_level(other);
        let a = self.members_upto(g, top);
        let b = other.members_upto(g, top);
        Some(a.symmetric_difference(&b).copied().collect())
    }

    /// Largest level at which the chain pattern changes.
    pub fn max_break(&self) -> i64 {
        self.profile.iter().map(|p| p.last_break()).max().unwrap_or(0)
    }

    /// Parse `twist:<word> psi:<word> d1:{i,j} d2:{k}`; missing fields default to empty.
    pub fn parse(g: &AffineWeyl, s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let s = s.strip_prefix("B").map(|r| r.trim_start()).and_then(|r| r.strip_prefix('=')).unwrap_or(s);
        let mut twist = g.identity();
        let mut psi = 0;
        let mut d1 = 0u8;
        let mut d2 = 0u8;
        for tok in s.split_whitespace() {
            let (key, val) = tok.split_once(':').ok_or_else(|| Error::Parse(format!("expected key:value, got '{tok}'")))?;
            match key {
                "twist" => twist = g.parse_element(val)?,
                "psi" => {
                    let word = g.parse_word(val)?;
                    psi = g.datum.fin_from_word(&word)?;
                }
                "d1" => d1 = parse_index_set(val, g.rank())?,
                "d2" => d2 = parse_index_set(val, g.rank())?,
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        Self::new(g, twist, psi, d1, d2)
    }

    pub fn format(&self, g: &AffineWeyl) -> String {
        let psi_word = crate::affine_weyl::format_word(&g.datum.weyl.words[self.psi], ".");
        format!(
            "twist:{} psi:{} d1:{} d2:{}",
            g.format(&self.twist),
            psi_word,
            format_index_set(self.delta1),
            format_index_set(self.delta2)
        )
    }

    pub fn display<'a>(&'a self, g: &'a AffineWeyl) -> BiclosedDisplay<'a> {
        BiclosedDisplay { g, b: self }
    }
}

pub struct BiclosedDisplay<'a> {
    g: &'a AffineWeyl,
    b: &'a BiclosedSet,
}

impl fmt::Display for BiclosedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.b.format(self.g))
    }
}

fn parse_index_set(s: &str, rank: usize) -> Result<u8, Error> {
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{...}}, got '{s}'")))?;
    let mut m = 0u8;
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let k: usize = part.parse().map_err(|_| Error::Parse(format!("bad index '{part}'")))?;
        if k == 0 || k > rank {
            return Err(Error::Parse(format!("index {k} out of range")));
        }
        m |= 1 << (k - 1);
    }
    Ok(m)
}

fn format_index_set(m: u8) -> String {
    let parts: Vec<String> = (0..8).filter(|i| m & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Every set `u·P^∧` for `u` in a length ball, for tests and sampling.
pub fn all_p_data(d: &CartanDatum) -> Vec<(FinElem, u8, u8)> {
    let full = d.full_simple_mask();
    let mut out = Vec::new();
    for psi in 0..d.weyl.order() {
        for d1 in 0..=full {
            for d2 in 0..=full {
                if d.orthogonal(d1, d2) {
                    out.push((psi, d1, d2));
                }
            }
        }
    }
    out
}
