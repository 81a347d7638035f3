//! The affine Weyl group `W̃ = W ⋉ T` in normal form.
//!
//! An element is stored as a pair `(x, λ)` acting on affine roots by
//! `β + qδ ↦ xβ + (q + λ(β))δ`, where `λ` is a linear functional given by its
//! values on the simple roots. For `w = x·t_v` one has `λ(β) = ⟨β, v⟩`.
//!
//! `N(w)` is the set of positive affine roots made negative by `w⁻¹`; for a
//! reduced word `s₁⋯s_k` it is `{α_{s₁}, s₁α_{s₂}, …}`. Over each finite base
//! root this set is a single δ-chain starting at `base_zero`, so it is stored
//! as one level range per root.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::Rng;

use crate::affine_root::AffineRoot;
use crate::error::Error;
use crate::finite::{CartanDatum, FinElem, RootId, TypeLabel, WeylTable, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub fin: FinElem,
    pub lam: [i64; MAX_RANK],
}

impl AffineElement {
    pub const IDENTITY: AffineElement = AffineElement { fin: WeylTable::IDENTITY, lam: [0; MAX_RANK] };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// Level range `lo..=hi` of `N(w)` over one base root (empty when `hi < lo`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainRange {
    pub lo: i64,
    pub hi: i64,
}

impl ChainRange {
    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }
    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
    pub fn contains(&self, level: i64) -> bool {
        self.lo <= level && level <= self.hi
    }
}

/// Affine Weyl group over a finite root system.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    pub datum: CartanDatum,
    affine_simple: Vec<AffineRoot>,
    simple_elems: Vec<AffineElement>,
}

impl AffineWeyl {
    pub fn new(t: TypeLabel) -> Self {
        Self::from_datum(crate::finite::build_system(t))
    }

    pub fn from_datum(datum: CartanDatum) -> Self {
        let mut affine_simple: Vec<AffineRoot> = datum.simple.iter().map(|&s| AffineRoot::new(s, 0)).collect();
        affine_simple.push(AffineRoot::new(datum.neg[datum.highest], 1));
        let mut g = AffineWeyl { datum, affine_simple: affine_simple.clone(), simple_elems: vec![] };
        g.simple_elems = affine_simple.iter().map(|&a| g.reflection(a)).collect();
        g
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Number of affine simple reflections, `rank + 1`.
    pub fn num_generators(&self) -> usize {
        self.datum.rank + 1
    }

    pub fn affine_simple_root(&self, i: usize) -> AffineRoot {
        self.affine_simple[i]
    }

    pub fn simple(&self, i: usize) -> AffineElement {
        self.simple_elems[i]
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement::IDENTITY
    }

    /// `λ(β)` for a finite root.
    fn lam_of(&self, lam: &[i64; MAX_RANK], beta: RootId) -> i64 {
        let c = &self.datum.root(beta).coords;
        (0..self.datum.rank).map(|i| c[i] * lam[i]).sum()
    }

    pub fn act(&self, w: &AffineElement, r: AffineRoot) -> AffineRoot {
        AffineRoot { base: self.datum.act(w.fin, r.base), level: r.level + self.lam_of(&w.lam, r.base) }
    }

    pub fn mul(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let mut lam = [0i64; MAX_RANK];
        for (i, slot) in lam.iter_mut().enumerate().take(self.datum.rank) {
            let img = self.datum.act(b.fin, self.datum.simple[i]);
            *slot = b.lam[i] + self.lam_of(&a.lam, img);
        }
        AffineElement { fin: self.datum.fin_mul(a.fin, b.fin), lam }
    }

    pub fn inv(&self, a: &AffineElement) -> AffineElement {
        let xi = self.datum.fin_inv(a.fin);
        let mut lam = [0i64; MAX_RANK];
        for (i, slot) in lam.iter_mut().enumerate().take(self.datum.rank) {
            let img = self.datum.act(xi, self.datum.simple[i]);
            *slot = -self.lam_of(&a.lam, img);
        }
        AffineElement { fin: xi, lam }
    }

    pub fn pow(&self, a: &AffineElement, n: u32) -> AffineElement {
        let mut out = AffineElement::IDENTITY;
        for _ in 0..n {
            out = self.mul(&out, a);
        }
        out
    }

    /// The reflection `s_{γ+kδ}`.
    pub fn reflection(&self, r: AffineRoot) -> AffineElement {
        let d = &self.datum;
        let gamma = d.root(r.base);
        let mut lam = [0i64; MAX_RANK];
        for (i, slot) in lam.iter_mut().enumerate().take(d.rank) {
            *slot = -r.level * d.pairing(d.root(d.simple[i]), gamma);
        }
        AffineElement { fin: d.weyl.reflection[r.base], lam }
    }

    /// `t_v` for `v = Σ c_j α_j∨`.
    pub fn translation(&self, coroot: &[i64]) -> AffineElement {
        let d = &self.datum;
        let mut lam = [0i64; MAX_RANK];
        for (i, slot) in lam.iter_mut().enumerate().take(d.rank) {
            *slot = (0..d.rank).map(|j| coroot[j] * d.cartan[i][j]).sum();
        }
        AffineElement { fin: WeylTable::IDENTITY, lam }
    }

    /// Write `w = x·t_v` and return the coroot coordinates of `v`.
    pub fn translation_part(&self, w: &AffineElement) -> Vec<i64> {
        let d = &self.datum;
        let n = d.rank;
        // Solve A c = λ by exact rational elimination.
        use num_rational::Rational64;
        let mut a: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational64> = (0..n).map(|j| Rational64::from_integer(d.cartan[i][j])).collect();
                row.push(Rational64::from_integer(w.lam[i]));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r][c] != Rational64::from_integer(0)).unwrap();
            a.swap(p, c);
            let pivot = a[c][c];
            for k in c..=n {
                a[c][k] /= pivot;
            }
            for r in 0..n {
                if r != c {
                    let f = a[r][c];
                    for k in c..=n {
                        let v = a[c][k];
                        a[r][k] -= f * v;
                    }
                }
            }
        }
        (0..n)
            .map(|i| {
                assert!(a[i][n].is_integer(), "translation not in the coroot lattice");
                a[i][n].to_integer()
            })
            .collect()
    }

    /// The finite Weyl element `π(w)`.
    pub fn project_pi(&self, w: &AffineElement) -> FinElem {
        w.fin
    }

    pub fn finite(&self, x: FinElem) -> AffineElement {
        AffineElement { fin: x, lam: [0; MAX_RANK] }
    }

    /// Level range of `N(w)` over base root `beta`.
    pub fn inversion_range(&self, w: &AffineElement, beta: RootId) -> ChainRange {
        let wi = self.inv(w);
        self.inversion_range_from_inverse(&wi, beta)
    }

    fn inversion_range_from_inverse(&self, wi: &AffineElement, beta: RootId) -> ChainRange {
        let d = &self.datum;
        let lo = if d.is_positive(beta) { 0 } else { 1 };
        let mu = self.lam_of(&wi.lam, beta);
        let img_pos = d.is_positive(d.act(wi.fin, beta));
        let hi = if img_pos { -1 - mu } else { -mu };
        ChainRange { lo, hi }
    }

    /// `N(w)` as one level range per finite root.
    pub fn inversion_profile(&self, w: &AffineElement) -> Vec<ChainRange> {
        let wi = self.inv(w);
        (0..self.datum.num_roots()).map(|b| self.inversion_range_from_inverse(&wi, b)).collect()
    }

    pub fn in_inversion_set(&self, w: &AffineElement, r: AffineRoot) -> bool {
        self.inversion_range(w, r.base).contains(r.level)
    }

    pub fn inversion_set(&self, w: &AffineElement) -> BTreeSet<AffineRoot> {
        let mut out = BTreeSet::new();
        for (b, c) in self.inversion_profile(w).iter().enumerate() {
            for k in c.lo..=c.hi {
                out.insert(AffineRoot::new(b, k));
            }
        }
        out
    }

    pub fn length(&self, w: &AffineElement) -> usize {
        self.inversion_profile(w).iter().map(|c| c.len() as usize).sum()
    }

    /// Largest level occurring in `N(w)`, or `-1` when `N(w)` is empty.
    pub fn max_level(&self, w: &AffineElement) -> i64 {
        self.inversion_profile(w).iter().filter(|c| !c.is_empty()).map(|c| c.hi).max().unwrap_or(-1)
    }

    pub fn is_left_descent(&self, w: &AffineElement, i: usize) -> bool {
        self.in_inversion_set(w, self.affine_simple[i])
    }

    pub fn is_right_descent(&self, w: &AffineElement, i: usize) -> bool {
        self.in_inversion_set(&self.inv(w), self.affine_simple[i])
    }

    /// Lexicographically least reduced word, as 0-based generator indices.
    pub fn reduced_word(&self, w: &AffineElement) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = *w;
        while !cur.is_identity() {
            let s = (0..self.num_generators()).find(|&i| self.is_left_descent(&cur, i)).expect("nonidentity element has a descent");
            out.push(s);
            cur = self.mul(&self.simple(s), &cur);
        }
        out
    }

    pub fn from_word(&self, word: &[usize]) -> Result<AffineElement, Error> {
        let mut w = AffineElement::IDENTITY;
        for &i in word {
            if i >= self.num_generators() {
                return Err(Error::Parse(format!("generator {} out of range", i + 1)));
            }
            w = self.mul(&w, &self.simple(i));
        }
        Ok(w)
    }

    /// Parse `e`, `1.2.3` or the concatenated digit form `2132`.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>, Error> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(vec![]);
        }
        let parts: Vec<&str> = if s.contains('.') {
            s.split('.').collect()
        } else {
            s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
        };
        parts
            .into_iter()
            .map(|p| {
                let k: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad word '{s}'")))?;
                if k == 0 || k > self.num_generators() {
                    return Err(Error::Parse(format!("generator {k} out of range in '{s}'")));
                }
                Ok(k - 1)
            })
            .collect()
    }

    pub fn parse_element(&self, s: &str) -> Result<AffineElement, Error> {
        self.from_word(&self.parse_word(s)?)
    }

    /// Canonical word in dotted form, `e` for the identity.
    pub fn format(&self, w: &AffineElement) -> String {
        format_word(&self.reduced_word(w), ".")
    }

    /// Canonical word with digits concatenated, as used for figure labels.
    pub fn label(&self, w: &AffineElement) -> String {
        format_word(&self.reduced_word(w), "")
    }

    /// `N(wu) = (N(w) \ −wN(u)) ⊎ (wN(u) \ −N(w))`, on materialized sets.
    pub fn product_inversion(&self, w: &AffineElement, u: &AffineElement) -> BTreeSet<AffineRoot> {
        let d = &self.datum;
        let nw = self.inversion_set(w);
        let wnu: BTreeSet<AffineRoot> = self.inversion_set(u).iter().map(|&r| self.act(w, r)).collect();
        let mut out = BTreeSet::new();
        for r in &nw {
            if !wnu.contains(&r.neg(d)) {
                out.insert(*r);
            }
        }
        for r in &wnu {
            if !nw.contains(&r.neg(d)) && r.is_positive(d) {
                out.insert(*r);
            }
        }
        out
    }

    /// Bounded straightness certificate: `l(wⁿ) = n·l(w)` for `2 ≤ n ≤ n_max`.
    pub fn is_straight(&self, w: &AffineElement, n_max: u32) -> bool {
        let l = self.length(w);
        if l == 0 {
            return false;
        }
        (2..=n_max).all(|n| self.length(&self.pow(w, n)) == n as usize * l)
    }

    /// Order of `π(w)` in the finite Weyl group.
    pub fn finite_order(&self, w: &AffineElement) -> u32 {
        let mut x = w.fin;
        let mut n = 1;
        while x != WeylTable::IDENTITY {
            x = self.datum.fin_mul(x, w.fin);
            n += 1;
        }
        n
    }

    /// Word of random letters, each step reduced.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_len: usize) -> AffineElement {
        let len = rng.gen_range(0..=max_len);
        let mut w = AffineElement::IDENTITY;
        for _ in 0..len {
            let s = rng.gen_range(0..self.num_generators());
            w = self.mul(&w, &self.simple(s));
        }
        w
    }

    /// Elements of length exactly `0, 1, …, radius`, each layer sorted.
    pub fn ball_layers(&self, radius: usize) -> Vec<Vec<AffineElement>> {
        let mut layers = vec![vec![AffineElement::IDENTITY]];
        for _ in 0..radius {
            let mut next = HashSet::new();
            for w in layers.last().unwrap() {
                for s in 0..self.num_generators() {
                    if !self.is_right_descent(w, s) {
                        next.insert(self.mul(w, &self.simple(s)));
                    }
                }
            }
            let mut v: Vec<AffineElement> = next.into_iter().collect();
            v.sort();
            layers.push(v);
        }
        layers
    }

    pub fn ball(&self, radius: usize) -> Vec<AffineElement> {
        self.ball_layers(radius).into_iter().flatten().collect()
    }

    pub fn display<'a>(&'a self, w: &'a AffineElement) -> ElementDisplay<'a> {
        ElementDisplay { group: self, elem: w }
    }
}

pub fn format_word(word: &[usize], sep: &str) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(sep)
}

pub struct ElementDisplay<'a> {
    group: &'a AffineWeyl,
    elem: &'a AffineElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group.format(self.elem))
    }
}

/// Handle for an infinite reduced word, identified with its inversion set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteReducedWord {
    /// `w^∞` for a straight element `w`.
    Periodic(AffineElement),
    /// `u·P(Ψ⁺, Δ₁, ∅)^∧` with `Ψ⁺ = psi Φ⁺` and `Δ₁` a proper subset of its simple roots.
    Canonical { twist: AffineElement, psi: FinElem, delta1: u8 },
}

impl InfiniteReducedWord {
    pub fn contains(&self, g: &AffineWeyl, r: AffineRoot) -> bool {
        match self {
            InfiniteReducedWord::Periodic(w) => {
                let t = periodic_translation(g, w);
                r.is_positive(&g.datum) && translation_value(g, &t, r.base) > 0
            }
            InfiniteReducedWord::Canonical { twist, psi, delta1 } => {
                let b = crate::biclosed::BiclosedSet::new(g, *twist, *psi, *delta1, 0)
                    .expect("empty second subset is always orthogonal");
                b.contains(g, r)
            }
        }
    }

    /// Membership decided through a finite prefix of length `copies·|w|`.
    pub fn contains_via_prefix(g: &AffineWeyl, w: &AffineElement, r: AffineRoot, copies: u32) -> bool {
        g.in_inversion_set(&g.pow(w, copies), r)
    }

    /// A number of copies of `w` after which the prefix decides membership of `r`.
    pub fn prefix_copies(g: &AffineWeyl, w: &AffineElement, r: AffineRoot) -> u32 {
        let ord = g.finite_order(w) as i64;
        (ord * (r.level.max(0) + 1)) as u32
    }
}

/// `w^{ord π(w)}`, a pure translation.
pub fn periodic_translation(g: &AffineWeyl, w: &AffineElement) -> AffineElement {
    g.pow(w, g.finite_order(w))
}

fn translation_value(g: &AffineWeyl, t: &AffineElement, beta: RootId) -> i64 {
    g.lam_of(&t.lam, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_root::{chain_decompose, format_chains};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2() -> AffineWeyl {
        AffineWeyl::new(TypeLabel::A2)
    }

    fn r(g: &AffineWeyl, s: &str) -> AffineRoot {
        AffineRoot::parse(&g.datum, s).unwrap()
    }

    /// N(s₁⋯s_k) = {α_{s₁}, s₁α_{s₂}, …}, computed straight from the word.
    fn oracle_inversions(g: &AffineWeyl, word: &[usize]) -> BTreeSet<AffineRoot> {
        let mut out = BTreeSet::new();
        let mut prefix = AffineElement::IDENTITY;
        for &s in word {
            out.insert(g.act(&prefix, g.affine_simple_root(s)));
            prefix = g.mul(&prefix, &g.simple(s));
        }
        out
    }

    #[test]
    fn inversion_examples() {
        let g = a2();
        assert!(g.inversion_set(&g.identity()).is_empty());
        let w = g.parse_element("1.2").unwrap();
        let want: BTreeSet<_> = [r(&g, "a"), r(&g, "a+b")].into_iter().collect();
        assert_eq!(g.inversion_set(&w), want);
        let s = g.reflection(r(&g, "a+d"));
        let n = g.inversion_set(&s);
        assert_eq!(n.len(), 5);
        let mut parts: Vec<String> =
            format_chains(&g.datum, &chain_decompose(&n)).split(' ').map(String::from).collect();
        parts.sort();
        assert_eq!(parts, vec!["(-b)[1..1]", "(a+b)[0..0]", "a[0..2]"]);
    }

    #[test]
    fn reflection_normal_form() {
        let g = a2();
        let a = g.datum.parse_root("a").unwrap();
        for n in -4..=4 {
            let s = g.reflection(AffineRoot::new(a, n));
            let expect = g.mul(&g.finite(g.datum.weyl.reflection[a]), &g.translation(&[-n, 0]));
            assert_eq!(s, expect);
            assert_eq!(g.mul(&s, &s), g.identity());
        }
        assert_eq!(g.project_pi(&g.reflection(AffineRoot::new(a, 5))), g.datum.weyl.reflection[a]);
        assert_eq!(g.project_pi(&g.translation(&[1, 0])), 0);
    }

    #[test]
    fn affine_generator_acts_on_simple_root() {
        for t in TypeLabel::ALL {
            let g = AffineWeyl::new(t);
            for i in 0..g.num_generators() {
                let a = g.affine_simple_root(i);
                assert_eq!(g.act(&g.simple(i), a), a.neg(&g.datum));
                assert_eq!(g.length(&g.simple(i)), 1);
            }
        }
    }

    #[test]
    fn word_oracle_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in TypeLabel::ALL {
            let g = AffineWeyl::new(t);
            for _ in 0..200 {
                let w = g.random_element(&mut rng, 14);
                let word = g.reduced_word(&w);
                assert_eq!(word.len(), g.length(&w));
                assert_eq!(g.from_word(&word).unwrap(), w);
                assert_eq!(oracle_inversions(&g, &word), g.inversion_set(&w));
            }
        }
    }

    #[test]
    fn product_inversion_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = a2();
        for _ in 0..500 {
            let w = g.random_element(&mut rng, 12);
            let u = g.random_element(&mut rng, 12);
            assert_eq!(g.product_inversion(&w, &u), g.inversion_set(&g.mul(&w, &u)));
        }
        let sa = g.simple(0);
        let sb = g.simple(1);
        assert_eq!(g.product_inversion(&sa, &sb), g.inversion_set(&g.mul(&sa, &sb)));
    }

    #[test]
    fn translation_round_trip() {
        let g = AffineWeyl::new(TypeLabel::G2);
        for c in [[1, 0], [0, 1], [2, -3], [-1, 4]] {
            let t = g.translation(&c);
            assert_eq!(g.translation_part(&t), c.to_vec());
        }
    }

    #[test]
    fn straightness() {
        let g = a2();
        assert!(g.is_straight(&g.parse_element("1.2.3").unwrap(), 5));
        assert!(g.is_straight(&g.parse_element("3.1.2").unwrap(), 5));
        assert!(!g.is_straight(&g.simple(0), 2));
        assert!(!g.is_straight(&g.parse_element("1.2.1").unwrap(), 2));
    }

    #[test]
    fn periodic_membership() {
        let g = a2();
        // The first letter is s_β, so β is the first inversion: N = {β, −α}^∧.
        let x = InfiniteReducedWord::Periodic(g.parse_element("2.3.1").unwrap());
        assert!(x.contains(&g, r(&g, "b")));
        assert!(!x.contains(&g, r(&g, "a")));
        for k in 0..6 {
            assert!(x.contains(&g, AffineRoot::new(g.datum.parse_root("b").unwrap(), k)));
            assert!(x.contains(&g, AffineRoot::new(g.datum.parse_root("-a").unwrap(), k + 1)));
            assert!(!x.contains(&g, AffineRoot::new(g.datum.parse_root("a+b").unwrap(), k)));
        }
        let y = InfiniteReducedWord::Periodic(g.parse_element("1.3.2").unwrap());
        assert!(y.contains(&g, r(&g, "a")) && y.contains(&g, r(&g, "-b+d")));
        let c = InfiniteReducedWord::Canonical { twist: g.identity(), psi: 0, delta1: 0 };
        assert!(!c.contains(&g, r(&g, "-a+d")));
        assert!(c.contains(&g, r(&g, "a+7d")));
    }

    #[test]
    fn periodic_prefix_agreement() {
        for t in TypeLabel::ALL {
            let g = AffineWeyl::new(t);
            let cox: Vec<usize> = (0..g.num_generators()).collect();
            let w = g.from_word(&cox).unwrap();
            let x = InfiniteReducedWord::Periodic(w);
            for b in 0..g.datum.num_roots() {
                for k in 0..6 {
                    let root = AffineRoot::new(b, k);
                    if !root.is_positive(&g.datum) {
                        continue;
                    }
                    let n = InfiniteReducedWord::prefix_copies(&g, &w, root);
                    assert_eq!(x.contains(&g, root), InfiniteReducedWord::contains_via_prefix(&g, &w, root, n));
                }
            }
        }
    }

    #[test]
    fn word_parsing() {
        let g = a2();
        assert_eq!(g.parse_word("e").unwrap(), Vec::<usize>::new());
        assert_eq!(g.parse_word("2132").unwrap(), vec![1, 0, 2, 1]);
        assert_eq!(g.parse_word("1.2.3").unwrap(), vec![0, 1, 2]);
        assert!(g.parse_word("4").is_err());
        assert_eq!(g.format(&g.parse_element("2.1.2").unwrap()), "1.2.1");
    }
}
