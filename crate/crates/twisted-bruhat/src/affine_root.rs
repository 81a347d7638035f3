//! Affine roots `α + kδ` over a finite root system, and δ-chains.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::finite::{CartanDatum, RootId};

/// The real affine root `base + level·δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub base: RootId,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(base: RootId, level: i64) -> Self {
        AffineRoot { base, level }
    }

    pub fn is_positive(&self, d: &CartanDatum) -> bool {
        if d.is_positive(self.base) {
            self.level >= 0
        } else {
            self.level >= 1
        }
    }

    pub fn neg(&self, d: &CartanDatum) -> AffineRoot {
        AffineRoot { base: d.neg[self.base], level: -self.level }
    }

    /// The positive root among `±self`.
    pub fn positive_part(&self, d: &CartanDatum) -> AffineRoot {
        if self.is_positive(d) {
            *self
        } else {
            self.neg(d)
        }
    }

    pub fn name(&self, d: &CartanDatum) -> String {
        let b = d.root_name(self.base);
        match self.level {
            0 => b,
            1 => format!("{b}+d"),
            -1 => format!("{b}-d"),
            k if k > 0 => format!("{b}+{k}d"),
            k => format!("{b}{k}d"),
        }
    }

    pub fn parse(d: &CartanDatum, s: &str) -> Result<AffineRoot, Error> {
        let s = s.trim();
        // Split off a trailing `±kd` term if present.
        if let Some(stripped) = s.strip_suffix('d') {
            let pos = stripped.rfind(['+', '-']).ok_or_else(|| Error::Parse(format!("bad affine root '{s}'")))?;
            let (base, lev) = stripped.split_at(pos);
            let lev_body = &lev[1..];
            let mag: i64 = if lev_body.is_empty() {
                1
            } else {
                lev_body.parse().map_err(|_| Error::Parse(format!("bad level in '{s}'")))?
            };
            let level = if lev.starts_with('-') { -mag } else { mag };
            return Ok(AffineRoot { base: d.parse_root(base)?, level });
        }
        Ok(AffineRoot { base: d.parse_root(s)?, level: 0 })
    }
}

/// `s_{α+pδ}(β+qδ) = s_α(β) + (q − ⟨β,α∨⟩p)δ`.
pub fn affine_reflect(d: &CartanDatum, mirror: AffineRoot, target: AffineRoot) -> AffineRoot {
    let a = d.root(mirror.base);
    let b = d.root(target.base);
    let c = d.pairing(b, a);
    let base = d.act(d.weyl.reflection[mirror.base], target.base);
    AffineRoot { base, level: target.level - c * mirror.level }
}

/// The least positive affine root over `γ`: `γ` if positive, `γ+δ` otherwise.
pub fn base_zero(d: &CartanDatum, gamma: RootId) -> AffineRoot {
    AffineRoot { base: gamma, level: if d.is_positive(gamma) { 0 } else { 1 } }
}

/// Whether `b ∈ N(w)` forces `a ∈ N(w)`: same base, `a` lower on the chain.
pub fn dominates(d: &CartanDatum, b: AffineRoot, a: AffineRoot) -> bool {
    a.is_positive(d) && b.is_positive(d) && a.base == b.base && a.level <= b.level
}

/// Upper end of a δ-chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainEnd {
    Finite(i64),
    Infinite,
}

/// `{base + kδ | lo ≤ k ≤ hi}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaChain {
    pub base: RootId,
    pub lo: i64,
    pub hi: ChainEnd,
}

impl DeltaChain {
    pub fn contains(&self, r: AffineRoot) -> bool {
        r.base == self.base
            && r.level >= self.lo
            && match self.hi {
                ChainEnd::Finite(h) => r.level <= h,
                ChainEnd::Infinite => true,
            }
    }

    /// Number of roots, or `None` for an infinite chain.
    pub fn len(&self) -> Option<usize> {
        match self.hi {
            ChainEnd::Finite(h) => Some((h - self.lo + 1).max(0) as usize),
            ChainEnd::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The roots of a finite chain.
    pub fn roots(&self) -> impl Iterator<Item = AffineRoot> + '_ {
        let hi = match self.hi {
            ChainEnd::Finite(h) => h,
            ChainEnd::Infinite => panic!("cannot materialize an infinite chain"),
        };
        (self.lo..=hi).map(move |k| AffineRoot::new(self.base, k))
    }
}

/// Partition a finite set into maximal contiguous chains, sorted by base then level.
pub fn chain_decompose(roots: &BTreeSet<AffineRoot>) -> Vec<DeltaChain> {
    let mut out: Vec<DeltaChain> = Vec::new();
    for r in roots {
        if let Some(last) = out.last_mut() {
            if last.base == r.base && last.hi == ChainEnd::Finite(r.level - 1) {
                last.hi = ChainEnd::Finite(r.level);
                continue;
            }
        }
        out.push(DeltaChain { base: r.base, lo: r.level, hi: ChainEnd::Finite(r.level) });
    }
    out
}

/// Render chains as `a[0..2] (-b)[1..1] (a+b)[0..0]`.
pub fn format_chains(d: &CartanDatum, chains: &[DeltaChain]) -> String {
    let parts: Vec<String> = chains
        .iter()
        .map(|c| {
            let name = d.root_name(c.base);
            let name = if name.len() > 1 { format!("({name})") } else { name };
            let hi = match c.hi {
                ChainEnd::Finite(h) => h.to_string(),
                ChainEnd::Infinite => "inf".to_string(),
            };
            format!("{name}[{}..{hi}]", c.lo)
        })
        .collect();
    parts.join(" ")
}

/// Inverse of [`format_chains`].
pub fn parse_chains(d: &CartanDatum, s: &str) -> Result<Vec<DeltaChain>, Error> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || Error::Parse(format!("bad chain '{tok}'"));
        let open = tok.rfind('[').ok_or_else(bad)?;
        let (name, range) = tok.split_at(open);
        let name = name.strip_prefix('(').and_then(|n| n.strip_suffix(')')).unwrap_or(name);
        let range = range.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.parse().map_err(|_| bad())?;
        let hi = if hi == "inf" { ChainEnd::Infinite } else { ChainEnd::Finite(hi.parse().map_err(|_| bad())?) };
        out.push(DeltaChain { base: d.parse_root(name)?, lo, hi });
    }
    Ok(out)
}

/// Displays a root set in chain notation.
pub struct ChainDisplay<'a> {
    pub datum: &'a CartanDatum,
    pub roots: &'a BTreeSet<AffineRoot>,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_chains(self.datum, &chain_decompose(self.roots)))
    }
}

/// All positive affine roots with level at most `max_level`.
pub fn positive_roots_upto(d: &CartanDatum, max_level: i64) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for k in 0..=max_level {
        for b in 0..d.num_roots() {
            let r = AffineRoot::new(b, k);
            if r.is_positive(d) {
                out.push(r);
            }
        }
    }
    out
}

/// Whether `r` is a sum of two positive affine roots (as vectors).
pub fn is_decomposable(d: &CartanDatum, r: AffineRoot) -> bool {
    let target = d.root(r.base).coords;
    for a in 0..d.num_roots() {
        let mut diff = target;
        for i in 0..d.rank {
            diff[i] -= d.root(a).coords[i];
        }
        let Some(b) = d.root_id(&crate::finite::FiniteRoot { coords: diff }) else {
            continue;
        };
        for ka in 0..=r.level {
            let x = AffineRoot::new(a, ka);
            let y = AffineRoot::new(b, r.level - ka);
            if x.is_positive(d) && y.is_positive(d) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{build_system, TypeLabel};

    fn a2() -> CartanDatum {
        build_system(TypeLabel::A2)
    }

    fn r(d: &CartanDatum, s: &str) -> AffineRoot {
        AffineRoot::parse(d, s).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let d = a2();
        assert_eq!(affine_reflect(&d, r(&d, "a+d"), r(&d, "b")), r(&d, "a+b+d"));
        assert_eq!(affine_reflect(&d, r(&d, "a"), r(&d, "a+3d")), r(&d, "-a+3d"));
        // (−β, α∨) = 1, so the level drops from 2 to 1.
        assert_eq!(affine_reflect(&d, r(&d, "a+d"), r(&d, "-b+2d")), r(&d, "-a-b+d"));
    }

    #[test]
    fn base_zero_examples() {
        let d = a2();
        assert_eq!(base_zero(&d, d.parse_root("a").unwrap()), r(&d, "a"));
        assert_eq!(base_zero(&d, d.parse_root("-a").unwrap()), r(&d, "-a+d"));
        assert_eq!(base_zero(&d, d.parse_root("-a-b").unwrap()), r(&d, "-a-b+d"));
    }

    #[test]
    fn dominance_examples() {
        let d = a2();
        assert!(dominates(&d, r(&d, "a+2d"), r(&d, "a")));
        assert!(!dominates(&d, r(&d, "a"), r(&d, "a+d")));
        assert!(!dominates(&d, r(&d, "a+d"), r(&d, "b")));
    }

    #[test]
    fn chain_examples() {
        let d = a2();
        let set: BTreeSet<AffineRoot> =
            ["a", "a+d", "a+2d", "-b+d", "a+b"].iter().map(|s| r(&d, s)).collect();
        let chains = chain_decompose(&set);
        let mut got: Vec<String> = format_chains(&d, &chains).split(' ').map(String::from).collect();
        got.sort();
        assert_eq!(got, vec!["(-b)[1..1]", "(a+b)[0..0]", "a[0..2]"]);
        assert!(chain_decompose(&BTreeSet::new()).is_empty());
        let gap: BTreeSet<AffineRoot> = [r(&d, "b"), r(&d, "b+2d")].into_iter().collect();
        assert_eq!(chain_decompose(&gap).len(), 2);
    }

    #[test]
    fn chain_text_round_trip() {
        let d = a2();
        let s = "a[0..2] (-b)[1..1] (a+b)[0..inf]";
        let c = parse_chains(&d, s).unwrap();
        assert_eq!(format_chains(&d, &c), s);
    }

    #[test]
    fn reflection_closure_and_involution() {
        for t in TypeLabel::ALL {
            let d = build_system(t);
            for mb in 0..d.num_roots() {
                for p in -8..=8 {
                    let m = AffineRoot::new(mb, p);
                    for tb in 0..d.num_roots() {
                        for q in -8..=8 {
                            let x = AffineRoot::new(tb, q);
                            let y = affine_reflect(&d, m, x);
                            assert_eq!(affine_reflect(&d, m, y), x);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simple_system_is_indecomposables() {
        for t in TypeLabel::ALL {
            let d = build_system(t);
            let mut want: BTreeSet<AffineRoot> = d.simple.iter().map(|&s| AffineRoot::new(s, 0)).collect();
            want.insert(AffineRoot::new(d.neg[d.highest], 1));
            let got: BTreeSet<AffineRoot> =
                positive_roots_upto(&d, 8).into_iter().filter(|&x| !is_decomposable(&d, x)).collect();
            assert_eq!(got, want, "{t}");
        }
    }

    #[test]
    fn affine_root_names_round_trip() {
        let d = build_system(TypeLabel::G2);
        for b in 0..d.num_roots() {
            for k in -3..=3 {
                let x = AffineRoot::new(b, k);
                assert_eq!(AffineRoot::parse(&d, &x.name(&d)).unwrap(), x);
            }
        }
    }
}
