//! Finite crystallographic root systems of types A2, A3, B2 and G2.
//!
//! Roots are integer coefficient vectors over the simple basis. The Gram
//! matrix is kept as exact rationals; every pairing that the rest of the
//! crate needs is an integer Cartan number.
//!
//! The finite Weyl group is enumerated once as a table of root
//! permutations, so group elements are plain indices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::Error;

/// Largest rank shipped.
pub const MAX_RANK: usize = 3;

/// Index of a root in [`CartanDatum::roots`].
pub type RootId = usize;

/// Index of an element of the finite Weyl group.
pub type FinElem = usize;

/// Bit set of roots, indexed by [`RootId`].
pub type RootMask = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A2,
    A3,
    B2,
    G2,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 4] = [TypeLabel::A2, TypeLabel::A3, TypeLabel::B2, TypeLabel::G2];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::A2 => "A2",
            TypeLabel::A3 => "A3",
            TypeLabel::B2 => "B2",
            TypeLabel::G2 => "G2",
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A2" => Ok(TypeLabel::A2),
            "A3" => Ok(TypeLabel::A3),
            "B2" => Ok(TypeLabel::B2),
            "G2" => Ok(TypeLabel::G2),
            other => Err(Error::UnknownType(other.to_string())),
        }
    }
}

/// Coefficients of a root over the simple roots. Unused trailing entries are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRoot {
    pub coords: [i64; MAX_RANK],
}

impl FiniteRoot {
    pub fn neg(&self) -> FiniteRoot {
        let mut c = self.coords;
        for x in c.iter_mut() {
            *x = -*x;
        }
        FiniteRoot { coords: c }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Height: the sum of coefficients.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Coordinates rendered as rational strings, e.g. `["1","0"]`.
    pub fn to_json(&self, rank: usize) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords[..rank]
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

/// Letters used for simple roots in text output.
pub const SIMPLE_NAMES: [char; MAX_RANK] = ['a', 'b', 'c'];

/// Render a coefficient vector as `a`, `a+b`, `-a-2b`, ...
pub fn format_coords(coords: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push(SIMPLE_NAMES[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse the output of [`format_coords`].
pub fn parse_coords(s: &str, rank: usize) -> Result<[i64; MAX_RANK], Error> {
    let bad = || Error::Parse(format!("bad root expression '{s}'"));
    let mut coords = [0i64; MAX_RANK];
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    if bytes.is_empty() {
        return Err(bad());
    }
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return Err(bad());
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mag: i64 = if i == start {
            1
        } else {
            bytes[start..i].iter().collect::<String>().parse().map_err(|_| bad())?
        };
        if i >= bytes.len() {
            return Err(bad());
        }
        let idx = SIMPLE_NAMES[..rank].iter().position(|&n| n == bytes[i]).ok_or_else(bad)?;
        coords[idx] += sign * mag;
        i += 1;
    }
    Ok(coords)
}

/// Enumerated finite Weyl group: each element is a permutation of the roots.
#[derive(Clone, Debug)]
pub struct WeylTable {
    pub perm: Vec<Vec<RootId>>,
    pub mul: Vec<Vec<FinElem>>,
    pub inv: Vec<FinElem>,
    /// Shortlex-least reduced word (0-based simple indices).
    pub words: Vec<Vec<usize>>,
    pub length: Vec<usize>,
    /// Element of the simple reflection `s_i`.
    pub simple: Vec<FinElem>,
    /// Element of the reflection `s_γ` for each root γ.
    pub reflection: Vec<FinElem>,
    pub longest: FinElem,
}

impl WeylTable {
    pub const IDENTITY: FinElem = 0;

    pub fn order(&self) -> usize {
        self.perm.len()
    }
}

/// Standard data of a finite root system.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// `(α_i, α_j)`.
    pub gram: Vec<Vec<Rational64>>,
    /// `cartan[i][j] = <α_i, α_j∨> = 2(α_i,α_j)/(α_j,α_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// All roots in canonical (lexicographic) order.
    pub roots: Vec<FiniteRoot>,
    pub neg: Vec<RootId>,
    pub simple: Vec<RootId>,
    pub highest: RootId,
    pub coxeter_number: usize,
    pub weyl: WeylTable,
    index: HashMap<FiniteRoot, RootId>,
    /// For each pair of roots, the roots in the closed positive cone they span.
    pair_cone: Vec<Vec<RootMask>>,
}

fn gram_for(t: TypeLabel) -> Vec<Vec<i64>> {
    match t {
        TypeLabel::A2 => vec![vec![2, -1], vec![-1, 2]],
        TypeLabel::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        TypeLabel::B2 => vec![vec![2, -1], vec![-1, 1]],
        TypeLabel::G2 => vec![vec![2, -3], vec![-3, 6]],
    }
}

/// Build the datum for a shipped type.
pub fn build_system(t: TypeLabel) -> CartanDatum {
    let g = gram_for(t);
    let rank = g.len();
    let gram: Vec<Vec<Rational64>> =
        g.iter().map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| 2 * g[i][j] / g[j][j]).collect())
        .collect();
    for i in 0..rank {
        for j in 0..rank {
            debug_assert_eq!(2 * g[i][j] % g[j][j], 0);
        }
    }

    // Close the simple roots under simple reflections.
    let simple_reflect = |v: &[i64; MAX_RANK], j: usize| -> [i64; MAX_RANK] {
        let pair: i64 = (0..rank).map(|i| v[i] * cartan[i][j]).sum();
        let mut out = *v;
        out[j] -= pair;
        out
    };
    let mut set = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut c = [0; MAX_RANK];
        c[i] = 1;
        if set.insert(c) {
            queue.push_back(c);
        }
    }
    while let Some(v) = queue.pop_front() {
        for j in 0..rank {
            let w = simple_reflect(&v, j);
            if set.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let roots: Vec<FiniteRoot> = set.into_iter().map(|coords| FiniteRoot { coords }).collect();
    let index: HashMap<FiniteRoot, RootId> = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let neg: Vec<RootId> = roots.iter().map(|r| index[&r.neg()]).collect();
    let simple: Vec<RootId> = (0..rank)
        .map(|i| {
            let mut c = [0; MAX_RANK];
            c[i] = 1;
            index[&FiniteRoot { coords: c }]
        })
        .collect();
    let highest = (0..roots.len()).max_by_key(|&r| roots[r].height()).unwrap();

    let n = roots.len();
    let refl_perm = |gamma: &FiniteRoot| -> Vec<RootId> {
        let gg = inner_int(&g, rank, gamma, gamma);
        roots
            .iter()
            .map(|v| {
                let p = 2 * inner_int(&g, rank, v, gamma);
                debug_assert_eq!(p % gg, 0);
                let k = p / gg;
                let mut c = v.coords;
                for i in 0..rank {
                    c[i] -= k * gamma.coords[i];
                }
                index[&FiniteRoot { coords: c }]
            })
            .collect()
    };

    // Enumerate W by breadth-first search in shortlex order.
    let simple_perms: Vec<Vec<RootId>> = simple.iter().map(|&s| refl_perm(&roots[s])).collect();
    let ident: Vec<RootId> = (0..n).collect();
    let mut perm = vec![ident.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut lookup: HashMap<Vec<RootId>, FinElem> = HashMap::new();
    lookup.insert(ident, 0);
    let mut head = 0;
    while head < perm.len() {
        for (j, sp) in simple_perms.iter().enumerate() {
            // w s_j acts as w ∘ s_j.
            let p: Vec<RootId> = (0..n).map(|r| perm[head][sp[r]]).collect();
            if !lookup.contains_key(&p) {
                lookup.insert(p.clone(), perm.len());
                let mut w = words[head].clone();
                w.push(j);
                words.push(w);
                perm.push(p);
            }
        }
        head += 1;
    }
    let order = perm.len();
    let mul: Vec<Vec<FinElem>> = (0..order)
        .map(|a| {
            (0..order)
                .map(|b| {
                    let p: Vec<RootId> = (0..n).map(|r| perm[a][perm[b][r]]).collect();
                    lookup[&p]
                })
                .collect()
        })
        .collect();
    let inv: Vec<FinElem> = (0..order).map(|a| (0..order).find(|&b| mul[a][b] == 0).unwrap()).collect();
    let length: Vec<usize> = words.iter().map(|w| w.len()).collect();
    let simple_el: Vec<FinElem> = simple_perms.iter().map(|p| lookup[p]).collect();
    let reflection: Vec<FinElem> = roots.iter().map(|r| lookup[&refl_perm(r)]).collect();
    let longest = (0..order).max_by_key(|&w| length[w]).unwrap();

    let coxeter_number = 2 * roots.iter().filter(|r| r.is_positive()).count() / rank;

    let mut datum = CartanDatum {
        type_label: t,
        rank,
        gram,
        cartan,
        roots,
        neg,
        simple,
        highest,
        coxeter_number,
        weyl: WeylTable { perm, mul, inv, words, length, simple: simple_el, reflection, longest },
        index,
        pair_cone: vec![],
    };
    datum.pair_cone = datum.compute_pair_cones();
    datum
}

fn inner_int(g: &[Vec<i64>], rank: usize, u: &FiniteRoot, v: &FiniteRoot) -> i64 {
    let mut s = 0;
    for i in 0..rank {
        for j in 0..rank {
            s += u.coords[i] * g[i][j] * v.coords[j];
        }
    }
    s
}

impl CartanDatum {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, r: RootId) -> &FiniteRoot {
        &self.roots[r]
    }

    pub fn root_id(&self, r: &FiniteRoot) -> Option<RootId> {
        self.index.get(r).copied()
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        self.roots[r].is_positive()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).filter(move |&r| self.is_positive(r))
    }

    pub fn positive_mask(&self) -> RootMask {
        self.positive_roots().fold(0, |m, r| m | (1 << r))
    }

    pub fn all_mask(&self) -> RootMask {
        ((1u64 << self.roots.len()) - 1) as RootMask
    }

    /// Exact inner product of two coefficient vectors.
    pub fn inner(&self, u: &FiniteRoot, v: &FiniteRoot) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += self.gram[i][j] * u.coords[i] * v.coords[j];
            }
        }
        s
    }

    /// `<v, γ∨> = 2(v,γ)/(γ,γ)`, an integer for roots.
    pub fn pairing(&self, v: &FiniteRoot, gamma: &FiniteRoot) -> i64 {
        let q = self.inner(v, gamma) * 2 / self.inner(gamma, gamma);
        debug_assert!(q.is_integer());
        q.to_integer()
    }

    /// Reflection of `v` in the root `gamma`.
    pub fn reflect(&self, gamma: &FiniteRoot, v: &FiniteRoot) -> Result<FiniteRoot, Error> {
        if self.root_id(gamma).is_none() {
            return Err(Error::NotARoot(format_coords(&gamma.coords[..self.rank])));
        }
        let two = Rational64::from_integer(2);
        let k = two * self.inner(v, gamma) / self.inner(gamma, gamma);
        let mut c = [0i64; MAX_RANK];
        for i in 0..self.rank {
            let x = Rational64::from_integer(v.coords[i]) - k * gamma.coords[i];
            if !x.is_integer() {
                return Err(Error::NotARoot(format_coords(&v.coords[..self.rank])));
            }
            c[i] = x.to_integer();
        }
        Ok(FiniteRoot { coords: c })
    }

    /// Apply a Weyl group element to a root.
    pub fn act(&self, w: FinElem, r: RootId) -> RootId {
        self.weyl.perm[w][r]
    }

    pub fn fin_mul(&self, a: FinElem, b: FinElem) -> FinElem {
        self.weyl.mul[a][b]
    }

    pub fn fin_inv(&self, a: FinElem) -> FinElem {
        self.weyl.inv[a]
    }

    /// Element given by a word of 0-based simple indices.
    pub fn fin_from_word(&self, word: &[usize]) -> Result<FinElem, Error> {
        let mut w = WeylTable::IDENTITY;
        for &i in word {
            if i >= self.rank {
                return Err(Error::Parse(format!("simple index {} out of range", i + 1)));
            }
            w = self.fin_mul(w, self.weyl.simple[i]);
        }
        Ok(w)
    }

    /// Root set of the positive system `wΦ⁺`.
    pub fn positive_system(&self, w: FinElem) -> RootMask {
        self.positive_roots().fold(0, |m, r| m | (1 << self.act(w, r)))
    }

    /// Roots in the standard parabolic subsystem on the simple indices in `mask`.
    pub fn parabolic_mask(&self, mask: u8) -> RootMask {
        let mut out = 0;
        for (r, root) in self.roots.iter().enumerate() {
            let inside = (0..self.rank).all(|i| root.coords[i] == 0 || mask & (1 << i) != 0);
            if inside {
                out |= 1 << r;
            }
        }
        out
    }

    /// True iff the simple roots indexed by `d1` and `d2` are pairwise orthogonal and disjoint.
    pub fn orthogonal(&self, d1: u8, d2: u8) -> bool {
        if d1 & d2 != 0 {
            return false;
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                if d1 & (1 << i) != 0 && d2 & (1 << j) != 0 && !self.gram[i][j].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn full_simple_mask(&self) -> u8 {
        ((1u16 << self.rank) - 1) as u8
    }

    /// The opposition involution `i ↦ j` with `-w₀α_i = α_j`, applied to a mask.
    pub fn opposition(&self, mask: u8) -> u8 {
        let w0 = self.weyl.longest;
        let mut out = 0;
        for i in 0..self.rank {
            if mask & (1 << i) != 0 {
                let img = self.neg[self.act(w0, self.simple[i])];
                let j = self.simple.iter().position(|&s| s == img).unwrap();
                out |= 1 << j;
            }
        }
        out
    }

    /// The roots of the positive cone spanned by `a` and `b` (both included).
    pub fn pair_cone(&self, a: RootId, b: RootId) -> RootMask {
        self.pair_cone[a][b]
    }

    fn compute_pair_cones(&self) -> Vec<Vec<RootMask>> {
        let n = self.roots.len();
        let mut out = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut m: RootMask = (1 << a) | (1 << b);
                for g in 0..n {
                    if in_pair_cone(&self.roots[a], &self.roots[b], &self.roots[g], self.rank) {
                        m |= 1 << g;
                    }
                }
                out[a][b] = m;
            }
        }
        out
    }

    /// Name of a root, e.g. `a+b`.
    pub fn root_name(&self, r: RootId) -> String {
        format_coords(&self.roots[r].coords[..self.rank])
    }

    pub fn parse_root(&self, s: &str) -> Result<RootId, Error> {
        let coords = parse_coords(s, self.rank)?;
        self.root_id(&FiniteRoot { coords }).ok_or_else(|| Error::NotARoot(s.to_string()))
    }
}

/// Whether `g = k1 a + k2 b` for some real `k1, k2 ≥ 0`.
fn in_pair_cone(a: &FiniteRoot, b: &FiniteRoot, g: &FiniteRoot, rank: usize) -> bool {
    // Try every 2x2 minor to solve; fall back to the collinear case.
    for i in 0..rank {
        for j in (i + 1)..rank {
            let det = a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i];
            if det != 0 {
                let n1 = g.coords[i] * b.coords[j] - g.coords[j] * b.coords[i];
                let n2 = a.coords[i] * g.coords[j] - a.coords[j] * g.coords[i];
                let k1 = Rational64::new(n1, det);
                let k2 = Rational64::new(n2, det);
                if k1 < Rational64::zero() || k2 < Rational64::zero() {
                    return false;
                }
                return (0..rank).all(|t| {
                    k1 * a.coords[t] + k2 * b.coords[t] == Rational64::from_integer(g.coords[t])
                });
            }
        }
    }
    // a and b are collinear (b = ±a); the cone is a ray or a line.
    let on_ray = |v: &FiniteRoot| -> bool {
        let k = (0..rank).find(|&t| v.coords[t] != 0).unwrap();
        let q = Rational64::new(g.coords[k], v.coords[k]);
        q >= Rational64::zero()
            && (0..rank).all(|t| q * v.coords[t] == Rational64::from_integer(g.coords[t]))
    };
    on_ray(a) || on_ray(b)
}

/// A finite biclosed set `P(Ψ⁺, Δ₁, Δ₂) = (Ψ⁺ \ Φ_{Δ₁}) ∪ Φ_{Δ₂}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBiclosed {
    /// `Ψ⁺ = psi Φ⁺`.
    pub psi: FinElem,
    /// Indices into the simple system `psi Δ` of `Ψ⁺`.
    pub delta1: u8,
    pub delta2: u8,
    pub roots: RootMask,
}

/// Build `P(psi Φ⁺, psi Δ₁, psi Δ₂)`.
pub fn make_p(d: &CartanDatum, psi: FinElem, delta1: u8, delta2: u8) -> Result<FiniteBiclosed, Error> {
    if !d.orthogonal(delta1, delta2) {
        return Err(Error::NotOrthogonal);
    }
    let full = d.full_simple_mask();
    if delta1 & !full != 0 || delta2 & !full != 0 {
        return Err(Error::Parse("simple index out of range".into()));
    }
    let std = (d.positive_mask() & !d.parabolic_mask(delta1)) | d.parabolic_mask(delta2);
    Ok(FiniteBiclosed { psi, delta1, delta2, roots: map_mask(d, psi, std) })
}

/// Image of a root set under a Weyl element.
pub fn map_mask(d: &CartanDatum, w: FinElem, m: RootMask) -> RootMask {
    let mut out = 0;
    for r in 0..d.num_roots() {
        if m & (1 << r) != 0 {
            out |= 1 << d.act(w, r);
        }
    }
    out
}

/// Whether a set of roots is 2-closure closed in Φ.
pub fn is_closed(d: &CartanDatum, m: RootMask) -> bool {
    let n = d.num_roots();
    for a in 0..n {
        if m & (1 << a) == 0 {
            continue;
        }
        for b in a..n {
            if m & (1 << b) != 0 && d.pair_cone(a, b) & !m != 0 {
                return false;
            }
        }
    }
    true
}

pub fn is_biclosed(d: &CartanDatum, m: RootMask) -> bool {
    is_closed(d, m) && is_closed(d, d.all_mask() & !m)
}

/// Every biclosed subset of Φ, by exhaustive scan. Sorted ascending.
pub fn enumerate_biclosed_finite(d: &CartanDatum) -> Vec<RootMask> {
    let n = d.num_roots();
    (0..(1u64 << n)).map(|m| m as RootMask).filter(|&m| is_biclosed(d, m)).collect()
}

/// Every set of the form `P(Ψ⁺, Δ₁, Δ₂)`, deduplicated and sorted.
pub fn enumerate_p_sets(d: &CartanDatum) -> Vec<RootMask> {
    let full = d.full_simple_mask();
    let mut out = BTreeSet::new();
    for psi in 0..d.weyl.order() {
        for d1 in 0..=full {
            for d2 in 0..=full {
                if let Ok(p) = make_p(d, psi, d1, d2) {
                    out.insert(p.roots);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Number of valid `(Ψ⁺, Δ₁, Δ₂)` triples.
pub fn count_p_triples(d: &CartanDatum) -> usize {
    let full = d.full_simple_mask();
    let mut n = 0;
    for _psi in 0..d.weyl.order() {
        for d1 in 0..=full {
            for d2 in 0..=full {
                if d.orthogonal(d1, d2) {
                    n += 1;
                }
            }
        }
    }
    n
}

/// `Gram` check helper: the matrix is symmetric with a positive leading-minor sequence.
pub fn gram_is_positive_definite(d: &CartanDatum) -> bool {
    let n = d.rank;
    let g = &d.gram;
    for i in 0..n {
        for j in 0..n {
            if g[i][j] != g[j][i] {
                return false;
            }
        }
    }
    (1..=n).all(|k| determinant(&g[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>()) > Rational64::zero())
}

fn determinant(m: &[Vec<Rational64>]) -> Rational64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational64::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational64::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    det
}
